# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""
Makes the bundled solver modules importable from the tests.
"""
import os
import sys

from hypothesis import settings

from .instance_test_client import constants

if os.fspath(constants.TOOL_ROOT) not in sys.path:
    sys.path.insert(0, os.fspath(constants.TOOL_ROOT))

settings.register_profile("planarint", derandomize=True, print_blob=True)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "planarint"))
