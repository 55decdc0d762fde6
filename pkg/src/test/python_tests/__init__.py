# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
