# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""
Constants for use with tests.
"""
import pathlib

TEST_ROOT = pathlib.Path(__file__).parent.parent
PROJECT_ROOT = TEST_ROOT.parent.parent.parent
TEST_DATA = TEST_ROOT / "test_data"
TOOL_ROOT = PROJECT_ROOT / "bundled" / "tool"
CLI_SCRIPT = TOOL_ROOT / "planarint.py"

THREE_PARALLEL = TEST_DATA / "three_parallel.json"
DIAMOND = TEST_DATA / "diamond.json"
CHAIN = TEST_DATA / "chain.json"
TWO_PARALLEL_DEMAND = TEST_DATA / "two_parallel_demand.json"
TRIANGLE_GRAPH = TEST_DATA / "triangle_graph.json"
SQUARE_GRAPH = TEST_DATA / "square_graph.json"
