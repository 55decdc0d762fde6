# Copyright (c) planarint contributors. All rights reserved.
# Licensed under the MIT License.
"""Command line front end for the planar interdiction solvers."""
from __future__ import annotations

import argparse
import os
import pathlib
import sys
import traceback
from typing import Any, Dict, Optional, Sequence


# **********************************************************
# Update sys.path before importing any bundled libraries.
# **********************************************************
def update_sys_path(path_to_add: str, strategy: str) -> None:
    """Add given path to `sys.path`."""
    if path_to_add not in sys.path and os.path.isdir(path_to_add):
        if strategy == "useBundled":
            sys.path.insert(0, path_to_add)
        else:
            sys.path.append(path_to_add)


BUNDLE_DIR = pathlib.Path(__file__).parent.parent
BUNDLED_LIBS = os.fspath(BUNDLE_DIR / "libs")
update_sys_path(os.fspath(BUNDLE_DIR / "tool"), "useBundled")
update_sys_path(BUNDLED_LIBS, os.getenv("PLANARINT_IMPORT_STRATEGY", "useBundled"))

# **********************************************************
# Imports needed by the solvers go below this.
# **********************************************************
import attrs

import dual_builder
import instance_gen
import multi_security
import oracle
import planar_core
import planarint_utils as utils
import reductions
import st_interdiction

COMMANDS = ("interdict", "security", "kdense", "oracle", "validate", "gen")
ORACLE_COMMANDS = ("interdict", "security", "kdense")


# **********************************************************
# Settings.
# **********************************************************
def _get_global_defaults() -> Dict[str, Any]:
    return {
        "threads": os.getenv("PLANARINT_THREADS", "0"),
        "logLevel": os.getenv("PLANARINT_LOG_LEVEL", "warning"),
        "showTrace": os.getenv("PLANARINT_SHOW_TRACE", "off"),
    }


def _non_negative(_instance: Any, attribute: attrs.Attribute, value: int) -> None:
    if value < 0:
        raise ValueError(f"{attribute.name} must be non-negative, got {value}")


@attrs.frozen
class RunConfig:
    command: str = attrs.field(validator=attrs.validators.in_(COMMANDS))
    input: Optional[pathlib.Path] = None
    budget: int = attrs.field(default=0, validator=_non_negative)
    k: int = attrs.field(default=0, validator=_non_negative)
    oracle_command: Optional[str] = None
    vertex_interdiction: bool = False
    vertex_capacities: bool = False
    clip_parity: bool = False
    check: bool = False
    profile: bool = False
    engine: str = "budget"
    prune: bool = True
    dump_dual: bool = False
    family: str = "grid"
    size: str = "3x3"
    seed: int = 0
    terminals: str = "single"
    vertex_costs: bool = False
    output: Optional[pathlib.Path] = None
    threads: int = 0
    log_level: str = "warning"

    @property
    def mode(self) -> str:
        return st_interdiction.WITH_VERTICES if self.vertex_interdiction else st_interdiction.ARCS_ONLY


def _add_instance_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", type=pathlib.Path, required=True, help="Instance JSON file.")
    parser.add_argument(
        "--vertex-interdiction",
        action="store_true",
        help="Allow removing vertices with a finite cost.",
    )
    parser.add_argument(
        "--vertex-capacities",
        action="store_true",
        help="Honour vertex capacities.",
    )
    parser.add_argument(
        "--check",
        action="store_true",
        help="Also run the brute-force oracle and fail on any difference.",
    )


def build_arg_parse() -> argparse.ArgumentParser:
    """Builds the arguments parser."""
    defaults = _get_global_defaults()
    parser = argparse.ArgumentParser(
        prog="planarint",
        description="Interdiction and flow security on planar networks.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=utils.parse_thread_count(defaults["threads"]),
        help="Worker threads for independent searches (0 = auto).",
    )
    parser.add_argument(
        "--log-level",
        default=defaults["logLevel"],
        choices=("debug", "info", "warning", "error"),
        help="Log level for messages on standard error.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    interdict = commands.add_parser("interdict", help="Single-pair interdiction.")
    _add_instance_flags(interdict)
    interdict.add_argument("--budget", type=int, required=True)
    interdict.add_argument("--clip-parity", action="store_true", help="Use the clipped parity range.")
    interdict.add_argument(
        "--profile", action="store_true", help="Emit an interdiction set for every budget."
    )
    interdict.add_argument("--engine", choices=st_interdiction.ENGINES, default="budget")
    interdict.add_argument(
        "--no-prune", dest="prune", action="store_false", help="Keep redundant components."
    )

    security = commands.add_parser("security", help="Smallest budget that breaks the network.")
    _add_instance_flags(security)
    security.add_argument("--max-budget", dest="budget", type=int, required=True)

    kdense = commands.add_parser("kdense", help="k-densest subgraph through interdiction.")
    kdense.add_argument("--input", type=pathlib.Path, required=True, help="Graph JSON file.")
    kdense.add_argument("--k", type=int, required=True)
    kdense.add_argument(
        "--oracle", dest="check", action="store_true", help="Compare with direct enumeration."
    )

    check = commands.add_parser("oracle", help="Brute-force answers for small instances.")
    check.add_argument("oracle_command", choices=ORACLE_COMMANDS)
    check.add_argument("--input", type=pathlib.Path, required=True)
    check.add_argument("--budget", "--max-budget", dest="budget", type=int, default=0)
    check.add_argument("--k", type=int, default=0)
    check.add_argument("--vertex-interdiction", action="store_true")
    check.add_argument("--vertex-capacities", action="store_true")

    validate = commands.add_parser("validate", help="Check an instance.")
    validate.add_argument("--input", type=pathlib.Path, required=True)
    validate.add_argument("--dump-dual", action="store_true", help="Print the dual as well.")

    gen = commands.add_parser("gen", help="Generate a seeded instance.")
    gen.add_argument("--family", choices=instance_gen.FAMILIES, default="grid")
    gen.add_argument("--size", default="3x3", help="RxC for grids, N otherwise.")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--terminals", choices=("single", "multi"), default="single")
    gen.add_argument("--vertex-costs", action="store_true")
    gen.add_argument("--vertex-capacities", action="store_true")
    gen.add_argument("--output", type=pathlib.Path, default=None)
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    args = vars(build_arg_parse().parse_args(argv))
    fields = {f.name for f in attrs.fields(RunConfig)}
    try:
        return RunConfig(**{k: v for k, v in args.items() if k in fields})
    except ValueError as exc:
        raise utils.InstanceError(str(exc)) from exc


# **********************************************************
# Commands.
# **********************************************************
def _load(config: RunConfig) -> planar_core.EmbeddedNetwork:
    assert config.input is not None
    return planar_core.load_instance(config.input)


def _mismatch(what: str, solver: Any, expected: Any) -> utils.OracleMismatch:
    return utils.OracleMismatch(
        f"{what}: solver and oracle disagree",
        diff={"field": what, "solver": utils.to_jsonable(solver), "oracle": utils.to_jsonable(expected)},
    )


def _run_interdict(config: RunConfig) -> Dict[str, Any]:
    net = _load(config)
    outcome = st_interdiction.solve_st_interdiction(
        net,
        config.budget,
        config.mode,
        use_vertex_capacities=config.vertex_capacities,
        clip_parity=config.clip_parity,
        prune=config.prune,
        engine=config.engine,
        profile_sets=config.profile,
    )
    if config.check:
        expected = oracle.interdict_exhaustive(
            net, config.budget, config.mode, config.vertex_capacities
        )
        if list(outcome.nu_profile) != list(expected.nu_profile):
            raise _mismatch("nu_profile", list(outcome.nu_profile), list(expected.nu_profile))
        left = oracle.max_flow_value(
            net,
            outcome.interdiction.arcs,
            outcome.interdiction.vertices,
            config.vertex_capacities,
        )
        if left != outcome.nu_profile[-1]:
            raise _mismatch("interdiction", left, outcome.nu_profile[-1])
    return outcome.to_json(net)


def _run_security(config: RunConfig) -> Dict[str, Any]:
    net = _load(config)
    if any(v.demand for v in net.vertices):
        outcome = multi_security.solve_security(net, config.budget, config.mode)
        data = outcome.to_json(net)
        found = outcome.security_budget
    else:
        found, single = st_interdiction.single_pair_security(
            net,
            config.budget,
            config.mode,
            use_vertex_capacities=config.vertex_capacities,
        )
        data = {
            "security_budget": found,
            "secure_up_to": None if found is not None else config.budget,
            "interdiction": None if single is None else single.interdiction.to_json(net),
            "nu_profile": None if single is None else [utils.to_jsonable(v) for v in single.nu_profile],
        }
    if config.check:
        expected = oracle.security_exhaustive(
            net, config.budget, config.mode, config.vertex_capacities
        )
        if found != expected.security_budget:
            raise _mismatch("security_budget", found, expected.security_budget)
    return data


def _solve_kdense(encoding: reductions.KDenseEncoding) -> Dict[str, Any]:
    result = oracle.interdict_exhaustive(
        encoding.network, encoding.budget, st_interdiction.WITH_VERTICES
    )
    vertices, edges = reductions.decode_kdense(encoding, result.sets[-1].vertices)
    return {
        "vertices": vertices,
        "edges": edges,
        "flow_decrease": result.nu_profile[0] - result.nu_profile[-1],
    }


def _run_kdense(config: RunConfig) -> Dict[str, Any]:
    assert config.input is not None
    graph = reductions.load_graph(config.input)
    data = _solve_kdense(reductions.encode_kdense(graph, config.k))
    if config.check:
        _vertices, best = oracle.densest_subgraph_exhaustive(graph, config.k)
        if best != data["edges"]:
            raise _mismatch("edges", data["edges"], best)
    return data


def _run_oracle(config: RunConfig) -> Dict[str, Any]:
    assert config.input is not None
    if config.oracle_command == "kdense":
        graph = reductions.load_graph(config.input)
        vertices, edges = oracle.densest_subgraph_exhaustive(graph, config.k)
        return {"vertices": vertices, "edges": edges}
    net = _load(config)
    if config.oracle_command == "interdict":
        result = oracle.interdict_exhaustive(
            net, config.budget, config.mode, config.vertex_capacities
        )
        chosen = result.sets[-1]
        index = net.index
        lift = oracle.build_lift(
            net,
            [index.arc_pos[x] for x in chosen.arcs],
            [index.vertex_pos[x] for x in chosen.vertices],
            config.vertex_capacities,
        )
        _value, side = oracle.min_cut(lift)
        return {
            "nu_profile": list(result.nu_profile),
            "interdiction": utils.to_jsonable(chosen),
            "cut": {"side": sorted(set(side) | set(chosen.vertices))},
        }
    result = oracle.security_exhaustive(
        net, config.budget, config.mode, config.vertex_capacities
    )
    return {
        "security_budget": result.security_budget,
        "secure_up_to": None if result.security_budget is not None else config.budget,
        "interdiction": utils.to_jsonable(result.breaking_set),
    }


def _run_validate(config: RunConfig) -> Dict[str, Any]:
    net = _load(config)
    report = planar_core.validate(net)
    data: Dict[str, Any] = {
        "ok": report.ok,
        "problems": report.problems(),
        "report": utils.to_jsonable(report),
    }
    if config.dump_dual and not report.rotation_problems:
        faces = planar_core.trace_faces(net)
        if any(not utils.is_inf(v.cost) for v in net.vertices):
            dual = dual_builder.build_modified_dual(net, faces)
        else:
            dual = dual_builder.build_dual(net, faces)
        data["dual"] = dual_builder.dump_dual(dual, net)
    if not report.ok:
        raise utils.ValidationFailed("Instance failed validation", report=data)
    return data


def _run_gen(config: RunConfig) -> Optional[Dict[str, Any]]:
    options = instance_gen.GenOptions(
        terminals=config.terminals,
        vertex_costs=config.vertex_costs,
        vertex_capacities=config.vertex_capacities,
    )
    net = instance_gen.generate(config.family, config.size, config.seed, options)
    if config.output is not None:
        planar_core.save_instance(net, config.output)
        utils.log_always(f"Wrote {config.family} {config.size} seed {config.seed} to {config.output}")
        return None
    return planar_core.dump_instance(net)


_HANDLERS = {
    "interdict": _run_interdict,
    "security": _run_security,
    "kdense": _run_kdense,
    "oracle": _run_oracle,
    "validate": _run_validate,
    "gen": _run_gen,
}


def run(config: RunConfig) -> Optional[Dict[str, Any]]:
    """Runs one command and returns its JSON payload."""
    utils.log_to_output(f"Running {config.command}", utils.MessageType.Info)
    return _HANDLERS[config.command](config)


def _error_payload(exc: utils.PlanarIntError) -> Dict[str, Any]:
    data: Dict[str, Any] = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    if isinstance(exc, utils.OracleMismatch):
        data["diff"] = exc.diff
    elif isinstance(exc, utils.ValidationFailed) and isinstance(exc.report, dict):
        data.update(exc.report)
    return data


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_config(argv)
    except utils.PlanarIntError as exc:
        utils.log_error(str(exc))
        print(utils.dumps_json(_error_payload(exc)))
        return exc.exit_code
    os.environ["PLANARINT_THREADS"] = str(config.threads)
    utils.configure_logging(config.log_level)
    try:
        data = run(config)
    except utils.PlanarIntError as exc:
        utils.log_error(f"{type(exc).__name__}: {exc}")
        print(utils.dumps_json(_error_payload(exc)))
        return exc.exit_code
    except Exception:  # pylint: disable=broad-except
        utils.log_error(f"Unexpected failure:\r\n{traceback.format_exc()}")
        return 1
    if data is not None:
        print(utils.dumps_json(data))
    return 0


if __name__ == "__main__":
    sys.exit(main())
