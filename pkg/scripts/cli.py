"""
ramsey-witness CLI.

Usage: ramsey <command>

Commands:
  detect <pattern> <graphfile>              Exact search for a copy of a pattern
  dichotomy <driver> <graphfile> [...]      Run a dichotomy driver and print its witness
  ramsey exact -H <g> -F <g> --nmax N       Exact small Ramsey number
  stress <driver> --trials T --seed S       Stress a driver on generated instances
  classify-subdivision <graphfile>          Identify a K4-subdivision and its base pattern
  treewidth <graphfile>                     Exact treewidth and a smooth tree decomposition
  serve                                     Run the HTTP API
  config set <key> <value>                  Save a config value
  config show                               Show the effective config

Patterns and graph files accept named shorthands (K4STAR, C5, K3,3, ...),
"n m" edge lists and graph6 strings.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from pydantic import ValidationError

from src.errors import InvariantViolation, SearchBudgetExceeded, ToolkitError
from src.services.drivers import DRIVERS, run_driver
from src.services.graph import Graph
from src.services.graphio import format_graph6, read_graph, resolve_graph
from src.services.instances import Instance
from src.services.oracle import WitnessContext, ramsey_exact, subgraph_find, verify_witness
from src.services.stress import report_csv, run_stress
from src.services.subdivision import classify_subdivision
from src.services.treewidth import elimination_order, smooth_tree_decomposition
from src.services.witness import DichotomyResult
from src.types import Config, InstanceSpec

CONFIG_DIR = os.path.expanduser("~/.config/ramsey-witness")
CONFIG_PATH = os.path.join(CONFIG_DIR, "config.json")

EXIT_OK, EXIT_ERROR, EXIT_FAILURE = 0, 1, 2


def load_config() -> dict:
    """Load config from file, overlay env vars and CLI flags."""
    config = {}
    if os.path.exists(CONFIG_PATH):
        with open(CONFIG_PATH) as f:
            config = json.load(f)
    # Env vars override file
    if os.environ.get("RAMSEY_SEED"):
        config["seed"] = os.environ["RAMSEY_SEED"]
    return config


def save_config(data: dict) -> None:
    os.makedirs(CONFIG_DIR, mode=0o700, exist_ok=True)
    with open(CONFIG_PATH, "w") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")


def emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def fail(message: str) -> None:
    print(f"Error: {message}")
    sys.exit(EXIT_ERROR)


def load_graph(source: str) -> Graph:
    """A shorthand or inline graph6 string, else a path to a graph file."""
    if Path(source).is_file():
        return read_graph(source)
    return resolve_graph(source)


def finish(result: DichotomyResult, verified: bool, **extra) -> None:
    emit({**result.to_document(), **extra, "verified": verified})
    if result.is_failure:
        sys.exit(EXIT_FAILURE)
    if not verified:
        fail("witness failed verification")


def cmd_config(args, config: dict) -> None:
    action = args.config_action
    if not action:
        print("Usage: ramsey config {set,show}")
        sys.exit(EXIT_ERROR)
    if action == "set":
        stored = {}
        if os.path.exists(CONFIG_PATH):
            with open(CONFIG_PATH) as f:
                stored = json.load(f)
        stored[args.key] = json.loads(args.value) if args.value.lstrip("-").isdigit() else args.value
        try:
            Config(**stored)
        except ValidationError as e:
            fail(f"invalid config: {e.errors()[0]['msg']}")
        save_config(stored)
        print(f"{args.key} saved.")
    elif action == "show":
        emit(args.cfg.model_dump())
        print(f"Config: {CONFIG_PATH}")


def cmd_detect(args, config: dict) -> None:
    pattern, host = load_graph(args.pattern), load_graph(args.graph)
    try:
        copy = subgraph_find(host, pattern, budget=args.cfg.search_budget)
    except SearchBudgetExceeded as e:
        result = DichotomyResult.failure(f"search budget of {e.budget} nodes exceeded")
    else:
        result = DichotomyResult.pattern_copy(copy) if copy is not None else DichotomyResult.failure("absent")
    finish(result, verify_witness(result, WitnessContext(host=host, pattern=pattern)))


def cmd_dichotomy(args, config: dict) -> None:
    inst = Instance(
        host=load_graph(args.graph),
        pattern=load_graph(args.pattern) if args.pattern else None,
        target=load_graph(args.target) if args.target else None,
        n=args.n,
        k=args.k,
    )
    result, verified = run_driver(args.driver, inst, args.cfg)
    finish(result, verified, driver=args.driver)


def cmd_ramsey(args, config: dict) -> None:
    if args.ramsey_action != "exact":
        print("Usage: ramsey ramsey exact -H <pattern> -F <target> --nmax N")
        sys.exit(EXIT_ERROR)
    nmax = args.nmax or args.cfg.nmax
    outcome = ramsey_exact(load_graph(args.H), load_graph(args.F), nmax)
    if outcome.exceeded:
        print(f"> {nmax}")
        if outcome.witness is not None:
            print(f"witness: {format_graph6(outcome.witness)}")
        return
    print(outcome.value)


def cmd_stress(args, config: dict) -> None:
    spec = InstanceSpec(
        vertices=args.vertices,
        density=args.density,
        n=args.n,
        k=args.k,
        planted=args.planted,
        pattern=args.pattern,
        target=args.target,
    )
    trials = args.trials or args.cfg.trials
    seed = args.cfg.seed if args.stress_seed is None else args.stress_seed
    report = run_stress(args.driver, trials, seed, spec=spec, cfg=args.cfg, jobs=args.cfg.jobs)
    logging.getLogger(__name__).info("stress finished in %.3fs", report.wall_seconds)
    table = report_csv(report)
    if args.out:
        Path(args.out).write_text(table)
    else:
        print(table, end="")
    emit({**report.model_dump(exclude={"wall_seconds"}), "passed": report.passed})
    if not report.passed:
        sys.exit(EXIT_ERROR)


def cmd_classify(args, config: dict) -> None:
    pattern = classify_subdivision(load_graph(args.graph))
    emit({
        "base": pattern.base,
        "branch": list(pattern.branch),
        "lengths": list(pattern.lengths),
        "chains": [list(c) for c in pattern.chains],
    })


def cmd_treewidth(args, config: dict) -> None:
    h = load_graph(args.graph)
    width, order = elimination_order(h)
    dec = smooth_tree_decomposition(h)
    emit({
        "treewidth": width,
        "order": order,
        "bags": [sorted(b) for b in dec.bags],
        "tree": [list(e) for e in dec.tree],
        "smooth": dec.is_smooth(),
        "valid": not dec.problems(h),
    })


def cmd_serve(args, config: dict) -> None:
    import uvicorn

    uvicorn.run("src.index:app", host=args.host, port=args.port)


def main(argv: list[str] | None = None):
    parser = argparse.ArgumentParser(prog="ramsey", description="ramsey-witness CLI")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug (stderr)")
    parser.add_argument("--seed", type=int, help="Random seed (overrides config and RAMSEY_SEED)")
    parser.add_argument("--jobs", type=int, help="Worker processes for stress trials")
    parser.add_argument("--C", dest="C", type=int, help="Constant C")
    parser.add_argument("--C0", dest="C0", type=int, help="Constant C0 (triangle elimination)")
    parser.add_argument("--C1", dest="C1", type=int, help="Constant C1")
    parser.add_argument("--search-budget", type=int, help="Node budget of backtracking pre-passes")
    sub = parser.add_subparsers(dest="command")

    # config
    cfg_p = sub.add_parser("config", help="Manage CLI config")
    cfg_sub = cfg_p.add_subparsers(dest="config_action")
    cfg_set = cfg_sub.add_parser("set", help="Save a config value")
    cfg_set.add_argument("key", choices=sorted(Config.model_fields), help="Config field")
    cfg_set.add_argument("value", help="Value")
    cfg_sub.add_parser("show", help="Show the effective config")

    # detect
    det = sub.add_parser("detect", help="Exact search for a pattern copy")
    det.add_argument("pattern", help="Pattern shorthand, graph6 or file")
    det.add_argument("graph", help="Host graph file")

    # dichotomy
    dic = sub.add_parser("dichotomy", help="Run a dichotomy driver")
    dic.add_argument("driver", choices=sorted(DRIVERS))
    dic.add_argument("graph", help="Host graph file")
    dic.add_argument("--pattern", "-H", help="Pattern H")
    dic.add_argument("--target", "-F", help="Target F")
    dic.add_argument("-n", type=int, help="Independent set / biclique size")
    dic.add_argument("-k", type=int, help="Excess parameter of ev-biclique")

    # ramsey
    ram = sub.add_parser("ramsey", help="Exact Ramsey numbers")
    ram.add_argument("ramsey_action", choices=["exact"])
    ram.add_argument("-H", required=True, help="Pattern H")
    ram.add_argument("-F", required=True, help="Target F")
    ram.add_argument("--nmax", type=int, help="Largest N to try")

    # stress
    st = sub.add_parser("stress", help="Stress a driver")
    st.add_argument("driver", choices=sorted(DRIVERS))
    st.add_argument("--trials", type=int)
    st.add_argument("--seed", dest="stress_seed", type=int)
    st.add_argument("--vertices", type=int, default=48)
    st.add_argument("--density", type=float, default=0.1)
    st.add_argument("-n", type=int, default=3)
    st.add_argument("-k", type=int, default=3)
    st.add_argument("--planted", action="store_true")
    st.add_argument("--pattern")
    st.add_argument("--target")
    st.add_argument("--out", help="Write the CSV here instead of stdout")

    # classify-subdivision / treewidth
    cls = sub.add_parser("classify-subdivision", help="Classify a K4-subdivision")
    cls.add_argument("graph")
    tw = sub.add_parser("treewidth", help="Exact treewidth and smooth decomposition")
    tw.add_argument("graph")

    # serve
    srv = sub.add_parser("serve", help="Run the HTTP API")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)

    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        sys.exit(EXIT_ERROR)

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    config = load_config()
    # CLI flags override everything
    for field in ("seed", "jobs", "C", "C0", "C1", "search_budget"):
        value = getattr(args, field)
        if value is not None:
            config[field] = value
    try:
        args.cfg = Config(**config)
    except ValidationError as e:
        fail(f"invalid config: {e.errors()[0]['msg']}")

    commands = {
        "config": cmd_config,
        "detect": cmd_detect,
        "dichotomy": cmd_dichotomy,
        "ramsey": cmd_ramsey,
        "stress": cmd_stress,
        "classify-subdivision": cmd_classify,
        "treewidth": cmd_treewidth,
        "serve": cmd_serve,
    }
    try:
        commands[args.command](args, config)
    except InvariantViolation as e:
        fail(f"internal invariant violated: {e}")
    except ToolkitError as e:
        fail(str(e))


if __name__ == "__main__":
    main()
