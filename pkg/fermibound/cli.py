# -----------------------------------------------------------------------------.
# MIT License

# Copyright (c) 2026 fermi-bound developers
#
# This file is part of fermi-bound.

# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

# -----------------------------------------------------------------------------.
"""This module implements the ``fermibound`` command-line interface.

Subcommands: ``bounds``, ``verify-monogamy``, ``ground-cert``, ``definetti-approx`` and ``witness``.
Exit codes: 0 pass, 1 bound violation, 2 input error, 3 optimizer non-convergence.
"""
import argparse
import logging
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from fermibound.bounds import BOUND_TAGS, evaluate_bound, thm6_bound
from fermibound.certification import certificate
from fermibound.checks import BoundViolationError, DimensionCapError, SchemaError, check_format
from fermibound.definetti import SpinState, build_separable_approx
from fermibound.fock import SystemShape
from fermibound.graphs import (
    complete_bipartite_graph,
    complete_graph,
    lattice_graph,
    path_graph,
    ring_graph,
    star_graph,
)
from fermibound.io import read_config_file, read_graph_file, read_hamiltonian_file, read_matrix_dump, write_matrix_dump, write_report
from fermibound.reports import BoundRecord, BoundReport
from fermibound.states import DensityState, build_witness, monogamy_check, pair_distance, random_density_state
from fermibound.utils.parallel import compute_ordered

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2
EXIT_NOT_CONVERGED = 3

GRAPH_CHOICES = ("star", "ring", "path", "complete", "bipartite", "lattice")
DEFAULT_BOUND_TAGS = "thm1,cor3,cor4,cor5"

_HANDLER = None


@dataclass
class RunConfig:
    """Options of a single CLI run."""

    command: str
    input: str | None = None
    seed: int = 0
    trials: int = 1
    threads: int = 1
    tol: float | None = None
    fmt: str = "json"
    strict_proof: bool = False
    out: str | None = None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"'seed' must be a 64-bit nonnegative integer. Got {self.seed}.")
        if self.trials < 0:
            raise ValueError(f"'trials' must be nonnegative. Got {self.trials}.")
        if self.threads < 1:
            raise ValueError(f"'threads' must be positive. Got {self.threads}.")
        if self.tol is not None and not self.tol > 0:
            raise ValueError(f"'tol' must be positive. Got {self.tol}.")
        check_format(self.fmt)

    @classmethod
    def from_namespace(cls, args):
        common = {"command", "input", "seed", "trials", "threads", "tol", "format", "strict_proof", "out"}
        ignored = {"config", "log_level", "func"}
        options = {key: value for key, value in vars(args).items() if key not in common | ignored}
        return cls(
            command=args.command,
            input=args.input,
            seed=args.seed,
            trials=args.trials,
            threads=args.threads,
            tol=args.tol,
            fmt=args.format,
            strict_proof=args.strict_proof,
            out=args.out,
            options=options,
        )


####--------------------------------------------------------------------------.
#### Helpers


def _graph_from_options(config, family, num_sites):
    """Return ``(graph, weight)`` from the input file or from a named family."""
    if config.input is not None:
        return read_graph_file(config.input)
    builders = {
        "star": star_graph,
        "ring": ring_graph,
        "path": path_graph,
        "complete": complete_graph,
        "bipartite": lambda n: complete_bipartite_graph(n // 2, n - n // 2),
        "lattice": lambda n: lattice_graph(2, math.isqrt(n), periodic=True),
    }
    if family not in builders:
        raise ValueError(f"Invalid graph family '{family}'. Valid families are {list(builders)}.")
    return builders[family](num_sites), None


def _emit(report, config):
    write_report(report, config.out, fmt=config.fmt, strict_proof=config.strict_proof)


def _parse_sites(text, name):
    try:
        return [int(value) for value in str(text).split(",") if value.strip() != ""]
    except ValueError:
        raise ValueError(f"'{name}' must be a comma-separated list of integers. Got '{text}'.")


####--------------------------------------------------------------------------.
#### Subcommands


def cmd_bounds(config):
    """Evaluate the requested bounds and write one record per tag."""
    opts = config.options
    tags = [tag.strip() for tag in opts["tags"].split(",") if tag.strip()]
    unknown = [tag for tag in tags if tag not in BOUND_TAGS]
    if unknown:
        raise ValueError(f"Unknown bound tag(s) {unknown}. Valid tags are {list(BOUND_TAGS)}.")
    graph, weight = (None, None)
    if config.input is not None:
        graph, weight = read_graph_file(config.input)
    family = opts.get("family")
    size = opts.get("c") if family == "c_regular" else opts.get("N")
    if graph is None and family == "star" and size is not None:
        graph = star_graph(size)
    params = {
        "p": opts["p"],
        "d": opts.get("d"),
        "graph": graph,
        "weight": weight,
        "site": opts.get("site"),
        "cover_mode": opts.get("cover_mode"),
        "family": family,
        "size": size,
        "n": opts.get("n_ext") if opts.get("n_ext") is not None else opts.get("N"),
        "k": opts.get("k_ext"),
        "epsilon": opts.get("epsilon"),
        "t": opts.get("t"),
        "U": opts.get("U"),
        "D": opts.get("D"),
    }
    report = BoundReport(name="bounds")
    for tag in tags:
        report.add(evaluate_bound(tag, **params))
    report.summary = {"tags": tags, "graph": graph.to_dict() if graph is not None else None}
    _emit(report, config)
    return EXIT_PASS


def _monogamy_trial(shape, graph, seed, trial):
    rng = np.random.default_rng([seed, trial])
    return monogamy_check(random_density_state(shape, rng), graph)


def cmd_verify_monogamy(config):
    """Check the monogamy bound on random states, a dumped state or the witness state."""
    opts = config.options
    graph, _ = _graph_from_options(config, opts["family"], opts["N"])
    shape = SystemShape(graph.num_vertices, opts["p"])
    if opts.get("witness"):
        center = graph.max_degree_vertex()
        rest = [v for v in range(graph.num_vertices) if v != center]
        reports = [monogamy_check(build_witness(shape, [center], rest), graph)]
        mode = "witness"
    elif opts.get("state") is not None:
        reports = [monogamy_check(DensityState(shape, read_matrix_dump(opts["state"])), graph)]
        mode = "state"
    else:
        list_args = [(shape, graph, config.seed, trial) for trial in range(config.trials)]
        reports = compute_ordered(_monogamy_trial, list_args, threads=config.threads)
        mode = "random"
    report = BoundReport(name="verify_monogamy")
    for trial, trial_report in enumerate(reports):
        for record in trial_report.records:
            record.params["trial"] = trial
            report.add(record)
    report.flag("thm1_vs_thm11_factor_4")
    report.summary = {
        "mode": mode,
        "trials": len(reports),
        "num_sites": graph.num_vertices,
        "p": opts["p"],
        "violations": report.num_violations,
        "max_ratio": report.max_ratio,
    }
    _emit(report, config)
    return EXIT_PASS if report.passed else EXIT_VIOLATION


def cmd_ground_cert(config):
    """Certify the ground energy of the Hamiltonian given in the input file."""
    if config.input is None:
        raise ValueError("'ground-cert' requires --input with a Hamiltonian file.")
    opts = config.options
    hamiltonian = read_hamiltonian_file(config.input)
    report = certificate(
        hamiltonian,
        cover_mode=opts["cover_mode"],
        restarts=opts["restarts"],
        tol=config.tol if config.tol is not None else 1e-10,
        max_iters=opts["max_iters"],
        seed=config.seed,
        threads=config.threads,
    )
    _emit(report, config)
    if not report.passed:
        return EXIT_VIOLATION
    if not report.summary["converged"]:
        return EXIT_NOT_CONVERGED
    return EXIT_PASS


def cmd_definetti(config):
    """Build separable approximations of random spin states and check them against the bound."""
    opts = config.options
    n, d, k = opts["n"], opts["d"], opts["k"]
    graph, weight = _graph_from_options(config, opts["graph"], n)
    if weight is not None:
        family = weight
    elif config.input is not None:
        family = "general"
    else:
        family = {"star": "star", "bipartite": "bipartite", "ring": "c_regular", "complete": "c_regular"}.get(
            opts["graph"],
            "general",
        )
    report = BoundReport(name="definetti_approx")
    trials = []
    for trial in range(config.trials):
        rho = SpinState.random(graph.num_vertices, d, np.random.default_rng([config.seed, trial]))
        approx = build_separable_approx(
            rho,
            family,
            k,
            graph=graph,
            method=opts["method"],
            num_samples=opts["num_samples"],
            seed=config.seed,
            threads=config.threads,
        )
        approx.bound.params["trial"] = trial
        report.add(approx.bound)
        for note in approx.notes:
            report.flag(note)
        trials.append(approx.to_dict())
    report.summary = {
        "bound": trials[0]["bound"] if trials else None,
        "measured": max((t["measured"] for t in trials), default=None),
        "k_prime": trials[0]["k_prime"] if trials else None,
        "C": trials[0]["C"] if trials else None,
        "kappa_measured": trials[0]["kappa_measured"] if trials else None,
        "trials": trials,
    }
    _emit(report, config)
    return EXIT_PASS if report.passed else EXIT_VIOLATION


def cmd_witness(config):
    """Build the witness state and report its pair distances against the monogamy bounds."""
    opts = config.options
    N = opts["N"]
    V1 = _parse_sites(opts["v1"], "v1")
    V2 = [v for v in range(N) if v not in V1]
    shape = SystemShape(N, 1)
    rho = build_witness(shape, V1, V2)
    expected = 1 / math.sqrt(len(V1) * len(V2))
    distances = {(i, j): pair_distance(rho, i, j) for i in V1 for j in V2}
    deviation = max(abs(value - expected) for value in distances.values())
    if deviation > 1e-9:
        raise BoundViolationError(f"Witness pair distances deviate from 1/sqrt(|V1||V2|) by {deviation}.")
    report = BoundReport(name="witness")
    for i in V1:
        measured = float(np.mean([distances[(i, j)] for j in V2]))
        record = evaluate_bound("thm1", p=1, degree=len(V2))
        record.params["site"] = i
        record.measured = measured
        report.add(record)
    mean_distance = float(np.mean(list(distances.values())))
    report.add(
        BoundRecord("thm6", thm6_bound(1, len(V1), len(V2)), params={"p": 1, "n": len(V1), "k": len(V2)}, measured=mean_distance),
    )
    report.summary = {"N": N, "V1": V1, "V2": V2, "measured": mean_distance, "expected": expected}
    if opts.get("dump") is not None:
        write_matrix_dump(rho.matrix, opts["dump"])
    _emit(report, config)
    return EXIT_PASS if report.passed else EXIT_VIOLATION


COMMANDS = {
    "bounds": cmd_bounds,
    "verify-monogamy": cmd_verify_monogamy,
    "ground-cert": cmd_ground_cert,
    "definetti-approx": cmd_definetti,
    "witness": cmd_witness,
}


####--------------------------------------------------------------------------.
#### Parser


def _common_parser():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--input", default=None, help="Input file (graph or Hamiltonian, YAML or JSON).")
    parser.add_argument("--seed", type=int, default=0, help="Base random seed.")
    parser.add_argument("--trials", type=int, default=1, help="Number of random trials.")
    parser.add_argument("--threads", type=int, default=1, help="Number of worker threads.")
    parser.add_argument("--tol", type=float, default=None, help="Convergence tolerance override.")
    parser.add_argument("--format", choices=["json", "csv"], default="json", help="Report format.")
    parser.add_argument("--strict-proof", action="store_true", help="Also report proof-consistent values.")
    parser.add_argument("--out", default=None, help="Output file (standard output by default).")
    parser.add_argument("--config", default=None, help="YAML file with default option values.")
    parser.add_argument("--log-level", default="WARNING", help="Logging level (e.g. INFO, DEBUG).")
    return parser


def build_parser():
    """Return the argument parser and its subparsers by command name."""
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="fermibound", description="Monogamy and product-approximation bounds for fermions.")
    commands = parser.add_subparsers(dest="command", required=True)
    subparsers = {}

    bounds = commands.add_parser("bounds", parents=[common], help="Evaluate closed-form bounds.")
    bounds.add_argument("--tags", default=DEFAULT_BOUND_TAGS, help="Comma-separated bound tags.")
    bounds.add_argument("--p", type=int, default=1, help="Modes per site.")
    bounds.add_argument("--d", type=int, default=None, help="Local dimension of distinguishable sites.")
    bounds.add_argument("--family", choices=["c_regular", "star", "hubbard_spinless"], default=None)
    bounds.add_argument("--N", type=int, default=None, help="Number of sites (star family, bipartite n).")
    bounds.add_argument("--c", type=int, default=None, help="Degree of c-regular graphs.")
    bounds.add_argument("--n-ext", type=int, default=None, help="Extendibility n.")
    bounds.add_argument("--k-ext", type=int, default=None, help="Extendibility or conditioning k.")
    bounds.add_argument("--epsilon", type=float, default=None)
    bounds.add_argument("--site", type=int, default=None, help="Site of the monogamy bound.")
    bounds.add_argument("--cover-mode", choices=["auto", "exact", "greedy"], default="auto")
    bounds.add_argument("--t", type=float, default=None)
    bounds.add_argument("--U", type=float, default=None)
    bounds.add_argument("--D", type=int, default=None)
    subparsers["bounds"] = bounds

    monogamy = commands.add_parser("verify-monogamy", parents=[common], help="Check the monogamy bound on states.")
    monogamy.add_argument("--p", type=int, default=1)
    monogamy.add_argument("--family", choices=GRAPH_CHOICES, default="star")
    monogamy.add_argument("--N", type=int, default=6)
    monogamy.add_argument("--witness", action="store_true", help="Use the witness state instead of random states.")
    monogamy.add_argument("--state", default=None, help="Matrix dump of a state to check.")
    subparsers["verify-monogamy"] = monogamy

    ground = commands.add_parser("ground-cert", parents=[common], help="Certify a two-local Hamiltonian.")
    ground.add_argument("--restarts", type=int, default=16)
    ground.add_argument("--max-iters", type=int, default=500)
    ground.add_argument("--cover-mode", choices=["auto", "exact", "greedy"], default="auto")
    subparsers["ground-cert"] = ground

    definetti = commands.add_parser("definetti-approx", parents=[common], help="Separable approximation of spin states.")
    definetti.add_argument("--n", type=int, default=4)
    definetti.add_argument("--d", type=int, default=2)
    definetti.add_argument("--k", type=int, default=2)
    definetti.add_argument("--graph", choices=GRAPH_CHOICES, default="star")
    definetti.add_argument("--method", choices=["auto", "exhaustive", "sampled"], default="auto")
    definetti.add_argument("--num-samples", type=int, default=2000)
    subparsers["definetti-approx"] = definetti

    witness = commands.add_parser("witness", parents=[common], help="Witness state saturating the monogamy scaling.")
    witness.add_argument("--N", type=int, default=5)
    witness.add_argument("--v1", default="0", help="Comma-separated sites of V1.")
    witness.add_argument("--dump", default=None, help="Write the witness state as a matrix dump.")
    subparsers["witness"] = witness
    return parser, subparsers


def _setup_logging(level):
    global _HANDLER
    package_logger = logging.getLogger("fermibound")
    if _HANDLER is not None:
        package_logger.removeHandler(_HANDLER)
    _HANDLER = logging.StreamHandler(sys.stderr)
    _HANDLER.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    package_logger.addHandler(_HANDLER)
    package_logger.setLevel(level.upper() if isinstance(level, str) else level)


def parse_config(argv=None):
    """Parse the command line, applying ``--config`` defaults, and return ``(args, RunConfig)``."""
    parser, subparsers = build_parser()
    args = parser.parse_args(argv)
    if args.config is not None:
        defaults = read_config_file(args.config)
        known = set(vars(args))
        for key in defaults:
            if key.replace("-", "_") not in known:
                raise SchemaError(key, "is not an option of the subcommand")
        subparsers[args.command].set_defaults(**{key.replace("-", "_"): value for key, value in defaults.items()})
        args = parser.parse_args(argv)
    return args, RunConfig.from_namespace(args)


def main(argv=None):
    """Run the command line interface and return the exit code."""
    try:
        args, config = parse_config(argv)
        _setup_logging(args.log_level)
        return COMMANDS[config.command](config)
    except BoundViolationError as e:
        logger.error("Bound violation: %s", e)
        sys.stderr.write(f"fermibound: bound violation: {e}\n")
        return EXIT_VIOLATION
    except (SchemaError, DimensionCapError, FileNotFoundError, ValueError, TypeError) as e:
        logger.error("Input error: %s", e)
        sys.stderr.write(f"fermibound: {e}\n")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
