"""Command-line front end: ``divsol {solve,verify,validate,enumerate}``.

Exit codes: 0 success, 1 input or budget error, 2 infeasible instance,
3 verification failure.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import diversify, refsolvers
from .errors import DivsolError, InfeasibleError, InvalidInputError, ResourceError
from .framework import FEWER_THAN_K, DiverseResult, ExtensionOracle, iter_topk, solve_diverse, solve_diverse_greedy
from .ground import DEFAULT_SCALE_DIGITS, GroundSet, SolutionFamily, sum_diversity
from .interval import DEFAULT_STATE_BUDGET, IntervalOracle, exact_diverse_schedulings, state_count
from .io import FORMATS, PROBLEM_FORMAT, read_text, render_decimal, sniff_format
from .matching import MatchingInstance, MatchingOracle
from .matroid import CommonBaseOracle, common_base_problem, spot_check_axioms
from .mincut import MinCutOracle, solve_diverse_min_cuts
from .problems import IntervalProblem, MatchingProblem, MatroidProblem, MinCutProblem, ProblemInstance

ALGORITHMS = ("auto", "local-search", "greedy", "exact", "ptas")
EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 1, 2, 3
ENUM_CAP = 5000


@dataclass
class RunConfig:
    problem: str
    path: str
    k: int
    r: int | None = None
    epsilon: Fraction | None = None
    algorithm: str = "auto"
    json_out: str | None = None
    parallel: bool = False
    timing: bool = False
    scale_digits: int = DEFAULT_SCALE_DIGITS

    def check(self) -> None:
        if self.k < 1:
            raise InvalidInputError(f"--k must be at least 1, got {self.k}")
        if self.epsilon is not None and not 0 < self.epsilon < 1:
            raise InvalidInputError(f"--epsilon must lie in (0, 1), got {self.epsilon}")
        if self.algorithm not in ALGORITHMS:
            raise InvalidInputError(f"unknown algorithm {self.algorithm!r}")
        if self.algorithm == "ptas" and self.epsilon is None:
            raise InvalidInputError("--algorithm ptas needs --epsilon")
        if self.problem in ("matching", "interval") and self.r is None:
            raise InvalidInputError(f"--problem {self.problem} needs --r")


@dataclass
class Loaded:
    problem: ProblemInstance
    ground: GroundSet
    labels: list[str]

    def oracle(self) -> ExtensionOracle:
        p = self.problem
        if isinstance(p, MatchingProblem):
            return MatchingOracle(MatchingInstance(p.graph, p.r))
        if isinstance(p, MatroidProblem):
            return CommonBaseOracle(p.m1, p.m2)
        if isinstance(p, MinCutProblem):
            return MinCutOracle(p.graph)
        return IntervalOracle(p.intervals, p.r)


def load(cfg: RunConfig) -> Loaded:
    text = read_text(cfg.path)
    parsed = FORMATS[PROBLEM_FORMAT[cfg.problem]](text, cfg.scale_digits)
    if cfg.problem == "matching":
        MatchingInstance(parsed.graph, cfg.r)
        prob = MatchingProblem(parsed.graph, cfg.r)
    elif cfg.problem == "mincut":
        prob = MinCutProblem(parsed.graph)
    elif cfg.problem == "interval":
        if cfg.r < 0:
            raise InvalidInputError(f"--r must be nonnegative, got {cfg.r}")
        prob = IntervalProblem(parsed.intervals, cfg.r)
    else:
        prob = MatroidProblem(parsed.m1, parsed.m2)
    return Loaded(prob, parsed.ground(), parsed.labels())


def _exact_by_enumeration(oracle: ExtensionOracle, g: GroundSet, k: int) -> DiverseResult:
    """List every feasible solution through the top-k enumerator, then pick
    the best k-subset exhaustively."""
    sols = [s for s, _ in itertools.islice(iter_topk(oracle, (0,) * g.size), ENUM_CAP + 1)]
    if len(sols) > ENUM_CAP:
        raise ResourceError(f"more than {ENUM_CAP} feasible solutions; exact search is out of budget")
    if len(sols) < k:
        raise InfeasibleError(f"{FEWER_THAN_K} ({len(sols)} < {k})")
    sel = diversify.exact_bruteforce(sols, g, k)
    fam = SolutionFamily(g.size, [sols[i] for i in sel])
    return DiverseResult(fam, sum_diversity(g, fam), "exact", Fraction(1), oracle_calls=oracle.calls)


def _single(oracle: ExtensionOracle, g: GroundSet) -> DiverseResult:
    for sol, _ in iter_topk(oracle, g.weights):
        fam = SolutionFamily(g.size, [sol])
        return DiverseResult(fam, 0, "exact", Fraction(1), oracle_calls=oracle.calls)
    raise InfeasibleError(f"{FEWER_THAN_K} (0 < 1)")


def dispatch(cfg: RunConfig, data: Loaded) -> DiverseResult:
    g, k, algo, eps = data.ground, cfg.k, cfg.algorithm, cfg.epsilon
    prob = data.problem
    oracle = data.oracle()
    if k == 1:
        return _single(oracle, g)
    if algo == "greedy":
        return solve_diverse_greedy(oracle, g, k)
    if algo == "local-search":
        return solve_diverse(oracle, g, k, parallel=cfg.parallel, with_greedy=False)
    if isinstance(prob, MinCutProblem):
        if algo == "exact":
            return solve_diverse_min_cuts(prob.graph, k, ground=g, exact=True)
        return solve_diverse_min_cuts(prob.graph, k, epsilon=eps, ground=g)
    if isinstance(prob, IntervalProblem):
        if algo == "exact":
            return exact_diverse_schedulings(prob.intervals, prob.r, k, g)
        if algo == "auto" and eps is None:
            if state_count(len(prob.intervals), prob.r, k) <= DEFAULT_STATE_BUDGET:
                return exact_diverse_schedulings(prob.intervals, prob.r, k, g)
            return solve_diverse(oracle, g, k, parallel=cfg.parallel)
    if algo == "exact":
        return _exact_by_enumeration(oracle, g, k)
    if eps is not None and (algo == "ptas" or algo == "auto"):
        if diversify.ptas_branch(k, eps) == "exact":
            if isinstance(prob, IntervalProblem):
                return exact_diverse_schedulings(prob.intervals, prob.r, k, g)
            return _exact_by_enumeration(oracle, g, k)
        return solve_diverse(oracle, g, k, parallel=cfg.parallel, with_greedy=False)
    return solve_diverse(oracle, g, k, parallel=cfg.parallel)


def _fraction_text(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def report(cfg: RunConfig, data: Loaded, res: DiverseResult) -> dict:
    g = data.ground
    value = sum_diversity(g, res.family)
    assert value == res.value, "reported diversity disagrees with recomputation"
    out = {
        "status": "ok",
        "problem": cfg.problem,
        "algorithm": res.algorithm,
        "k": cfg.k,
    }
    if cfg.r is not None:
        out["r"] = cfg.r
    if cfg.epsilon is not None:
        out["epsilon"] = _fraction_text(cfg.epsilon)
    out["solutions"] = [
        {"elements": list(s.members), "labels": [data.labels[e] for e in s.members]}
        for s in res.family
    ]
    out["d_sum"] = render_decimal(value, g.scale_digits)
    out["d_sum_scaled"] = str(value)
    out["scale_digits"] = g.scale_digits
    out["factor"] = float(res.factor)
    out["factor_exact"] = _fraction_text(res.factor)
    out["oracle_calls"] = res.oracle_calls
    out["iterations"] = res.iterations
    return out


def _emit(doc: dict, json_out: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    sys.stdout.write(text)
    if json_out:
        with open(json_out, "w") as fh:
            fh.write(text)


def _config(ns) -> RunConfig:
    eps = None
    if ns.epsilon is not None:
        try:
            eps = Fraction(ns.epsilon)
        except (ValueError, ZeroDivisionError):
            raise InvalidInputError(f"--epsilon is not a number: {ns.epsilon!r}") from None
    cfg = RunConfig(ns.problem, ns.instance, ns.k, ns.r, eps, ns.algorithm, ns.json_out,
                    ns.parallel, ns.timing, ns.scale_digits)
    cfg.check()
    return cfg


def cmd_solve(ns) -> int:
    cfg = _config(ns)
    t0 = time.perf_counter()
    data = load(cfg)
    res = dispatch(cfg, data)
    doc = report(cfg, data, res)
    elapsed = time.perf_counter() - t0
    if cfg.timing:
        doc["wall_time_s"] = round(elapsed, 6)
    print(f"wall time: {elapsed:.3f} s", file=sys.stderr)
    _emit(doc, cfg.json_out)
    return EXIT_OK


def cmd_verify(ns) -> int:
    cfg = _config(ns)
    data = load(cfg)
    res = dispatch(cfg, data)
    doc = report(cfg, data, res)
    catalog = refsolvers.enumerate_all(data.problem)
    opt, witness = refsolvers.exact_diversity(catalog, data.ground, cfg.k)
    members = set(catalog.solutions)
    problems = []
    for i, s in enumerate(res.family):
        if s not in members:
            problems.append(f"solution {i} is not feasible")
    if len(set(res.family.solutions)) != cfg.k:
        problems.append("solutions are not distinct")
    ratio = Fraction(res.value, opt) if opt else Fraction(1)
    if ratio < res.factor:
        problems.append(f"ratio {_fraction_text(ratio)} is below the guarantee {_fraction_text(res.factor)}")
    doc["verify"] = {
        "feasible_solutions": len(catalog),
        "solver_value": render_decimal(res.value, data.ground.scale_digits),
        "optimum": render_decimal(opt, data.ground.scale_digits),
        "optimum_scaled": str(opt),
        "ratio": float(ratio),
        "ratio_exact": _fraction_text(ratio),
        "witness": [list(s.members) for s in witness],
        "problems": problems,
        "passed": not problems,
    }
    _emit(doc, cfg.json_out)
    return EXIT_OK if not problems else EXIT_VERIFY


def cmd_enumerate(ns) -> int:
    cfg = _config(ns)
    data = load(cfg)
    g = data.ground
    objective = g.weights if ns.objective == "weights" else (0,) * g.size
    oracle = data.oracle()
    rows = []
    for sol, score in itertools.islice(iter_topk(oracle, objective), cfg.k):
        rows.append({
            "elements": list(sol.members),
            "labels": [data.labels[e] for e in sol.members],
            "score": render_decimal(score, g.scale_digits if ns.objective == "weights" else 0),
        })
    doc = {"status": "ok", "problem": cfg.problem, "objective": ns.objective, "k": cfg.k,
           "solutions": rows, "oracle_calls": oracle.calls}
    _emit(doc, cfg.json_out)
    return EXIT_OK


def validate(path: str, problem: str | None = None, r: int | None = None,
             scale_digits: int = DEFAULT_SCALE_DIGITS) -> tuple[str, list[str]]:
    """Structural checks without solving. Returns ``(format, diagnostics)``."""
    try:
        text = read_text(path)
    except InvalidInputError as exc:
        return "unknown", [str(exc)]
    fmt = PROBLEM_FORMAT[problem] if problem else sniff_format(text)
    if fmt not in FORMATS:
        return fmt, ["line 1: cannot tell the file format (expected 'p', 'i', 'x' or a JSON object)"]
    try:
        parsed = FORMATS[fmt](text, scale_digits)
    except InvalidInputError as exc:
        return fmt, [str(exc)]
    diags: list[str] = []
    if fmt == "graph":
        gr = parsed.graph
        if problem == "mincut":
            if gr.n < 2:
                diags.append("a cut needs at least two vertices")
            elif not gr.is_connected():
                diags.append("graph is disconnected")
        if problem == "matching" and r is not None and not 1 <= r <= gr.n // 2:
            diags.append(f"r must lie in 1..{gr.n // 2}, got {r}")
    elif fmt == "matroid":
        for name, m in (("m1", parsed.m1), ("m2", parsed.m2)):
            diags.extend(f"{name}: {p}" for p in spot_check_axioms(m))
        reason = common_base_problem(parsed.m1, parsed.m2)
        if reason:
            diags.append(f"no common base can exist: {reason}")
    elif fmt == "intervals" and r is not None and r < 0:
        diags.append(f"r must be nonnegative, got {r}")
    return fmt, diags


def cmd_validate(ns) -> int:
    fmt, diags = validate(ns.instance, ns.problem, ns.r, ns.scale_digits)
    _emit({"file": ns.instance, "format": fmt, "diagnostics": diags}, None)
    return EXIT_INPUT if diags else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="divsol", description="Max-sum diverse solutions for combinatorial problems.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, need_k=True):
        p.add_argument("instance", help="instance file")
        p.add_argument("--problem", choices=sorted(PROBLEM_FORMAT), required=need_k)
        p.add_argument("--r", type=int, help="solution size (matching, interval)")
        p.add_argument("--scale-digits", type=int, default=DEFAULT_SCALE_DIGITS,
                       help="decimal weights are scaled by 10**digits (default 6)")
        if need_k:
            p.add_argument("--k", type=int, required=True, help="number of solutions")
            p.add_argument("--epsilon", help="target error for the approximation scheme, in (0, 1)")
            p.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
            p.add_argument("--json-out", help="also write the JSON report here")
            p.add_argument("--parallel", action="store_true", help="evaluate swap candidates in threads")
            p.add_argument("--timing", action="store_true", help="include wall time in the JSON report")

    p = sub.add_parser("solve", help="find k diverse solutions")
    common(p)
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("verify", help="solve, then compare with the brute-force optimum")
    common(p)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("enumerate", help="list the k best solutions")
    common(p)
    p.add_argument("--objective", choices=("weights", "zero"), default="weights")
    p.set_defaults(func=cmd_enumerate)
    p = sub.add_parser("validate", help="check an instance file without solving")
    common(p, need_k=False)
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return ns.func(ns)
    except InfeasibleError as exc:
        doc = {"status": "infeasible", "reason": FEWER_THAN_K if FEWER_THAN_K in exc.reason else exc.reason,
               "detail": exc.reason}
        _emit(doc, getattr(ns, "json_out", None))
        return EXIT_INFEASIBLE
    except (InvalidInputError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DivsolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
