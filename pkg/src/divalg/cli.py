"""Config-driven command line: verification suites, closure jobs, torus info.

Commands read a JSON config, run the job, and emit a report (JSON by
default, or a text rendering).  Reports are deterministic given the config
and the --seed value: randomized suites draw from a seeded generator and the
report carries no wall-clock data, so reruns are byte-identical.

Exit codes: 0 all checks pass, 1 a mathematical check was violated,
2 configuration or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from random import Random

from . import verify
from .closure import Box, closure
from .modules import ModuleParams, graded, trivial_split
from .qder import closure_q, qgraded, ad_annihilation_check
from .qtorus import (
    QMatrix,
    block_normal_q,
    block_structure,
    f_exponent,
    rad_q,
    sigma_exponent,
)
from .reps import RepHandle, rep_from_config
from .scalars import format_rat, parse_rat
from .witt import DegVec


class ConfigError(ValueError):
    """Invalid job configuration; maps to exit code 2."""


SCHEMA_VERSION = "1"
JOBS = ("verify-algebra", "verify-module", "closure", "qtorus-info")


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------


def _strict(obj: dict, context: str, required: set[str], optional: set[str]) -> None:
    if not isinstance(obj, dict):
        raise ConfigError(f"{context}: expected an object")
    unknown = set(obj) - required - optional
    if unknown:
        raise ConfigError(f"{context}: unknown fields {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise ConfigError(f"{context}: missing fields {sorted(missing)}")


def _parse_alpha(raw, d: int) -> tuple:
    if not isinstance(raw, list) or len(raw) != d:
        raise ConfigError(f"alpha: expected a list of {d} rationals")
    out = []
    for k, s in enumerate(raw):
        try:
            out.append(parse_rat(s))
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigError(f"alpha[{k}]: {e}") from None
    return tuple(out)


def _parse_q(raw) -> QMatrix:
    if not isinstance(raw, dict):
        raise ConfigError("q: expected an object")
    if "l" in raw:
        _strict(raw, "q", {"l"}, set())
        try:
            return block_normal_q(raw["l"])
        except ValueError as e:
            raise ConfigError(f"q.l: {e}") from None
    _strict(raw, "q", {"N", "exps"}, set())
    try:
        return QMatrix.from_exps(int(raw["N"]), raw["exps"])
    except (ValueError, TypeError) as e:
        raise ConfigError(f"q: {e}") from None


def _parse_box(raw, d: int, context: str) -> Box:
    if isinstance(raw, int):
        return Box.radius(d, raw)
    if isinstance(raw, dict):
        _strict(raw, context, {"lo", "hi"}, set())
        lo, hi = raw["lo"], raw["hi"]
        if len(lo) != d or len(hi) != d:
            raise ConfigError(f"{context}: corners must have length {d}")
        try:
            return Box(tuple(int(x) for x in lo), tuple(int(x) for x in hi))
        except ValueError as e:
            raise ConfigError(f"{context}: {e}") from None
    raise ConfigError(f"{context}: expected an integer radius or lo/hi corners")


def _parse_rep(raw, d: int) -> RepHandle:
    try:
        return rep_from_config(d, raw)
    except (ValueError, TypeError) as e:
        raise ConfigError(f"rep: {e}") from None


def _deg_str(n: DegVec) -> str:
    return ",".join(str(x) for x in n)


# ---------------------------------------------------------------------------
# job runners
# ---------------------------------------------------------------------------


def _parse_elements(raw, d: int) -> list:
    """Explicit algebra elements as lists of {"u": [...], "r": [...]} terms."""
    from .witt import AlgElem

    if not isinstance(raw, list):
        raise ConfigError("elements: expected a list of element term lists")
    out = []
    for k, terms in enumerate(raw):
        if not isinstance(terms, list):
            raise ConfigError(f"elements[{k}]: expected a list of terms")
        elem = AlgElem.zero(d)
        for t, term in enumerate(terms):
            _strict(term, f"elements[{k}][{t}]", {"u", "r"}, set())
            u = []
            for s in term["u"]:
                try:
                    u.append(parse_rat(s))
                except (ValueError, ZeroDivisionError) as e:
                    raise ConfigError(f"elements[{k}][{t}].u: {e}") from None
            r = tuple(int(x) for x in term["r"])
            if len(u) != d or len(r) != d:
                raise ConfigError(f"elements[{k}][{t}]: u and r must have length {d}")
            elem = elem + AlgElem.term(tuple(u), r)
        out.append(elem)
    return out


def _job_verify_algebra(config: dict, rng: Random) -> tuple[str, dict]:
    _strict(config, "config",
            {"job", "algebra"},
            {"schema_version", "d", "q", "triples", "degree_radius", "elements"})
    algebra = config["algebra"]
    triples = int(config.get("triples", 200))
    suites = []
    extras: dict = {}
    if algebra in verify.CLASSICAL_ALGEBRAS:
        if "d" not in config:
            raise ConfigError("config: classical algebras need the field 'd'")
        d = int(config["d"])
        radius = int(config.get("degree_radius", 3))
        suites.append(verify.lie_suite_classical(d, algebra, triples, rng, radius))
        suites.append(verify.d_basis_span_suite(d, min(radius, 2)))
        suites.append(verify.lemma_orthg_suite(d, max(20, triples // 10), rng))
        if "elements" in config:
            from .witt import bracket_witt, in_L, in_Lhat

            elems = _parse_elements(config["elements"], d)
            member = {"W": lambda x: True, "Lhat": in_Lhat, "L": in_L}[algebra]
            info = []
            bad = 0
            for i, x in enumerate(elems):
                ok = member(x)
                closed = all(member(bracket_witt(x, y)) for y in elems if ok and member(y))
                info.append({"element": i, "in_algebra": ok, "brackets_stay": closed})
                if not ok or not closed:
                    bad += 1
            extras["elements"] = info
            suites.append({"name": "explicit-elements", "checks": len(elems),
                           "violations": bad})
    elif algebra in verify.Q_ALGEBRA_NAMES:
        if "q" not in config:
            raise ConfigError("config: quantum algebras need the field 'q'")
        q = _parse_q(config["q"])
        radius = int(config.get("degree_radius", 2))
        suites.append(verify.lie_suite_q(q, algebra, triples, rng, radius))
    else:
        raise ConfigError(f"algebra: unknown algebra {algebra!r}")
    violations = sum(s["violations"] for s in suites)
    details = {"suites": suites}
    details.update(extras)
    return ("pass" if violations == 0 else "violation"), details


def _job_verify_module(config: dict, rng: Random) -> tuple[str, dict]:
    _strict(config, "config",
            {"job", "algebra", "d", "alpha", "rep"},
            {"schema_version", "q", "pairs", "degree_radius"})
    d = int(config["d"])
    alpha = _parse_alpha(config["alpha"], d)
    rep = _parse_rep(config["rep"], d)
    algebra = config["algebra"]
    pairs = int(config.get("pairs", 200))
    radius = int(config.get("degree_radius", 2))
    suites = []
    extras: dict = {}
    if algebra in verify.CLASSICAL_ALGEBRAS:
        params = ModuleParams(d, alpha, rep)
        suites.append(verify.module_suite_classical(params, algebra, pairs, rng, radius))
        if d >= 2:
            suites.append(verify.act_crosscheck_suite(params, max(20, pairs // 4), rng, radius))
        from .modules import _wedge_power

        k = _wedge_power(rep)
        if k is not None:
            suites.append(verify.w_invariance_suite(params, k))
        if rep.kind == "trivial":
            split = trivial_split(params)
            extras["trivial_split"] = {
                "irreducible": split.irreducible,
                "split_at": None if split.split_at is None else list(split.split_at),
            }
    elif algebra in verify.Q_ALGEBRA_NAMES:
        if "q" not in config:
            raise ConfigError("config: quantum module checks need the field 'q'")
        q = _parse_q(config["q"])
        m = verify.module_suite_q(q, alpha, rep, algebra, pairs, rng, radius)
        suites.append(m)
        suites.append(verify.qtorus_suite(q, pairs, rng))
        extras["outer_bracket_sign"] = m["outer_bracket_sign"]
        if block_structure(q) is not None:
            suites.append(verify.equivariance_suite(q, alpha, rep, max(20, pairs // 2), rng, radius))
            extras["ad_annihilation"] = ad_annihilation_check(q, alpha, rep)
            if extras["ad_annihilation"] is False:
                suites.append({"checks": 1, "violations": 1, "name": "ad-annihilation"})
    else:
        raise ConfigError(f"algebra: unknown algebra {algebra!r}")
    violations = sum(s["violations"] for s in suites)
    details = {"suites": suites}
    details.update(extras)
    return ("pass" if violations == 0 else "violation"), details


def _job_closure(config: dict, rng: Random) -> tuple[str, dict]:
    _strict(config, "config",
            {"job", "algebra", "d", "alpha", "rep", "seeds"},
            {"schema_version", "q", "gen_radius", "working_box", "target_box",
             "max_iters", "expect_label"})
    d = int(config["d"])
    alpha = _parse_alpha(config["alpha"], d)
    rep = _parse_rep(config["rep"], d)
    algebra = config["algebra"]
    gen_radius = int(config.get("gen_radius", 2))
    working = _parse_box(config.get("working_box", 3), d, "working_box")
    target = _parse_box(config.get("target_box", 1), d, "target_box")
    max_iters = int(config.get("max_iters", 50))
    raw_seeds = config["seeds"]
    if not isinstance(raw_seeds, list) or not raw_seeds:
        raise ConfigError("seeds: expected a nonempty list")

    def parse_seed(k, raw):
        _strict(raw, f"seeds[{k}]", {"n", "coords"}, set())
        n = tuple(int(x) for x in raw["n"])
        if len(n) != d:
            raise ConfigError(f"seeds[{k}].n: expected length {d}")
        coords = []
        for t, s in enumerate(raw["coords"]):
            try:
                coords.append(parse_rat(s))
            except (ValueError, ZeroDivisionError) as e:
                raise ConfigError(f"seeds[{k}].coords[{t}]: {e}") from None
        if len(coords) != rep.dim:
            raise ConfigError(f"seeds[{k}].coords: expected length {rep.dim}")
        return n, tuple(coords)

    seeds = [parse_seed(k, raw) for k, raw in enumerate(raw_seeds)]
    try:
        if algebra in verify.CLASSICAL_ALGEBRAS:
            params = ModuleParams(d, alpha, rep)
            vecs = [graded(params, n, c) for n, c in seeds]
            result = closure(params, vecs, gen_radius, working, target, max_iters, algebra)
            q = None
        elif algebra in ("Lq", "Lqhat"):
            if "q" not in config:
                raise ConfigError("config: q-closure needs the field 'q'")
            q = _parse_q(config["q"])
            if q.d != d:
                raise ConfigError("q: dimension does not match d")
            vecs = [qgraded(q, alpha, rep, n, c) for n, c in seeds]
            result = closure_q(q, alpha, rep, vecs, gen_radius, working, target,
                               max_iters, algebra)
        else:
            raise ConfigError(f"algebra: unknown algebra {algebra!r}")
    except ValueError as e:
        raise ConfigError(f"closure: {e}") from None

    details: dict = {
        "label": None if result.label is None else str(result.label),
        "iterations": result.iterations,
        "saturated": result.saturated,
        "fiber_dims": {_deg_str(n): result.fiber_dims[n] for n in sorted(result.fiber_dims)},
        "fiber_bases": {
            _deg_str(n): [[format_rat(Fraction(x)) for x in row] for row in b.rows]
            for n, b in sorted(result.fiber_bases.items())
        },
        "target_box": {"lo": list(target.lo), "hi": list(target.hi)},
    }
    if q is not None:
        l = block_structure(q)
        if l is not None:
            from .qder import class_of

            per_class: dict[str, dict] = {}
            for n in sorted(result.fiber_dims):
                cls = _deg_str(class_of(l, n))
                per_class.setdefault(cls, {})[_deg_str(n)] = result.fiber_dims[n]
            details["class_dims"] = per_class
    outcome = "pass" if result.saturated else "violation"
    expect = config.get("expect_label")
    if expect is not None:
        details["expect_label"] = expect
        if details["label"] != expect:
            outcome = "violation"
    return outcome, details


def _job_qtorus_info(config: dict, rng: Random) -> tuple[str, dict]:
    _strict(config, "config", {"job", "q"}, {"schema_version", "sample_radius"})
    q = _parse_q(config["q"])
    radius = int(config.get("sample_radius", 1))
    samples = []
    degs = sorted(Box.radius(q.d, radius).degrees())
    for m in degs[: 4]:
        for n in degs[-4:]:
            from .scalars import Cyc

            samples.append({
                "m": list(m),
                "n": list(n),
                "sigma_exp": sigma_exponent(q, m, n),
                "f_exp": f_exponent(q, m, n),
                "sigma": Cyc.zeta(q.N, sigma_exponent(q, m, n)).to_json(),
            })
    l = block_structure(q)
    details = {
        "d": q.d,
        "N": q.N,
        "exps": [list(r) for r in q.exps],
        "rad_basis": rad_q(q),
        "block_normal_l": None if l is None else list(l),
        "cocycle_samples": samples,
    }
    if l is not None:
        from .qder import congruence_classes

        details["classes"] = [_deg_str(i) for i in congruence_classes(l)]
    return "pass", details


RUNNERS = {
    "verify-algebra": _job_verify_algebra,
    "verify-module": _job_verify_module,
    "closure": _job_closure,
    "qtorus-info": _job_qtorus_info,
}


def run(config: dict, rng_seed: int) -> tuple[dict, int]:
    """Execute a job config; returns (report, exit_code)."""
    if not isinstance(config, dict):
        raise ConfigError("config: expected a JSON object")
    job = config.get("job")
    if job not in JOBS:
        raise ConfigError(f"job: expected one of {list(JOBS)}, got {job!r}")
    version = config.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"schema_version: unsupported version {version!r}")
    outcome, details = RUNNERS[job](config, Random(rng_seed))
    report = {
        "schema_version": SCHEMA_VERSION,
        "job": config,
        "seed": rng_seed,
        "outcome": outcome,
        "details": details,
    }
    return report, 0 if outcome == "pass" else 1


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _dims_grid(fiber_dims: dict[str, int]) -> list[str]:
    degs = [tuple(int(x) for x in k.split(",")) for k in fiber_dims]
    if not degs:
        return ["(empty target box)"]
    d = len(degs[0])
    lines = []
    if d == 1:
        xs = sorted(n[0] for n in degs)
        lines.append("n:    " + "  ".join(f"{x:3d}" for x in xs))
        lines.append("dim:  " + "  ".join(f"{fiber_dims[str(x)]:3d}" for x in xs))
        return lines
    tails = sorted({n[2:] for n in degs})
    xs = sorted({n[0] for n in degs})
    ys = sorted({n[1] for n in degs}, reverse=True)
    for tail in tails:
        if d > 2:
            lines.append(f"slice n[3:] = {list(tail)}")
        lines.append("  n2\\n1 " + " ".join(f"{x:3d}" for x in xs))
        for y in ys:
            row = []
            for x in xs:
                key = ",".join(str(v) for v in (x, y) + tail)
                row.append(f"{fiber_dims.get(key, 0):3d}")
            lines.append(f"  {y:5d} " + " ".join(row))
    return lines


def report_text(report: dict) -> str:
    job = report["job"]["job"]
    lines = [f"job: {job}", f"seed: {report['seed']}", f"outcome: {report['outcome']}"]
    details = report["details"]
    if job == "closure":
        lines.append(f"label: {details['label']}")
        lines.append(f"iterations: {details['iterations']}  saturated: {details['saturated']}")
        lines.append("fiber dimensions over the target box:")
        if "class_dims" in details:
            for cls in sorted(details["class_dims"]):
                lines.append(f" class ({cls}):")
                lines.extend("  " + s for s in _dims_grid(details["class_dims"][cls]))
        else:
            lines.extend(" " + s for s in _dims_grid(details["fiber_dims"]))
    elif job in ("verify-algebra", "verify-module"):
        for s in details["suites"]:
            name = s.get("name", "suite")
            if "algebra" in s:
                name = f"{name}[{s['algebra']}]"
            lines.append(f"suite {name}: checks={s['checks']} violations={s['violations']}")
        if "outer_bracket_sign" in details:
            lines.append(f"outer bracket sign (oracle): {details['outer_bracket_sign']:+d}")
        if "trivial_split" in details:
            lines.append(f"trivial split: {details['trivial_split']}")
    elif job == "qtorus-info":
        lines.append(f"d={details['d']} N={details['N']}")
        lines.append(f"exps: {details['exps']}")
        lines.append(f"rad basis: {details['rad_basis']}")
        lines.append(f"block-normal l: {details['block_normal_l']}")
        if "classes" in details:
            lines.append(f"classes: {details['classes']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="divalg",
        description="exact workbench for divergence-zero algebras on (quantum) tori",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in JOBS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to the JSON job config")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default="json")
    args = parser.parse_args(argv)

    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except OSError as e:
        print(f"error: cannot read config: {e}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as e:
        print(f"error: config is not valid JSON: {e}", file=sys.stderr)
        return 2

    if not isinstance(config, dict):
        print("error: config must be a JSON object", file=sys.stderr)
        return 2
    config.setdefault("job", args.command)
    if config["job"] != args.command:
        print(f"error: config job {config['job']!r} does not match command "
              f"{args.command!r}", file=sys.stderr)
        return 2

    try:
        report, code = run(config, args.seed)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    text = report_text(report) if args.format == "text" else report_json(report)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            print(f"error: cannot write report: {e}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
