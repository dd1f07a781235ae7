"""Command-line verification harness.

    qgrass borel-weil --n 2..3 --r 1 --k-max 2 --out report.json

Every command expands its flags into a grid of independent jobs, runs them
(optionally in a process pool) and writes one JSON report.  Exit status is 0
when every job passed, 1 when any failed and 2 on a usage error.
"""

import argparse
import json
import os
import random
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from itertools import combinations, product

from . import borelweil as bw
from .borelweil import report
from .calculus import dbar, dbar_minor_closed, del_, hk_first_order_dim, lambda_constants
from .exactmath import ONE, qpow
from .minors import complement, laplace_check, minor, minor_rowform, star_minor_check, subsets, z_minus, z_plus
from .ncalg import NCPoly, coproduct, normal_form, qdet, random_word
from .rform import goodearl_support_pair, goodearl_support_q, goodearl_support_r, killing_Q, r_eval

SCHEMA = "qgrass-report/1"
COMMANDS = (
    "relations",
    "goodearl",
    "laplace",
    "calculus-dim",
    "borel-weil",
    "opposite",
    "coordinate-ring",
    "twisted",
    "ell-map",
    "connectedness",
)


def _ms(t0):
    return int((time.perf_counter() - t0) * 1000)


# -- engine suites -------------------------------------------------------------


def check_confluence(n, words=1000, max_len=6, seed=0):
    t0 = time.perf_counter()
    rng = random.Random(seed)
    bad = []
    for t in range(words):
        w = random_word(n, rng.randint(0, max_len), rng)
        a = normal_form(n, w, "append")
        if a != normal_form(n, w, "prepend") or a != normal_form(n, w, "random:%d" % (seed + t)):
            bad.append(list(w))
    return report("confluence", {"n": n, "words": words, "max_len": max_len, "seed": seed}, {"mismatches": 0}, {"mismatches": len(bad), "examples": bad[:3]}, not bad, _ms(t0))


def _delta_left(tp):
    out = {}
    for (w1, w2), c in tp.terms.items():
        for (a, b), c2 in coproduct(NCPoly(tp.n, {w1: ONE})).terms.items():
            out[(a, b, w2)] = out.get((a, b, w2), 0) + c * c2
    return {k: v for k, v in out.items() if v}


def _delta_right(tp):
    out = {}
    for (w1, w2), c in tp.terms.items():
        for (a, b), c2 in coproduct(NCPoly(tp.n, {w2: ONE})).terms.items():
            out[(w1, a, b)] = out.get((w1, a, b), 0) + c * c2
    return {k: v for k, v in out.items() if v}


def check_coassociativity(n):
    t0 = time.perf_counter()
    gens = [NCPoly.gen(n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    elems = gens + [a * b for a in gens for b in gens]
    bad = sum(1 for f in elems if _delta_left(coproduct(f)) != _delta_right(coproduct(f)))
    return report("coassociativity", {"n": n}, {"failures": 0}, {"failures": bad, "elements": len(elems)}, bad == 0, _ms(t0))


def check_centrality(n):
    t0 = time.perf_counter()
    d = qdet(n)
    bad = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if d * NCPoly.gen(n, i, j) != NCPoly.gen(n, i, j) * d]
    return report("det-central", {"n": n}, {"failures": 0}, {"failures": len(bad)}, not bad, _ms(t0))


def _at_one(f):
    out = {}
    for w, c in f.terms.items():
        v = c.evaluate(1)
        if v:
            out[w] = v
    return out


def check_classical_limit(n, words=200, max_len=5, seed=0):
    """At q = 1 normal forms are sorted words and qdet is the classical determinant."""
    t0 = time.perf_counter()
    rng = random.Random(seed)
    bad = 0
    for _ in range(words):
        w = random_word(n, rng.randint(0, max_len), rng)
        if _at_one(normal_form(n, w)) != {tuple(sorted(w)): 1}:
            bad += 1
    classical = {}
    for perm in _perms(n):
        sign = (-1) ** sum(1 for a, b in combinations(perm, 2) if a > b)
        w = tuple(sorted(i * n + perm[i] for i in range(n)))
        classical[w] = classical.get(w, 0) + sign
    det_ok = _at_one(qdet(n)) == {k: v for k, v in classical.items() if v}
    return report("classical-limit", {"n": n, "words": words, "seed": seed}, {"failures": 0, "det": True}, {"failures": bad, "det": det_ok}, bad == 0 and det_ok, _ms(t0))


def _perms(n):
    from itertools import permutations

    return permutations(range(n))


def check_goodearl(n):
    """Every configuration outside the stated supports evaluates to exactly zero."""
    t0 = time.perf_counter()
    violations = []
    checked = 0
    for size in range(1, n + 1):
        for I in subsets(n, size):
            for J in subsets(n, size):
                z = minor(n, I, J)
                qm = killing_Q(z)
                for i in range(1, n + 1):
                    for j in range(1, n + 1):
                        g = NCPoly.gen(n, i, j)
                        checked += 3
                        if not goodearl_support_r(i, j, I, J, "left") and r_eval(g, z):
                            violations.append(("r-left", i, j, I, J))
                        if not goodearl_support_r(i, j, I, J, "right") and r_eval(z, g):
                            violations.append(("r-right", i, j, I, J))
                        if not goodearl_support_q(i, j, I, J) and qm[i - 1][j - 1]:
                            violations.append(("Q", i, j, I, J))
    for r in range(1, n):
        for I in subsets(n, r):
            for J in subsets(n, n - r):
                qm = killing_Q(z_plus(n, r, I) * z_minus(n, r, J))
                for i in range(1, n + 1):
                    for j in range(1, n + 1):
                        if i == j:
                            continue
                        checked += 1
                        if not goodearl_support_pair(i, j, I, J, n, r) and qm[i - 1][j - 1]:
                            violations.append(("Q-pair", r, i, j, I, J))
    return report("goodearl", {"n": n}, {"violations": 0}, {"violations": len(violations), "checked": checked, "examples": [str(v) for v in violations[:5]]}, not violations, _ms(t0))


def check_laplace(n):
    t0 = time.perf_counter()
    bad = []
    count = 0
    for size in range(1, n + 1):
        for I in subsets(n, size):
            for J in subsets(n, size):
                if minor(n, I, J) != minor_rowform(n, I, J):
                    bad.append(("rowform", I, J))
                if size == 1 and not star_minor_check(n, I, J):
                    bad.append(("star", I, J))
                for s in range(1, size + 1):
                    for J1 in combinations(J, s):
                        count += 1
                        if not laplace_check(n, I, J, J1):
                            bad.append(("laplace", I, J, J1))
    extra = {}
    if n == 2:
        d = NCPoly.word(2, [(1, 1), (2, 2)]) - (NCPoly.gen(2, 2, 1) * NCPoly.gen(2, 1, 2)).scale(qpow(1))
        extra["det_2x2"] = d == qdet(2)
        if not extra["det_2x2"]:
            bad.append(("det_2x2",))
    return report("laplace", {"n": n}, {"failures": 0}, dict({"failures": len(bad), "identities": count, "examples": [str(b) for b in bad[:5]]}, **extra), not bad, _ms(t0))


def check_killing(n, r):
    """Diagonal Killing values on z = z^R_R and zbar = z^{R^c}_{R^c}; transfer mode against brute force."""
    t0 = time.perf_counter()
    R = tuple(range(1, r + 1))
    Rc = tuple(range(r + 1, n + 1))
    qz, qzb = killing_Q(minor(n, R, R)), killing_Q(minor(n, Rc, Rc))
    z_ok = all(qz[i - 1][i - 1] == qpow(2) for i in R)
    zb_ok = all(qzb[i - 1][i - 1] == qpow(-2) for i in range(1, n + 1))
    mismatches = 0
    for size in range(1, n + 1):
        for I in subsets(n, size):
            for J in subsets(n, size):
                m = minor(n, I, J)
                mismatches += killing_Q(m) != killing_Q(m, mode="brute")
    parts = {"Q_ii(z)": z_ok, "Q_ii(zbar)": zb_ok, "modes": mismatches == 0}
    return report(
        "killing",
        {"n": n, "r": r},
        {"Q_ii(z), i in R": "q^2", "Q_ii(zbar), all i": "q^-2", "mode_mismatches": 0},
        {
            "Q_ii(z), i in R": [str(qz[i - 1][i - 1]) for i in R],
            "Q_ii(zbar), all i": [str(qzb[i - 1][i - 1]) for i in range(1, n + 1)],
            "mode_mismatches": mismatches,
        },
        all(parts.values()),
        _ms(t0),
        parts=parts,
    )


def check_calculus(n, r):
    """First-order dimension, closed dbar form, holomorphic generators and the lambda_ij constants."""
    t0 = time.perf_counter()
    R = tuple(range(1, r + 1))
    Rc = tuple(range(r + 1, n + 1))
    dim = hk_first_order_dim(n, r)
    # unscaled Q picks up q^(2 deg / n) and z^{R R^c} has degree n; the block
    # R^c x R^c is outside the identity's scope
    qp, q1 = killing_Q(z_plus(n, r, R) * z_minus(n, r, Rc)), killing_Q(NCPoly.one(n))
    pair_ok = all(qp[i][j] == q1[i][j] * qpow(2) for i in range(n) for j in range(n) if i < r or j < r)
    pair_block = [str(qp[i][i]) for i in range(r, n)]
    closed_ok = all(
        dbar(minor(n, I, J), r) == dbar_minor_closed(n, r, I, J) for s in range(1, n + 1) for I in subsets(n, s) for J in subsets(n, s)
    )
    holo_ok = all(dbar(z_plus(n, r, I), r).is_zero() for I in subsets(n, r)) and all(
        del_(z_minus(n, r, J), r).is_zero() for J in subsets(n, n - r)
    )
    lam = lambda_constants(n, r)
    parts = {
        "dimension": dim == 2 * r * (n - r),
        "pair": pair_ok,
        "closed": closed_ok,
        "holomorphic": holo_ok,
        "lambda_nonzero": all(v for v in lam.values()),
    }
    got = {
        "first_order_dim": dim,
        "Q(z^{R R^c}) = q^2 Q(1) off R^c x R^c": pair_ok,
        "Q_ii(z^{R R^c}), i in R^c": pair_block,
        "closed_dbar_form": closed_ok,
        "dbar z^I = del zbar^J = 0": holo_ok,
        "lambda": {"%d,%d" % k: str(v) for k, v in sorted(lam.items())},
    }
    return report("calculus", {"n": n, "r": r}, {"first_order_dim": 2 * r * (n - r), "all_parts": True}, got, all(parts.values()), _ms(t0), parts=parts)


# -- job table -----------------------------------------------------------------


JOBS = {
    "confluence": check_confluence,
    "coassociativity": check_coassociativity,
    "det-central": check_centrality,
    "classical-limit": check_classical_limit,
    "goodearl": check_goodearl,
    "laplace": check_laplace,
    "calculus": check_calculus,
    "killing": check_killing,
    "borel-weil": bw.verify_borel_weil,
    "opposite": bw.verify_opposite,
    "coordinate-ring": bw.verify_coordinate_ring,
    "ell-map": bw.verify_ell,
    "connectedness": bw.verify_connectedness,
    "twisted-leibniz": bw.check_twisted_leibniz,
    "twisted-vanishing": bw.check_twisted_vanishing,
    "ladder-constants": bw.check_ladder_constants,
    "cor64": bw.verify_cor64,
}


def run_job(job):
    name, kwargs = job
    try:
        return JOBS[name](**kwargs)
    except Exception as exc:  # a crashing check is a failing check
        return report(name, kwargs, "completes", {"error": "%s: %s" % (type(exc).__name__, exc)}, False, 0)


def expand(command, cfg):
    """The job list for one command."""
    jobs = []
    ns, pairs = cfg["n"], cfg["pairs"]
    if command == "relations":
        for n in ns:
            jobs += [
                ("confluence", {"n": n, "seed": cfg["seed"]}),
                ("coassociativity", {"n": n}),
                ("det-central", {"n": n}),
                ("classical-limit", {"n": n, "seed": cfg["seed"]}),
            ]
    elif command == "goodearl":
        jobs = [("goodearl", {"n": n}) for n in ns]
    elif command == "laplace":
        jobs = [("laplace", {"n": n}) for n in ns]
    elif command == "calculus-dim":
        jobs = [(name, {"n": n, "r": r}) for n, r in pairs for name in ("calculus", "killing")]
    elif command == "borel-weil":
        jobs = [("borel-weil", {"n": n, "r": r, "k": k, "mode": cfg["mode"]}) for n, r in pairs for k in range(cfg["k_max"] + 1)]
    elif command == "opposite":
        jobs = [("opposite", {"n": n, "r": r, "k": k}) for n, r in pairs for k in range(1, cfg["k_max"] + 1)]
    elif command == "coordinate-ring":
        jobs = [("coordinate-ring", {"n": n, "r": r, "k_max": max(cfg["k_max"], 2)}) for n, r in pairs]
    elif command == "ell-map":
        jobs = [("ell-map", {"n": n, "r": r, "k_max": cfg["k_max"]}) for n, r in pairs]
    elif command == "connectedness":
        jobs = [("connectedness", {"n": n, "r": r, "max_deg": cfg["max_deg"]}) for n, r in pairs]
    elif command == "twisted":
        for n, r in pairs:
            jobs.append(("twisted-leibniz", {"n": n, "r": r, "pairs": 100, "seed": cfg["seed"]}))
            jobs.append(("twisted-vanishing", {"n": n, "r": r}))
            jobs.append(("ladder-constants", {"n": n, "r": r}))
            jobs += [("cor64", {"n": n, "r": r, "p_factors": [k]}) for k in range(r + 1, n + 1)]
    else:
        raise ValueError(command)
    return jobs


def run(command, cfg):
    """Run a command; returns (exit code, report dict)."""
    commands = COMMANDS if command == "all" else (command,)
    jobs = [(c, j) for c in commands for j in expand(c, cfg)]
    if cfg["jobs"] > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg["jobs"]) as pool:
            results = list(pool.map(run_job, [j for _, j in jobs]))
    else:
        results = [run_job(j) for _, j in jobs]
    for (c, _), res in zip(jobs, results):
        res["command"] = c
    ok = all(r["pass"] for r in results)
    doc = {
        "schema": SCHEMA,
        "command": command,
        "config": {k: v for k, v in cfg.items() if k not in ("jobs", "out", "format")},
        "pass": ok,
        "results": results,
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }
    return (0 if ok else 1), doc


# -- argument handling ---------------------------------------------------------


def parse_range(text):
    """'2..4' or '2,3' or '3' -> sorted list of ints."""
    out = set()
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise ValueError("empty range %r" % part)
            out.update(range(lo, hi + 1))
        elif part:
            out.add(int(part))
    if not out:
        raise ValueError("empty range")
    return sorted(out)


def build_parser():
    p = argparse.ArgumentParser(prog="qgrass", description="Exact verification checks for quantum Grassmannians.")
    p.add_argument("command", choices=COMMANDS + ("all",))
    p.add_argument("--n", default="2..3", help="matrix sizes, e.g. 2..4 or 2,3")
    p.add_argument("--r", default=None, help="Grassmannian ranks (default: every 1 <= r < n)")
    p.add_argument("--k-max", type=int, default=2)
    p.add_argument("--max-deg", type=int, default=2)
    p.add_argument("--mode", choices=("exact", "prescreen"), default="exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="report path (default: stdout)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    return p


class UsageError(ValueError):
    pass


def make_config(args):
    try:
        ns = parse_range(args.n)
        rs = parse_range(args.r) if args.r is not None else None
    except ValueError as exc:
        raise UsageError(str(exc))
    if any(n < 2 for n in ns):
        raise UsageError("n must be at least 2")
    if rs is None:
        pairs = [(n, r) for n in ns for r in range(1, n)]
    else:
        bad = [(n, r) for n in ns for r in rs if not 1 <= r < n]
        if bad:
            raise UsageError("need 1 <= r < n, got (n, r) = %s" % (bad[0],))
        pairs = [(n, r) for n in ns for r in rs]
    if args.k_max < 1 or args.max_deg < 1 or args.jobs < 1:
        raise UsageError("--k-max, --max-deg and --jobs must be positive")
    return {
        "n": ns,
        "pairs": pairs,
        "k_max": args.k_max,
        "max_deg": args.max_deg,
        "mode": args.mode,
        "seed": args.seed,
        "jobs": args.jobs,
        "out": args.out,
        "format": args.format,
    }


def render_text(doc):
    lines = []
    for res in doc["results"]:
        params = " ".join("%s=%s" % kv for kv in res["params"].items())
        lines.append("%-4s %-18s %s (%d ms)" % ("PASS" if res["pass"] else "FAIL", res["check"], params, res["millis"]))
        if not res["pass"]:
            lines.append("     expected: %s" % json.dumps(res["expected"], sort_keys=True))
            lines.append("     got:      %s" % json.dumps(res["got"], sort_keys=True))
    lines.append("overall: %s" % ("PASS" if doc["pass"] else "FAIL"))
    return "\n".join(lines) + "\n"


def write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qgrass-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        cfg = make_config(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2
    code, doc = run(args.command, cfg)
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n" if cfg["format"] == "json" else render_text(doc)
    if cfg["out"]:
        write_atomic(cfg["out"], text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
