#!/usr/bin/env python3
"""Run the randomized acceptance grids and write a JSON report."""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from math import comb
from pathlib import Path
from typing import Callable, Dict, List

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from sympy import Rational  # noqa: E402

from invdmod import (  # noqa: E402
    CartanType,
    ConstantTorusConnection,
    FiniteAbelianGroup,
    GlrConnectionSpec,
    LaurentMatrix,
    ReductiveProductGroup,
    RepClass,
    adjoint,
    ab_pullback,
    center_of_sc,
    characters,
    classify_semisimple,
    construct_class,
    coxeter_degrees,
    dmod_betti,
    dual,
    equivalent,
    glr_equivalent,
    hom_dim,
    in_ab_image,
    invariants_dim,
    local_system_betti,
    maurer_cartan_check,
    mu_der,
    poincare,
    simply_connected,
    special_linear_quotient,
    tensor,
    trace_dlogdet_check,
    verify_gauge,
    weyl_degrees,
)
from invdmod import linalg  # noqa: E402
from invdmod.codec import laurent  # noqa: E402


@dataclass
class CriterionResult:
    name: str
    passed: bool
    seconds: float
    failures: List[str] = field(default_factory=list)


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--output",
        default=str(ROOT / "reports" / "acceptance.json"),
        help="Path to write the JSON report.",
    )
    parser.add_argument("--seed", type=int, default=0, help="Seed for the randomized grids.")
    parser.add_argument(
        "--torus-cases", type=int, default=200, help="Randomized torus oracle cases."
    )
    return parser.parse_args()


def ensure_parent(path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)


def simple_types(max_rank: int = 8) -> List[CartanType]:
    types = [CartanType("A", r) for r in range(1, max_rank + 1)]
    types += [CartanType(s, r) for s in ("B", "C") for r in range(2, max_rank + 1)]
    types += [CartanType("D", r) for r in range(3, max_rank + 1)]
    types += [CartanType("E", r) for r in (6, 7, 8)]
    return types + [CartanType("F", 4), CartanType("G", 2)]


def check_centers(rng: random.Random, args: argparse.Namespace) -> List[str]:
    failures = []
    for t in simple_types():
        expected = {
            "A": (t.rank + 1,),
            "B": (2,),
            "C": (2,),
            "D": (4,) if t.rank % 2 else (2, 2),
            "E": {6: (3,), 7: (2,), 8: ()}.get(t.rank),
        }.get(t.series, ())
        found = center_of_sc([t]).invariant_factors
        if found != expected:
            failures.append(f"{t.label}: {found} != {expected}")
    return failures


def check_counts(rng: random.Random, args: argparse.Namespace) -> List[str]:
    failures = []
    a1, a2, d4 = CartanType("A", 1), CartanType("A", 2), CartanType("D", 4)
    groups = (
        (simply_connected([a1]), 1),
        (adjoint([a1]), 2),
        (adjoint([a2]), 3),
        (special_linear_quotient(4, 4), 4),
        (adjoint([d4]), 4),
    )
    for g, order in groups:
        for n in range(1, 6):
            classes = classify_semisimple(g, n)
            if len(classes) != comb(order + n - 1, n) or len(set(classes)) != len(classes):
                failures.append(f"{g.label} rank {n}: {len(classes)} classes")
    for n in range(1, 6):
        if len(classify_semisimple(simply_connected([CartanType("E", 7)]), n)) != 1:
            failures.append(f"E7 simply connected rank {n}")
    return failures


def _invertible(rng: random.Random, n: int):
    while True:
        m = linalg.dense([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        if m.det():
            return m


def check_torus(rng: random.Random, args: argparse.Namespace) -> List[str]:
    failures = []
    labels = [Rational(0), Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4)]
    for case in range(args.torus_cases):
        n = rng.randint(1, 3)
        values = [rng.choice(labels) + rng.randint(-2, 2) for _ in range(n)]
        shift = [rng.randint(-2, 2) for _ in range(n)]
        a = ConstantTorusConnection.single(linalg.diagonal(values))
        shifted = linalg.diagonal([v + d for v, d in zip(values, shift)])
        p = _invertible(rng, n)
        if not equivalent(a, ConstantTorusConnection.single(p.inv() * shifted * p)):
            failures.append(f"case {case}: conjugated shift not equivalent")
        x = LaurentMatrix.from_rows(
            [[laurent([(shift[i], 1)]) if i == j else laurent([]) for j in range(n)] for i in range(n)]
        )
        if not verify_gauge(x, ConstantTorusConnection.single(shifted), a).ok:
            failures.append(f"case {case}: diagonal gauge rejected")
        separated = linalg.diagonal([values[0] + Rational(1, 5)] + values[1:])
        if equivalent(a, ConstantTorusConnection.single(separated)):
            failures.append(f"case {case}: separated pair reported equivalent")
    return failures


def check_symbolic(rng: random.Random, args: argparse.Namespace) -> List[str]:
    failures = []
    for r in (1, 2, 3):
        for check in (maurer_cartan_check, trace_dlogdet_check):
            report = check(r)
            if not report.ok:
                failures.append(f"{report.check} r={r} at {report.entry}")
    return failures


def check_glr(rng: random.Random, args: argparse.Namespace) -> List[str]:
    failures = []
    for r in (1, 2, 3):
        cases = list(itertools.product(range(5), range(r)))
        for (a1, k1), (a2, k2) in itertools.product(cases, repeat=2):
            s1 = GlrConnectionSpec(r, 1, linalg.dense([[a1]]), (k1,))
            s2 = GlrConnectionSpec(r, 1, linalg.dense([[a2]]), (k2,))
            direct = linalg.mod_one(Rational(a1 + k1, r)) == linalg.mod_one(Rational(a2 + k2, r))
            if glr_equivalent(s1, s2) != direct:
                failures.append(f"r={r} ({a1},{k1}) vs ({a2},{k2})")
        for a, k in cases:
            base = GlrConnectionSpec(r, 1, linalg.dense([[a]]), (k,))
            lifted = GlrConnectionSpec(r, 1, linalg.dense([[a - r]]), (k + r,))
            if not glr_equivalent(base, lifted):
                failures.append(f"r={r} lift of ({a},{k})")
    return failures


def check_cohomology(rng: random.Random, args: argparse.Namespace) -> List[str]:
    failures = []
    a1 = [CartanType("A", 1)]
    if poincare(simply_connected(a1)).coefficients != (1, 0, 0, 1) or poincare(adjoint(a1)).coefficients != (1, 0, 0, 1):
        failures.append("SL_2 / PGL_2 Poincare polynomial")
    for t in simple_types():
        if poincare(simply_connected([t])).evaluate(1) != 2 ** t.rank:
            failures.append(f"{t.label}: P(1) != 2^rank")
        if coxeter_degrees(t) != weyl_degrees(t).degrees:
            failures.append(f"{t.label}: Coxeter oracle disagrees")
    pgl2 = adjoint(a1)
    gamma = pgl2.fundamental_group
    sign = RepClass.from_characters(gamma, [characters(gamma)[1]])
    trivial = RepClass.from_characters(gamma, [characters(gamma)[0]])
    if any(dmod_betti(pgl2, sign, i) for i in range(4)):
        failures.append("PGL_2 sign cohomology")
    if [dmod_betti(pgl2, trivial, i) for i in range(4)] != [1, 0, 0, 1]:
        failures.append("PGL_2 trivial cohomology")
    groups = [pgl2, adjoint([CartanType("D", 4)]), adjoint([CartanType("A", 3)])]
    for _ in range(50):
        g = rng.choice(groups)
        chars = characters(g.fundamental_group)
        v = RepClass.from_characters(g.fundamental_group, [rng.choice(chars) for _ in range(rng.randint(1, 3))])
        i = rng.randint(0, poincare(g).degree)
        if local_system_betti(g, v, i) != dmod_betti(g, v, i):
            failures.append(f"{g.label} degree {i}")
    return failures


def check_tensor(rng: random.Random, args: argparse.Namespace) -> List[str]:
    failures = []
    groups = [FiniteAbelianGroup(f) for f in ((2,), (3,), (2, 2), (6,), (2, 4))]
    for case in range(100):
        group = rng.choice(groups)
        chars = characters(group)
        u, w = (
            RepClass.from_characters(group, [rng.choice(chars) for _ in range(rng.randint(1, 4))])
            for _ in range(2)
        )
        if hom_dim(u, w) != invariants_dim(tensor(dual(u), w)):
            failures.append(f"case {case}: adjunction")
        if dual(dual(u)) != u or tensor(u, w) != tensor(w, u):
            failures.append(f"case {case}: duality or symmetry")
    return failures


def check_reductive(rng: random.Random, args: argparse.Namespace) -> List[str]:
    failures = []
    g = ReductiveProductGroup(1, adjoint([CartanType("A", 1)]))
    gamma = g.ss.fundamental_group
    chars = characters(gamma)
    labels = [Rational(0), Rational(1, 2), Rational(1, 3)]
    for case in range(50):
        n = rng.randint(1, 3)
        torus = ConstantTorusConnection.single(linalg.diagonal([rng.choice(labels) for _ in range(n)]))
        v = RepClass.from_characters(gamma, [rng.choice(chars) for _ in range(n)])
        c = construct_class(g, torus, v)
        if in_ab_image(c) != mu_der(c).is_trivial:
            failures.append(f"case {case}: image criterion")
        if not mu_der(ab_pullback(g, c.torus_part)).is_trivial:
            failures.append(f"case {case}: fiber of ab_pullback")
    return failures


CRITERIA: Dict[str, Callable[[random.Random, argparse.Namespace], List[str]]] = {
    "center_table": check_centers,
    "classification_counts": check_counts,
    "torus_oracle": check_torus,
    "symbolic_identities": check_symbolic,
    "glr_reduction": check_glr,
    "cohomology": check_cohomology,
    "tensor_category": check_tensor,
    "reductive_fiber": check_reductive,
}


def run_criteria(args: argparse.Namespace) -> List[CriterionResult]:
    results = []
    for index, (name, check) in enumerate(CRITERIA.items()):
        rng = random.Random(args.seed + index)
        started = time.perf_counter()
        failures = check(rng, args)
        elapsed = time.perf_counter() - started
        results.append(CriterionResult(name, not failures, round(elapsed, 3), failures))
        print(f"[{'PASS' if not failures else 'FAIL'}] {name} ({elapsed:.2f}s)")
        for failure in failures[:5]:
            print(f"    - {failure}")
    return results


def main() -> None:
    args = parse_args()
    results = run_criteria(args)
    report = {
        "generated": datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M:%SZ"),
        "seed": args.seed,
        "passed": all(r.passed for r in results),
        "criteria": [asdict(r) for r in results],
    }
    output = Path(args.output)
    ensure_parent(output)
    output.write_text(json.dumps(report, indent=2, sort_keys=True), encoding="utf-8")
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed; report written to {output}")
    if not report["passed"]:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
