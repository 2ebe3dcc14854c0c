"""
Acceptance criteria, one test per criterion. The terminal summary prints a
"criterion N: PASS/FAIL" line for each (see conftest.py).
"""
from __future__ import annotations

import itertools
import math
import random
import time
from fractions import Fraction

import pytest

from bsirrep import numtheory as nt
from bsirrep.classify import (
    are_equivalent,
    classify_dimension,
    count_irreducibles,
    find_intertwiner,
    is_irreducible,
    spec_intertwiner,
)
from bsirrep.cyclotomic import CycNum, cyclotomic_polynomial, rational, zeta
from bsirrep.exactlinalg import mat_mul
from bsirrep.oracle import burnside_irreducible
from bsirrep.repcore import (
    BSParams,
    RepSpec,
    a_power_scalar,
    build_matrices,
    eigenvalue_exponents,
    verify_conjugation_law,
    verify_power_identity,
    verify_relation,
)
from bsirrep.sweep import iter_params, run_sweep

from conftest import coprime_params, random_cyc

BS25 = BSParams(2, 5)
SWEEP_BOX = dict(pmax=7, qmax=7, dim_max=4, dim_min=2, max_ell=2000)


@pytest.mark.acceptance(1, "worked example BS(2,5), dim 3")
def test_worked_example():
    start = time.perf_counter()
    report = classify_dimension(BS25, 3)
    assert report.modulus == 117
    assert report.factorization.factors == ((3, 2), (13, 1))
    assert nt.solve_s(2, 5, 3) == 1
    assert nt.solve_s(2, 5, 9) == 4
    assert eigenvalue_exponents(RepSpec.make(BS25, 3, 9, 1)) == [1, 4, 7]
    assert is_irreducible(BS25, 3, 3) is False
    assert is_irreducible(BS25, 3, 9) is True
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"{elapsed:.3f}s"


@pytest.mark.acceptance(2, "criterion/oracle sweep |p|,|q| <= 7, dims 2-4, ell <= 2000")
def test_criterion_oracle_sweep():
    start = time.perf_counter()
    result = run_sweep(SWEEP_BOX["pmax"], SWEEP_BOX["qmax"], SWEEP_BOX["dim_max"],
                       dim_min=SWEEP_BOX["dim_min"], max_ell=SWEEP_BOX["max_ell"],
                       seed=0, property_fraction=0.1)
    elapsed = time.perf_counter() - start
    # q ranges over 1..7 only: BS(p, q) = BS(-p, -q) covers the negative q
    assert len(list(iter_params(7, 7))) == 68
    assert not result.budget_failures
    assert result.checks
    assert not result.disagreements, [c.describe() for c in result.disagreements[:5]]
    # witness produced exactly in the reducible cases
    assert all(c.witness == (not c.criterion) for c in result.checks)
    assert not result.property_failures
    assert elapsed < 300, f"{elapsed:.1f}s"


def _valid_spec(rng: random.Random) -> RepSpec:
    while True:
        params = coprime_params(rng)
        dim = rng.randint(1, 6)
        m = params.modulus(dim)
        ells = [d for d in nt.divisors(nt.factorize(abs(m)), limit=10**5) if d <= 500]
        ell = rng.choice(ells)
        units = [t for t in range(ell) if math.gcd(t, ell) == 1] if ell > 1 else [0]
        kind = rng.randrange(3)
        if kind == 0:
            c = rational(Fraction(rng.choice([-1, 1]) * rng.randint(1, 20), rng.randint(1, 20)))
        elif kind == 1:
            L = rng.randint(1, 12)
            c = zeta(L, rng.randrange(L)).scale(Fraction(rng.randint(1, 9), rng.randint(1, 9)))
        else:
            c = random_cyc(rng, rng.choice([3, 4, 5, 8]), bound=4)
        if not c:
            continue
        return RepSpec.make(params, dim, ell, rng.choice(units), c)


def _violating_spec(rng: random.Random) -> RepSpec:
    while True:
        params = coprime_params(rng)
        dim = rng.randint(2, 6)
        m = params.modulus(dim)
        ell = rng.randint(2, 500)
        if m % ell == 0 or math.gcd(ell, params.q) != 1:
            continue
        t = rng.choice([u for u in range(ell) if math.gcd(u, ell) == 1])
        spec = RepSpec.make(params, dim, ell, t, rng.randint(1, 5), strict=False)
        bad = spec.violations()
        assert len(bad) == 1 and bad[0].startswith("existence criterion fails")
        return spec


@pytest.mark.acceptance(3, "relation and identity properties on random specs")
def test_relation_and_identities():
    rng = random.Random(3)
    failures = []
    for _ in range(500):
        spec = _valid_spec(rng)
        pair = build_matrices(spec)
        if not verify_relation(pair, spec.params):
            failures.append(("relation", spec))
        if not verify_conjugation_law(pair, spec.s):
            failures.append(("conjugation", spec))
        for k in range(-3, 4):
            if not verify_power_identity(pair, spec.params, k):
                failures.append((f"power identity k={k}", spec))
        if a_power_scalar(pair) != (spec.c ** spec.dim).change_order(pair.order):
            failures.append(("A^dim scalar", spec))
    for _ in range(100):
        spec = _violating_spec(rng)
        if verify_relation(build_matrices(spec, strict=False), spec.params):
            failures.append(("relation holds without divisibility", spec))
    assert not failures, failures[:5]


@pytest.mark.acceptance(4, "structure properties over the sweep's ells")
def test_structure_properties():
    failures = []
    checked = 0
    for params in iter_params(SWEEP_BOX["pmax"], SWEEP_BOX["qmax"]):
        p, q = params.p, params.q
        for dim in range(SWEEP_BOX["dim_min"], SWEEP_BOX["dim_max"] + 1):
            report = classify_dimension(params, dim, max_ell=SWEEP_BOX["max_ell"])
            for rec in report.records:
                ell = rec.ell
                phi = nt.euler_phi(ell)
                if (p**phi - q**phi) % ell:
                    failures.append(f"{params} ell={ell}: ell does not divide p^phi - q^phi")
                order = nt.multiplicative_order(rec.s, ell)
                lhs = rec.irreducible    # existence holds: ell divides the modulus
                if lhs != (order == dim):
                    failures.append(f"{params} dim={dim} ell={ell}: ord={order}")
                checked += 1
            # the equivalence also holds for every ell coprime to p*q, divisor or not
            # (a common factor with p makes s a non-unit and rules out existence)
            for ell in range(1, 301):
                if math.gcd(ell, p * q) != 1:
                    if math.gcd(ell, q) == 1 and params.modulus(dim) % ell == 0:
                        failures.append(f"{params} dim={dim} ell={ell}: exists with s a non-unit")
                    continue
                s = nt.solve_s(p, q, ell)
                exists = params.modulus(dim) % ell == 0
                lhs = exists and is_irreducible(params, dim, ell)
                if lhs != (nt.multiplicative_order(s, ell) == dim):
                    failures.append(f"{params} dim={dim} ell={ell} (all-ell range)")
    assert checked > 1000
    assert not failures, failures[:5]


def _check_witness(spec1, spec2):
    X = spec_intertwiner(spec1, spec2)
    if X is None:
        return False
    p1, p2 = build_matrices(spec1), build_matrices(spec2)
    L = X.order
    p1, p2 = p1.change_order(L), p2.change_order(L)
    assert mat_mul(X, p1.A) == mat_mul(p2.A, X)
    assert mat_mul(X, p1.B) == mat_mul(p2.B, X)
    return True


@pytest.mark.acceptance(5, "equivalence suite")
def test_equivalence_suite():
    start = time.perf_counter()
    rng = random.Random(5)
    cases = [(BS25, 3, 9), (BS25, 3, 13), (BS25, 3, 39), (BS25, 3, 117), (BS25, 3, 3),
             (BSParams(2, 3), 2, 5), (BSParams(-3, 5), 2, 16), (BSParams(2, 3), 4, 65),
             (BSParams(3, 7), 3, 316), (BSParams(-2, 5), 4, 609), (BSParams(2, 3), 4, 13),
             (BSParams(4, 5), 2, 9)]
    failures = []
    for params, dim, ell in cases:
        rec = next(r for r in classify_dimension(params, dim).records if r.ell == ell)
        reps = rec.orbit_reps
        for t in reps[:4]:
            # same orbit: t versus t*s
            t2 = t * rec.s % ell
            if not _check_witness(RepSpec.make(params, dim, ell, t), RepSpec.make(params, dim, ell, t2)):
                failures.append(f"same orbit {params} {dim} {ell} t={t}")
            # c versus omega*c, omega a dim-th root of unity
            c = rng.choice([rational(1), rational(Fraction(3, 2)), zeta(4)])
            k = rng.randrange(1, dim) if dim > 1 else 0
            omega_c = _times_root(c, dim, k)
            if not _check_witness(RepSpec.make(params, dim, ell, t, c),
                                  RepSpec.make(params, dim, ell, t, omega_c)):
                failures.append(f"omega*c {params} {dim} {ell} t={t}")
            # c^dim mismatch
            if are_equivalent(RepSpec.make(params, dim, ell, t, 1), RepSpec.make(params, dim, ell, t, 2)):
                failures.append(f"c^dim mismatch {params} {dim} {ell} t={t}")
        # cross orbit
        for t1, t2 in itertools.islice(itertools.combinations(reps, 2), 6):
            if are_equivalent(RepSpec.make(params, dim, ell, t1), RepSpec.make(params, dim, ell, t2)):
                failures.append(f"cross orbit {params} {dim} {ell} {t1} {t2}")

    # reflexivity, symmetry, transitivity on a pool that has nontrivial classes
    pool = []
    for params, dim, ell in [(BS25, 3, 9), (BS25, 3, 13), (BSParams(2, 3), 2, 5), (BS25, 3, 3)]:
        units = [t for t in range(ell) if math.gcd(t, ell) == 1]
        for t in units:
            for c in (rational(1), zeta(dim), rational(2)):
                pool.append(RepSpec.make(params, dim, ell, t, c))
    groups: dict[tuple, list[RepSpec]] = {}
    for spec in pool:
        groups.setdefault((spec.params, spec.dim), []).append(spec)
    for specs in groups.values():
        sample = rng.sample(specs, min(len(specs), 12))
        eq = {(i, j): are_equivalent(a, b) for (i, a), (j, b) in
              itertools.product(enumerate(sample), repeat=2)}
        n = len(sample)
        for i in range(n):
            if not eq[i, i]:
                failures.append("reflexivity")
            for j in range(n):
                if eq[i, j] != eq[j, i]:
                    failures.append("symmetry")
                for k in range(n):
                    if eq[i, j] and eq[j, k] and not eq[i, k]:
                        failures.append("transitivity")
        assert any(eq[i, j] for i in range(n) for j in range(n) if i != j) or n < 2
    elapsed = time.perf_counter() - start
    assert not failures, failures[:5]
    assert elapsed < 120, f"{elapsed:.1f}s"


def _times_root(c: CycNum, dim: int, k: int) -> CycNum:
    if dim == 1:
        return c
    L = math.lcm(c.order, dim)
    return c.change_order(L) * zeta(dim, k).change_order(L)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@pytest.mark.acceptance(6, "cyclotomic kernel: Phi product, field axioms, float homomorphism")
def test_cyclotomic_kernel():
    for L in range(1, 61):
        prod = [1]
        for d in range(1, L + 1):
            if L % d == 0:
                prod = _poly_mul(prod, list(cyclotomic_polynomial(d).coeffs))
        assert prod == [-1] + [0] * (L - 1) + [1], L

    rng = random.Random(6)
    tol = 1e-9
    for _ in range(1000):
        L = rng.randint(1, 60)
        x, y, z = (random_cyc(rng, L, bound=6) for _ in range(3))
        zero, one = rational(0, L), rational(1, L)
        assert x + y == y + x and x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + zero == x and x * one == x
        assert x + (-x) == zero
        if x:
            assert x * x.inverse() == one
        cx, cy = x.to_complex(), y.to_complex()
        scale = max(1.0, abs(cx), abs(cy), abs(cx * cy))
        assert abs((x + y).to_complex() - (cx + cy)) <= tol * scale
        assert abs((x * y).to_complex() - cx * cy) <= tol * scale
        assert abs((-x).to_complex() + cx) <= tol * scale
        if x and abs(cx) > 1e-3:
            assert abs(x.inverse().to_complex() - 1 / cx) <= tol * max(1.0, abs(1 / cx))


@pytest.mark.acceptance(7, "count regression: 38 classes for BS(2,5), dim 3")
def test_count_regression():
    assert count_irreducibles(BS25, 3) == 38
    report = classify_dimension(BS25, 3)
    reps = [(r.ell, t) for r in report.irreducible_records() for t in r.orbit_reps]
    assert len(reps) == 38
    pairs = {}
    for ell, t in reps:
        pair = build_matrices(RepSpec.make(BS25, 3, ell, t))
        assert burnside_irreducible(pair), (ell, t)
        pairs[ell, t] = pair
    rng = random.Random(7)
    for a, b in rng.sample(list(itertools.combinations(reps, 2)), 20):
        assert find_intertwiner(pairs[a], pairs[b]) is None, (a, b)
