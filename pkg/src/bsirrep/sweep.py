"""
Criterion/oracle agreement sweep over a box of parameters.

For every coprime (p, q) with |p| <= pmax, 1 <= q <= qmax (BS(p, q) = BS(-p, -q),
so q > 0 loses nothing), every dim in range and every divisor ell <= max_ell of
q^dim - p^dim, the canonical pair with t = smallest orbit representative and
c = 1 is checked three ways: the divisibility criterion, the Burnside span
closure, and the invariant-subspace witness. A seeded sample of the records
also runs the group-identity checks.
"""
from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .classify import ClassRecord, classify_dimension
from .errors import BudgetExceeded
from .oracle import (
    GroupWord,
    burnside_irreducible,
    evaluate_word,
    invariant_subspace_witness,
    relation_word,
)
from .repcore import (
    BSParams,
    RepSpec,
    a_power_scalar,
    build_matrices,
    verify_conjugation_law,
    verify_power_identity,
    verify_relation,
)


def iter_params(pmax: int, qmax: int):
    for p in range(-pmax, pmax + 1):
        for q in range(1, qmax + 1):
            if p == 0 or math.gcd(p, q) != 1 or (abs(p) == 1 and q == 1):
                continue
            yield BSParams(p, q)


@dataclass(frozen=True)
class RecordCheck:
    p: int
    q: int
    dim: int
    ell: int
    t: int
    criterion: bool
    burnside: bool
    witness: bool
    properties_checked: bool = False
    property_failures: tuple[str, ...] = ()

    @property
    def agrees(self) -> bool:
        return self.criterion == self.burnside and self.witness == (not self.burnside)

    def describe(self) -> str:
        return (
            f"BS({self.p},{self.q}) dim={self.dim} ell={self.ell} t={self.t}: "
            f"criterion={self.criterion} burnside={self.burnside} witness={self.witness}"
        )


@dataclass
class SweepResult:
    checks: list[RecordCheck] = field(default_factory=list)
    budget_failures: list[str] = field(default_factory=list)

    @property
    def disagreements(self) -> list[RecordCheck]:
        return [c for c in self.checks if not c.agrees]

    @property
    def property_failures(self) -> list[tuple[RecordCheck, str]]:
        return [(c, f) for c in self.checks for f in c.property_failures]

    @property
    def property_checked(self) -> int:
        return sum(1 for c in self.checks if c.properties_checked)

    @property
    def ok(self) -> bool:
        return not self.disagreements and not self.property_failures


def _random_word(rng: random.Random, length: int) -> GroupWord:
    return GroupWord(tuple((rng.choice("ab"), rng.choice((-3, -2, -1, 1, 2, 3)))
                           for _ in range(length)))


def identity_checks(spec: RepSpec, rng: random.Random) -> list[str]:
    """Group identities that must hold exactly on the canonical pair of spec."""
    params, pair = spec.params, build_matrices(spec)
    failures = []
    if not verify_relation(pair, params):
        failures.append("defining relation")
    if not evaluate_word(pair, relation_word(params)).is_identity():
        failures.append("relation word does not evaluate to the identity")
    if not verify_conjugation_law(pair, spec.s):
        failures.append("conjugation law")
    for k in range(-3, 4):
        if not verify_power_identity(pair, params, k):
            failures.append(f"power identity k={k}")
    try:
        a_power_scalar(pair)
    except Exception as exc:  # noqa: BLE001 - reported, not raised
        failures.append(f"A^dim scalar: {exc}")
    w1, w2 = _random_word(rng, 4), _random_word(rng, 4)
    e1, e2 = evaluate_word(pair, w1), evaluate_word(pair, w2)
    if evaluate_word(pair, w1 * w2) != e1 @ e2:
        failures.append(f"evaluation not multiplicative on {w1} * {w2}")
    if evaluate_word(pair, w1, reduce_b=False) != e1:
        failures.append(f"reduced and literal b-powers differ on {w1}")
    return failures


def check_record(params: BSParams, dim: int, rec: ClassRecord, *,
                 properties: bool = False, seed: int = 0,
                 inject_fault: bool = False) -> RecordCheck:
    t = rec.orbit_reps[0] if rec.orbit_reps else (0 if rec.ell == 1 else 1)
    spec = RepSpec.make(params, dim, rec.ell, t)
    pair = build_matrices(spec)
    burnside = burnside_irreducible(pair)
    witness = invariant_subspace_witness(pair, spec) is not None
    criterion = rec.irreducible
    if inject_fault:
        criterion = not criterion
    failures: tuple[str, ...] = ()
    if properties:
        rng = random.Random(hash((seed, params.p, params.q, dim, rec.ell)))
        failures = tuple(identity_checks(spec, rng))
    return RecordCheck(params.p, params.q, dim, rec.ell, t, criterion, burnside,
                       witness, properties, failures)


def _sweep_task(args) -> tuple[list[RecordCheck], str | None]:
    params, dim, max_ell, seed, fraction, fault_at = args
    try:
        report = classify_dimension(params, dim, max_ell=max_ell)
    except BudgetExceeded as exc:
        return [], f"{params} dim={dim}: {exc}"
    rng = random.Random(hash((seed, params.p, params.q, dim)))
    out = []
    for rec in report.records:
        props = rng.random() < fraction
        fault = fault_at == (params.p, params.q, dim, rec.ell)
        out.append(check_record(params, dim, rec, properties=props, seed=seed,
                                inject_fault=fault))
    return out, None


def run_sweep(pmax: int, qmax: int, dim_max: int, *, dim_min: int = 1,
              max_ell: int | None = 2000, seed: int = 0,
              property_fraction: float = 0.1, jobs: int = 1,
              inject_fault: bool = False) -> SweepResult:
    """Run the agreement sweep; output order is independent of `jobs`.

    inject_fault flips the criterion verdict of the first record (harness
    self-test).
    """
    tasks = []
    fault_at = None
    for params in iter_params(pmax, qmax):
        for dim in range(dim_min, dim_max + 1):
            if inject_fault and fault_at is None:
                fault_at = (params.p, params.q, dim, 1)
            tasks.append((params, dim, max_ell, seed, property_fraction, fault_at))
    result = SweepResult()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_sweep_task, tasks, chunksize=4))
    else:
        outcomes = [_sweep_task(t) for t in tasks]
    for checks, budget in outcomes:
        result.checks.extend(checks)
        if budget:
            result.budget_failures.append(budget)
    return result
