"""
Classification of the irreducible canonical representations of BS(p, q).

For fixed (p, q, dim) a canonical pair with B of order ell exists iff ell
divides q^dim - p^dim, and it is irreducible iff ell divides none of
q^k - p^k for 1 <= k < dim. Inside one ell the exponents t of
lambda = zeta_ell^t fall into orbits of t -> t*s; members of one orbit give
equivalent representations (rotate the basis), so each orbit contributes one
class for every admissible value of the invariant c^dim.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace

from . import numtheory as nt
from .cyclotomic import rational
from .errors import IncompatibleSpecs, PreconditionFailed
from .exactlinalg import CycMatrix, kernel_basis, mat_mul, rank
from .repcore import BSParams, MatrixPair, RepSpec, build_matrices

# Orbit representatives are only enumerated for ell up to this bound.
ORBIT_ENUMERATION_LIMIT = 10**6


def exists_rep(params: BSParams, dim: int, ell: int) -> bool:
    return params.modulus(dim) % ell == 0


def is_irreducible(params: BSParams, dim: int, ell: int) -> bool:
    if not exists_rep(params, dim, ell):
        raise PreconditionFailed(
            f"no {dim}-dimensional canonical representation of {params} with ell = {ell}"
        )
    return all(params.modulus(k) % ell for k in range(1, dim))


def orbit_representatives(s: int, ell: int) -> list[int]:
    """Minimal element of every orbit of t -> t*s on the units modulo ell."""
    if ell == 1:
        return [0]
    seen = bytearray(ell)
    reps = []
    for t in range(1, ell):
        if seen[t] or math.gcd(t, ell) != 1:
            continue
        reps.append(t)
        u = t
        while not seen[u]:
            seen[u] = 1
            u = u * s % ell
    return reps


@dataclass(frozen=True)
class ClassRecord:
    """Classification data for one admissible order ell of B.

    class_count is the number of lambda-orbits (phi(ell) / orbit_size) when
    the representations are irreducible and 0 otherwise. `oracle` holds the
    Burnside verdict when it was computed.
    """

    ell: int
    s: int
    orbit_reps: tuple[int, ...] | None
    irreducible: bool
    orbit_size: int
    class_count: int
    oracle: bool | None = None


@dataclass(frozen=True)
class ClassificationReport:
    params: BSParams
    dim: int
    modulus: int
    factorization: nt.Factorization
    records: tuple[ClassRecord, ...]
    max_ell: int | None = None
    truncated: bool = False
    oracle_checked: bool = False
    hopfian: nt.HopfianStatus | None = field(default=None, compare=False)

    def irreducible_records(self) -> list[ClassRecord]:
        return [r for r in self.records if r.irreducible]

    def count_irreducibles(self) -> int:
        return sum(r.class_count for r in self.records if r.irreducible)


def classify_ell(params: BSParams, dim: int, ell: int) -> ClassRecord:
    s = nt.solve_s(params.p, params.q, ell)
    irreducible = is_irreducible(params, dim, ell)
    orbit_size = nt.multiplicative_order(s, ell)
    reps = tuple(orbit_representatives(s, ell)) if ell <= ORBIT_ENUMERATION_LIMIT else None
    count = nt.euler_phi(ell) // orbit_size if irreducible else 0
    return ClassRecord(ell, s, reps, irreducible, orbit_size, count)


def classify_dimension(params: BSParams, dim: int, *, max_ell: int | None = None,
                       max_factor_bits: int | None = None,
                       max_divisors: int | None = None) -> ClassificationReport:
    """One record per divisor ell of |q^dim - p^dim| (those <= max_ell when given)."""
    if dim < 1:
        raise ValueError(f"dim must be positive, got {dim}")
    modulus = params.modulus(dim)
    fac = nt.factorize(abs(modulus), bit_budget=max_factor_bits)
    ells = nt.divisors(fac, limit=max_divisors)
    truncated = False
    if max_ell is not None:
        kept = [e for e in ells if e <= max_ell]
        truncated = len(kept) < len(ells)
        ells = kept
    records = tuple(classify_ell(params, dim, ell) for ell in ells)
    return ClassificationReport(params, dim, modulus, fac, records, max_ell, truncated,
                                hopfian=params.hopfian_status())


def with_oracle(report: ClassificationReport, oracle_fn) -> ClassificationReport:
    """Attach oracle verdicts, computed on the canonical pair t = min orbit rep, c = 1."""
    records = []
    for rec in report.records:
        t = rec.orbit_reps[0] if rec.orbit_reps else (0 if rec.ell == 1 else 1)
        spec = RepSpec.make(report.params, report.dim, rec.ell, t)
        records.append(replace(rec, oracle=oracle_fn(build_matrices(spec))))
    return replace(report, records=tuple(records), oracle_checked=True)


def count_irreducibles(params: BSParams, dim: int, **budgets) -> int:
    return classify_dimension(params, dim, **budgets).count_irreducibles()


# -- equivalence ----------------------------------------------------------------


def intertwiner_system(pair1: MatrixPair, pair2: MatrixPair) -> CycMatrix:
    """Coefficient matrix of X A1 = A2 X, X B1 = B2 X in the unknowns X_ij (row-major)."""
    d, L = pair1.dim, pair1.order
    zero = rational(0, L)
    rows = []
    for M1, M2 in ((pair1.A, pair2.A), (pair1.B, pair2.B)):
        for i in range(d):
            for j in range(d):
                row = [zero] * (d * d)
                for k in range(d):
                    x = M1[k, j]
                    if x:
                        row[i * d + k] = row[i * d + k] + x
                    y = M2[i, k]
                    if y:
                        row[k * d + j] = row[k * d + j] - y
                rows.append(row)
    return CycMatrix.from_rows(rows, L)


def find_intertwiner(pair1: MatrixPair, pair2: MatrixPair, *, tries: int = 8,
                     seed: int = 0) -> CycMatrix | None:
    """An invertible X with X A1 = A2 X and X B1 = B2 X, or None.

    Kernel basis elements, their sum and a few seeded random integer
    combinations are tested for invertibility. For irreducible pairs every
    nonzero intertwiner is invertible, so the first candidate decides.
    """
    if pair1.dim != pair2.dim:
        raise IncompatibleSpecs(f"dimensions {pair1.dim} and {pair2.dim} differ")
    L = math.lcm(pair1.order, pair2.order)
    pair1, pair2 = pair1.change_order(L), pair2.change_order(L)
    d = pair1.dim
    kernel = kernel_basis(intertwiner_system(pair1, pair2))
    if not kernel:
        return None

    def as_matrix(coeffs) -> CycMatrix:
        ents = [rational(0, L)] * (d * d)
        for a, v in zip(coeffs, kernel):
            if a:
                ents = [e + x.scale(a) if x else e for e, x in zip(ents, v.entries)]
        return CycMatrix(d, d, L, ents)

    n = len(kernel)
    candidates = [[int(i == j) for j in range(n)] for i in range(n)]
    if n > 1:
        candidates.append([1] * n)
        rng = random.Random(seed)
        candidates += [[rng.randint(-9, 9) for _ in range(n)] for _ in range(tries)]
    for coeffs in candidates:
        X = as_matrix(coeffs)
        if rank(X) == d:
            if mat_mul(X, pair1.A) != mat_mul(pair2.A, X) or \
                    mat_mul(X, pair1.B) != mat_mul(pair2.B, X):
                raise ArithmeticError("kernel element fails the intertwiner equations")
            return X
    return None


def _check_compatible(spec1: RepSpec, spec2: RepSpec):
    if spec1.params != spec2.params or spec1.dim != spec2.dim:
        raise IncompatibleSpecs(
            f"cannot compare {spec1.params} dim {spec1.dim} with {spec2.params} dim {spec2.dim}"
        )


def spec_intertwiner(spec1: RepSpec, spec2: RepSpec) -> CycMatrix | None:
    _check_compatible(spec1, spec2)
    return find_intertwiner(build_matrices(spec1), build_matrices(spec2))


def are_equivalent(spec1: RepSpec, spec2: RepSpec) -> bool:
    """True iff the canonical pairs are simultaneously conjugate."""
    return spec_intertwiner(spec1, spec2) is not None
