"""
Canonical representations of BS(p, q) = <a, b | a b^p = b^q a>.

A canonical representation of dimension d is determined by the order ell of
B, an exponent t coprime to ell (lambda = zeta_ell^t), the conjugation
exponent s (q*s = p mod ell) and a nonzero scalar c:

    A = c * P,   P e_i = e_{i+1 mod d}
    B = diag(lambda, lambda^s, ..., lambda^(s^(d-1)))

`dim` is always the matrix size. Such a pair satisfies the defining relation
exactly when ell divides q^dim - p^dim.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

from . import numtheory as nt
from .cyclotomic import CycNum, change_order, rational, zeta
from .errors import (
    InvalidParams,
    InvalidSpec,
    NotInvertible,
    StructureViolation,
    ZeroParameter,
)
from .exactlinalg import CycMatrix, mat_inverse, mat_mul, mat_pow

DEFAULT_POWER_IDENTITY_BOUND = 6


@dataclass(frozen=True)
class BSParams:
    """Coprime nonzero (p, q), not both of absolute value 1, normalized to q > 0.

    BS(p, q) and BS(-p, -q) are the same group; `sign_flipped` records whether
    the given pair was negated to reach q > 0.
    """

    p: int
    q: int
    sign_flipped: bool = field(default=False, compare=False)

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 or q == 0:
            raise ZeroParameter("BS(p, q) needs nonzero p and q")
        if math.gcd(p, q) != 1:
            raise InvalidParams(f"p = {p} and q = {q} are not relatively prime")
        if abs(p) == 1 and abs(q) == 1:
            raise InvalidParams("p and q must not both be +-1")
        if q < 0:
            object.__setattr__(self, "p", -p)
            object.__setattr__(self, "q", -q)
            object.__setattr__(self, "sign_flipped", not self.sign_flipped)

    def modulus(self, dim: int) -> int:
        """q^dim - p^dim."""
        return nt.power_difference(self.p, self.q, dim)

    def hopfian_status(self) -> nt.HopfianStatus:
        return nt.hopfian_status(self.p, self.q)

    def __str__(self) -> str:
        return f"BS({self.p},{self.q})"


@dataclass(frozen=True)
class RepSpec:
    """Discrete data of one canonical representation.

    Construction only checks types and ranges; `violations()` lists broken
    invariants and `make` builds a fully checked spec.
    """

    params: BSParams
    dim: int
    ell: int
    t: int
    s: int
    c: CycNum

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidSpec(f"dim must be positive, got {self.dim}")
        if self.ell < 1:
            raise InvalidSpec(f"ell must be positive, got {self.ell}")
        if not isinstance(self.c, CycNum):
            object.__setattr__(self, "c", rational(self.c))

    @classmethod
    def make(cls, params: BSParams, dim: int, ell: int, t: int = 1, c=1, *,
             strict: bool = True) -> RepSpec:
        """Spec with s solved from q*s = p (mod ell); validated unless strict=False."""
        try:
            s = nt.solve_s(params.p, params.q, ell)
        except NotInvertible as exc:
            raise InvalidSpec(f"q = {params.q} is not invertible modulo ell = {ell}") from exc
        spec = cls(params, dim, ell, t % ell, s, c)
        if strict:
            spec.check()
        return spec

    def violations(self) -> list[str]:
        p, q, ell = self.params.p, self.params.q, self.ell
        out = []
        if not 0 <= self.t < ell or math.gcd(self.t, ell) != 1:
            out.append(f"t = {self.t} is not a unit in [0, {ell})")
        if not 0 <= self.s < ell or (q * self.s - p) % ell:
            out.append(f"s = {self.s} does not solve {q}*s = {p} (mod {ell})")
        m = self.params.modulus(self.dim)
        if m % ell:
            out.append(f"existence criterion fails: {ell} ∤ {m}")
        if not self.c:
            out.append("c must be nonzero")
        return out

    def check(self) -> RepSpec:
        bad = self.violations()
        if bad:
            raise InvalidSpec("; ".join(bad))
        return self

    @property
    def lam(self) -> CycNum:
        return zeta(self.ell, self.t)


@dataclass(frozen=True, eq=False)
class MatrixPair:
    """Exact images A = rho(a), B = rho(b) over a common field Q(zeta_order).

    `ell` is the claimed order of B; exponents of B are reduced modulo it
    only after B**ell == I has been confirmed.
    """

    A: CycMatrix
    B: CycMatrix
    ell: int | None = None

    @property
    def order(self) -> int:
        return self.A.order

    @property
    def dim(self) -> int:
        return self.A.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixPair):
            return NotImplemented
        return self.A == other.A and self.B == other.B and self.ell == other.ell

    __hash__ = None

    @functools.cached_property
    def A_inv(self) -> CycMatrix:
        return mat_inverse(self.A)

    @functools.cached_property
    def b_period(self) -> int | None:
        """ell when B**ell is the identity, else None."""
        if self.ell is None:
            return None
        return self.ell if mat_pow(self.B, self.ell).is_identity() else None

    def a_power(self, k: int) -> CycMatrix:
        return mat_pow(self.A, k) if k >= 0 else mat_pow(self.A_inv, -k)

    def b_power(self, e: int) -> CycMatrix:
        period = self.b_period
        if period is not None:
            e %= period
        return mat_pow(self.B, e)

    def change_order(self, M: int) -> MatrixPair:
        return MatrixPair(self.A.change_order(M), self.B.change_order(M), self.ell)


def eigenvalue_exponents(spec: RepSpec) -> list[int]:
    """Exponents e_i with B = diag(zeta_ell^e_i): e_i = t * s^i mod ell."""
    return [spec.t * pow(spec.s, i, spec.ell) % spec.ell for i in range(spec.dim)]


def shift_matrix(dim: int, order: int, c: CycNum | None = None) -> CycMatrix:
    """c times the cyclic permutation e_i -> e_{i+1 mod dim}."""
    c = rational(1, order) if c is None else c
    zero = rational(0, order)
    ents = [zero] * (dim * dim)
    for i in range(dim):
        ents[((i + 1) % dim) * dim + i] = c
    return CycMatrix(dim, dim, order, ents)


def build_matrices(spec: RepSpec, *, strict: bool = True) -> MatrixPair:
    """Canonical (A, B) for `spec` over Q(zeta_L), L = lcm(ell, order of c).

    With strict=False the divisibility condition is not enforced, so pairs
    that fail the defining relation can be built for testing.
    """
    if strict:
        spec.check()
    elif not spec.c:
        raise InvalidSpec("c must be nonzero")
    L = math.lcm(spec.ell, spec.c.order)
    c = change_order(spec.c, L)
    A = shift_matrix(spec.dim, L, c)
    step = L // spec.ell
    B = CycMatrix.diagonal_matrix([zeta(L, e * step) for e in eigenvalue_exponents(spec)], L)
    return MatrixPair(A, B, spec.ell)


# -- verification -------------------------------------------------------------


def verify_relation(pair: MatrixPair, params: BSParams) -> bool:
    """A B^p == B^q A."""
    return mat_mul(pair.A, pair.b_power(params.p)) == mat_mul(pair.b_power(params.q), pair.A)


def verify_conjugation_law(pair: MatrixPair, s: int) -> bool:
    """A^-1 B A == B^s."""
    return mat_mul(mat_mul(pair.A_inv, pair.B), pair.A) == pair.b_power(s)


def verify_power_identity(pair: MatrixPair, params: BSParams, k: int, *,
                          bound: int = DEFAULT_POWER_IDENTITY_BOUND) -> bool:
    """B^(p^k) == A^-k B^(q^k) A^k.

    For k < 0 the exponents p^k, q^k are taken modulo the order of B (which is
    coprime to p and q), so a confirmed period is required; without one the
    identity cannot be evaluated and the check fails.
    """
    if abs(k) > bound:
        raise ValueError(f"|k| = {abs(k)} exceeds the bound {bound}")
    period = pair.b_period
    if k >= 0:
        ep, eq = params.p**k, params.q**k
    elif period is None:
        return False
    else:
        try:
            ep, eq = pow(params.p, k, period), pow(params.q, k, period)
        except ValueError:
            return False
    lhs = pair.b_power(ep)
    rhs = mat_mul(mat_mul(pair.a_power(-k), pair.b_power(eq)), pair.a_power(k))
    return lhs == rhs


def a_power_scalar(pair: MatrixPair) -> CycNum:
    """The scalar c^dim with A^dim == c^dim * I; StructureViolation otherwise."""
    value = mat_pow(pair.A, pair.dim).scalar_value()
    if value is None:
        raise StructureViolation(f"A^{pair.dim} is not a scalar matrix")
    return value
