"""
Brute-force verifiers that do not use the divisibility criteria.

* burnside_irreducible: a representation is irreducible iff the algebra
  spanned by the images of all group words is the full matrix algebra.
* invariant_subspace_witness: an explicit proper invariant subspace,
  verified by exact matrix application.
* evaluate_word: images of arbitrary words in a and b.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from . import numtheory as nt
from .cyclotomic import rational
from .errors import WitnessVerificationFailed
from .exactlinalg import CycMatrix, CycVector, EchelonBasis, mat_mul, mat_pow
from .repcore import BSParams, MatrixPair, RepSpec, eigenvalue_exponents

GENERATORS = ("a", "b")


@dataclass(frozen=True)
class GroupWord:
    """A freely reduced word in a, b: syllables (generator, nonzero exponent)."""

    syllables: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        out: list[tuple[str, int]] = []
        for gen, e in self.syllables:
            if gen not in GENERATORS:
                raise ValueError(f"unknown generator {gen!r}")
            if out and out[-1][0] == gen:
                e += out.pop()[1]
            if e:
                out.append((gen, e))
        object.__setattr__(self, "syllables", tuple(out))

    @classmethod
    def parse(cls, text: str) -> GroupWord:
        """Parse words like "a b^2 a^-1" (spaces optional)."""
        text = text.replace(" ", "")
        pos, out = 0, []
        pattern = re.compile(r"([ab])(?:\^(-?\d+))?")
        while pos < len(text):
            m = pattern.match(text, pos)
            if m is None:
                raise ValueError(f"cannot parse word {text!r} at position {pos}")
            out.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
            pos = m.end()
        return cls(tuple(out))

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.syllables + other.syllables)

    def inverse(self) -> GroupWord:
        return GroupWord(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __len__(self) -> int:
        return len(self.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.syllables)


def relation_word(params: BSParams) -> GroupWord:
    """a b^p a^-1 b^-q, trivial in BS(p, q)."""
    return GroupWord((("a", 1), ("b", params.p), ("a", -1), ("b", -params.q)))


def power_identity_word(params: BSParams, k: int) -> GroupWord:
    """b^-(p^k) a^-k b^(q^k) a^k for k >= 0, trivial in BS(p, q)."""
    if k < 0:
        raise ValueError("only k >= 0 has an integral word")
    return GroupWord((("b", -params.p**k), ("a", -k), ("b", params.q**k), ("a", k)))


def evaluate_word(pair: MatrixPair, word: GroupWord, *, reduce_b: bool = True) -> CycMatrix:
    """rho(word) as an exact matrix.

    With reduce_b the b-exponents are taken modulo the confirmed order of B;
    reduce_b=False powers B literally (used to cross-check the reduction).
    """
    out = CycMatrix.identity(pair.dim, pair.order)
    for gen, e in word.syllables:
        if gen == "a":
            factor = pair.a_power(e)
        elif reduce_b:
            factor = pair.b_power(e)
        else:
            factor = mat_pow(pair.B, e)
        out = mat_mul(out, factor)
    return out


def burnside_irreducible(pair: MatrixPair) -> bool:
    """Span closure of {I} under left and right multiplication by A, A^-1, B.

    The span grows strictly until it is stable and never exceeds d^2, so the
    loop ends after at most d^2 insertions. Irreducible iff it reaches d^2.
    """
    d = pair.dim
    if d == 1:
        return True
    gens = (pair.A, pair.A_inv, pair.B)
    basis = EchelonBasis(d * d, pair.order)
    start = CycMatrix.identity(d, pair.order)
    basis.add(start.entries)
    queue = deque([start])
    while queue and not basis.full:
        word = queue.popleft()
        for g in gens:
            for cand in (mat_mul(g, word), mat_mul(word, g)):
                if basis.add(cand.entries):
                    queue.append(cand)
                    if basis.full:
                        return True
    return basis.full


def algebra_dimension(pair: MatrixPair) -> int:
    """Dimension of the matrix algebra generated by A, A^-1 and B."""
    d = pair.dim
    gens = (pair.A, pair.A_inv, pair.B)
    basis = EchelonBasis(d * d, pair.order)
    start = CycMatrix.identity(d, pair.order)
    basis.add(start.entries)
    queue = deque([start])
    while queue:
        word = queue.popleft()
        for g in gens:
            cand = mat_mul(g, word)
            if basis.add(cand.entries):
                queue.append(cand)
    return len(basis)


def _in_span(basis: list[CycVector], v: CycVector) -> bool:
    eb = EchelonBasis(len(v), v.order)
    for b in basis:
        eb.add(b.entries)
    return eb.contains(v.entries)


def invariant_subspace_witness(pair: MatrixPair, spec: RepSpec) -> list[CycVector] | None:
    """A proper nonzero subspace invariant under A and B, or None.

    With m = ord_ell(s) < dim the diagonal of B repeats with period m, so P^m
    (A = c P) commutes with A and B and its fixed space
    span{sum_j e_(r + j m) : 0 <= r < m} is invariant. The subspace is checked
    exactly before it is returned. None when the eigenvalue exponents of B are
    pairwise distinct.
    """
    d, L = pair.dim, pair.order
    exps = eigenvalue_exponents(spec)
    if len(set(exps)) == d:
        return None
    m = nt.multiplicative_order(spec.s, spec.ell)
    if m >= d or d % m:
        raise WitnessVerificationFailed(
            f"repeated eigenvalues but ord(s) = {m} does not give a period of {d}"
        )
    zero, one = rational(0, L), rational(1, L)
    basis = [
        CycVector(L, [one if i % m == r else zero for i in range(d)]) for r in range(m)
    ]
    for v in basis:
        for M in (pair.A, pair.B):
            if not _in_span(basis, M.apply(v)):
                raise WitnessVerificationFailed(
                    "constructed subspace is not invariant under the representation"
                )
    return basis


def is_invariant(pair: MatrixPair, basis: Iterable[CycVector]) -> bool:
    """Whether span(basis) is mapped into itself by A and B."""
    basis = list(basis)
    return all(_in_span(basis, M.apply(v)) for v in basis for M in (pair.A, pair.B))
