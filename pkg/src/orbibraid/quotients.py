"""Exact finite and abelian-by-finite quotients used as homomorphism oracles.

Monomial matrices over roots of unity are stored as (permutation, exponent
vector) pairs with the convention that the matrix of (sigma, a) has entry
theta^{a_j} in row sigma(j), column j; multiplication is therefore
(sigma, a) * (tau, b) = (sigma o tau, c) with c_j = b_j + a_{tau(j)}.

The standard wreath assignment sends a half-twist to the bare transposition
of its two strands and each torsion or puncture loop to a diagonal unit
vector; every derived generator (conjugated half-twists, pure generators,
the far-strand cone loops) is evaluated through its defining word, so a
single assignment covers every presentation family built by this package.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .presentations import (
    Presentation,
    expand_pure_generator,
    relation_role,
)
from .words import Family, GeneratorId, Word

CONVENTION = "monomial matrices: entry theta^(a_j) in row sigma(j), column j"


class LimitExceededError(RuntimeError):
    """An enumeration would exceed its cap."""


@dataclass(frozen=True)
class ExponentGroup:
    """Direct product of cyclic groups; modulus 0 marks an infinite factor."""

    moduli: tuple[int, ...]

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(v % m if m else v for v, m in zip(vec, self.moduli))

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.moduli)

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.reduce(tuple(x + y for x, y in zip(a, b)))

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return self.reduce(tuple(-x for x in a))


@dataclass(frozen=True)
class MonomialElement:
    n: int
    perm: tuple[int, ...]  # perm[j] = image of strand j (0-based)
    exps: tuple[tuple[int, ...], ...]  # one exponent vector per strand
    group: ExponentGroup

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(self.n)):
            raise ValueError(f"not a permutation of 0..{self.n - 1}: {self.perm}")
        if len(self.exps) != self.n:
            raise ValueError("exponent row count must equal n")

    @classmethod
    def identity(cls, n: int, group: ExponentGroup) -> "MonomialElement":
        return cls(n, tuple(range(n)), tuple(group.zero() for _ in range(n)), group)

    def __mul__(self, other: "MonomialElement") -> "MonomialElement":
        if self.n != other.n or self.group != other.group:
            raise ValueError("size or exponent-group mismatch")
        perm = tuple(self.perm[other.perm[j]] for j in range(self.n))
        exps = tuple(
            self.group.add(other.exps[j], self.exps[other.perm[j]]) for j in range(self.n)
        )
        return MonomialElement(self.n, perm, exps, self.group)

    def inverse(self) -> "MonomialElement":
        inv_perm = [0] * self.n
        for j, img in enumerate(self.perm):
            inv_perm[img] = j
        exps = tuple(self.group.neg(self.exps[inv_perm[j]]) for j in range(self.n))
        return MonomialElement(self.n, tuple(inv_perm), exps, self.group)

    def __pow__(self, k: int) -> "MonomialElement":
        out = MonomialElement.identity(self.n, self.group)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self == MonomialElement.identity(self.n, self.group)

    def perm_cycles(self) -> str:
        seen = [False] * self.n
        parts = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            nxt = self.perm[start]
            while nxt != start:
                cycle.append(nxt)
                seen[nxt] = True
                nxt = self.perm[nxt]
            if len(cycle) > 1:
                parts.append("(" + " ".join(str(c + 1) for c in cycle) + ")")
        return "".join(parts) if parts else "()"

    def __repr__(self) -> str:
        return f"{self.perm_cycles()} exps={list(map(list, self.exps))}"


def monomial_mul(a: MonomialElement, b: MonomialElement) -> MonomialElement:
    return a * b


def transposition(n: int, j: int, group: ExponentGroup) -> MonomialElement:
    """The bare monomial matrix swapping strands j and j+1 (1-based j)."""
    perm = list(range(n))
    perm[j - 1], perm[j] = perm[j], perm[j - 1]
    return MonomialElement(n, tuple(perm), tuple(group.zero() for _ in range(n)), group)


def diagonal_unit(n: int, strand: int, coord: int, group: ExponentGroup) -> MonomialElement:
    """Diagonal element with a single +1 exponent at (strand, coord), 0-based."""
    exps = [list(group.zero()) for _ in range(n)]
    exps[strand][coord] = 1
    return MonomialElement(n, tuple(range(n)), tuple(tuple(e) for e in exps), group)


# --- the standard wreath assignment -------------------------------------------


@dataclass(frozen=True)
class WreathAssignment:
    presentation: Presentation
    n: int
    group: ExponentGroup
    images: tuple[tuple[GeneratorId, MonomialElement], ...]

    @property
    def image_map(self) -> dict[GeneratorId, MonomialElement]:
        return dict(self.images)

    def identity(self) -> MonomialElement:
        return MonomialElement.identity(self.n, self.group)


def _conjugate_definitions(p: Presentation) -> dict[GeneratorId, Word]:
    """Defining words of conjugated half-twists, read off the C-relations."""
    defs: dict[GeneratorId, Word] = {}
    for rel in p.relations:
        role = relation_role(rel)
        if not role or not role.startswith("C"):
            continue
        rhs = rel.rhs.letters
        lhs = rel.lhs.letters
        if (
            len(rhs) == 1
            and rhs[0].sign == 1
            and rhs[0].gen.family == Family.HUCONJ
            and len(lhs) == 3
            and lhs[0].sign == 1
            and lhs[2].sign == -1
            and lhs[0].gen == lhs[2].gen
            and lhs[1].sign == 1
        ):
            defs.setdefault(rhs[0].gen, rel.lhs)
    return defs


def standard_wreath_assignment(p: Presentation, track_punctures: bool = True) -> WreathAssignment:
    """h_j -> transposition (j, j+1); u_nu, t_lambda -> diagonal units; rest derived."""
    n = p.param("n")
    N = p.param("N", 0)
    L = p.param("L", 0)
    cone_moduli = tuple(p.param(f"m{nu}") for nu in range(1, N + 1))
    group = ExponentGroup(cone_moduli + ((0,) * L if track_punctures else ()))
    params = p.params_dict

    images: dict[GeneratorId, MonomialElement] = {}

    def evaluate(w: Word) -> MonomialElement:
        out = MonomialElement.identity(n, group)
        for letter in w:
            img = images[letter.gen]
            out = out * (img if letter.sign > 0 else img.inverse())
        return out

    # base letters first, then the derived families
    for g in p.generators:
        if g.family == Family.H:
            images[g] = transposition(n, g.indices[0], group)
        elif g.family == Family.U:
            images[g] = diagonal_unit(n, 0, g.indices[0] - 1, group)
        elif g.family == Family.T:
            if track_punctures:
                images[g] = diagonal_unit(n, 0, N + g.indices[0] - 1, group)
            else:
                images[g] = MonomialElement.identity(n, group)
    for g in p.generators:
        if g.family == Family.UPRIME:
            images[g] = evaluate(expand_pure_generator(
                GeneratorId(Family.CKV, (n, 2), f"c({n},2)"), params))
        elif g.family == Family.UBAR:
            images[g] = evaluate(expand_pure_generator(
                GeneratorId(Family.CKV, (n, 1), f"c({n},1)"), params))
        elif g.family in (Family.AJI, Family.BKL, Family.CKV):
            images[g] = evaluate(expand_pure_generator(g, params))
    conj_defs = _conjugate_definitions(p)
    for g in p.generators:
        if g.family == Family.HUCONJ:
            if g not in conj_defs:
                raise ValueError(f"no defining conjugation relation for {g!r} in {p.name!r}")
            images[g] = evaluate(conj_defs[g])
    missing = set(p.generators) - set(images)
    if missing:
        raise ValueError(f"no wreath image for generators {missing}")
    ordered = tuple((g, images[g]) for g in p.generators)
    return WreathAssignment(p, n, group, ordered)


def evaluate_word(asgn: WreathAssignment, w: Word) -> MonomialElement:
    images = asgn.image_map
    out = asgn.identity()
    for letter in w:
        try:
            img = images[letter.gen]
        except KeyError:
            raise ValueError(f"no image for generator {letter.gen!r}") from None
        out = out * (img if letter.sign > 0 else img.inverse())
    return out


def evaluate_letters(asgn: WreathAssignment, letters) -> MonomialElement:
    """Evaluate a raw (possibly unreduced) letter sequence."""
    images = asgn.image_map
    out = asgn.identity()
    for letter in letters:
        img = images[letter.gen]
        out = out * (img if letter.sign > 0 else img.inverse())
    return out


@dataclass(frozen=True)
class QuotientCheckEntry:
    tag: str
    holds: bool


@dataclass(frozen=True)
class QuotientCheckReport:
    entries: tuple[QuotientCheckEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.holds for e in self.entries)

    def failing_tags(self) -> list[str]:
        return [e.tag for e in self.entries if not e.holds]


def check_relations_in_quotient(
    p: Presentation, asgn: WreathAssignment | None = None
) -> QuotientCheckReport:
    """Evaluate both sides of every relation and compare exactly."""
    asgn = asgn or standard_wreath_assignment(p)
    entries = tuple(
        QuotientCheckEntry(rel.tag, evaluate_word(asgn, rel.lhs) == evaluate_word(asgn, rel.rhs))
        for rel in p.relations
    )
    return QuotientCheckReport(entries)


def separate(asgn: WreathAssignment, a: Word, b: Word) -> bool:
    """True iff the quotient distinguishes a and b (hence a != b in the group)."""
    return evaluate_word(asgn, a) != evaluate_word(asgn, b)


# --- exact enumeration of the monomial reflection groups ----------------------


def enumerate_G(m: int, p: int, n: int, cap: int = 2_000_000) -> list[MonomialElement]:
    """All monomial elements over Z_m with exponent sum divisible by p.

    The count is m^n * n! / p; raises LimitExceededError beyond the cap.
    """
    if m < 1 or n < 1 or p < 1:
        raise ValueError(f"need m, p, n >= 1, got {(m, p, n)}")
    if m % p != 0:
        raise ValueError(f"p must divide m, got m={m}, p={p}")
    expected = (m**n) * math.factorial(n) // p
    if expected > cap:
        raise LimitExceededError(f"|G({m},{p},{n})| = {expected} exceeds cap {cap}")
    group = ExponentGroup((m,))
    out = []
    for perm in itertools.permutations(range(n)):
        for vec in itertools.product(range(m), repeat=n):
            if sum(vec) % p != 0:
                continue
            out.append(MonomialElement(n, perm, tuple((v,) for v in vec), group))
    assert len(out) == expected
    return out


def order_G(m: int, p: int, n: int) -> int:
    if m % p != 0:
        raise ValueError(f"p must divide m, got m={m}, p={p}")
    return (m**n) * math.factorial(n) // p
