"""Builders for every presentation family the package verifies.

Covers the orbifold braid group on n strands over a disk-like orbifold with
L punctures and cone points of given orders, its pure subgroup, the rewritten
presentations in terms of conjugated half-twist generators (one cone, two
cones, one cone plus one puncture), Artin groups of weighted graphs with
optional marked triangles, and Coxeter quotients.

Every relation carries a provenance tag; suite reports group results by tag.
Relations are stored as equations lhs = rhs (commutators as ab = ba), never
as relators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .words import (
    EPSILON,
    Family,
    GeneratorId,
    Letter,
    W,
    Word,
    aji,
    alternating_word,
    bkl,
    ckv,
    concat,
    format_word,
    h,
    hu,
    inv,
    parse_generator_label,
    parse_word,
    t,
    u,
    ubar,
    uprime,
)


class ParameterError(ValueError):
    """Presentation parameters outside their legal ranges."""


INFINITY = 0  # edge weight marker for "no relation"


@dataclass(frozen=True)
class Relation:
    """An equation between two reduced words, with a provenance tag."""

    lhs: Word
    rhs: Word
    tag: str

    def __post_init__(self) -> None:
        if self.lhs == self.rhs:
            raise ValueError(f"trivial relation not allowed (tag {self.tag!r})")

    def generators(self) -> set[GeneratorId]:
        return self.lhs.generators() | self.rhs.generators()

    def __repr__(self) -> str:
        return f"{format_word(self.lhs)} = {format_word(self.rhs)} [{self.tag}]"


@dataclass(frozen=True)
class Presentation:
    name: str
    params: tuple[tuple[str, int], ...]
    generators: tuple[GeneratorId, ...]
    relations: tuple[Relation, ...]

    def __post_init__(self) -> None:
        declared = set(self.generators)
        if len(declared) != len(self.generators):
            raise ValueError("duplicate generators")
        for rel in self.relations:
            undeclared = rel.generators() - declared
            if undeclared:
                raise ValueError(f"relation {rel.tag!r} uses undeclared generators {undeclared}")

    def param(self, key: str, default: int | None = None) -> int:
        for k, v in self.params:
            if k == key:
                return v
        if default is not None:
            return default
        raise KeyError(f"presentation {self.name!r} has no parameter {key!r}")

    @property
    def params_dict(self) -> dict[str, int]:
        return dict(self.params)

    @property
    def alphabet(self) -> dict[str, GeneratorId]:
        return {g.label: g for g in self.generators}

    def parse(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def validate_word(self, w: Word) -> None:
        extra = w.generators() - set(self.generators)
        if extra:
            from .words import AlphabetError

            raise AlphabetError(f"word uses generators {extra} not in {self.name!r}")

    def __repr__(self) -> str:
        return f"<Presentation {self.name}: {len(self.generators)} gens, {len(self.relations)} rels>"


def _params(d: Mapping[str, int]) -> tuple[tuple[str, int], ...]:
    return tuple(d.items())


def with_extra_relations(p: Presentation, extra: Sequence[Relation], suffix: str) -> Presentation:
    return Presentation(p.name + suffix, p.params, p.generators, p.relations + tuple(extra))


# --- small relation factories ----------------------------------------------


def braid_rel(a: GeneratorId, b: GeneratorId, tag: str) -> Relation:
    return Relation(W(a, b, a), W(b, a, b), tag)


def comm_rel(a, b, tag: str) -> Relation:
    wa, wb = W(a), W(b)
    return Relation(concat(wa, wb), concat(wb, wa), tag)


def power_rel(g: GeneratorId, m: int, tag: str) -> Relation:
    return Relation(W(g) ** m, EPSILON, tag)


def conj_rel(y: GeneratorId, x: GeneratorId, image: Word, tag: str) -> Relation:
    return Relation(W(y, x, inv(y)), image, tag)


def _sq(w: Word) -> Word:
    return concat(w, w)


# --- orbifold braid group (mixed generators) --------------------------------


def _check_orbifold_params(n: int, L: int, cone_orders: Sequence[int]) -> None:
    if n < 1:
        raise ParameterError(f"need n >= 1 strands, got {n}")
    if L < 0:
        raise ParameterError(f"need L >= 0 punctures, got {L}")
    if any(m < 2 for m in cone_orders):
        raise ParameterError(f"cone orders must all be >= 2, got {list(cone_orders)}")


def build_orbifold_braid(n: int, L: int, cone_orders: Sequence[int]) -> Presentation:
    """Braid group on n strands, L punctures and cone points of the given orders.

    Generators are the half-twists h_1..h_{n-1}, a loop t_lambda per puncture
    and a loop u_nu per cone point.  The only difference from the Artin braid
    relations is the torsion of the cone loops and the two-strand interchange
    relations (items 4 and 5).
    """
    _check_orbifold_params(n, L, cone_orders)
    N = len(cone_orders)
    hs = [h(j) for j in range(1, n)]
    ts = [t(lam) for lam in range(1, L + 1)]
    us = [u(nu) for nu in range(1, N + 1)]
    rels: list[Relation] = []
    for nu, m in enumerate(cone_orders, start=1):
        rels.append(power_rel(us[nu - 1], m, f"2.5(1) {us[nu-1].label}"))
    for j in range(2, n):
        rels.append(braid_rel(hs[j - 2], hs[j - 1], f"2.5(2) braid h{j-1} h{j}"))
    for k in range(1, n):
        for l in range(k + 2, n):
            rels.append(comm_rel(hs[k - 1], hs[l - 1], f"2.5(2) [h{k},h{l}]"))
    for g in ts + us:
        for j in range(2, n):
            rels.append(comm_rel(g, hs[j - 1], f"2.5(3) [{g.label},h{j}]"))
    if n >= 2:
        for g in ts + us:
            rels.append(
                Relation(
                    concat(W(hs[0], g, hs[0]), W(g)),
                    concat(W(g), W(hs[0], g, hs[0])),
                    f"2.5(4) {g.label}",
                )
            )
        for theta in range(1, L + 1):
            for lam in range(theta + 1, L + 1):
                b2 = W(inv(hs[0]), ts[lam - 1], hs[0])
                rels.append(
                    Relation(
                        concat(W(ts[theta - 1]), b2),
                        concat(b2, W(ts[theta - 1])),
                        f"2.5(5) [t{theta},b(2,{lam})]",
                    )
                )
        for mu in range(1, N + 1):
            for nu in range(mu + 1, N + 1):
                c2 = W(inv(hs[0]), us[nu - 1], hs[0])
                rels.append(
                    Relation(
                        concat(W(us[mu - 1]), c2),
                        concat(c2, W(us[mu - 1])),
                        f"2.5(5) [{us[mu-1].label},c(2,{nu})]",
                    )
                )
        for lam in range(1, L + 1):
            for nu in range(1, N + 1):
                c2 = W(inv(hs[0]), us[nu - 1], hs[0])
                rels.append(
                    Relation(
                        concat(W(ts[lam - 1]), c2),
                        concat(c2, W(ts[lam - 1])),
                        f"2.5(5) [{ts[lam-1].label},c(2,{nu})]",
                    )
                )
    params = {"n": n, "L": L, "N": N}
    for nu, m in enumerate(cone_orders, start=1):
        params[f"m{nu}"] = m
    name = f"orbifold(n={n},L={L},m={tuple(cone_orders)})"
    return Presentation(name, _params(params), tuple(hs + ts + us), tuple(rels))


# --- pure orbifold braid group ----------------------------------------------


def build_pure_orbifold(n: int, L: int, cone_orders: Sequence[int]) -> Presentation:
    """Pure orbifold braid group, on the generators a(j,i), b(k,lambda), c(k,nu)."""
    _check_orbifold_params(n, L, cone_orders)
    N = len(cone_orders)
    gens: list[GeneratorId] = []
    for j in range(2, n + 1):
        for i in range(1, j):
            gens.append(aji(j, i))
    for k in range(1, n + 1):
        for lam in range(1, L + 1):
            gens.append(bkl(k, lam))
    for k in range(1, n + 1):
        for nu in range(1, N + 1):
            gens.append(ckv(k, nu))
    rels: list[Relation] = []
    # (1) torsion of the cone loops
    for k in range(1, n + 1):
        for nu, m in enumerate(cone_orders, start=1):
            rels.append(power_rel(ckv(k, nu), m, f"2.6(1) c({k},{nu})"))
    # (2) disjoint supports commute
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                for l in range(k + 1, n + 1):
                    rels.append(comm_rel(aji(j, i), aji(l, k), f"2.6(2) [a({j},{i}),a({l},{k})]"))
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            for l in range(k + 1, n + 1):
                for lam in range(1, L + 1):
                    rels.append(comm_rel(bkl(j, lam), aji(l, k), f"2.6(2) [b({j},{lam}),a({l},{k})]"))
                for nu in range(1, N + 1):
                    rels.append(comm_rel(ckv(j, nu), aji(l, k), f"2.6(2) [c({j},{nu}),a({l},{k})]"))
    # (3) nested supports commute
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                for l in range(k + 1, n + 1):
                    rels.append(comm_rel(aji(l, i), aji(k, j), f"2.6(3) [a({l},{i}),a({k},{j})]"))
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            for l in range(k + 1, n + 1):
                for lam in range(1, L + 1):
                    rels.append(comm_rel(bkl(l, lam), aji(k, j), f"2.6(3) [b({l},{lam}),a({k},{j})]"))
                for nu in range(1, N + 1):
                    rels.append(comm_rel(ckv(l, nu), aji(k, j), f"2.6(3) [c({l},{nu}),a({k},{j})]"))
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            for theta in range(1, L + 1):
                for lam in range(theta + 1, L + 1):
                    rels.append(comm_rel(bkl(l, lam), bkl(k, theta), f"2.6(3) [b({l},{lam}),b({k},{theta})]"))
            for lam in range(1, L + 1):
                for nu in range(1, N + 1):
                    rels.append(comm_rel(ckv(l, nu), bkl(k, lam), f"2.6(3) [c({l},{nu}),b({k},{lam})]"))
            for mu in range(1, N + 1):
                for nu in range(mu + 1, N + 1):
                    rels.append(comm_rel(ckv(l, nu), ckv(k, mu), f"2.6(3) [c({l},{nu}),c({k},{mu})]"))
    # (4) conjugated-support commutations
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                for l in range(k + 1, n + 1):
                    w = W(aji(l, k), aji(l, j), inv(aji(l, k)))
                    rels.append(
                        Relation(concat(w, W(aji(k, i))), concat(W(aji(k, i)), w),
                                 f"2.6(4) [a({l},{k})a({l},{j})a({l},{k})^-1,a({k},{i})]")
                    )
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                w = W(aji(k, j), aji(k, i), inv(aji(k, j)))
                for lam in range(1, L + 1):
                    rels.append(
                        Relation(concat(w, W(bkl(j, lam))), concat(W(bkl(j, lam)), w),
                                 f"2.6(4) [a({k},{j})a({k},{i})a({k},{j})^-1,b({j},{lam})]")
                    )
                for nu in range(1, N + 1):
                    rels.append(
                        Relation(concat(w, W(ckv(j, nu))), concat(W(ckv(j, nu)), w),
                                 f"2.6(4) [a({k},{j})a({k},{i})a({k},{j})^-1,c({j},{nu})]")
                    )
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            for theta in range(1, L + 1):
                for lam in range(theta + 1, L + 1):
                    w = W(aji(k, j), bkl(k, theta), inv(aji(k, j)))
                    rels.append(
                        Relation(concat(w, W(bkl(j, lam))), concat(W(bkl(j, lam)), w),
                                 f"2.6(4) [a({k},{j})b({k},{theta})a({k},{j})^-1,b({j},{lam})]")
                    )
            for mu in range(1, N + 1):
                for nu in range(mu + 1, N + 1):
                    w = W(aji(k, j), ckv(k, mu), inv(aji(k, j)))
                    rels.append(
                        Relation(concat(w, W(ckv(j, nu))), concat(W(ckv(j, nu)), w),
                                 f"2.6(4) [a({k},{j})c({k},{mu})a({k},{j})^-1,c({j},{nu})]")
                    )
    # (5) triple relations
    def triple(x: GeneratorId, y: GeneratorId, z: GeneratorId, tag: str) -> list[Relation]:
        wa, wb, wc = W(x, y, z), W(z, x, y), W(y, z, x)
        return [Relation(wa, wb, tag + " i"), Relation(wb, wc, tag + " ii")]

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                rels.extend(triple(aji(k, j), aji(k, i), aji(j, i), f"2.6(5) a-triple ({i},{j},{k})"))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for lam in range(1, L + 1):
                rels.extend(triple(aji(j, i), bkl(j, lam), bkl(i, lam), f"2.6(5) b-triple ({i},{j},{lam})"))
            for nu in range(1, N + 1):
                rels.extend(triple(aji(j, i), ckv(j, nu), ckv(i, nu), f"2.6(5) c-triple ({i},{j},{nu})"))
    params = {"n": n, "L": L, "N": N}
    for nu, m in enumerate(cone_orders, start=1):
        params[f"m{nu}"] = m
    name = f"pure(n={n},L={L},m={tuple(cone_orders)})"
    return Presentation(name, _params(params), tuple(gens), tuple(rels))


def expand_pure_generator(g: GeneratorId, params: Mapping[str, int]) -> Word:
    """Defining word of a pure generator in the mixed alphabet.

    a(j,i) -> h_{j-1}^-1 .. h_{i+1}^-1 h_i^2 h_{i+1} .. h_{j-1}
    b(k,l) -> h_{k-1}^-1 .. h_1^-1 t_l h_1 .. h_{k-1}
    c(k,v) -> h_{k-1}^-1 .. h_1^-1 u_v h_1 .. h_{k-1}
    """
    n = params["n"] if isinstance(params, dict) else dict(params)["n"]
    d = dict(params)
    if g.family == Family.AJI:
        j, i = g.indices
        if not 1 <= i < j <= n:
            raise ParameterError(f"{g.label} out of range for n={n}")
        suffix = [h(r) for r in range(i + 1, j)]
        return W(*(inv(x) for x in reversed(suffix)), h(i), h(i), *suffix)
    if g.family in (Family.BKL, Family.CKV):
        k, second = g.indices
        if not 1 <= k <= n:
            raise ParameterError(f"{g.label} out of range for n={n}")
        if g.family == Family.BKL:
            if not 1 <= second <= d.get("L", 0):
                raise ParameterError(f"{g.label} out of range for L={d.get('L', 0)}")
            core = t(second)
        else:
            if not 1 <= second <= d.get("N", 0):
                raise ParameterError(f"{g.label} out of range for N={d.get('N', 0)}")
            core = u(second)
        suffix = [h(r) for r in range(1, k)]
        return W(*(inv(x) for x in reversed(suffix)), core, *suffix)
    raise ParameterError(f"{g.label} is not a pure generator")


def expand_pure_word(w: Word, params: Mapping[str, int]) -> Word:
    """Letterwise expansion of a word over pure generators into the mixed alphabet."""
    parts = []
    for letter in w:
        e = expand_pure_generator(letter.gen, params)
        parts.append(e if letter.sign > 0 else e.inverse())
    return concat(*parts) if parts else EPSILON


# --- rewritten presentations with conjugated half-twists ---------------------


def _braid_comm_block(
    gens: Sequence[GeneratorId],
    adjacent: Callable[[GeneratorId, GeneratorId], bool],
    excluded: set[frozenset],
    tag_prefix: str,
) -> list[Relation]:
    rels = []
    for idx, a in enumerate(gens):
        for b in gens[idx + 1:]:
            if frozenset((a, b)) in excluded:
                continue
            if adjacent(a, b):
                rels.append(braid_rel(a, b, f"{tag_prefix} braid {a.label} {b.label}"))
            else:
                rels.append(comm_rel(a, b, f"{tag_prefix} [{a.label},{b.label}]"))
    return rels


def _two_cone_normal_adjacency(n: int):
    hu1, hup = hu(1), hu(n - 1, primed=True)

    def adjacent(a: GeneratorId, b: GeneratorId) -> bool:
        pair = {a, b}
        if pair == {hu1, hup}:
            return n == 3
        for conj, attach in ((hu1, 2), (hup, n - 2)):
            if conj in pair:
                other = (pair - {conj}).pop()
                return other.family == Family.H and other.indices[0] == attach
        return abs(a.indices[0] - b.indices[0]) == 1

    return adjacent


def build_prop32_presentation(n: int, m: int, mprime: int) -> Presentation:
    """Two-cone orbifold braid group on the conjugated-generator alphabet.

    Generators hu1, h_1..h_{n-1}, hu'{n-1}, u, u'.  hu1 is attached to h_2
    exactly as h_1 is; hu'{n-1} to h_{n-2} as h_{n-1} is; the two conjugated
    generators commute for n >= 4 and satisfy the braid relation at n = 3.
    """
    if n < 3:
        raise ParameterError(f"need n >= 3, got {n}")
    if m < 2 or mprime < 2:
        raise ParameterError(f"cone orders must be >= 2, got {(m, mprime)}")
    hu1, hup = hu(1), hu(n - 1, primed=True)
    uu, up = u(1), uprime()
    hs = [h(j) for j in range(1, n)]
    normal = [hu1] + hs + [hup]
    excluded = {frozenset((hu1, hs[0])), frozenset((hup, hs[-1]))}
    rels = _braid_comm_block(normal, _two_cone_normal_adjacency(n), excluded, "3.2(R1)")
    rels.append(
        Relation(alternating_word(W(hs[0]), W(hu1), m), alternating_word(W(hu1), W(hs[0]), m), "3.2(R2) m")
    )
    rels.append(
        Relation(alternating_word(W(hs[-1]), W(hup), mprime), alternating_word(W(hup), W(hs[-1]), mprime), "3.2(R2) m'")
    )
    rels.append(Relation(_sq(W(hs[0], hu1, hs[1])), _sq(W(hs[1], hs[0], hu1)), "3.2(R3) left"))
    rels.append(Relation(_sq(W(hs[-1], hup, hs[-2])), _sq(W(hs[-2], hs[-1], hup)), "3.2(R3) right"))
    rels.append(power_rel(uu, m, "3.2(S1) u^m"))
    rels.append(power_rel(up, mprime, "3.2(S1) u'^m'"))
    rels.append(comm_rel(uu, up, "3.2(S1) [u,u']"))
    for k in range(2, n):
        rels.append(conj_rel(uu, hs[k - 1], W(hs[k - 1]), f"3.2(C1) u h{k}"))
    for j in range(1, n - 1):
        rels.append(conj_rel(up, hs[j - 1], W(hs[j - 1]), f"3.2(C1) u' h{j}"))
    rels.append(conj_rel(uu, hup, W(hup), "3.2(C2) u"))
    rels.append(conj_rel(up, hu1, W(hu1), "3.2(C2) u'"))
    rels.append(conj_rel(uu, hs[0], W(hu1), "3.2(C3) u"))
    rels.append(conj_rel(up, hs[-1], W(hup), "3.2(C3) u'"))
    rels.append(conj_rel(uu, hu1, W(inv(hu1), hs[0], hu1), "3.2(C4) u"))
    rels.append(conj_rel(up, hup, W(inv(hup), hs[-1], hup), "3.2(C4) u'"))
    params = {"n": n, "L": 0, "N": 2, "m1": m, "m2": mprime, "m": m, "m'": mprime}
    return Presentation(
        f"two-cone-split(n={n},m={m},m'={mprime})", _params(params),
        tuple(normal + [uu, up]), tuple(rels),
    )


def _remark34_exponent_words(x: GeneratorId, y: GeneratorId, order: int):
    """Conjugation words for the n=3 replacement family, keyed by parity.

    x plays the conjugated generator, y the plain one; the words are the
    closed forms of y conjugated by increasing powers of the torsion element.
    """
    out = []
    l = order // 2
    odd_range = range(l)
    even_range = range(l) if order % 2 == 0 else range(l + 1)
    for k in odd_range:
        w = concat(alternating_word(W(inv(x)), W(inv(y)), 2 * k), W(x), alternating_word(W(y), W(x), 2 * k))
        out.append((f"odd k={k}", w))
    for k in even_range:
        w = concat(alternating_word(W(inv(x)), W(inv(y)), 2 * k), W(y), alternating_word(W(y), W(x), 2 * k))
        out.append((f"even k'={k}", w))
    return out


def build_remark34_presentation(m: int, mprime: int) -> Presentation:
    """The n = 3 two-cone presentation with the replacement relation family.

    Identical to the n = 3 two-cone presentation except that the two marked
    triangle relations (R3) are replaced by the conjugation-closed family
    (R3'); for m = m' = 2 the family is empty.
    """
    base = build_prop32_presentation(3, m, mprime)
    rels = [r for r in base.relations if "(R3)" not in r.tag]
    hu1, hup = hu(1), hu(2, primed=True)
    h1, h2 = h(1), h(2)
    if not (m == 2 and mprime == 2):
        head = W(h1, hu1)
        for desc, w in _remark34_exponent_words(hup, h2, mprime):
            rels.append(
                Relation(_sq(concat(head, w)), _sq(concat(w, head)), f"3.4(R3') m' {desc}")
            )
        head = W(h2, hup)
        for desc, w in _remark34_exponent_words(hu1, h1, m):
            rels.append(
                Relation(_sq(concat(head, w)), _sq(concat(w, head)), f"3.4(R3') m {desc}")
            )
    return Presentation(
        f"two-cone-split-n3(m={m},m'={mprime})", base.params, base.generators, tuple(rels)
    )


def build_cor35_presentation(n: int, m: int) -> Presentation:
    """One-cone orbifold braid group on the alphabet hu1, h_1..h_{n-1}, u."""
    if n < 2:
        raise ParameterError(f"need n >= 2, got {n}")
    if m < 2:
        raise ParameterError(f"cone order must be >= 2, got {m}")
    hu1, uu = hu(1), u(1)
    hs = [h(j) for j in range(1, n)]
    rels: list[Relation] = []
    if n >= 3:
        def adjacent(a: GeneratorId, b: GeneratorId) -> bool:
            if hu1 in (a, b):
                other = b if a == hu1 else a
                return other.indices[0] == 2
            return abs(a.indices[0] - b.indices[0]) == 1

        rels.extend(_braid_comm_block([hu1] + hs, adjacent, {frozenset((hu1, hs[0]))}, "3.5(R1)"))
    rels.append(
        Relation(alternating_word(W(hs[0]), W(hu1), m), alternating_word(W(hu1), W(hs[0]), m), "3.5(R2)")
    )
    if n >= 3:
        rels.append(Relation(_sq(W(hs[0], hu1, hs[1])), _sq(W(hs[1], hs[0], hu1)), "3.5(R3)"))
    rels.append(power_rel(uu, m, "3.5(S1) u^m"))
    for k in range(2, n):
        rels.append(conj_rel(uu, hs[k - 1], W(hs[k - 1]), f"3.5(C1) u h{k}"))
    rels.append(conj_rel(uu, hs[0], W(hu1), "3.5(C3)"))
    rels.append(conj_rel(uu, hu1, W(inv(hu1), hs[0], hu1), "3.5(C4)"))
    params = {"n": n, "L": 0, "N": 1, "m1": m, "m": m}
    return Presentation(
        f"one-cone-split(n={n},m={m})", _params(params), tuple([hu1] + hs + [uu]), tuple(rels)
    )


def build_prop36_presentation(n: int, m: int) -> Presentation:
    """One cone plus one puncture, on the alphabet h_1..h_{n-1}, hu{n-1}, t, ubar."""
    if n < 3:
        raise ParameterError(f"need n >= 3, got {n}")
    if m < 2:
        raise ParameterError(f"cone order must be >= 2, got {m}")
    hun = hu(n - 1)
    tt, ub = t(1), ubar()
    hs = [h(j) for j in range(1, n)]

    def adjacent(a: GeneratorId, b: GeneratorId) -> bool:
        if hun in (a, b):
            other = b if a == hun else a
            return other.indices[0] == n - 2
        return abs(a.indices[0] - b.indices[0]) == 1

    rels = _braid_comm_block(hs + [hun], adjacent, {frozenset((hun, hs[-1]))}, "3.6(R1)")
    rels.append(Relation(W(tt, hs[0], tt, hs[0]), W(hs[0], tt, hs[0], tt), "3.6(R2) t h1"))
    for j in range(2, n):
        rels.append(comm_rel(tt, hs[j - 1], f"3.6(R2) [t,h{j}]"))
    rels.append(comm_rel(tt, hun, f"3.6(R2) [t,{hun.label}]"))
    rels.append(
        Relation(alternating_word(W(hs[-1]), W(hun), m), alternating_word(W(hun), W(hs[-1]), m), "3.6(R3)")
    )
    rels.append(Relation(_sq(W(hs[-1], hun, hs[-2])), _sq(W(hs[-2], hs[-1], hun)), "3.6(R4)"))
    rels.append(power_rel(ub, m, "3.6(S1)"))
    for j in range(1, n - 1):
        rels.append(conj_rel(ub, hs[j - 1], W(hs[j - 1]), f"3.6(C1) h{j}"))
    rels.append(conj_rel(ub, tt, W(tt), "3.6(C1) t"))
    rels.append(conj_rel(ub, hs[-1], W(hun), "3.6(C2) h"))
    rels.append(conj_rel(ub, hun, W(inv(hun), hs[-1], hun), "3.6(C2) hu"))
    params = {"n": n, "L": 1, "N": 1, "m1": m, "m": m}
    return Presentation(
        f"one-cone-puncture-split(n={n},m={m})", _params(params),
        tuple(hs + [hun, tt, ub]), tuple(rels),
    )


# --- weighted graphs, Artin groups, Coxeter quotients ------------------------


@dataclass(frozen=True)
class WeightedGraph:
    """A finite graph with edge weights >= 3 (or infinity) and marked triples.

    An ordered marked triple (r, s, t) contributes the extra relation
    (v_r v_s v_t)^2 = (v_s v_t v_r)^2; it must span a complete subgraph whose
    edges at v_r both have weight 3.
    """

    vertices: tuple[GeneratorId, ...]
    edges: tuple[tuple[GeneratorId, GeneratorId, int], ...]
    triple_marks: tuple[tuple[GeneratorId, GeneratorId, GeneratorId], ...] = ()

    def __post_init__(self) -> None:
        vs = set(self.vertices)
        seen = set()
        for a, b, w in self.edges:
            if a == b or a not in vs or b not in vs:
                raise ValueError(f"bad edge ({a},{b})")
            if (w != INFINITY and w < 3):
                raise ValueError(f"edge weight must be >= 3 or infinity, got {w}")
            key = frozenset((a, b))
            if key in seen:
                raise ValueError(f"duplicate edge ({a},{b})")
            seen.add(key)
        wmap = self.weight_map
        for r, s, tt in self.triple_marks:
            if len({r, s, tt}) != 3:
                raise ValueError("marked triple must have three distinct vertices")
            for pair in (frozenset((r, s)), frozenset((r, tt)), frozenset((s, tt))):
                if pair not in wmap:
                    raise ValueError("marked triple must span a complete subgraph")
            if wmap[frozenset((r, s))] != 3 or wmap[frozenset((r, tt))] != 3:
                raise ValueError("marked triple needs weight-3 edges at its first vertex")

    @property
    def weight_map(self) -> dict[frozenset, int]:
        return {frozenset((a, b)): w for a, b, w in self.edges}


def artin_from_graph(g: WeightedGraph) -> Presentation:
    """Artin group of a weighted graph, plus one relation per marked triple."""
    rels: list[Relation] = []
    wmap = g.weight_map
    for idx, a in enumerate(g.vertices):
        for b in g.vertices[idx + 1:]:
            w = wmap.get(frozenset((a, b)))
            if w is None:
                rels.append(comm_rel(a, b, f"artin [{a.label},{b.label}]"))
            elif w != INFINITY:
                rels.append(
                    Relation(alternating_word(W(a), W(b), w), alternating_word(W(b), W(a), w),
                             f"artin <{a.label},{b.label}>_{w}")
                )
    for r, s, tt in g.triple_marks:
        rels.append(
            Relation(_sq(W(r, s, tt)), _sq(W(s, tt, r)), f"artin triple ({r.label},{s.label},{tt.label})")
        )
    return Presentation("artin", _params({}), tuple(g.vertices), tuple(rels))


def h_like(g: GeneratorId) -> bool:
    """Filter selecting half-twist style generators (h-family and conjugates)."""
    return g.family in (Family.H, Family.HUCONJ)


def coxeterize(p: Presentation, gen_filter: Callable[[GeneratorId], bool] | None = None) -> Presentation:
    """Add g^2 = 1 for every generator passing the filter (all, by default).

    For the orbifold presentations the natural filter is `h_like`, which
    leaves torsion loops with their existing order relations.
    """
    extra = [
        power_rel(g, 2, f"coxeter {g.label}^2")
        for g in p.generators
        if gen_filter is None or gen_filter(g)
    ]
    return Presentation(p.name + "+squares", p.params, p.generators, p.relations + tuple(extra))


# --- role classification and the normal-subgroup part ------------------------

_ROLE_RE = re.compile(r"\((R\d'?|S\d|C\d)\)")


def relation_role(rel: Relation) -> str | None:
    """R/S/C role parsed from the provenance tag, or None."""
    m = _ROLE_RE.search(rel.tag)
    return m.group(1) if m else None


def quotient_generators(p: Presentation) -> tuple[GeneratorId, ...]:
    return tuple(g for g in p.generators if g.family in (Family.U, Family.UPRIME, Family.UBAR))


def normal_generators(p: Presentation) -> tuple[GeneratorId, ...]:
    return tuple(g for g in p.generators if g.family not in (Family.U, Family.UPRIME, Family.UBAR))


def normal_subgroup_presentation(p: Presentation) -> Presentation:
    """The R-relation part of a split presentation, over the non-torsion generators."""
    roles = [relation_role(r) for r in p.relations]
    if not any(role and role.startswith("C") for role in roles):
        raise ParameterError(f"{p.name!r} has no conjugation relations; cannot split")
    rels = tuple(r for r, role in zip(p.relations, roles) if role and role.startswith("R"))
    return Presentation(p.name + ":normal", p.params, normal_generators(p), rels)


# --- presentation files ------------------------------------------------------
#
#   # optional comment lines
#   params: n=3 m=3 L=0
#   gens: h1 h2 u
#   rel: u^3 = 1 [2.5(1) u]


def presentation_to_text(p: Presentation) -> str:
    lines = [f"# {p.name}"]
    lines.append("params: " + " ".join(f"{k}={v}" for k, v in p.params))
    lines.append("gens: " + " ".join(g.label for g in p.generators))
    for rel in p.relations:
        lines.append(f"rel: {format_word(rel.lhs)} = {format_word(rel.rhs)} [{rel.tag}]")
    return "\n".join(lines) + "\n"


_REL_RE = re.compile(r"rel:\s*(.+?)\s*=\s*(.+?)\s*\[(.*)\]\s*$")


def presentation_from_text(text: str, name: str = "from-file") -> Presentation:
    params: dict[str, int] = {}
    gens: list[GeneratorId] = []
    rels: list[Relation] = []
    alphabet: dict[str, GeneratorId] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("params:"):
            for item in line[len("params:"):].split():
                key, _, value = item.partition("=")
                params[key] = int(value)
        elif line.startswith("gens:"):
            for label in line[len("gens:"):].split():
                g = parse_generator_label(label)
                gens.append(g)
                alphabet[g.label] = g
        elif line.startswith("rel:"):
            m = _REL_RE.match(line)
            if m is None:
                raise ValueError(f"line {lineno}: cannot parse relation {line!r}")
            rels.append(
                Relation(parse_word(m.group(1), alphabet), parse_word(m.group(2), alphabet), m.group(3))
            )
        else:
            raise ValueError(f"line {lineno}: unrecognized line {line!r}")
    return Presentation(name, _params(params), tuple(gens), tuple(rels))


def write_presentation(p: Presentation, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(presentation_to_text(p))


def read_presentation(path) -> Presentation:
    with open(path, "r", encoding="utf-8") as fh:
        return presentation_from_text(fh.read(), name=str(path))
