"""Generator assignments and everything built from them.

An `Assignment` maps each generator of a source presentation to a word over a
target presentation; applying it letterwise gives the candidate homomorphism,
and `von_dyck_obligations` lists the equalities that must hold in the target
for the assignment to actually be one.

This module also builds the specific assignment pairs relating the mixed
orbifold presentations to their rewritten forms, the conjugation
automorphisms read off the C-relations of a split presentation, the closed
form for iterated conjugation of a half-twist by the torsion loop, and the
semidirect-product normal form (normal word times torsion exponents).
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentations import (
    Presentation,
    expand_pure_generator,
    normal_subgroup_presentation,
    relation_role,
    quotient_generators,
)
from .words import (
    EPSILON,
    Family,
    GeneratorId,
    Letter,
    W,
    Word,
    alternating_word,
    ckv,
    concat,
    h,
    hu,
    inv,
    invert,
    t,
    u,
    ubar,
    uprime,
)


class UnmappedGeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class Assignment:
    source: Presentation
    target: Presentation
    images: tuple[tuple[GeneratorId, Word], ...]

    def __post_init__(self) -> None:
        mapped = {g for g, _ in self.images}
        missing = set(self.source.generators) - mapped
        if missing:
            raise UnmappedGeneratorError(f"no image for generators {missing}")
        if len(mapped) != len(self.images):
            raise ValueError("duplicate image entries")
        for _, w in self.images:
            self.target.validate_word(w)

    @property
    def image_map(self) -> dict[GeneratorId, Word]:
        return dict(self.images)

    def __repr__(self) -> str:
        return f"<Assignment {self.source.name} -> {self.target.name}>"


def make_assignment(source: Presentation, target: Presentation, images: dict[GeneratorId, Word]) -> Assignment:
    return Assignment(source, target, tuple(sorted(images.items(), key=lambda kv: kv[0].sort_key())))


def identity_assignment(p: Presentation) -> Assignment:
    return make_assignment(p, p, {g: W(g) for g in p.generators})


def apply_assignment(a: Assignment, w: Word) -> Word:
    """Letterwise image of w, freely reduced; inverse letters map to inverse images."""
    images = a.image_map
    parts = []
    for letter in w:
        try:
            img = images[letter.gen]
        except KeyError:
            raise UnmappedGeneratorError(f"no image for {letter.gen!r}") from None
        parts.append(img if letter.sign > 0 else img.inverse())
    return concat(*parts) if parts else EPSILON


def von_dyck_obligations(a: Assignment) -> tuple[tuple[Word, Word, str], ...]:
    """For each source relation lhs = rhs, the target equality its images must satisfy."""
    return tuple(
        (apply_assignment(a, rel.lhs), apply_assignment(a, rel.rhs), rel.tag)
        for rel in a.source.relations
    )


def compose(a: Assignment, b: Assignment) -> Assignment:
    """The assignment g -> b(a(g)); defined when a.target equals b.source."""
    if a.target != b.source:
        raise ValueError("cannot compose: target of first is not source of second")
    return make_assignment(
        a.source, b.target, {g: apply_assignment(b, w) for g, w in a.images}
    )


# --- the assignment pairs for the rewritten presentations ---------------------


def _cone_loop_expansion(n: int, nu: int) -> Word:
    """c(n,nu) as a word in the mixed alphabet: h_{n-1}^-1..h_1^-1 u_nu h_1..h_{n-1}."""
    return expand_pure_generator(ckv(n, nu), {"n": n, "N": max(nu, 2), "L": 0})


def prop32_assignments(A: Presentation, B: Presentation) -> tuple[Assignment, Assignment]:
    """(phi: A -> B, psi: B -> A) for the two-cone rewriting.

    A is the mixed presentation (two cones, no punctures), B the rewritten one.
    """
    n = A.param("n")
    hs = [h(j) for j in range(1, n)]
    hu1, hup, uu, up = hu(1), hu(n - 1, primed=True), u(1), uprime()
    prefix = W(*hs)  # h_1 ... h_{n-1}
    phi_images = {g: W(g) for g in hs}
    phi_images[u(1)] = W(uu)
    phi_images[u(2)] = concat(prefix, W(up), prefix.inverse())
    phi = make_assignment(A, B, phi_images)
    psi_up = _cone_loop_expansion(n, 2)
    psi_images = {g: W(g) for g in hs}
    psi_images[uu] = W(u(1))
    psi_images[up] = psi_up
    psi_images[hu1] = concat(W(u(1)), W(hs[0]), W(inv(u(1))))
    psi_images[hup] = concat(psi_up, W(hs[-1]), psi_up.inverse())
    psi = make_assignment(B, A, psi_images)
    return phi, psi


def cor35_assignments(A: Presentation, B: Presentation) -> tuple[Assignment, Assignment]:
    """(phi, psi) for the one-cone rewriting, any n >= 2."""
    n = A.param("n")
    hs = [h(j) for j in range(1, n)]
    hu1, uu = hu(1), u(1)
    phi_images = {g: W(g) for g in hs}
    phi_images[u(1)] = W(uu)
    phi = make_assignment(A, B, phi_images)
    psi_images = {g: W(g) for g in hs}
    psi_images[uu] = W(u(1))
    psi_images[hu1] = concat(W(u(1)), W(hs[0]), W(inv(u(1))))
    psi = make_assignment(B, A, psi_images)
    return phi, psi


def prop36_assignments(A: Presentation, B: Presentation) -> tuple[Assignment, Assignment]:
    """(phi, psi) for the one-cone-one-puncture rewriting."""
    n = A.param("n")
    hs = [h(j) for j in range(1, n)]
    hun, tt, ub = hu(n - 1), t(1), ubar()
    prefix = W(*hs)
    phi_images = {g: W(g) for g in hs}
    phi_images[t(1)] = W(tt)
    phi_images[u(1)] = concat(prefix, W(ub), prefix.inverse())
    phi = make_assignment(A, B, phi_images)
    psi_ub = _cone_loop_expansion(n, 1)
    psi_images = {g: W(g) for g in hs}
    psi_images[tt] = W(t(1))
    psi_images[ub] = psi_ub
    psi_images[hun] = concat(psi_ub, W(hs[-1]), psi_ub.inverse())
    psi = make_assignment(B, A, psi_images)
    return phi, psi


# --- conjugation automorphisms and the closed form ----------------------------


def conjugation_automorphism(p: Presentation, y: GeneratorId) -> Assignment:
    """The normal-subgroup endomap read off the C-relations y x y^-1 = w of p."""
    normal = normal_subgroup_presentation(p)
    images: dict[GeneratorId, Word] = {}
    for rel in p.relations:
        role = relation_role(rel)
        if not role or not role.startswith("C"):
            continue
        letters = rel.lhs.letters
        if (
            len(letters) == 3
            and letters[0].gen == y
            and letters[0].sign == 1
            and letters[2].gen == y
            and letters[2].sign == -1
            and letters[1].sign == 1
        ):
            images[letters[1].gen] = rel.rhs
    if not images:
        raise ValueError(f"{y!r} has no conjugation relations in {p.name!r}")
    missing = set(normal.generators) - set(images)
    if missing:
        raise ValueError(f"conjugation by {y!r} leaves generators {missing} undetermined")
    return make_assignment(normal, normal, images)


def iterate_assignment(a: Assignment, w: Word, k: int) -> Word:
    for _ in range(k):
        w = apply_assignment(a, w)
    return w


def closed_form_conjugation(k: int, hu_word: Word | None = None, h_word: Word | None = None) -> Word:
    """Closed form of the k-fold torsion conjugate of the half-twist.

    With x the conjugated generator (default hu1) and g the plain one
    (default h1), the word is <x^-1, g^-1>_{k-1} <x, g>_k for odd k and
    <x^-1, g^-1>_{k-1} <g, x>_k for even k.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    x = hu_word if hu_word is not None else W(hu(1))
    g = h_word if h_word is not None else W(h(1))
    head = alternating_word(x.inverse(), g.inverse(), k - 1)
    tail = alternating_word(x, g, k) if k % 2 == 1 else alternating_word(g, x, k)
    return concat(head, tail)


# --- semidirect normal form ----------------------------------------------------


@dataclass(frozen=True)
class SemidirectForm:
    """w = normal_part * prod(y^e) with torsion exponents reduced mod their orders."""

    normal_part: Word
    quotient_gens: tuple[GeneratorId, ...]
    exponents: tuple[int, ...]
    orders: tuple[int, ...]

    @property
    def quotient_word(self) -> Word:
        return concat(*(W(g) ** e for g, e in zip(self.quotient_gens, self.exponents)))

    def recombined(self) -> Word:
        return concat(self.normal_part, self.quotient_word)

    def __repr__(self) -> str:
        exps = " ".join(f"{g.label}^{e}" for g, e in zip(self.quotient_gens, self.exponents))
        return f"{self.normal_part!r} | {exps}"


def torsion_orders(p: Presentation) -> dict[GeneratorId, int]:
    """Orders of the quotient generators, read off the S-role power relations."""
    orders: dict[GeneratorId, int] = {}
    for rel in p.relations:
        role = relation_role(rel)
        if not role or not role.startswith("S") or rel.rhs != EPSILON:
            continue
        letters = rel.lhs.letters
        if letters and all(l == letters[0] for l in letters) and letters[0].sign == 1:
            orders[letters[0].gen] = len(letters)
    return orders


def semidirect_normal_form(p: Presentation, w: Word) -> SemidirectForm:
    """Push all torsion letters of w to the right, conjugating as they pass.

    Scanning left to right with state (normal word, exponent vector q), a
    torsion letter updates q and a normal letter x contributes the image of x
    under the q-fold composite conjugation (first generator's automorphism
    applied outermost).
    """
    p.validate_word(w)
    qgens = quotient_generators(p)
    if not qgens:
        raise ValueError(f"{p.name!r} has no torsion quotient generators")
    orders_map = torsion_orders(p)
    orders = tuple(orders_map[g] for g in qgens)
    autos = {g: conjugation_automorphism(p, g) for g in qgens}
    index = {g: i for i, g in enumerate(qgens)}
    q = [0] * len(qgens)
    parts: list[Word] = []
    for letter in w:
        if letter.gen in index:
            i = index[letter.gen]
            q[i] = (q[i] + letter.sign) % orders[i]
        else:
            img = Word((letter,), _reduced=True)
            for g in reversed(qgens):  # innermost conjugation last in the list
                img = iterate_assignment(autos[g], img, q[index[g]])
            parts.append(img)
    normal = concat(*parts) if parts else EPSILON
    return SemidirectForm(normal, qgens, tuple(q), orders)


def u_exponent(w: Word, m: int) -> int:
    """Signed count of cone-loop letters mod m; kills every other generator."""
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    total = sum(l.sign for l in w if l.gen.family in (Family.U, Family.UBAR))
    return total % m
