"""Signed generator letters and freely reduced words.

Everything downstream (presentation builders, the equality prover, generator
assignments, quotient evaluation) speaks one currency: a ``Word`` is an
immutable, freely reduced sequence of signed letters.  Reduction happens
eagerly in every constructor, so two ``Word`` values compare equal exactly
when they are the same reduced word.

Words carry no reference to a presentation; alphabets are validated at use
sites, which lets the same word flow between the source and target of an
assignment.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class AlphabetError(ValueError):
    """A word used a letter that the relevant alphabet does not declare."""


class Family(enum.IntEnum):
    """Generator families, in the global order used for shortlex tie-breaking."""

    H = 0        # strand half-twists h_j
    U = 1        # cone-point loops; u(1) is written plain `u`
    UPRIME = 2   # conjugate cone loop u' (fixes the first n-1 strands)
    UBAR = 3     # conjugate cone loop ubar (fixes the first n-1 strands)
    T = 4        # puncture loops t_lambda
    AJI = 5      # pure two-strand generators a(j,i)
    BKL = 6      # pure strand-around-puncture generators b(k,lambda)
    CKV = 7      # pure strand-around-cone generators c(k,nu)
    HUCONJ = 8   # conjugated half-twists hu{j} and hu'{j}
    NAMED = 9    # free-form generators (weighted-graph vertices)


@dataclass(frozen=True)
class GeneratorId:
    """A generator, identified structurally by family and indices.

    ``label`` is the display / parse form; for every family except NAMED it
    is a function of (family, indices).
    """

    family: Family
    indices: tuple[int, ...]
    label: str

    def sort_key(self) -> tuple:
        return (int(self.family), self.indices, self.label)

    def __repr__(self) -> str:
        return self.label


def h(j: int) -> GeneratorId:
    if j < 1:
        raise ValueError(f"h index must be >= 1, got {j}")
    return GeneratorId(Family.H, (j,), f"h{j}")


def u(nu: int = 1) -> GeneratorId:
    if nu < 1:
        raise ValueError(f"cone index must be >= 1, got {nu}")
    return GeneratorId(Family.U, (nu,), "u" if nu == 1 else f"u{nu}")


def uprime() -> GeneratorId:
    return GeneratorId(Family.UPRIME, (), "u'")


def ubar() -> GeneratorId:
    return GeneratorId(Family.UBAR, (), "ubar")


def t(lam: int = 1) -> GeneratorId:
    if lam < 1:
        raise ValueError(f"puncture index must be >= 1, got {lam}")
    return GeneratorId(Family.T, (lam,), "t" if lam == 1 else f"t{lam}")


def aji(j: int, i: int) -> GeneratorId:
    if not 1 <= i < j:
        raise ValueError(f"a(j,i) needs 1 <= i < j, got ({j},{i})")
    return GeneratorId(Family.AJI, (j, i), f"a({j},{i})")


def bkl(k: int, lam: int) -> GeneratorId:
    if k < 1 or lam < 1:
        raise ValueError(f"b(k,lambda) needs positive indices, got ({k},{lam})")
    return GeneratorId(Family.BKL, (k, lam), f"b({k},{lam})")


def ckv(k: int, nu: int) -> GeneratorId:
    if k < 1 or nu < 1:
        raise ValueError(f"c(k,nu) needs positive indices, got ({k},{nu})")
    return GeneratorId(Family.CKV, (k, nu), f"c({k},{nu})")


def hu(j: int, primed: bool = False) -> GeneratorId:
    """The conjugated half-twist written hu{j} (or hu'{j} for the primed one)."""
    if j < 1:
        raise ValueError(f"hu index must be >= 1, got {j}")
    label = f"hu'{j}" if primed else f"hu{j}"
    return GeneratorId(Family.HUCONJ, (j, 1 if primed else 0), label)


def named(label: str) -> GeneratorId:
    if not label or not re.fullmatch(r"[a-z][a-zA-Z0-9_']*", label):
        raise ValueError(f"bad generator label {label!r}")
    return GeneratorId(Family.NAMED, (), label)


@dataclass(frozen=True)
class Letter:
    gen: GeneratorId
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)

    def sort_key(self) -> tuple:
        return self.gen.sort_key() + ((0 if self.sign > 0 else 1),)

    def __repr__(self) -> str:
        return self.gen.label + ("" if self.sign > 0 else "^-1")


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for letter in letters:
        if stack and stack[-1].gen == letter.gen and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


class Word:
    """A freely reduced word; the empty word is the identity."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = (), *, _reduced: bool = False):
        seq = tuple(letters)
        if not _reduced:
            seq = _reduce(seq)
        object.__setattr__(self, "letters", seq)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("Word is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __pow__(self, k: int) -> "Word":
        if k == 0:
            return EPSILON
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = concat(out, base)
        return out

    def inverse(self) -> "Word":
        return Word((l.inverse() for l in reversed(self.letters)), _reduced=True)

    def generators(self) -> set[GeneratorId]:
        return {l.gen for l in self.letters}

    def __repr__(self) -> str:
        return format_word(self)


EPSILON = Word(())


def free_reduce(letters: Iterable[Letter]) -> Word:
    """Reduce a raw letter sequence to its unique freely reduced word."""
    return Word(letters)


def concat(*words: Word) -> Word:
    out: list[Letter] = []
    for w in words:
        for letter in w.letters:
            if out and out[-1].gen == letter.gen and out[-1].sign == -letter.sign:
                out.pop()
            else:
                out.append(letter)
    return Word(out, _reduced=True)


def invert(w: Word) -> Word:
    return w.inverse()


def alternating_word(a: Word, b: Word, k: int) -> Word:
    """The product a*b*a*b*... with exactly k factors, freely reduced."""
    if k < 0:
        raise ValueError(f"alternating word length must be >= 0, got {k}")
    return concat(*((a if i % 2 == 0 else b) for i in range(k)))


def conjugated(x: Word, by: Word) -> Word:
    """by * x * by^-1."""
    return concat(by, x, by.inverse())


Atom = "Letter | GeneratorId | Word"


def W(*atoms) -> Word:
    """Build a word from a mix of generators, letters and words."""
    out: list[Letter] = []
    for atom in atoms:
        if isinstance(atom, GeneratorId):
            out.append(Letter(atom, 1))
        elif isinstance(atom, Letter):
            out.append(atom)
        elif isinstance(atom, Word):
            out.extend(atom.letters)
        else:
            raise TypeError(f"cannot build word from {atom!r}")
    return Word(out)


def inv(atom) -> "Letter | Word":
    """Inverse of a generator (as a letter), letter, or word."""
    if isinstance(atom, GeneratorId):
        return Letter(atom, -1)
    if isinstance(atom, Letter):
        return atom.inverse()
    if isinstance(atom, Word):
        return atom.inverse()
    raise TypeError(f"cannot invert {atom!r}")


# --- text syntax -----------------------------------------------------------
#
# Words are written with `*` between factors, `^k` for powers and `1` for the
# empty word, e.g.  h1*u*h1*u^-1  or  a(3,1)^-2*c(2,1).

_ATOM_RE = re.compile(r"([abc]\(\d+,\d+\)|[a-z][a-zA-Z0-9_']*|1)(?:\^(-?\d+))?$")


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    parts: list[str] = []
    i = 0
    letters = w.letters
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        power = (j - i) * letters[i].sign
        parts.append(letters[i].gen.label if power == 1 else f"{letters[i].gen.label}^{power}")
        i = j
    return "*".join(parts)


def parse_word(text: str, alphabet: Mapping[str, GeneratorId]) -> Word:
    """Parse the `*`/`^`/`1` syntax against an alphabet of labels."""
    letters: list[Letter] = []
    for factor in text.replace(" ", "").split("*"):
        if not factor:
            raise ValueError(f"empty factor in word {text!r}")
        m = _ATOM_RE.fullmatch(factor)
        if m is None:
            raise ValueError(f"cannot parse word factor {factor!r}")
        label, power = m.group(1), int(m.group(2)) if m.group(2) else 1
        if label == "1":
            continue
        if label not in alphabet:
            raise AlphabetError(f"unknown generator {label!r}")
        gen = alphabet[label]
        sign = 1 if power > 0 else -1
        letters.extend(Letter(gen, sign) for _ in range(abs(power)))
    return Word(letters)


def parse_generator_label(label: str) -> GeneratorId:
    """Reconstruct a GeneratorId from its canonical label."""
    m = re.fullmatch(r"([abc])\((\d+),(\d+)\)", label)
    if m:
        kind, first, second = m.group(1), int(m.group(2)), int(m.group(3))
        return {"a": aji, "b": bkl, "c": ckv}[kind](first, second)
    m = re.fullmatch(r"hu(')?(\d+)", label)
    if m:
        return hu(int(m.group(2)), primed=bool(m.group(1)))
    m = re.fullmatch(r"h(\d+)", label)
    if m:
        return h(int(m.group(1)))
    m = re.fullmatch(r"u(\d*)", label)
    if m:
        return u(int(m.group(1)) if m.group(1) else 1)
    m = re.fullmatch(r"t(\d*)", label)
    if m:
        return t(int(m.group(1)) if m.group(1) else 1)
    if label == "u'":
        return uprime()
    if label == "ubar":
        return ubar()
    return named(label)
