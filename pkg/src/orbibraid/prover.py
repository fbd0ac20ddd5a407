"""Bounded equality search for words modulo a presentation's relations.

`prove_equal` runs a bidirectional breadth-first search over freely reduced
words: one frontier grows from each operand, successors come from applying a
relation at a position, and the two frontiers meet in the middle.  A `Proved`
answer always carries a replayable chain; `Unknown` means the budget ran out
and says nothing about inequality (quotient separation is the tool for that).

Rewrite moves.  Every relation lhs = rhs is compiled to the relator
lhs*rhs^-1, and every split p*q of every cyclic rotation of the relator and
its inverse yields a rule p -> q^-1.  This contains the four obvious moves
(lhs -> rhs, rhs -> lhs and their inverses) and in addition the conjugated
variants, e.g. from x*w = w*x it derives x^-1*w -> w*x^-1 in one step, which
plain two-sided replacement cannot reach.  Patterns are always nonempty, so
word length changes only through relation application, never through free
insertion.

Words are encoded as bytes (one letter per byte, sign in the low bit) so the
inner loop runs on C-level slicing and hashing.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .presentations import Presentation
from .words import GeneratorId, Letter, Word

DEFAULT_MAX_NODES = 10**6
DEFAULT_SLACK = 8


class BudgetError(ValueError):
    """A degenerate prover budget."""


def default_max_nodes() -> int:
    return int(os.environ.get("ORBIBRAID_MAX_NODES", DEFAULT_MAX_NODES))


def default_slack() -> int:
    return int(os.environ.get("ORBIBRAID_SLACK", DEFAULT_SLACK))


@dataclass(frozen=True)
class ProverBudget:
    """Search limits: node count, frontier word length, deterministic order.

    If max_word_length is None it is computed per call as
    max(|lhs|, |rhs|) + slack.
    """

    max_nodes: int = 0  # 0: use the environment default
    max_word_length: int | None = None
    slack: int = -1  # -1: use the environment default
    deterministic_order: bool = True

    def effective_max_nodes(self) -> int:
        n = self.max_nodes if self.max_nodes > 0 else default_max_nodes()
        if n < 1:
            raise BudgetError(f"max_nodes must be >= 1, got {n}")
        return n

    def effective_cap(self, operand_max: int) -> int:
        if self.max_word_length is not None:
            if self.max_word_length < operand_max:
                raise BudgetError(
                    f"max_word_length {self.max_word_length} below operand length {operand_max}"
                )
            return self.max_word_length
        slack = self.slack if self.slack >= 0 else default_slack()
        return operand_max + slack


@dataclass(frozen=True)
class ChainStep:
    """One rewrite: rule (tag, direction) applied at pos, yielding `word`.

    A step with reversed=True was discovered from the goal side: applying the
    rule at pos to `word` gives the previous word of the chain.
    """

    pos: int
    tag: str
    direction: str
    reversed: bool
    word: Word


@dataclass(frozen=True)
class ProofResult:
    status: str  # "Proved" | "Unknown"
    chain: tuple[ChainStep, ...] | None
    nodes_expanded: int
    max_frontier_word_length: int

    @property
    def proved(self) -> bool:
        return self.status == "Proved"


# --- compilation -------------------------------------------------------------


class _Codec:
    __slots__ = ("gens", "index")

    def __init__(self, gens: Sequence[GeneratorId]):
        self.gens = tuple(sorted(gens, key=lambda g: g.sort_key()))
        if 2 * len(self.gens) > 255:
            raise ValueError("alphabet too large for byte encoding")
        self.index = {g: i for i, g in enumerate(self.gens)}

    def encode(self, w: Word) -> bytes:
        try:
            return bytes((self.index[l.gen] << 1) | (l.sign < 0) for l in w)
        except KeyError as exc:
            from .words import AlphabetError

            raise AlphabetError(f"word uses generator {exc.args[0]!r} outside the presentation") from None

    def decode(self, b: bytes) -> Word:
        return Word((Letter(self.gens[c >> 1], -1 if c & 1 else 1) for c in b), _reduced=True)


def _reduce_bytes(seq: Iterable[int]) -> bytes:
    stack = bytearray()
    for c in seq:
        if stack and stack[-1] == c ^ 1:
            stack.pop()
        else:
            stack.append(c)
    return bytes(stack)


def _invert_bytes(b: bytes) -> bytes:
    return bytes(c ^ 1 for c in reversed(b))


@dataclass(frozen=True)
class _Rule:
    pattern: bytes
    image: bytes
    tag: str
    direction: str


# Relators up to this length contribute every rotation-split rule; longer ones
# (typically staged multi-letter lemmas, only ever applied whole) contribute
# just the four two-sided replacements.
ROTATION_CAP = 16


class _Compiled:
    __slots__ = ("codec", "rules", "trie", "by_key")

    def __init__(self, p: Presentation):
        self.codec = _Codec(p.generators)
        rules: list[_Rule] = []
        seen: dict[tuple[bytes, bytes], int] = {}

        def add(pattern: bytes, image: bytes, tag: str, direction: str) -> None:
            if not pattern:
                return
            key = (pattern, image)
            if key in seen:
                return
            seen[key] = len(rules)
            rules.append(_Rule(pattern, image, tag, direction))

        for rel in p.relations:
            wl, wr = self.codec.encode(rel.lhs), self.codec.encode(rel.rhs)
            relator = _reduce_bytes(wl + _invert_bytes(wr))
            while len(relator) >= 2 and relator[0] == relator[-1] ^ 1:
                relator = relator[1:-1]
            if not relator:
                continue
            if len(relator) <= ROTATION_CAP:
                for sign, base in (("+", relator), ("-", _invert_bytes(relator))):
                    n = len(base)
                    for rot in range(n):
                        rho = base[rot:] + base[:rot]
                        for cut in range(1, n + 1):
                            add(rho[:cut], _invert_bytes(rho[cut:]), rel.tag, f"{sign}r{rot}c{cut}")
            else:
                add(wl, wr, rel.tag, "lr")
                add(wr, wl, rel.tag, "rl")
                add(_invert_bytes(wl), _invert_bytes(wr), rel.tag, "lr-inv")
                add(_invert_bytes(wr), _invert_bytes(wl), rel.tag, "rl-inv")
        self.rules = tuple(rules)
        trie: dict = {}
        for idx, rule in enumerate(rules):
            node = trie
            for c in rule.pattern:
                node = node.setdefault(c, {})
            node.setdefault(-1, []).append(idx)
        self.trie = trie
        self.by_key = {(r.tag, r.direction): r for r in rules}


@lru_cache(maxsize=128)
def _compiled(p: Presentation) -> _Compiled:
    return _Compiled(p)


# --- the search ---------------------------------------------------------------


def _splice(w: bytes, pos: int, end: int, image: bytes) -> bytes:
    """reduce(w[:pos] + image + w[end:]) for reduced inputs, touching only the seams."""
    mid = bytearray(w[:pos])
    for c in image:
        if mid and mid[-1] == c ^ 1:
            mid.pop()
        else:
            mid.append(c)
    n = len(w)
    while mid and end < n and mid[-1] == w[end] ^ 1:
        mid.pop()
        end += 1
    return bytes(mid) + w[end:]


def _successors(w: bytes, comp: _Compiled, cap: int):
    """All (successor, rule_idx, pos) with |successor| <= cap, in deterministic order."""
    rules = comp.rules
    trie = comp.trie
    n = len(w)
    for pos in range(n):
        node = trie.get(w[pos])
        j = pos + 1
        while node is not None:
            hits = node.get(-1)
            if hits:
                for idx in hits:
                    s = _splice(w, pos, j, rules[idx].image)
                    if len(s) <= cap:
                        yield s, idx, pos
            if j >= n:
                break
            node = node.get(w[j])
            j += 1


def prove_equal(
    p: Presentation, a: Word, b: Word, budget: ProverBudget | None = None
) -> ProofResult:
    """Search for a replayable rewriting chain from a to b modulo p's relations."""
    budget = budget or ProverBudget()
    p.validate_word(a)
    p.validate_word(b)
    comp = _compiled(p)
    wa, wb = comp.codec.encode(a), comp.codec.encode(b)
    max_nodes = budget.effective_max_nodes()
    cap = budget.effective_cap(max(len(wa), len(wb)))
    if wa == wb:
        return ProofResult("Proved", (), 0, max(len(wa), len(wb)))

    # parent maps: word -> (parent word, rule index, position); roots map to None
    visited: tuple[dict, dict] = ({wa: None}, {wb: None})
    frontiers: list[list[bytes]] = [[wa], [wb]]
    nodes = 0
    max_len = max(len(wa), len(wb))
    meet: bytes | None = None
    rules = comp.rules
    trie = comp.trie

    while frontiers[0] and frontiers[1] and meet is None:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        layer = frontiers[side]
        if budget.deterministic_order:
            layer.sort(key=lambda w: (len(w), w))
        mine, other = visited[side], visited[1 - side]
        nxt: list[bytes] = []
        for w in layer:
            if nodes >= max_nodes:
                return ProofResult("Unknown", None, nodes, max_len)
            nodes += 1
            n = len(w)
            for pos in range(n):
                node = trie.get(w[pos])
                j = pos + 1
                while node is not None:
                    hits = node.get(-1)
                    if hits:
                        for idx in hits:
                            s = _splice(w, pos, j, rules[idx].image)
                            if len(s) > cap or s in mine:
                                continue
                            mine[s] = (w, idx, pos)
                            if len(s) > max_len:
                                max_len = len(s)
                            if s in other:
                                meet = s
                                break
                            nxt.append(s)
                        if meet is not None:
                            break
                    if j >= n:
                        break
                    node = node.get(w[j])
                    j += 1
                if meet is not None:
                    break
            if meet is not None:
                break
        frontiers[side] = nxt

    if meet is None:
        return ProofResult("Unknown", None, nodes, max_len)

    chain = _assemble_chain(comp, visited, wa, wb, meet)
    result = ProofResult("Proved", chain, nodes, max_len)
    if not replay_chain(p, a, b, chain):  # pragma: no cover - internal consistency
        raise RuntimeError("internal error: proof chain failed to replay")
    return result


def _assemble_chain(comp: _Compiled, visited, wa: bytes, wb: bytes, meet: bytes):
    rules = comp.rules
    decode = comp.codec.decode
    steps: list[ChainStep] = []
    # forward half: wa -> meet
    edges = []
    cur = meet
    while visited[0][cur] is not None:
        parent, idx, pos = visited[0][cur]
        edges.append((pos, idx, cur))
        cur = parent
    for pos, idx, word in reversed(edges):
        rule = rules[idx]
        steps.append(ChainStep(pos, rule.tag, rule.direction, False, decode(word)))
    # backward half: meet -> wb, edges were discovered from the wb side
    cur = meet
    while visited[1][cur] is not None:
        parent, idx, pos = visited[1][cur]
        rule = rules[idx]
        steps.append(ChainStep(pos, rule.tag, rule.direction, True, decode(parent)))
        cur = parent
    return tuple(steps)


def _apply_rule(w: bytes, rule: _Rule, pos: int) -> bytes | None:
    if not w.startswith(rule.pattern, pos):
        return None
    return _splice(w, pos, pos + len(rule.pattern), rule.image)


def replay_chain(p: Presentation, a: Word, b: Word, chain: Sequence[ChainStep]) -> bool:
    """Re-execute a chain step by step; True iff it transforms a into b exactly."""
    comp = _compiled(p)
    cur = comp.codec.encode(a)
    for step in chain:
        rule = comp.by_key.get((step.tag, step.direction))
        if rule is None:
            return False
        target = comp.codec.encode(step.word)
        if step.reversed:
            if _apply_rule(target, rule, step.pos) != cur:
                return False
        else:
            if _apply_rule(cur, rule, step.pos) != target:
                return False
        cur = target
    return cur == comp.codec.encode(b)


def reversed_chain(chain: Sequence[ChainStep], a: Word) -> tuple[ChainStep, ...]:
    """The chain proving b = a from one proving a = b (flip each edge)."""
    out: list[ChainStep] = []
    words = [a] + [s.word for s in chain]
    for i in range(len(chain) - 1, -1, -1):
        s = chain[i]
        out.append(ChainStep(s.pos, s.tag, s.direction, not s.reversed, words[i]))
    return tuple(out)


# --- batch verification --------------------------------------------------------


@dataclass(frozen=True)
class ObligationResult:
    tag: str
    result: ProofResult

    @property
    def proved(self) -> bool:
        return self.result.proved


@dataclass(frozen=True)
class ObligationReport:
    entries: tuple[ObligationResult, ...]

    @property
    def passed(self) -> bool:
        return all(e.proved for e in self.entries)

    def __repr__(self) -> str:
        good = sum(e.proved for e in self.entries)
        return f"<ObligationReport {good}/{len(self.entries)} proved>"


def verify_obligations(
    p: Presentation,
    obligations: Iterable[tuple[Word, Word, str]],
    budget: ProverBudget | None = None,
) -> ObligationReport:
    """Prove each (lhs, rhs, tag); every Proved chain is replayed independently."""
    entries = []
    for lhs, rhs, tag in obligations:
        result = prove_equal(p, lhs, rhs, budget)
        if result.proved and not replay_chain(p, lhs, rhs, result.chain):
            raise RuntimeError(f"chain for {tag!r} failed independent replay")
        entries.append(ObligationResult(tag, result))
    return ObligationReport(tuple(entries))


def prove_via_waypoints(
    p: Presentation, waypoints: Sequence[Word], budget: ProverBudget | None = None
) -> ProofResult:
    """Prove waypoints[0] = waypoints[-1] by chaining proofs of adjacent hops."""
    if len(waypoints) < 2:
        raise ValueError("need at least two waypoints")
    steps: list[ChainStep] = []
    nodes = 0
    max_len = 0
    for x, y in zip(waypoints, waypoints[1:]):
        res = prove_equal(p, x, y, budget)
        if not res.proved:
            return ProofResult("Unknown", None, nodes + res.nodes_expanded, max(max_len, res.max_frontier_word_length))
        steps.extend(res.chain)
        nodes += res.nodes_expanded
        max_len = max(max_len, res.max_frontier_word_length)
    chain = tuple(steps)
    if not replay_chain(p, waypoints[0], waypoints[-1], chain):  # pragma: no cover
        raise RuntimeError("internal error: waypoint chain failed to replay")
    return ProofResult("Proved", chain, nodes, max_len)
