"""Todd-Coxeter coset enumeration over the trivial subgroup.

Felsch-style strategy: every newly defined table entry goes on a deduction
stack, and each deduction is traced through all cyclic rotations of the
relators that start with that letter, closing single gaps immediately and
funnelling contradictions through a union-find coincidence queue.  New cosets
are only defined (first undefined table entry, in scan order) once the
deduction stack is empty, which keeps tables small for the dense relator
sets of Coxeter quotients.

The returned order is the number of live cosets of a complete table; a final
verification pass re-checks closure and every relator cycle before the
result is reported.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .presentations import Presentation
from .quotients import LimitExceededError
from .words import Word

DEFAULT_MAX_COSETS = 10**6


@dataclass(frozen=True)
class CosetTable:
    status: str  # "Complete" | "Overflow"
    order: int | None
    cosets_defined: int

    @property
    def complete(self) -> bool:
        return self.status == "Complete"


class _Enumerator:
    def __init__(self, ngens: int, relators: list[tuple[int, ...]], max_cosets: int):
        self.cols = 2 * ngens
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.cols]
        self.parent = [0]
        self.live = 1
        self.deductions: deque[tuple[int, int]] = deque()
        self.pending: deque[tuple[int, int]] = deque()
        self.by_first: dict[int, list[tuple[int, ...]]] = {}
        seen: set[tuple[int, ...]] = set()
        for rel in relators:
            for base in (rel, tuple(c ^ 1 for c in reversed(rel))):
                for k in range(len(base)):
                    rho = base[k:] + base[:k]
                    if rho in seen:
                        continue
                    seen.add(rho)
                    self.by_first.setdefault(rho[0], []).append(rho)

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def read(self, a: int, c: int) -> int | None:
        v = self.table[a][c]
        if v is None:
            return None
        r = self.find(v)
        if r != v:
            self.table[a][c] = r
        return r

    def set_edge(self, a: int, c: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        ex = self.read(a, c)
        if ex is not None:
            if ex != b:
                self.pending.append((ex, b))
            return
        exb = self.read(b, c ^ 1)
        if exb is not None and exb != a:
            self.pending.append((exb, a))
            return
        self.table[a][c] = b
        self.table[b][c ^ 1] = a
        self.deductions.append((a, c))
        self.deductions.append((b, c ^ 1))

    def process_pending(self) -> None:
        while self.pending:
            x, y = self.pending.popleft()
            x, y = self.find(x), self.find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            self.parent[y] = x
            self.live -= 1
            row = self.table[y]
            for c in range(self.cols):
                d = row[c]
                if d is None:
                    continue
                row[c] = None
                self.set_edge(x, c, self.find(d))

    def trace(self, alpha: int, rho: tuple[int, ...]) -> None:
        f = self.find(alpha)
        start = f
        i = 0
        while i < len(rho):
            nxt = self.read(f, rho[i])
            if nxt is None:
                break
            f = nxt
            i += 1
        if i == len(rho):
            if f != start:
                self.pending.append((f, start))
            return
        b = start
        j = len(rho)
        while j > i + 1:
            prv = self.read(b, rho[j - 1] ^ 1)
            if prv is None:
                break
            b = prv
            j -= 1
        if j == i + 1:
            self.set_edge(f, rho[i], b)

    def drain(self) -> None:
        while self.deductions or self.pending:
            self.process_pending()
            if not self.deductions:
                continue
            alpha, c = self.deductions.pop()
            alpha = self.find(alpha)
            if self.read(alpha, c) is None:
                continue
            for rho in self.by_first.get(c, ()):
                self.trace(alpha, rho)
                if self.pending:
                    self.process_pending()

    def run(self) -> tuple[bool, int]:
        """Returns (complete, order); complete=False on coset overflow."""
        self.drain()
        scan = 0
        while True:
            while scan < len(self.parent) and self.find(scan) != scan:
                scan += 1
            alpha, col = None, None
            for a in range(scan, len(self.parent)):
                if self.find(a) != a:
                    continue
                for c in range(self.cols):
                    if self.read(a, c) is None:
                        alpha, col = a, c
                        break
                if alpha is not None:
                    break
            if alpha is None:
                break
            if len(self.parent) >= self.max_cosets:
                return False, self.live
            beta = len(self.parent)
            self.parent.append(beta)
            self.table.append([None] * self.cols)
            self.live += 1
            self.set_edge(alpha, col, beta)
            self.drain()
        self.verify()
        return True, self.live

    def verify(self) -> None:
        live = [a for a in range(len(self.parent)) if self.find(a) == a]
        for a in live:
            for c in range(self.cols):
                b = self.read(a, c)
                if b is None or self.read(b, c ^ 1) != a:
                    raise AssertionError("coset table failed closure verification")
        for a in live:
            for rhos in self.by_first.values():
                for rho in rhos:
                    cur = a
                    for c in rho:
                        cur = self.read(cur, c)
                    if cur != a:
                        raise AssertionError("coset table failed relator verification")


def _relators(p: Presentation) -> tuple[int, list[tuple[int, ...]]]:
    gens = sorted(p.generators, key=lambda g: g.sort_key())
    index = {g: i for i, g in enumerate(gens)}

    def encode(w: Word) -> list[int]:
        return [(index[l.gen] << 1) | (l.sign < 0) for l in w]

    relators = []
    for rel in p.relations:
        seq = encode(rel.lhs) + [c ^ 1 for c in reversed(encode(rel.rhs))]
        stack: list[int] = []
        for c in seq:
            if stack and stack[-1] == c ^ 1:
                stack.pop()
            else:
                stack.append(c)
        while len(stack) >= 2 and stack[0] == stack[-1] ^ 1:
            stack = stack[1:-1]
        if stack:
            relators.append(tuple(stack))
    return len(gens), relators


def enumerate_cosets(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    if max_cosets < 1:
        raise ValueError(f"max_cosets must be >= 1, got {max_cosets}")
    ngens, relators = _relators(p)
    if ngens == 0:
        return CosetTable("Complete", 1, 1)
    enum = _Enumerator(ngens, relators, max_cosets)
    complete, order = enum.run()
    if complete:
        return CosetTable("Complete", order, len(enum.parent))
    return CosetTable("Overflow", None, len(enum.parent))


def enumerate_order(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    """Order of the finitely presented group, or LimitExceededError on overflow."""
    result = enumerate_cosets(p, max_cosets)
    if not result.complete:
        raise LimitExceededError(
            f"coset enumeration for {p.name!r} exceeded {max_cosets} cosets"
        )
    assert result.order is not None
    return result.order
