"""Central elements of the one-cone orbifold braid group.

theta(n) is the product gamma_n ... gamma_1 of the nested loops
gamma_j = h_{j-1}..h_1 u h_1..h_{j-1}.  This module builds those words, the
pure-generator form of gamma_j, the exponent-sum map witnessing infinite
order, and the divisibility criterion for which powers of theta land in the
rewritten normal subgroup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .homomorphisms import u_exponent
from .presentations import ParameterError
from .words import EPSILON, Family, W, Word, aji, ckv, concat, h, inv, u


def gamma(j: int, n: int, m: int = 2) -> Word:
    """gamma_j = h_{j-1} .. h_1 u h_1 .. h_{j-1}."""
    if not 1 <= j <= n:
        raise ParameterError(f"need 1 <= j <= n, got j={j}, n={n}")
    if m < 2:
        raise ParameterError(f"cone order must be >= 2, got {m}")
    tail = [h(i) for i in range(1, j)]
    return W(*reversed(tail), u(1), *tail)


def theta(n: int, m: int = 2) -> Word:
    """theta_n = gamma_n gamma_{n-1} ... gamma_1, freely reduced."""
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    return concat(*(gamma(j, n, m) for j in range(n, 0, -1)))


def gamma_pure(j: int) -> Word:
    """gamma_j over the pure generators: a(j,j-1) a(j,j-2) .. a(j,1) c(j,1)."""
    if j < 1:
        raise ParameterError(f"need j >= 1, got {j}")
    return W(*(aji(j, i) for i in range(j - 1, 0, -1)), ckv(j, 1))


def theta_pure(n: int) -> Word:
    return concat(*(gamma_pure(j) for j in range(n, 0, -1)))


def pure_degree(w: Word) -> int:
    """Signed count of the a(j,1) letters; the map sending all others to zero."""
    return sum(l.sign for l in w if l.gen.family == Family.AJI and l.gen.indices[1] == 1)


def minimal_power(n: int, m: int) -> int:
    """The least l > 0 with m dividing l*n."""
    return m // math.gcd(m, n)


def theta_power_membership(n: int, m: int, k: int) -> tuple[bool, int]:
    """Whether theta_n^k lies in the rewritten normal subgroup, and the minimal l.

    Membership is the divisibility l | k with l = m / gcd(m, n); the result is
    cross-checked against the torsion exponent of theta_n^k, which must vanish
    exactly in the membership case.
    """
    if n < 2 or m < 2 or k < 0:
        raise ParameterError(f"need n >= 2, m >= 2, k >= 0, got {(n, m, k)}")
    l = minimal_power(n, m)
    member = k % l == 0
    exponent = u_exponent(theta(n, m) ** k, m)
    if exponent != (k * n) % m or member != (exponent == 0):
        raise AssertionError(
            f"membership cross-check failed at (n={n}, m={m}, k={k}): "
            f"exponent {exponent}, expected {(k * n) % m}, member {member}"
        )
    return member, l


def lemma42_normal_word(n: int, m: int) -> Word:
    """The explicit normal-subgroup word equal to theta_n^l.

    The j-th factor is h_{j-1}..h_1 u h_1 u^-1 h_2..h_{j-1} for 2 <= j <= n,
    and the whole product is raised to the minimal power l.
    """
    if n < 2 or m < 2:
        raise ParameterError(f"need n >= 2 and m >= 2, got {(n, m)}")
    l = minimal_power(n, m)
    factors = []
    for j in range(2, n + 1):
        down = [h(i) for i in range(j - 1, 0, -1)]
        up = [h(i) for i in range(2, j)]
        factors.append(W(*down, u(1), h(1), inv(u(1)), *up))
    return concat(*factors) ** l


@dataclass(frozen=True)
class CentralWitness:
    """theta_n together with its gamma factors, for reporting."""

    n: int
    m: int
    theta: Word
    gamma: tuple[Word, ...]

    @classmethod
    def build(cls, n: int, m: int) -> "CentralWitness":
        return cls(n, m, theta(n, m), tuple(gamma(j, n, m) for j in range(1, n + 1)))
