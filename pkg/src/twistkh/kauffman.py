"""Kauffman-bracket state sum: an independent Jones polynomial oracle.

For ``X(i, j, k, l)`` the A-smoothing joins ``(i, j)`` and ``(k, l)``: the
over-strand ``l-j`` swept counterclockwise covers the quadrants ``(l, i)`` and
``(j, k)``.  With ``A**2 = -q`` the normalised bracket
``(-A^3)^(-w) <D>`` (loop value ``-A^2 - A^-2``, one loop counted for the
unknot) becomes the unnormalised Jones polynomial in the quantum grading used
by this package; it must equal the graded Euler characteristic of the
unreduced homology.
"""

from __future__ import annotations

from collections import Counter

from .complex import BigradedHomology
from .diagram import PlanarDiagram, crossing_signs

__all__ = ["bracket", "jones", "euler_characteristic", "seed_check"]


def _loops(crossings, state):
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for n, (i, j, k, l) in enumerate(crossings):
        pairs = ((i, j), (k, l)) if not (state >> n) & 1 else ((i, l), (j, k))
        for x, y in pairs:
            parent[find(x)] = find(y)
    return len({find(e) for x in crossings for e in x})


def bracket(d: PlanarDiagram) -> Counter:
    """<D> as a Laurent polynomial in A (exponent -> coefficient)."""
    xs = d.crossings
    delta = Counter({2: -1, -2: -1})
    out: Counter = Counter()
    for state in range(1 << len(xs)):
        b = bin(state).count("1")
        term = Counter({len(xs) - 2 * b: 1})
        for _ in range(_loops(xs, state) if xs else 1):
            term = _mul(term, delta)
        out.update(term)
    return _clean(out)


def _mul(p, r):
    out: Counter = Counter()
    for e1, c1 in p.items():
        for e2, c2 in r.items():
            out[e1 + e2] += c1 * c2
    return out


def _clean(p):
    return Counter({e: c for e, c in p.items() if c})


def jones(d: PlanarDiagram) -> dict[int, int]:
    """Unnormalised Jones polynomial as {q exponent: coefficient}."""
    cp, cm = crossing_signs(d)
    w = cp - cm
    f = _mul(bracket(d), Counter({-3 * w: -1 if w % 2 else 1}))
    out = {}
    for e, c in _clean(f).items():
        if e % 2:
            raise ArithmeticError("odd power of A in a knot bracket")
        m = e // 2
        out[m] = out.get(m, 0) + (-1) ** (m % 2) * c
    return {k: v for k, v in sorted(out.items()) if v}


def euler_characteristic(h: BigradedHomology) -> dict[int, int]:
    """Graded Euler characteristic sum (-1)^h rank q^q (free part)."""
    out: dict[int, int] = {}
    for (hh, q), (free, _) in h.items():
        out[q] = out.get(q, 0) + (-1) ** (hh % 2) * free
    return {k: v for k, v in sorted(out.items()) if v}


def seed_check(d: PlanarDiagram, unreduced: BigradedHomology) -> bool:
    return euler_characteristic(unreduced) == jones(d)
