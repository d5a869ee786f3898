"""Sparse polynomial arithmetic over GF(2) in the variables V0, V1, ..., V_{N+1}.

A monomial is a sorted tuple of (variable index, exponent) pairs with no zero
exponents; the empty tuple is the constant monomial 1.  A polynomial is a
frozenset of monomials: over GF(2) every coefficient is 0 or 1, so addition is
symmetric difference and no coefficient bookkeeping is needed.

>>> poly_str(poly_add(poly_var(0), poly_var(0)))
'0'
>>> poly_str(poly_mul(poly_var(0, 2), poly_var(4)))
'V0^2*V4'
"""
from __future__ import annotations

from typing import Iterable

Monomial = tuple  # tuple[tuple[int, int], ...]
Poly = frozenset  # frozenset[Monomial]

MONO_ONE: Monomial = ()
POLY_ZERO: Poly = frozenset()
POLY_ONE: Poly = frozenset({MONO_ONE})


def mono(pairs: Iterable[tuple[int, int]]) -> Monomial:
    """Build a monomial from (variable, exponent) pairs, merging repeats.

    >>> mono([(4, 1), (0, 2)])
    ((0, 2), (4, 1))
    """
    acc: dict[int, int] = {}
    for var, exp in pairs:
        if var < 0 or exp < 0:
            raise ValueError("variable indices and exponents must be nonnegative")
        if exp:
            acc[var] = acc.get(var, 0) + exp
    return tuple(sorted(acc.items()))


def mono_var(var: int, exp: int = 1) -> Monomial:
    return mono([(var, exp)])


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return mono(list(a) + list(b))


def mono_exp(m: Monomial, var: int) -> int:
    for v, e in m:
        if v == var:
            return e
    return 0


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_vars(m: Monomial) -> frozenset:
    return frozenset(v for v, _ in m)


def poly_var(var: int, exp: int = 1) -> Poly:
    return frozenset({mono_var(var, exp)})


def poly_from_monos(monos: Iterable[Monomial]) -> Poly:
    """Sum of monomials over GF(2): repeated monomials cancel in pairs."""
    out: set = set()
    for m in monos:
        out ^= {m}
    return frozenset(out)


def poly_add(p: Poly, q: Poly) -> Poly:
    return p ^ q


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: set = set()
    for a in p:
        for b in q:
            out ^= {mono_mul(a, b)}
    return frozenset(out)


def poly_is_zero(p: Poly) -> bool:
    return not p


def poly_vars(p: Poly) -> frozenset:
    out: set = set()
    for m in p:
        out |= mono_vars(m)
    return frozenset(out)


def mono_str(m: Monomial) -> str:
    """Canonical rendering: ascending variables, '^' exponents, '*' factors.

    >>> mono_str(mono([(0, 2), (4, 1)]))
    'V0^2*V4'
    >>> mono_str(MONO_ONE)
    '1'
    """
    if not m:
        return "1"
    parts = []
    for var, exp in m:
        parts.append(f"V{var}" if exp == 1 else f"V{var}^{exp}")
    return "*".join(parts)


def poly_str(p: Poly) -> str:
    """Canonical rendering with terms sorted lexicographically.

    >>> poly_str(poly_add(poly_var(1), POLY_ONE))
    '1 + V1'
    >>> poly_str(POLY_ZERO)
    '0'
    """
    if not p:
        return "0"
    return " + ".join(sorted(mono_str(m) for m in p))


__all__ = [
    "Monomial",
    "Poly",
    "MONO_ONE",
    "POLY_ZERO",
    "POLY_ONE",
    "mono",
    "mono_var",
    "mono_mul",
    "mono_exp",
    "mono_degree",
    "mono_vars",
    "poly_var",
    "poly_from_monos",
    "poly_add",
    "poly_mul",
    "poly_is_zero",
    "poly_vars",
    "mono_str",
    "poly_str",
]
