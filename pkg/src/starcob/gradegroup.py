"""Arithmetic in the grading group Z x F_{N+1} and arity obstructions.

Elements carry a central integer component and a freely reduced word in
generators g0..gN.  Loop letters of algebra B are graded (-1, g_i), edge
letters (-1, e); words of algebra A are graded (0, e).  Every nonzero arity-n
operation must multiply gradings up to the central element lambda = (1, e)
raised to n - 2, which pins the coefficient gradings to (2N-2, e) for V0 and
(-2, e) for V_{N+1} and obstructs all other arities: the admissible ones are
n = k(2N-2)+2 on the A side and n = j(N-2)+2 on the B side.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ring import Monomial
from .staralg import AWord, BWord, Word, mul_word


def free_reduce(runs) -> tuple:
    """Merge adjacent runs of the same generator and drop zero exponents.

    >>> free_reduce([(1, 1), (1, -1), (2, 3)])
    ((2, 3),)
    """
    stack: list[list[int]] = []
    for gen, exp in runs:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple((g, e) for g, e in stack)


@dataclass(frozen=True, slots=True)
class GroupElem:
    """An element (z, w) with central integer z and reduced free-group word w.

    >>> GroupElem(-2, ((1, 1),)).render()
    '(-2; g1)'
    """

    z: int
    word: tuple

    def __post_init__(self) -> None:
        if self.word != free_reduce(self.word):
            raise ValueError("word is not freely reduced")

    def render(self) -> str:
        return f"({self.z}; {render_word(self.word)})"

    def to_json(self) -> dict:
        return {"z": self.z, "word": render_word(self.word)}


GP_E = GroupElem(0, ())
GP_LAMBDA = GroupElem(1, ())


def render_word(word: tuple) -> str:
    if not word:
        return "e"
    parts = []
    for gen, exp in word:
        if exp == 1:
            parts.append(f"g{gen}")
        else:
            parts.append(f"g{gen}^{exp}")
    return ".".join(parts)


def gp_mul(x: GroupElem, y: GroupElem) -> GroupElem:
    """Product: central components add, words concatenate and reduce.

    >>> gp_mul(GroupElem(1, ((1, 1),)), GroupElem(0, ((1, -1),)))
    GroupElem(z=1, word=())
    """
    return GroupElem(x.z + y.z, free_reduce(x.word + y.word))


def gp_inv(x: GroupElem) -> GroupElem:
    return GroupElem(-x.z, tuple((g, -e) for g, e in reversed(x.word)))


def gp_pow(x: GroupElem, k: int) -> GroupElem:
    out = GP_E
    base = x if k >= 0 else gp_inv(x)
    for _ in range(abs(k)):
        out = gp_mul(out, base)
    return out


def assign_grading(w: Word) -> GroupElem:
    """Grading of a basis word: the product of letter gradings in written
    order; words of algebra A carry the identity grading.

    >>> n = 3
    >>> assign_grading(BWord("c", 2, "r", 1, n)).render()
    '(-1; g2)'
    >>> assign_grading(BWord("c", 1, "r", 2, n)).render()
    '(-2; g1)'
    """
    if isinstance(w, AWord):
        return GP_E
    acc = GP_E
    for typ, i in reversed(w.letters()):
        if typ == "r":
            acc = gp_mul(acc, GroupElem(-1, ((i, 1),)))
        else:
            acc = gp_mul(acc, GroupElem(-1, ()))
    return acc


def var_group_grading(var: int, n: int) -> GroupElem:
    """Grading of a coefficient variable, central in the free-group factor."""
    if var == 0:
        return GroupElem(2 * n - 2, ())
    if var == n + 1:
        return GroupElem(-2, ())
    raise ValueError(f"variable V{var} carries no grading")


def mono_group_grading(mono: Monomial, n: int) -> GroupElem:
    acc = GP_E
    for var, exp in mono:
        acc = gp_mul(acc, gp_pow(var_group_grading(var, n), exp))
    return acc


def check_multiplicativity(algebra: str, max_arity: int, max_total_len: int, n: int) -> list[dict]:
    """Violations of gr(output) = lambda^(arity-2) * product of input gradings
    over all nonzero binary products and higher-operation windows in range."""
    from .ainfty import _buckets, _mu, passing_windows, valid_higher_arities

    violations: list[dict] = []
    by_init, by_fin = _buckets(algebra, max_total_len, n)

    all_words = [w for i in range(1, n + 1) for w in by_init[i]]
    for a in all_words:
        pool = by_init[a.fin] if algebra == "A" else by_fin[a.init]
        for b in pool:
            if a.ell + b.ell > max_total_len:
                continue
            word = mul_word(a, b)
            if word is None:
                continue
            expect = gp_mul(assign_grading(a), assign_grading(b))
            if assign_grading(word) != expect:
                violations.append(
                    {
                        "algebra": algebra,
                        "arity": 2,
                        "inputs": [a.render(), b.render()],
                        "reason": f"grading {assign_grading(word).render()} != {expect.render()}",
                    }
                )

    for r in valid_higher_arities(algebra, n, max_arity):
        for window in passing_windows(algebra, r, max_total_len, n):
            res = _mu(algebra, list(window))
            if res.value.is_zero():
                continue
            expect = gp_pow(GP_LAMBDA, r - 2)
            for w in window:
                expect = gp_mul(expect, assign_grading(w))
            for mono, word in res.value.monomial_pairs():
                got = gp_mul(mono_group_grading(mono, n), assign_grading(word))
                if got != expect:
                    violations.append(
                        {
                            "algebra": algebra,
                            "arity": r,
                            "inputs": [w.render() for w in window],
                            "reason": f"grading {got.render()} != {expect.render()}",
                        }
                    )
    return violations


def admissible_arities(side: str, big_n: int, n_lo: int, n_hi: int) -> set[int]:
    """Arities in [n_lo, n_hi] at which a nonzero higher operation is not
    obstructed by the grading: n = k(2N-2)+2 on side A, n = j(N-2)+2 on side B
    (k, j >= 1).

    >>> sorted(admissible_arities("A", 3, 6, 6))
    [6]
    >>> sorted(admissible_arities("B", 5, 3, 4))
    []
    """
    if side not in ("A", "B"):
        raise ValueError(f"unknown side {side!r}")
    if n_lo <= 2:
        raise ValueError("need n_lo > 2 (binary products are always admissible)")
    if n_lo > n_hi:
        return set()
    step = 2 * big_n - 2 if side == "A" else big_n - 2
    out = set()
    k = 1
    while step * k + 2 <= n_hi:
        if step * k + 2 >= n_lo:
            out.add(step * k + 2)
        k += 1
    return out


__all__ = [
    "GroupElem",
    "GP_E",
    "GP_LAMBDA",
    "free_reduce",
    "render_word",
    "gp_mul",
    "gp_inv",
    "gp_pow",
    "assign_grading",
    "var_group_grading",
    "mono_group_grading",
    "check_multiplicativity",
    "admissible_arities",
]
