"""Dual tensor strings, their bar/cobar differentials, and the homotopy data.

A tensor string over one algebra is a chained tuple of duals of non-idempotent
basis words.  The cobar differential splits one factor into a product of two;
the bar differential merges two adjacent factors; cobar_mul concatenates
strings when the chaining invariant holds across the seam.

The letterwise dictionary (loop letters to loop letters, edge letters to edge
letters) induces a map phi from strings over one algebra to the other algebra
by multiplying the images of the factors in reverse order, and a reverse map
psi sending a basis word to the string of duals of its letters.  phi kills any
string with a factor of length > 1, phi composed with psi is the identity, and
homotopy_h certifies that psi composed with phi is homotopic to the identity:
delta H + H delta = id + psi phi on every chained string.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .staralg import (
    AlgElem,
    AWord,
    BWord,
    Word,
    grading,
    letter,
    mul_word,
    word_sort_key,
    words_from,
)
from .ainfty import _split_a_word, _split_b_word


def _other(algebra: str) -> str:
    return "B" if algebra == "A" else "A"


def chain_ok(algebra: str, prev: Word, nxt: Word) -> bool:
    """Whether `nxt` may follow `prev` in a tensor string over the algebra."""
    if algebra == "A":
        return prev.fin == nxt.init
    return prev.init == nxt.fin


def dict_image(w: Word) -> Word:
    """The letterwise dictionary on single-letter words (loops to loops,
    edges to edges, same node), valued in the other algebra."""
    if w.ell != 1:
        raise ValueError("the dictionary acts on single letters")
    if isinstance(w, AWord):
        return letter("B", "r" if w.kind == "u" else "s", w.start, w.n)
    return letter("A", "u" if w.first == "r" else "s", w.start, w.n)


def _dual_factor_str(w: Word) -> str:
    if w.ell == 1:
        if isinstance(w, AWord):
            return ("U" if w.kind == "u" else "s") + f"{w.start}*"
        return f"{w.first}{w.start}*"
    if isinstance(w, AWord):
        if w.kind == "u":
            return f"(U{w.start}^{w.length})*"
        from .staralg import _advance

        body = "".join(f"s{_advance(w.start, k, w.n)}" for k in range(w.length))
        return f"({body})*"
    body = "".join(f"{t}{i}" for t, i in w.letters())
    return f"({body})*"


@dataclass(frozen=True, slots=True)
class TString:
    """A chained tensor string of duals of non-idempotent basis words.

    >>> n = 3
    >>> TString((AWord("u", 1, 1, n), AWord("s", 1, 2, n))).render()
    'U1*.(s1s2)*'
    """

    factors: tuple

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("tensor strings have at least one factor")
        alg = self.factors[0].algebra
        n = self.factors[0].n
        for w in self.factors:
            if w.algebra != alg or w.n != n:
                raise ValueError("mixed factors in a tensor string")
            if w.is_idempotent():
                raise ValueError("idempotent factors are excluded")
        for k in range(len(self.factors) - 1):
            if not chain_ok(alg, self.factors[k], self.factors[k + 1]):
                raise ValueError(
                    f"factors {self.factors[k].render()} and "
                    f"{self.factors[k + 1].render()} are not chained"
                )

    @property
    def algebra(self) -> str:
        return self.factors[0].algebra

    @property
    def n(self) -> int:
        return self.factors[0].n

    @property
    def total_ell(self) -> int:
        return sum(w.ell for w in self.factors)

    @property
    def m_degree(self) -> int:
        """Maslov degree of the string: each dual factor contributes -m-1."""
        return sum(-grading(w).m - 1 for w in self.factors)

    def render(self) -> str:
        return ".".join(_dual_factor_str(w) for w in self.factors)

    def render_with_block(self) -> str:
        """Render with the leading block separated by '|'."""
        n_block = _block_length(self)
        parts = [_dual_factor_str(w) for w in self.factors]
        return ".".join(parts[:n_block]) + "|" + ".".join(parts[n_block:])


def tstring_sort_key(ts: TString) -> tuple:
    return (ts.total_ell, len(ts.factors), tuple(word_sort_key(w) for w in ts.factors))


class CobElem:
    """A GF(2) combination of tensor strings over one algebra."""

    __slots__ = ("algebra", "n", "strings")

    def __init__(self, algebra: str, n: int, strings: Optional[frozenset] = None):
        self.algebra = algebra
        self.n = n
        self.strings: frozenset = frozenset() if strings is None else frozenset(strings)
        for ts in self.strings:
            if ts.algebra != algebra or ts.n != n:
                raise ValueError("string does not belong to this complex")

    @classmethod
    def zero(cls, algebra: str, n: int) -> "CobElem":
        return cls(algebra, n)

    @classmethod
    def from_string(cls, ts: TString) -> "CobElem":
        return cls(ts.algebra, ts.n, frozenset({ts}))

    @classmethod
    def from_factors(cls, factors: tuple) -> "CobElem":
        return cls.from_string(TString(tuple(factors)))

    def is_zero(self) -> bool:
        return not self.strings

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CobElem):
            return NotImplemented
        return (self.algebra, self.n, self.strings) == (other.algebra, other.n, other.strings)

    def __hash__(self) -> int:
        return hash((self.algebra, self.n, self.strings))

    def __add__(self, other: "CobElem") -> "CobElem":
        if (self.algebra, self.n) != (other.algebra, other.n):
            raise ValueError("cannot add strings over different algebras")
        return CobElem(self.algebra, self.n, self.strings ^ other.strings)

    def sorted_strings(self) -> list[TString]:
        return sorted(self.strings, key=tstring_sort_key)

    def render(self) -> str:
        if not self.strings:
            return "0"
        return " + ".join(ts.render() for ts in self.sorted_strings())

    def __repr__(self) -> str:
        return f"CobElem({self.algebra!r}, {self.n}, {self.render()!r})"


def _as_cob(x: Union[CobElem, TString]) -> CobElem:
    if isinstance(x, TString):
        return CobElem.from_string(x)
    return x


def _word_splits(w: Word) -> list[tuple[Word, Word]]:
    out = []
    for k in range(1, w.ell):
        split = _split_a_word(w, k) if isinstance(w, AWord) else _split_b_word(w, k)
        if split is not None:
            out.append(split)
    return out


def cobar_diff(x: Union[CobElem, TString]) -> CobElem:
    """Split one factor into a product of two non-idempotent duals.

    >>> n = 3
    >>> cobar_diff(TString((AWord("s", 1, 2, n),))).render()
    's1*.s2*'
    >>> cobar_diff(TString((AWord("u", 1, 1, n),))).render()
    '0'
    """
    x = _as_cob(x)
    out = CobElem.zero(x.algebra, x.n)
    for ts in x.strings:
        for k, w in enumerate(ts.factors):
            for c, d in _word_splits(w):
                out = out + CobElem.from_factors(ts.factors[:k] + (c, d) + ts.factors[k + 1 :])
    return out


def bar_diff(x: Union[CobElem, TString]) -> CobElem:
    """Merge two adjacent factors under the word product."""
    x = _as_cob(x)
    out = CobElem.zero(x.algebra, x.n)
    for ts in x.strings:
        for k in range(len(ts.factors) - 1):
            merged = mul_word(ts.factors[k], ts.factors[k + 1])
            if merged is not None:
                out = out + CobElem.from_factors(ts.factors[:k] + (merged,) + ts.factors[k + 2 :])
    return out


def cobar_mul(f: Union[CobElem, TString], g: Union[CobElem, TString]) -> CobElem:
    """Concatenation product; zero when the seam is not chained.

    >>> n = 3
    >>> cobar_mul(TString((AWord("u", 1, 1, n),)), TString((AWord("s", 1, 1, n),))).render()
    'U1*.s1*'
    """
    f, g = _as_cob(f), _as_cob(g)
    if (f.algebra, f.n) != (g.algebra, g.n):
        raise ValueError("cannot multiply strings over different algebras")
    out = CobElem.zero(f.algebra, f.n)
    for s in f.strings:
        for t in g.strings:
            if chain_ok(f.algebra, s.factors[-1], t.factors[0]):
                out = out + CobElem.from_factors(s.factors + t.factors)
    return out


def phi(x: Union[CobElem, TString]) -> AlgElem:
    """Fold a string into the other algebra, multiplying factor images in
    reverse order; strings with a factor of length > 1 map to zero.

    >>> n = 3
    >>> phi(TString((AWord("u", 1, 1, n), AWord("s", 1, 1, n)))).render()
    'r1.s1'
    """
    x = _as_cob(x)
    target = _other(x.algebra)
    out = AlgElem.zero(target, x.n)
    for ts in x.strings:
        if any(w.ell != 1 for w in ts.factors):
            continue
        acc: Optional[Word] = dict_image(ts.factors[-1])
        for w in reversed(ts.factors[:-1]):
            acc = mul_word(acc, dict_image(w))
            if acc is None:
                break
        if acc is not None:
            out = out + AlgElem.from_word(acc)
    return out


def _word_letters(w: Word) -> list[Word]:
    """Single-letter factors of a word, in written (composition) order."""
    if isinstance(w, AWord):
        if w.kind == "u":
            return [AWord("u", w.start, 1, w.n)] * w.length
        from .staralg import _advance

        return [AWord("s", _advance(w.start, k, w.n), 1, w.n) for k in range(w.length)]
    return [BWord("c", i, t, 1, w.n) for t, i in reversed(w.letters())]


def psi(b: Union[AlgElem, Word]) -> CobElem:
    """Dual string of a basis word: duals of its letters, factor order
    reversed against the written order, valued over the other algebra.

    >>> n = 3
    >>> psi(BWord("c", 1, "r", 2, n)).render()
    'U1*.s1*'
    """
    if not isinstance(b, AlgElem):
        b = AlgElem.from_word(b)
    out = CobElem.zero(_other(b.algebra), b.n)
    for word, coeff in b.terms.items():
        if word.is_idempotent():
            raise ValueError("psi is undefined on idempotents")
        for mono in coeff:
            if mono != ():
                raise ValueError("psi acts on GF(2) combinations of words")
            factors = tuple(dict_image(l) for l in reversed(_word_letters(word)))
            out = out + CobElem.from_factors(factors)
    return out


def _block_length(ts: TString) -> int:
    """Length of the maximal leading block: single-letter factors whose
    consecutive images compose to nonzero products in the other algebra."""
    f = ts.factors
    if f[0].ell != 1:
        return 0
    n_block = 1
    while n_block < len(f):
        w = f[n_block]
        if w.ell != 1 or mul_word(dict_image(w), dict_image(f[n_block - 1])) is None:
            break
        n_block += 1
    return n_block


def homotopy_h(x: Union[CobElem, TString], fault: Optional[tuple] = None) -> CobElem:
    """Merge the last leading-block factor into the first tail factor.

    Zero on strings with an empty leading block, with no tail, or whose merge
    product vanishes.

    >>> n = 3
    >>> homotopy_h(TString((AWord("u", 1, 1, n), AWord("u", 1, 1, n)))).render()
    '(U1^2)*'
    >>> homotopy_h(TString((AWord("u", 1, 1, n), AWord("s", 1, 1, n)))).render()
    '0'
    """
    x = _as_cob(x)
    out = CobElem.zero(x.algebra, x.n)
    if fault is not None and fault[0] == "break-h":
        return out
    for ts in x.strings:
        n_block = _block_length(ts)
        if n_block == 0 or n_block == len(ts.factors):
            continue
        merged = mul_word(ts.factors[n_block - 1], ts.factors[n_block])
        if merged is None:
            continue
        out = out + CobElem.from_factors(
            ts.factors[: n_block - 1] + (merged,) + ts.factors[n_block + 1 :]
        )
    return out


def enumerate_strings(algebra: str, max_total_len: int, n: int) -> Iterator[TString]:
    """All chained tensor strings with total length <= max_total_len."""
    pool_cache: dict[int, list[Word]] = {}

    def pool(node: int) -> list[Word]:
        if node not in pool_cache:
            pool_cache[node] = [
                w
                for w in words_from(algebra, node, max_total_len, n, include_idempotent=False)
            ]
        return pool_cache[node]

    def anchored(prev: Word, budget: int) -> Iterator[Word]:
        if algebra == "A":
            for w in pool(prev.fin):
                if w.ell <= budget:
                    yield w
        else:
            for node in range(1, n + 1):
                for w in pool(node):
                    if w.ell <= budget and w.fin == prev.init:
                        yield w

    def rec(factors: list[Word], budget: int) -> Iterator[TString]:
        yield TString(tuple(factors))
        for w in anchored(factors[-1], budget):
            yield from rec(factors + [w], budget - w.ell)

    for node in range(1, n + 1):
        for first in pool(node):
            if first.ell <= max_total_len:
                yield from rec([first], max_total_len - first.ell)


def verify_homotopy(
    max_total_len: int,
    n: int,
    base: str = "A",
    fault: Optional[tuple] = None,
    threads: int = 1,
) -> bool:
    """Whether delta H + H delta = id + psi phi on every chained string over
    `base` with total length within the bound."""

    def _holds(ts: TString) -> bool:
        lhs = cobar_diff(homotopy_h(ts, fault)) + homotopy_h(cobar_diff(ts), fault)
        rhs = CobElem.from_string(ts)
        image = phi(ts)
        if not image.is_zero():
            rhs = rhs + psi(image)
        return lhs == rhs

    strings = enumerate_strings(base, max_total_len, n)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return all(pool.map(_holds, strings, chunksize=64))
    return all(_holds(ts) for ts in strings)


__all__ = [
    "TString",
    "CobElem",
    "tstring_sort_key",
    "chain_ok",
    "dict_image",
    "cobar_diff",
    "bar_diff",
    "cobar_mul",
    "phi",
    "psi",
    "homotopy_h",
    "enumerate_strings",
    "verify_homotopy",
]
