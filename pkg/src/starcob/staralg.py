"""Two dual path algebras on a cyclic quiver with N nodes, over GF(2).

Algebra A carries, at each node i in 1..N, an idempotent I_i, a loop generator
U_i, and an edge generator s_i from node i to node i+1 (indices mod N).  Basis
words are U-powers U_i^e and s-chains s_i s_{i+1} ... (any length, wrapping
allowed); mixed U/s products vanish.  Words compose left-to-right as paths, and
coefficients live in GF(2)[V0].

Algebra B carries, at each node i, an idempotent I_i, a loop letter r_i, and an
edge letter s_i from i to i+1; words are alternating strings of r/s letters
applied right-to-left (the written word x*y applies y first), and two adjacent
letters of the same type multiply to zero.  Coefficients live in GF(2)[V_{N+1}].

Gradings: an integer Maslov degree m (0 on A-words, minus the length on
B-words), a weight vector of length 2N counting each loop/edge letter (loop
letters at even slots 2i-2, edge letters at odd slots 2i-1), and the total
length.  The coefficient variables are graded too: V0 has m = 2N-2 and full
weight vector, V_{N+1} has m = -2 and the edge half of the weight vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from .ring import (
    MONO_ONE,
    POLY_ONE,
    Monomial,
    Poly,
    mono_mul,
    mono_str,
    poly_is_zero,
    poly_str,
)

ALGEBRAS = ("A", "B")


def _check_node(i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise ValueError(f"node index {i} out of range 1..{n}")


def _next_node(i: int, n: int) -> int:
    return i % n + 1


def _advance(i: int, steps: int, n: int) -> int:
    return (i - 1 + steps) % n + 1


@dataclass(frozen=True, slots=True)
class AWord:
    """A basis word of algebra A: an idempotent, a U-power, or an s-chain.

    kind is "i" (idempotent I_start), "u" (U_start^length), or
    "s" (s_start s_{start+1} ... , `length` letters).

    >>> AWord("s", 2, 3, 3).render()
    's[2,5]'
    >>> AWord("u", 1, 2, 3).fin
    1
    """

    kind: str
    start: int
    length: int
    n: int

    def __post_init__(self) -> None:
        _check_node(self.start, self.n)
        if self.kind == "i":
            if self.length != 0:
                raise ValueError("idempotents have length 0")
        elif self.kind in ("u", "s"):
            if self.length < 1:
                raise ValueError("U-powers and s-chains need length >= 1")
        else:
            raise ValueError(f"unknown A-word kind {self.kind!r}")

    @property
    def algebra(self) -> str:
        return "A"

    @property
    def ell(self) -> int:
        return self.length

    @property
    def init(self) -> int:
        return self.start

    @property
    def fin(self) -> int:
        if self.kind == "s":
            return _advance(self.start, self.length, self.n)
        return self.start

    def is_idempotent(self) -> bool:
        return self.kind == "i"

    def render(self) -> str:
        if self.kind == "i":
            return f"I{self.start}"
        if self.kind == "u":
            return f"U{self.start}" if self.length == 1 else f"U{self.start}^{self.length}"
        return f"s[{self.start},{self.start + self.length}]"


@dataclass(frozen=True, slots=True)
class BWord:
    """A basis word of algebra B: an idempotent or an alternating r/s chain.

    kind is "i" or "c"; `start` is the initial node of the path, `first` the
    type ("r" or "s") of the first-applied letter, `length` the letter count.
    Letters are listed in application order (first-applied first); the written
    word runs in the opposite order.

    >>> BWord("c", 1, "r", 3, 3).render()
    'r1.s1.r2'
    >>> BWord("c", 1, "r", 3, 3).fin
    2
    """

    kind: str
    start: int
    first: str
    length: int
    n: int

    def __post_init__(self) -> None:
        _check_node(self.start, self.n)
        if self.kind == "i":
            if self.length != 0 or self.first != "":
                raise ValueError("idempotents have length 0 and no letters")
        elif self.kind == "c":
            if self.length < 1:
                raise ValueError("chains need length >= 1")
            if self.first not in ("r", "s"):
                raise ValueError("first letter type must be 'r' or 's'")
        else:
            raise ValueError(f"unknown B-word kind {self.kind!r}")

    @property
    def algebra(self) -> str:
        return "B"

    @property
    def ell(self) -> int:
        return self.length

    @property
    def init(self) -> int:
        return self.start

    @property
    def fin(self) -> int:
        if self.kind == "i":
            return self.start
        edge_count = self.length // 2 if self.first == "r" else (self.length + 1) // 2
        return _advance(self.start, edge_count, self.n)

    @property
    def last(self) -> str:
        """Type of the last-applied letter."""
        if self.kind == "i":
            return ""
        if self.length % 2 == 1:
            return self.first
        return "s" if self.first == "r" else "r"

    def is_idempotent(self) -> bool:
        return self.kind == "i"

    def letters(self) -> list[tuple[str, int]]:
        """Letters as (type, node) pairs in application order."""
        out: list[tuple[str, int]] = []
        cur = self.start
        typ = self.first
        for _ in range(self.length):
            out.append((typ, cur))
            if typ == "s":
                cur = _next_node(cur, self.n)
                typ = "r"
            else:
                typ = "s"
        return out

    @classmethod
    def from_letters(cls, letters: list[tuple[str, int]], n: int) -> "BWord":
        """Rebuild a chain from application-order letters, validating the path."""
        if not letters:
            raise ValueError("use an explicit idempotent for the empty chain")
        word = cls("c", letters[0][1], letters[0][0], len(letters), n)
        if word.letters() != list(letters):
            raise ValueError(f"letters {letters} do not form an alternating path")
        return word

    def render(self) -> str:
        if self.kind == "i":
            return f"I{self.start}"
        return ".".join(f"{t}{i}" for t, i in self.letters())


Word = Union[AWord, BWord]


def idempotent(algebra: str, i: int, n: int) -> Word:
    if algebra == "A":
        return AWord("i", i, 0, n)
    if algebra == "B":
        return BWord("i", i, "", 0, n)
    raise ValueError(f"unknown algebra {algebra!r}")


def letter(algebra: str, typ: str, i: int, n: int) -> Word:
    """The length-1 generator of the given type ('u'/'s' for A, 'r'/'s' for B)."""
    if algebra == "A":
        if typ not in ("u", "s"):
            raise ValueError("A-letters are 'u' or 's'")
        return AWord(typ, i, 1, n)
    if algebra == "B":
        return BWord("c", i, typ, 1, n)
    raise ValueError(f"unknown algebra {algebra!r}")


def idempotents(w: Word) -> tuple[int, int]:
    """The (initial, final) path endpoints of a basis word."""
    return (w.init, w.fin)


def mul_word_a(x: AWord, y: AWord) -> Optional[AWord]:
    """Product of A-basis words, or None when it vanishes."""
    if x.n != y.n:
        raise ValueError("mixed parameters")
    if x.kind == "i":
        return y if y.init == x.start else None
    if y.kind == "i":
        return x if x.fin == y.start else None
    if x.kind == "u" and y.kind == "u":
        return AWord("u", x.start, x.length + y.length, x.n) if x.start == y.start else None
    if x.kind == "s" and y.kind == "s":
        return AWord("s", x.start, x.length + y.length, x.n) if x.fin == y.init else None
    return None


def mul_word_b(x: BWord, y: BWord) -> Optional[BWord]:
    """Product of B-basis words (y applied first), or None when it vanishes."""
    if x.n != y.n:
        raise ValueError("mixed parameters")
    if x.kind == "i":
        return y if y.fin == x.start else None
    if y.kind == "i":
        return x if x.init == y.start else None
    if y.fin != x.init or y.last == x.first:
        return None
    return BWord("c", y.start, y.first, x.length + y.length, x.n)


def mul_word(x: Word, y: Word) -> Optional[Word]:
    if isinstance(x, AWord) and isinstance(y, AWord):
        return mul_word_a(x, y)
    if isinstance(x, BWord) and isinstance(y, BWord):
        return mul_word_b(x, y)
    raise ValueError("cannot multiply words of different algebras")


@dataclass(frozen=True, slots=True)
class Grading:
    """Maslov degree, weight vector of length 2N, and total length."""

    m: int
    alexander: tuple
    ell: int

    def __add__(self, other: "Grading") -> "Grading":
        return Grading(
            self.m + other.m,
            tuple(a + b for a, b in zip(self.alexander, other.alexander, strict=True)),
            self.ell + other.ell,
        )


def zero_grading(n: int) -> Grading:
    return Grading(0, (0,) * (2 * n), 0)


def coeff_var(algebra: str, n: int) -> int:
    """The coefficient variable index carried by each algebra (V0 or V_{N+1})."""
    return 0 if algebra == "A" else n + 1


def var_grading(var: int, n: int) -> Grading:
    """Grading of a coefficient variable.

    V0 has m = 2N-2 and weight (1,...,1); V_{N+1} has m = -2 and the edge-slot
    half of the weight vector.  The remaining variables annihilate both
    algebras and carry no grading.
    """
    if var == 0:
        return Grading(2 * n - 2, (1,) * (2 * n), 2 * n)
    if var == n + 1:
        return Grading(-2, tuple(i % 2 for i in range(2 * n)), n)
    raise ValueError(f"variable V{var} is not graded (it annihilates both algebras)")


def mono_grading(mono: Monomial, n: int) -> Grading:
    g = zero_grading(n)
    for var, exp in mono:
        vg = var_grading(var, n)
        for _ in range(exp):
            g = g + vg
    return g


def grading(w: Word) -> Grading:
    """Grading of a basis word.

    >>> grading(AWord("u", 1, 2, 3))
    Grading(m=0, alexander=(2, 0, 0, 0, 0, 0), ell=2)
    >>> grading(BWord("c", 1, "s", 1, 3)).m
    -1
    """
    vec = [0] * (2 * w.n)
    if isinstance(w, AWord):
        if w.kind == "u":
            vec[2 * w.start - 2] = w.length
        elif w.kind == "s":
            for k in range(w.length):
                vec[2 * _advance(w.start, k, w.n) - 1] += 1
        return Grading(0, tuple(vec), w.length)
    for typ, i in w.letters():
        vec[2 * i - 2 if typ == "r" else 2 * i - 1] += 1
    return Grading(-w.length, tuple(vec), w.length)


def word_sort_key(w: Word) -> tuple:
    kind_rank = {"i": 0, "u": 1, "s": 2, "c": 1}
    first_rank = {"": 0, "r": 0, "s": 1}
    if isinstance(w, AWord):
        return (w.ell, kind_rank[w.kind], w.start, 0)
    return (w.ell, kind_rank[w.kind], w.start, first_rank[w.first])


class AlgElem:
    """A finite GF(2)[V]-combination of basis words of one algebra.

    Terms map basis words to nonzero polynomials in the algebra's own
    coefficient variable (V0 for A, V_{N+1} for B); monomials involving any
    other variable annihilate the algebra and are normalized away.
    """

    __slots__ = ("algebra", "n", "terms")

    def __init__(self, algebra: str, n: int, terms: Optional[dict] = None):
        if algebra not in ALGEBRAS:
            raise ValueError(f"unknown algebra {algebra!r}")
        self.algebra = algebra
        self.n = n
        self.terms: dict = {}
        if terms:
            for word, coeff in terms.items():
                self._accumulate(word, coeff)

    def _accumulate(self, word: Word, coeff: Poly) -> None:
        if word.algebra != self.algebra or word.n != self.n:
            raise ValueError("word does not belong to this algebra")
        allowed = coeff_var(self.algebra, self.n)
        kept = frozenset(m for m in coeff if all(v == allowed for v, _ in m))
        if not kept:
            return
        cur = self.terms.get(word)
        new = cur ^ kept if cur is not None else kept
        if new:
            self.terms[word] = new
        elif cur is not None:
            del self.terms[word]

    @classmethod
    def zero(cls, algebra: str, n: int) -> "AlgElem":
        return cls(algebra, n)

    @classmethod
    def from_word(cls, word: Word, coeff: Poly = POLY_ONE) -> "AlgElem":
        return cls(word.algebra, word.n, {word: coeff})

    @classmethod
    def from_pairs(cls, algebra: str, n: int, pairs: Iterable[tuple[Monomial, Word]]) -> "AlgElem":
        out = cls(algebra, n)
        for mono, word in pairs:
            out._accumulate(word, frozenset({mono}))
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgElem):
            return NotImplemented
        return (self.algebra, self.n, self.terms) == (other.algebra, other.n, other.terms)

    def __hash__(self) -> int:
        return hash((self.algebra, self.n, frozenset(self.terms.items())))

    def __add__(self, other: "AlgElem") -> "AlgElem":
        if (self.algebra, self.n) != (other.algebra, other.n):
            raise ValueError("cannot add elements of different algebras")
        out = AlgElem(self.algebra, self.n, dict(self.terms))
        for word, coeff in other.terms.items():
            out._accumulate(word, coeff)
        return out

    def scale(self, poly: Poly) -> "AlgElem":
        out = AlgElem(self.algebra, self.n)
        for word, coeff in self.terms.items():
            prod: set = set()
            for a in coeff:
                for b in poly:
                    prod ^= {mono_mul(a, b)}
            out._accumulate(word, frozenset(prod))
        return out

    def mul(self, other: "AlgElem") -> "AlgElem":
        if (self.algebra, self.n) != (other.algebra, other.n):
            raise ValueError("cannot multiply elements of different algebras")
        out = AlgElem(self.algebra, self.n)
        for wx, cx in self.terms.items():
            for wy, cy in other.terms.items():
                word = mul_word(wx, wy)
                if word is None:
                    continue
                prod: set = set()
                for a in cx:
                    for b in cy:
                        prod ^= {mono_mul(a, b)}
                out._accumulate(word, frozenset(prod))
        return out

    def monomial_pairs(self) -> list[tuple[Monomial, Word]]:
        """All (coefficient monomial, word) pairs, canonically ordered."""
        out = []
        for word, coeff in self.terms.items():
            for m in coeff:
                out.append((m, word))
        out.sort(key=lambda p: (word_sort_key(p[1]), p[0]))
        return out

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word in sorted(self.terms, key=word_sort_key):
            coeff = self.terms[word]
            cs = poly_str(coeff)
            if cs == "1":
                parts.append(word.render())
            elif len(coeff) == 1:
                parts.append(f"{cs}*{word.render()}")
            else:
                parts.append(f"({cs})*{word.render()}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "terms": [
                {"word": w.render(), "coeff": poly_str(c)}
                for w, c in sorted(self.terms.items(), key=lambda kv: word_sort_key(kv[0]))
            ],
        }

    def __repr__(self) -> str:
        return f"AlgElem({self.algebra!r}, {self.n}, {self.render()!r})"


def _as_elem(x: Union[AlgElem, Word]) -> AlgElem:
    if isinstance(x, AlgElem):
        return x
    return AlgElem.from_word(x)


def mul_a(x: Union[AlgElem, AWord], y: Union[AlgElem, AWord]) -> AlgElem:
    """Bilinear product in algebra A.

    >>> n = 3
    >>> mul_a(AWord("s", 1, 1, n), AWord("s", 2, 1, n)).render()
    's[1,3]'
    >>> mul_a(AWord("u", 1, 1, n), AWord("s", 1, 1, n)).render()
    '0'
    """
    ex, ey = _as_elem(x), _as_elem(y)
    if ex.algebra != "A" or ey.algebra != "A":
        raise ValueError("mul_a expects A-elements")
    return ex.mul(ey)


def mul_b(x: Union[AlgElem, BWord], y: Union[AlgElem, BWord]) -> AlgElem:
    """Bilinear product in algebra B (the right factor is applied first).

    >>> n = 3
    >>> mul_b(BWord("c", 2, "r", 1, n), BWord("c", 1, "s", 1, n)).render()
    's1.r2'
    >>> mul_b(BWord("c", 1, "s", 1, n), BWord("c", 2, "s", 1, n)).render()
    '0'
    """
    ex, ey = _as_elem(x), _as_elem(y)
    if ex.algebra != "B" or ey.algebra != "B":
        raise ValueError("mul_b expects B-elements")
    return ex.mul(ey)


def enumerate_basis(algebra: str, max_len: int, n: int) -> list[Word]:
    """All basis words with length <= max_len, canonically ordered.

    >>> [w.render() for w in enumerate_basis("A", 1, 3)]
    ['I1', 'I2', 'I3', 'U1', 'U2', 'U3', 's[1,2]', 's[2,3]', 's[3,4]']
    """
    if algebra not in ALGEBRAS:
        raise ValueError(f"unknown algebra {algebra!r}")
    words: list[Word] = [idempotent(algebra, i, n) for i in range(1, n + 1)]
    for ell in range(1, max_len + 1):
        if algebra == "A":
            words.extend(AWord("u", i, ell, n) for i in range(1, n + 1))
            words.extend(AWord("s", i, ell, n) for i in range(1, n + 1))
        else:
            for i in range(1, n + 1):
                words.append(BWord("c", i, "r", ell, n))
                words.append(BWord("c", i, "s", ell, n))
    words.sort(key=word_sort_key)
    return words


def words_from(algebra: str, start: int, max_len: int, n: int, include_idempotent: bool = True) -> Iterator[Word]:
    """Basis words with initial node `start` and length <= max_len."""
    if include_idempotent:
        yield idempotent(algebra, start, n)
    for ell in range(1, max_len + 1):
        if algebra == "A":
            yield AWord("u", start, ell, n)
            yield AWord("s", start, ell, n)
        else:
            yield BWord("c", start, "r", ell, n)
            yield BWord("c", start, "s", ell, n)


def full_cycle_chain(start: int, n: int) -> AWord:
    """The s-chain of length N from a node back to itself."""
    return AWord("s", start, n, n)


def loop_word(start: int, first: str, length: int, n: int) -> BWord:
    return BWord("c", start, first, length, n)


def special_element(algebra: str, name: str, n: int) -> AlgElem:
    """Named distinguished elements.

    For algebra A the name "U{N+1}" (alias "U_top") is the sum of the N full
    s-cycles; for algebra B the name "U0" is the sum of the 2N alternating
    length-2N loops (one r-first and one s-first loop at each node).

    >>> special_element("A", "U4", 3).render()
    's[1,4] + s[2,5] + s[3,6]'
    """
    if algebra == "A":
        if name not in (f"U{n + 1}", "U_top"):
            raise ValueError(f"unknown special element {name!r} for algebra A")
        out = AlgElem.zero("A", n)
        for i in range(1, n + 1):
            out = out + AlgElem.from_word(full_cycle_chain(i, n))
        return out
    if algebra == "B":
        if name != "U0":
            raise ValueError(f"unknown special element {name!r} for algebra B")
        out = AlgElem.zero("B", n)
        for i in range(1, n + 1):
            out = out + AlgElem.from_word(loop_word(i, "r", 2 * n, n))
            out = out + AlgElem.from_word(loop_word(i, "s", 2 * n, n))
        return out
    raise ValueError(f"unknown algebra {algebra!r}")


def unit(algebra: str, n: int) -> AlgElem:
    out = AlgElem.zero(algebra, n)
    for i in range(1, n + 1):
        out = out + AlgElem.from_word(idempotent(algebra, i, n))
    return out


def elem_grading_violations(x: AlgElem) -> list[str]:
    """Empty if every term of x is homogeneous with a consistent grading law."""
    probs = []
    for word, coeff in x.terms.items():
        for m in coeff:
            try:
                mono_grading(m, x.n)
            except ValueError:
                probs.append(f"ungradable coefficient {mono_str(m)} on {word.render()}")
    return probs


__all__ = [
    "ALGEBRAS",
    "AWord",
    "BWord",
    "Word",
    "Grading",
    "AlgElem",
    "idempotent",
    "letter",
    "idempotents",
    "mul_word_a",
    "mul_word_b",
    "mul_word",
    "mul_a",
    "mul_b",
    "grading",
    "zero_grading",
    "coeff_var",
    "var_grading",
    "mono_grading",
    "word_sort_key",
    "enumerate_basis",
    "words_from",
    "full_cycle_chain",
    "loop_word",
    "special_element",
    "unit",
    "elem_grading_violations",
]
