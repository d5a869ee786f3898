"""Higher multiplications on the two quiver algebras and relation checking.

Algebra A carries, besides its binary product, one family of higher
operations in each arity (2N-2)j + 2: a chained tuple of total length 2Nj
using every loop/edge letter exactly j times ("centered") maps to V0^j times
an idempotent; tuples exceeding that length by a prefix of the first entry or
a suffix of the last entry ("left-/right-extended") map to that margin times
V0^j.  Algebra B carries one higher operation in arity N: the descending
cycle of edge letters maps to V_{N+1} times an idempotent, again with
one-sided extended variants.  All other tuples map to zero, as do tuples
containing a unit in arity > 2.

check_ainfty evaluates the A-infinity relation exhaustively in arity 3 and on
a provably complete candidate set in higher arities: a relation term can only
be nonzero if the tuple contains a passing window of a higher operation
(window plus arbitrary chained fillers) or contracts onto one under the
binary product (single-entry splits of a passing window), so every other
tuple vanishes termwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import Iterable, Iterator, Optional, Sequence, Union

from .ring import MONO_ONE, Monomial, mono_mul, mono_var
from .staralg import (
    AlgElem,
    AWord,
    BWord,
    Grading,
    Word,
    grading,
    idempotent,
    mono_grading,
    mul_word,
    word_sort_key,
    words_from,
    zero_grading,
)

Entry = tuple  # (Monomial, Word)

TAG_ZERO = "zero"
TAG_BINARY = "binary"
TAG_CENTERED = "centered"
TAG_LEFT = "left-extended"
TAG_RIGHT = "right-extended"
TAG_MIXED = "mixed"


@dataclass(frozen=True, slots=True)
class OpResult:
    """Value of a higher operation together with its classifier case."""

    value: AlgElem
    tag: str


def valid_higher_arities(algebra: str, n: int, max_arity: int) -> list[int]:
    """Arities > 2 at which the algebra carries a (possibly) nonzero operation."""
    if algebra == "A":
        step = 2 * n - 2
        return [step * j + 2 for j in range(1, (max_arity - 2) // step + 1)]
    return [n] if n <= max_arity else []


def _entry_grading(mono: Monomial, word: Word, n: int) -> Grading:
    return mono_grading(mono, n) + grading(word)


def _is_unit(mono: Monomial, word: Word) -> bool:
    return word.is_idempotent() and mono == MONO_ONE


def _chained(algebra: str, words: Sequence[Word]) -> bool:
    if algebra == "A":
        return all(words[k].fin == words[k + 1].init for k in range(len(words) - 1))
    return all(words[k].init == words[k + 1].fin for k in range(len(words) - 1))


def _split_a_word(w: AWord, head_len: int) -> Optional[tuple[AWord, AWord]]:
    """Factor an A-word into (head, tail) with the given head length."""
    if w.kind == "i" or not 1 <= head_len <= w.length - 1:
        return None
    if w.kind == "u":
        return (AWord("u", w.start, head_len, w.n), AWord("u", w.start, w.length - head_len, w.n))
    from .staralg import _advance  # local import to keep module tops clean

    return (
        AWord("s", w.start, head_len, w.n),
        AWord("s", _advance(w.start, head_len, w.n), w.length - head_len, w.n),
    )


def _split_b_word(w: BWord, first_len: int) -> Optional[tuple[BWord, BWord]]:
    """Factor a B-word into (later, first) parts; `first` gets first_len letters."""
    if w.kind == "i" or not 1 <= first_len <= w.length - 1:
        return None
    letters = w.letters()
    first = BWord.from_letters(letters[:first_len], w.n)
    later = BWord.from_letters(letters[first_len:], w.n)
    return (later, first)


def _classify_a(entries: Sequence[Entry], n: int, fault: Optional[tuple] = None) -> tuple[str, list[Entry]]:
    arity = len(entries)
    words = [w for _, w in entries]
    if any(_is_unit(m, w) for m, w in entries):
        return (TAG_ZERO, [])
    if not _chained("A", words):
        return (TAG_ZERO, [])
    step = 2 * n - 2
    if (arity - 2) % step:
        return (TAG_ZERO, [])
    j = (arity - 2) // step
    if j < 1:
        return (TAG_ZERO, [])
    gradings = [_entry_grading(m, w, n) for m, w in entries]
    total_len = sum(g.ell for g in gradings)
    target_vec = tuple(j for _ in range(2 * n))
    coeff = MONO_ONE
    for m, _ in entries:
        coeff = mono_mul(coeff, m)
    coeff = mono_mul(coeff, mono_var(0, j))
    excess = total_len - 2 * n * j

    if excess == 0:
        if tuple(sum(v) for v in zip(*(g.alexander for g in gradings))) != target_vec:
            return (TAG_ZERO, [])
        if fault is not None and fault[0] == "drop-a-centered":
            w0 = words[0]
            comp = 2 * (w0.start - 1) + (0 if w0.kind == "u" else 1)
            if fault[1] is None or fault[1] == comp:
                return (TAG_ZERO, [])
        return (TAG_CENTERED, [(coeff, idempotent("A", words[0].init, n))])

    if excess < 0:
        return (TAG_ZERO, [])

    def _try_left() -> Optional[Entry]:
        split = _split_a_word(words[0], excess)
        if split is None:
            return None
        head, tail = split
        vec = list(grading(tail).alexander)
        for g in gradings[1:]:
            vec = [a + b for a, b in zip(vec, g.alexander)]
        if tuple(vec) != target_vec:
            return None
        return (coeff, head)

    def _try_right() -> Optional[Entry]:
        split = _split_a_word(words[-1], words[-1].length - excess)
        if split is None:
            return None
        head, tail = split
        vec = list(grading(head).alexander)
        for g in gradings[:-1]:
            vec = [a + b for a, b in zip(vec, g.alexander)]
        if tuple(vec) != target_vec:
            return None
        return (MONO_ONE, tail)

    left = _try_left()
    right = _try_right()
    if left is not None and right is not None:
        raise RuntimeError("tuple classifies as both left- and right-extended")
    if left is not None:
        return (TAG_LEFT, [left])
    if right is not None:
        return (TAG_RIGHT, [(coeff, right[1])])
    return (TAG_ZERO, [])


def _classify_b(entries: Sequence[Entry], n: int, fault: Optional[tuple] = None) -> tuple[str, list[Entry]]:
    arity = len(entries)
    words = [w for _, w in entries]
    if any(_is_unit(m, w) for m, w in entries):
        return (TAG_ZERO, [])
    if arity != n or not _chained("B", words):
        return (TAG_ZERO, [])

    def _bare_sigma(k: int) -> bool:
        m, w = entries[k]
        return m == MONO_ONE and w.kind == "c" and w.first == "s" and w.length == 1

    coeff = MONO_ONE
    for m, _ in entries:
        coeff = mono_mul(coeff, m)
    coeff = mono_mul(coeff, mono_var(n + 1))

    if all(_bare_sigma(k) for k in range(arity)):
        return (TAG_CENTERED, [(coeff, idempotent("B", words[-1].init, n))])

    if all(_bare_sigma(k) for k in range(1, arity)):
        w0 = words[0]
        if w0.kind == "c" and w0.length >= 2 and w0.first == "s":
            remainder = BWord.from_letters(w0.letters()[1:], n)
            return (TAG_LEFT, [(coeff, remainder)])

    if all(_bare_sigma(k) for k in range(arity - 1)):
        wn = words[-1]
        if wn.kind == "c" and wn.length >= 2 and wn.last == "s":
            remainder = BWord.from_letters(wn.letters()[:-1], n)
            return (TAG_RIGHT, [(coeff, remainder)])

    return (TAG_ZERO, [])


def _mu_pairs(algebra: str, entries: Sequence[Entry], n: int, fault: Optional[tuple] = None) -> tuple[str, list[Entry]]:
    """Operation value on a single tuple of (coefficient monomial, word) entries."""
    arity = len(entries)
    if arity == 0:
        raise ValueError("operations need at least one input")
    if arity == 1:
        return (TAG_ZERO, [])
    if arity == 2:
        (ma, wa), (mb, wb) = entries
        word = mul_word(wa, wb)
        if word is None:
            return (TAG_ZERO, [])
        return (TAG_BINARY, [(mono_mul(ma, mb), word)])
    if algebra == "A":
        return _classify_a(entries, n, fault)
    return _classify_b(entries, n, fault)


def _as_pairs(x: Union[AlgElem, Word]) -> list[Entry]:
    if isinstance(x, AlgElem):
        return x.monomial_pairs()
    return [(MONO_ONE, x)]


def _mu(algebra: str, seq: Sequence[Union[AlgElem, Word]], fault: Optional[tuple] = None) -> OpResult:
    if not seq:
        raise ValueError("operations need at least one input")
    first = seq[0]
    n = first.n
    pair_lists = [_as_pairs(x) for x in seq]
    value = AlgElem.zero(algebra, n)
    tags: set[str] = set()
    for combo in iter_product(*pair_lists):
        tag, pairs = _mu_pairs(algebra, combo, n, fault)
        if pairs:
            tags.add(tag)
            value = value + AlgElem.from_pairs(algebra, n, pairs)
    if value.is_zero():
        return OpResult(value, TAG_ZERO)
    if len(tags) == 1:
        return OpResult(value, tags.pop())
    return OpResult(value, TAG_MIXED)


def mu_a(seq: Sequence[Union[AlgElem, AWord]], fault: Optional[tuple] = None) -> OpResult:
    """Higher operation of algebra A on a sequence of elements or basis words.

    >>> n = 3
    >>> tup = [AWord("u", 1, 1, n), AWord("s", 1, 1, n), AWord("u", 2, 1, n),
    ...        AWord("s", 2, 1, n), AWord("u", 3, 1, n), AWord("s", 3, 1, n)]
    >>> res = mu_a(tup)
    >>> res.tag, res.value.render()
    ('centered', 'V0*I1')
    """
    return _mu("A", seq, fault)


def mu_b(seq: Sequence[Union[AlgElem, BWord]], fault: Optional[tuple] = None) -> OpResult:
    """Higher operation of algebra B.

    >>> n = 3
    >>> tup = [BWord("c", 3, "s", 1, n), BWord("c", 2, "s", 1, n), BWord("c", 1, "s", 1, n)]
    >>> res = mu_b(tup)
    >>> res.tag, res.value.render()
    ('centered', 'V4*I1')
    """
    return _mu("B", seq, fault)


def relation_sum(algebra: str, words: Sequence[Word], n: int, fault: Optional[tuple] = None) -> AlgElem:
    """Sum of all composed operation terms on a tuple of basis words."""
    total = AlgElem.zero(algebra, n)
    size = len(words)
    base: list[Entry] = [(MONO_ONE, w) for w in words]
    for r in range(2, size):
        for k in range(size - r + 1):
            _, inner = _mu_pairs(algebra, base[k : k + r], n, fault)
            for pair in inner:
                outer_entries = base[:k] + [pair] + base[k + r :]
                _, outer = _mu_pairs(algebra, outer_entries, n, fault)
                if outer:
                    total = total + AlgElem.from_pairs(algebra, n, outer)
    return total


def _buckets(algebra: str, max_len: int, n: int) -> tuple[dict, dict]:
    """Basis words (with idempotents) bucketed by initial and by final node."""
    by_init: dict[int, list[Word]] = {i: [] for i in range(1, n + 1)}
    by_fin: dict[int, list[Word]] = {i: [] for i in range(1, n + 1)}
    for i in range(1, n + 1):
        for w in words_from(algebra, i, max_len, n):
            by_init[w.init].append(w)
            by_fin[w.fin].append(w)
    for i in range(1, n + 1):
        by_init[i].sort(key=word_sort_key)
        by_fin[i].sort(key=word_sort_key)
    return by_init, by_fin


def _centered_tuples(algebra: str, arity: int, n: int) -> list[tuple[Word, ...]]:
    """All centered tuples of the given arity (non-idempotent chained words)."""
    out: list[tuple[Word, ...]] = []
    if algebra == "B":
        if arity != n:
            return out
        from .staralg import _advance

        for i in range(1, n + 1):
            tup = tuple(BWord("c", _advance(i, n - k, n), "s", 1, n) for k in range(1, n + 1))
            out.append(tup)
        return out
    step = 2 * n - 2
    if (arity - 2) % step:
        return out
    j = (arity - 2) // step
    if j < 1:
        return out
    budget = 2 * n * j
    target = [j] * (2 * n)

    def rec(prefix: list[Word], used: list[int], total: int) -> None:
        if len(prefix) == arity:
            if total == budget and used == target:
                out.append(tuple(prefix))
            return
        remaining_slots = arity - len(prefix)
        start_nodes = range(1, n + 1) if not prefix else [prefix[-1].fin]
        for node in start_nodes:
            for kind in ("u", "s"):
                for ell in range(1, budget - total - (remaining_slots - 1) + 1):
                    w = AWord(kind, node, ell, n)
                    g = grading(w)
                    new_used = [a + b for a, b in zip(used, g.alexander)]
                    if any(a > t for a, t in zip(new_used, target)):
                        continue
                    rec(prefix + [w], new_used, total + ell)

    rec([], [0] * (2 * n), 0)
    out.sort(key=lambda t: tuple(word_sort_key(w) for w in t))
    return out


def passing_windows(algebra: str, arity: int, max_total_len: int, n: int) -> list[tuple[Word, ...]]:
    """All tuples of the given arity on which the higher operation is nonzero."""
    centered = _centered_tuples(algebra, arity, n)
    windows: set[tuple[Word, ...]] = set()
    for tup in centered:
        if sum(w.ell for w in tup) <= max_total_len:
            windows.add(tup)
        room = max_total_len - sum(w.ell for w in tup)
        first, last = tup[0], tup[-1]
        for extra in range(1, room + 1):
            if algebra == "A":
                for kind in ("u", "s"):
                    if kind == "u":
                        prefix = AWord("u", first.init, extra, n)
                        suffix = AWord("u", last.fin, extra, n)
                    else:
                        from .staralg import _advance

                        prefix = AWord("s", _advance(first.init, -extra, n), extra, n)
                        suffix = AWord("s", last.fin, extra, n)
                    merged_first = mul_word(prefix, first)
                    if merged_first is not None:
                        windows.add((merged_first,) + tup[1:])
                    merged_last = mul_word(last, suffix)
                    if merged_last is not None:
                        windows.add(tup[:-1] + (merged_last,))
            else:
                for typ in ("r", "s"):
                    for node in range(1, n + 1):
                        ext = BWord("c", node, typ, extra, n)
                        merged_first = mul_word(ext, first)
                        if merged_first is not None:
                            windows.add((merged_first,) + tup[1:])
                        merged_last = mul_word(last, ext)
                        if merged_last is not None:
                            windows.add(tup[:-1] + (merged_last,))
    out = [w for w in windows if sum(x.ell for x in w) <= max_total_len]
    out.sort(key=lambda t: tuple(word_sort_key(w) for w in t))
    return out


def _filler_chains(
    algebra: str,
    slots: int,
    budget: int,
    n: int,
    anchor: Optional[int],
    side: str,
    by_init: dict,
    by_fin: dict,
) -> Iterator[tuple[Word, ...]]:
    """Chained filler tuples attachable to a window on the given side.

    For side "right" the chain starts at the window's final node; for side
    "left" it is built backwards so that it ends at the window's initial node.
    Idempotents are allowed as fillers.
    """
    if slots == 0:
        yield ()
        return
    pool: Iterable[Word]
    if anchor is None:
        pool = [w for i in range(1, n + 1) for w in by_init[i]]
    elif (side == "right") == (algebra == "A"):
        pool = by_init[anchor]
    else:
        pool = by_fin[anchor]
    for w in pool:
        if w.ell > budget:
            continue
        next_anchor = (w.fin if algebra == "A" else w.init) if side == "right" else (w.init if algebra == "A" else w.fin)
        for rest in _filler_chains(algebra, slots - 1, budget - w.ell, n, next_anchor, side, by_init, by_fin):
            yield ((w,) + rest) if side == "right" else (rest + (w,))


def _entry_splits(algebra: str, w: Word, n: int) -> list[tuple[Word, Word]]:
    """All pairs (c, d) of basis words with mu_2(c, d) equal to w."""
    out: list[tuple[Word, Word]] = []
    if algebra == "A":
        out.append((idempotent("A", w.init, n), w))
        out.append((w, idempotent("A", w.fin, n)))
        for head_len in range(1, w.ell):
            split = _split_a_word(w, head_len)
            if split is not None:
                out.append(split)
    else:
        out.append((idempotent("B", w.fin, n), w))
        out.append((w, idempotent("B", w.init, n)))
        for first_len in range(1, w.ell):
            split = _split_b_word(w, first_len)
            if split is not None:
                out.append(split)
    return out


def _relation_arities(algebra: str, max_arity: int, n: int) -> list[int]:
    valid = {2, *valid_higher_arities(algebra, n, max_arity)}
    out = []
    for arity in range(4, max_arity + 1):
        if any(r in valid and (arity - r + 1) in valid for r in range(2, arity)):
            out.append(arity)
    return out


def _candidate_tuples(algebra: str, arity: int, max_total_len: int, n: int) -> list[tuple[Word, ...]]:
    by_init, by_fin = _buckets(algebra, max_total_len, n)
    valid = {2, *valid_higher_arities(algebra, n, arity)}
    candidates: set[tuple[Word, ...]] = set()
    for r in valid_higher_arities(algebra, n, arity - 1):
        if (arity - r + 1) not in valid:
            continue
        for window in passing_windows(algebra, r, max_total_len, n):
            w_len = sum(w.ell for w in window)
            head_node = window[0].init if algebra == "A" else window[0].fin
            tail_node = window[-1].fin if algebra == "A" else window[-1].init
            for pos in range(arity - r + 1):
                left_slots, right_slots = pos, arity - r - pos
                for left in _filler_chains(
                    algebra, left_slots, max_total_len - w_len, n, head_node, "left", by_init, by_fin
                ):
                    used = w_len + sum(w.ell for w in left)
                    for right in _filler_chains(
                        algebra, right_slots, max_total_len - used, n, tail_node, "right", by_init, by_fin
                    ):
                        candidates.add(left + window + right)
    if (arity - 1) in valid and arity - 1 > 2:
        for window in passing_windows(algebra, arity - 1, max_total_len, n):
            for t, entry in enumerate(window):
                for c, d in _entry_splits(algebra, entry, n):
                    candidates.add(window[:t] + (c, d) + window[t + 1 :])
    out = [t for t in candidates if sum(w.ell for w in t) <= max_total_len]
    out.sort(key=lambda t: tuple(word_sort_key(w) for w in t))
    return out


def _violation(algebra: str, words: Sequence[Word], total: AlgElem) -> dict:
    return {
        "algebra": algebra,
        "arity": len(words),
        "inputs": [w.render() for w in words],
        "lhs-sum": total.render(),
    }


def check_ainfty(
    algebra: str,
    max_arity: int,
    max_total_len: int,
    n: int,
    fault: Optional[tuple] = None,
    threads: int = 1,
) -> list[dict]:
    """Violations of the A-infinity relations within the given bounds.

    Arity 3 is swept over every chained triple of basis words; higher arities
    are swept over the complete candidate set described in the module
    docstring.  The candidate set is generated from the unfaulted operation
    tables, so injected faults cannot hide violations.
    """
    if n <= 2:
        raise ValueError("the construction needs N > 2")
    by_init, by_fin = _buckets(algebra, max_total_len, n)

    def _tuples() -> Iterator[tuple[Word, ...]]:
        if max_arity >= 3:
            all_words = [w for i in range(1, n + 1) for w in by_init[i]]
            for a in all_words:
                budget_bc = max_total_len - a.ell
                next_pool = by_init[a.fin] if algebra == "A" else by_fin[a.init]
                for b in next_pool:
                    if b.ell > budget_bc:
                        continue
                    last_pool = by_init[b.fin] if algebra == "A" else by_fin[b.init]
                    for c in last_pool:
                        if a.ell + b.ell + c.ell > max_total_len:
                            continue
                        yield (a, b, c)
        for arity in _relation_arities(algebra, max_arity, n):
            yield from _candidate_tuples(algebra, arity, max_total_len, n)

    def _eval(words: tuple[Word, ...]) -> Optional[dict]:
        total = relation_sum(algebra, words, n, fault)
        if total.is_zero():
            return None
        return _violation(algebra, words, total)

    violations: list[dict] = []
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            for found in pool.map(_eval, _tuples(), chunksize=256):
                if found is not None:
                    violations.append(found)
    else:
        for tup in _tuples():
            found = _eval(tup)
            if found is not None:
                violations.append(found)

    violations.sort(key=lambda v: (v["arity"], v["inputs"]))
    return violations


def op_grading_check(algebra: str, max_arity: int, max_total_len: int, n: int) -> list[dict]:
    """Grading-law violations over all nonzero operations within bounds.

    Binary products must add gradings; an arity-r operation must add r - 2 to
    the Maslov degree and preserve the weight vector (hence total length).
    """
    violations: list[dict] = []
    by_init, by_fin = _buckets(algebra, max_total_len, n)

    def _output_grading(value: AlgElem) -> list[Grading]:
        return [mono_grading(m, n) + grading(w) for m, w in value.monomial_pairs()]

    all_words = [w for i in range(1, n + 1) for w in by_init[i]]
    for a in all_words:
        pool = by_init[a.fin] if algebra == "A" else by_fin[a.init]
        for b in pool:
            if a.ell + b.ell > max_total_len:
                continue
            word = mul_word(a, b)
            if word is None:
                continue
            expect = grading(a) + grading(b)
            if grading(word) != expect:
                violations.append(
                    {
                        "algebra": algebra,
                        "arity": 2,
                        "inputs": [a.render(), b.render()],
                        "reason": f"binary grading {grading(word)} != {expect}",
                    }
                )

    for r in valid_higher_arities(algebra, n, max_arity):
        for window in passing_windows(algebra, r, max_total_len, n):
            res = _mu(algebra, list(window))
            if res.value.is_zero():
                continue
            total = zero_grading(n)
            for w in window:
                total = total + grading(w)
            expect = Grading(total.m + r - 2, total.alexander, total.ell)
            for got in _output_grading(res.value):
                if got != expect:
                    violations.append(
                        {
                            "algebra": algebra,
                            "arity": r,
                            "inputs": [w.render() for w in window],
                            "reason": f"operation grading {got} != {expect}",
                        }
                    )
    return violations


def parse_fault(text: Optional[str]) -> Optional[tuple]:
    """Parse a fault-injection spec like "drop-mu2N" or "drop-mu2N:3"."""
    if text is None:
        return None
    if text == "break-h":
        return ("break-h",)
    if text == "drop-mu2N":
        return ("drop-a-centered", 0)
    if text.startswith("drop-mu2N:"):
        return ("drop-a-centered", int(text.split(":", 1)[1]))
    raise ValueError(f"unknown fault spec {text!r}")


__all__ = [
    "OpResult",
    "mu_a",
    "mu_b",
    "relation_sum",
    "valid_higher_arities",
    "passing_windows",
    "check_ainfty",
    "op_grading_check",
    "parse_fault",
    "TAG_ZERO",
    "TAG_BINARY",
    "TAG_CENTERED",
    "TAG_LEFT",
    "TAG_RIGHT",
    "TAG_MIXED",
]
