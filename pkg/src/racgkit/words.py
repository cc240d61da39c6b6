"""Words, shortlex normal forms and the word problem in a right-angled Coxeter group.

Every generator is an involution, so a word is just a tuple of vertex labels
and the inverse of a word is its reversal.  The empty word is written ``1``.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .graphs import DefiningGraph

Word = tuple[str, ...]

IDENTITY: Word = ()


class UnknownLetter(ValueError):
    pass


def parse_word(text: str) -> Word:
    letters = tuple(text.split())
    return IDENTITY if letters == ("1",) else letters


def format_word(w: Sequence[str]) -> str:
    return " ".join(w) if w else "1"


def check_letters(g: DefiningGraph, w: Iterable[str]) -> Word:
    w = tuple(w)
    for s in w:
        if s not in g:
            raise UnknownLetter(f"unknown letter {s!r}")
    return w


def reduce_word(g: DefiningGraph, w: Iterable[str]) -> list[str]:
    """Cancel letters until the word is geodesic.

    Each incoming letter looks back past letters it commutes with; meeting its
    twin deletes both, meeting a non-commuting letter stops the search.
    """
    out: list[str] = []
    for s in w:
        nbrs = g.neighbors(s)
        for i in range(len(out) - 1, -1, -1):
            t = out[i]
            if t == s:
                del out[i]
                break
            if t not in nbrs:
                out.append(s)
                break
        else:
            out.append(s)
    return out


def _lex_least_arrangement(g: DefiningGraph, w: list[str]) -> Word:
    # Greedy: repeatedly emit the smallest letter that commutes past everything before it.
    rest = list(w)
    out = []
    while rest:
        best = None
        for i, s in enumerate(rest):
            if best is not None and g.index(s) >= g.index(rest[best]):
                continue
            nbrs = g.neighbors(s)
            if all(t in nbrs for t in rest[:i]):
                best = i
        out.append(rest.pop(best))
    return tuple(out)


def normalize(g: DefiningGraph, w: Iterable[str]) -> Word:
    """Shortlex normal form of ``w`` with respect to the vertex order of ``g``."""
    return _lex_least_arrangement(g, reduce_word(g, check_letters(g, w)))


def multiply(g: DefiningGraph, *words: Sequence[str]) -> Word:
    out: list[str] = []
    for w in words:
        out.extend(w)
    return normalize(g, out)


def inverse(w: Sequence[str]) -> Word:
    return tuple(reversed(w))


def power(g: DefiningGraph, w: Sequence[str], k: int) -> Word:
    return normalize(g, tuple(w) * k)


def parity(w: Iterable[str], s: str) -> int:
    return sum(1 for t in w if t == s) % 2


def element_order(g: DefiningGraph, w: Sequence[str], bound: int) -> int | None:
    """Order of ``w`` if at most ``bound``, else ``None``."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    w = normalize(g, w)
    current: Word = w
    for k in range(1, bound + 1):
        if not current:
            return k
        current = multiply(g, current, w)
    return None


def shortlex_key(g: DefiningGraph, w: Sequence[str]) -> tuple:
    return (len(w), tuple(g.index(s) for s in w))


class OracleCapExceeded(ValueError):
    pass


def _moves(g: DefiningGraph, w: Word):
    for i in range(len(w) - 1):
        s, t = w[i], w[i + 1]
        if s == t:
            yield w[:i] + w[i + 2:]
        elif g.adjacent(s, t):
            yield w[:i] + (t, s) + w[i + 2:]


def move_orbit(g: DefiningGraph, w: Sequence[str]) -> set[Word]:
    """Every word reachable from ``w`` by elementary moves."""
    start = check_letters(g, w)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in _moves(g, cur):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def oracle_equal(g: DefiningGraph, u: Sequence[str], w: Sequence[str], length_cap: int = 8) -> bool:
    """Decide ``u == w`` by exhaustive search over elementary moves.

    Searches from ``u . w^-1`` for the empty word.  The moves are deleting an
    adjacent equal pair and swapping an adjacent commuting pair.  Used as
    ground truth for :func:`normalize`; shares no code with it.
    """
    if length_cap > 8:
        raise OracleCapExceeded("length cap is at most 8")
    if len(u) > length_cap or len(w) > length_cap:
        raise OracleCapExceeded(f"word longer than cap {length_cap}")
    start = check_letters(g, tuple(u) + inverse(w))
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        if not cur:
            return True
        # deletions are pushed last so they are explored first
        nxt_words = sorted(_moves(g, cur), key=len, reverse=True)
        for nxt in nxt_words:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


def tits_matrix(g: DefiningGraph, w: Iterable[str]) -> tuple[tuple[int, ...], ...]:
    """Image of ``w`` under the Tits (geometric) representation.

    Generator ``s`` acts as the reflection ``e_t -> e_t - 2 B(s, t) e_s`` with
    ``B(s, s) = 1``, ``B(s, t) = 0`` for commuting pairs and ``-1`` otherwise.
    The representation is a homomorphism, so different matrices certify
    different group elements.
    """
    n = len(g)
    idx = g.index

    def bilinear(s: str, t: str) -> int:
        if s == t:
            return 1
        return 0 if g.adjacent(s, t) else -1

    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    # left-multiply by the reflections from right to left: M = R_{w1} ... R_{wk}
    for s in reversed(tuple(w)):
        i = idx(s)
        coeffs = [2 * bilinear(s, t) for t in g.vertices]
        # R_s = I - e_s (2B(s, .)) as a row operation on row i
        new_row = [rows[i][col] - sum(coeffs[k] * rows[k][col] for k in range(n)) for col in range(n)]
        rows[i] = new_row
    return tuple(tuple(r) for r in rows)


def elements_up_to(g: DefiningGraph, radius: int) -> list[Word]:
    """Normal forms of every element of length at most ``radius``, shortlex sorted.

    Breadth-first: each normal form of length ``n + 1`` is ``w s`` for a
    normal form ``w`` of length ``n``.
    """
    layer = [IDENTITY]
    seen = {IDENTITY}
    for _ in range(radius):
        nxt = []
        for w in layer:
            for s in g.vertices:
                ws = normalize(g, w + (s,))
                if len(ws) == len(w) + 1 and ws not in seen:
                    seen.add(ws)
                    nxt.append(ws)
        if not nxt:
            break
        layer = nxt
    return sorted(seen, key=lambda w: shortlex_key(g, w))
