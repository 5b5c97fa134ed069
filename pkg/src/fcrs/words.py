"""Words as tuples of letter tokens, plus factor and splice primitives.

A word is a tuple of tokens (strings without whitespace), e.g.
``("b1", "a", "a", "c2")``.  Words are kept as token sequences rather than
flat strings so that multi-character generators stay atomic.  The empty tuple
is a legal value (it shows up as an empty segment in decompositions) but rule
sides and user-supplied words must be non-empty.
"""

from __future__ import annotations

from collections.abc import Iterable

from .errors import InputError

Word = tuple[str, ...]

EMPTY: Word = ()


def parse_word(text: str) -> Word:
    """Split a whitespace-separated token string into a word.

    >>> parse_word("b1 a a c2")
    ('b1', 'a', 'a', 'c2')
    """
    tokens = tuple(text.split())
    if not tokens:
        raise InputError("empty word (expected whitespace-separated letter tokens)")
    return tokens


def format_word(w: Word) -> str:
    return " ".join(w)


def validate_token(token: str) -> str:
    if not token or any(ch.isspace() for ch in token):
        raise InputError(f"bad letter token {token!r}: tokens are non-empty and contain no whitespace")
    return token


def length_in(w: Word, letters: Iterable[str]) -> int:
    """Count positions of ``w`` whose letter lies in ``letters`` (|w|_Y)."""
    ys = frozenset(letters)
    return sum(1 for x in w if x in ys)


def find_occurrences(w: Word, factor: Word) -> list[int]:
    """All start positions where ``factor`` occurs in ``w``, overlaps included.

    >>> find_occurrences(('a', 'a', 'a'), ('a', 'a'))
    [0, 1]
    """
    if not factor:
        raise InputError("empty factor")
    k = len(factor)
    return [i for i in range(len(w) - k + 1) if w[i:i + k] == factor]


def splice(w: Word, i: int, old_len: int, replacement: Word) -> Word:
    """Replace ``w[i:i+old_len]`` by ``replacement``.

    ``old_len`` may be 0 (pure insertion); ``i`` may equal ``len(w)`` to
    append.  The replacement must be non-empty so that words stay non-empty.
    """
    if not replacement:
        raise InputError("empty replacement word")
    if i < 0 or old_len < 0 or i + old_len > len(w):
        raise InputError(f"splice window [{i}, {i + old_len}) out of range for a word of length {len(w)}")
    return w[:i] + replacement + w[i + old_len:]
