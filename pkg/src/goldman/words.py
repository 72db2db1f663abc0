"""Reduced and cyclically reduced words in the free group on ``a, b``.

Uppercase letters are inverses: ``A = a^-1``, ``B = b^-1``.  A free homotopy
class of loops on a surface with free fundamental group is a conjugacy class,
stored as a :class:`CyclicWord` in canonical (least) rotation under the letter
order ``a < A < b < B``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import DomainError, ParseError

ALPHABET = "aAbB"
_INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}
_INVERT_TABLE = str.maketrans("aAbB", "AaBb")
# Translate to characters whose ASCII order matches a < A < b < B.
_TO_KEY = str.maketrans("aAbB", "0123")
_FROM_KEY = str.maketrans("0123", "aAbB")

_TOKEN = re.compile(r"\s*([aAbB])(\^\{?-1\}?)?")


def free_reduce(letters: str) -> str:
    out: list[str] = []
    for c in letters:
        if out and out[-1] == _INVERSE[c]:
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def invert(letters: str) -> str:
    return letters[::-1].translate(_INVERT_TABLE)


def sort_key(letters: str) -> str:
    """Key realizing the lexicographic letter order a < A < b < B."""
    return letters.translate(_TO_KEY)


def shortlex_key(letters: str) -> tuple[int, str]:
    return len(letters), letters.translate(_TO_KEY)


def _cyclic_reduce(letters: str) -> str:
    i, j = 0, len(letters)
    while j - i > 1 and letters[i] == _INVERSE[letters[j - 1]]:
        i += 1
        j -= 1
    return letters[i:j]


def _least_rotation(letters: str) -> str:
    if len(letters) <= 1:
        return letters
    k = letters.translate(_TO_KEY)
    doubled = k + k
    n = len(k)
    return min(doubled[i:i + n] for i in range(n)).translate(_FROM_KEY)


@dataclass(frozen=True)
class Word:
    """A freely reduced word, i.e. an element of the free group."""

    letters: str = ""

    def __post_init__(self):
        if any(c not in _INVERSE for c in self.letters):
            raise DomainError(f"letters outside {ALPHABET!r}: {self.letters!r}")
        if free_reduce(self.letters) != self.letters:
            raise DomainError(f"word {self.letters!r} is not freely reduced")

    @classmethod
    def reduce(cls, letters: str) -> "Word":
        return cls(free_reduce(letters))

    def __str__(self):
        return self.letters

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(free_reduce(self.letters + other.letters))

    def inverse(self) -> "Word":
        return Word(invert(self.letters))


@dataclass(frozen=True, order=False)
class CyclicWord:
    """Canonical cyclically reduced word; the empty word is the constant loop.

    Build instances with :func:`cyclic_canonical`; the constructor checks but
    does not repair its input.
    """

    letters: str = ""

    def __post_init__(self):
        if free_reduce(self.letters) != self.letters:
            raise DomainError(f"{self.letters!r} is not freely reduced")
        if _cyclic_reduce(self.letters) != self.letters:
            raise DomainError(f"{self.letters!r} is not cyclically reduced")
        if _least_rotation(self.letters) != self.letters:
            raise DomainError(f"{self.letters!r} is not the least rotation")

    def __str__(self):
        return self.letters

    def __len__(self):
        return len(self.letters)

    def __lt__(self, other: "CyclicWord"):
        return sort_key(self.letters) < sort_key(other.letters)

    def is_empty(self) -> bool:
        return not self.letters

    def inverse(self) -> "CyclicWord":
        return _canonical(invert(self.letters))

    def as_word(self) -> Word:
        return Word(self.letters)


def _canonical(letters: str) -> CyclicWord:
    # Skip the validating constructor on the hot path.
    obj = object.__new__(CyclicWord)
    object.__setattr__(obj, "letters", _least_rotation(_cyclic_reduce(free_reduce(letters))))
    return obj


def parse_word(text: str) -> Word:
    """Parse ``"aBab"`` or ``"a^-1b"`` style text and freely reduce it."""
    pos = 0
    letters = []
    text_end = len(text.rstrip())
    while pos < text_end:
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos
            while bad < len(text) and text[bad].isspace():
                bad += 1
            raise ParseError(f"unexpected character {text[bad]!r} at offset {bad}", offset=bad)
        c = m.group(1)
        letters.append(_INVERSE[c] if m.group(2) else c)
        pos = m.end()
    return Word(free_reduce("".join(letters)))


def parse_cyclic(text: str) -> CyclicWord:
    return cyclic_canonical(parse_word(text))


def cyclic_canonical(w: Word | str) -> CyclicWord:
    letters = w.letters if isinstance(w, Word) else w
    if any(c not in _INVERSE for c in letters):
        raise DomainError(f"letters outside {ALPHABET!r}: {letters!r}")
    return _canonical(letters)


def power(x: CyclicWord, m: int) -> CyclicWord:
    """The class of the loop traversed ``m`` times (reversed when ``m < 0``)."""
    if m == 0:
        raise DomainError("power exponent must be nonzero")
    letters = x.letters if m > 0 else invert(x.letters)
    return _canonical(letters * abs(m))


def primitive_root(x: CyclicWord) -> tuple[CyclicWord, int]:
    """Return ``(root, k)`` with ``x == power(root, k)`` and ``root`` primitive."""
    return _primitive_root(x.letters)


@lru_cache(maxsize=100_000)
def _primitive_root(w: str) -> tuple[CyclicWord, int]:
    n = len(w)
    if n == 0:
        raise DomainError("the constant loop has no primitive root")
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return _canonical(w[:d]), n // d
    raise AssertionError("unreachable")


def is_primitive(x: CyclicWord) -> bool:
    return primitive_root(x)[1] == 1


def same_root_up_to_inversion(x: CyclicWord, y: CyclicWord) -> bool:
    rx, _ = primitive_root(x)
    ry, _ = primitive_root(y)
    return rx == ry or rx == ry.inverse()


def reduced_words(max_length: int) -> Iterator[str]:
    """All freely reduced words of length <= max_length in shortlex order."""
    frontier = [""]
    yield ""
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for c in ALPHABET:
                if w and w[-1] == _INVERSE[c]:
                    continue
                nxt.append(w + c)
        yield from nxt
        frontier = nxt


def cyclic_words(max_length: int, min_length: int = 1) -> list[CyclicWord]:
    """Every conjugacy class with cyclically reduced length in the range."""
    seen = set()
    out = []
    for w in reduced_words(max_length):
        if len(w) < min_length:
            continue
        if len(w) > 1 and w[0] == _INVERSE[w[-1]]:
            continue
        c = _canonical(w)
        if c not in seen:
            seen.add(c)
            out.append(c)
    out.sort(key=lambda c: shortlex_key(c.letters))
    return out


class FormalSum:
    """Finite linear combination of free homotopy classes, exact rationals."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[CyclicWord, Fraction | int]] | dict = ()):
        acc: dict[CyclicWord, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for word, coeff in items:
            acc[word] = acc.get(word, Fraction(0)) + Fraction(coeff)
        self._terms = {w: c for w, c in acc.items() if c != 0}

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls()

    @property
    def terms(self) -> dict[CyclicWord, Fraction]:
        return dict(self._terms)

    def add(self, coeff, x: CyclicWord) -> "FormalSum":
        """Return ``self + coeff * x``; the receiver is left unchanged."""
        out = dict(self._terms)
        out[x] = out.get(x, Fraction(0)) + Fraction(coeff)
        return FormalSum(out)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, x: CyclicWord) -> Fraction:
        return self._terms.get(x, Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items(), key=lambda t: sort_key(t[0].letters)))

    def __add__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "FormalSum":
        return FormalSum({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def scale(self, c) -> "FormalSum":
        c = Fraction(c)
        return FormalSum({w: c * v for w, v in self._terms.items()})

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def term_count(self) -> int:
        """Number of terms counted with multiplicity (sum of |coefficients|)."""
        return int(sum(abs(c) for c in self._terms.values()))

    def to_json(self) -> list[dict]:
        return [
            {"coeff": f"{c.numerator}/{c.denominator}", "word": w.letters}
            for w, c in self
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "FormalSum":
        return cls((cyclic_canonical(d["word"]), Fraction(d["coeff"])) for d in data)

    def __repr__(self):
        if not self._terms:
            return "FormalSum(0)"
        parts = [f"{c}*{w.letters or '1'}" for w, c in self]
        return "FormalSum(" + " + ".join(parts) + ")"
