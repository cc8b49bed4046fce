"""Free-group words in syllable form and finite presentations.

A word is a tuple of ``(generator, exponent)`` syllables, e.g. ``a^2 b^-1`` is
``((0, 2), (1, -1))``.  Words are always freely reduced.

Presentation text format::

    # comment
    gens: a b
    rel: a^4
    rel: [a, b] (a b)^-2
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import PresentationSyntaxError

__all__ = [
    "Word",
    "Presentation",
    "reduce",
    "multiply",
    "invert",
    "power",
    "commutator",
    "parse_word",
    "parse_presentation",
    "print_presentation",
    "format_word",
]


def reduce(raw: Iterable[tuple[int, int]]) -> "Word":
    """Freely reduce a raw syllable list."""
    out: list[list[int]] = []
    for g, e in raw:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return Word(tuple((g, e) for g, e in out))


@dataclass(frozen=True, order=True)
class Word:
    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = None
        for g, e in self.syllables:
            if e == 0 or g == prev or g < 0:
                raise ValueError(f"not a freely reduced word: {self.syllables!r}")
            prev = g

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "Word":
        return cls(((g, e),)) if e else cls()

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> "Word":
        """Build from signed letters: ``g+1`` for a generator, ``-(g+1)`` for its inverse."""
        return reduce((abs(x) - 1, 1 if x > 0 else -1) for x in letters)

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def __invert__(self) -> "Word":
        return invert(self)

    def is_identity(self) -> bool:
        return not self.syllables

    def max_generator(self) -> int:
        return max((g for g, _ in self.syllables), default=-1)

    def columns(self):
        """Yield coset-table columns letter by letter (``2g`` for g, ``2g+1`` for g^-1)."""
        for g, e in self.syllables:
            col = 2 * g if e > 0 else 2 * g + 1
            for _ in range(abs(e)):
                yield col

    def exponent_sums(self, ngens: int) -> list[int]:
        sums = [0] * ngens
        for g, e in self.syllables:
            sums[g] += e
        return sums


def multiply(u: Word, v: Word) -> Word:
    a = list(u.syllables)
    b = list(v.syllables)
    i = 0
    # only the junction can cancel
    while a and i < len(b) and a[-1][0] == b[i][0]:
        g = a[-1][0]
        e = a[-1][1] + b[i][1]
        a.pop()
        i += 1
        if e:
            a.append((g, e))
            break
    return Word(tuple(a) + tuple(b[i:]))


def invert(u: Word) -> Word:
    return Word(tuple((g, -e) for g, e in reversed(u.syllables)))


def power(u: Word, n: int) -> Word:
    if n == 0 or not u:
        return Word()
    if n < 0:
        return power(invert(u), -n)
    # conjugate the cyclically reduced core: u = c w c^-1
    syl = list(u.syllables)
    lo, hi = 0, len(syl) - 1
    while lo < hi and syl[lo][0] == syl[hi][0] and syl[lo][1] == -syl[hi][1]:
        lo += 1
        hi -= 1
    prefix = Word(tuple(syl[:lo]))
    core = syl[lo:hi + 1]
    if len(core) == 1:
        g, e = core[0]
        body = Word(((g, e * n),))
    elif core[0][0] == core[-1][0]:
        # first and last syllables merge across the seam
        g = core[0][0]
        mid = core[1:-1]
        seam = (g, core[-1][1] + core[0][1])
        parts = [core[0]] + mid
        for _ in range(n - 1):
            parts.append(seam)
            parts.extend(mid)
        parts.append(core[-1])
        body = reduce(parts)
    else:
        body = Word(tuple(core) * n)
    return multiply(multiply(prefix, body), invert(prefix))


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u^-1 v^-1 u v``."""
    return multiply(multiply(invert(u), invert(v)), multiply(u, v))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError(f"duplicate generator names: {self.generators}")
        for name in self.generators:
            if not _NAME.fullmatch(name):
                raise ValueError(f"invalid generator name {name!r}")
        n = len(self.generators)
        for r in self.relators:
            if r.max_generator() >= n:
                raise ValueError(f"relator {r} uses a generator index >= {n}")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def with_relators(self, extra: Sequence[Word]) -> "Presentation":
        return Presentation(self.generators, self.relators + tuple(extra))

    def normalize(self) -> tuple["Presentation", list[int]]:
        """Drop trivial and duplicate relators; return the new presentation and the dropped indices."""
        seen = set()
        kept, dropped = [], []
        for i, r in enumerate(self.relators):
            if not r or r in seen:
                dropped.append(i)
            else:
                seen.add(r)
                kept.append(r)
        return Presentation(self.generators, tuple(kept)), dropped

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format(self, w: Word) -> str:
        return format_word(w, self.generators)

    def __str__(self):
        rels = ", ".join(self.format(r) for r in self.relators)
        return f"< {' '.join(self.generators)} | {rels} >" if rels else f"< {' '.join(self.generators)} | >"


# ---------------------------------------------------------------- text format

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[+-]?\d+)|(?P<sym>[()\[\],^]))")


def format_word(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in w.syllables)


def _tokenize(text: str, line: int, col0: int):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text[pos:]) - len(text[pos:].lstrip())
            raise PresentationSyntaxError(f"unexpected character {text[pos + bad]!r}", line, col0 + pos + bad + 1)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), col0 + start + 1))
        pos = m.end()
    return toks


class _WordParser:
    def __init__(self, toks, names, line):
        self.toks = toks
        self.i = 0
        self.index = {n: k for k, n in enumerate(names)}
        self.line = line

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, None)

    def error(self, msg, col=None):
        if col is None:
            col = self.peek()[2]
            if col is None:
                col = self.toks[-1][2] + len(self.toks[-1][1]) if self.toks else 1
        raise PresentationSyntaxError(msg, self.line, col)

    def expect(self, sym):
        kind, val, col = self.peek()
        if kind != "sym" or val != sym:
            self.error(f"expected {sym!r}")
        self.i += 1

    def word(self, stop=()):
        w = Word()
        count = 0
        while True:
            kind, val, _ = self.peek()
            if kind is None or (kind == "sym" and val in stop):
                break
            w = multiply(w, self.term())
            count += 1
        if count == 0:
            self.error("empty word")
        return w

    def term(self):
        a = self.atom()
        kind, val, _ = self.peek()
        if kind == "sym" and val == "^":
            self.i += 1
            kind, val, col = self.peek()
            if kind != "int":
                self.error("expected an integer exponent")
            n = int(val)
            if n == 0:
                self.error("exponent must be nonzero", col)
            self.i += 1
            a = power(a, n)
        return a

    def atom(self):
        kind, val, col = self.peek()
        if kind == "name":
            if val not in self.index:
                self.error(f"unknown generator {val!r}", col)
            self.i += 1
            return Word.gen(self.index[val])
        if kind == "sym" and val == "(":
            self.i += 1
            w = self.word(stop=(")",))
            self.expect(")")
            return w
        if kind == "sym" and val == "[":
            self.i += 1
            u = self.word(stop=(",",))
            self.expect(",")
            v = self.word(stop=("]",))
            self.expect("]")
            return commutator(u, v)
        self.error("expected a generator, '(' or '['")


def parse_word(text: str, names: Sequence[str], line: int = 1, col0: int = 0) -> Word:
    toks = _tokenize(text, line, col0)
    if len(toks) == 1 and toks[0][0] == "int" and toks[0][1] == "1":
        return Word()
    parser = _WordParser(toks, names, line)
    w = parser.word()
    if parser.i != len(toks):
        parser.error("trailing input")
    return w


def parse_presentation(text: str) -> Presentation:
    gens = None
    rels = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "rel"):
            col = len(raw) - len(raw.lstrip()) + 1
            raise PresentationSyntaxError("expected 'gens:' or 'rel:'", lineno, col)
        offset = len(key) + (len(line) - len(line.lstrip())) + 1
        if key == "gens":
            if gens is not None:
                raise PresentationSyntaxError("duplicate 'gens:' line", lineno, 1)
            if rels:
                raise PresentationSyntaxError("'gens:' must come before relators", lineno, 1)
            names = rest.split()
            for m in re.finditer(r"\S+", rest):
                if not _NAME.fullmatch(m.group()):
                    raise PresentationSyntaxError(f"bad generator name {m.group()!r}", lineno, offset + m.start() + 1)
            if len(set(names)) != len(names):
                raise PresentationSyntaxError("duplicate generator name", lineno, offset + 1)
            gens = tuple(names)
        else:
            if gens is None:
                raise PresentationSyntaxError("relator before 'gens:'", lineno, 1)
            rels.append(parse_word(rest, gens, lineno, offset))
    if gens is None:
        raise PresentationSyntaxError("missing 'gens:' line", 1, 1)
    return Presentation(gens, tuple(rels))


def print_presentation(P: Presentation) -> str:
    lines = ["gens: " + " ".join(P.generators)]
    lines += ["rel: " + format_word(r, P.generators) for r in P.relators]
    return "\n".join(lines) + "\n"
