"""Words in the generators s1..s(n-1) and presentations of quotients of [p1,...,p(n-1)]^+.

A letter is a nonzero int: +i stands for s_i and -i for its inverse.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import PresentationSyntaxError


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        for x in self.letters:
            if not isinstance(x, int) or x == 0:
                raise ValueError(f"bad letter {x!r}")
        object.__setattr__(self, "letters", free_reduce(self.letters))

    @classmethod
    def power(cls, gen: int, exp: int) -> "Word":
        sign = 1 if exp >= 0 else -1
        return cls((sign * gen,) * abs(exp))

    @classmethod
    def product(cls, *parts: "Word") -> "Word":
        out: list[int] = []
        for p in parts:
            out.extend(p.letters)
        return cls(tuple(out))

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]]) -> "Word":
        """Build from (generator, exponent) pairs, e.g. [(2, 1), (1, 2)] for s2 s1^2."""
        return cls.product(*(cls.power(g, e) for g, e in terms))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def max_generator(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    def substitute(self, images: Sequence["Word"]) -> "Word":
        """Replace s_i by images[i-1]."""
        out: list[int] = []
        for x in self.letters:
            w = images[abs(x) - 1]
            out.extend(w.letters if x > 0 else w.inverse().letters)
        return Word(tuple(out))

    def shift(self, k: int) -> "Word":
        return Word(tuple(x + k if x > 0 else x - k for x in self.letters))

    def syllables(self) -> list[tuple[int, int]]:
        out: list[tuple[int, int]] = []
        for x in self.letters:
            g, s = abs(x), (1 if x > 0 else -1)
            if out and out[-1][0] == g and (out[-1][1] > 0) == (s > 0):
                out[-1] = (g, out[-1][1] + s)
            else:
                out.append((g, s))
        return out

    def render(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.syllables():
            parts.append(f"s{g}" if e == 1 else f"s{g}^{e}")
        return " ".join(parts)

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class Presentation:
    """Quotient of the rotation group [p1,...,p(n-1)]^+ by extra relators.

    The parent relators s_i^{p_i} and (s_i...s_j)^2 are implicit.
    """

    rank: int
    orders: tuple[int, ...]
    extra_relators: tuple[Word, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(p) for p in self.orders))
        rels = tuple(w if isinstance(w, Word) else Word(tuple(w)) for w in self.extra_relators)
        object.__setattr__(self, "extra_relators", tuple(w for w in rels if w))
        if self.rank < 2:
            raise ValueError("rank must be at least 2")
        if len(self.orders) != self.rank - 1:
            raise ValueError(f"rank {self.rank} needs {self.rank - 1} orders, got {len(self.orders)}")
        for p in self.orders:
            if p < 2:
                raise ValueError(f"order {p} < 2")
        for w in self.extra_relators:
            if w.max_generator() > self.ngens:
                raise ValueError(f"generator index out of range in {w}")

    @property
    def ngens(self) -> int:
        return self.rank - 1

    def parent_relators(self) -> list[Word]:
        n = self.ngens
        rels = [Word.power(i + 1, p) for i, p in enumerate(self.orders)]
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                block = tuple(range(i, j + 1))
                rels.append(Word(block + block))
        return rels

    def relators(self) -> list[Word]:
        return self.parent_relators() + list(self.extra_relators)

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        return Presentation(self.rank, self.orders, self.extra_relators + tuple(extra))

    def render(self) -> str:
        lines = [f"rank {self.rank};", "orders " + " ".join(map(str, self.orders)) + ";"]
        lines += [f"{w.render()};" for w in self.extra_relators]
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.render()


def parent_presentation(orders: Sequence[int]) -> Presentation:
    orders = tuple(orders)
    for p in orders:
        if p < 2:
            raise ValueError(f"order {p} < 2")
    return Presentation(len(orders) + 1, orders)


def relation(lhs: Word, rhs: Word) -> Word:
    """The relator L R^{-1} of the equation L = R."""
    return lhs * rhs.inverse()


_TOKEN = re.compile(r"\s*(?:(?P<kw>rank|orders)\b|(?P<int>[+-]?\d+)|(?P<gen>s\d+)|(?P<op>[\^=;])|(?P<bad>\S))")


def _tokens(text: str):
    line_starts = [0]
    for m in re.finditer("\n", text):
        line_starts.append(m.end())

    def where(pos):
        line = 0
        while line + 1 < len(line_starts) and line_starts[line + 1] <= pos:
            line += 1
        return line + 1, pos - line_starts[line] + 1

    # strip comments but keep offsets
    text = re.sub(r"#[^\n]*", lambda m: " " * len(m.group(0)), text)
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        pos = m.end()
        kind = m.lastgroup
        start = m.start(kind)
        yield kind, m.group(kind), where(start)
    yield "eof", "", where(len(text))


def parse_presentation(text: str) -> Presentation:
    """Parse `rank INT; orders INT+; (relation;)*` where relation := word ("=" word)?; the final `;` is optional."""
    toks = list(_tokens(text))
    pos = 0

    def peek():
        return toks[pos]

    def take(kind, value=None):
        nonlocal pos
        k, v, (ln, col) = toks[pos]
        if k == "bad":
            raise PresentationSyntaxError(f"unexpected character {v!r}", ln, col)
        if k != kind or (value is not None and v != value):
            want = value or kind
            got = v or "end of input"
            raise PresentationSyntaxError(f"expected {want}, got {got!r}", ln, col)
        pos += 1
        return v, (ln, col)

    take("kw", "rank")
    v, loc = take("int")
    rank = int(v)
    if rank < 2:
        raise PresentationSyntaxError("rank must be at least 2", *loc)
    take("op", ";")
    take("kw", "orders")
    orders = []
    while peek()[0] == "int":
        v, loc = take("int")
        if int(v) < 2:
            raise PresentationSyntaxError(f"order {v} < 2", *loc)
        orders.append(int(v))
    if len(orders) != rank - 1:
        ln, col = peek()[2]
        raise PresentationSyntaxError(f"rank {rank} needs {rank - 1} orders, got {len(orders)}", ln, col)
    if peek()[0] != "eof":
        take("op", ";")

    def word():
        terms = []
        while peek()[0] == "gen":
            v, loc = take("gen")
            g = int(v[1:])
            if not 1 <= g <= rank - 1:
                raise PresentationSyntaxError(f"generator index out of range: {v}", *loc)
            e = 1
            if peek()[:2] == ("op", "^"):
                take("op", "^")
                e = int(take("int")[0])
            terms.append((g, e))
        if not terms:
            k, v, (ln, col) = peek()
            if k == "bad":
                raise PresentationSyntaxError(f"unexpected character {v!r}", ln, col)
            raise PresentationSyntaxError(f"expected a generator, got {v or 'end of input'!r}", ln, col)
        return Word.from_terms(terms)

    rels = []
    while peek()[0] != "eof":
        lhs = word()
        if peek()[:2] == ("op", "="):
            take("op", "=")
            rels.append(relation(lhs, word()))
        else:
            rels.append(lhs)
        # the last terminator may be omitted
        if peek()[0] != "eof":
            take("op", ";")
    return Presentation(rank, tuple(orders), tuple(rels))


def render_presentation(pres: Presentation) -> str:
    return pres.render()
