"""Permutations of parallel-class indices used to define perpendicularity."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import HasFixedPoint, NotInvolution


@dataclass(frozen=True)
class Tau:
    """A permutation ``mapping[c]`` of class indices ``0 .. r-1``.

    Construction only requires a permutation; :meth:`validate` enforces the
    fixed-point-free involution condition so that bad inputs can be held and
    reported.
    """

    mapping: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.mapping)
        if sorted(m) != list(range(len(m))):
            raise ValueError(f"{list(m)} is not a permutation of 0..{len(m) - 1}")
        object.__setattr__(self, "mapping", m)

    @property
    def r(self) -> int:
        return len(self.mapping)

    def __getitem__(self, c: int) -> int:
        return self.mapping[c]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], r: int | None = None) -> "Tau":
        pairs = [tuple(p) for p in pairs]
        size = r if r is not None else 2 * len(pairs)
        m = list(range(size))
        seen = set()
        for a, b in pairs:
            if a in seen or b in seen or not (0 <= a < size and 0 <= b < size):
                raise ValueError(f"pairs {pairs} do not form a matching on 0..{size - 1}")
            seen.update((a, b))
            m[a], m[b] = b, a
        return cls(tuple(m))

    @classmethod
    def parse(cls, text: str, r: int | None = None) -> "Tau":
        """Parse cycle notation ``(0 1)(2 3)`` or pair notation ``0-1,2-3``."""
        text = text.strip()
        if text.startswith("("):
            cycles = re.findall(r"\(([^)]*)\)", text)
            if "".join(f"({c})" for c in cycles).replace(" ", "") != text.replace(" ", ""):
                raise ValueError(f"malformed cycle notation {text!r}")
            pairs = []
            for c in cycles:
                items = [int(x) for x in re.split(r"[\s,]+", c.strip()) if x]
                if len(items) != 2:
                    raise ValueError(f"cycle ({c}) is not a transposition")
                pairs.append((items[0], items[1]))
        else:
            pairs = []
            for chunk in re.split(r"[,;]", text):
                chunk = chunk.strip()
                if not chunk:
                    continue
                a, b = re.split(r"[-:\s]+", chunk)
                pairs.append((int(a), int(b)))
        return cls.from_pairs(pairs, r)

    @classmethod
    def canonical(cls, r: int) -> "Tau":
        """The pairing (0 1)(2 3)...(r-2 r-1)."""
        if r % 2:
            raise ValueError(f"no fixed-point-free involution on {r} classes")
        return cls.from_pairs([(i, i + 1) for i in range(0, r, 2)], r)

    def pairs(self) -> list[tuple[int, int]]:
        """Transpositions ``(a, b)`` with ``a < b`` in increasing order of ``a``."""
        return [(a, b) for a, b in enumerate(self.mapping) if a < b]

    def fixed_points(self) -> list[int]:
        return [a for a, b in enumerate(self.mapping) if a == b]

    def is_involution(self) -> bool:
        return all(self.mapping[b] == a for a, b in enumerate(self.mapping))

    def validate(self) -> "Tau":
        for a, b in enumerate(self.mapping):
            if self.mapping[b] != a:
                raise NotInvolution(f"tau maps {a}->{b}->{self.mapping[b]}", (a, b, self.mapping[b]))
        fixed = self.fixed_points()
        if fixed:
            raise HasFixedPoint(f"tau fixes class {fixed[0]}", (fixed[0],))
        return self

    def __str__(self) -> str:
        if self.is_involution():
            return "".join(f"({a} {b})" for a, b in self.pairs()) or "()"
        return str(list(self.mapping))


def fixed_point_free_involutions(r: int) -> Iterator[Tau]:
    """Every fixed-point-free involution on ``r`` classes, in lexicographic order."""

    def matchings(items: tuple[int, ...]):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for idx, partner in enumerate(rest):
            for tail in matchings(rest[:idx] + rest[idx + 1:]):
                yield [(first, partner)] + tail

    if r % 2:
        return
    for m in matchings(tuple(range(r))):
        yield Tau.from_pairs(m, r)
