"""Integer grading coordinates and finite computation windows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True, order=True)
class BiDegree:
    s: int
    w: int

    def coweight(self) -> int:
        return self.s - self.w

    def __add__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.s + other.s, self.w + other.w)


@dataclass(frozen=True, order=True)
class TriDegree:
    s: int
    q: int
    w: int

    def coweight(self) -> int:
        return self.s - self.w

    def bidegree(self) -> BiDegree:
        return BiDegree(self.s, self.w)

    def __add__(self, other: "TriDegree") -> "TriDegree":
        return TriDegree(self.s + other.s, self.q + other.q, self.w + other.w)

    def __sub__(self, other: "TriDegree") -> "TriDegree":
        return TriDegree(self.s - other.s, self.q - other.q, self.w - other.w)


D1_SHIFT = TriDegree(-1, 1, 0)


@dataclass(frozen=True)
class Window:
    """Rectangle in (s, w) together with a slice-filtration cap.

    A window with ``s_min > s_max`` (or ``w_min > w_max``) is empty.
    """

    s_min: int
    s_max: int
    w_min: int
    w_max: int
    q_max: int = 0

    def __post_init__(self) -> None:
        if self.q_max < 0:
            raise ValueError(f"q_max must be >= 0, got {self.q_max}")

    @classmethod
    def square(cls, radius: int, q_max: int = 0) -> "Window":
        return cls(-radius, radius, -radius, radius, q_max)

    @classmethod
    def empty(cls) -> "Window":
        return cls(0, -1, 0, -1, 0)

    def is_empty(self) -> bool:
        return self.s_min > self.s_max or self.w_min > self.w_max

    def contains(self, s: int, w: int) -> bool:
        return self.s_min <= s <= self.s_max and self.w_min <= w <= self.w_max

    def bidegrees(self) -> Iterator[BiDegree]:
        for s in range(self.s_min, self.s_max + 1):
            for w in range(self.w_min, self.w_max + 1):
                yield BiDegree(s, w)

    def tridegrees(self) -> Iterator[TriDegree]:
        for bd in self.bidegrees():
            for q in range(self.q_max + 1):
                yield TriDegree(bd.s, q, bd.w)
