from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PowerSchedule:
    """Strictly increasing powers n_1 < n_2 < ... along which conditions are sampled.

    ``stride`` is set when the schedule is the arithmetic progression
    ``stride, 2*stride, ..., count*stride``.
    """

    powers: tuple[int, ...]
    stride: int | None = None

    def __post_init__(self):
        powers = tuple(int(n) for n in self.powers)
        if not powers:
            raise ValueError("a power schedule needs at least one power")
        if powers[0] < 1 or any(b <= a for a, b in zip(powers, powers[1:])):
            raise ValueError("powers must be strictly increasing positive integers")
        object.__setattr__(self, "powers", powers)
        if self.stride is not None and powers != tuple(self.stride * k for k in range(1, len(powers) + 1)):
            raise ValueError("stride does not match the powers")

    @classmethod
    def arithmetic(cls, stride: int, count: int) -> "PowerSchedule":
        if stride < 1 or count < 1:
            raise ValueError("stride and count must be >= 1")
        return cls(tuple(stride * k for k in range(1, count + 1)), stride)

    @classmethod
    def explicit(cls, powers) -> "PowerSchedule":
        return cls(tuple(powers))

    @property
    def horizon(self) -> int:
        return len(self.powers)

    @property
    def last(self) -> int:
        return self.powers[-1]

    def __iter__(self):
        return iter(self.powers)

    def __len__(self):
        return len(self.powers)
