"""Binary sequences and their aperiodic autocorrelation figures of merit.

All sidelobe and fitness arithmetic is exact (Python ints / int64 numpy).
Floating point only appears in :func:`psl_db` and :func:`merit_factor`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_P = 4


class SequenceError(ValueError):
    """Invalid binary sequence or degenerate input."""


@dataclass(frozen=True)
class BinarySequence:
    """Immutable sequence over {-1, +1}; ``elements[0]`` is b_0."""

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = tuple(int(x) for x in self.elements)
        if len(elems) < 2:
            raise SequenceError(f"sequence length must be >= 2, got {len(elems)}")
        if any(x not in (-1, 1) for x in elems):
            raise SequenceError("sequence elements must be -1 or +1")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def from_array(cls, arr: Iterable[int]) -> "BinarySequence":
        return cls(tuple(int(x) for x in arr))

    @classmethod
    def from_signs(cls, text: str) -> "BinarySequence":
        """Parse a '+'/'-' string (unicode minus accepted)."""
        table = {"+": 1, "-": -1, "−": -1}
        try:
            return cls(tuple(table[c] for c in text.strip()))
        except KeyError as exc:
            raise SequenceError(f"unexpected character {exc.args[0]!r} in sign string") from None

    @classmethod
    def ones(cls, n: int) -> "BinarySequence":
        return cls((1,) * n)

    @property
    def n(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def array(self, dtype=np.int64) -> np.ndarray:
        return np.array(self.elements, dtype=dtype)

    def signs(self) -> str:
        return "".join("+" if x > 0 else "-" for x in self.elements)

    def __str__(self) -> str:
        return self.signs()

    # symmetry transforms that preserve every |C_u|
    def reversed(self) -> "BinarySequence":
        return BinarySequence(self.elements[::-1])

    def negated(self) -> "BinarySequence":
        return BinarySequence(tuple(-x for x in self.elements))

    def alternated(self) -> "BinarySequence":
        return BinarySequence(tuple(x if i % 2 == 0 else -x for i, x in enumerate(self.elements)))

    def flipped(self, *positions: int) -> "BinarySequence":
        elems = list(self.elements)
        for i in positions:
            elems[i] = -elems[i]
        return BinarySequence(tuple(elems))


def check_profile(values: Sequence[int], n: int) -> None:
    """Raise ``SequenceError`` unless ``values`` could be C_1..C_{n-1} of a length-n sequence."""
    if len(values) != n - 1:
        raise SequenceError(f"profile of length {len(values)} does not match n={n}")
    for u, c in enumerate(values, start=1):
        if abs(c) > n - u:
            raise SequenceError(f"|C_{u}|={abs(c)} exceeds bound {n - u}")
        if (c - (n - u)) % 2:
            raise SequenceError(f"C_{u}={c} has wrong parity for n={n}")


@dataclass(frozen=True)
class SidelobeProfile:
    """Sidelobes C_1 .. C_{n-1}; ``values[u - 1]`` is C_u.

    The mainlobe C_0 = n is not stored. Construction validates the bound
    |C_u| <= n - u and the parity C_u = n - u (mod 2).
    """

    values: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        vals = tuple(int(c) for c in self.values)
        object.__setattr__(self, "values", vals)
        check_profile(vals, self.n)

    def __getitem__(self, u: int) -> int:
        """C_u for 0 <= u < n (u = 0 gives the mainlobe)."""
        if u == 0:
            return self.n
        if not 1 <= u < self.n:
            raise IndexError(u)
        return self.values[u - 1]

    def __len__(self) -> int:
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64)

    @property
    def peak(self) -> int:
        return max(abs(c) for c in self.values)

    def energy(self) -> int:
        return sum(c * c for c in self.values)

    def fitness(self, p: int = DEFAULT_P) -> int:
        check_magnitude(p)
        return sum(abs(c) ** p for c in self.values)


def check_magnitude(p: int) -> None:
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)) or p < 1:
        raise SequenceError(f"fitness magnitude must be an integer >= 1, got {p!r}")


def _coerce(seq) -> BinarySequence:
    return seq if isinstance(seq, BinarySequence) else BinarySequence.from_array(seq)


def aacf(seq) -> SidelobeProfile:
    """Aperiodic autocorrelation sidelobes C_1 .. C_{n-1}."""
    seq = _coerce(seq)
    b = seq.array()
    n = len(b)
    # full correlation is symmetric around lag 0 at index n-1
    full = np.correlate(b, b, mode="full")
    return SidelobeProfile(tuple(full[n:].tolist()), n)


def psl(seq) -> int:
    """Peak sidelobe level: max |C_u| over 0 < u < n."""
    return aacf(seq).peak


def psl_db(psl_value: int, n: int) -> float:
    """PSL in decibels relative to the mainlobe, 20*log10(psl/n)."""
    if n < 2:
        raise SequenceError(f"n must be >= 2, got {n}")
    if psl_value <= 0:
        raise SequenceError("psl_db is undefined for a zero peak sidelobe")
    return 20.0 * math.log10(psl_value / n)


def merit_factor(seq) -> float:
    """n^2 / (2 * sum C_u^2)."""
    prof = aacf(seq)
    return prof.n * prof.n / (2 * prof.energy())


def fitness(seq, p: int = DEFAULT_P) -> int:
    """Sum of |C_u|^p over all sidelobes, as an exact integer."""
    return aacf(seq).fitness(p)


def flip_delta(seq, profile: SidelobeProfile, i: int, p: int = DEFAULT_P) -> tuple[SidelobeProfile, int]:
    """Profile and fitness after flipping position ``i``, in O(n).

    ``profile`` must be the profile of ``seq`` before the flip.
    """
    seq = _coerce(seq)
    n = seq.n
    if not 0 <= i < n:
        raise IndexError(f"flip position {i} out of range for n={n}")
    if profile.n != n:
        raise SequenceError("profile length does not match sequence")
    b = seq.array()
    u = np.arange(1, n)
    right = np.where(i + u < n, b[np.minimum(i + u, n - 1)], 0)
    left = np.where(i - u >= 0, b[np.maximum(i - u, 0)], 0)
    new = profile.array() - 2 * b[i] * (right + left)
    out = SidelobeProfile(tuple(new.tolist()), n)
    return out, out.fitness(p)
