"""Finite integer sets with an explicit ambient interval.

The central object is :class:`DiscreteSet`, an immutable sorted subset of
[0, N) where N is the length of the host interval (and the modulus when
the set is read inside the cyclic group Z_N).  On top of it this module
provides the deterministic triadic Cantor construction, growth-exponent
("fractional density") estimation, prefix density profiles, quantization
of point sets from the unit interval onto an integer grid, and the
on-disk set formats.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ParameterError, SetFormatError, SizeLimitError

MAX_CANTOR_DEPTH = 16


@dataclass(frozen=True)
class DiscreteSet:
    """A strictly increasing tuple of integers inside [0, ambient)."""

    ambient: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.ambient < 1:
            raise ParameterError(f"ambient must be positive, got {self.ambient}")
        els = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", els)
        prev = -1
        for e in els:
            if e <= prev:
                raise ParameterError("elements must be strictly increasing")
            prev = e
        if els and (els[0] < 0 or els[-1] >= self.ambient):
            raise ParameterError(
                f"elements must lie in [0, {self.ambient}), got range "
                f"[{els[0]}, {els[-1]}]"
            )

    @classmethod
    def from_iterable(cls, ambient: int, items: Iterable[int]) -> "DiscreteSet":
        """Build a set from arbitrary (possibly repeated, unsorted) items."""
        return cls(ambient, tuple(sorted(set(int(x) for x in items))))

    @classmethod
    def full(cls, ambient: int) -> "DiscreteSet":
        """The whole interval [0, ambient)."""
        return cls(ambient, tuple(range(ambient)))

    @classmethod
    def from_bitmask(cls, ambient: int, mask: int) -> "DiscreteSet":
        if mask < 0 or mask.bit_length() > ambient:
            raise ParameterError("bitmask does not fit inside the ambient interval")
        return cls(ambient, tuple(i for i in range(mask.bit_length()) if mask >> i & 1))

    @property
    def cardinality(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, value: object) -> bool:
        if not isinstance(value, int):
            return False
        i = np.searchsorted(np.asarray(self.elements), value)
        return i < len(self.elements) and self.elements[i] == value

    def indicator(self) -> np.ndarray:
        """0/1 values of the characteristic function on [0, ambient)."""
        ind = np.zeros(self.ambient, dtype=np.float64)
        if self.elements:
            ind[np.asarray(self.elements)] = 1.0
        return ind

    def bitmask(self) -> int:
        """The set as a Python integer with bit e set for each element e."""
        mask = 0
        for e in self.elements:
            mask |= 1 << e
        return mask


@dataclass(frozen=True)
class DensityEstimate:
    """Finite-scale growth exponent fit: cardinality = delta_hat * ambient**alpha_hat."""

    alpha_hat: float
    delta_hat: float
    cardinality: int
    ambient: int


def cantor_build(depth: int, *, max_depth: int = MAX_CANTOR_DEPTH) -> DiscreteSet:
    """Triadic Cantor-type set of the given depth.

    Stage 0 is {1}; each stage adjoins the reflection of the previous
    stage through the right end of the tripled interval, so stage i+1 is
    C_i together with {3**(i+1) + 1 - c : c in C_i}.  The result has
    2**depth elements inside [1, 3**depth] with ambient 3**depth + 1.
    """
    if depth < 0:
        raise ParameterError(f"depth must be nonnegative, got {depth}")
    if depth > max_depth:
        raise SizeLimitError(f"depth {depth} exceeds the configured maximum {max_depth}")
    current = {1}
    for i in range(depth):
        pivot = 3 ** (i + 1) + 1
        current |= {pivot - c for c in current}
    return DiscreteSet(3**depth + 1, tuple(sorted(current)))


def fractional_density_fit(s: DiscreteSet, alpha: float | None = None) -> DensityEstimate:
    """Fit cardinality = delta * ambient**alpha for a single finite set.

    With no exponent supplied, alpha_hat = log(card)/log(ambient), which
    makes delta_hat 1 for any nonempty set; passing an explicit alpha
    instead fits only the leading constant delta_hat.
    """
    if s.ambient < 2:
        raise ParameterError("density fit needs ambient >= 2")
    card = s.cardinality
    if alpha is None:
        alpha_hat = math.log(max(card, 1)) / math.log(s.ambient)
    else:
        if not 0.0 <= alpha <= 1.0:
            raise ParameterError(f"alpha must lie in [0, 1], got {alpha}")
        alpha_hat = float(alpha)
    delta_hat = card / s.ambient**alpha_hat
    return DensityEstimate(alpha_hat, delta_hat, card, s.ambient)


def density_profile(
    s: DiscreteSet, exponent: float, checkpoints: Sequence[int]
) -> list[tuple[int, float]]:
    """Prefix counting ratios |A cap [1, n]| / n**exponent at each checkpoint.

    The sequence diverges when the exponent undershoots the growth rate
    of the set and decays to zero when it overshoots it.
    """
    if not 0.0 < exponent <= 1.0:
        raise ParameterError(f"exponent must lie in (0, 1], got {exponent}")
    if len(checkpoints) == 0:
        raise ParameterError("checkpoints must be nonempty")
    prev = 0
    for n in checkpoints:
        if n <= prev:
            raise ParameterError("checkpoints must be strictly ascending and positive")
        if n > s.ambient:
            raise ParameterError(f"checkpoint {n} exceeds ambient {s.ambient}")
        prev = n
    els = np.asarray(s.elements, dtype=np.int64)
    out = []
    for n in checkpoints:
        count = int(np.searchsorted(els, n, side="right") - np.searchsorted(els, 1, side="left"))
        out.append((int(n), count / float(n) ** exponent))
    return out


def scale_embed(points: Iterable[float], target_n: int) -> DiscreteSet:
    """Quantize points of [0, 1] onto the grid [0, target_n) via floor(x*(target_n-1))."""
    if target_n < 2:
        raise ParameterError(f"target ambient must be >= 2, got {target_n}")
    els = set()
    for x in points:
        if not 0.0 <= x <= 1.0:
            raise ParameterError(f"point {x!r} outside [0, 1]")
        els.add(int(math.floor(x * (target_n - 1))))
    return DiscreteSet(target_n, tuple(sorted(els)))


def pad_to_odd(s: DiscreteSet) -> DiscreteSet:
    """Extend the ambient interval to the next odd integer, adding no elements.

    Appending empty space changes no integer progression counts, but makes
    the set usable with the modular-spectral counting routines, which need
    an odd modulus.
    """
    if s.ambient % 2 == 1:
        return s
    return DiscreteSet(s.ambient + 1, s.elements)


# ---------------------------------------------------------------------------
# On-disk formats.  Text: first line "N <ambient>", then one ascending decimal
# element per line.  JSON: {"ambient": int, "elements": [int, ...]}.


def write_set(s: DiscreteSet, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix == ".json" else "text"
    if fmt == "text":
        lines = [f"N {s.ambient}"] + [str(e) for e in s.elements]
        path.write_text("\n".join(lines) + "\n")
    elif fmt == "json":
        path.write_text(
            json.dumps({"ambient": s.ambient, "elements": list(s.elements)}) + "\n"
        )
    else:
        raise ParameterError(f"unknown set format {fmt!r}")


def read_set(path: str | Path) -> DiscreteSet:
    path = Path(path)
    text = path.read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            payload = json.loads(text)
            return DiscreteSet(int(payload["ambient"]), tuple(payload["elements"]))
        except (json.JSONDecodeError, KeyError, TypeError, ParameterError) as exc:
            raise SetFormatError(f"{path}: invalid JSON set file ({exc})") from exc
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("N "):
        raise SetFormatError(f"{path}: first line must be 'N <ambient>'")
    try:
        ambient = int(lines[0][2:])
        elements = tuple(int(ln) for ln in lines[1:])
        return DiscreteSet(ambient, elements)
    except (ValueError, ParameterError) as exc:
        raise SetFormatError(f"{path}: invalid text set file ({exc})") from exc
