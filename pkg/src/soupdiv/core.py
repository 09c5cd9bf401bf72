"""Shared vocabulary: sign sequences, balanced plus-minus patterns, geometric tails.

A division of scoops between two plates is a sequence of signs (+1 for plate
"+", -1 for plate "-"), indexed from scoop 1. Everything downstream (greedy
pairing, periodic search, covering certificates, the simulator) speaks in
terms of two prefix quantities:

* the sign sum   sum_{i<=k} s_i         (whole-scoop imbalance),
* the residual   sum_{i<=k} s_i * q^i   (surface-stuff imbalance, up to a
  constant factor that the simulator makes explicit).

Patterns are written as strings of '+' and '-' with the leftmost character
at exponent 1, e.g. "+---++". The Unicode minus sign is accepted on input;
output always uses the ASCII hyphen.

All arithmetic is double precision. "Equals zero" always means "within a
declared absolute tolerance", 1e-12 by default (`EvalOptions.zero_tol`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

DEFAULT_ZERO_TOL = 1e-12

_SIGN_BY_CHAR = {"+": 1, "-": -1, "−": -1}


class DomainError(ValueError):
    """A numeric argument lies outside its mathematical domain."""


class InputError(ValueError):
    """Structurally invalid input: bad sign characters, mismatched lengths, ..."""


def require_unit_open(q: float, name: str = "q") -> float:
    """Validate q in the open interval (0, 1); rejects NaN as a side effect."""
    if not (0.0 < q < 1.0):
        raise DomainError(f"{name} must lie strictly between 0 and 1, got {q!r}")
    return float(q)


def parse_signs(text: str) -> tuple[int, ...]:
    """Parse a '+'/'-' string into a tuple of +1/-1 integers."""
    signs = []
    for pos, ch in enumerate(text.strip()):
        sign = _SIGN_BY_CHAR.get(ch)
        if sign is None:
            raise InputError(f"invalid sign character {ch!r} at position {pos}")
        signs.append(sign)
    return tuple(signs)


def signs_to_text(signs: Iterable[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


def _validated_signs(signs: Iterable[int]) -> tuple[int, ...]:
    out = tuple(int(s) for s in signs)
    for pos, s in enumerate(out):
        if s not in (1, -1):
            raise InputError(f"sign at position {pos} must be +1 or -1, got {s}")
    return out


@dataclass(frozen=True)
class SignSeq:
    """A finite prefix of a division: the sign of scoop i is ``signs[i-1]``."""

    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "signs", _validated_signs(self.signs))

    @classmethod
    def from_text(cls, text: str) -> "SignSeq":
        return cls(parse_signs(text))

    def to_text(self) -> str:
        return signs_to_text(self.signs)

    def __len__(self) -> int:
        return len(self.signs)

    def __iter__(self) -> Iterator[int]:
        return iter(self.signs)


@dataclass(frozen=True)
class PMPattern:
    """A balanced plus-minus pattern: signs for exponents 1..n with sum zero.

    Balance (equal counts of '+' and '-', equivalently value zero at q=1) is
    enforced at construction, so the degree is always even. There is no
    constant term; the leftmost sign belongs to exponent 1.
    """

    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        signs = _validated_signs(self.signs)
        if not signs:
            raise InputError("pattern must be nonempty")
        if sum(signs) != 0:
            raise InputError(
                f"pattern {signs_to_text(signs)!r} is not balanced "
                f"(sign sum {sum(signs)}, must be 0)"
            )
        object.__setattr__(self, "signs", signs)

    @classmethod
    def from_text(cls, text: str) -> "PMPattern":
        return cls(parse_signs(text))

    def to_text(self) -> str:
        return signs_to_text(self.signs)

    @property
    def degree(self) -> int:
        return len(self.signs)

    def negated(self) -> "PMPattern":
        """The plate-swapped pattern (every sign flipped)."""
        return PMPattern(tuple(-s for s in self.signs))

    def __len__(self) -> int:
        return len(self.signs)

    def __iter__(self) -> Iterator[int]:
        return iter(self.signs)


@dataclass(frozen=True)
class EvalOptions:
    """Tolerance policy: |value| <= zero_tol counts as zero."""

    zero_tol: float = DEFAULT_ZERO_TOL

    def __post_init__(self) -> None:
        if not (self.zero_tol >= 0.0):
            raise InputError(f"zero_tol must be nonnegative, got {self.zero_tol!r}")


Signs = Union[SignSeq, PMPattern, str, Sequence[int]]


def as_signs(value: Signs) -> tuple[int, ...]:
    """Coerce any accepted sign-sequence form into a tuple of +1/-1."""
    if isinstance(value, (SignSeq, PMPattern)):
        return value.signs
    if isinstance(value, str):
        return parse_signs(value)
    return _validated_signs(value)


def eval_pm(pattern: Signs, q: float) -> float:
    """Evaluate sum_{i=1}^{n} signs[i] * q^i by a nested (Horner) scheme."""
    require_unit_open(q)
    signs = as_signs(pattern)
    if not signs:
        raise InputError("cannot evaluate an empty sign sequence")
    acc = 0.0
    for s in reversed(signs):
        acc = acc * q + s
    return acc * q


def prefix_diagnostics(seq: Signs, q: float) -> tuple[list[int], list[float]]:
    """Running sign sums and residuals for every prefix of ``seq``.

    Returns ``(sign_sums, residuals)`` where ``sign_sums[k-1]`` is the
    whole-scoop imbalance after scoop k and ``residuals[k-1]`` is
    sum_{i<=k} signs[i] * q^i.
    """
    require_unit_open(q)
    signs = as_signs(seq)
    if not signs:
        raise InputError("cannot diagnose an empty sign sequence")
    sign_sums: list[int] = []
    residuals: list[float] = []
    total = 0
    residual = 0.0
    power = 1.0
    for s in signs:
        power *= q
        total += s
        residual += s * power
        sign_sums.append(total)
        residuals.append(residual)
    return sign_sums, residuals


def geometric_tail(q: float, k: int) -> float:
    """Closed form of the tail sum_{i>k} q^i = q^(k+1) / (1-q)."""
    require_unit_open(q)
    if k < 0:
        raise InputError(f"k must be a nonnegative integer, got {k!r}")
    return q ** (k + 1) / (1.0 - q)
