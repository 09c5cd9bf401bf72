"""Covering certificates and the block construction of boundedly fair divisions.

The workhorse is the family of alternating balanced patterns

    pn_pattern(n) = "+" then alternating "+-" pairs then "-",   degree 2n,

whose values P_n(q) = q - q^(2n) + (q^2 - q^(2n)) / (1+q) increase to the
limit P_inf(q) = q + q^2/(1+q). A *certificate* for q is the verified fact
that the values P_1(q) <= ... <= P_N(q) cover the segment [0, A] with
A = P_N(q)/(1 - q^(2N)): every x0 in [0, A] lies within A*q^(2n) of some
P_n(q). Three inequality families make that true:

* gap:       |P_{n+1}(q) - P_n(q)| <= A * (q^(2n) + q^(2n+2)),
* base:      A * q^2 >= P_1(q),
* endpoint:  P_N(q) + A * q^(2N) >= A   (forced by the definition of A).

The gap inequality reduces to the constant ratio (2-q-q^2)/(1+q^2) <= A,
and since A climbs to P_inf(q), certificates exist for every q above
q_infinity, the unique positive root of x^4 + x^3 + 2x^2 - 1 (about
0.5845751). Below 1/sqrt(3) no single-chain family of this shape can work
(:func:`sqrt3_necessary`).

Given a certificate, :func:`construct_bounded` assembles a division out of
balanced blocks of degree <= 2N: each block cancels the current residual to
within A*q^k, so the residual decays geometrically while the sign sum
returns to zero at every block end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from .core import DomainError, InputError, PMPattern, SignSeq, require_unit_open

# Additive slack on every certificate inequality; double precision cannot
# certify exact-real inequalities tighter than this at unit scale.
CERT_TOL = 1e-12

DEFAULT_N_MAX = 64

_QINF_BRACKET = (0.5, 0.6)


class CertificateError(RuntimeError):
    """No covering certificate could be produced; carries the failure detail."""

    def __init__(self, failure: "CertificateFailure"):
        self.failure = failure
        super().__init__(
            f"no covering certificate for q={failure.q!r} up to N={failure.N}: "
            f"{failure.family} inequality fails at n={failure.index} "
            f"({failure.lhs!r} vs {failure.rhs!r})"
        )


def pn_pattern(n: int) -> PMPattern:
    """Alternating balanced pattern of degree 2n: '+' at exponent 1, then
    sign (-1)^i at exponents 2..2n-1, then '-' at exponent 2n."""
    if n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    signs = [1]
    signs.extend(1 if i % 2 == 0 else -1 for i in range(2, 2 * n))
    signs.append(-1)
    return PMPattern(tuple(signs))


def pn_value(q: float, n: Union[int, float]) -> float:
    """Closed-form value of pn_pattern(n) at q; n=math.inf gives the limit."""
    require_unit_open(q)
    if n == math.inf:
        return q + q * q / (1.0 + q)
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer or math.inf, got {n!r}")
    q2n = q ** (2 * n)
    return q - q2n + (q * q - q2n) / (1.0 + q)


def qinf_poly(x: float) -> float:
    """The quartic x^4 + x^3 + 2x^2 - 1 whose positive root separates the
    certifiable regime from the open one."""
    return ((x + 1.0) * x + 2.0) * x * x - 1.0


def q_infinity(tol: float = 1e-12) -> float:
    """Root of :func:`qinf_poly` in (0.5, 0.6) by bisection to width <= tol."""
    if not tol > 0.0:
        raise InputError(f"tol must be positive, got {tol!r}")
    lo, hi = _QINF_BRACKET
    f_lo = qinf_poly(lo)
    if not (f_lo < 0.0 < qinf_poly(hi)):
        raise RuntimeError("sign bracket for the threshold quartic is broken")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = qinf_poly(mid)
        if f_mid == 0.0:
            return mid
        if (f_lo < 0.0) != (f_mid < 0.0):
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def covering_ratio(q: float) -> float:
    """The constant (2 - q - q^2) / (1 + q^2) that every gap inequality
    reduces to; a certificate needs it to be <= A."""
    return (2.0 - q - q * q) / (1.0 + q * q)


@dataclass(frozen=True)
class InequalityCheck:
    """One verified inequality, stored as lhs <= rhs (ok iff it held)."""

    lhs: float
    rhs: float
    ok: bool


@dataclass(frozen=True)
class CertificateChecks:
    """Outcome of the three inequality families plus the two diagnostics."""

    gap: Optional[InequalityCheck]  # tightest |P_{n+1}-P_n| vs A*(q^2n + q^(2n+2)); None when N=1
    base: InequalityCheck           # P_1(q) vs A*q^2
    endpoint: InequalityCheck       # A vs P_N(q) + A*q^2N
    ratio: float                    # covering_ratio(q)
    p_limit: float                  # pn_value(q, inf)


@dataclass(frozen=True)
class Certificate:
    """A verified witness that the values P_1(q)..P_N(q) cover [0, A]."""

    q: float
    N: int
    A: float
    pn_values: tuple[float, ...]
    checks: CertificateChecks


@dataclass(frozen=True)
class CertificateFailure:
    """First violated inequality, with both sides and the diagnostics."""

    q: float
    N: int
    A: float
    family: str  # "gap" | "base" | "endpoint"
    index: int
    lhs: float
    rhs: float
    ratio: float
    p_limit: float


def verify_certificate(q: float, N: int) -> Union[Certificate, CertificateFailure]:
    """Compute A = P_N(q)/(1 - q^(2N)) and verify the covering inequalities.

    The gap family is scanned first (ascending n), then the base inequality,
    then the endpoint bound: when certification fails, the gap defect (the
    ratio exceeding A) is the informative diagnostic, while the base
    inequality also fails at every N for the same q. All comparisons carry
    an additive slack of 1e-12.
    """
    if not (0.5 < q < 1.0):
        raise DomainError(f"q must lie strictly between 1/2 and 1, got {q!r}")
    if N < 1:
        raise InputError(f"N must be a positive integer, got {N!r}")

    values = tuple(pn_value(q, n) for n in range(1, N + 1))
    A = values[-1] / (1.0 - q ** (2 * N))
    ratio = covering_ratio(q)
    p_limit = pn_value(q, math.inf)

    def failure(family: str, index: int, lhs: float, rhs: float) -> CertificateFailure:
        return CertificateFailure(
            q=q, N=N, A=A, family=family, index=index, lhs=lhs, rhs=rhs,
            ratio=ratio, p_limit=p_limit,
        )

    worst_gap: Optional[InequalityCheck] = None
    for n in range(1, N):
        lhs = abs(values[n] - values[n - 1])
        rhs = A * (q ** (2 * n) + q ** (2 * n + 2))
        if lhs > rhs + CERT_TOL:
            return failure("gap", n, lhs, rhs)
        if worst_gap is None or lhs - rhs > worst_gap.lhs - worst_gap.rhs:
            worst_gap = InequalityCheck(lhs=lhs, rhs=rhs, ok=True)

    base_lhs, base_rhs = values[0], A * q * q
    if base_lhs > base_rhs + CERT_TOL:
        return failure("base", 1, base_lhs, base_rhs)

    end_lhs, end_rhs = A, values[-1] + A * q ** (2 * N)
    if end_lhs > end_rhs + CERT_TOL:
        return failure("endpoint", N, end_lhs, end_rhs)

    checks = CertificateChecks(
        gap=worst_gap,
        base=InequalityCheck(lhs=base_lhs, rhs=base_rhs, ok=True),
        endpoint=InequalityCheck(lhs=end_lhs, rhs=end_rhs, ok=True),
        ratio=ratio,
        p_limit=p_limit,
    )
    return Certificate(q=q, N=N, A=A, pn_values=values, checks=checks)


def auto_certificate(
    q: float, n_max: int = DEFAULT_N_MAX
) -> Union[Certificate, CertificateFailure]:
    """Try N = 1, 2, 4, ... up to n_max; return the first certificate.

    Doubling reaches the asymptotic regime (A close to its limit) in a
    logarithmic number of attempts. On total failure the result carries the
    diagnostics of the largest N tried.
    """
    if n_max < 1:
        raise InputError(f"n_max must be a positive integer, got {n_max!r}")
    result: Union[Certificate, CertificateFailure, None] = None
    N = 1
    while N <= n_max:
        result = verify_certificate(q, N)
        if isinstance(result, Certificate):
            return result
        N *= 2
    assert result is not None
    return result


class ApproxStep(NamedTuple):
    n: int
    pattern: PMPattern
    residual: float  # x0 - P_n(q)


def approximate_step(x0: float, cert: Certificate) -> ApproxStep:
    """Smallest n with |x0 - P_n(q)| <= A*q^(2n), plus pattern and residual.

    The certificate's covering inequalities guarantee such an n exists for
    every x0 in [0, A]; comparisons reuse the certificate slack so the
    guarantee survives floating point.
    """
    if x0 < -CERT_TOL or x0 > cert.A + CERT_TOL:
        raise DomainError(f"x0={x0!r} outside the covered segment [0, {cert.A!r}]")
    q = cert.q
    for n in range(1, cert.N + 1):
        residual = x0 - cert.pn_values[n - 1]
        if abs(residual) <= cert.A * q ** (2 * n) + CERT_TOL:
            return ApproxStep(n=n, pattern=pn_pattern(n), residual=residual)
    raise RuntimeError(
        f"certificate invariant broken: no admissible n for x0={x0!r} "
        f"(q={q!r}, N={cert.N})"
    )


@dataclass(frozen=True)
class FairDivisionPlan:
    """A constructed division: signs, block boundaries, residuals, certificate.

    ``block_ends[m]`` is the scoop count after m blocks (starting at 0) and
    ``residuals_at_blocks[m]`` the residual there, bounded by A * q^block_end.
    Every block is balanced, so sign prefix sums vanish at block ends and
    never exceed 2N in absolute value anywhere.
    """

    seq: SignSeq
    block_ends: tuple[int, ...]
    residuals_at_blocks: tuple[float, ...]
    certificate: Certificate


def construct_bounded(
    q: float,
    min_scoops: int,
    cert: Optional[Certificate] = None,
) -> FairDivisionPlan:
    """Build a boundedly fair division of at least ``min_scoops`` scoops.

    Starting from residual r = 0 at scoop 0, each step rescales the residual
    to x0 = |r| / q^k in [0, A], picks the shortest admissible block via
    :func:`approximate_step`, and appends it negated when r > 0 so the block
    cancels the residual (a zero residual takes the un-negated branch, so
    runs open with "+-"). The new residual obeys |r'| <= A * q^(k + 2n).
    """
    if min_scoops < 2:
        raise InputError(f"min_scoops must be at least 2, got {min_scoops!r}")
    if cert is None:
        result = auto_certificate(q)
        if isinstance(result, CertificateFailure):
            raise CertificateError(result)
        cert = result
    elif cert.q != q:
        raise InputError(f"certificate was issued for q={cert.q!r}, not q={q!r}")

    signs: list[int] = []
    block_ends = [0]
    residuals = [0.0]
    r = 0.0
    k = 0
    while k < min_scoops:
        q_pow_k = q ** k
        x0 = abs(r) / q_pow_k if (q_pow_k > 0.0 and r != 0.0) else 0.0
        # Clamp accumulated float drift back onto the covered segment; the
        # drift per block is below the certificate slack.
        x0 = min(x0, cert.A)
        step = approximate_step(x0, cert)
        if r > 0.0:
            signs.extend(-s for s in step.pattern.signs)
            r = q_pow_k * step.residual
        else:
            signs.extend(step.pattern.signs)
            r = -q_pow_k * step.residual
        k += 2 * step.n
        block_ends.append(k)
        residuals.append(r)
    return FairDivisionPlan(
        seq=SignSeq(tuple(signs)),
        block_ends=tuple(block_ends),
        residuals_at_blocks=tuple(residuals),
        certificate=cert,
    )


def sqrt3_necessary(q: float) -> bool:
    """True iff q > 1/sqrt(3), i.e. 2q^2/(1-q^2) > 1 holds.

    For q at or below the threshold the covering balls of any single-chain
    family (degrees 2, 4, ..., 2n) are too short to cover [0, A], so no
    certificate of this shape can exist. The comparison is strict, keeping
    the nearest float to 1/sqrt(3) itself on the False side.
    """
    require_unit_open(q)
    return q > 1.0 / math.sqrt(3.0)
