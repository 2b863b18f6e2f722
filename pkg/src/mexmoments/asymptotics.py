"""Asymptotic layer: log-space closed forms and the analytic machinery
behind them.

Exact moment values grow like exp(pi * sqrt(2n/3)), so everything here is
carried as a LogValue (sign plus natural log of the magnitude) and big
integers only ever enter through a mantissa/exponent log extraction.

The pieces fit together in a chain that the tests re-run numerically:

* weighted partial theta sums and their Euler-Maclaurin-style expansion
  (with exact Bernoulli-polynomial coefficients),
* the modular inversion estimate for the Euler product at q = e^-t,
* a Tauberian transfer from t -> 0+ behaviour of a generating function to
  n -> infinity behaviour of its coefficients,
* the resulting closed-form growth laws for both moment families, and
  ratio helpers for comparing exact sequences against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mexmoments import qseries
from mexmoments.errors import ResourceCapError, ValidationError
from mexmoments.partitions import MexParams

LOG_2PI = math.log(2.0 * math.pi)


# ---------------------------------------------------------------------------
# log-space values


@dataclass(frozen=True)
class LogValue:
    """A real number stored as (sign, ln |x|); sign 0 means exactly zero."""

    sign: int
    log_abs: float

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValidationError(f"sign must be -1, 0 or +1, got {self.sign}")
        if self.sign == 0 and self.log_abs != 0.0:
            object.__setattr__(self, "log_abs", 0.0)

    @classmethod
    def from_int(cls, x: int) -> "LogValue":
        """Exact integer to log-space; relative error of the log is a few
        ulp even for integers far beyond float range."""
        if x == 0:
            return cls(0, 0.0)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_float(cls, x: float) -> "LogValue":
        if x == 0.0:
            return cls(0, 0.0)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    def __mul__(self, other: "LogValue") -> "LogValue":
        if self.sign == 0 or other.sign == 0:
            return LogValue(0, 0.0)
        return LogValue(self.sign * other.sign, self.log_abs + other.log_abs)

    def __truediv__(self, other: "LogValue") -> "LogValue":
        if other.sign == 0:
            raise ZeroDivisionError("division by an exactly-zero LogValue")
        if self.sign == 0:
            return LogValue(0, 0.0)
        return LogValue(self.sign * other.sign, self.log_abs - other.log_abs)

    def to_float(self) -> float:
        """Collapse to a float; overflows saturate to +-inf."""
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_abs)
        except OverflowError:
            return self.sign * math.inf


# ---------------------------------------------------------------------------
# Bernoulli polynomials (exact rational coefficients)


@lru_cache(maxsize=None)
def bernoulli_number(m: int) -> Fraction:
    """B_m in the generating-function convention (B_1 = -1/2), exact."""
    if m < 0:
        raise ValidationError(f"m must be >= 0, got {m}")
    if m == 0:
        return Fraction(1)
    acc = Fraction(0)
    for k in range(m):
        acc += math.comb(m + 1, k) * bernoulli_number(k)
    return -acc / (m + 1)


@lru_cache(maxsize=None)
def bernoulli_poly_coeffs(m: int) -> tuple[Fraction, ...]:
    """Coefficients c_0..c_m of B_m(x) = sum_j c_j x^j, exact."""
    if m < 0:
        raise ValidationError(f"m must be >= 0, got {m}")
    return tuple(math.comb(m, j) * bernoulli_number(m - j) for j in range(m + 1))


def bernoulli_poly(m: int, x: float) -> float:
    """B_m(x): exact coefficients, floating-point Horner evaluation."""
    acc = 0.0
    for c in reversed(bernoulli_poly_coeffs(m)):
        acc = acc * x + float(c)
    return acc


def bernoulli_poly_exact(m: int, x: Fraction) -> Fraction:
    """B_m(x) as an exact rational, for rational x."""
    acc = Fraction(0)
    for c in reversed(bernoulli_poly_coeffs(m)):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# weighted partial theta sums


def _theta_args(u: float, r: int, t: float) -> None:
    if not u > 0:
        raise ValidationError(f"u must be > 0, got {u}")
    if not t > 0:
        raise ValidationError(f"t must be > 0, got {t}")
    if r < 0:
        raise ValidationError(f"r must be >= 0, got {r}")


def partial_theta_sum(u: float, r: int, t: float, dps: int | None = None):
    """sum_{n>=0} (n+u)^r exp(-(n+u)^2 t^2) by direct summation.

    Terms are accumulated until, past the peak, they fall below 1e-18 of
    the running total, plus a fixed safety margin of eight further terms.
    With ``dps`` set, the same sum is evaluated with mpmath at that many
    decimal digits (needed by remainder-order checks whose scale sits far
    below double precision) and an mpf is returned.
    """
    _theta_args(u, r, t)
    if dps is not None:
        return _partial_theta_sum_mp(u, r, t, dps)
    terms = []
    total = 0.0
    prev = math.inf
    tail = 0
    n = 0
    while True:
        x = (n + u) * t
        term = (n + u) ** r * math.exp(-(x * x))
        terms.append(term)
        total += term
        past_peak = term <= prev
        prev = term
        n += 1
        if past_peak and (term <= total * 1e-18 or term == 0.0):
            tail += 1
            if tail >= 8:
                break
    return math.fsum(terms)


def _partial_theta_sum_mp(u: float, r: int, t: float, dps: int):
    from mpmath import mp, mpf

    with mp.workdps(dps):
        uu = mpf(u)
        tt = mpf(t)
        cutoff = mpf(10) ** (-(dps + 10))
        total = mpf(0)
        prev = None
        tail = 0
        n = 0
        while True:
            base = uu + n
            term = base**r * mp.exp(-((base * tt) ** 2))
            total += term
            past_peak = prev is None or term <= prev
            prev = term
            n += 1
            if past_peak and term <= total * cutoff:
                tail += 1
                if tail >= 8:
                    return total


def partial_theta_expansion(
    u: float, r: int, t: float, N: int, sign_corrected: bool = True, dps: int | None = None
):
    """Small-t expansion of the weighted partial theta sum:

        Gamma((r+1)/2) / (2 t^(r+1))
          - sum_{n=0}^{N-1} (-1)^n B_{2n+r+1}(u) t^(2n) / ((2n+r+1) n!)

    with remainder O(t^(2N)).  The minus sign in front of the correction
    sum is the correct one; ``sign_corrected=False`` evaluates the flipped
    variant so tests can demonstrate that it breaks the remainder order.
    """
    _theta_args(u, r, t)
    if N < 1:
        raise ValidationError(f"N must be >= 1, got {N}")
    if dps is not None:
        return _partial_theta_expansion_mp(u, r, t, N, sign_corrected, dps)
    lead = math.gamma((r + 1) / 2) / (2.0 * t ** (r + 1))
    corr = math.fsum(
        (-1) ** n
        * bernoulli_poly(2 * n + r + 1, u)
        * t ** (2 * n)
        / ((2 * n + r + 1) * math.factorial(n))
        for n in range(N)
    )
    return lead - corr if sign_corrected else lead + corr


def _partial_theta_expansion_mp(
    u: float, r: int, t: float, N: int, sign_corrected: bool, dps: int
):
    from mpmath import mp, mpf

    with mp.workdps(dps):
        tt = mpf(t)
        ux = Fraction(u)
        lead = mp.gamma(mpf(r + 1) / 2) / (2 * tt ** (r + 1))
        corr = mpf(0)
        for n in range(N):
            b = bernoulli_poly_exact(2 * n + r + 1, ux)
            term = (
                (-1) ** n
                * (mpf(b.numerator) / b.denominator)
                * tt ** (2 * n)
                / ((2 * n + r + 1) * math.factorial(n))
            )
            corr += term
        return lead - corr if sign_corrected else lead + corr


def theta_remainder_coefficient(u: float, r: int, N: int) -> Fraction:
    """Exact leading coefficient of the expansion remainder, i.e. the
    n = N correction term's B_{2N+r+1}(u) / ((2N+r+1) N!).

    When this vanishes (Bernoulli polynomials of odd index are zero at
    x = 1/2 and x = 1) the remainder drops below every power of t and a
    t^(2N) order check is meaningless; callers use this to detect that.
    """
    b = bernoulli_poly_exact(2 * N + r + 1, Fraction(u))
    return b / ((2 * N + r + 1) * math.factorial(N))


# ---------------------------------------------------------------------------
# Tauberian transfer


@dataclass(frozen=True)
class InghamParams:
    """Growth data of a generating function at q = e^-t:
    F(e^-t) ~ lam * t^alpha * exp(growth_A / t) as t -> 0+."""

    lam: float
    alpha: float
    growth_A: float

    def __post_init__(self) -> None:
        if not self.lam > 0:
            raise ValidationError(f"lam must be > 0, got {self.lam}")
        if not self.growth_A > 0:
            raise ValidationError(f"growth_A must be > 0, got {self.growth_A}")


def ingham_transfer(p: InghamParams, n: int) -> LogValue:
    """Coefficient growth implied by the Tauberian transfer:

        f(n) ~ lam / (2 sqrt(pi)) * A^(alpha/2 + 1/4)
               / n^(alpha/2 + 3/4) * exp(2 sqrt(A n)).
    """
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    log_val = (
        math.log(p.lam)
        - math.log(2.0 * math.sqrt(math.pi))
        + (p.alpha / 2 + 0.25) * math.log(p.growth_A)
        - (p.alpha / 2 + 0.75) * math.log(n)
        + 2.0 * math.sqrt(p.growth_A * n)
    )
    return LogValue(1, log_val)


def qexpansion_ingham_params(kind: str, s: int, M: int, r: int) -> InghamParams:
    """Ingham input data read off the t -> 0+ estimate of each moment
    generating function at q = e^-t:

        sigma, r = 0:   lam = 1/(sqrt(2 pi) M),                alpha = 1/2
        sigma, r >= 1:  lam = 2^((r-3)/2) pi^(-1/2) M^(-1)
                              s^(-r/2) r Gamma(r/2),           alpha = (1-r)/2
        varsigma, r >= 1: same with M^(r/2) in place of M^(-1)
        varsigma, r = 0:  lam = 1/sqrt(2 pi)                   (plain p(n))

    growth_A is pi^2/6 throughout.
    """
    if kind not in qseries.VALID_KINDS:
        raise ValidationError(f"kind must be one of {qseries.VALID_KINDS}, got {kind!r}")
    if s < 1 or M < 1 or r < 0:
        raise ValidationError(f"invalid (s, M, r) = ({s}, {M}, {r})")
    growth = math.pi**2 / 6.0
    if r == 0:
        lam = 1.0 / math.sqrt(2.0 * math.pi)
        if kind == "sigma":
            lam /= M
        return InghamParams(lam, 0.5, growth)
    lam = 2.0 ** ((r - 3) / 2) / math.sqrt(math.pi) * s ** (-r / 2) * r * math.gamma(r / 2)
    lam *= M ** (r / 2) if kind == "varsigma" else 1.0 / M
    return InghamParams(lam, (1 - r) / 2, growth)


def gf_boundary_log(kind: str, p: MexParams, t: float, order: int | None = None) -> float:
    """log of the moment generating function evaluated at q = e^-t from
    exact coefficients: log sum_{n<=N} value(n) e^(-nt).

    The summand peaks near n* = (pi^2/6)/t^2 and dies off past 4 n*, so
    the default truncation order 6 n* makes the dropped tail negligible
    at double precision.  Together with qexpansion_ingham_params this
    cross-checks the intermediate t -> 0+ estimates directly against the
    exact sequences, independently of the Tauberian transfer.
    """
    if not 0 < t <= 1:
        raise ValidationError(f"t must satisfy 0 < t <= 1, got {t}")
    growth = math.pi**2 / 6.0
    if order is None:
        order = max(256, math.ceil(6.0 * growth / (t * t)))
    seq = qseries.moment_sequence(kind, p, order)
    # Factor out the peak magnitude so the float sum cannot overflow.
    peak = growth / t
    total = math.fsum(
        math.exp(LogValue.from_int(v).log_abs - n * t - peak)
        for n, v in enumerate(seq.values)
        if v
    )
    return math.log(total) + peak


# ---------------------------------------------------------------------------
# eta-style product inversion


def eta_inversion_check(t: float, max_terms: int = 1_000_000) -> tuple[float, float]:
    """Compare log prod_{k<=K} (1 - e^-kt) against the modular-inversion
    estimate 0.5 log(2 pi) - 0.5 log t - pi^2/(6t).

    K is chosen so the dropped factors satisfy e^-Kt < 1e-20.  Returns
    (lhs, rhs); their difference decays like t/24 as t -> 0+.
    """
    if not 0 < t <= 1:
        raise ValidationError(f"t must satisfy 0 < t <= 1, got {t}")
    K = math.ceil(20.0 * math.log(10.0) / t)
    if K > max_terms:
        raise ResourceCapError(
            f"t={t} needs {K} product terms, above the cap {max_terms}"
        )
    lhs = math.fsum(math.log1p(-math.exp(-k * t)) for k in range(1, K + 1))
    rhs = 0.5 * LOG_2PI - 0.5 * math.log(t) - math.pi**2 / (6.0 * t)
    return lhs, rhs


# ---------------------------------------------------------------------------
# closed-form growth laws


def hardy_ramanujan_asymp(n: int) -> LogValue:
    """Leading-order partition count growth:
    p(n) ~ exp(pi sqrt(2n/3)) / (4 sqrt(3) n), in log space."""
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    log_val = (
        -math.log(4.0 * math.sqrt(3.0)) - math.log(n) + math.pi * math.sqrt(2.0 * n / 3.0)
    )
    return LogValue(1, log_val)


def sigma_asymp(p: MexParams, n: int) -> LogValue:
    """Growth law of the sigma moments.

    r = 0:   2^-2 3^-1/2 M^-1 n^-1 exp(pi sqrt(2n/3))
    r >= 1:  2^((3r-12)/4) 3^((r-2)/4) pi^(-r/2) M^-1 s^(-r/2)
             r Gamma(r/2) n^((r-4)/4) exp(pi sqrt(2n/3))

    Independent of the residue A in both branches.
    """
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if p.r == 0:
        return LogValue(1, hardy_ramanujan_asymp(n).log_abs - math.log(p.M))
    log_val = (
        (3 * p.r - 12) / 4 * math.log(2.0)
        + (p.r - 2) / 4 * math.log(3.0)
        - p.r / 2 * math.log(math.pi)
        - math.log(p.M)
        - p.r / 2 * math.log(p.s)
        + math.log(p.r)
        + math.lgamma(p.r / 2)
        + (p.r - 4) / 4 * math.log(n)
        + math.pi * math.sqrt(2.0 * n / 3.0)
    )
    return LogValue(1, log_val)


def varsigma_asymp(p: MexParams, n: int) -> LogValue:
    """Growth law of the varsigma moments: identical to the sigma law for
    r >= 1 except that M^(r/2) replaces M^-1; for r = 0 the sequence is
    the partition numbers, so the Hardy-Ramanujan law applies as is."""
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if p.r == 0:
        return hardy_ramanujan_asymp(n)
    base = sigma_asymp(p, n)
    return LogValue(1, base.log_abs + math.log(p.M) + p.r / 2 * math.log(p.M))


def gamma_half_integer(m: int) -> tuple[Fraction, bool]:
    """Exact Gamma(m/2) for integer m >= 1 as (rational, times_sqrt_pi).

    Even m: (m/2 - 1)! exactly.  Odd m: (m-2)!! / 2^((m-1)/2) times
    sqrt(pi).  Used as an independent check on the log-gamma route.
    """
    if m < 1:
        raise ValidationError(f"m must be >= 1, got {m}")
    if m % 2 == 0:
        return Fraction(math.factorial(m // 2 - 1)), False
    acc = 1
    k = m - 2
    while k >= 1:
        acc *= k
        k -= 2
    return Fraction(acc, 2 ** ((m - 1) // 2)), True


# ---------------------------------------------------------------------------
# exact-versus-asymptotic ratios


def exact_over_asymptotic(kind: str, p: MexParams, n: int, order: int | None = None) -> float:
    """Ratio exact_value(n) / growth_law(n), evaluated in log space."""
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    N = n if order is None else order
    if N < n:
        raise ValidationError(f"truncation order {N} is below the requested n={n}")
    seq = qseries.moment_sequence(kind, p, N)
    exact = LogValue.from_int(seq[n])
    asymp = sigma_asymp(p, n) if kind == "sigma" else varsigma_asymp(p, n)
    return (exact / asymp).to_float()


def corollary_ratio(
    kind: str, p: MexParams, a_prime: int, n: int, order: int | None = None
) -> float:
    """Exact-value ratio between the moment sequences of two residues
    A and A' (same s, M, r), computed in log space from exact integers.

    Raises ZeroDivisionError when the denominator value is still zero,
    which happens at small n for residues whose statistic needs a minimum
    weight to occur.
    """
    if not 0 < a_prime <= p.M:
        raise ValidationError(f"residue must satisfy 0 < A' <= M, got A'={a_prime}, M={p.M}")
    if n < 0:
        raise ValidationError(f"n must be >= 0, got {n}")
    N = n if order is None else order
    if N < n:
        raise ValidationError(f"truncation order {N} is below the requested n={n}")
    if a_prime == p.A:
        return 1.0
    seq_a = qseries.moment_sequence(kind, p, N)
    seq_b = qseries.moment_sequence(kind, MexParams(p.s, p.M, a_prime, p.r), N)
    num, den = seq_a[n], seq_b[n]
    if den == 0:
        raise ZeroDivisionError(
            f"denominator moment is zero at n={n} for A'={a_prime} (kind={kind})"
        )
    if num == den:
        return 1.0
    if num == 0:
        return 0.0
    if abs(num.bit_length() - den.bit_length()) <= 1:
        # Near-equal values: subtracting two huge logs would drown the
        # signal in rounding noise, so take log(num/den) = log1p of the
        # exact rational difference instead.
        log_ratio = math.log1p(float(Fraction(num - den, den)))
    else:
        log_ratio = LogValue.from_int(num).log_abs - LogValue.from_int(den).log_abs
    return math.exp(log_ratio)
