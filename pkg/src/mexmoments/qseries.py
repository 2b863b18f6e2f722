"""Exact truncated power-series arithmetic and the moment generating
functions.

Everything here is integer-exact: coefficients are Python ints of
arbitrary size and no float ever enters a computation.  A series of
order N knows nothing about coefficients beyond q^N (they are unknown,
not zero), so products and inverses are only valid up to the common
truncation order.

The two moment families are produced by multiplying 1/(q;q)_inf, i.e.
the partition-number series, with a sparse theta-like polynomial whose
support grows quadratically, so only O(sqrt(N)) terms contribute below
any truncation order N.
"""

from __future__ import annotations

import csv
import json
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import IO

from mexmoments import backend
from mexmoments.errors import ValidationError
from mexmoments.partitions import MexParams

VALID_KINDS = ("sigma", "varsigma")

#: Default truncation order for convergence studies; configurable
#: everywhere it is consumed (CLI flag / env var MEXMOMENTS_TRUNCATION).
DEFAULT_TRUNCATION = 4096


@dataclass(frozen=True)
class TruncatedSeries:
    """Exact integer coefficients c_0..c_N of a formal power series in q."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if not coeffs:
            raise ValidationError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        """Truncation bound N; coefficients beyond it are unknown."""
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValidationError(f"cannot extend order {self.order} series to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries([{head}{tail}], order={self.order})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Exact Cauchy product, truncated to the smaller input order."""
    return TruncatedSeries(backend.cauchy_product(list(a.coeffs), list(b.coeffs)))


def series_invert(a: TruncatedSeries) -> TruncatedSeries:
    """Exact multiplicative inverse up to the truncation order.

    Only series with constant term +1 or -1 are invertible without
    leaving the integers, so anything else is rejected.
    """
    if a.coeffs[0] not in (1, -1):
        raise ValidationError(
            f"series_invert needs constant term +1 or -1, got {a.coeffs[0]}"
        )
    return TruncatedSeries(backend.invert_unit_series(list(a.coeffs)))


def euler_product(order: int) -> TruncatedSeries:
    """prod_{k=1..N} (1 - q^k) truncated at N; factors beyond N cannot
    touch coefficients <= N, so the finite product is exact."""
    if order < 0:
        raise ValidationError(f"order must be >= 0, got {order}")
    return TruncatedSeries(backend.euler_product_coeffs(order))


# Growing table of partition numbers.  Entries never change once appended,
# so concurrent reads are safe; extension is serialized by the lock.
_pn_table: list[int] = [1]
_pn_lock = threading.Lock()


def _extend_partition_numbers(order: int) -> None:
    # Pentagonal-number recurrence:
    #   p(n) = sum_{k>=1} (-1)^(k-1) [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)].
    # Deliberately independent of series_invert so the two can cross-check.
    p = _pn_table
    for n in range(len(p), order + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 == 1 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p.append(total)


def partition_numbers(order: int) -> list[int]:
    """p(0..N) via the pentagonal recurrence."""
    if order < 0:
        raise ValidationError(f"order must be >= 0, got {order}")
    if len(_pn_table) <= order:
        with _pn_lock:
            _extend_partition_numbers(order)
    return _pn_table[: order + 1]


@dataclass(frozen=True)
class MomentSequence:
    """Exact values of one moment family for n = 0..N."""

    kind: str
    params: MexParams
    values: tuple[int, ...]

    def __init__(self, kind: str, params: MexParams, values):
        if kind not in VALID_KINDS:
            raise ValidationError(f"kind must be one of {VALID_KINDS}, got {kind!r}")
        values = tuple(int(v) for v in values)
        for n, v in enumerate(values):
            if v < 0:
                raise ValidationError(f"moment values must be >= 0, got {v} at n={n}")
        if kind == "varsigma" and params.r == 0:
            # The 0th varsigma moment counts every partition once, so the
            # sequence must literally be p(n).  Enforcing it here turns any
            # assembly bug into a loud failure.
            expected = partition_numbers(len(values) - 1)
            for n, (got, want) in enumerate(zip(values, expected)):
                if got != want:
                    raise ValidationError(
                        f"varsigma r=0 must equal the partition numbers; "
                        f"mismatch at n={n}: {got} != {want}"
                    )
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "values", values)

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __repr__(self):
        return f"MomentSequence(kind={self.kind!r}, params={self.params}, order={self.order})"

    def params_dict(self) -> dict:
        return {
            "kind": self.kind,
            "s": self.params.s,
            "M": self.params.M,
            "A": self.params.A,
            "r": self.params.r,
            "order": self.order,
        }


def _sigma_support(p: MexParams, order: int) -> list[tuple[int, int]]:
    """Sparse exponent/weight pairs of the sigma theta factor.

    One pair of terms per k = A, A+M, ... : weight +k^r at exponent
    s*k*(k-1)/2 and weight -k^r at exponent s*k*(k+1)/2, kept while the
    exponent stays within the truncation order.
    """
    weights: dict[int, int] = {}
    k = p.A
    while True:
        e1 = p.s * k * (k - 1) // 2
        if e1 > order:
            break
        w = k**p.r
        weights[e1] = weights.get(e1, 0) + w
        e2 = e1 + p.s * k
        if e2 <= order:
            weights[e2] = weights.get(e2, 0) - w
        k += p.M
    return sorted((e, w) for e, w in weights.items() if w != 0)


def _varsigma_support_direct(p: MexParams, order: int) -> list[tuple[int, int]]:
    """Sparse terms of the varsigma theta factor in its raw two-term form:
    +(Mm+A)^r at s*(M*m*(m-1)/2 + A*m) and -(Mm+A)^r one quadratic step up."""
    weights: dict[int, int] = {}
    m = 0
    while True:
        e1 = p.s * (p.M * m * (m - 1) // 2 + p.A * m)
        if e1 > order:
            break
        w = (p.M * m + p.A) ** p.r
        weights[e1] = weights.get(e1, 0) + w
        e2 = p.s * (p.M * m * (m + 1) // 2 + p.A * (m + 1))
        if e2 <= order:
            weights[e2] = weights.get(e2, 0) - w
        m += 1
    return sorted((e, w) for e, w in weights.items() if w != 0)


def _varsigma_support_telescoped(p: MexParams, order: int) -> list[tuple[int, int]]:
    """Telescoped form of the varsigma theta factor: constant A^r plus
    difference weights (M(m+1)+A)^r - (Mm+A)^r on the shifted quadratic
    exponents.  Identical to the direct form term-by-term after collecting;
    both are kept and tested equal as a consistency device."""
    weights: dict[int, int] = {0: p.A**p.r}
    m = 0
    while True:
        e = p.s * (p.M * m * (m + 1) // 2 + p.A * (m + 1))
        if e > order:
            break
        w = (p.M * (m + 1) + p.A) ** p.r - (p.M * m + p.A) ** p.r
        weights[e] = weights.get(e, 0) + w
        m += 1
    return sorted((e, w) for e, w in weights.items() if w != 0)


def sigma_gf_coeffs(p: MexParams, order: int) -> MomentSequence:
    """Sigma moments for n = 0..N by coefficient extraction.

    Multiplies the partition-number series by the sparse theta factor of
    the sigma family; must agree with sigma_oracle wherever both exist.
    """
    if order < 0:
        raise ValidationError(f"order must be >= 0, got {order}")
    dense = partition_numbers(order)
    values = backend.sparse_dense_product(_sigma_support(p, order), dense, order + 1)
    return MomentSequence("sigma", p, values)


def varsigma_gf_coeffs(
    p: MexParams, order: int, form: str = "telescoped"
) -> MomentSequence:
    """Varsigma moments for n = 0..N by coefficient extraction.

    ``form`` picks the theta-factor construction: "telescoped" (default)
    or "direct".  The two are algebraically identical; keeping both gives
    a free internal consistency check.
    """
    if order < 0:
        raise ValidationError(f"order must be >= 0, got {order}")
    if form == "telescoped":
        support = _varsigma_support_telescoped(p, order)
    elif form == "direct":
        support = _varsigma_support_direct(p, order)
    else:
        raise ValidationError(f"form must be 'telescoped' or 'direct', got {form!r}")
    dense = partition_numbers(order)
    values = backend.sparse_dense_product(support, dense, order + 1)
    return MomentSequence("varsigma", p, values)


@lru_cache(maxsize=512)
def moment_sequence(kind: str, p: MexParams, order: int = DEFAULT_TRUNCATION) -> MomentSequence:
    """Cached accessor used by the asymptotics checks, the scanners and
    the CLI, so repeated requests for the same sequence compute once."""
    if kind == "sigma":
        return sigma_gf_coeffs(p, order)
    if kind == "varsigma":
        return varsigma_gf_coeffs(p, order)
    raise ValidationError(f"kind must be one of {VALID_KINDS}, got {kind!r}")


def write_sequence_csv(seq: MomentSequence, fh: IO[str]) -> None:
    """CSV export: a `# params:` provenance comment, then n,value rows
    with exact decimal integers."""
    fh.write(f"# params: {json.dumps(seq.params_dict(), sort_keys=True)}\n")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["n", "value"])
    for n, v in enumerate(seq.values):
        writer.writerow([n, str(v)])


def write_sequence_json(seq: MomentSequence, fh: IO[str]) -> None:
    """JSON export with a params metadata block; values stay exact ints."""
    json.dump(
        {"params": seq.params_dict(), "values": list(seq.values)},
        fh,
        indent=2,
        sort_keys=True,
    )
    fh.write("\n")
