"""Exact series layer: arithmetic, the Euler product, partition numbers,
and the two moment generating functions."""

import io
import json

import pytest

from mexmoments import (
    MexParams,
    MomentSequence,
    TruncatedSeries,
    ValidationError,
    euler_product,
    partition_numbers,
    series_invert,
    series_mul,
    sigma_gf_coeffs,
    sigma_oracle,
    varsigma_gf_coeffs,
    varsigma_oracle,
)
from mexmoments import qseries
from mexmoments.qseries import write_sequence_csv, write_sequence_json


def geometric(order):
    return TruncatedSeries([1] * (order + 1))


def test_series_mul_identity():
    one = TruncatedSeries([1, 0])
    a = TruncatedSeries([1, 1])
    assert series_mul(one, a).coeffs == (1, 1)


def test_series_mul_telescopes_geometric():
    a = TruncatedSeries([1, -1] + [0] * 18)
    prod = series_mul(a, geometric(19))
    assert prod.coeffs == (1,) + (0,) * 19


def test_series_mul_binomial_square():
    a = TruncatedSeries([1, 1, 0])
    assert series_mul(a, a).coeffs == (1, 2, 1)


def test_series_mul_truncates_to_min_order():
    a = TruncatedSeries([1, 2, 3, 4])
    b = TruncatedSeries([1, 1])
    assert series_mul(a, b).coeffs == (1, 3)


def test_series_invert_geometric():
    a = TruncatedSeries([1, -1, 0, 0, 0, 0])
    assert series_invert(a).coeffs == (1,) * 6


def test_series_invert_identity():
    assert series_invert(TruncatedSeries([1, 0, 0])).coeffs == (1, 0, 0)


def test_series_invert_negative_unit():
    a = TruncatedSeries([-1, 1, 0])
    b = series_invert(a)
    assert series_mul(a, b).coeffs == (1, 0, 0)


def test_series_invert_rejects_non_unit():
    for c0 in (0, 2, -3):
        with pytest.raises(ValidationError):
            series_invert(TruncatedSeries([c0, 1]))


def test_series_invert_roundtrip_random():
    import random

    rng = random.Random(20240817)
    for _ in range(10):
        coeffs = [rng.choice([1, -1])] + [rng.randint(-9, 9) for _ in range(40)]
        a = TruncatedSeries(coeffs)
        assert series_mul(a, series_invert(a)).coeffs == (1,) + (0,) * 40


def test_euler_product_small():
    assert euler_product(7).coeffs == (1, -1, -1, 0, 0, 1, 0, 1)
    assert euler_product(0).coeffs == (1,)


def test_euler_product_q12_coefficient():
    assert euler_product(15).coeffs[12] == -1


def test_euler_product_matches_pentagonal_pattern():
    # Nonzero coefficients sit at generalized pentagonal numbers with sign
    # (-1)^k; everything else vanishes.
    N = 120
    coeffs = list(euler_product(N).coeffs)
    expected = [0] * (N + 1)
    k = 1
    expected[0] = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > N:
            break
        sign = -1 if k % 2 == 1 else 1
        expected[g1] = sign
        g2 = k * (3 * k + 1) // 2
        if g2 <= N:
            expected[g2] = sign
        k += 1
    assert coeffs == expected


def test_euler_inversion_gives_partition_numbers():
    N = 200
    assert list(series_invert(euler_product(N)).coeffs) == partition_numbers(N)


def test_partition_numbers_small():
    assert partition_numbers(5) == [1, 1, 2, 3, 5, 7]
    assert partition_numbers(0) == [1]
    assert partition_numbers(30)[30] == 5604
    assert partition_numbers(100)[100] == 190569292


def test_partition_numbers_rejects_negative():
    with pytest.raises(ValidationError):
        partition_numbers(-1)


def test_truncated_series_validation():
    with pytest.raises(ValidationError):
        TruncatedSeries([])
    s = TruncatedSeries([1, 2, 3])
    assert s.order == 2
    assert s.truncate(1).coeffs == (1, 2)
    with pytest.raises(ValidationError):
        s.truncate(3)


def test_sigma_gf_examples():
    assert sigma_gf_coeffs(MexParams(1, 2, 1, 0), 4).values == (1, 0, 1, 2, 3)
    assert sigma_gf_coeffs(MexParams(1, 2, 1, 1), 4)[4] == 5
    # Constant term: 1 when A = 1 (any s, r), else 0.
    for s in (1, 3):
        for r in (0, 2):
            assert sigma_gf_coeffs(MexParams(s, 3, 1, r), 0)[0] == 1
            assert sigma_gf_coeffs(MexParams(s, 3, 2, r), 0)[0] == 0


def test_varsigma_gf_examples():
    assert varsigma_gf_coeffs(MexParams(1, 2, 2, 1), 3)[3] == 8
    for (s, M, A) in [(1, 1, 1), (2, 3, 2), (3, 4, 4)]:
        assert list(varsigma_gf_coeffs(MexParams(s, M, A, 0), 80).values) == partition_numbers(80)
    for (s, M, A, r) in [(1, 3, 2, 2), (2, 4, 3, 1), (1, 5, 5, 0)]:
        assert varsigma_gf_coeffs(MexParams(s, M, A, r), 0)[0] == A**r


def test_varsigma_gf_forms_agree():
    for (s, M, A, r) in [(1, 1, 1, 0), (1, 2, 1, 1), (2, 3, 2, 2), (3, 4, 4, 1), (2, 5, 3, 0)]:
        p = MexParams(s, M, A, r)
        direct = varsigma_gf_coeffs(p, 60, form="direct")
        telescoped = varsigma_gf_coeffs(p, 60, form="telescoped")
        assert direct.values == telescoped.values
    with pytest.raises(ValidationError):
        varsigma_gf_coeffs(MexParams(1, 1, 1, 0), 5, form="nonsense")


def test_gf_matches_oracle_spot_grid():
    for (s, M, A, r) in [(1, 2, 1, 1), (2, 3, 3, 0), (3, 1, 1, 2), (1, 4, 2, 2)]:
        p = MexParams(s, M, A, r)
        sg = sigma_gf_coeffs(p, 16)
        vg = varsigma_gf_coeffs(p, 16)
        for n in range(17):
            assert sg[n] == sigma_oracle(p, n)
            assert vg[n] == varsigma_oracle(p, n)


def test_gf_assembly_equals_dense_series_mul():
    # The sparse assembly must agree with an honest dense multiplication.
    from mexmoments.qseries import _sigma_support, _varsigma_support_telescoped

    N = 40
    pn = TruncatedSeries(partition_numbers(N))
    for (s, M, A, r) in [(1, 2, 1, 1), (2, 3, 2, 0), (1, 1, 1, 2)]:
        p = MexParams(s, M, A, r)
        for support, gf in [
            (_sigma_support(p, N), sigma_gf_coeffs(p, N)),
            (_varsigma_support_telescoped(p, N), varsigma_gf_coeffs(p, N)),
        ]:
            dense = [0] * (N + 1)
            for e, w in support:
                dense[e] = w
            via_mul = series_mul(pn, TruncatedSeries(dense))
            assert via_mul.coeffs == gf.values


def test_moment_values_nonnegative_everywhere():
    for (s, M, A, r) in [(1, 2, 1, 0), (1, 2, 2, 1), (2, 3, 3, 2), (3, 4, 1, 1)]:
        p = MexParams(s, M, A, r)
        assert min(sigma_gf_coeffs(p, 200).values) >= 0
        assert min(varsigma_gf_coeffs(p, 200).values) >= 0


def test_varsigma_monotone_spot():
    for (s, M, A, r) in [(1, 2, 1, 1), (2, 3, 2, 0), (1, 4, 4, 2)]:
        v = varsigma_gf_coeffs(MexParams(s, M, A, r), 300).values
        assert all(a <= b for a, b in zip(v, v[1:]))


def test_sigma_known_initial_dip():
    # s=1, A=1, M>=2: the value drops once from n=0 to n=1 and is
    # nondecreasing afterwards.
    v = sigma_gf_coeffs(MexParams(1, 2, 1, 0), 300).values
    assert v[0] == 1 and v[1] == 0
    assert all(a <= b for a, b in zip(v[1:], v[2:]))


def test_moment_sequence_validation():
    p = MexParams(1, 2, 1, 0)
    with pytest.raises(ValidationError):
        MomentSequence("sigma", p, [1, -1])
    with pytest.raises(ValidationError):
        MomentSequence("nonsense", p, [1])
    # varsigma r=0 must literally be the partition numbers
    with pytest.raises(ValidationError):
        MomentSequence("varsigma", p, [1, 1, 2, 4])
    MomentSequence("varsigma", p, [1, 1, 2, 3])


def test_moment_sequence_cache_returns_same_object():
    p = MexParams(1, 2, 1, 1)
    assert qseries.moment_sequence("sigma", p, 50) is qseries.moment_sequence("sigma", p, 50)
    with pytest.raises(ValidationError):
        qseries.moment_sequence("bogus", p, 10)


def test_csv_export_format():
    seq = sigma_gf_coeffs(MexParams(1, 2, 1, 1), 4)
    buf = io.StringIO()
    write_sequence_csv(seq, buf)
    text = buf.getvalue()
    lines = text.split("\n")
    assert lines[0].startswith("# params: ")
    assert json.loads(lines[0][len("# params: "):]) == seq.params_dict()
    assert lines[1] == "n,value"
    assert lines[2] == "0,1"
    assert lines[6] == "4,5"
    assert "\r" not in text
    for line in lines[2:-1]:
        n, value = line.split(",")
        assert str(int(n)) == n and str(int(value)) == value


def test_json_export_roundtrip():
    seq = varsigma_gf_coeffs(MexParams(2, 3, 2, 1), 12)
    buf = io.StringIO()
    write_sequence_json(seq, buf)
    loaded = json.loads(buf.getvalue())
    assert loaded["params"] == seq.params_dict()
    assert loaded["values"] == list(seq.values)
    # exact integers survive the round trip even when huge
    big = varsigma_gf_coeffs(MexParams(1, 1, 1, 0), 400)
    buf = io.StringIO()
    write_sequence_json(big, buf)
    assert json.loads(buf.getvalue())["values"][400] == partition_numbers(400)[400]
