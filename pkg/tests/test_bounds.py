import math
from fractions import Fraction

import pytest

from hopforce.bounds import (BoundReport, EntropyPoint, InvariantViolation,
                             balanced_partition_rate, best_partition_rate,
                             bound_report, config_fraction, eml_fraction,
                             friedman_lambda, log_partition_count,
                             log_partition_count_direct, matchings_count,
                             maximizing_z, partition_rate, rational_str,
                             upper_fraction, upper_fraction_integral)

# reference rows: degree -> (spectral, configuration, constructive) fractions
REFERENCE_ROWS = {
    3: (0.0149, 0.0699, 0.3333),
    4: (0.0372, 0.1451, 0.4571),
    5: (0.0588, 0.2114, 0.5341),
    6: (0.0787, 0.2678, 0.5884),
    7: (0.0968, 0.3158, 0.6294),
    8: (0.1134, 0.3569, 0.6618),
    9: (0.1287, 0.3924, 0.6882),
    10: (0.1429, 0.4235, 0.7101),
    20: (0.2445, 0.6054, 0.8231),
    40: (0.3755, 0.7437, 0.8946),
    80: (0.5556, 0.8409, 0.9386),
    160: (0.6848, 0.9048, 0.9649),
    320: (0.7767, 0.9446, 0.9803),
    640: (0.8420, 0.9684, 0.9890),
    1280: (0.8882, 0.9823, 0.9940),
}

KNOWN_RATIONALS = {
    3: Fraction(1, 3),
    4: Fraction(16, 35),
    5: Fraction(243, 455),
    6: Fraction(8192, 13923),
    7: Fraction(78125, 124124),
    8: Fraction(40310784, 60911435),
    9: Fraction(40353607, 58640175),
    10: Fraction(17179869184, 24192643475),
}


@pytest.mark.parametrize("d,expected", sorted(KNOWN_RATIONALS.items()))
def test_upper_fraction_exact(d, expected):
    assert upper_fraction(d) == expected


def test_upper_fraction_rejects_small_d():
    with pytest.raises(ValueError):
        upper_fraction(2)


@pytest.mark.parametrize("d", [3, 4, 10, 20, 30, 40])
def test_integral_matches_rational(d):
    assert abs(upper_fraction_integral(d) - float(upper_fraction(d))) <= 1e-9


def test_upper_fraction_asymptotics():
    # 1 - c_d shrinks like log(d)/d with a bounded constant
    for d in (10, 20, 50, 100, 500, 1000, 2000):
        gap = 1 - float(upper_fraction(d))
        ratio = gap * d / math.log(d)
        assert 0.5 <= ratio <= 3.0


def test_eml_fraction_values():
    assert eml_fraction(3, 2 * math.sqrt(2)) == pytest.approx(0.0149, abs=5e-5)
    assert eml_fraction(10, 6.0) == pytest.approx(0.1429, abs=5e-5)
    assert eml_fraction(1280, 2 * math.sqrt(1279)) == pytest.approx(0.8882, abs=5e-5)
    assert eml_fraction(5, 0.0) == 1.0
    assert eml_fraction(3, 3.0) == 0.0          # vacuous bound clamps at zero
    with pytest.raises(ValueError):
        eml_fraction(3, 4.0)


def test_eml_fraction_algebraic_rewrite():
    for d in (3, 7, 25, 404):
        lam = friedman_lambda(d)
        if lam > d:
            continue
        alt = 1 - min(2 * lam / d, 4 * lam / (d + 3 * lam))
        assert eml_fraction(d, lam) == pytest.approx(max(alt, 0.0), abs=1e-12)


def test_maximizing_z_examples():
    assert maximizing_z(0.5) == pytest.approx(1 - math.sqrt(0.5), abs=1e-12)
    assert maximizing_z(1 - 1e-9) == pytest.approx(0.0, abs=1e-4)
    for x in (0.01, 0.2, 0.5, 0.9, 0.999):
        assert 0.0 < maximizing_z(x) < 0.5


def test_maximizing_z_is_stationary_point():
    # central finite difference of the balanced rate vanishes at z0;
    # eps must be small: the third derivative blows up as x -> 1
    for d in (3, 5, 10):
        for k in range(1, 100):
            x = k / 100
            z = maximizing_z(x)
            eps = 1e-8
            hi = balanced_partition_rate(d, x, z + eps)
            lo = balanced_partition_rate(d, x, z - eps)
            assert abs((hi - lo) / (2 * eps)) <= 1e-6


def test_maximizing_z_is_argmax_numerically():
    for d in (3, 10):
        x = 0.5
        z0 = maximizing_z(x)
        best = balanced_partition_rate(d, x, z0)
        for k in range(1, 200):
            z = k / 200 * min(0.5, (1 - x) / (2 * x)) * 0.999
            if z <= 0:
                continue
            assert balanced_partition_rate(d, x, z) <= best + 1e-12


def test_rate_identity_balanced_equals_general_at_y_eq_z():
    import numpy as np

    rng = np.random.default_rng(5)
    for _ in range(200):
        d = int(rng.integers(3, 12))
        x = float(rng.uniform(0.05, 0.95))
        zmax = min(0.5, (1 - x) / (2 * x))
        z = float(rng.uniform(1e-6, zmax * 0.99))
        assert balanced_partition_rate(d, x, z) == pytest.approx(
            partition_rate(d, x, z, z), abs=1e-10)


def test_rate_increases_towards_balanced():
    # moving (y, z) towards each other raises the rate
    d, x = 4, 0.3
    z0 = maximizing_z(x)
    y, z = z0 * 0.5, z0 * 1.2
    eps = 1e-6
    f0 = partition_rate(d, x, y, z)
    f1 = partition_rate(d, x, y + eps, z - eps)
    assert f1 > f0


def test_best_rate_limits():
    # x -> 0 limit is -(d-2) log(2) / 2; x -> 1 limit is 0
    for d in (3, 10):
        lim = -(d - 2) * math.log(2) / 2
        assert best_partition_rate(d, 1e-6) == pytest.approx(lim, abs=2e-4)
        assert abs(best_partition_rate(d, 1 - 1e-7)) < 1e-4
    assert best_partition_rate(3, 0.001) == pytest.approx(-math.log(2) / 2, abs=0.015)


@pytest.mark.parametrize("d", sorted(REFERENCE_ROWS))
def test_reference_row(d):
    eml_t, cfg_t, up_t = REFERENCE_ROWS[d]
    assert eml_fraction(d, friedman_lambda(d)) == pytest.approx(eml_t, abs=5e-5)
    assert config_fraction(d) == pytest.approx(cfg_t, abs=5e-5)
    assert float(upper_fraction(d)) == pytest.approx(up_t, abs=5e-5)


def test_config_fraction_monotone_in_d():
    xs = [config_fraction(d) for d in sorted(REFERENCE_ROWS)]
    assert all(a < b for a, b in zip(xs, xs[1:]))


def test_best_rate_shape():
    # negative near 0, a single interior maximum, tending to 0 at 1
    for d in (3, 10):
        grid = [k / 400 for k in range(1, 400)]
        vals = [best_partition_rate(d, x) for x in grid]
        assert vals[0] < 0
        peak = max(range(len(vals)), key=vals.__getitem__)
        assert 0 < peak < len(vals) - 1
        assert all(b > a for a, b in zip(vals[:peak], vals[1:peak + 1]))
        assert all(b < a for a, b in zip(vals[peak:], vals[peak + 1:]))
        assert vals[-1] > 0


def test_bound_report_ordering():
    for d in (3, 10, 80):
        rep = bound_report(d)
        assert 0 < rep.eml_fraction <= rep.config_fraction < rep.upper_float < 1
    with pytest.raises(InvariantViolation):
        BoundReport(3, 0.5, 0.2, Fraction(1, 3), 1 / 3).validate()


def test_matchings_count():
    assert matchings_count(0) == 1
    assert matchings_count(2) == 1
    assert matchings_count(4) == 3
    assert matchings_count(6) == 15     # enumeration: 5 * 3 * 1
    with pytest.raises(ValueError):
        matchings_count(3)


def test_log_partition_count_matches_direct_product():
    # the simplified factorial product equals the binomial construction
    for (d, x, y, z, n) in [
        (3, 0.1, 0.02, 0.02, 1000),
        (4, 0.3, 0.05, 0.08, 500),
        (10, 0.5, 0.01, 0.02, 2000),
    ]:
        a = log_partition_count(d, x, y, z, n)
        b = log_partition_count_direct(d, x, y, z, n)
        assert a == pytest.approx(b, abs=1e-6 * max(1.0, abs(a)))


def test_log_partition_count_stirling_consistency():
    d, x, y, z = 3, 0.1, 0.02, 0.02
    f = partition_rate(d, x, y, z)
    for n in (1_000, 10_000, 100_000):
        diff = abs(log_partition_count(d, x, y, z, n) / n - f)
        assert diff <= 10 * math.log(n) / n


def test_log_partition_count_degenerate_blocks():
    v = log_partition_count(3, 0.2, 0.0, 0.0, 600)
    assert math.isfinite(v)
    with pytest.raises(ValueError):
        log_partition_count(3, 0.2, 0.9, 0.9, 600)


def test_rational_str_handles_huge_values():
    s = rational_str(upper_fraction(1280))
    assert "/" in s and len(s) > 5000


def test_entropy_point_validation_and_maximizer():
    p = EntropyPoint.evaluate(3, 0.4, 0.2)
    assert p.value == pytest.approx(balanced_partition_rate(3, 0.4, 0.2))
    top = EntropyPoint.at_maximizer(3, 0.4)
    assert top.z == pytest.approx(maximizing_z(0.4))
    assert top.value >= p.value
    with pytest.raises(ValueError):
        EntropyPoint.evaluate(3, 0.4, 0.6)
    with pytest.raises(ValueError):
        EntropyPoint.evaluate(3, 1.4, 0.2)
