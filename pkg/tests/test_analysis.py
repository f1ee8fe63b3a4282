import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from metaca.analysis import (
    CSV_COLUMNS_1D,
    CSV_COLUMNS_2D,
    family_occupancy,
    genotype_entropy,
    metrics,
    metrics_2d,
    rule_histogram,
    stability,
    stabilization_generation,
    write_csv,
)
from metaca.geno2d import Genotype2D
from metaca.rules import Convention, Family, from_number, to_number
from metaca.sim1d import History1D, MetaKind, MetaRule1D, run
from metaca.sim2d import Grid2D


def history(genos, phenos=None):
    genos = np.asarray(genos, dtype=np.uint8)
    if phenos is None:
        phenos = np.zeros_like(genos)
    return History1D(genos, np.asarray(phenos, dtype=np.uint8))


def test_zero_row():
    row = metrics(history([[0] * 16, [0] * 16]), 1, window=1)
    assert row.genotype_entropy == 0.0
    assert row.rule_histogram[0] == 16 and row.rule_histogram.sum() == 16
    assert row.stability == 1.0


def test_uniform_row_has_high_entropy():
    rng = np.random.default_rng(0)
    vals = [genotype_entropy(rng.integers(0, 256, 256)) for _ in range(20)]
    assert min(vals) > 6.5
    assert genotype_entropy(np.arange(256)) == pytest.approx(8.0)


def test_density():
    h = history([[0] * 8], [[0, 1] * 4])
    assert metrics(h, 0, window=None).phenotype_density == 0.5


@given(st.lists(st.integers(0, 255), min_size=1, max_size=300))
def test_histogram_and_occupancy_invariants(nums):
    nums = np.array(nums)
    assert rule_histogram(nums).sum() == len(nums)
    occ = family_occupancy(nums)
    assert all(0.0 <= v <= 1.0 for v in occ.values())
    assert sum(occ.values()) <= 1.0 + 1e-12
    assert 0.0 <= genotype_entropy(nums) <= 8.0


def test_occupancy_counts_the_family():
    w110 = to_number(from_number(110, Convention.WOLFRAM))
    occ = family_occupancy(np.array([w110, w110, 0, 255]))
    assert occ[Family.RULE_110] == 0.5
    assert occ[Family.RULE_30] == 0.0


def test_stability_extremes():
    rows = np.array([[1, 2, 3], [1, 2, 3], [4, 5, 6]])
    assert stability(rows, 1, 1) == 1.0
    assert stability(rows, 2, 1) == 0.0
    with pytest.raises(ValueError):
        stability(rows, 0, 1)


def test_metrics_window_errors():
    h = history([[0] * 4] * 3)
    with pytest.raises(ValueError):
        metrics(h, 2, window=5)
    with pytest.raises(ValueError):
        metrics(h, 2, window=0)
    assert metrics(h, 0, window=2).stability is None
    assert metrics(h, 2, window=2).stability == 1.0


def test_stabilization_examples():
    const = np.zeros((30, 8), dtype=np.uint8)
    assert stabilization_generation(const, 0.95, 10) == 0
    alt = np.array([[0] * 8, [1] * 8] * 10, dtype=np.uint8)
    assert stabilization_generation(alt, 1.0, 1) is None
    # Constant from generation 13 on, so g and g - 5 first agree at g = 18.
    rows = np.zeros((40, 4), dtype=np.uint8)
    rows[:13] = np.arange(13)[:, None]
    rows[13:] = 99
    assert stabilization_generation(rows, 0.95, 5) == 18
    assert stabilization_generation(rows[:10], 0.95, 20) is None
    with pytest.raises(ValueError):
        stabilization_generation(rows, 0.0, 5)


def test_stabilization_matches_definition():
    rng = np.random.default_rng(1)
    for _ in range(50):
        g_len, k, theta = int(rng.integers(3, 30)), int(rng.integers(1, 4)), 0.75
        rows = rng.integers(0, 2, (g_len, 4))
        rows[rng.integers(0, g_len):] = rows[-1]
        got = stabilization_generation(rows, theta, k)
        stab = {g: stability(rows, g, k) for g in range(k, g_len)}
        ok = [g for g in range(g_len) if all(s >= theta for h, s in stab.items() if h >= g)]
        expected = None
        if stab and stab[g_len - 1] >= theta:
            expected = min(ok)
        assert got == expected


def test_multiply_run_reaches_stability():
    h = run(256, 200, MetaRule1D(MetaKind.MULTIPLY), seed=1)
    assert stability(h.genotypes, 200, 50) >= 0.9


def test_metrics_2d():
    alive = np.zeros((4, 4), dtype=bool)
    alive[0, :2] = True
    g = Grid2D.uniform(alive, 0, Genotype2D(1, 2, 3))
    g.weight[0, 0], g.weight[0, 1] = 10, 21
    row = metrics_2d(g)
    assert row.population == 2 and row.phenotype_density == 0.125 and row.mean_weight == 15.5
    assert metrics_2d(Grid2D.uniform(np.zeros((3, 3)))).mean_weight is None


def test_csv_layout():
    h = run(16, 5, seed=0)
    rows = [metrics(h, g, 2) for g in range(6)]
    text = write_csv(rows)
    lines = text.splitlines()
    assert lines[0].split(",") == CSV_COLUMNS_1D
    assert len(lines) == 7
    first = lines[1].split(",")
    assert first[0] == "0" and first[3] == ""
    assert len(first) == 4 + 4 + 256
    assert lines[3].split(",")[3] != "" and "." in lines[3].split(",")[1]
    buf = io.StringIO()
    write_csv([metrics_2d(Grid2D.uniform(np.ones((3, 3)), 5))], buf, two_d=True)
    assert buf.getvalue() == ",".join(CSV_COLUMNS_2D) + "\n0,9,1.000000,5.000000\n"
