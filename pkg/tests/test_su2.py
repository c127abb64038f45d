import json
import math
from pathlib import Path

import numpy as np
import pytest

from irreplab import (
    DimensionTable,
    EnsembleConfig,
    InvalidInputError,
    effective_width,
    example_dimension_table,
    f_space,
    gs_distribution,
    legendre,
    sigma_j_sq,
    width_table,
    write_distribution_csv,
    write_width_csv,
)

DATA = Path(__file__).parent / "data"

# Exact closed forms of the width integral for the first few degrees
# (moment integrals of x^{2k} sqrt(1-x^2) on [-1, 1], combined by hand).
EXACT_WIDTH_FACTORS = [
    math.pi / 2,
    math.pi / 8,
    5 * math.pi / 64,
    29 * math.pi / 512,
    727 * math.pi / 16384,
]


def legendre_coefficient_oracle(j, x):
    """P_j via the explicit expansion 2^-j sum_k C(j,k)^2 (x-1)^(j-k) (x+1)^k."""
    total = 0.0
    for k in range(j + 1):
        total += math.comb(j, k) ** 2 * (x - 1.0) ** (j - k) * (x + 1.0) ** k
    return total / 2.0**j


class TestLegendre:
    def test_degree_zero_and_one(self):
        assert legendre(0, -0.4) == 1.0
        assert legendre(1, 0.3) == 0.3
        assert legendre(2, 1.0) == 1.0

    @pytest.mark.parametrize("j", range(9))
    def test_matches_coefficient_oracle(self, j):
        for x in (-1.0, -0.62, 0.0, 0.31, 0.7, 1.0):
            assert legendre(j, x) == pytest.approx(
                legendre_coefficient_oracle(j, x), abs=1e-12
            )

    def test_bounded_by_one(self):
        grid = np.linspace(-1.0, 1.0, 501)
        for j in range(15):
            assert np.max(np.abs(legendre(j, grid))) <= 1.0 + 1e-12

    def test_endpoints(self):
        for j in range(8):
            assert legendre(j, 1.0) == pytest.approx(1.0, abs=1e-13)
            assert legendre(j, -1.0) == pytest.approx((-1.0) ** j, abs=1e-13)

    def test_domain_checked(self):
        with pytest.raises(InvalidInputError):
            legendre(3, 1.2)
        with pytest.raises(InvalidInputError):
            legendre(-1, 0.5)

    def test_array_input(self):
        xs = np.array([0.0, 0.5])
        assert np.allclose(legendre(2, xs), [-0.5, -0.125])


class TestWidthIntegral:
    @pytest.mark.parametrize("j,exact", list(enumerate(EXACT_WIDTH_FACTORS)))
    def test_exact_low_degrees(self, j, exact):
        assert sigma_j_sq(j) == pytest.approx(exact, abs=1e-12)

    def test_three_decimal_table(self):
        vals = [sigma_j_sq(j) for j in range(5)]
        assert [round(v, 3) for v in vals] == [1.571, 0.393, 0.245, 0.178, 0.139]

    @pytest.mark.parametrize("j", [0, 3, 7, 12, 20])
    def test_quadrature_converged(self, j):
        assert abs(sigma_j_sq(j, 512) - sigma_j_sq(j, 1024)) < 1e-10
        assert abs(sigma_j_sq(j, 64) - sigma_j_sq(j, 128)) < 1e-10

    def test_quad_points_floor(self):
        with pytest.raises(InvalidInputError):
            sigma_j_sq(2, quad_points=32)

    def test_strictly_decreasing_in_j(self):
        vals = [sigma_j_sq(j) for j in range(21)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_legendre_orthogonality_on_grid(self):
        from irreplab.su2 import legendre_pair_integral

        for j1 in range(11):
            for j2 in range(j1, 11):
                got = legendre_pair_integral(j1, j2)
                want = 2.0 / (2 * j1 + 1) if j1 == j2 else 0.0
                assert abs(got - want) < 1e-10

    def test_width_table_rows(self):
        table = width_table(4)
        assert [tj for tj, _ in table.entries] == [0, 2, 4, 6, 8]
        assert table.factor(0) == pytest.approx(math.pi / 2, abs=1e-12)


class TestEffectiveWidth:
    def test_single_state_is_bare_width(self):
        assert effective_width(4, 1) == pytest.approx(
            math.sqrt(sigma_j_sq(2)), rel=1e-15
        )

    def test_sqrt_dimension_scaling(self):
        assert effective_width(4, 4) == pytest.approx(
            2 * effective_width(4, 1), rel=1e-15
        )

    def test_j0_n100(self):
        assert effective_width(0, 100, 1.0) == pytest.approx(
            10 * math.sqrt(math.pi / 2), rel=1e-14
        )

    def test_half_integer_needs_override(self):
        with pytest.raises(InvalidInputError):
            effective_width(3, 5)
        assert effective_width(3, 4, width_factor=0.25) == pytest.approx(1.0)


class TestDimensionTable:
    def test_validation(self):
        with pytest.raises(InvalidInputError):
            DimensionTable(())
        with pytest.raises(InvalidInputError):
            DimensionTable(((0, 1), (0, 2)))
        with pytest.raises(InvalidInputError):
            DimensionTable(((2, 0),))
        with pytest.raises(InvalidInputError):
            DimensionTable(((-2, 5),))

    def test_sorted_and_total(self):
        t = DimensionTable(((4, 7), (0, 3)))
        assert t.entries == ((0, 3), (4, 7))
        assert t.n_tot == 10

    def test_csv_roundtrip(self, tmp_path):
        t = DimensionTable(((0, 3), (2, 9), (5, 1)))
        path = tmp_path / "dims.csv"
        t.to_csv(path)
        assert DimensionTable.from_csv(path) == t

    def test_csv_comments_and_header(self, tmp_path):
        path = tmp_path / "dims.csv"
        path.write_text("# a comment\ntwoJ,dim\n0,4  # trailing note\n2,6\n")
        t = DimensionTable.from_csv(path)
        assert t.entries == ((0, 4), (2, 6))

    def test_csv_malformed(self, tmp_path):
        path = tmp_path / "dims.csv"
        path.write_text("twoJ,dim\n0\n")
        with pytest.raises(InvalidInputError):
            DimensionTable.from_csv(path)
        path.write_text("# nothing\n")
        with pytest.raises(InvalidInputError):
            DimensionTable.from_csv(path)

    def test_bundled_table_shape(self):
        t = example_dimension_table()
        fractions = dict(f_space(t))
        assert 0 in fractions and fractions[0] < 0.1  # J=0 a small share
        assert all(tj % 2 == 0 for tj, _ in t.entries)


class TestFSpace:
    def test_two_equal_entries(self):
        t = DimensionTable(((0, 1), (4, 1)))
        assert f_space(t) == [(0, 0.5), (4, 0.5)]

    def test_ten_ninety(self):
        t = DimensionTable(((0, 10), (4, 90)))
        assert f_space(t) == [(0, 0.1), (4, 0.9)]

    def test_sums_to_one(self):
        t = example_dimension_table()
        assert sum(f for _, f in f_space(t)) == pytest.approx(1.0, abs=1e-12)


class TestGsDistribution:
    def test_single_entry_always_wins(self):
        t = DimensionTable(((4, 10),))
        dist = gs_distribution(t, EnsembleConfig(1, 200))
        assert dist.fraction(4) == 1.0

    def test_symmetric_pair_with_forced_equal_widths(self):
        t = DimensionTable(((0, 12), (4, 12)))
        cfg = EnsembleConfig(21, 10000)
        dist = gs_distribution(t, cfg, widths={0: 1.0, 4: 1.0})
        se = math.sqrt(0.25 / cfg.trials)
        assert abs(dist.fraction(0) - 0.5) <= 3 * se

    def test_counts_sum_to_trials(self):
        dist = gs_distribution(example_dimension_table(), EnsembleConfig(2, 500))
        assert sum(c for _, c in dist.counts) == 500
        assert sum(f for _, f in dist.entries) == pytest.approx(1.0, abs=1e-12)

    def test_scale_invariance(self):
        t = example_dimension_table()
        a = gs_distribution(t, EnsembleConfig(5, 800, sigma0=1.0))
        b = gs_distribution(t, EnsembleConfig(5, 800, sigma0=37.5))
        assert a.counts == b.counts

    def test_reproducible_and_thread_invariant(self):
        t = example_dimension_table()
        cfg = EnsembleConfig(6, 400)
        a = gs_distribution(t, cfg, threads=1)
        b = gs_distribution(t, cfg, threads=4)
        assert a.counts == b.counts

    def test_half_integer_rows_need_widths(self):
        t = DimensionTable(((3, 5), (4, 5)))
        with pytest.raises(InvalidInputError):
            gs_distribution(t, EnsembleConfig(1, 10))
        dist = gs_distribution(t, EnsembleConfig(1, 10), widths={3: 0.3})
        assert sum(c for _, c in dist.counts) == 10

    def test_matches_frozen_baseline(self):
        baseline = json.loads((DATA / "gsdist_baseline.json").read_text())
        cfg = EnsembleConfig(baseline["master_seed"], baseline["trials"],
                             baseline["sigma0"])
        dist = gs_distribution(example_dimension_table(), cfg,
                               quad_points=baseline["quad_points"])
        got = {str(tj): c for tj, c in dist.counts}
        assert got == baseline["counts"]
        assert dist.tie_count == 0


class TestCsvOutputs:
    def test_width_csv(self, tmp_path):
        path = tmp_path / "w.csv"
        write_width_csv(width_table(2), path)
        lines = path.read_text().strip().split("\n")
        assert lines[0] == "twoJ,sigmaJ_sq"
        assert lines[1] == "0,1.57079632679"  # 12 significant digits
        assert len(lines) == 4

    def test_distribution_csv(self, tmp_path):
        t = DimensionTable(((0, 2), (4, 6)))
        dist = gs_distribution(t, EnsembleConfig(3, 100))
        path = tmp_path / "d.csv"
        write_distribution_csv(dist, t, path)
        lines = path.read_text().strip().split("\n")
        assert lines[0] == "twoJ,f_space,f_RM"
        assert lines[1].startswith("0,0.25,")
        assert lines[2].startswith("4,0.75,")
