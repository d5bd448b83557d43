"""Tests for the scalar kernels: entropies, Gaussian MI, dB, minimizer."""

import math

import numpy as np
import pytest

from dirtycast import gaussian
from dirtycast.core import (
    GaussianCov,
    InvalidDistributionError,
    JointPmf,
    RateBound,
    ScalarInterval,
    SingularCovarianceError,
    binary_entropy,
    db_to_linear,
    gaussian_mi,
    minimize_scalar,
    pmf_entropy,
)


class TestBinaryEntropy:
    def test_examples(self):
        assert binary_entropy(0.5) == 1.0
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        # two-term sum evaluated independently: H(3/8)
        assert binary_entropy(0.375) == pytest.approx(0.954434002924965, abs=1e-12)

    def test_symmetry(self):
        for q in np.linspace(0.0, 1.0, 101):
            assert binary_entropy(q) == pytest.approx(binary_entropy(1.0 - q), abs=1e-12)

    @pytest.mark.parametrize("bad", [-0.1, 1.0001, math.nan])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            binary_entropy(bad)


class TestJointPmf:
    def test_entropy_examples(self):
        assert pmf_entropy(JointPmf.uniform(range(4))) == pytest.approx(2.0, abs=1e-15)
        assert pmf_entropy(JointPmf({("x",): 1.0})) == 0.0
        four = JointPmf({0: 0.4375, 1: 0.1875, 2: 0.1875, 3: 0.1875})
        assert pmf_entropy(four) == pytest.approx(1.8802408149441479, abs=1e-12)

    def test_uniform_matches_log2(self):
        for m in range(2, 65):
            assert pmf_entropy(JointPmf.uniform(range(m))) == pytest.approx(
                math.log2(m), abs=1e-12
            )

    def test_validation(self):
        with pytest.raises(InvalidDistributionError):
            JointPmf({0: 0.6, 1: 0.6})
        with pytest.raises(InvalidDistributionError):
            JointPmf({0: 1.2, 1: -0.2})
        with pytest.raises(InvalidDistributionError):
            JointPmf({})
        with pytest.raises(InvalidDistributionError):
            JointPmf({(0, 0): 0.5, (1,): 0.5})

    def test_marginal_and_mi(self):
        joint = JointPmf({(0, 0): 0.2, (0, 1): 0.3, (1, 0): 0.3, (1, 1): 0.2})
        m0 = dict(joint.marginal((0,)).atoms())
        assert m0[(0,)] == pytest.approx(0.5) and m0[(1,)] == pytest.approx(0.5)
        indep = JointPmf({(a, b): 0.25 for a in (0, 1) for b in (0, 1)})
        assert indep.mutual_information((0,), (1,)) == pytest.approx(0.0, abs=1e-12)
        copy = JointPmf({(0, 0): 0.3, (1, 1): 0.7})
        assert copy.mutual_information((0,), (1,)) == pytest.approx(
            binary_entropy(0.3), abs=1e-12
        )
        with pytest.raises(ValueError):
            joint.mutual_information((0,), (0,))


class TestGaussianMi:
    def test_independent_blocks(self):
        cov = GaussianCov(3, np.diag([1.0, 2.0, 3.0]))
        assert gaussian_mi(cov, [0], [1, 2]) == pytest.approx(0.0, abs=1e-12)

    def test_awgn_identity(self):
        # Y = X + Z with var X = P, var Z = 1: I = log2(1+P)/2
        for p in (0.5, 4.0, 1995.2623149688789):
            cov = GaussianCov(2, np.array([[p, p], [p, p + 1.0]]))
            assert gaussian_mi(cov, [0], [1]) == pytest.approx(
                0.5 * math.log2(1.0 + p), abs=1e-10
            )

    def test_dpc_codebook_rate_from_covariance(self):
        # common-stream binning rate at P_A=4, P_D=2, Q=2 is exactly 1/2
        cov, ix = gaussian.dpc_covariance(gaussian.PowerSplit(4.0, 2.0), 2.0)
        got = gaussian_mi(cov, [ix["u_a"]], [ix["y1"]]) - gaussian_mi(cov, [ix["u_a"]], [ix["a"]])
        assert got == pytest.approx(0.5, abs=1e-12)

    def test_symmetry_and_nonnegativity(self):
        rng = np.random.default_rng(42)
        for _ in range(80):
            dim = int(rng.integers(2, 9))
            a = rng.normal(size=(dim, dim + 1))
            cov = GaussianCov(dim, a @ a.T)
            cut = int(rng.integers(1, dim))
            blocks = (list(range(cut)), list(range(cut, dim)))
            fwd = gaussian_mi(cov, blocks[0], blocks[1])
            bwd = gaussian_mi(cov, blocks[1], blocks[0])
            assert abs(fwd - bwd) < 1e-9
            assert fwd > -1e-9

    def test_singular_covariance_raises(self):
        # X repeated twice: joint block is rank one
        cov = GaussianCov(2, np.array([[1.0, 1.0], [1.0, 1.0]]))
        with pytest.raises(SingularCovarianceError):
            gaussian_mi(cov, [0], [1])
        zero = GaussianCov(2, np.diag([0.0, 1.0]))
        with pytest.raises(SingularCovarianceError):
            gaussian_mi(zero, [0], [1])

    def test_block_validation(self):
        cov = GaussianCov(2, np.eye(2))
        with pytest.raises(ValueError):
            gaussian_mi(cov, [0], [0])
        with pytest.raises(ValueError):
            gaussian_mi(cov, [], [1])
        with pytest.raises(ValueError):
            gaussian_mi(cov, [0], [5])

    def test_cov_validation(self):
        with pytest.raises(ValueError):
            GaussianCov(2, np.array([[1.0, 0.5], [0.4, 1.0]]))
        with pytest.raises(ValueError):
            GaussianCov(2, np.array([[1.0, 2.0], [2.0, 1.0]]))  # eigenvalue -1
        with pytest.raises(ValueError):
            GaussianCov(2, np.eye(3))

    def test_from_factors(self):
        cov = GaussianCov.from_factors(np.array([[1.0, 0.0], [1.0, 1.0]]), [4.0, 1.0])
        assert cov.matrix[0, 0] == 4.0 and cov.matrix[1, 1] == 5.0 and cov.matrix[0, 1] == 4.0
        with pytest.raises(ValueError):
            GaussianCov.from_factors(np.eye(2), [1.0, -1.0])


class TestDbToLinear:
    def test_examples(self):
        assert db_to_linear(0.0) == 1.0
        assert db_to_linear(33.0) == pytest.approx(1995.2623149688789, rel=1e-12)
        # 15 dB is sqrt(1000), an independent closed form
        assert db_to_linear(15.0) == pytest.approx(math.sqrt(1000.0), rel=1e-12)
        assert db_to_linear(-10.0) == pytest.approx(0.1, rel=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            db_to_linear(math.inf)


class TestMinimizeScalar:
    def test_quadratic(self):
        x, v = minimize_scalar(lambda t: t * t, ScalarInterval(-1.0, 1.0))
        assert abs(x) < 1e-6
        assert v < 1e-12

    def test_kinked(self):
        x, v = minimize_scalar(lambda t: abs(t - 0.3) + 0.1, (-1.0, 1.0))
        assert x == pytest.approx(0.3, abs=1e-6)
        assert v == pytest.approx(0.1, abs=1e-9)

    def test_endpoint_minimum(self):
        x, _ = minimize_scalar(lambda t: -t, (-1.0, 1.0))
        assert x == pytest.approx(1.0, abs=1e-9)

    def test_random_unimodal_functions(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            lo = float(rng.uniform(-5.0, 0.0))
            hi = float(rng.uniform(0.5, 5.0))
            target = float(rng.uniform(lo, hi))
            scale = float(10.0 ** rng.uniform(-2, 2))
            x, _ = minimize_scalar(lambda t: scale * (t - target) ** 2, (lo, hi))
            assert abs(x - target) < 1e-6

    def test_interval_validation(self):
        with pytest.raises(ValueError):
            ScalarInterval(1.0, 0.0)
        with pytest.raises(ValueError):
            ScalarInterval(0.0, math.inf)


RHO_GRID_P = (0.1, 1.0, 10.0, 100.0, 2000.0)
RHO_GRID_Q = (0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 100.0)

# At these (P, Q) pairs the [.]^+ correction of the second upper bound is
# active near the optimum and drags the true minimizer into the interior,
# strictly below the two-branch rho choice; everywhere else on the grid the
# branch choice min(Q/2,1) resp. min(Q/4,1) is the exact argmin.
UPPER_II_CORNER = {(0.1, 2.0), (0.1, 4.0), (0.1, 8.0)}


class TestRhoMaps:
    @pytest.mark.parametrize("p", RHO_GRID_P)
    @pytest.mark.parametrize("q", RHO_GRID_Q)
    def test_upper_i_map(self, p, q):
        rho_star = q / 4.0 if q <= 4.0 else 1.0
        rho, _ = gaussian.minimize_upper_i_rho(p, q)
        assert rho == pytest.approx(rho_star, abs=1e-4)

    @pytest.mark.parametrize("p", RHO_GRID_P)
    @pytest.mark.parametrize("q", RHO_GRID_Q)
    def test_upper_ii_map(self, p, q):
        rho_star = q / 2.0 if q <= 2.0 else 1.0
        rho, value = gaussian.minimize_upper_ii_rho(p, q)
        closed = gaussian.upper_ii(p, q).value
        if (p, q) in UPPER_II_CORNER:
            assert value < closed - 1e-3
            assert abs(rho - rho_star) > 1e-2
        else:
            assert rho == pytest.approx(rho_star, abs=1e-4)
            assert value == pytest.approx(closed, abs=1e-9)
        # in either case the closed form stays a valid (>=) bound
        assert closed >= value - 1e-9


class TestRateBound:
    def test_validation(self):
        with pytest.raises(ValueError):
            RateBound(0.5, "sideways", "x")
        with pytest.raises(ValueError):
            RateBound(-0.5, "lower", "x")
        with pytest.raises(ValueError):
            RateBound(math.nan, "upper", "x")
        assert RateBound(-1e-15, "lower", "tiny").value == 0.0
