import numpy as np
import pytest

import gssamp as gs
from gssamp.errors import GssampError, InvalidParameterError
from gssamp.pyramid import chebyshev_apply, chebyshev_coefficients


def basis_of(graph):
    return gs.eigendecompose(gs.laplacian(graph))


def smooth_signal(basis, cutoff, seed=0):
    coeffs = np.zeros(basis.n)
    coeffs[:cutoff] = np.random.default_rng(seed).standard_normal(cutoff)
    return gs.igft(basis, coeffs)


class TestFilters:
    def test_exact_identity_response(self):
        g = gs.build_random_sensor(32, seed=0)
        b = basis_of(g)
        f = np.random.default_rng(1).standard_normal(32)
        spec = gs.FilterSpec(response=lambda lam: np.ones_like(lam), mode="exact")
        assert np.abs(gs.filter_signal(b, f, spec) - f).max() < 1e-12

    def test_chebyshev_identity_response(self):
        g = gs.build_random_sensor(32, seed=0)
        lap = gs.laplacian(g)
        b = gs.eigendecompose(lap)
        f = np.random.default_rng(1).standard_normal(32)
        spec = gs.FilterSpec(
            response=lambda lam: np.ones_like(lam), mode="chebyshev", order=30
        )
        assert np.abs(gs.filter_signal(b, f, spec, lap=lap) - f).max() < 1e-6

    def test_eigenvector_scaled_by_response(self):
        g = gs.build_path(16)
        b = basis_of(g)
        spec = gs.FilterSpec()
        for k in (0, 5, 12):
            u_k = b.eigenvectors[:, k]
            out = gs.filter_signal(b, u_k, spec)
            h = gs.halving_lowpass(np.array([b.eigenvalues[k]]))[0]
            assert np.abs(out - h * u_k).max() < 1e-12

    def test_chebyshev_close_to_exact(self):
        g = gs.build_random_sensor(64, seed=5)
        lap = gs.laplacian(g)
        b = gs.eigendecompose(lap)
        f = np.random.default_rng(2).standard_normal(64)
        exact = gs.filter_signal(b, f, gs.FilterSpec(mode="exact"))
        cheb = gs.filter_signal(b, f, gs.FilterSpec(mode="chebyshev", order=30), lap=lap)
        assert np.linalg.norm(cheb - exact) / np.linalg.norm(exact) <= 1e-2

    def test_chebyshev_error_decreases_with_order(self):
        g = gs.build_random_sensor(64, seed=5)
        lap = gs.laplacian(g)
        b = gs.eigendecompose(lap)
        f = np.random.default_rng(2).standard_normal(64)
        exact = gs.filter_signal(b, f, gs.FilterSpec(mode="exact"))
        errs = []
        for order in (5, 10, 20, 30, 50):
            cheb = gs.filter_signal(
                b, f, gs.FilterSpec(mode="chebyshev", order=order), lap=lap
            )
            errs.append(np.linalg.norm(cheb - exact))
        # monotone up to 10% jitter between consecutive orders
        for lo, hi in zip(errs[1:], errs[:-1]):
            assert lo <= hi * 1.10

    def test_chebyshev_apply_matches_polynomial(self):
        # applying the expansion of an exact low-order polynomial reproduces it
        g = gs.build_path(12)
        lap = gs.laplacian(g)
        b = gs.eigendecompose(lap)
        poly = lambda lam: 1.0 + 0.5 * lam - 0.25 * lam**2
        coeffs = chebyshev_coefficients(poly, b.lambda_max, order=8)
        f = np.random.default_rng(3).standard_normal(12)
        got = chebyshev_apply(lap.matrix, f, coeffs, b.lambda_max)
        expected = gs.igft(b, poly(b.eigenvalues) * gs.gft(b, f).coefficients)
        assert np.abs(got - expected).max() < 1e-9

    def test_invalid_mode_rejected(self):
        with pytest.raises(InvalidParameterError):
            gs.FilterSpec(mode="butterworth")


CONFIGS = {
    "vertex": gs.PyramidConfig(sampling="vertex", reduction="polarity"),
    "index": gs.PyramidConfig(sampling="index", reduction="polarity"),
    "spectrum": gs.PyramidConfig(sampling="spectrum", reduction="polarity"),
}


class TestPerfectReconstruction:
    @pytest.mark.parametrize("name", list(CONFIGS))
    def test_sensor_graph(self, name):
        g = gs.build_random_sensor(64, seed=7)
        f = np.random.default_rng(11).standard_normal(64)
        dec = gs.analyze(f, g, num_levels=3, config=CONFIGS[name])
        rec = gs.synthesize(dec)
        assert np.linalg.norm(rec - f) / np.linalg.norm(f) < 1e-9

    def test_path_every_other(self):
        g = gs.build_path(32)
        f = np.random.default_rng(4).standard_normal(32)
        config = gs.PyramidConfig(sampling="index", reduction="every_other")
        rec = gs.synthesize(gs.analyze(f, g, num_levels=2, config=config))
        assert np.linalg.norm(rec - f) / np.linalg.norm(f) < 1e-9

    def test_chebyshev_filters_still_reconstruct(self):
        # PR holds for any filters because details store prediction errors
        g = gs.build_random_sensor(64, seed=7)
        f = np.random.default_rng(11).standard_normal(64)
        config = gs.PyramidConfig(
            sampling="index",
            analysis_filter=gs.FilterSpec(mode="chebyshev", order=10),
        )
        rec = gs.synthesize(gs.analyze(f, g, num_levels=2, config=config))
        assert np.linalg.norm(rec - f) / np.linalg.norm(f) < 1e-9

    def test_level_sizes_halve(self):
        g = gs.build_random_sensor(64, seed=7)
        f = np.zeros(64)
        dec = gs.analyze(f, g, num_levels=3, config=CONFIGS["vertex"])
        assert dec.detail_sizes() == [64, 32, 16]
        assert dec.coarse.shape == (8,)

    def test_odd_size_rejected_for_spectral_modes(self):
        g = gs.build_random_sensor(63, seed=8)
        f = np.zeros(63)
        with pytest.raises(GssampError):
            gs.analyze(f, g, num_levels=1, config=CONFIGS["index"])


class TestNonlinearApproximation:
    def _dec(self):
        g = gs.build_random_sensor(64, seed=7)
        b = basis_of(g)
        f = smooth_signal(b, 10, seed=9)
        return f, g

    def test_keep_all_is_lossless_single_level(self):
        f, g = self._dec()
        dec = gs.analyze(f, g, num_levels=1, config=CONFIGS["index"])
        rec = gs.synthesize(gs.nonlinear_approximate(dec, sum(dec.detail_sizes())))
        assert np.linalg.norm(rec - f) / np.linalg.norm(f) < 1e-9

    def test_error_decreases_with_kept_terms(self):
        f, g = self._dec()
        config = CONFIGS["index"]
        curve = gs.nla_error_curve(f, g, config, fractions=[0.1, 0.3, 0.6, 1.0])
        errs = [err for _, err in curve]
        assert errs == sorted(errs, reverse=True)
        assert errs[-1] < 1e-9

    def test_deterministic(self):
        f, g = self._dec()
        a = gs.nla_error_curve(f, g, CONFIGS["spectrum"], fractions=[0.2, 0.5])
        b = gs.nla_error_curve(f, g, CONFIGS["spectrum"], fractions=[0.2, 0.5])
        assert np.array_equal(a, b)

    def test_zero_kept_drops_details(self):
        f, g = self._dec()
        dec = gs.analyze(f, g, num_levels=1, config=CONFIGS["index"])
        trimmed = gs.nonlinear_approximate(dec, 0)
        for level in trimmed.levels:
            assert np.count_nonzero(level.prediction_error) == 0
