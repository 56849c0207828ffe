"""Pointing-jitter channel: linearized spot model, jitter-to-noise gain,
total noise and the general Fisher information."""
import math
import warnings

import numpy as np
import pytest

from aoatrack.beam import BeamParams, beamwidth, received_power, received_power_deriv
from aoatrack.fisher import crlb, fisher_information
from aoatrack.focal_plane import (
    NoiseModel,
    ReceiverGeometry,
    detector_bounds,
    detector_mean,
    detector_mean_deriv,
    spot_center,
)
from aoatrack.numerics import DomainError, adaptive_quad, gauss_pdf
from aoatrack.pointing import (
    PointingChannel,
    PointingModelWarning,
    crlb_general,
    exact_spot_intensity,
    fisher_information_general,
    fisher_information_general_reference,
    gamma_m,
    gamma_m_deriv,
    linearized_spot_intensity,
    signal_mean_sm,
    total_noise_sigma,
    total_noise_sigma_deriv,
)


def _beam(power=0.1, phi=0.2, link=100.0):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return BeamParams.from_beamwidth(power, 1.55e-6, phi, link, 0.05)


GEO = ReceiverGeometry(1e-3, 4e-6, 4, 2e-4)


def _channel(sigma_p=2e-3, sigma_n=1e-6, mode="constant", **beam_kw):
    return PointingChannel(_beam(**beam_kw), GEO,
                           NoiseModel(sigma_n, mode, sigma_p))


class TestPointingChannel:
    def test_requires_positive_jitter(self):
        with pytest.raises(DomainError):
            PointingChannel(_beam(), GEO, NoiseModel(1e-6, "constant", 0.0))

    def test_large_jitter_warns(self):
        phi = beamwidth(_beam())
        with pytest.warns(PointingModelWarning):
            PointingChannel(_beam(), GEO, NoiseModel(1e-6, "constant", 0.2 * phi))

    def test_small_jitter_does_not_warn(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error", PointingModelWarning)
            _channel(sigma_p=1e-3)


class TestLinearizedSpotIntensity:
    def test_zero_perturbation_is_exact(self):
        ch = _channel()
        for x in (-5e-4, 0.0, 3e-4):
            assert linearized_spot_intensity(ch, 0.05, x, 0.0) == pytest.approx(
                exact_spot_intensity(ch, 0.05, x, 0.0), rel=1e-14)

    def test_error_is_second_order_in_jitter(self):
        ch = _channel()
        phi = beamwidth(ch.beam)
        theta = 0.05
        x = spot_center(ch.geometry, theta) + 0.5 * ch.geometry.spot_radius
        ratios = []
        for frac in (1e-3, 5e-4, 2.5e-4):
            tp = frac * phi
            err = abs(exact_spot_intensity(ch, theta, x, tp)
                      - linearized_spot_intensity(ch, theta, x, tp))
            ratios.append(err / tp ** 2)
        assert (max(ratios) - min(ratios)) / max(ratios) < 0.25

    def test_jitter_term_at_spot_center_is_energy_gradient(self):
        ch = _channel()
        theta = 0.05
        x = spot_center(ch.geometry, theta)
        tp = 1e-6
        kern = gauss_pdf(0.0, ch.geometry.spot_radius)
        want = (received_power(ch.beam, theta) * kern
                + kern * received_power_deriv(ch.beam, theta) * tp)
        assert linearized_spot_intensity(ch, theta, x, tp) == pytest.approx(
            want, rel=1e-12)

    def test_zero_off_array(self):
        ch = _channel()
        x = ch.geometry.half_extent * 1.5
        assert exact_spot_intensity(ch, 0.05, x, 1e-4) == 0.0
        assert linearized_spot_intensity(ch, 0.05, x, 1e-4) == 0.0


class TestSignalMean:
    def test_delegates_to_detector_mean(self):
        ch = _channel()
        for m in range(GEO.detector_count):
            assert signal_mean_sm(ch, 0.07, m) == detector_mean(
                ch.beam, GEO, 0.07, m)


class TestGamma:
    def test_equals_mean_derivative_split(self):
        ch = _channel()
        for theta in np.linspace(0.0, 0.45, 30):
            for m in range(GEO.detector_count):
                d = detector_mean_deriv(ch.beam, GEO, float(theta), m)
                got = gamma_m(ch, float(theta), m)
                assert got == pytest.approx(d.alpha + d.beta, rel=1e-10, abs=1e-300)

    def test_zero_when_spot_centered_at_origin(self):
        # At theta = 0 the energy part vanishes; with the spot centered on a
        # detector the motion part cancels too.
        g = ReceiverGeometry(1e-3, 4e-6, 1, 2e-4)
        ch = PointingChannel(_beam(), g, NoiseModel(1e-6, "constant", 2e-3))
        assert gamma_m(ch, 0.0, 0) == pytest.approx(0.0, abs=1e-15)

    def test_matches_quadrature_of_defining_integral(self):
        ch = _channel()
        theta = 0.12
        power = received_power(ch.beam, theta)
        power_p = received_power_deriv(ch.beam, theta)
        g = ch.geometry
        x0 = spot_center(g, theta)
        rho = g.spot_radius

        def integrand(x):
            kern = gauss_pdf(x - x0, rho)
            return kern * (power * (x - x0) * g.focal_length * math.cos(theta)
                           / rho ** 2 + power_p)

        for m in range(g.detector_count):
            b = detector_bounds(g, m)
            ref = adaptive_quad(integrand, b.lo, b.hi, tol=1e-14)
            assert gamma_m(ch, theta, m) == pytest.approx(ref, rel=1e-8)

    def test_derivative_paths_agree(self):
        ch = _channel()
        for theta in (1e-3, 0.05, 0.2, 0.4):
            for m in range(GEO.detector_count):
                fd = gamma_m_deriv(ch, theta, m, method="central")
                an = gamma_m_deriv(ch, theta, m, method="analytic")
                assert an == pytest.approx(fd, rel=1e-4, abs=1e-12)

    def test_unknown_derivative_method(self):
        with pytest.raises(DomainError):
            gamma_m_deriv(_channel(), 0.1, 0, method="bogus")


class TestTotalNoise:
    def test_floor_is_thermal(self):
        ch = _channel()
        for theta in (0.0, 0.1, 0.3):
            for m in range(GEO.detector_count):
                sigma_n = math.sqrt(1e-12)
                assert total_noise_sigma(ch, theta, m) >= sigma_n

    def test_composition(self):
        ch = _channel()
        theta, m = 0.15, 1
        gm = gamma_m(ch, theta, m)
        want = math.sqrt(gm * gm * ch.noise.sigma_p ** 2 + 1e-12)
        assert total_noise_sigma(ch, theta, m) == pytest.approx(want, rel=1e-14)

    def test_sigma_deriv_chain_rule(self):
        from aoatrack.numerics import central_diff
        ch = _channel()
        theta, m = 0.15, 1
        fd = central_diff(lambda t: total_noise_sigma(ch, t, m), theta, 1e-7)
        assert total_noise_sigma_deriv(ch, theta, m) == pytest.approx(fd, rel=1e-4)


class TestFisherGeneral:
    def test_degenerates_to_thermal_as_jitter_vanishes(self):
        ch = _channel(sigma_p=1e-9)
        for theta in np.linspace(0.0, 0.025, 25):
            thermal = fisher_information(ch.beam, GEO,
                                         NoiseModel(1e-6), float(theta)).total
            general = fisher_information_general(ch, float(theta))
            assert abs(general - thermal) / thermal <= 1e-6

    def test_two_forms_agree(self):
        ch = _channel()
        for theta in np.linspace(0.01, 0.45, 10):
            simplified = fisher_information_general(ch, float(theta))
            reference = fisher_information_general_reference(ch, float(theta))
            assert reference == pytest.approx(simplified, rel=1e-8)

    def test_jitter_only_hurts(self):
        ch = _channel()
        n0 = NoiseModel(1e-6)
        for theta in np.linspace(0.0, 0.45, 25):
            assert crlb_general(ch, float(theta)) >= crlb(
                ch.beam, GEO, n0, float(theta)) * (1 - 1e-12)

    def test_crlb_ordering_in_jitter_level(self):
        phi = 0.2
        levels = [0.002 * phi, 0.01 * phi, 0.05 * phi]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            for theta in np.linspace(0.0, 0.45, 20):
                vals = [crlb_general(_channel(sigma_p=sp), float(theta))
                        for sp in levels]
                assert vals[0] <= vals[1] * (1 + 1e-12)
                assert vals[1] <= vals[2] * (1 + 1e-12)

    def test_crlb_reciprocal_and_even(self):
        ch = _channel()
        theta = 0.2
        assert crlb_general(ch, theta) * fisher_information_general(
            ch, theta) == pytest.approx(1.0, rel=1e-12)
        assert crlb_general(ch, -theta) == pytest.approx(crlb_general(ch, theta),
                                                         rel=1e-10)
