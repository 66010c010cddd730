# SPDX-License-Identifier: Apache-2.0
# Copyright (C) 2026 The indoor-backscatter authors

"""Statistical monostatic clutter and target simulator."""

from ._core import (
    ConfigurationError,
    DomainError,
    FitError,
    NumericalError,
    average_backscatter_ratio,
    azimuth_autocorrelation,
    clutter_integral_quadrature,
    complex_gaussian_series,
    correlated_lognormal_db,
    delay_map,
    empirical_cdf,
    fit_reverberation,
    fresnel_average_reflectivity,
    fresnel_power_reflectivity,
    gaussian_horn_field,
    ks_test_exponential,
    lognormal_mean_offset,
    pattern_autocorrelation,
    predict_db,
    radar_equation_ratio,
    room_report,
    run_check,
    run_cli,
    spectrum_correlation,
    spun_spectrum,
    walking_scene,
    wavelength,
)

__version__ = "0.1.0"
