// SPDX-License-Identifier: Apache-2.0
//
// indoor-backscatter: statistical monostatic clutter and target simulator
// Copyright (C) 2026 The indoor-backscatter authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "backscatter/antenna.hpp"
#include "backscatter/clutter.hpp"
#include "backscatter/errors.hpp"
#include "backscatter/model.hpp"
#include "backscatter/random_fields.hpp"
#include "backscatter/stats.hpp"
#include "backscatter/target.hpp"
#include "backscatter/validation.hpp"
#include "cli/commands.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace backscatter;

namespace
{

template <class T> py::array_t<T> to_array(const std::vector<T> &v)
{
    py::array_t<T> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

py::array_t<double> to_matrix(const std::vector<double> &v, std::size_t rows, std::size_t cols)
{
    py::array_t<double> a({static_cast<py::ssize_t>(rows), static_cast<py::ssize_t>(cols)});
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast> &a)
{
    return std::vector<double>(a.data(), a.data() + a.size());
}

Polarization polarization(const std::string &s)
{
    if (s == "te")
        return Polarization::TE;
    if (s == "tm")
        return Polarization::TM;
    if (s == "unpolarized")
        return Polarization::Unpolarized;
    throw DomainError("polarization must be 'te', 'tm' or 'unpolarized'");
}

PatternKind antenna_kind(double hpbw_deg)
{
    if (hpbw_deg <= 0.0)
        return Omni{};
    return GaussianHorn{hpbw_deg};
}

RoomSpec room_of(double d_s_m, const std::string &material, double t_rev_ns)
{
    const auto m = parse_material(material);
    if (!m)
        throw DomainError("material must be concrete (metal, dielectric:<eps>, explicit:<g>)");
    return RoomSpec{"room", 2.0 * d_s_m, 2.0 * d_s_m, d_s_m, *m, t_rev_ns * 1e-9};
}

ClutterParams clutter_of(double sigma_v_db, double sigma_db, double phi_rms_deg, double frequency_hz)
{
    return ClutterParams{sigma_v_db, sigma_db, phi_rms_deg, CarrierSpec(frequency_hz)};
}

py::dict spun_spectrum(std::uint64_t seed, double d_s_m, const std::string &material, double rx_hpbw_deg,
                       double tx_hpbw_deg, std::size_t pointings, double sigma_v_db, double sigma_db,
                       double phi_rms_deg, double spacing_deg, double frequency_hz, double x_m, double y_m)
{
    const AzimuthGrid grid = AzimuthGrid::with_spacing(spacing_deg);
    RandomStream stream = derive_stream(seed, "python/spectrum");
    const AzimuthField field = gen_azimuth_channel(room_of(d_s_m, material, 10.0),
                                                   clutter_of(sigma_v_db, sigma_db, phi_rms_deg, frequency_hz), grid,
                                                   {0.0, 0.0}, stream)
                                   .at_location({x_m, y_m});
    const std::vector<double> p = uniform_pointings(pointings);
    const SpunSpectrum s = spin_response(field, make_pattern(antenna_kind(rx_hpbw_deg), grid),
                                         make_pattern(antenna_kind(tx_hpbw_deg), grid), p);
    py::dict out;
    out["pointing_deg"] = to_array(s.pointing_deg);
    out["power"] = to_array(s.power);
    out["p0"] = s.p0;
    out["p_v_db"] = s.p_v_db;
    return out;
}

py::dict delay_map(std::uint64_t seed, double d_s_m, double t_rev_ns, double bandwidth_ghz, double probe_rate_ghz,
                   std::size_t pointings, double rx_hpbw_deg, double spacing_deg, double delta_tau_ns)
{
    const AzimuthGrid grid = AzimuthGrid::with_spacing(spacing_deg);
    const RoomSpec room = room_of(d_s_m, "metal", t_rev_ns);
    const DelayGrid delay = DelayGrid::for_room(room, delta_tau_ns * 1e-9);
    RandomStream stream = derive_stream(seed, "python/delay");
    const DelayAzimuthField field = gen_delay_azimuth_channel(room, ClutterParams{}, delay, grid, stream);
    const PowerDelayMap map =
        band_limit(field, make_probe_waveform(bandwidth_ghz * 1e9, probe_rate_ghz * 1e9),
                   make_pattern(antenna_kind(rx_hpbw_deg), grid), make_pattern(Omni{}, grid), uniform_pointings(pointings));
    py::dict out;
    out["pointing_deg"] = to_array(map.pointing_deg);
    out["delay_s"] = to_array(map.delay_s);
    out["power"] = to_matrix(map.power, map.pointing_deg.size(), map.delay_s.size());
    out["onset_s"] = map.onset_s;
    return out;
}

py::dict walking_scene(std::uint64_t seed, std::optional<double> sigma0_dbsm, double speed_mps)
{
    SceneSpec spec = default_walking_scene(speed_mps);
    if (sigma0_dbsm)
        spec.target->sigma0_dbsm = *sigma0_dbsm;
    else
        spec.target.reset();
    const TimeAzimuthMap map = compose_scene(spec, derive_stream(seed, "python/scene"));
    std::vector<double> t, pointing, power, target_power, bearing;
    for (const auto &s : map.samples)
    {
        t.push_back(s.t_s);
        pointing.push_back(s.pointing_deg);
        power.push_back(s.power);
        target_power.push_back(s.target_power);
        bearing.push_back(s.target ? s.target->bearing_deg : std::nan(""));
    }
    py::dict out;
    out["t_s"] = to_array(t);
    out["pointing_deg"] = to_array(pointing);
    out["power"] = to_array(power);
    out["target_power"] = to_array(target_power);
    out["target_bearing_deg"] = to_array(bearing);
    out["map"] = to_matrix(map.binned, map.rotations, map.columns);
    return out;
}

py::dict check_dict(const CheckResult &r)
{
    py::dict d;
    d["id"] = r.id;
    d["name"] = r.name;
    d["statistic"] = r.statistic;
    d["tolerance"] = r.tolerance;
    d["passed"] = r.pass;
    d["runtime_s"] = r.runtime_s;
    d["detail"] = r.detail;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Statistical monostatic clutter and target simulator";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<FitError>(m, "FitError", PyExc_RuntimeError);

    m.def("wavelength", &wavelength, py::arg("frequency_hz"));
    m.def("average_backscatter_ratio", &average_backscatter_ratio, py::arg("d_s_m"), py::arg("wavelength_m"),
          py::arg("gamma_sq"));
    m.def(
        "fresnel_average_reflectivity",
        [](double eps_r, const std::string &pol) { return fresnel_average_reflectivity(eps_r, polarization(pol)); },
        py::arg("eps_r"), py::arg("polarization") = "te");
    m.def(
        "fresnel_power_reflectivity",
        [](double eps_r, double theta_rad, const std::string &pol) {
            return fresnel_power_reflectivity(eps_r, theta_rad, polarization(pol));
        },
        py::arg("eps_r"), py::arg("theta_rad"), py::arg("polarization") = "te");
    m.def("clutter_integral_quadrature", &clutter_integral_quadrature, py::arg("d_s_m"), py::arg("wavelength_m"),
          py::arg("gamma_sq"), py::arg("phi_rms_rad"), py::arg("theta_rms_rad"), py::arg("g_t") = 1.0);
    m.def("lognormal_mean_offset", &lognormal_mean_offset, py::arg("sigma_db"));
    m.def(
        "predict_db",
        [](double d_s_m, const std::string &material, double frequency_hz) {
            return predict_room(room_of(d_s_m, material, 10.0), CarrierSpec(frequency_hz)).p0_db;
        },
        py::arg("d_s_m"), py::arg("material") = "metal", py::arg("frequency_hz") = 28.0e9);
    m.def(
        "radar_equation_ratio", &radar_equation_ratio, py::arg("wavelength_m"), py::arg("rcs_m2"), py::arg("range_m"),
        py::arg("g_t") = 1.0, py::arg("g_r") = 1.0);

    m.def(
        "correlated_lognormal_db",
        [](std::uint64_t seed, double sigma_db, double phi_rms_deg, double spacing_deg) {
            RandomStream s = derive_stream(seed, "python/field");
            return to_array(correlated_lognormal_db(AzimuthGrid::with_spacing(spacing_deg), {sigma_db, phi_rms_deg}, s));
        },
        py::arg("seed"), py::arg("sigma_db") = 7.0, py::arg("phi_rms_deg") = 1.0, py::arg("spacing_deg") = 0.2);
    m.def(
        "complex_gaussian_series",
        [](std::uint64_t seed, double duration_s, double sample_rate_hz, double coherence_time_s) {
            RandomStream s = derive_stream(seed, "python/series");
            return to_array(complex_gaussian_series(duration_s, sample_rate_hz, coherence_time_s, s));
        },
        py::arg("seed"), py::arg("duration_s"), py::arg("sample_rate_hz") = 740.0, py::arg("coherence_time_s") = 0.1);

    m.def(
        "gaussian_horn_field",
        [](double hpbw_deg, double spacing_deg) {
            const AntennaPattern p = make_pattern(GaussianHorn{hpbw_deg}, AzimuthGrid::with_spacing(spacing_deg));
            return to_array(std::vector<double>(p.field().begin(), p.field().end()));
        },
        py::arg("hpbw_deg") = 10.0, py::arg("spacing_deg") = 0.2);
    m.def(
        "pattern_autocorrelation",
        [](double hpbw_deg, double spacing_deg) {
            return to_array(
                pattern_autocorrelation(make_pattern(GaussianHorn{hpbw_deg}, AzimuthGrid::with_spacing(spacing_deg))));
        },
        py::arg("hpbw_deg") = 10.0, py::arg("spacing_deg") = 0.2);

    m.def("spun_spectrum", &spun_spectrum, py::arg("seed"), py::arg("d_s_m") = 2.5, py::arg("material") = "metal",
          py::arg("rx_hpbw_deg") = 10.0, py::arg("tx_hpbw_deg") = 0.0, py::arg("pointings") = 148,
          py::arg("sigma_v_db") = 4.0, py::arg("sigma_db") = 7.0, py::arg("phi_rms_deg") = 1.0,
          py::arg("spacing_deg") = 0.2, py::arg("frequency_hz") = 28.0e9, py::arg("x_m") = 0.0, py::arg("y_m") = 0.0,
          "Spun spectrum of one clutter realization; hpbw <= 0 selects an omni antenna");
    m.def("delay_map", &delay_map, py::arg("seed"), py::arg("d_s_m") = 3.0, py::arg("t_rev_ns") = 10.0,
          py::arg("bandwidth_ghz") = 1.0, py::arg("probe_rate_ghz") = 20.0, py::arg("pointings") = 148,
          py::arg("rx_hpbw_deg") = 10.0, py::arg("spacing_deg") = 0.2, py::arg("delta_tau_ns") = 0.1);
    m.def("walking_scene", &walking_scene, py::arg("seed"), py::arg("sigma0_dbsm") = -8.0, py::arg("speed_mps") = 0.9,
          "Default walking scene; sigma0_dbsm=None gives clutter only");

    m.def(
        "empirical_cdf",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast> &x) {
            const EmpiricalCdf c = empirical_cdf(to_vector(x));
            return py::make_tuple(to_array(c.support), to_array(c.cumulative));
        },
        py::arg("samples"));
    m.def(
        "spectrum_correlation",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast> &a,
           const py::array_t<double, py::array::c_style | py::array::forcecast> &b) {
            return spectrum_correlation(to_vector(a), to_vector(b));
        },
        py::arg("a_db"), py::arg("b_db"));
    m.def(
        "azimuth_autocorrelation",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast> &x) {
            return to_array(azimuth_autocorrelation(std::span<const double>(to_vector(x))));
        },
        py::arg("spectrum_db"));
    m.def(
        "fit_reverberation",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast> &delay_s,
           const py::array_t<double, py::array::c_style | py::array::forcecast> &power, double onset_s) {
            const ReverberationFit f = fit_reverberation(to_vector(delay_s), to_vector(power), onset_s);
            py::dict d;
            d["t_rev_s"] = f.t_rev_s;
            d["slope_db_per_s"] = f.slope_db_per_s;
            d["points"] = f.points;
            return d;
        },
        py::arg("delay_s"), py::arg("power"), py::arg("onset_s"));
    m.def(
        "ks_test_exponential",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast> &x, double rate) {
            const KsResult r = ks_test_exponential(to_vector(x), rate);
            return py::make_tuple(r.statistic, r.p_value);
        },
        py::arg("samples"), py::arg("rate") = 1.0);
    m.def(
        "room_report",
        [](double frequency_hz) {
            const RoomReport r = room_report(reference_rooms(), CarrierSpec(frequency_hz));
            py::list rows;
            for (const auto &e : r.entries)
            {
                py::dict d;
                d["label"] = e.row.label;
                d["d_s_m"] = e.row.d_s_m;
                d["gamma_sq"] = e.gamma_sq;
                d["prediction_db"] = e.prediction_db;
                d["measured_db"] = e.row.measured_median_db;
                d["error_db"] = e.error_db;
                rows.append(d);
            }
            return py::make_tuple(rows, r.rms_db);
        },
        py::arg("frequency_hz") = 28.0e9, "Predictions for the shipped measured rooms and their RMS error");

    m.def(
        "run_check",
        [](int id, std::uint64_t seed) {
            return check_dict(id == cli::check_count ? cli::determinism_check(seed) : run_check(id, seed));
        },
        py::arg("id"), py::arg("seed") = 1);
    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out, err;
            const int code = cli::run_command(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs a command-line subcommand in-process; returns (exit code, stdout, stderr)");
}
