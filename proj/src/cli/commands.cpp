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

#include "cli/commands.hpp"
#include "backscatter/errors.hpp"
#include "backscatter/stats.hpp"
#include "cli/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unistd.h>

#ifndef BACKSCATTER_VERSION
#define BACKSCATTER_VERSION "0.0.0"
#endif

namespace backscatter::cli
{

using nlohmann::ordered_json;

namespace
{

struct Overrides
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> ensemble;
    std::string out_dir = "out";
    std::optional<double> room_w, room_l, d_s, t_rev_ns, hpbw_deg, bandwidth_ghz;
    std::optional<std::string> material;
    std::optional<std::string> checks;
};

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string metadata(const std::string &command, const RunConfig &c)
{
    ordered_json j;
    j["command"] = command;
    j["config"] = to_json(c);
    j["seed"] = c.seed;
    j["version"] = BACKSCATTER_VERSION;
    return j.dump(2) + "\n";
}

std::string float32_blob(const std::vector<double> &values)
{
    std::string out(values.size() * sizeof(float), '\0');
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        const auto f = static_cast<float>(values[i]);
        std::memcpy(out.data() + i * sizeof(float), &f, sizeof(float));
    }
    return out;
}

std::string sidecar(const std::string &file, std::size_t rows, std::size_t cols, const ordered_json &row_axis,
                    const ordered_json &col_axis, const std::string &quantity)
{
    ordered_json j;
    j["file"] = file;
    j["dtype"] = "float32";
    j["byte_order"] = "little";
    j["order"] = "row-major";
    j["shape"] = {rows, cols};
    j["axes"] = {row_axis, col_axis};
    j["value"] = {{"quantity", quantity}, {"unit", "dB"}};
    return j.dump(2) + "\n";
}

std::vector<int> parse_check_list(const std::string &text)
{
    std::vector<int> ids;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            std::size_t pos = 0;
            const int id = std::stoi(item, &pos);
            if (pos != item.size())
                throw std::invalid_argument(item);
            ids.push_back(id);
        }
        catch (const std::logic_error &)
        {
            throw ConfigurationError("--checks expects comma-separated ids, got '" + text + "'.");
        }
    }
    return ids;
}

RunConfig resolve_config(const Overrides &o)
{
    RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (o.seed)
        c.seed = *o.seed;
    if (o.ensemble)
        c.ensemble = *o.ensemble;
    if (o.room_w)
        c.room.width_m = *o.room_w;
    if (o.room_l)
        c.room.length_m = *o.room_l;
    if (o.d_s)
        c.room.d_s_m = *o.d_s;
    if (o.t_rev_ns)
        c.room.t_rev_ns = *o.t_rev_ns;
    if (o.material)
    {
        const auto m = parse_material(*o.material);
        if (!m)
            throw ConfigurationError("--material must name a concrete material.");
        c.room.surface = *m;
    }
    if (o.hpbw_deg)
        c.rx.kind = GaussianHorn{*o.hpbw_deg};
    if (o.bandwidth_ghz)
        c.delay.bandwidth_ghz = *o.bandwidth_ghz;
    if (o.checks)
        c.checks = parse_check_list(*o.checks);
    c.validate();
    return c;
}

bool room_overridden(const Overrides &o)
{
    return o.room_w || o.room_l || o.d_s || o.t_rev_ns || o.material;
}

FileSet cmd_predict(RunConfig &c, const Overrides &o, std::ostream &out)
{
    // Flags describing a room predict that room; otherwise the configured list or the reference rooms
    if (room_overridden(o) || !c.rooms)
    {
        if (room_overridden(o))
        {
            const RoomSpec room = c.room.spec();
            c.rooms = std::vector<MeasuredRoom>{{room.label, 0, room.width_m, room.length_m, room.resolved_d_s(),
                                                 std::numeric_limits<double>::quiet_NaN(), room.surface}};
        }
        else
            c.rooms = reference_rooms();
    }
    const RoomReport report = room_report(*c.rooms, c.carrier());

    std::string csv = "label,d_s_m,gamma_sq,p0_db,measured_db,error_db\n";
    for (const auto &e : report.entries)
    {
        std::string label = e.row.label;
        if (label.find_first_of(",\"") != std::string::npos)
        {
            std::string quoted = "\"";
            for (char ch : label)
                quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            label = quoted + "\"";
        }
        const bool measured = std::isfinite(e.row.measured_median_db);
        csv += label + "," + num(e.row.d_s_m) + "," + num(e.gamma_sq) + "," + num(e.prediction_db) + "," +
               (measured ? num(e.row.measured_median_db) : "") + "," + (measured ? num(e.error_db) : "") + "\n";
        out << e.row.label << ": " << num(e.prediction_db) << " dB";
        if (measured)
            out << " (measured " << num(e.row.measured_median_db) << ", error " << num(e.error_db) << ")";
        out << "\n";
    }
    if (std::isfinite(report.rms_db))
        out << "rms error " << num(report.rms_db) << " dB over measured rooms\n";
    return {{"predict.csv", csv}, {"metadata.json", metadata("predict", c)}};
}

FileSet cmd_synth_azimuth(const RunConfig &c, std::ostream &out)
{
    const AzimuthGrid grid = c.grid();
    const AntennaPattern rx = c.rx_pattern();
    const AntennaPattern tx = c.tx_pattern();
    const std::vector<double> pointings = uniform_pointings(c.pointings);
    const RoomSpec room = c.room.spec();
    const ClutterParams params = c.clutter_params();
    const RandomStream base = derive_stream(c.seed, "synth-azimuth");

    std::string spectra = "realization,pointing_deg,power_db\n";
    std::string summary = "realization,p_v_db,p0_db,mean_power_db\n";
    for (std::size_t i = 0; i < c.ensemble; ++i)
    {
        RandomStream stream = base.child("realization", i);
        const AzimuthField field = gen_azimuth_channel(room, params, grid, {}, stream);
        const SpunSpectrum s = spin_response(field, rx, tx, pointings, c.tx_pointing_deg);
        double total = 0.0;
        for (std::size_t p = 0; p < s.power.size(); ++p)
        {
            spectra += std::to_string(i) + "," + num(s.pointing_deg[p]) + "," + num(to_db(s.power[p])) + "\n";
            total += s.power[p];
        }
        summary += std::to_string(i) + "," + num(s.p_v_db) + "," + num(to_db(s.p0)) + "," +
                   num(to_db(total / static_cast<double>(s.power.size()))) + "\n";
    }
    out << "synthesized " << c.ensemble << " spun spectra over " << c.pointings << " pointings\n";
    return {{"spectra.csv", spectra}, {"realizations.csv", summary}, {"metadata.json", metadata("synth-azimuth", c)}};
}

FileSet cmd_synth_delay(const RunConfig &c, std::ostream &out)
{
    const AzimuthGrid grid = c.grid();
    const AntennaPattern rx = c.rx_pattern();
    const AntennaPattern tx = c.tx_pattern();
    const std::vector<double> pointings = uniform_pointings(c.pointings);
    const RoomSpec room = c.room.spec();
    const ClutterParams params = c.clutter_params();
    const DelayGrid delay = c.delay_grid();
    const ProbeWaveform probe = c.probe();
    const RandomStream base = derive_stream(c.seed, "synth-delay");

    std::vector<double> profile(delay.size(), 0.0);
    std::vector<double> first_map;
    for (std::size_t i = 0; i < c.ensemble; ++i)
    {
        RandomStream stream = base.child("realization", i);
        const DelayAzimuthField field = gen_delay_azimuth_channel(room, params, delay, grid, stream);
        const PowerDelayMap map = band_limit(field, probe, rx, tx, pointings, c.tx_pointing_deg);
        const std::vector<double> avg = map.azimuth_average();
        for (std::size_t m = 0; m < avg.size(); ++m)
            profile[m] += avg[m] / static_cast<double>(c.ensemble);
        if (i == 0)
        {
            first_map = map.power;
            for (double &v : first_map)
                v = to_db(v);
        }
    }

    std::vector<double> delays(delay.size());
    std::string pdp = "delay_ns,power_db\n";
    for (std::size_t m = 0; m < delays.size(); ++m)
    {
        delays[m] = delay.tau(m);
        pdp += num(delays[m] * 1e9) + "," + num(to_db(profile[m])) + "\n";
    }

    std::string fit_csv = "t_rev_ns_configured,t_rev_ns_fitted,slope_db_per_ns,points,status\n";
    try
    {
        const ReverberationFit fit = fit_reverberation(delays, profile, delay.onset_s);
        fit_csv += num(c.room.t_rev_ns) + "," + num(fit.t_rev_s * 1e9) + "," + num(fit.slope_db_per_s * 1e-9) + "," +
                   std::to_string(fit.points) + ",ok\n";
        out << "fitted reverberation time " << num(fit.t_rev_s * 1e9) << " ns (configured " << num(c.room.t_rev_ns)
            << " ns)\n";
    }
    catch (const FitError &e)
    {
        fit_csv += num(c.room.t_rev_ns) + ",nan,nan,0,fit_failed\n";
        out << "reverberation fit failed: " << e.what() << "\n";
    }

    const ordered_json pointing_axis = {{"name", "pointing"}, {"unit", "deg"}, {"start", 0.0},
                                        {"step", 360.0 / static_cast<double>(c.pointings)}};
    const ordered_json delay_axis = {{"name", "delay"}, {"unit", "ns"}, {"start", 0.0}, {"step", c.delay.delta_tau_ns}};
    return {{"pdp.csv", pdp},
            {"pdp_fit.csv", fit_csv},
            {"delay_map.f32", float32_blob(first_map)},
            {"delay_map.json", sidecar("delay_map.f32", pointings.size(), delay.size(), pointing_axis, delay_axis,
                                       "band-limited received power / P_T, realization 0")},
            {"metadata.json", metadata("synth-delay", c)}};
}

FileSet cmd_scene(const RunConfig &c, std::ostream &out)
{
    const SceneSpec spec = c.scene_spec();
    const TimeAzimuthMap map = compose_scene(spec, derive_stream(c.seed, "scene"));

    std::string csv = "t_s,pointing_deg,power_db,target_power_db,target_range_m,target_bearing_deg\n";
    for (const auto &s : map.samples)
    {
        csv += num(s.t_s) + "," + num(s.pointing_deg) + "," + num(to_db(s.power)) + ",";
        if (s.target)
            csv += num(to_db(s.target_power)) + "," + num(s.target->range_m) + "," + num(s.target->bearing_deg);
        else
            csv += ",,";
        csv += "\n";
    }
    const ordered_json rot_axis = {{"name", "rotation"}, {"unit", "s"}, {"start", 0.0}, {"step", c.scene.spin_period_s}};
    const ordered_json col_axis = {{"name", "pointing"}, {"unit", "deg"}, {"start", 0.0},
                                   {"step", 360.0 / static_cast<double>(map.columns)}};
    out << "composed " << map.samples.size() << " samples, " << map.rotations << " full rotations\n";
    return {{"scene_samples.csv", csv},
            {"scene_map.f32", float32_blob(map.binned_db())},
            {"scene_map.json", sidecar("scene_map.f32", map.rotations, map.columns, rot_axis, col_axis,
                                       "received power / P_T per rotation and pointing")},
            {"metadata.json", metadata("scene", c)}};
}

std::string report_json(const ValidationReport &report)
{
    ordered_json j;
    j["seed"] = report.seed;
    j["all_passed"] = report.all_passed();
    ordered_json checks = ordered_json::array();
    for (const auto &c : report.checks)
        checks.push_back({{"id", c.id},
                          {"name", c.name},
                          {"statistic", std::isfinite(c.statistic) ? ordered_json(c.statistic) : ordered_json(nullptr)},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass},
                          {"detail", c.detail}});
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

FileSet cmd_validate(const RunConfig &c, std::ostream &out, bool &passed)
{
    std::vector<int> ids = c.checks;
    ValidationReport report;
    report.seed = c.seed;
    if (ids.empty())
        for (int i = 1; i <= check_count; ++i)
            ids.push_back(i);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (int id : ids)
    {
        CheckResult r;
        if (id == check_count)
        {
            const auto t0 = std::chrono::steady_clock::now();
            r = determinism_check(c.seed);
            r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        else
            r = run_check(id, c.seed);
        char line[160];
        std::snprintf(line, sizeof line, "[%s] %2d %-36s statistic %-12.6g %7.2f s\n", r.pass ? "PASS" : "FAIL", r.id,
                      r.name.c_str(), r.statistic, r.runtime_s);
        out << line << "      " << r.detail << "\n";
        out.flush();
        report.checks.push_back(std::move(r));
    }
    passed = report.all_passed();
    return {{"validation_report.json", report_json(report)}, {"metadata.json", metadata("validate", c)}};
}

void add_common_options(CLI::App *sub, Overrides &o)
{
    sub->add_option("--config", o.config_path, "JSON configuration (or metadata.json of an earlier run)");
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--ensemble", o.ensemble, "Number of realizations");
    sub->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--room-w", o.room_w, "Room width, m");
    sub->add_option("--room-l", o.room_l, "Room length, m");
    sub->add_option("--d-s", o.d_s, "Distance to the nearest wall, m");
    sub->add_option("--material", o.material, "metal | dielectric:<eps_r> | explicit:<gamma_sq>");
    sub->add_option("--t-rev-ns", o.t_rev_ns, "Reverberation time, ns");
    sub->add_option("--hpbw-deg", o.hpbw_deg, "Receive horn half-power beamwidth, deg");
    sub->add_option("--bandwidth-ghz", o.bandwidth_ghz, "Probe bandwidth, GHz");
}

std::atomic<unsigned> scratch_counter{0};

std::filesystem::path scratch_dir()
{
    const auto dir = std::filesystem::temp_directory_path() /
                     ("backscatter-" + std::to_string(::getpid()) + "-" + std::to_string(scratch_counter++));
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_file(const std::filesystem::path &p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

void write_atomically(const std::filesystem::path &dir, const FileSet &files)
{
    std::filesystem::create_directories(dir);
    std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged;
    try
    {
        for (const auto &[name, bytes] : files)
        {
            const auto final_path = dir / name;
            const auto tmp = dir / ("." + name + ".tmp");
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            f.close();
            if (!f)
                throw std::runtime_error("Cannot write '" + tmp.string() + "'.");
            staged.emplace_back(tmp, final_path);
        }
    }
    catch (...)
    {
        for (const auto &s : staged)
            std::filesystem::remove(s.first);
        throw;
    }
    for (const auto &[tmp, final_path] : staged)
        std::filesystem::rename(tmp, final_path);
}

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Statistical monostatic clutter and target simulator", "backscatter"};
    app.require_subcommand(1);
    app.set_version_flag("--version", BACKSCATTER_VERSION);

    Overrides o;
    std::vector<std::pair<std::string, CLI::App *>> subs;
    for (const char *name : {"predict", "synth-azimuth", "synth-delay", "scene", "validate"})
    {
        static const std::map<std::string, std::string> help = {
            {"predict", "Average clutter backscatter per room"},
            {"synth-azimuth", "Spun azimuth spectra"},
            {"synth-delay", "Band-limited pointing-delay power maps"},
            {"scene", "Time-azimuth map of a moving target in clutter"},
            {"validate", "Acceptance suite, JSON report"}};
        CLI::App *sub = app.add_subcommand(name, help.at(name));
        add_common_options(sub, o);
        if (std::string(name) == "validate")
            sub->add_option("--checks", o.checks, "Comma-separated check ids (default: all)");
        subs.emplace_back(name, sub);
    }

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config_error;
    }

    std::string command;
    for (const auto &[name, sub] : subs)
        if (sub->parsed())
            command = name;

    RunConfig config;
    try
    {
        config = resolve_config(o);
    }
    catch (const std::invalid_argument &e)
    {
        err << "configuration error: " << e.what() << "\n";
        return exit_config_error;
    }

    try
    {
        FileSet files;
        bool passed = true;
        if (command == "predict")
            files = cmd_predict(config, o, out);
        else if (command == "synth-azimuth")
            files = cmd_synth_azimuth(config, out);
        else if (command == "synth-delay")
            files = cmd_synth_delay(config, out);
        else if (command == "scene")
            files = cmd_scene(config, out);
        else
            files = cmd_validate(config, out, passed);
        write_atomically(o.out_dir, files);
        return passed ? exit_ok : exit_validation_failed;
    }
    catch (const ConfigurationError &e)
    {
        err << "configuration error: " << e.what() << "\n";
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        err << "runtime error: " << e.what() << "\n";
        return exit_runtime_error;
    }
}

CheckResult determinism_check(std::uint64_t seed)
{
    const std::vector<std::vector<std::string>> runs = {{"predict"},
                                                        {"synth-azimuth", "--ensemble", "3"},
                                                        {"synth-delay", "--ensemble", "1"},
                                                        {"scene"},
                                                        {"validate", "--checks", "1,2,3"}};
    const auto root = scratch_dir();
    std::ostringstream sink;
    std::size_t identical = 0, compared = 0;
    std::string detail;
    for (const auto &run : runs)
    {
        std::vector<std::string> listing[2];
        bool same = true;
        for (int pass = 0; pass < 2; ++pass)
        {
            const auto dir = root / (run.front() + (pass ? "-b" : "-a"));
            std::vector<std::string> args = run;
            args.insert(args.end(), {"--seed", std::to_string(seed), "--out", dir.string()});
            if (run_command(args, sink, sink) != exit_ok)
                same = false;
            if (std::filesystem::exists(dir))
                for (const auto &entry : std::filesystem::directory_iterator(dir))
                    listing[pass].push_back(entry.path().filename().string());
            std::sort(listing[pass].begin(), listing[pass].end());
        }
        same = same && !listing[0].empty() && listing[0] == listing[1];
        if (same)
            for (const auto &name : listing[0])
            {
                ++compared;
                same = same && read_file(root / (run.front() + "-a") / name) == read_file(root / (run.front() + "-b") / name);
            }
        identical += same;
        detail += run.front() + (same ? " identical; " : " DIFFERS; ");
    }
    std::error_code ec;
    std::filesystem::remove_all(root, ec);

    CheckResult r;
    r.id = check_count;
    r.name = "determinism";
    r.statistic = static_cast<double>(identical);
    r.tolerance = "all 5 subcommands byte-identical across two runs";
    r.pass = identical == runs.size();
    r.detail = detail + std::to_string(compared) + " files compared";
    return r;
}

ValidationReport full_validation(std::uint64_t seed, const std::vector<int> &ids)
{
    std::vector<int> sim;
    bool with_determinism = ids.empty();
    for (int id : ids)
    {
        if (id == check_count)
            with_determinism = true;
        else
            sim.push_back(id);
    }
    ValidationReport report;
    report.seed = seed;
    if (ids.empty() || !sim.empty())
        report = run_validation(seed, sim);
    if (with_determinism)
    {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r = determinism_check(seed);
        r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.checks.push_back(std::move(r));
    }
    return report;
}

} // namespace backscatter::cli
