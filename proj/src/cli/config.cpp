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

#include "cli/config.hpp"
#include "backscatter/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace backscatter::cli
{

using nlohmann::json;
using nlohmann::ordered_json;

namespace
{

std::size_t line_of_offset(const std::string &text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

struct Source
{
    const std::string &text;
    const std::string &name;

    // First occurrence of the quoted key gives the reported line
    [[noreturn]] void fail(const std::string &key, const std::string &message) const
    {
        const auto pos = text.find("\"" + key + "\"");
        std::string where = name;
        if (pos != std::string::npos)
            where += ":" + std::to_string(line_of_offset(text, pos));
        throw ConfigurationError(where + ": " + message);
    }
};

class Reader
{
public:
    Reader(const json &node, std::string path, const Source &src) : node_(node), path_(std::move(path)), src_(src)
    {
        if (!node_.is_object())
            src_.fail(last_key(), "'" + path_ + "' must be an object.");
    }

    bool has(const std::string &key) const { return node_.contains(key); }
    bool is_null(const std::string &key) const { return node_.contains(key) && node_.at(key).is_null(); }

    const json &raw(const std::string &key)
    {
        seen_.insert(key);
        return node_.at(key);
    }

    double number(const std::string &key, double fallback)
    {
        if (!has(key))
            return fallback;
        const json &v = raw(key);
        if (!v.is_number())
            fail(key, "must be a number");
        return v.get<double>();
    }

    double positive(const std::string &key, double fallback)
    {
        const double v = number(key, fallback);
        if (has(key) && !(v > 0.0 && std::isfinite(v)))
            fail(key, "must be positive");
        return v;
    }

    double non_negative(const std::string &key, double fallback)
    {
        const double v = number(key, fallback);
        if (has(key) && !(v >= 0.0 && std::isfinite(v)))
            fail(key, "must be non-negative");
        return v;
    }

    std::optional<double> optional_positive(const std::string &key, std::optional<double> fallback)
    {
        const auto v = optional_number(key, fallback);
        if (has(key) && v && !(*v > 0.0 && std::isfinite(*v)))
            fail(key, "must be positive or null");
        return v;
    }

    std::optional<double> optional_number(const std::string &key, std::optional<double> fallback)
    {
        if (!has(key))
            return fallback;
        if (is_null(key))
        {
            seen_.insert(key);
            return std::nullopt;
        }
        return number(key, 0.0);
    }

    std::uint64_t unsigned_integer(const std::string &key, std::uint64_t fallback)
    {
        if (!has(key))
            return fallback;
        const json &v = raw(key);
        if (!v.is_number_unsigned())
            fail(key, "must be a non-negative integer");
        return v.get<std::uint64_t>();
    }

    bool boolean(const std::string &key, bool fallback)
    {
        if (!has(key))
            return fallback;
        const json &v = raw(key);
        if (!v.is_boolean())
            fail(key, "must be true or false");
        return v.get<bool>();
    }

    std::string string(const std::string &key, const std::string &fallback)
    {
        if (!has(key))
            return fallback;
        const json &v = raw(key);
        if (!v.is_string())
            fail(key, "must be a string");
        return v.get<std::string>();
    }

    Reader object(const std::string &key)
    {
        const json &v = raw(key);
        if (!v.is_object())
            fail(key, "must be an object");
        return Reader(v, path_ + "." + key, src_);
    }

    [[noreturn]] void fail(const std::string &key, const std::string &what) const
    {
        src_.fail(key, "'" + path_ + "." + key + "' " + what + ".");
    }

    void finish() const
    {
        for (const auto &[key, value] : node_.items())
            if (!seen_.count(key))
                src_.fail(key, "unknown key '" + key + "' in '" + path_ + "'.");
    }

    const Source &source() const { return src_; }

private:
    std::string last_key() const
    {
        const auto dot = path_.rfind('.');
        return dot == std::string::npos ? path_ : path_.substr(dot + 1);
    }

    const json &node_;
    std::string path_;
    const Source &src_;
    std::set<std::string> seen_;
};

SurfaceClass parse_surface(Reader &r, const std::string &key, const SurfaceClass &fallback)
{
    if (!r.has(key))
        return fallback;
    const std::string token = r.string(key, "");
    try
    {
        const auto m = parse_material(token);
        if (!m)
            r.fail(key, "must name a concrete material (metal, dielectric:<eps>, explicit:<g>)");
        return *m;
    }
    catch (const DomainError &e)
    {
        r.fail(key, e.what());
    }
}

AntennaConfig parse_antenna(Reader r, const AntennaConfig &fallback)
{
    AntennaConfig a = fallback;
    const std::string kind = r.string("kind", "");
    if (kind == "gaussian_horn")
    {
        const double fallback_hpbw =
            std::holds_alternative<GaussianHorn>(fallback.kind) ? std::get<GaussianHorn>(fallback.kind).hpbw_deg : 10.0;
        const double hpbw = r.number("hpbw_deg", fallback_hpbw);
        if (!(hpbw > 0.0 && hpbw < 180.0))
            r.fail("hpbw_deg", "must lie in (0, 180)");
        a.kind = GaussianHorn{hpbw};
        a.path.clear();
    }
    else if (kind == "omni")
    {
        a.kind = Omni{};
        a.path.clear();
    }
    else if (kind == "tabulated")
    {
        a.path = r.string("path", "");
        if (a.path.empty())
            r.fail("path", "is required for a tabulated antenna");
        const double elevation = r.positive("elevation_gain", 1.0);
        try
        {
            Tabulated t = load_tabulated_csv(a.path);
            t.elevation_gain = elevation;
            a.kind = std::move(t);
        }
        catch (const DomainError &e)
        {
            r.fail("path", e.what());
        }
    }
    else
        r.fail("kind", "must be gaussian_horn, omni or tabulated");
    r.finish();
    return a;
}

std::vector<MeasuredRoom> parse_rooms(const json &list, const Source &src)
{
    if (!list.is_array())
        src.fail("rooms", "'rooms' must be a list.");
    std::vector<MeasuredRoom> rows;
    for (std::size_t i = 0; i < list.size(); ++i)
    {
        Reader r(list[i], "rooms[" + std::to_string(i) + "]", src);
        MeasuredRoom m;
        m.label = r.string("label", "room " + std::to_string(i));
        m.n_links = static_cast<int>(r.unsigned_integer("n_links", 0));
        m.dim_a_m = r.number("dim_a_m", 0.0);
        m.dim_b_m = r.number("dim_b_m", 0.0);
        const auto d_s = r.optional_number("d_s_m", std::nullopt);
        if (d_s)
            m.d_s_m = *d_s;
        else if (m.dim_a_m > 0.0 && m.dim_b_m > 0.0)
            m.d_s_m = 0.5 * std::min(m.dim_a_m, m.dim_b_m);
        else
            r.fail("d_s_m", "is required unless both room dimensions are given");
        if (!(m.d_s_m > 0.0))
            r.fail("d_s_m", "must be positive");
        const auto measured = r.optional_number("measured_median_db", std::nullopt);
        m.measured_median_db = measured ? *measured : std::numeric_limits<double>::quiet_NaN();
        const std::string token = r.string("material", "best_fit");
        try
        {
            m.material = parse_material(token);
        }
        catch (const DomainError &e)
        {
            r.fail("material", e.what());
        }
        if (!m.material && !measured)
            r.fail("material", "best_fit needs measured_median_db");
        r.finish();
        rows.push_back(std::move(m));
    }
    return rows;
}

std::optional<TargetSpec> parse_target(Reader &parent)
{
    if (!parent.has("target"))
        return TargetSpec{};
    if (parent.is_null("target"))
    {
        parent.raw("target");
        return std::nullopt;
    }
    Reader r = parent.object("target");
    TargetSpec t;
    if (r.has("sigma0_dbsm"))
    {
        const json &v = r.raw("sigma0_dbsm");
        if (v.is_string() && v.get<std::string>() == "-inf")
            t.sigma0_dbsm = -std::numeric_limits<double>::infinity();
        else if (v.is_number())
            t.sigma0_dbsm = v.get<double>();
        else
            r.fail("sigma0_dbsm", "must be a number or \"-inf\"");
    }
    t.coherence_time_s = r.positive("coherence_time_s", t.coherence_time_s);
    const std::string model = r.string("model", "swerling1");
    if (model == "swerling1")
        t.model = FluctuationModel::SwerlingI;
    else if (model == "constant")
        t.model = FluctuationModel::Constant;
    else
        r.fail("model", "must be swerling1 or constant");
    r.finish();
    return t;
}

std::vector<Waypoint> parse_waypoints(Reader &r)
{
    const json &list = r.raw("waypoints");
    if (!list.is_array())
        r.fail("waypoints", "must be a list of [t_s, x_m, y_m]");
    std::vector<Waypoint> out;
    for (const auto &w : list)
    {
        if (!w.is_array() || w.size() != 3 || !w[0].is_number() || !w[1].is_number() || !w[2].is_number())
            r.fail("waypoints", "entries must be [t_s, x_m, y_m]");
        out.push_back({w[0].get<double>(), {w[1].get<double>(), w[2].get<double>()}});
    }
    return out;
}

std::string shape_token(ProbeShape s)
{
    switch (s)
    {
    case ProbeShape::Hamming:
        return "hamming";
    case ProbeShape::Rect:
        return "rect";
    default:
        return "tabulated";
    }
}

ordered_json antenna_json(const AntennaConfig &a)
{
    ordered_json j;
    if (const auto *h = std::get_if<GaussianHorn>(&a.kind))
    {
        j["kind"] = "gaussian_horn";
        j["hpbw_deg"] = h->hpbw_deg;
    }
    else if (std::holds_alternative<Omni>(a.kind))
        j["kind"] = "omni";
    else
    {
        j["kind"] = "tabulated";
        j["path"] = a.path;
        j["elevation_gain"] = std::get<Tabulated>(a.kind).elevation_gain;
    }
    return j;
}

template <class T> ordered_json optional_json(const std::optional<T> &v)
{
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

} // namespace

AntennaPattern RunConfig::rx_pattern() const
{
    return make_pattern(rx.kind, grid());
}

AntennaPattern RunConfig::tx_pattern() const
{
    return make_pattern(tx.kind, grid());
}

SceneSpec RunConfig::scene_spec() const
{
    SceneSpec s = scene.waypoints.empty() ? default_walking_scene(scene.walking_speed_mps) : SceneSpec{};
    if (!scene.waypoints.empty())
        s.trajectory.waypoints = scene.waypoints;
    s.room = room.spec();
    s.clutter = clutter_params();
    s.target = scene.target;
    s.rx_kind = rx.kind;
    s.tx_kind = tx.kind;
    s.tx_pointing_deg = tx_pointing_deg;
    s.spin_period_s = scene.spin_period_s;
    s.sample_rate_hz = scene.sample_rate_hz;
    s.duration_s = scene.duration_s;
    s.regenerate_clutter = scene.regenerate_clutter;
    s.grid = grid();
    return s;
}

DelayGrid RunConfig::delay_grid() const
{
    DelayGrid g = DelayGrid::for_room(room.spec(), delay.delta_tau_ns * 1e-9);
    if (delay.tau_max_ns)
        g.tau_max_s = *delay.tau_max_ns * 1e-9;
    g.validate();
    return g;
}

ProbeWaveform RunConfig::probe() const
{
    return make_probe_waveform(delay.bandwidth_ghz * 1e9, delay.probe_rate_ghz * 1e9, delay.shape);
}

void RunConfig::validate() const
{
    try
    {
        if (ensemble == 0)
            throw ConfigurationError("ensemble must be at least 1.");
        if (pointings == 0)
            throw ConfigurationError("pointings must be at least 1.");
        (void)carrier();
        room.spec().validate();
        clutter_params().validate();
        const AzimuthGrid g = grid();
        if (g.delta_phi_deg() > clutter.phi_rms_deg)
            throw ConfigurationError("Azimuth spacing exceeds the clutter phi_rms.");
        (void)rx_pattern();
        (void)tx_pattern();
        (void)delay_grid();
        const ProbeWaveform p = probe();
        if (p.dt_s > delay.delta_tau_ns * 1e-9 * (1.0 + 1e-9))
            throw ConfigurationError("Probe sample interval exceeds the delay bin width.");
        scene_spec().validate();
        if (rooms)
            for (const auto &r : *rooms)
                if (!(r.d_s_m > 0.0))
                    throw ConfigurationError("Room '" + r.label + "' has a non-positive d_s.");
        for (int id : checks)
            if (id < 1 || id > 13)
                throw ConfigurationError("Check ids run from 1 to 13.");
    }
    catch (const DomainError &e)
    {
        throw ConfigurationError(e.what());
    }
}

RunConfig parse_config(const std::string &text, const std::string &source)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigurationError(source + ":" + std::to_string(line_of_offset(text, e.byte ? e.byte - 1 : 0)) +
                                 ": invalid JSON (" + e.what() + ").");
    }
    const Source src{text, source};
    if (!doc.is_object())
        throw ConfigurationError(source + ":1: configuration must be a JSON object.");

    // Metadata written by an earlier run: take its resolved config
    const json *root = &doc;
    if (doc.contains("config") && doc.contains("command"))
    {
        root = &doc.at("config");
        for (const auto &[key, value] : doc.items())
            if (key != "config" && key != "command" && key != "seed" && key != "version")
                src.fail(key, "unknown key '" + key + "' in metadata.");
    }

    RunConfig c;
    Reader r(*root, "config", src);
    c.seed = r.unsigned_integer("seed", c.seed);
    c.ensemble = r.unsigned_integer("ensemble", c.ensemble);
    if (c.ensemble == 0)
        r.fail("ensemble", "must be at least 1");
    c.carrier_hz = r.positive("carrier_hz", c.carrier_hz);

    if (r.has("room"))
    {
        Reader room = r.object("room");
        c.room.label = room.string("label", c.room.label);
        c.room.width_m = room.positive("width_m", c.room.width_m);
        c.room.length_m = room.positive("length_m", c.room.length_m);
        c.room.d_s_m = room.optional_positive("d_s_m", c.room.d_s_m);
        c.room.surface = parse_surface(room, "material", c.room.surface);
        c.room.t_rev_ns = room.positive("t_rev_ns", c.room.t_rev_ns);
        room.finish();
    }
    if (r.has("rooms") && r.has("rooms_csv"))
        r.fail("rooms_csv", "cannot be combined with 'rooms'");
    if (r.has("rooms") && !r.is_null("rooms"))
        c.rooms = parse_rooms(r.raw("rooms"), src);
    else if (r.has("rooms"))
        r.raw("rooms");
    if (r.has("rooms_csv"))
    {
        try
        {
            c.rooms = load_rooms_csv(r.string("rooms_csv", ""));
        }
        catch (const DomainError &e)
        {
            r.fail("rooms_csv", e.what());
        }
    }

    if (r.has("clutter"))
    {
        Reader cl = r.object("clutter");
        c.clutter.sigma_v_db = cl.non_negative("sigma_v_db", c.clutter.sigma_v_db);
        c.clutter.sigma_db = cl.non_negative("sigma_db", c.clutter.sigma_db);
        c.clutter.phi_rms_deg = cl.positive("phi_rms_deg", c.clutter.phi_rms_deg);
        cl.finish();
    }
    if (r.has("azimuth"))
    {
        Reader az = r.object("azimuth");
        c.spacing_deg = az.positive("spacing_deg", c.spacing_deg);
        c.pointings = az.unsigned_integer("pointings", c.pointings);
        if (c.pointings == 0)
            az.fail("pointings", "must be at least 1");
        az.finish();
    }
    if (r.has("antennas"))
    {
        Reader an = r.object("antennas");
        if (an.has("rx"))
            c.rx = parse_antenna(an.object("rx"), c.rx);
        if (an.has("tx"))
            c.tx = parse_antenna(an.object("tx"), c.tx);
        c.tx_pointing_deg = an.optional_number("tx_pointing_deg", c.tx_pointing_deg);
        an.finish();
    }
    if (r.has("delay"))
    {
        Reader d = r.object("delay");
        c.delay.delta_tau_ns = d.positive("delta_tau_ns", c.delay.delta_tau_ns);
        c.delay.tau_max_ns = d.optional_positive("tau_max_ns", c.delay.tau_max_ns);
        c.delay.bandwidth_ghz = d.positive("bandwidth_ghz", c.delay.bandwidth_ghz);
        c.delay.probe_rate_ghz = d.positive("probe_rate_ghz", c.delay.probe_rate_ghz);
        const std::string shape = d.string("probe_shape", shape_token(c.delay.shape));
        if (shape == "hamming")
            c.delay.shape = ProbeShape::Hamming;
        else if (shape == "rect")
            c.delay.shape = ProbeShape::Rect;
        else
            d.fail("probe_shape", "must be hamming or rect");
        d.finish();
    }
    if (r.has("scene"))
    {
        Reader s = r.object("scene");
        c.scene.target = parse_target(s);
        if (s.has("waypoints"))
            c.scene.waypoints = parse_waypoints(s);
        c.scene.walking_speed_mps = s.positive("walking_speed_mps", c.scene.walking_speed_mps);
        c.scene.spin_period_s = s.positive("spin_period_s", c.scene.spin_period_s);
        c.scene.sample_rate_hz = s.positive("sample_rate_hz", c.scene.sample_rate_hz);
        c.scene.duration_s = s.optional_positive("duration_s", c.scene.duration_s);
        c.scene.regenerate_clutter = s.boolean("regenerate_clutter", c.scene.regenerate_clutter);
        s.finish();
    }
    if (r.has("checks"))
    {
        const json &v = r.raw("checks");
        if (!v.is_array())
            r.fail("checks", "must be a list of check ids");
        for (const auto &id : v)
        {
            if (!id.is_number_integer())
                r.fail("checks", "must be a list of check ids");
            c.checks.push_back(id.get<int>());
        }
    }
    r.finish();

    try
    {
        c.validate();
    }
    catch (const ConfigurationError &e)
    {
        throw ConfigurationError(source + ": " + e.what());
    }
    return c;
}

RunConfig load_config(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigurationError("Cannot open configuration '" + path + "'.");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path);
}

ordered_json to_json(const RunConfig &c)
{
    ordered_json j;
    j["seed"] = c.seed;
    j["ensemble"] = c.ensemble;
    j["carrier_hz"] = c.carrier_hz;
    j["room"] = {{"label", c.room.label},
                 {"width_m", c.room.width_m},
                 {"length_m", c.room.length_m},
                 {"d_s_m", optional_json(c.room.d_s_m)},
                 {"material", material_token(c.room.surface)},
                 {"t_rev_ns", c.room.t_rev_ns}};
    if (c.rooms)
    {
        ordered_json rows = ordered_json::array();
        for (const auto &m : *c.rooms)
        {
            rows.push_back({{"label", m.label},
                            {"n_links", m.n_links},
                            {"dim_a_m", m.dim_a_m},
                            {"dim_b_m", m.dim_b_m},
                            {"d_s_m", m.d_s_m},
                            {"measured_median_db", std::isfinite(m.measured_median_db)
                                                       ? ordered_json(m.measured_median_db)
                                                       : ordered_json(nullptr)},
                            {"material", material_token(m.material)}});
        }
        j["rooms"] = rows;
    }
    else
        j["rooms"] = nullptr;
    j["clutter"] = {{"sigma_v_db", c.clutter.sigma_v_db},
                    {"sigma_db", c.clutter.sigma_db},
                    {"phi_rms_deg", c.clutter.phi_rms_deg}};
    j["azimuth"] = {{"spacing_deg", c.spacing_deg}, {"pointings", c.pointings}};
    j["antennas"] = {{"rx", antenna_json(c.rx)},
                     {"tx", antenna_json(c.tx)},
                     {"tx_pointing_deg", optional_json(c.tx_pointing_deg)}};
    j["delay"] = {{"delta_tau_ns", c.delay.delta_tau_ns},
                  {"tau_max_ns", optional_json(c.delay.tau_max_ns)},
                  {"bandwidth_ghz", c.delay.bandwidth_ghz},
                  {"probe_rate_ghz", c.delay.probe_rate_ghz},
                  {"probe_shape", shape_token(c.delay.shape)}};

    ordered_json scene;
    if (c.scene.target)
    {
        const TargetSpec &t = *c.scene.target;
        scene["target"] = {{"sigma0_dbsm", std::isfinite(t.sigma0_dbsm) ? ordered_json(t.sigma0_dbsm)
                                                                           : ordered_json("-inf")},
                           {"coherence_time_s", t.coherence_time_s},
                           {"model", t.model == FluctuationModel::Constant ? "constant" : "swerling1"}};
    }
    else
        scene["target"] = nullptr;
    ordered_json wps = ordered_json::array();
    for (const auto &w : c.scene_spec().trajectory.waypoints)
        wps.push_back({w.t_s, w.position.x_m, w.position.y_m});
    scene["waypoints"] = wps;
    scene["walking_speed_mps"] = c.scene.walking_speed_mps;
    scene["spin_period_s"] = c.scene.spin_period_s;
    scene["sample_rate_hz"] = c.scene.sample_rate_hz;
    scene["duration_s"] = optional_json(c.scene.duration_s);
    scene["regenerate_clutter"] = c.scene.regenerate_clutter;
    j["scene"] = scene;
    j["checks"] = c.checks;
    return j;
}

} // namespace backscatter::cli
