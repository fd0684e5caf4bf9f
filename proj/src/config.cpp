// SPDX-License-Identifier: Apache-2.0
//
// toma - towed movable antenna array simulator
// Copyright (C) 2026 The toma authors
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

#include "toma/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace toma
{
    namespace
    {
        constexpr std::pair<ExperimentKind, std::string_view> kind_names[] = {
            {ExperimentKind::convergence, "convergence"},
            {ExperimentKind::sweep_n, "sweep_n"},
            {ExperimentKind::sweep_eves, "sweep_eves"},
            {ExperimentKind::sweep_m_fixed_budget, "sweep_m_fixed_budget"},
            {ExperimentKind::sweep_cable_length, "sweep_cable_length"},
            {ExperimentKind::sweep_sphere_radius, "sweep_sphere_radius"},
            {ExperimentKind::sweep_rician, "sweep_rician"},
            {ExperimentKind::analyze_theorems, "analyze_theorems"},
        };

        constexpr std::pair<Scheme, std::string_view> scheme_names[] = {
            {Scheme::toma_opt, "toma_opt"},     {Scheme::horizontal, "horizontal"}, {Scheme::vertical, "vertical"},
            {Scheme::hybrid, "hybrid"},         {Scheme::fpa_dense, "fpa_dense"},   {Scheme::fpa_sparse, "fpa_sparse"},
            {Scheme::upper_bound, "upper_bound"},
        };

        std::string_view trim(std::string_view s)
        {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.remove_suffix(1);
            return s;
        }

        // Leading number plus the trimmed remainder. Accepts "inf".
        std::optional<std::pair<double, std::string_view>> split_number(std::string_view text)
        {
            text = trim(text);
            if (!text.empty() && text.front() == '+')
                text.remove_prefix(1);
            if (text == ".inf" || text == ".Inf" || text == ".INF")
                return std::pair{std::numeric_limits<double>::infinity(), std::string_view{}};
            double v = 0;
            const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc())
                return std::nullopt;
            return std::pair{v, trim(std::string_view(end, static_cast<size_t>(text.data() + text.size() - end)))};
        }

        std::string fmt(double v)
        {
            if (std::isinf(v))
                return v > 0 ? "inf" : "-inf";
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        // ---------------------------------------------------------------
        // YAML access with positioned errors

        [[noreturn]] void fail(const YAML::Node &node, const std::string &msg)
        {
            const auto mark = node.Mark();
            if (mark.line < 0)
                throw ConfigError(msg);
            throw ConfigError(msg, mark.line + 1, mark.column + 1);
        }

        void check_keys(const YAML::Node &map, std::string_view section, std::initializer_list<std::string_view> allowed)
        {
            if (!map.IsMap())
                fail(map, "section '" + std::string(section) + "' must be a mapping");
            for (auto it = map.begin(); it != map.end(); ++it)
            {
                const std::string key = it->first.Scalar();
                if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                    fail(it->first, "unknown key '" + key + "' in section '" + std::string(section) + "'");
            }
        }

        std::string scalar(const YAML::Node &n, std::string_view what)
        {
            if (!n.IsScalar())
                fail(n, std::string(what) + " must be a scalar");
            return n.Scalar();
        }

        double read_double(const YAML::Node &n, std::string_view what, bool allow_inf = false)
        {
            const std::string s = scalar(n, what);
            const auto parsed = split_number(s);
            if (!parsed || !parsed->second.empty() || std::isnan(parsed->first))
                fail(n, std::string(what) + ": expected a number, got '" + s + "'");
            if (std::isinf(parsed->first) && !allow_inf)
                fail(n, std::string(what) + " must be finite");
            return parsed->first;
        }

        template <typename Int>
        Int read_int(const YAML::Node &n, std::string_view what)
        {
            const std::string s = scalar(n, what);
            const std::string_view t = trim(s);
            Int v{};
            const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc() || end != t.data() + t.size())
                fail(n, std::string(what) + ": expected an integer, got '" + s + "'");
            return v;
        }

        double read_quantity(const YAML::Node &n, std::string_view what, double (*conv)(std::string_view))
        {
            const std::string s = scalar(n, what);
            try
            {
                return conv(s);
            }
            catch (const ConfigError &e)
            {
                fail(n, std::string(what) + ": " + e.what());
            }
        }

        Vec3d read_vec3(const YAML::Node &n, std::string_view what)
        {
            if (!n.IsSequence() || n.size() != 3)
                fail(n, std::string(what) + " must be a list of three numbers");
            return {read_double(n[0], what), read_double(n[1], what), read_double(n[2], what)};
        }

        RegionSpec read_region(const YAML::Node &n)
        {
            if (!n.IsMap())
                fail(n, "region must be a mapping");
            const auto kind_node = n["kind"];
            const std::string kind = kind_node ? scalar(kind_node, "region kind") : "cone";
            RegionSpec r;
            if (kind == "cone")
            {
                check_keys(n, "region", {"kind", "axis", "vertex_angle", "r_min", "r_max"});
                r.kind = RegionKind::cone;
                if (n["axis"])
                {
                    r.axis = read_vec3(n["axis"], "axis");
                    const double norm = r.axis.norm();
                    if (!(norm > 0.0))
                        fail(n["axis"], "axis must be non-zero");
                    if (std::abs(norm - 1.0) > 1e-12)
                        r.axis /= norm;
                }
                if (n["vertex_angle"])
                    r.vertex_angle = read_double(n["vertex_angle"], "vertex_angle");
                if (n["r_min"])
                    r.r_min = read_double(n["r_min"], "r_min");
                if (n["r_max"])
                    r.r_max = read_double(n["r_max"], "r_max");
            }
            else if (kind == "sphere" || kind == "sphere_surface")
            {
                check_keys(n, "region", {"kind", "radius"});
                r.kind = RegionKind::sphere_surface;
                if (n["radius"])
                    r.radius = read_double(n["radius"], "radius");
            }
            else
                fail(kind_node, "unknown region kind '" + kind + "' (cone or sphere)");
            try
            {
                r.validate();
            }
            catch (const std::invalid_argument &e)
            {
                fail(n, e.what());
            }
            return r;
        }

        std::vector<RegionSpec> read_regions(const YAML::Node &n, std::string_view what)
        {
            if (!n.IsSequence())
                fail(n, std::string(what) + " must be a list of regions");
            std::vector<RegionSpec> out;
            for (const auto &item : n)
                out.push_back(read_region(item));
            return out;
        }

        void read_scenario(const YAML::Node &n, Scenario &sc)
        {
            check_keys(n, "scenario",
                       {"cables", "elements_per_cable", "cable_length", "min_separation", "users", "eavesdroppers",
                        "carrier_frequency", "tx_power", "noise_power", "rician_factor", "seed", "assignment",
                        "user_regions", "eve_regions"});
            if (n["cables"])
                sc.cables = read_int<int>(n["cables"], "cables");
            if (n["elements_per_cable"])
                sc.elements_per_cable = read_int<int>(n["elements_per_cable"], "elements_per_cable");
            if (n["cable_length"])
                sc.cable_length = read_double(n["cable_length"], "cable_length");
            if (n["min_separation"])
                sc.min_separation = read_double(n["min_separation"], "min_separation");
            if (n["users"])
                sc.users = read_int<int>(n["users"], "users");
            if (n["eavesdroppers"])
                sc.eavesdroppers = read_int<int>(n["eavesdroppers"], "eavesdroppers");

            double freq = sc.radio.carrier_freq;
            double power = sc.radio.tx_power;
            double noise = sc.radio.noise_power;
            if (n["carrier_frequency"])
                freq = read_quantity(n["carrier_frequency"], "carrier_frequency", parse_frequency);
            if (n["tx_power"])
                power = read_quantity(n["tx_power"], "tx_power", parse_power);
            if (n["noise_power"])
                noise = read_quantity(n["noise_power"], "noise_power", parse_power);
            try
            {
                sc.radio = RadioParams::from_carrier(freq, power, noise);
            }
            catch (const std::invalid_argument &e)
            {
                fail(n, e.what());
            }

            if (n["rician_factor"])
                sc.rician_factor = read_double(n["rician_factor"], "rician_factor", true);
            if (n["seed"])
                sc.seed = read_int<std::uint64_t>(n["seed"], "seed");
            if (n["assignment"])
            {
                const std::string a = scalar(n["assignment"], "assignment");
                if (a == "even_split")
                    sc.assignment = RegionAssignment::even_split;
                else if (a == "uniform_random")
                    sc.assignment = RegionAssignment::uniform_random;
                else
                    fail(n["assignment"], "assignment must be even_split or uniform_random");
            }
            if (n["user_regions"])
                sc.user_regions = read_regions(n["user_regions"], "user_regions");
            if (n["eve_regions"])
                sc.eve_regions = read_regions(n["eve_regions"], "eve_regions");
        }

        void read_optimizer(const YAML::Node &n, OptimizerParams &p)
        {
            check_keys(n, "optimizer",
                       {"outer_iters", "inner_iters", "tau_max", "tau_min", "shrink", "armijo", "outer_tol",
                        "mc_samples", "fd_step"});
            if (n["outer_iters"])
                p.outer_iters = read_int<int>(n["outer_iters"], "outer_iters");
            if (n["inner_iters"])
                p.inner_iters = read_int<int>(n["inner_iters"], "inner_iters");
            if (n["tau_max"])
                p.tau_max = read_double(n["tau_max"], "tau_max");
            if (n["tau_min"])
                p.tau_min = read_double(n["tau_min"], "tau_min");
            if (n["shrink"])
                p.shrink = read_double(n["shrink"], "shrink");
            if (n["armijo"])
                p.armijo = read_double(n["armijo"], "armijo");
            if (n["outer_tol"])
                p.outer_tol = read_double(n["outer_tol"], "outer_tol");
            if (n["mc_samples"])
                p.mc_samples = read_int<int>(n["mc_samples"], "mc_samples");
            if (n["fd_step"])
                p.fd_step = read_double(n["fd_step"], "fd_step");
        }

        bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

        std::string region_yaml(const RegionSpec &r)
        {
            if (r.kind == RegionKind::sphere_surface)
                return "{kind: sphere, radius: " + fmt(r.radius) + "}";
            return "{kind: cone, axis: [" + fmt(r.axis.x()) + ", " + fmt(r.axis.y()) + ", " + fmt(r.axis.z()) +
                   "], vertex_angle: " + fmt(r.vertex_angle) + ", r_min: " + fmt(r.r_min) + ", r_max: " +
                   fmt(r.r_max) + "}";
        }

        void regions_yaml(std::ostringstream &os, std::string_view key, const std::vector<RegionSpec> &regions)
        {
            os << "  " << key << ":";
            if (regions.empty())
            {
                os << " []\n";
                return;
            }
            os << "\n";
            for (const auto &r : regions)
                os << "    - " << region_yaml(r) << "\n";
        }
    }

    std::string_view to_string(ExperimentKind k)
    {
        for (const auto &[kind, name] : kind_names)
            if (kind == k)
                return name;
        return "unknown";
    }

    std::string_view to_string(Scheme s)
    {
        for (const auto &[scheme, name] : scheme_names)
            if (scheme == s)
                return name;
        return "unknown";
    }

    std::optional<ExperimentKind> parse_experiment_kind(std::string_view name)
    {
        for (const auto &[kind, n] : kind_names)
            if (n == name)
                return kind;
        return std::nullopt;
    }

    std::optional<Scheme> parse_scheme(std::string_view name)
    {
        for (const auto &[scheme, n] : scheme_names)
            if (n == name)
                return scheme;
        return std::nullopt;
    }

    std::string_view sweep_parameter(ExperimentKind k)
    {
        switch (k)
        {
        case ExperimentKind::convergence:
        case ExperimentKind::sweep_m_fixed_budget:
            return "M";
        case ExperimentKind::sweep_n:
            return "N";
        case ExperimentKind::sweep_eves:
            return "I";
        case ExperimentKind::sweep_cable_length:
            return "L";
        case ExperimentKind::sweep_sphere_radius:
            return "radius";
        case ExperimentKind::sweep_rician:
            return "kappa";
        case ExperimentKind::analyze_theorems:
            return "none";
        }
        return "none";
    }

    const std::vector<Scheme> &all_schemes()
    {
        static const std::vector<Scheme> schemes = {Scheme::toma_opt, Scheme::horizontal, Scheme::vertical,
                                                    Scheme::hybrid,   Scheme::fpa_dense,  Scheme::fpa_sparse,
                                                    Scheme::upper_bound};
        return schemes;
    }

    std::vector<double> default_sweep_values(ExperimentKind k, const Scenario &sc)
    {
        switch (k)
        {
        case ExperimentKind::convergence:
            return {double(sc.cables)};
        case ExperimentKind::sweep_n:
            return {4, 6, 8, 10, 12};
        case ExperimentKind::sweep_eves:
            return {0, 5, 10, 15, 20};
        case ExperimentKind::sweep_m_fixed_budget:
            return {1, 2, 4, 8};
        case ExperimentKind::sweep_cable_length:
            return {1, 2, 4, 8};
        case ExperimentKind::sweep_sphere_radius:
            return {100, 200, 500, 1000};
        case ExperimentKind::sweep_rician:
            return {0.1, 1, 10, 100, std::numeric_limits<double>::infinity()};
        case ExperimentKind::analyze_theorems:
            return {};
        }
        return {};
    }

    void ExperimentSpec::validate() const
    {
        scenario.validate();
        optimizer.validate();
        if (eval_samples < 0)
            throw ConfigError("eval_samples must be non-negative");
        if (schemes.empty())
            throw ConfigError("schemes must not be empty");
        for (size_t i = 0; i < schemes.size(); ++i)
            for (size_t j = i + 1; j < schemes.size(); ++j)
                if (schemes[i] == schemes[j])
                    throw ConfigError("scheme '" + std::string(to_string(schemes[i])) + "' listed twice");
        if (kind == ExperimentKind::analyze_theorems)
            return;

        if (values.empty())
            throw ConfigError("sweep values must not be empty");
        for (size_t i = 1; i < values.size(); ++i)
            if (!(values[i - 1] < values[i]))
                throw ConfigError("sweep values must be strictly increasing");

        const int budget = scenario.num_elements();
        const int receivers = scenario.users + scenario.eavesdroppers;
        for (double v : values)
        {
            const std::string sv = fmt(v);
            switch (kind)
            {
            case ExperimentKind::convergence:
            case ExperimentKind::sweep_m_fixed_budget:
                if (!is_integer(v) || v < 1 || budget % static_cast<int>(v) != 0)
                    throw ConfigError("M = " + sv + " must be a positive divisor of the element budget " +
                                      std::to_string(budget));
                break;
            case ExperimentKind::sweep_n:
                if (!is_integer(v) || v < 1)
                    throw ConfigError("N = " + sv + " must be a positive integer");
                if (receivers > scenario.cables * static_cast<int>(v))
                    throw ConfigError("N = " + sv + " leaves fewer elements than receivers");
                break;
            case ExperimentKind::sweep_eves:
                if (!is_integer(v) || v < 0)
                    throw ConfigError("I = " + sv + " must be a non-negative integer");
                if (scenario.users + static_cast<int>(v) > budget)
                    throw ConfigError("I = " + sv + " exceeds the number of elements");
                if (v > 0 && scenario.eve_regions.empty())
                    throw ConfigError("eve_regions must not be empty");
                break;
            case ExperimentKind::sweep_cable_length:
            case ExperimentKind::sweep_sphere_radius:
                if (!(v > 0) || !std::isfinite(v))
                    throw ConfigError(std::string(sweep_parameter(kind)) + " = " + sv + " must be positive");
                break;
            case ExperimentKind::sweep_rician:
                if (!(v >= 0))
                    throw ConfigError("kappa = " + sv + " must be non-negative");
                break;
            case ExperimentKind::analyze_theorems:
                break;
            }
        }
    }

    double parse_power(std::string_view text)
    {
        const auto parsed = split_number(text);
        if (!parsed || !std::isfinite(parsed->first))
            throw ConfigError("invalid power '" + std::string(text) + "'");
        const auto [v, unit] = *parsed;
        if (unit.empty() || unit == "W")
            return v;
        if (unit == "mW")
            return v * 1e-3;
        if (unit == "dBm")
            return std::pow(10.0, (v - 30.0) / 10.0);
        if (unit == "dBW")
            return std::pow(10.0, v / 10.0);
        throw ConfigError("unknown power unit '" + std::string(unit) + "' (W, mW, dBW, dBm)");
    }

    double parse_frequency(std::string_view text)
    {
        const auto parsed = split_number(text);
        if (!parsed || !std::isfinite(parsed->first))
            throw ConfigError("invalid frequency '" + std::string(text) + "'");
        const auto [v, unit] = *parsed;
        if (unit.empty() || unit == "Hz")
            return v;
        if (unit == "kHz")
            return v * 1e3;
        if (unit == "MHz")
            return v * 1e6;
        if (unit == "GHz")
            return v * 1e9;
        throw ConfigError("unknown frequency unit '" + std::string(unit) + "' (Hz, kHz, MHz, GHz)");
    }

    ExperimentSpec parse_config(std::string_view text)
    {
        YAML::Node root;
        try
        {
            root = YAML::Load(std::string(text));
        }
        catch (const YAML::ParserException &e)
        {
            throw ConfigError(e.msg, e.mark.line + 1, e.mark.column + 1);
        }

        ExperimentSpec spec;
        if (root.IsNull())
        {
            spec.validate();
            return spec;
        }
        check_keys(root, "top level", {"experiment", "scenario", "optimizer"});

        try
        {
            if (root["scenario"])
                read_scenario(root["scenario"], spec.scenario);
            if (root["optimizer"])
                read_optimizer(root["optimizer"], spec.optimizer);

            bool have_values = false;
            if (const auto ex = root["experiment"])
            {
                check_keys(ex, "experiment", {"kind", "values", "schemes", "eval_samples"});
                if (ex["kind"])
                {
                    const std::string name = scalar(ex["kind"], "kind");
                    const auto kind = parse_experiment_kind(name);
                    if (!kind)
                        fail(ex["kind"], "unknown experiment kind '" + name + "'");
                    spec.kind = *kind;
                }
                if (const auto vals = ex["values"])
                {
                    if (!vals.IsSequence())
                        fail(vals, "values must be a list");
                    spec.values.clear();
                    for (const auto &v : vals)
                        spec.values.push_back(read_double(v, "values", true));
                    have_values = true;
                }
                if (const auto sch = ex["schemes"])
                {
                    if (!sch.IsSequence())
                        fail(sch, "schemes must be a list");
                    spec.schemes.clear();
                    for (const auto &s : sch)
                    {
                        const std::string name = scalar(s, "scheme");
                        const auto scheme = parse_scheme(name);
                        if (!scheme)
                            fail(s, "unknown scheme '" + name + "'");
                        spec.schemes.push_back(*scheme);
                    }
                }
                if (ex["eval_samples"])
                    spec.eval_samples = read_int<int>(ex["eval_samples"], "eval_samples");
            }
            if (!have_values)
                spec.values = default_sweep_values(spec.kind, spec.scenario);
        }
        catch (const YAML::Exception &e)
        {
            throw ConfigError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : -1, e.mark.line >= 0 ? e.mark.column + 1 : -1);
        }

        spec.validate();
        return spec;
    }

    ExperimentSpec load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }

    std::string serialize(const ExperimentSpec &spec)
    {
        std::ostringstream os;
        const auto &sc = spec.scenario;
        const auto &op = spec.optimizer;

        os << "experiment:\n";
        os << "  kind: " << to_string(spec.kind) << "\n";
        os << "  values: [";
        for (size_t i = 0; i < spec.values.size(); ++i)
            os << (i ? ", " : "") << fmt(spec.values[i]);
        os << "]\n";
        os << "  schemes: [";
        for (size_t i = 0; i < spec.schemes.size(); ++i)
            os << (i ? ", " : "") << to_string(spec.schemes[i]);
        os << "]\n";
        os << "  eval_samples: " << spec.eval_samples << "\n";

        os << "scenario:\n";
        os << "  cables: " << sc.cables << "\n";
        os << "  elements_per_cable: " << sc.elements_per_cable << "\n";
        os << "  cable_length: " << fmt(sc.cable_length) << "\n";
        os << "  min_separation: " << fmt(sc.min_separation) << "\n";
        os << "  users: " << sc.users << "\n";
        os << "  eavesdroppers: " << sc.eavesdroppers << "\n";
        os << "  carrier_frequency: " << fmt(sc.radio.carrier_freq) << "\n";
        os << "  tx_power: " << fmt(sc.radio.tx_power) << "\n";
        os << "  noise_power: " << fmt(sc.radio.noise_power) << "\n";
        os << "  rician_factor: " << fmt(sc.rician_factor) << "\n";
        os << "  seed: " << sc.seed << "\n";
        os << "  assignment: " << to_string(sc.assignment) << "\n";
        regions_yaml(os, "user_regions", sc.user_regions);
        regions_yaml(os, "eve_regions", sc.eve_regions);

        os << "optimizer:\n";
        os << "  outer_iters: " << op.outer_iters << "\n";
        os << "  inner_iters: " << op.inner_iters << "\n";
        os << "  tau_max: " << fmt(op.tau_max) << "\n";
        os << "  tau_min: " << fmt(op.tau_min) << "\n";
        os << "  shrink: " << fmt(op.shrink) << "\n";
        os << "  armijo: " << fmt(op.armijo) << "\n";
        os << "  outer_tol: " << fmt(op.outer_tol) << "\n";
        os << "  mc_samples: " << op.mc_samples << "\n";
        os << "  fd_step: " << fmt(op.fd_step) << "\n";
        return os.str();
    }
}
