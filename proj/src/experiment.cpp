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

#include "toma/experiment.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#ifndef TOMA_VERSION
#define TOMA_VERSION "unknown"
#endif

namespace toma
{
    namespace
    {
        std::string num(double v, const char *format = "%.12g")
        {
            if (std::isnan(v))
                return "";
            if (std::isinf(v))
                return v > 0 ? "inf" : "-inf";
            char buf[48];
            std::snprintf(buf, sizeof buf, format, v);
            return buf;
        }

        std::string csv_field(const std::string &s)
        {
            if (s.find_first_of(",\"\n\r") == std::string::npos)
                return s;
            std::string out = "\"";
            for (char c : s)
            {
                if (c == '"')
                    out += '"';
                out += c == '\n' || c == '\r' ? ' ' : c;
            }
            return out + "\"";
        }

        void write_file(const std::filesystem::path &path, const std::string &text)
        {
            std::ofstream out(path, std::ios::binary);
            if (!out)
                throw std::runtime_error("cannot write '" + path.string() + "'");
            out << text;
        }

        ArrayGeometry<double> initial_placement(const Scenario &sc)
        {
            const auto kind = sc.cables % 2 == 0 ? PlacementKind::hybrid : PlacementKind::horizontal;
            return placement<double>(kind, sc.cables, sc.elements_per_cable, sc.cable_length, sc.min_separation);
        }

        FixedGeometry<double> upa(const Scenario &sc, double spacing)
        {
            auto g = upa_positions<double>(sc.cables, sc.elements_per_cable, spacing);
            const auto report = validate(g, sc.num_elements());
            if (!report.ok())
                throw InfeasibleSpacingError("UPA baseline failed validation\n" + report.describe());
            return g;
        }
    }

    std::string_view version() { return TOMA_VERSION; }

    Scenario cell_scenario(const ExperimentSpec &spec, double value)
    {
        Scenario sc = spec.scenario;
        switch (spec.kind)
        {
        case ExperimentKind::convergence:
        case ExperimentKind::sweep_m_fixed_budget: {
            const int budget = spec.scenario.num_elements();
            const double length_budget = spec.scenario.cables * spec.scenario.cable_length;
            sc.cables = static_cast<int>(value);
            sc.elements_per_cable = budget / sc.cables;
            sc.cable_length = length_budget / sc.cables;
            break;
        }
        case ExperimentKind::sweep_n:
            sc.elements_per_cable = static_cast<int>(value);
            break;
        case ExperimentKind::sweep_eves:
            sc.eavesdroppers = static_cast<int>(value);
            break;
        case ExperimentKind::sweep_cable_length:
            sc.cable_length = value;
            break;
        case ExperimentKind::sweep_sphere_radius:
            sc.user_regions = {RegionSpec::sphere(value)};
            sc.eve_regions = {RegionSpec::sphere(value)};
            break;
        case ExperimentKind::sweep_rician:
            sc.rician_factor = value;
            break;
        case ExperimentKind::analyze_theorems:
            break;
        }
        return sc;
    }

    SchemeOutcome evaluate_scheme(Scheme scheme, const Scenario &sc, const OptimizerParams &params,
                                  std::span<const Realization> train, std::span<const Realization> eval, int threads)
    {
        const double p = sc.radio.tx_power;
        const double noise = sc.radio.noise_power;
        const double lambda = sc.radio.wavelength;
        SchemeOutcome out;
        switch (scheme)
        {
        case Scheme::toma_opt: {
            ErgodicRate objective(train, sc.radio, threads);
            auto res = optimize(initial_placement(sc), std::ref(objective), params);
            out.rate = ergodic_objective(res.geometry, eval, p, noise);
            TraceRecord rec;
            rec.trace = std::move(res.trace);
            rec.geometry = std::move(res.geometry);
            rec.rank_deficient = objective.rank_deficient_count();
            out.trace = std::move(rec);
            break;
        }
        case Scheme::horizontal:
            out.rate = ergodic_objective(placement<double>(PlacementKind::horizontal, sc.cables, sc.elements_per_cable,
                                                           sc.cable_length, sc.min_separation),
                                         eval, p, noise);
            break;
        case Scheme::vertical:
            out.rate = ergodic_objective(placement<double>(PlacementKind::vertical, sc.cables, sc.elements_per_cable,
                                                           sc.cable_length, sc.min_separation),
                                         eval, p, noise);
            break;
        case Scheme::hybrid:
            out.rate = ergodic_objective(placement<double>(PlacementKind::hybrid, sc.cables, sc.elements_per_cable,
                                                           sc.cable_length, sc.min_separation),
                                         eval, p, noise);
            break;
        case Scheme::fpa_dense:
            out.rate = ergodic_objective(std::span<const Vec3d>(upa(sc, lambda / 2.0).elements), eval, p, noise);
            break;
        case Scheme::fpa_sparse:
            out.rate = ergodic_objective(std::span<const Vec3d>(upa(sc, 2.0 * lambda).elements), eval, p, noise);
            break;
        case Scheme::upper_bound: {
            const auto elements = element_positions(initial_placement(sc));
            out.rate = ergodic_upper_bound(std::span<const Vec3d>(elements), eval, p, noise);
            break;
        }
        }
        return out;
    }

    ExperimentResult run_experiment(const ExperimentSpec &spec, const RunOptions &options)
    {
        spec.validate();
        const int threads = options.deterministic ? 1 : std::max(1, options.threads);
        const std::uint64_t seed = spec.scenario.seed;
        ExperimentResult res;

        if (spec.kind == ExperimentKind::analyze_theorems)
        {
            if (options.log)
                *options.log << "analyze_theorems: brute-force comparison\n";
            res.theorems = theorem_report();
        }
        else
        {
            const Rng master(seed);
            for (double value : spec.values)
            {
                const Scenario sc = cell_scenario(spec, value);
                std::vector<Realization> train, eval_own;
                std::string cell_error;
                try
                {
                    sc.validate();
                    Rng train_rng = master.substream(0);
                    train = generate_realizations(sc, spec.optimizer.mc_samples, train_rng);
                    if (spec.eval_samples > 0)
                    {
                        Rng eval_rng = master.substream(1);
                        eval_own = generate_realizations(sc, spec.eval_samples, eval_rng);
                    }
                }
                catch (const std::exception &e)
                {
                    cell_error = e.what();
                }
                const std::span<const Realization> eval = spec.eval_samples > 0 ? eval_own : train;

                for (Scheme scheme : spec.schemes)
                {
                    ResultRow row;
                    row.kind = spec.kind;
                    row.scheme = scheme;
                    row.sweep_value = value;
                    row.seed = seed;
                    row.rate = std::numeric_limits<double>::quiet_NaN();
                    if (!cell_error.empty())
                    {
                        row.error = cell_error;
                        res.rows.push_back(row);
                        continue;
                    }
                    if (options.log)
                        *options.log << to_string(spec.kind) << ": " << sweep_parameter(spec.kind) << " = "
                                     << num(value) << ", " << to_string(scheme) << "\n";
                    const auto start = std::chrono::steady_clock::now();
                    try
                    {
                        auto outcome = evaluate_scheme(scheme, sc, spec.optimizer, train, eval, threads);
                        row.rate = outcome.rate;
                        if (outcome.trace)
                        {
                            outcome.trace->sweep_value = value;
                            row.trace = static_cast<int>(res.traces.size());
                            res.traces.push_back(std::move(*outcome.trace));
                        }
                    }
                    catch (const std::exception &e)
                    {
                        row.error = e.what();
                    }
                    row.runtime_s = options.deterministic
                                        ? 0.0
                                        : std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                    res.rows.push_back(std::move(row));
                }
            }
        }

        if (!options.out_dir.empty())
        {
            std::filesystem::create_directories(options.out_dir);
            write_file(options.out_dir / "results.csv", results_csv(res));
            write_file(options.out_dir / "convergence.csv", convergence_csv(spec, res));
            if (spec.kind == ExperimentKind::analyze_theorems)
                write_file(options.out_dir / "theorems.csv", theorem_csv(res.theorems));
            write_file(options.out_dir / "metadata.json", metadata_json(spec, options));
        }
        return res;
    }

    std::string results_csv(const ExperimentResult &res)
    {
        std::ostringstream os;
        os << "experiment,scheme,sweep_param,sweep_value,rate_bps_hz,seed,runtime_s,error\n";
        for (const auto &r : res.rows)
            os << to_string(r.kind) << ',' << to_string(r.scheme) << ',' << sweep_parameter(r.kind) << ','
               << num(r.sweep_value) << ',' << num(r.rate) << ',' << r.seed << ',' << num(r.runtime_s, "%.3f") << ','
               << csv_field(r.error) << '\n';
        return os.str();
    }

    std::string convergence_csv(const ExperimentSpec &spec, const ExperimentResult &res)
    {
        std::ostringstream os;
        os << "experiment,sweep_param,sweep_value,outer_iteration,objective,termination\n";
        for (const auto &t : res.traces)
            for (size_t i = 0; i < t.trace.objective.size(); ++i)
                os << to_string(spec.kind) << ',' << sweep_parameter(spec.kind) << ',' << num(t.sweep_value) << ','
                   << i << ',' << num(t.trace.objective[i]) << ',' << to_string(t.trace.reason) << '\n';
        return os.str();
    }

    std::string metadata_json(const ExperimentSpec &spec, const RunOptions &options)
    {
        nlohmann::ordered_json meta;
        meta["version"] = std::string(version());
        meta["experiment"] = std::string(to_string(spec.kind));
        meta["sweep_param"] = std::string(sweep_parameter(spec.kind));
        meta["seed"] = spec.scenario.seed;
        meta["threads"] = options.deterministic ? 1 : std::max(1, options.threads);
        meta["deterministic"] = options.deterministic;
        meta["rng"] = "mt19937_64, 53-bit uniform, Box-Muller normal, splitmix64 substreams";
        meta["config"] = serialize(spec);
        return meta.dump(2) + "\n";
    }
}
