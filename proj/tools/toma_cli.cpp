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

// Command line front end:
//   toma optimize          one Algorithm run at the configured scenario
//   toma run               the configured experiment sweep
//   toma analyze-theorems  closed-form minima against brute force
//   toma validate-config   parse, validate and print the resolved config

#include "toma/experiment.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace
{
    struct Flags
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::string out = "toma_out";
        int threads = 1;
        bool deterministic = false;
    };

    toma::ExperimentSpec load(const Flags &f)
    {
        auto spec = f.config.empty() ? toma::parse_config("") : toma::load_config(f.config);
        if (f.seed)
            spec.scenario.seed = *f.seed;
        return spec;
    }

    toma::RunOptions options(const Flags &f)
    {
        toma::RunOptions o;
        o.out_dir = f.out;
        o.threads = f.threads;
        o.deterministic = f.deterministic;
        o.log = &std::cerr;
        return o;
    }

    int count_failures(const toma::ExperimentResult &res)
    {
        int failed = 0;
        for (const auto &r : res.rows)
            if (!r.ok())
            {
                ++failed;
                std::cerr << "warning: " << toma::to_string(r.scheme) << " at " << r.sweep_value << ": " << r.error
                          << "\n";
            }
        return failed;
    }

    int cmd_optimize(const Flags &f)
    {
        const auto spec = load(f);
        const auto &sc = spec.scenario;
        const auto opts = options(f);

        toma::Rng rng = toma::Rng(sc.seed).substream(0);
        const auto train = toma::generate_realizations(sc, spec.optimizer.mc_samples, rng);
        const auto outcome = toma::evaluate_scheme(toma::Scheme::toma_opt, sc, spec.optimizer, train, train,
                                                   opts.deterministic ? 1 : opts.threads);
        const auto &rec = *outcome.trace;

        std::filesystem::create_directories(opts.out_dir);
        {
            std::ofstream geo(opts.out_dir / "geometry.csv");
            geo << "cable,x,y,z\n";
            char buf[128];
            for (int m = 0; m < rec.geometry.num_cables(); ++m)
            {
                const auto &t = rec.geometry.apv[static_cast<size_t>(m)];
                std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", m, t.x(), t.y(), t.z());
                geo << buf;
            }
        }
        toma::ExperimentResult res;
        res.traces.push_back(rec);
        std::ofstream(opts.out_dir / "convergence.csv") << toma::convergence_csv(spec, res);
        std::ofstream(opts.out_dir / "metadata.json") << toma::metadata_json(spec, opts);

        std::printf("initial rate   %.6f bps/Hz\n", rec.trace.objective.front());
        std::printf("optimized rate %.6f bps/Hz\n", outcome.rate);
        std::printf("outer iterations %d (%s), accepted steps %zu\n", rec.trace.outer_iterations(),
                    std::string(toma::to_string(rec.trace.reason)).c_str(), rec.trace.steps.size());
        if (rec.rank_deficient > 0)
            std::printf("rank-deficient samples encountered: %llu\n", static_cast<unsigned long long>(rec.rank_deficient));
        return 0;
    }

    int cmd_run(const Flags &f)
    {
        const auto spec = load(f);
        const auto res = toma::run_experiment(spec, options(f));
        const int failed = count_failures(res);
        std::printf("%zu rows written to %s (%d failed cells)\n", res.rows.size(), f.out.c_str(), failed);
        return 0;
    }

    int cmd_theorems(const Flags &f)
    {
        auto spec = load(f);
        spec.kind = toma::ExperimentKind::analyze_theorems;
        spec.values.clear();
        const auto res = toma::run_experiment(spec, options(f));
        std::fputs(toma::theorem_csv(res.theorems).c_str(), stdout);
        return 0;
    }

    int cmd_validate(const Flags &f)
    {
        std::fputs(toma::serialize(load(f)).c_str(), stdout);
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"toma: towed movable antenna array simulator"};
    app.set_version_flag("--version", std::string(toma::version()));
    app.require_subcommand(1);

    Flags flags;
    app.add_option("--config", flags.config, "YAML config file (defaults when omitted)");
    app.add_option("--seed", flags.seed, "override scenario.seed");
    app.add_option("--out", flags.out, "output directory")->capture_default_str();
    app.add_option("--threads", flags.threads, "worker threads for the Monte Carlo objective")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--deterministic", flags.deterministic, "single thread, runtime columns written as 0");

    int (*action)(const Flags &) = nullptr;
    const auto sub = [&](const char *name, const char *help, int (*fn)(const Flags &)) {
        app.add_subcommand(name, help)->fallthrough()->callback([&action, fn] { action = fn; });
    };
    sub("optimize", "optimize the array geometry for the configured scenario", cmd_optimize);
    sub("run", "run the configured experiment sweep", cmd_run);
    sub("analyze-theorems", "compare closed-form correlation minima with brute force", cmd_theorems);
    sub("validate-config", "parse and print the resolved configuration", cmd_validate);

    CLI11_PARSE(app, argc, argv);

    try
    {
        return action ? action(flags) : 1;
    }
    catch (const toma::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
