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

#ifndef TOMA_CONFIG_HPP
#define TOMA_CONFIG_HPP

#include "toma/optimizer.hpp"
#include "toma/scenarios.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace toma
{
    enum class ExperimentKind
    {
        convergence,          // optimizer trace per M at a fixed element and cable budget
        sweep_n,              // elements per cable
        sweep_eves,           // number of eavesdroppers
        sweep_m_fixed_budget, // cables, with M*N and M*L held fixed
        sweep_cable_length,   // L
        sweep_sphere_radius,  // receivers on a sphere of the given radius
        sweep_rician,         // Rician factor
        analyze_theorems      // closed-form minima against brute force
    };

    enum class Scheme
    {
        toma_opt,
        horizontal,
        vertical,
        hybrid,
        fpa_dense,  // M x N UPA, lambda/2 spacing
        fpa_sparse, // M x N UPA, 2 lambda spacing
        upper_bound // MRT bound without interference or leakage
    };

    std::string_view to_string(ExperimentKind k);
    std::string_view to_string(Scheme s);
    std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);
    std::optional<Scheme> parse_scheme(std::string_view name);

    // Name of the swept quantity, e.g. "N" or "kappa".
    std::string_view sweep_parameter(ExperimentKind k);

    const std::vector<Scheme> &all_schemes();

    // Default sweep values of an experiment for a given base scenario.
    std::vector<double> default_sweep_values(ExperimentKind k, const Scenario &sc);

    struct ExperimentSpec
    {
        ExperimentKind kind = ExperimentKind::convergence;
        Scenario scenario;
        OptimizerParams optimizer;
        std::vector<double> values{8.0};
        std::vector<Scheme> schemes = all_schemes();
        int eval_samples = 0; // 0: evaluate on the training realizations

        // Throws ConfigError.
        void validate() const;

        bool operator==(const ExperimentSpec &) const = default;
    };

    // YAML with the top-level sections `experiment`, `scenario` and
    // `optimizer`; every key is optional. Powers accept W, mW, dBW or dBm
    // ("50 dBm"), frequencies Hz, kHz, MHz or GHz; bare numbers are W and Hz.
    // Rician factors accept "inf". Errors carry 1-based line and column.
    ExperimentSpec parse_config(std::string_view text);

    ExperimentSpec load_config(const std::string &path);

    // YAML text that parse_config maps back to an equal spec.
    std::string serialize(const ExperimentSpec &spec);

    // Physical quantity parsing, exposed for the CLI and tests.
    double parse_power(std::string_view text);     // -> W
    double parse_frequency(std::string_view text); // -> Hz
}

#endif
