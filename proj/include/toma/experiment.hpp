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

#ifndef TOMA_EXPERIMENT_HPP
#define TOMA_EXPERIMENT_HPP

#include "toma/config.hpp"
#include "toma/theorem_report.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace toma
{
    struct ResultRow
    {
        ExperimentKind kind = ExperimentKind::convergence;
        Scheme scheme = Scheme::toma_opt;
        double sweep_value = 0;
        double rate = 0;       // bps/Hz, NaN when the cell failed
        std::uint64_t seed = 0;
        double runtime_s = 0;
        std::string error;     // empty on success
        int trace = -1;        // index into ExperimentResult::traces, toma_opt only

        bool ok() const { return error.empty(); }
    };

    struct TraceRecord
    {
        double sweep_value = 0;
        OptimizerTrace trace;
        ArrayGeometry<double> geometry; // optimized APV
        std::uint64_t rank_deficient = 0;
    };

    struct ExperimentResult
    {
        std::vector<ResultRow> rows;
        std::vector<TraceRecord> traces;
        std::vector<TheoremRow> theorems;
    };

    struct RunOptions
    {
        std::filesystem::path out_dir; // empty: no files written
        int threads = 1;
        bool deterministic = false;    // single thread, runtime_s written as 0
        std::ostream *log = nullptr;   // progress messages
    };

    // Scenario of one sweep cell: the base scenario with the swept quantity
    // substituted (fixed M*N and M*L budget for the M sweeps).
    Scenario cell_scenario(const ExperimentSpec &spec, double value);

    // Rate of one scheme on fixed realization sets. toma_opt starts from the
    // hybrid placement (horizontal when M is odd), trains on `train` and is
    // scored on `eval`. Throws on infeasible placements.
    struct SchemeOutcome
    {
        double rate = 0;
        std::optional<TraceRecord> trace;
    };
    SchemeOutcome evaluate_scheme(Scheme scheme, const Scenario &sc, const OptimizerParams &params,
                                  std::span<const Realization> train, std::span<const Realization> eval,
                                  int threads = 1);

    // Runs every (sweep value, scheme) cell. Per-cell failures are recorded in
    // ResultRow::error. With a non-empty out_dir writes results.csv,
    // convergence.csv, theorems.csv (analyze_theorems) and metadata.json.
    ExperimentResult run_experiment(const ExperimentSpec &spec, const RunOptions &options = {});

    std::string results_csv(const ExperimentResult &res);
    std::string convergence_csv(const ExperimentSpec &spec, const ExperimentResult &res);
    std::string metadata_json(const ExperimentSpec &spec, const RunOptions &options);

    // Library version from git describe at configure time.
    std::string_view version();
}

#endif
