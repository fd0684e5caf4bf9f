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

#ifndef TOMA_OPTIMIZER_HPP
#define TOMA_OPTIMIZER_HPP

#include "toma/geometry.hpp"
#include "toma/manifold.hpp"
#include "toma/scenarios.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace toma
{
    struct OptimizerParams
    {
        int outer_iters = 20;   // T
        int inner_iters = 100;  // J
        double tau_max = 1e-2;
        double tau_min = 1e-10;
        double shrink = 0.5;    // zeta
        double armijo = 1e-4;   // xi
        double outer_tol = 1e-3; // epsilon, bps/Hz
        int mc_samples = 100;   // Q
        double fd_step = 1e-5;  // h, meters

        // Throws ConfigError when an invariant fails.
        void validate() const;

        bool operator==(const OptimizerParams &) const = default;
    };

    using GeometryObjective = std::function<double(const ArrayGeometry<double> &)>;

    // Central differences of `objective` over the three coordinates of tip m.
    Vec3d euclid_grad(const GeometryObjective &objective, const ArrayGeometry<double> &geom, int m, double h);

    struct LineSearchResult
    {
        bool accepted = false;
        double step = 0;       // accepted tau
        Vec3d point = Vec3d::Zero();
        double objective = 0;  // objective at the accepted point
        int shrinks = 0;       // number of times tau was reduced
    };

    // Backtracking from tau_max by factor zeta. A candidate Retr(t_m + tau * dir)
    // is accepted when it keeps the minimum separation to every other drone and
    //   f(candidate) >= f0 + xi * tau * grad_norm.
    // Fails once tau drops below tau_min, or at once for a zero direction.
    LineSearchResult line_search(const GeometryObjective &objective, const ArrayGeometry<double> &geom, int m,
                                 const Vec3d &direction, double grad_norm, double f0, const OptimizerParams &params);

    enum class Termination
    {
        converged,  // outer increment below epsilon
        max_outer,  // T outer iterations done
        step_floor  // no cable could move during a whole outer iteration
    };

    std::string_view to_string(Termination t);

    struct InnerStep
    {
        int outer = 0;
        int cable = 0;
        int inner = 0;
        Vec3d point = Vec3d::Zero();
        double step = 0;
        double objective = 0;
    };

    struct OptimizerTrace
    {
        std::vector<double> objective; // initial value, then one entry per outer iteration
        std::vector<InnerStep> steps;  // every accepted inner step
        Termination reason = Termination::max_outer;

        int outer_iterations() const { return objective.empty() ? 0 : static_cast<int>(objective.size()) - 1; }
    };

    struct OptimizeResult
    {
        ArrayGeometry<double> geometry;
        OptimizerTrace trace;
    };

    // Alternating Riemannian conjugate-gradient ascent over the cable tips.
    // Throws InfeasibleSpacingError if geom0 is infeasible.
    OptimizeResult optimize(const ArrayGeometry<double> &geom0, const GeometryObjective &objective,
                            const OptimizerParams &params);

    // Sample-average ZF rate over a fixed realization set. Channel blocks and
    // the Gram contribution of the unchanged cables are cached, so moving a
    // single cable costs O(N (K+I)^2) per realization instead of O(MN (K+I)^2).
    // Not thread-safe: one instance per optimization.
    class ErgodicRate
    {
    public:
        ErgodicRate(std::span<const Realization> realizations, const RadioParams &radio, int threads = 1);

        double operator()(const ArrayGeometry<double> &geom);

        // Realizations that hit a rank-deficient Gram matrix, summed over all calls.
        std::uint64_t rank_deficient_count() const { return rank_deficient_; }
        std::uint64_t evaluations() const { return evaluations_; }

    private:
        struct Sample
        {
            ComplexMatrixXd channel; // MN x (K+I), rows grouped per cable
            ComplexMatrixXd rest;    // Gram of every cable except focus_
        };

        static void cable_block(const Realization &real, const Vec3d &tip, int cable, int n_per_cable,
                                Eigen::Ref<ComplexMatrixXd> out);
        double sample_rate(const ComplexMatrixXd &gram, size_t q);
        double full_eval(const ArrayGeometry<double> &geom);
        double focus_eval(const ArrayGeometry<double> &geom, int m);

        template <typename Fn>
        double reduce(Fn &&per_sample);

        std::span<const Realization> realizations_;
        RadioParams radio_;
        int threads_ = 1;
        int users_ = 0;
        std::vector<Sample> samples_;
        ArrayGeometry<double> base_;
        bool has_base_ = false;
        int focus_ = -1;
        double base_value_ = 0;
        std::vector<double> rates_;
        std::vector<char> deficient_;
        std::uint64_t rank_deficient_ = 0;
        std::uint64_t evaluations_ = 0;
    };

    // Mean ZF rate of a towed geometry; rank-deficient realizations count as 0.
    double ergodic_objective(const ArrayGeometry<double> &geom, std::span<const Realization> realizations,
                             double tx_power, double noise_power);

    // Same for an explicit element list (UPA baselines).
    double ergodic_objective(std::span<const Vec3d> elements, std::span<const Realization> realizations,
                             double tx_power, double noise_power);

    // Mean MRT upper bound of an explicit element list.
    double ergodic_upper_bound(std::span<const Vec3d> elements, std::span<const Realization> realizations,
                               double tx_power, double noise_power);
}

#endif
