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

#include "toma/optimizer.hpp"

#include "toma/beamforming.hpp"
#include "toma/channel.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace toma
{
    void OptimizerParams::validate() const
    {
        if (outer_iters < 1 || inner_iters < 1)
            throw ConfigError("optimizer: outer_iters and inner_iters must be at least 1");
        if (!(tau_max > 0.0) || !(tau_min > 0.0) || !(tau_min < tau_max) || !std::isfinite(tau_max))
            throw ConfigError("optimizer: need 0 < tau_min < tau_max");
        if (!(shrink > 0.0 && shrink < 1.0))
            throw ConfigError("optimizer: shrink must lie in (0, 1)");
        if (!(armijo > 0.0 && armijo < 1.0))
            throw ConfigError("optimizer: armijo must lie in (0, 1)");
        if (!(outer_tol >= 0.0) || !std::isfinite(outer_tol))
            throw ConfigError("optimizer: outer_tol must be non-negative");
        if (mc_samples < 1)
            throw ConfigError("optimizer: mc_samples must be at least 1");
        if (!(fd_step > 0.0) || !std::isfinite(fd_step))
            throw ConfigError("optimizer: fd_step must be positive");
    }

    Vec3d euclid_grad(const GeometryObjective &objective, const ArrayGeometry<double> &geom, int m, double h)
    {
        if (m < 0 || m >= geom.num_cables())
            throw std::out_of_range("euclid_grad: cable index out of range");
        if (!(h > 0.0))
            throw std::invalid_argument("euclid_grad: step must be positive");
        ArrayGeometry<double> probe = geom;
        auto &tip = probe.apv[static_cast<size_t>(m)];
        const Vec3d origin = tip;
        Vec3d g;
        for (int c = 0; c < 3; ++c)
        {
            tip = origin;
            tip[c] += h;
            const double up = objective(probe);
            tip[c] = origin[c] - h;
            const double down = objective(probe);
            g[c] = (up - down) / (2.0 * h);
        }
        return g;
    }

    LineSearchResult line_search(const GeometryObjective &objective, const ArrayGeometry<double> &geom, int m,
                                 const Vec3d &direction, double grad_norm, double f0, const OptimizerParams &params)
    {
        LineSearchResult out;
        if (!(grad_norm >= stationary_grad_norm) || !direction.allFinite() || direction.isZero(0.0))
            return out;

        const auto mi = static_cast<size_t>(m);
        ArrayGeometry<double> trial = geom;
        const Vec3d base = geom.apv[mi];
        for (double tau = params.tau_max; tau >= params.tau_min; tau *= params.shrink, ++out.shrinks)
        {
            Vec3d candidate;
            try
            {
                candidate = retract<double>(base, tau * direction, geom.cable_len);
            }
            catch (const DegeneratePositionError &)
            {
                continue;
            }
            trial.apv[mi] = candidate;
            if (!separation_ok(trial.apv, m, geom.min_sep))
                continue;
            const double value = objective(trial);
            if (value >= f0 + params.armijo * tau * grad_norm)
            {
                out.accepted = true;
                out.step = tau;
                out.point = candidate;
                out.objective = value;
                return out;
            }
        }
        return out;
    }

    std::string_view to_string(Termination t)
    {
        switch (t)
        {
        case Termination::converged:
            return "converged";
        case Termination::max_outer:
            return "max_outer";
        case Termination::step_floor:
            return "step_floor";
        }
        return "unknown";
    }

    OptimizeResult optimize(const ArrayGeometry<double> &geom0, const GeometryObjective &objective,
                            const OptimizerParams &params)
    {
        params.validate();
        const auto report = validate(geom0);
        if (!report.ok())
            throw InfeasibleSpacingError("optimize: infeasible initial geometry\n" + report.describe());

        OptimizeResult res;
        res.geometry = geom0;
        auto &geom = res.geometry;
        auto &trace = res.trace;
        const double len = geom.cable_len;

        double f = objective(geom);
        trace.objective.push_back(f);
        trace.reason = Termination::max_outer;

        for (int outer = 0; outer < params.outer_iters; ++outer)
        {
            bool moved = false;
            for (int m = 0; m < geom.num_cables(); ++m)
            {
                auto &tip = geom.apv[static_cast<size_t>(m)];
                Vec3d mu = Vec3d::Zero();
                for (int j = 0; j < params.inner_iters; ++j)
                {
                    const Vec3d g = riem_grad<double>(euclid_grad(objective, geom, m, params.fd_step), tip, len);
                    const double g_norm = g.norm();
                    if (g_norm < stationary_grad_norm)
                        break;
                    const Vec3d dir = search_direction<double>(g, mu, tip, len);
                    const auto ls = line_search(objective, geom, m, dir, g_norm, f, params);
                    if (!ls.accepted)
                        break;
                    tip = ls.point;
                    f = ls.objective;
                    mu = dir;
                    moved = true;
                    trace.steps.push_back({outer, m, j, ls.point, ls.step, ls.objective});
                }
            }
            const double previous = trace.objective.back();
            trace.objective.push_back(f);
            if (!moved)
            {
                trace.reason = Termination::step_floor;
                break;
            }
            if (f - previous < params.outer_tol)
            {
                trace.reason = Termination::converged;
                break;
            }
        }
        return res;
    }

    // ---------------------------------------------------------------------
    // ErgodicRate

    ErgodicRate::ErgodicRate(std::span<const Realization> realizations, const RadioParams &radio, int threads)
        : realizations_(realizations), radio_(radio), threads_(threads < 1 ? 1 : threads)
    {
        if (realizations_.empty())
            throw std::invalid_argument("ErgodicRate: empty realization set");
        users_ = static_cast<int>(realizations_.front().users.size());
        if (users_ < 1)
            throw std::invalid_argument("ErgodicRate: need at least one user");
        for (const auto &r : realizations_)
            if (static_cast<int>(r.users.size()) != users_)
                throw std::invalid_argument("ErgodicRate: realizations disagree on the user count");
        samples_.resize(realizations_.size());
        rates_.assign(realizations_.size(), 0.0);
        deficient_.assign(realizations_.size(), 0);
    }

    void ErgodicRate::cable_block(const Realization &real, const Vec3d &tip, int cable, int n_per_cable,
                                  Eigen::Ref<ComplexMatrixXd> out)
    {
        const bool faded = !std::isinf(real.rician_factor);
        const double los_w = faded ? std::sqrt(real.rician_factor / (1.0 + real.rician_factor)) : 1.0;
        const double nlos_w = faded ? std::sqrt(1.0 / (1.0 + real.rician_factor)) : 0.0;
        const auto row0 = static_cast<Eigen::Index>(cable) * n_per_cable;

        for (int i = 0; i < real.num_receivers(); ++i)
        {
            const Vec3d &r = real.receiver(i);
            const double alpha = real.gain(i);
            for (int n = 1; n <= n_per_cable; ++n)
            {
                const Vec3d e = n == n_per_cable ? tip : Vec3d((double(n) / double(n_per_cable)) * tip);
                const double d = (e - r).norm();
                if (!(d > 0.0))
                    throw DegeneratePositionError("receiver coincides with an antenna element");
                std::complex<double> v = alpha * propagation_phasor(d, real.wavelength);
                if (faded)
                    v = los_w * v + (nlos_w * alpha) * real.nlos(row0 + n - 1, i);
                out(n - 1, i) = v;
            }
        }
    }

    double ErgodicRate::sample_rate(const ComplexMatrixXd &gram, size_t q)
    {
        try
        {
            deficient_[q] = 0;
            return user_rate(zf_inverse_trace<double>(gram, users_), radio_.tx_power, radio_.noise_power);
        }
        catch (const RankDeficientError &)
        {
            deficient_[q] = 1;
            return 0.0;
        }
    }

    template <typename Fn>
    double ErgodicRate::reduce(Fn &&per_sample)
    {
        const size_t count = realizations_.size();
        if (threads_ <= 1 || count < 2)
        {
            for (size_t q = 0; q < count; ++q)
                rates_[q] = per_sample(q);
        }
        else
        {
            const size_t workers = std::min<size_t>(static_cast<size_t>(threads_), count);
            std::exception_ptr failure;
            std::mutex failure_lock;
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (size_t w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    try
                    {
                        for (size_t q = w; q < count; q += workers)
                            rates_[q] = per_sample(q);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(failure_lock);
                        if (!failure)
                            failure = std::current_exception();
                    }
                });
            for (auto &t : pool)
                t.join();
            if (failure)
                std::rethrow_exception(failure);
        }

        double sum = 0.0;
        for (size_t q = 0; q < count; ++q)
        {
            sum += rates_[q];
            rank_deficient_ += static_cast<std::uint64_t>(deficient_[q]);
        }
        ++evaluations_;
        return sum / static_cast<double>(count);
    }

    double ErgodicRate::full_eval(const ArrayGeometry<double> &geom)
    {
        const int n = geom.n_per_cable;
        const auto mn = static_cast<Eigen::Index>(geom.num_elements());
        const double value = reduce([&](size_t q) {
            const auto &real = realizations_[q];
            if (real.num_receivers() > mn)
                throw std::invalid_argument("ErgodicRate: more receivers than antenna elements");
            if (!std::isinf(real.rician_factor) && real.nlos.rows() != mn)
                throw std::invalid_argument("ErgodicRate: NLoS draws do not match the element count");
            auto &s = samples_[q];
            s.channel.resize(mn, real.num_receivers());
            for (int m = 0; m < geom.num_cables(); ++m)
                cable_block(real, geom.apv[static_cast<size_t>(m)], m, n,
                            s.channel.middleRows(static_cast<Eigen::Index>(m) * n, n));
            const ComplexMatrixXd gram = s.channel.adjoint() * s.channel;
            return sample_rate(gram, q);
        });
        base_ = geom;
        has_base_ = true;
        focus_ = -1;
        base_value_ = value;
        return value;
    }

    double ErgodicRate::focus_eval(const ArrayGeometry<double> &geom, int m)
    {
        const int n = geom.n_per_cable;
        const auto top = static_cast<Eigen::Index>(m) * n;
        const auto bottom = static_cast<Eigen::Index>(geom.num_elements()) - top - n;
        const bool rebuild = focus_ != m;
        const double value = reduce([&](size_t q) {
            const auto &real = realizations_[q];
            auto &s = samples_[q];
            if (rebuild)
            {
                s.rest = s.channel.topRows(top).adjoint() * s.channel.topRows(top);
                s.rest.noalias() += s.channel.bottomRows(bottom).adjoint() * s.channel.bottomRows(bottom);
            }
            ComplexMatrixXd block(n, real.num_receivers());
            cable_block(real, geom.apv[static_cast<size_t>(m)], m, n, block);
            ComplexMatrixXd gram = s.rest;
            gram.noalias() += block.adjoint() * block;
            return sample_rate(gram, q);
        });
        focus_ = m;
        return value;
    }

    double ErgodicRate::operator()(const ArrayGeometry<double> &geom)
    {
        const bool same_shape = has_base_ && geom.num_cables() == base_.num_cables() &&
                                geom.n_per_cable == base_.n_per_cable;
        if (!same_shape)
            return full_eval(geom);

        int changed = -1;
        int count = 0;
        for (int m = 0; m < geom.num_cables(); ++m)
            if (geom.apv[static_cast<size_t>(m)] != base_.apv[static_cast<size_t>(m)])
            {
                changed = m;
                ++count;
            }
        if (count == 0)
        {
            ++evaluations_;
            return base_value_;
        }
        if (count == 1)
            return focus_eval(geom, changed);
        return full_eval(geom);
    }

    // ---------------------------------------------------------------------

    double ergodic_objective(const ArrayGeometry<double> &geom, std::span<const Realization> realizations,
                             double tx_power, double noise_power)
    {
        RadioParams radio;
        radio.tx_power = tx_power;
        radio.noise_power = noise_power;
        ErgodicRate rate(realizations, radio);
        return rate(geom);
    }

    double ergodic_objective(std::span<const Vec3d> elements, std::span<const Realization> realizations,
                             double tx_power, double noise_power)
    {
        if (realizations.empty())
            throw std::invalid_argument("ergodic_objective: empty realization set");
        double sum = 0.0;
        for (const auto &real : realizations)
        {
            if (real.num_receivers() > static_cast<int>(elements.size()))
                throw std::invalid_argument("ergodic_objective: more receivers than antenna elements");
            const auto ch = real.channels(elements);
            const ComplexMatrixXd A = ch.stacked();
            try
            {
                sum += user_rate(zf_inverse_trace<double>(A.adjoint() * A, ch.num_users()), tx_power, noise_power);
            }
            catch (const RankDeficientError &)
            {
            }
        }
        return sum / static_cast<double>(realizations.size());
    }

    double ergodic_upper_bound(std::span<const Vec3d> elements, std::span<const Realization> realizations,
                               double tx_power, double noise_power)
    {
        if (realizations.empty())
            throw std::invalid_argument("ergodic_upper_bound: empty realization set");
        double sum = 0.0;
        for (const auto &real : realizations)
            sum += mrt_upper_bound<double>(real.channels(elements).H, tx_power, noise_power);
        return sum / static_cast<double>(realizations.size());
    }
}
