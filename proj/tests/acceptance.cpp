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

// Acceptance checks. Each criterion prints one PASS/FAIL line with its
// measured quantity and wall time; the exit status is non-zero if any fails.
//
// Criterion 10 asks the optimized array to beat the dense fixed array by at
// least 20%. That margin is a conservative desk-scale proxy for the large
// gap seen in the full-scale rate curves, which are not tabulated.

#include "toma/beamforming.hpp"
#include "toma/correlation.hpp"
#include "toma/experiment.hpp"
#include "toma/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

using namespace toma;

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    int failures = 0;

    void criterion(int id, const char *title, double limit_s, const std::function<Outcome()> &body)
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try
        {
            out = body();
        }
        catch (const std::exception &e)
        {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < limit_s;
        const bool ok = out.pass && in_time;
        if (!ok)
            ++failures;
        std::printf("%s %2d %s: %s (%.2f s, limit %.0f s%s)\n", ok ? "PASS" : "FAIL", id, title, out.detail.c_str(), secs,
                    limit_s, in_time ? "" : ", too slow");
        std::fflush(stdout);
    }

    std::string fmt(const char *f, double a, double b = 0, double c = 0)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, f, a, b, c);
        return buf;
    }

    Vec3d random_unit(Rng &rng)
    {
        const double z = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double s = std::sqrt(1.0 - z * z);
        return {s * std::cos(phi), s * std::sin(phi), z};
    }

    std::pair<Vec3d, Vec3d> pair_at(double delta)
    {
        const double half = std::asin(delta / 2);
        return {Vec3d(std::cos(half), std::sin(half), 0), Vec3d(std::cos(half), -std::sin(half), 0)};
    }

    ArrayGeometry<double> random_feasible(const Scenario &sc, Rng &rng)
    {
        ArrayGeometry<double> g{{}, sc.elements_per_cable, sc.cable_length, sc.min_separation};
        while (static_cast<int>(g.apv.size()) < sc.cables)
        {
            g.apv.push_back(sc.cable_length * random_unit(rng));
            if (!separation_ok(g.apv, static_cast<int>(g.apv.size()) - 1, sc.min_separation))
                g.apv.pop_back();
        }
        return g;
    }

    bool feasible(const ArrayGeometry<double> &g)
    {
        for (const auto &t : g.apv)
            if (std::abs(t.norm() - g.cable_len) > 1e-12 * g.cable_len)
                return false;
        for (size_t a = 0; a < g.apv.size(); ++a)
            for (size_t b = a + 1; b < g.apv.size(); ++b)
                if ((g.apv[a] - g.apv[b]).norm() < g.min_sep - 1e-9)
                    return false;
        return true;
    }

    Outcome zf_identity()
    {
        Rng rng(101);
        double worst = 0;
        int count = 0;
        while (count < 100)
        {
            const int m = std::array{1, 2, 4}[count % 3];
            ArrayGeometry<double> geom{{}, 8, 4.0, 0.5};
            for (int c = 0; c < m; ++c)
                geom.apv.push_back(4.0 * random_unit(rng));
            const auto el = element_positions(geom);
            const Vec3d ru = rng.uniform(100, 1000) * random_unit(rng);
            const Vec3d re = rng.uniform(100, 1000) * random_unit(rng);
            const double lam = speed_of_light / 10e9;
            const auto h = los_channel(el, ru, lam);
            const auto g = los_channel(el, re, lam);
            const auto s = zf_single<double>(h, g);
            if (s.inv_norm_sq == 0.0)
                continue;
            const double closed = inv_wnorm_closed(path_gain(ru, lam), double(8 * m), corr_exact(el, ru, re, lam));
            worst = std::max(worst, std::abs(s.inv_norm_sq - closed) / closed);
            ++count;
        }
        return {worst < 1e-10, fmt("max relative error %.3g over 100 geometries", worst)};
    }

    Outcome zf_leakage()
    {
        Rng rng(102);
        const double P = 100.0;
        double worst_leak = 0, worst_fair = 0;
        for (int trial = 0; trial < 100; ++trial)
        {
            ChannelSet<double> ch{ComplexMatrixXd(64, 10), ComplexMatrixXd(64, 10)};
            for (Eigen::Index i = 0; i < 64; ++i)
                for (Eigen::Index j = 0; j < 10; ++j)
                {
                    ch.H(i, j) = 1e-5 * rng.complex_normal();
                    ch.G(i, j) = 1e-5 * rng.complex_normal();
                }
            const auto out = zf_beamformer(ch, P, 1e-12);
            double gmax = 0;
            for (Eigen::Index i = 0; i < 10; ++i)
                gmax = std::max(gmax, ch.G.col(i).norm());
            worst_leak = std::max(worst_leak, (ch.G.adjoint() * out.W).cwiseAbs().maxCoeff() / (std::sqrt(P) * gmax));
            const Eigen::VectorXd d = (ch.H.adjoint() * out.W).diagonal().cwiseAbs();
            worst_fair = std::max(worst_fair, (d.maxCoeff() - d.minCoeff()) / d.maxCoeff());
        }
        return {worst_leak < 1e-9 && worst_fair < 1e-9,
                fmt("leakage %.3g (scaled), diagonal spread %.3g", worst_leak, worst_fair)};
    }

    Outcome theorem1()
    {
        Rng rng(103);
        double worst_gap = 0, worst_zero = 0;
        for (int trial = 0; trial < 50; ++trial)
        {
            const int n = 2 + static_cast<int>(rng.index(15));
            const double lam = rng.uniform(0.01, 0.1);
            const double len = rng.uniform(0.5, 8.0);
            const bool zero = trial % 5 == 4;
            const double u = zero ? rng.uniform(1.0, 1.8) : rng.uniform(0.05, 0.95);
            const double delta = std::min(2.0, u * lam / len);
            const auto [du, de] = pair_at(delta);
            const Vec3d diff = du - de;
            const auto th = theorem1_min(n, len, delta, lam);
            const auto bf = brute_force_min_corr<double>(
                [&](const Vec3d &t) { return far_field_cable_term(t, n, lam, diff); }, 1, len, 128, 60);
            if (delta * len >= lam)
                worst_zero = std::max(worst_zero, bf.value / n);
            else
                worst_gap = std::max(worst_gap, std::abs(bf.value - th.value) / th.value);
        }
        return {worst_gap < 0.005 && worst_zero < 1e-3,
                fmt("max relative gap %.3g, zero-regime minimum %.3g N (16384 orientations each)", worst_gap,
                    worst_zero)};
    }

    Outcome theorem2()
    {
        Rng rng(104);
        double worst_gap = 0, worst_anti = 0, worst_zero = 0;
        for (int trial = 0; trial < 8; ++trial)
        {
            const int n = 2 + static_cast<int>(rng.index(11));
            const double lam = rng.uniform(0.01, 0.1);
            const double len = rng.uniform(0.5, 4.0);
            const double stretch = (n + 1.0) / n;
            const bool zero = trial % 4 == 3;
            const double u = zero ? rng.uniform(1.0, 1.5) : rng.uniform(0.1, 0.95);
            const double delta = u * lam / (2 * stretch * len);
            const auto [du, de] = pair_at(delta);
            const Vec3d diff = du - de;
            const auto th = theorem2_min(n, len, delta, lam);
            const auto bf = brute_force_min_corr<double>(
                [&](const Vec3d &t) { return far_field_cable_term(t, n, lam, diff); }, 2, len, 64, 60);
            if (th.regime == TheoremRegime::zero)
            {
                worst_zero = std::max(worst_zero, bf.value / (2 * n));
                continue;
            }
            worst_gap = std::max(worst_gap, std::abs(bf.value - th.value) / th.value);
            const Vec3d axis = diff.normalized();
            worst_anti = std::max(worst_anti, std::abs(axis.dot(bf.tips[0]) + axis.dot(bf.tips[1])) / len);
        }
        // coincident directions: every orientation gives 2N
        const Vec3d d = Vec3d(0.3, -0.4, 0.5).normalized();
        const auto bf0 = brute_force_min_corr<double>(
            [&](const Vec3d &t) { return far_field_cable_term(t, 8, 0.03, Vec3d(d - d)); }, 2, 1.0, 64);
        const bool coincident = std::abs(bf0.value - 16.0) < 1e-12 && theorem2_min(8, 1.0, 0.0, 0.03).value == 16.0;
        return {worst_gap < 0.01 && worst_anti < 1e-3 && worst_zero < 1e-3 && coincident,
                fmt("max relative gap %.3g, antipodal projection mismatch %.3g L, zero-regime %.3g", worst_gap,
                    worst_anti, worst_zero) +
                    (coincident ? ", coincident = 2N" : ", coincident != 2N")};
    }

    Outcome fig3()
    {
        const double lam = 0.03, dist = 1e4;
        const auto dir = [](double deg) {
            const double a = deg * std::numbers::pi / 180.0;
            return Vec3d(std::cos(a), 0.0, std::sin(a));
        };
        const Vec3d du = dir(89.8), de = dir(90.23);
        double exact[3], far[3];
        const double lens[3] = {1, 2, 4};
        for (int i = 0; i < 3; ++i)
        {
            const ArrayGeometry<double> g{{Vec3d(lens[i], 0, 0)}, 8, lens[i], 0.5};
            exact[i] = corr_exact(element_positions(g), Vec3d(dist * du), Vec3d(dist * de), lam) / 8;
            far[i] = corr_far_field(g.apv, 8, lam, du, de) / 8;
        }
        const bool ok = exact[2] < 0.02 && far[2] < 0.02 && exact[0] > exact[1] && exact[0] > exact[2] &&
                        far[0] > far[1] && far[0] > far[2];
        return {ok, fmt("normalized correlation L=1: %.4f, L=2: %.4f, L=4: %.5f", exact[0], exact[1], exact[2])};
    }

    Outcome fig4()
    {
        double v[4];
        const double lens[4] = {1, 2, 4, 8};
        for (int i = 0; i < 4; ++i)
            v[i] = theorem3_min(8, lens[i], 200.0, 100.0, 0.03).value;
        const bool ok = v[0] > v[1] && v[1] > v[2] && v[2] > v[3];
        return {ok, fmt("L=1: %.4f, L=2: %.4f, L=4: %.4f", v[0], v[1], v[2]) + fmt(", L=8: %.3g", v[3])};
    }

    Outcome gradient()
    {
        Scenario sc;
        Rng rng(105);
        const auto reals = generate_realizations(sc, 10, rng);
        ErgodicRate rate(reals, sc.radio);
        GeometryObjective obj = std::ref(rate);
        double worst = 0;
        int checked = 0;
        while (checked < 20)
        {
            auto geom = random_feasible(sc, rng);
            const int m = static_cast<int>(rng.index(static_cast<std::uint64_t>(sc.cables)));
            const Vec3d t = geom.apv[size_t(m)];
            const Vec3d g = riem_grad(euclid_grad(obj, geom, m, 1e-5), t, sc.cable_length);
            const Vec3d v = riem_grad(random_unit(rng), t, sc.cable_length).normalized();
            if (std::abs(g.dot(v)) < 0.1 * g.norm())
                continue;
            auto at = [&](double s) {
                auto moved = geom;
                moved.apv[size_t(m)] = retract(t, Vec3d(s * v), sc.cable_length);
                return obj(moved);
            };
            const double fd = (at(1e-5) - at(-1e-5)) / 2e-5;
            worst = std::max(worst, std::abs(fd - g.dot(v)) / std::abs(g.dot(v)));
            ++checked;
        }
        return {worst < 1e-4, fmt("max relative mismatch %.3g over 20 geometries", worst)};
    }

    Outcome optimizer_soundness()
    {
        Scenario sc;
        OptimizerParams p;
        const Rng master(sc.seed);
        Rng train = master.substream(0);
        const auto reals = generate_realizations(sc, p.mc_samples, train);
        const auto geom0 =
            placement<double>(PlacementKind::hybrid, sc.cables, sc.elements_per_cable, sc.cable_length, sc.min_separation);
        ErgodicRate rate(reals, sc.radio);
        const auto res = optimize(geom0, std::ref(rate), p);
        bool monotone = true;
        for (size_t i = 1; i < res.trace.objective.size(); ++i)
            monotone = monotone && res.trace.objective[i] >= res.trace.objective[i - 1];
        bool all_feasible = feasible(geom0);
        auto g = geom0;
        for (const auto &s : res.trace.steps)
        {
            g.apv[size_t(s.cable)] = s.point;
            all_feasible = all_feasible && feasible(g);
        }
        all_feasible = all_feasible && g.apv == res.geometry.apv && feasible(res.geometry);
        const bool bounded = res.trace.outer_iterations() <= p.outer_iters;
        return {monotone && all_feasible && bounded,
                fmt("objective %.4f -> %.4f in %.0f outer iterations", res.trace.objective.front(),
                    res.trace.objective.back(), res.trace.outer_iterations()) +
                    ", " + std::string(to_string(res.trace.reason)) + ", " + std::to_string(res.trace.steps.size()) +
                    " feasible steps"};
    }

    Outcome single_pair()
    {
        const RadioParams radio{};
        const double lam = radio.wavelength, len = 4.0, dist = 1e4;
        const int n = 8;
        const double delta = 1.5 * lam / len;
        const auto [du, de] = pair_at(delta);
        Realization real;
        real.users = {dist * du};
        real.eves = {dist * de};
        real.wavelength = lam;
        const std::vector<Realization> reals{real};
        const Vec3d diff = (du - de).normalized();
        const Vec3d side = any_orthogonal<double>(diff);
        const double ang = 80.0 * std::numbers::pi / 180.0;
        const ArrayGeometry<double> geom{{len * (std::cos(ang) * diff + std::sin(ang) * side)}, n, len, 0.5};
        ErgodicRate rate(reals, radio);
        const auto res = optimize(geom, std::ref(rate), OptimizerParams{});
        const double got = ergodic_objective(res.geometry, reals, radio.tx_power, radio.noise_power);
        const double alpha = path_gain(real.users[0], lam);
        const double target = std::log2(1 + alpha * alpha * n * radio.tx_power / radio.noise_power);
        const double start = ergodic_objective(geom, reals, radio.tx_power, radio.noise_power);
        return {std::abs(got - target) <= 0.01 * target,
                fmt("start %.4f, optimized %.4f, bound %.4f bps/Hz", start, got, target)};
    }

    std::vector<double> scheme_rates(const Scenario &sc, const std::vector<Scheme> &schemes)
    {
        OptimizerParams p;
        const Rng master(sc.seed);
        Rng train = master.substream(0);
        const auto reals = generate_realizations(sc, p.mc_samples, train);
        std::vector<double> out;
        for (Scheme s : schemes)
            out.push_back(evaluate_scheme(s, sc, p, reals, reals).rate);
        return out;
    }

    Outcome ordering()
    {
        const Scenario sc;
        const auto r = scheme_rates(sc, {Scheme::toma_opt, Scheme::hybrid, Scheme::fpa_dense});
        const bool ok = r[0] >= r[1] && r[1] >= r[2] && r[0] >= 1.2 * r[2];
        return {ok, fmt("toma_opt %.4f, hybrid %.4f, fpa_dense %.4f bps/Hz", r[0], r[1], r[2])};
    }

    Outcome rician_limit()
    {
        const auto schemes = all_schemes();
        Scenario los;
        Scenario ric = los;
        ric.rician_factor = 1e4;
        const auto a = scheme_rates(los, schemes);
        const auto b = scheme_rates(ric, schemes);
        double worst = 0;
        std::string detail;
        for (size_t i = 0; i < schemes.size(); ++i)
        {
            const double rel = std::abs(b[i] - a[i]) / std::max(a[i], 1e-12);
            worst = std::max(worst, rel);
            detail += std::string(i ? ", " : "") + std::string(to_string(schemes[i])) + fmt(" %.4f/%.4f", b[i], a[i]);
        }
        return {worst < 0.02, fmt("max relative deviation %.3g; ", worst) + detail};
    }
}

int main()
{
    criterion(1, "single-pair ZF identity", 1, zf_identity);
    criterion(2, "ZF leakage and fairness", 5, zf_leakage);
    criterion(3, "single-cable minimum vs brute force", 30, theorem1);
    criterion(4, "two-cable minimum vs brute force", 60, theorem2);
    criterion(5, "correlation at the narrow angular gap", 1, fig3);
    criterion(6, "same-direction minimum decreasing in L", 1, fig4);
    criterion(7, "Riemannian gradient consistency", 60, gradient);
    criterion(8, "optimizer monotone and feasible at defaults", 300, optimizer_soundness);
    criterion(9, "single-pair optimum reaches the bound", 60, single_pair);
    criterion(10, "scheme ordering at defaults", 600, ordering);
    criterion(11, "Rician limit matches LoS", 300, rician_limit);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
