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

// Array response correlation |a_u^H a_e| between one user and one
// eavesdropper, its far-field and same-direction forms, and the closed-form
// minima over the orientation of one or two towed cables.

#ifndef TOMA_CORRELATION_HPP
#define TOMA_CORRELATION_HPP

#include "toma/channel.hpp"
#include "toma/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <span>

namespace toma
{
    template <typename Scalar>
    struct PairGeometry
    {
        Vec3<Scalar> dir_u;
        Vec3<Scalar> dir_e;
        Scalar dist_u = 1;
        Scalar dist_e = 1;

        static PairGeometry from_positions(const Vec3<Scalar> &r_u, const Vec3<Scalar> &r_e)
        {
            return {unit<Scalar>(r_u), unit<Scalar>(r_e), r_u.norm(), r_e.norm()};
        }

        Vec3<Scalar> user() const { return dist_u * dir_u; }
        Vec3<Scalar> eve() const { return dist_e * dir_e; }
        Vec3<Scalar> difference() const { return dir_u - dir_e; }
        Scalar delta() const { return difference().norm(); }
    };

    // |a(t, r_u)^H a(t, r_e)| with the exact spherical-wave model.
    template <typename Scalar>
    Scalar corr_exact(std::span<const Vec3<Scalar>> elements, const Vec3<Scalar> &r_u, const Vec3<Scalar> &r_e,
                      Scalar wavelength)
    {
        return std::abs(array_response(elements, r_u, wavelength).dot(array_response(elements, r_e, wavelength)));
    }

    template <typename Scalar>
    Scalar corr_exact(const PointList<Scalar> &elements, const Vec3<Scalar> &r_u, const Vec3<Scalar> &r_e,
                      Scalar wavelength)
    {
        return corr_exact(std::span<const Vec3<Scalar>>(elements), r_u, r_e, wavelength);
    }

    // sum_n exp(j 2 pi / lambda (n/N) diff^T tip), the contribution of one cable
    // to the far-field correlation sum.
    template <typename Scalar>
    std::complex<Scalar> far_field_cable_term(const Vec3<Scalar> &tip, int n_per_cable, Scalar wavelength,
                                              const Vec3<Scalar> &diff)
    {
        const Scalar x = diff.dot(tip);
        std::complex<Scalar> sum(0, 0);
        for (int n = 1; n <= n_per_cable; ++n)
            sum += std::polar(Scalar(1), two_pi<Scalar> / wavelength * (Scalar(n) / Scalar(n_per_cable)) * x);
        return sum;
    }

    // Far-field correlation: the quadratic term of the distance expansion is dropped.
    template <typename Scalar>
    Scalar corr_far_field(std::span<const Vec3<Scalar>> apv, int n_per_cable, Scalar wavelength,
                          const Vec3<Scalar> &dir_u, const Vec3<Scalar> &dir_e)
    {
        const Vec3<Scalar> diff = dir_u - dir_e;
        std::complex<Scalar> sum(0, 0);
        for (const auto &tip : apv)
            sum += far_field_cable_term(tip, n_per_cable, wavelength, diff);
        return std::abs(sum);
    }

    template <typename Scalar>
    Scalar corr_far_field(const PointList<Scalar> &apv, int n_per_cable, Scalar wavelength, const Vec3<Scalar> &dir_u,
                          const Vec3<Scalar> &dir_e)
    {
        return corr_far_field(std::span<const Vec3<Scalar>>(apv), n_per_cable, wavelength, dir_u, dir_e);
    }

    // |sin(pi x / lambda) / sin(pi x / (N lambda))|. Near the removable
    // singularities x = k N lambda the ratio is replaced by the direct N-term sum.
    template <typename Scalar>
    Scalar dirichlet_single(Scalar x, int n_per_cable, Scalar wavelength)
    {
        const Scalar pi = std::numbers::pi_v<Scalar>;
        const Scalar den = std::sin(pi * x / (Scalar(n_per_cable) * wavelength));
        if (std::abs(den) < Scalar(1e-4))
        {
            std::complex<Scalar> sum(0, 0);
            for (int n = 1; n <= n_per_cable; ++n)
                sum += std::polar(Scalar(1), two_pi<Scalar> * Scalar(n) * x / (Scalar(n_per_cable) * wavelength));
            return std::abs(sum);
        }
        return std::abs(std::sin(pi * x / wavelength) / den);
    }

    enum class TheoremRegime
    {
        coincident,  // user and eavesdropper indistinguishable: self-correlation
        closed_form, // the printed closed-form minimum applies
        zero,        // cables long enough to reach exact orthogonality
        numeric      // outside the closed-form regime, minimum found numerically
    };

    // Where the minimizing cable orientations lie.
    enum class ArgminRule
    {
        any_orientation,  // every orientation is optimal
        along_difference, // t_1 = +-L (r_u - r_e)/||r_u - r_e||
        antipodal_along_difference, // t_2 = -t_1 = +-L (r_u - r_e)/||...||
        null_projection,  // t_1 with (r_u - r_e)^T t_1 = target (first null)
        antipodal_null_projection, // t_2 = -t_1 with (r_u - r_e)^T t_1 = target
        perpendicular,    // r_hat^T t_1 = 0
        tilted            // |r_hat^T t_1| = target
    };

    template <typename Scalar>
    struct TheoremResult
    {
        Scalar value = 0;
        TheoremRegime regime = TheoremRegime::closed_form;
        ArgminRule rule = ArgminRule::any_orientation;
        Scalar target = 0; // projection target for null_projection / tilted rules, meters
    };

    // Minimum far-field correlation over the orientation of a single cable.
    // delta = ||r_hat_u - r_hat_e||.
    template <typename Scalar>
    TheoremResult<Scalar> theorem1_min(int n_per_cable, Scalar cable_len, Scalar delta, Scalar wavelength)
    {
        if (!(delta >= Scalar(0)) || delta > Scalar(2) + Scalar(1e-12) || !(cable_len > Scalar(0)))
            throw DomainError("theorem1_min: need delta in [0, 2] and L > 0");
        const Scalar n = Scalar(n_per_cable);
        if (delta == Scalar(0))
            return {n, TheoremRegime::coincident, ArgminRule::any_orientation, 0};
        // One element per cable: every phase difference is a single unit phasor.
        if (n_per_cable == 1)
            return {Scalar(1), TheoremRegime::closed_form, ArgminRule::any_orientation, 0};
        if (delta * cable_len >= wavelength)
            return {Scalar(0), TheoremRegime::zero, ArgminRule::null_projection, wavelength};
        return {dirichlet_single(delta * cable_len, n_per_cable, wavelength), TheoremRegime::closed_form,
                ArgminRule::along_difference, delta * cable_len};
    }

    namespace detail
    {
        // Tip of length L whose projection on unit vector `axis` equals `projection`.
        template <typename Scalar>
        Vec3<Scalar> tip_with_projection(const Vec3<Scalar> &axis, Scalar cable_len, Scalar projection)
        {
            const Scalar c = std::clamp(projection / cable_len, Scalar(-1), Scalar(1));
            const Scalar s = std::sqrt(std::max(Scalar(0), Scalar(1) - c * c));
            return cable_len * (c * axis + s * any_orthogonal<Scalar>(axis));
        }
    }

    // One optimal tip realizing theorem1_min for the given directions.
    template <typename Scalar>
    PointList<Scalar> theorem1_argmin(const Vec3<Scalar> &dir_u, const Vec3<Scalar> &dir_e, int n_per_cable,
                                      Scalar cable_len, Scalar wavelength)
    {
        const Vec3<Scalar> diff = dir_u - dir_e;
        const Scalar delta = diff.norm();
        const auto res = theorem1_min(n_per_cable, cable_len, delta, wavelength);
        if (res.rule == ArgminRule::any_orientation)
            return {cable_len * Vec3<Scalar>::UnitX()};
        const Vec3<Scalar> axis = diff / delta;
        // projection of the tip on diff (not on the unit axis) must equal target
        return {detail::tip_with_projection<Scalar>(axis, cable_len, res.target / delta)};
    }

    // Minimum far-field correlation over two cables (collision constraint inactive).
    template <typename Scalar>
    TheoremResult<Scalar> theorem2_min(int n_per_cable, Scalar cable_len, Scalar delta, Scalar wavelength)
    {
        if (!(delta >= Scalar(0)) || delta > Scalar(2) + Scalar(1e-12) || !(cable_len > Scalar(0)))
            throw DomainError("theorem2_min: need delta in [0, 2] and L > 0");
        const Scalar n = Scalar(n_per_cable);
        if (delta == Scalar(0))
            return {Scalar(2) * n, TheoremRegime::coincident, ArgminRule::any_orientation, 0};
        const Scalar stretch = (n + Scalar(1)) / n;
        if (Scalar(2) * stretch * delta * cable_len >= wavelength)
            return {Scalar(0), TheoremRegime::zero, ArgminRule::antipodal_null_projection,
                    wavelength / (Scalar(2) * stretch)};
        const Scalar x = delta * cable_len;
        const Scalar value = Scalar(2) * std::abs(std::cos(std::numbers::pi_v<Scalar> / wavelength * stretch * x)) *
                             dirichlet_single(x, n_per_cable, wavelength);
        return {value, TheoremRegime::closed_form, ArgminRule::antipodal_along_difference, x};
    }

    template <typename Scalar>
    PointList<Scalar> theorem2_argmin(const Vec3<Scalar> &dir_u, const Vec3<Scalar> &dir_e, int n_per_cable,
                                      Scalar cable_len, Scalar wavelength)
    {
        const Vec3<Scalar> diff = dir_u - dir_e;
        const Scalar delta = diff.norm();
        const auto res = theorem2_min(n_per_cable, cable_len, delta, wavelength);
        if (res.rule == ArgminRule::any_orientation)
            return {cable_len * Vec3<Scalar>::UnitX(), -cable_len * Vec3<Scalar>::UnitX()};
        const Vec3<Scalar> t1 = detail::tip_with_projection<Scalar>(diff / delta, cable_len, res.target / delta);
        return {t1, Vec3<Scalar>(-t1)};
    }

    // Same-direction correlation term of one cable:
    //   sum_n exp(j pi/lambda (1/d_e - 1/d_u)(||t_n||^2 - (r_hat^T t_n)^2))
    template <typename Scalar>
    std::complex<Scalar> same_direction_cable_term(const Vec3<Scalar> &tip, int n_per_cable, Scalar wavelength,
                                                   const Vec3<Scalar> &dir, Scalar dist_u, Scalar dist_e)
    {
        const Scalar coeff = std::numbers::pi_v<Scalar> / wavelength * (Scalar(1) / dist_e - Scalar(1) / dist_u);
        const Scalar proj = dir.dot(tip);
        const Scalar transverse = tip.squaredNorm() - proj * proj;
        std::complex<Scalar> sum(0, 0);
        for (int n = 1; n <= n_per_cable; ++n)
        {
            const Scalar frac = Scalar(n) / Scalar(n_per_cable);
            sum += std::polar(Scalar(1), coeff * frac * frac * transverse);
        }
        return sum;
    }

    template <typename Scalar>
    Scalar corr_same_direction(std::span<const Vec3<Scalar>> apv, int n_per_cable, Scalar wavelength,
                               const Vec3<Scalar> &dir, Scalar dist_u, Scalar dist_e)
    {
        if (!(dist_u > Scalar(0)) || !(dist_e > Scalar(0)))
            throw DomainError("corr_same_direction: distances must be positive");
        std::complex<Scalar> sum(0, 0);
        for (const auto &tip : apv)
            sum += same_direction_cable_term(tip, n_per_cable, wavelength, dir, dist_u, dist_e);
        return std::abs(sum);
    }

    template <typename Scalar>
    Scalar corr_same_direction(const PointList<Scalar> &apv, int n_per_cable, Scalar wavelength,
                               const Vec3<Scalar> &dir, Scalar dist_u, Scalar dist_e)
    {
        return corr_same_direction(std::span<const Vec3<Scalar>>(apv), n_per_cable, wavelength, dir, dist_u, dist_e);
    }

    namespace detail
    {
        // Single-cable same-direction correlation as a function of the
        // transverse extent s = L^2 - (r_hat^T t_1)^2.
        template <typename Scalar>
        Scalar same_direction_profile(Scalar transverse, int n_per_cable, Scalar wavelength, Scalar inv_gap)
        {
            const Scalar coeff = std::numbers::pi_v<Scalar> / wavelength * inv_gap * transverse;
            std::complex<Scalar> sum(0, 0);
            for (int n = 1; n <= n_per_cable; ++n)
            {
                const Scalar frac = Scalar(n) / Scalar(n_per_cable);
                sum += std::polar(Scalar(1), coeff * frac * frac);
            }
            return std::abs(sum);
        }
    }

    // |sum_n exp(j pi/lambda (1/d_e - 1/d_u) n^2 L^2 / N^2)|: the single-cable
    // same-direction correlation with the cable perpendicular to the direction.
    template <typename Scalar>
    Scalar same_direction_closed_form(int n_per_cable, Scalar cable_len, Scalar dist_u, Scalar dist_e,
                                      Scalar wavelength)
    {
        return detail::same_direction_profile(cable_len * cable_len, n_per_cable, wavelength,
                                              Scalar(1) / dist_e - Scalar(1) / dist_u);
    }

    // Minimum same-direction correlation over one cable's orientation.
    // Inside |1/d_e - 1/d_u| L^2 < lambda the perpendicular cable is optimal
    // and the closed form is returned. Outside it the minimum over the
    // transverse extent s in [0, L^2] is located by a dense scan followed by
    // golden-section refinement, and the rule reports |r_hat^T t_1|.
    template <typename Scalar>
    TheoremResult<Scalar> theorem3_min(int n_per_cable, Scalar cable_len, Scalar dist_u, Scalar dist_e,
                                       Scalar wavelength)
    {
        if (!(dist_u > Scalar(0)) || !(dist_e > Scalar(0)) || !(cable_len > Scalar(0)))
            throw DomainError("theorem3_min: distances and L must be positive");
        const Scalar inv_gap = Scalar(1) / dist_e - Scalar(1) / dist_u;
        if (inv_gap == Scalar(0))
            return {Scalar(n_per_cable), TheoremRegime::coincident, ArgminRule::any_orientation, 0};
        const Scalar l2 = cable_len * cable_len;
        if (std::abs(inv_gap) * l2 < wavelength)
            return {same_direction_closed_form(n_per_cable, cable_len, dist_u, dist_e, wavelength),
                    TheoremRegime::closed_form, ArgminRule::perpendicular, 0};

        auto profile = [&](Scalar s) { return detail::same_direction_profile(s, n_per_cable, wavelength, inv_gap); };
        constexpr int samples = 4096;
        int best = samples;
        Scalar best_val = profile(l2);
        for (int i = samples - 1; i >= 0; --i)
        {
            const Scalar v = profile(l2 * Scalar(i) / Scalar(samples));
            if (v < best_val)
            {
                best_val = v;
                best = i;
            }
        }
        Scalar lo = l2 * Scalar(std::max(best - 1, 0)) / Scalar(samples);
        Scalar hi = l2 * Scalar(std::min(best + 1, samples)) / Scalar(samples);
        const Scalar ratio = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
        for (int it = 0; it < 200 && hi - lo > std::numeric_limits<Scalar>::epsilon() * l2; ++it)
        {
            const Scalar a = hi - ratio * (hi - lo);
            const Scalar b = lo + ratio * (hi - lo);
            if (profile(a) < profile(b))
                hi = b;
            else
                lo = a;
        }
        Scalar s_star = (lo + hi) / Scalar(2);
        if (profile(s_star) > best_val)
            s_star = l2 * Scalar(best) / Scalar(samples);
        const Scalar value = profile(s_star);
        const Scalar proj = std::sqrt(std::max(Scalar(0), l2 - s_star));
        return {value, TheoremRegime::numeric, proj == Scalar(0) ? ArgminRule::perpendicular : ArgminRule::tilted, proj};
    }

    template <typename Scalar>
    Vec3<Scalar> theorem3_argmin(const Vec3<Scalar> &dir, int n_per_cable, Scalar cable_len, Scalar dist_u,
                                 Scalar dist_e, Scalar wavelength)
    {
        const auto res = theorem3_min(n_per_cable, cable_len, dist_u, dist_e, wavelength);
        return detail::tip_with_projection<Scalar>(unit<Scalar>(dir), cable_len, res.target);
    }

    template <typename Scalar>
    struct BruteForceResult
    {
        Scalar value = std::numeric_limits<Scalar>::infinity();
        PointList<Scalar> tips;
        Scalar grid_value = std::numeric_limits<Scalar>::infinity(); // before local refinement
        Scalar grid_step = 0;                                        // largest angular grid spacing, rad
        long long evaluations = 0;
    };

    // Exhaustive search for min |sum_m term(t_m)| over cable orientations on
    // the radius-L sphere. Each cable scans a resolution x resolution grid in
    // (polar, azimuth); two cables scan the product grid. `term` maps a tip to
    // that cable's complex contribution, which covers the far-field,
    // same-direction and exact correlations alike. With refine_iters > 0 the
    // best grid point is polished by a pattern search along each tip's tangent
    // plane with step halving.
    template <typename Scalar, typename TermFn>
    BruteForceResult<Scalar> brute_force_min_corr(TermFn &&term, int num_cables, Scalar cable_len, int resolution,
                                                  int refine_iters = 0)
    {
        if (num_cables != 1 && num_cables != 2)
            throw std::invalid_argument("brute_force_min_corr: supports one or two cables");
        if (resolution < 64)
            throw std::invalid_argument("brute_force_min_corr: resolution must be at least 64");
        const Scalar pi = std::numbers::pi_v<Scalar>;

        PointList<Scalar> grid;
        std::vector<std::complex<Scalar>> terms;
        grid.reserve(static_cast<size_t>(resolution * resolution));
        for (int i = 0; i < resolution; ++i)
        {
            const Scalar theta = pi * (Scalar(i) + Scalar(0.5)) / Scalar(resolution);
            for (int j = 0; j < resolution; ++j)
            {
                const Scalar phi = Scalar(2) * pi * Scalar(j) / Scalar(resolution);
                grid.emplace_back(cable_len * std::sin(theta) * std::cos(phi), cable_len * std::sin(theta) * std::sin(phi),
                                  cable_len * std::cos(theta));
            }
        }
        terms.reserve(grid.size());
        for (const auto &tip : grid)
            terms.push_back(term(tip));

        BruteForceResult<Scalar> out;
        out.grid_step = Scalar(2) * pi / Scalar(resolution);
        if (num_cables == 1)
        {
            for (size_t i = 0; i < grid.size(); ++i)
            {
                const Scalar v = std::abs(terms[i]);
                if (v < out.value)
                {
                    out.value = v;
                    out.tips = {grid[i]};
                }
            }
            out.evaluations = static_cast<long long>(grid.size());
        }
        else
        {
            size_t best_i = 0, best_j = 0;
            for (size_t i = 0; i < grid.size(); ++i)
                for (size_t j = 0; j < grid.size(); ++j)
                {
                    const Scalar v = std::abs(terms[i] + terms[j]);
                    if (v < out.value)
                    {
                        out.value = v;
                        best_i = i;
                        best_j = j;
                    }
                }
            out.tips = {grid[best_i], grid[best_j]};
            out.evaluations = static_cast<long long>(grid.size() * grid.size());
        }
        out.grid_value = out.value;

        auto evaluate = [&](const PointList<Scalar> &tips)
        {
            std::complex<Scalar> sum(0, 0);
            for (const auto &tip : tips)
                sum += term(tip);
            return std::abs(sum);
        };

        Scalar step = out.grid_step;
        for (int it = 0; it < refine_iters && step > Scalar(1e-12); ++it)
        {
            bool improved = false;
            for (size_t m = 0; m < out.tips.size(); ++m)
            {
                const Vec3<Scalar> base = out.tips[m];
                const Vec3<Scalar> u = any_orthogonal<Scalar>(base);
                const Vec3<Scalar> w = unit<Scalar>(Vec3<Scalar>(base.cross(u)));
                for (const Vec3<Scalar> &axis : {u, w})
                    for (Scalar sign : {Scalar(1), Scalar(-1)})
                    {
                        PointList<Scalar> trial = out.tips;
                        const Vec3<Scalar> moved = std::cos(step) * base + std::sin(step) * cable_len * sign * axis;
                        trial[m] = cable_len * moved.normalized();
                        const Scalar v = evaluate(trial);
                        ++out.evaluations;
                        if (v < out.value)
                        {
                            out.value = v;
                            out.tips = trial;
                            improved = true;
                        }
                    }
            }
            if (!improved)
                step /= Scalar(2);
        }
        return out;
    }
}

#endif
