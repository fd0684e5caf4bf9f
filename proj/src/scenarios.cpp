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

#include "toma/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace toma
{
    namespace
    {
        constexpr double deg = std::numbers::pi / 180.0;
    }

    void RegionSpec::validate() const
    {
        if (kind == RegionKind::cone)
        {
            if (!axis.allFinite() || std::abs(axis.norm() - 1.0) > 1e-12)
                throw std::invalid_argument("cone axis must be a unit vector");
            if (!(vertex_angle > 0.0 && vertex_angle < 180.0))
                throw std::invalid_argument("cone vertex angle must lie in (0, 180) degrees");
            if (!(r_min > 0.0 && r_min <= r_max) || !std::isfinite(r_max))
                throw std::invalid_argument("cone distances need 0 < r_min <= r_max");
        }
        else if (!(radius > 0.0) || !std::isfinite(radius))
            throw std::invalid_argument("sphere radius must be positive");
    }

    bool RegionSpec::contains(const Vec3d &p, double rel_tol) const
    {
        const double d = p.norm();
        if (kind == RegionKind::sphere_surface)
            return std::abs(d - radius) <= rel_tol * radius;
        if (d < r_min * (1.0 - rel_tol) || d > r_max * (1.0 + rel_tol))
            return false;
        const double cos_angle = axis.dot(p) / d;
        return cos_angle >= std::cos(0.5 * vertex_angle * deg) - rel_tol;
    }

    std::string_view to_string(RegionAssignment a)
    {
        return a == RegionAssignment::even_split ? "even_split" : "uniform_random";
    }

    Scenario::Scenario() : user_regions(default_three_cones()), eve_regions(default_three_cones()) {}

    void Scenario::validate() const
    {
        if (cables < 1 || elements_per_cable < 1)
            throw ConfigError("scenario needs at least one cable and one element per cable");
        if (!(cable_length > 0.0) || !std::isfinite(cable_length))
            throw ConfigError("cable_length must be positive");
        if (!(min_separation >= 0.0) || !std::isfinite(min_separation))
            throw ConfigError("min_separation must be non-negative");
        if (users < 1 || eavesdroppers < 0)
            throw ConfigError("need at least one user and a non-negative eavesdropper count");
        if (users + eavesdroppers > num_elements())
            throw ConfigError("users + eavesdroppers exceeds the number of antenna elements");
        if (!(radio.carrier_freq > 0.0) || !(radio.noise_power > 0.0) || !(radio.tx_power >= 0.0))
            throw ConfigError("radio parameters must be positive");
        if (std::abs(radio.wavelength * radio.carrier_freq - speed_of_light) > 1e-9 * speed_of_light)
            throw ConfigError("wavelength inconsistent with carrier frequency");
        if (!(rician_factor >= 0.0))
            throw ConfigError("rician_factor must be non-negative");
        if (user_regions.empty() || (eavesdroppers > 0 && eve_regions.empty()))
            throw ConfigError("region lists must be non-empty");
        try
        {
            for (const auto &r : user_regions)
                r.validate();
            for (const auto &r : eve_regions)
                r.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }
    }

    const Vec3d &Realization::receiver(int i) const
    {
        const auto k = static_cast<int>(users.size());
        return i < k ? users[static_cast<size_t>(i)] : eves[static_cast<size_t>(i - k)];
    }

    ChannelSet<double> Realization::channels(std::span<const Vec3d> elements) const
    {
        const auto mn = static_cast<Eigen::Index>(elements.size());
        const bool faded = !std::isinf(rician_factor);
        if (faded && nlos.rows() != mn)
            throw std::invalid_argument("Realization::channels: NLoS draws do not match the element count");

        ChannelSet<double> ch;
        ch.H.resize(mn, static_cast<Eigen::Index>(users.size()));
        ch.G.resize(mn, static_cast<Eigen::Index>(eves.size()));
        for (int i = 0; i < num_receivers(); ++i)
        {
            ComplexVectorXd h = los_channel(elements, receiver(i), wavelength);
            if (faded)
                h = rician_mix<double>(h, rician_factor, nlos.col(i));
            if (i < static_cast<int>(users.size()))
                ch.H.col(i) = h;
            else
                ch.G.col(i - static_cast<int>(users.size())) = h;
        }
        return ch;
    }

    Vec3d sample_cone(const RegionSpec &region, Rng &rng)
    {
        if (region.kind != RegionKind::cone)
            throw std::invalid_argument("sample_cone: region is not a cone");
        const double cos_half = std::cos(0.5 * region.vertex_angle * deg);
        // area-uniform on the cap: cos(theta) uniform in [cos_half, 1]
        const double cos_theta = 1.0 - rng.uniform() * (1.0 - cos_half);
        const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double dist = rng.uniform(region.r_min, region.r_max);

        const Vec3d axis = region.axis.normalized();
        const Vec3d u = any_orthogonal<double>(axis);
        const Vec3d w = axis.cross(u);
        const Vec3d dir = cos_theta * axis + sin_theta * (std::cos(phi) * u + std::sin(phi) * w);
        return dist * dir.normalized();
    }

    Vec3d sample_sphere_surface(double radius, Rng &rng)
    {
        if (!(radius > 0.0))
            throw std::invalid_argument("sample_sphere_surface: radius must be positive");
        const double z = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        return radius * Vec3d(s * std::cos(phi), s * std::sin(phi), z).normalized();
    }

    Vec3d sample_region(const RegionSpec &region, Rng &rng)
    {
        return region.kind == RegionKind::cone ? sample_cone(region, rng) : sample_sphere_surface(region.radius, rng);
    }

    std::vector<RegionSpec> default_three_cones()
    {
        return {RegionSpec::cone(Vec3d::UnitX(), 10.0, 100.0, 1000.0),
                RegionSpec::cone(Vec3d::UnitY(), 10.0, 100.0, 1000.0),
                RegionSpec::cone(Vec3d(0, 0, -1), 10.0, 100.0, 1000.0)};
    }

    namespace
    {
        PointList<double> place(int count, const std::vector<RegionSpec> &regions, RegionAssignment mode, Rng &rng)
        {
            PointList<double> out;
            out.reserve(static_cast<size_t>(count));
            const auto r = regions.size();
            if (count == 0)
                return out;
            const bool round_robin = mode == RegionAssignment::even_split && count % static_cast<int>(r) == 0;
            for (int i = 0; i < count; ++i)
            {
                const size_t which = round_robin ? static_cast<size_t>(i) % r : static_cast<size_t>(rng.index(r));
                out.push_back(sample_region(regions[which], rng));
            }
            return out;
        }
    }

    std::vector<Realization> generate_realizations(const Scenario &sc, int count, Rng &rng)
    {
        if (count < 0)
            throw std::invalid_argument("generate_realizations: negative count");
        if (sc.users > 0 && sc.user_regions.empty())
            throw std::invalid_argument("generate_realizations: no user regions");
        if (sc.eavesdroppers > 0 && sc.eve_regions.empty())
            throw std::invalid_argument("generate_realizations: no eavesdropper regions");

        std::vector<Realization> out;
        if (count == 0)
            return out;
        Rng fading(rng.next_u64());
        const bool faded = !std::isinf(sc.rician_factor);
        const int mn = sc.num_elements();
        const int receivers = sc.users + sc.eavesdroppers;

        out.reserve(static_cast<size_t>(count));
        for (int q = 0; q < count; ++q)
        {
            Realization real;
            real.wavelength = sc.radio.wavelength;
            real.rician_factor = sc.rician_factor;
            real.users = place(sc.users, sc.user_regions, sc.assignment, rng);
            real.eves = place(sc.eavesdroppers, sc.eve_regions, sc.assignment, rng);
            if (faded)
            {
                real.nlos.resize(mn, receivers);
                for (int c = 0; c < receivers; ++c)
                    for (int e = 0; e < mn; ++e)
                        real.nlos(e, c) = fading.complex_normal(1.0);
            }
            out.push_back(std::move(real));
        }
        return out;
    }
}
