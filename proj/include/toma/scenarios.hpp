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

#ifndef TOMA_SCENARIOS_HPP
#define TOMA_SCENARIOS_HPP

#include "toma/beamforming.hpp"
#include "toma/channel.hpp"
#include "toma/geometry.hpp"
#include "toma/rng.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace toma
{
    enum class RegionKind
    {
        cone,          // directions within vertex_angle/2 of axis, distance in [r_min, r_max]
        sphere_surface // uniform on the sphere of the given radius
    };

    struct RegionSpec
    {
        RegionKind kind = RegionKind::cone;
        Vec3d axis = Vec3d::UnitX();
        double vertex_angle = 10.0; // degrees, full apex angle
        double r_min = 100.0;
        double r_max = 1000.0;
        double radius = 100.0; // sphere_surface only

        static RegionSpec cone(const Vec3d &axis, double vertex_angle_deg, double r_min, double r_max)
        {
            RegionSpec r;
            r.kind = RegionKind::cone;
            r.axis = axis;
            r.vertex_angle = vertex_angle_deg;
            r.r_min = r_min;
            r.r_max = r_max;
            return r;
        }

        static RegionSpec sphere(double radius)
        {
            RegionSpec r;
            r.kind = RegionKind::sphere_surface;
            r.radius = radius;
            return r;
        }

        // Throws std::invalid_argument on malformed parameters.
        void validate() const;

        bool contains(const Vec3d &p, double rel_tol = 1e-12) const;

        bool operator==(const RegionSpec &) const = default;
    };

    enum class RegionAssignment
    {
        even_split,    // round-robin when the count divides evenly, else uniform random
        uniform_random // every entity picks a region uniformly at random
    };

    std::string_view to_string(RegionAssignment a);

    struct Scenario
    {
        int cables = 8;             // M
        int elements_per_cable = 8; // N
        double cable_length = 4.0;  // L, m
        double min_separation = 0.5; // D, m
        int users = 10;             // K
        int eavesdroppers = 10;     // I
        RadioParams radio = RadioParams::from_carrier(10e9, 100.0, 1e-12);
        std::vector<RegionSpec> user_regions;
        std::vector<RegionSpec> eve_regions;
        double rician_factor = std::numeric_limits<double>::infinity();
        std::uint64_t seed = 1;
        RegionAssignment assignment = RegionAssignment::even_split;

        Scenario();

        int num_elements() const { return cables * elements_per_cable; }

        // Throws ConfigError on inconsistent parameters.
        void validate() const;

        bool operator==(const Scenario &) const = default;
    };

    // One draw of receiver positions plus, for Rician fading, the unit-variance
    // NLoS draws. Channels are functions of the array geometry, so they are
    // built on demand for a given element list.
    struct Realization
    {
        PointList<double> users;
        PointList<double> eves;
        double wavelength = speed_of_light / 10e9;
        double rician_factor = std::numeric_limits<double>::infinity();
        ComplexMatrixXd nlos; // MN x (K + I), empty for pure LoS

        int num_receivers() const { return static_cast<int>(users.size() + eves.size()); }

        // Receiver i in column order: users first, then eavesdroppers.
        const Vec3d &receiver(int i) const;

        // Path gain of receiver i.
        double gain(int i) const { return path_gain(receiver(i), wavelength); }

        ChannelSet<double> channels(std::span<const Vec3d> elements) const;
    };

    Vec3d sample_cone(const RegionSpec &region, Rng &rng);

    Vec3d sample_sphere_surface(double radius, Rng &rng);

    Vec3d sample_region(const RegionSpec &region, Rng &rng);

    // Forward (+x), leftward (+y) and downward (-z) cones, 10 degree apex,
    // 100 m to 1000 m.
    std::vector<RegionSpec> default_three_cones();

    // Q independent placements. Positions come from `rng`; NLoS draws come from
    // a generator seeded by one draw of `rng`, so the positions do not depend
    // on the Rician factor.
    std::vector<Realization> generate_realizations(const Scenario &sc, int count, Rng &rng);
}

#endif
