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

#include "doctest.h"
#include "oracles.hpp"

#include "toma/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace toma;

namespace
{
    ArrayGeometry<double> single(const Vec3d &tip, int n, double len, double d = 0.5)
    {
        return {{tip}, n, len, d};
    }

    bool has_kind(const FeasibilityReport &r, ViolationKind k)
    {
        return std::any_of(r.violations.begin(), r.violations.end(), [&](const auto &v) { return v.kind == k; });
    }

    double angle_deg(double a, double b) { return std::atan2(b, a) * 180.0 / std::numbers::pi; }

    // wraps to [0, 360)
    double wrap(double deg)
    {
        double w = std::fmod(deg, 360.0);
        if (w < -1e-9)
            w += 360.0;
        return std::abs(w - 360.0) < 1e-9 ? 0.0 : w;
    }
}

TEST_CASE("element positions scale the tip and end exactly at it")
{
    const auto e = element_positions(single({4, 0, 0}, 8, 4));
    REQUIRE(e.size() == 8);
    CHECK(e.back() == Vec3d(4, 0, 0));

    const auto f = element_positions(single({0, 0, 4}, 4, 4));
    CHECK(f.front().isApprox(Vec3d(0, 0, 1), 1e-15));

    std::mt19937_64 gen(11);
    const Vec3d tip = 4.0 * oracle::random_unit(gen);
    const auto g = element_positions(single(tip, 8, 4));
    CHECK(g.back() == tip);
    for (size_t i = 1; i < g.size(); ++i)
        CHECK((g[i] - g[i - 1]).norm() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.front().norm() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("element ordering is cable-major")
{
    ArrayGeometry<double> geom{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 2, 1.0, 0.1};
    const auto e = element_positions(geom);
    REQUIRE(e.size() == 6);
    CHECK(e[1] == Vec3d(1, 0, 0));
    CHECK(e[2].isApprox(Vec3d(0, 0.5, 0)));
    CHECK(e[3] == Vec3d(0, 1, 0));
    CHECK(e[5] == Vec3d(0, 0, 1));
    const auto c = cable_elements<double>(Vec3d(0, 1, 0), 2);
    CHECK(c[0] == e[2]);
    CHECK(c[1] == e[3]);
    CHECK(element_positions(geom) == e);
}

TEST_CASE("validate reports constraint violations")
{
    CHECK(validate(single({0, 4, 0}, 8, 4)).ok());
    CHECK(validate(single({0, 0, -4}, 8, 4, 100.0)).ok()); // collision check vacuous for M = 1

    ArrayGeometry<double> close{{{4, 0, 0}, {0, 0, 0}}, 8, 4, 0.5};
    const double half = 0.2 / 4.0;
    close.apv[0] = 4.0 * Vec3d(std::cos(half), std::sin(half), 0);
    close.apv[1] = 4.0 * Vec3d(std::cos(half), -std::sin(half), 0);
    const double gap = (close.apv[0] - close.apv[1]).norm();
    REQUIRE(gap < 0.5);
    const auto rep = validate(close);
    CHECK(has_kind(rep, ViolationKind::collision));
    CHECK(!rep.describe().empty());

    const auto short_cable = validate(single({3.9, 0, 0}, 8, 4));
    CHECK(has_kind(short_cable, ViolationKind::cable_length));
    CHECK_FALSE(has_kind(short_cable, ViolationKind::collision));

    CHECK(has_kind(validate(ArrayGeometry<double>{{}, 8, 4, 0.5}), ViolationKind::structure));
    CHECK(has_kind(validate(single({std::nan(""), 0, 0}, 8, 4)), ViolationKind::structure));
}

TEST_CASE("validate tolerances")
{
    CHECK(validate(single({4.0 * (1 + 5e-10), 0, 0}, 8, 4)).ok());
    CHECK_FALSE(validate(single({4.0 * (1 + 2e-9), 0, 0}, 8, 4)).ok());

    const auto tip_at_chord = [](double chord) {
        const double a = 2 * std::asin(chord / 2);
        return Vec3d(std::cos(a), std::sin(a), 0);
    };
    ArrayGeometry<double> pair{{{1, 0, 0}, tip_at_chord(0.5 - 5e-10)}, 1, 1.0, 0.5};
    CHECK(validate(pair).ok());
    pair.apv[1] = tip_at_chord(0.5 - 5e-9);
    CHECK_FALSE(validate(pair).ok());
}

TEST_CASE("separation_ok checks one tip against the others")
{
    PointList<double> apv{{1, 0, 0}, {0, 1, 0}, {0.95, 0.1, 0}};
    CHECK_FALSE(separation_ok(apv, 0, 0.5));
    CHECK(separation_ok(apv, 1, 0.5));
    CHECK_FALSE(separation_ok(apv, 2, 0.5));
}

TEST_CASE("horizontal placement: equal angles in x-O-y")
{
    const auto g = placement<double>(PlacementKind::horizontal, 4, 8, 4.0, 0.5);
    REQUIRE(g.num_cables() == 4);
    const double expected[] = {0, 90, 180, 270};
    for (int m = 0; m < 4; ++m)
    {
        const auto &t = g.apv[static_cast<size_t>(m)];
        CHECK(t.norm() == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(std::abs(t.z()) < 1e-15);
        CHECK(wrap(angle_deg(t.x(), t.y())) == doctest::Approx(expected[m]).epsilon(1e-12));
    }
    CHECK(g.apv[0] == Vec3d(4, 0, 0));
}

TEST_CASE("vertical placement lies in x-O-z")
{
    const auto g = placement<double>(PlacementKind::vertical, 8, 8, 4.0, 0.5);
    for (int m = 0; m < 8; ++m)
    {
        const auto &t = g.apv[static_cast<size_t>(m)];
        CHECK(std::abs(t.y()) < 1e-15);
        CHECK(wrap(angle_deg(t.x(), t.z())) == doctest::Approx(45.0 * m).epsilon(1e-12));
    }
}

TEST_CASE("hybrid placement splits the cables between two planes with a 45 degree offset")
{
    const auto g = placement<double>(PlacementKind::hybrid, 8, 8, 4.0, 0.5);
    REQUIRE(g.num_cables() == 8);
    for (int m = 0; m < 4; ++m)
    {
        const auto &t = g.apv[static_cast<size_t>(m)];
        CHECK(std::abs(t.z()) < 1e-15);
        CHECK(wrap(angle_deg(t.x(), t.y())) == doctest::Approx(90.0 * m).epsilon(1e-12));
    }
    for (int m = 4; m < 8; ++m)
    {
        const auto &t = g.apv[static_cast<size_t>(m)];
        CHECK(std::abs(t.y()) < 1e-15);
        CHECK(wrap(angle_deg(t.x(), t.z())) == doctest::Approx(45.0 + 90.0 * (m - 4)).epsilon(1e-12));
    }
    // exhaustive pairwise distance oracle
    double min_gap = 1e9;
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b)
            min_gap = std::min(min_gap, double(oracle::distance(g.apv[size_t(a)], g.apv[size_t(b)])));
    CHECK(min_gap >= 0.5);
}

TEST_CASE("placements keep the cable length and pass validation at the default scale")
{
    for (auto kind : {PlacementKind::horizontal, PlacementKind::vertical, PlacementKind::hybrid})
        for (int m : {2, 4, 8})
            for (double len : {1.0, 2.0, 4.0, 8.0})
            {
                const auto g = placement<double>(kind, m, 64 / m, len, 0.5);
                CHECK(validate(g).ok());
                for (const auto &t : g.apv)
                    CHECK(std::abs(t.norm() - len) < 1e-12 * len);
            }
    for (int m : {1, 2, 4, 8})
        CHECK(validate(placement<double>(PlacementKind::horizontal, m, 64 / m, 32.0 / m, 0.5)).ok());
}

TEST_CASE("placement errors")
{
    CHECK_THROWS_AS(placement<double>(PlacementKind::hybrid, 3, 8, 4.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(placement<double>(PlacementKind::horizontal, 0, 8, 4.0, 0.5), std::invalid_argument);
    // adjacent tips 2 L sin(pi/8) = 0.38 m apart
    CHECK_THROWS_AS(placement<double>(PlacementKind::horizontal, 8, 8, 0.5, 0.5), InfeasibleSpacingError);
}

TEST_CASE("UPA baselines")
{
    const double lambda = speed_of_light / 10e9;
    const auto side = [](const FixedGeometry<double> &g) {
        double lo = 1e9, hi = -1e9;
        for (const auto &p : g.elements)
        {
            lo = std::min(lo, p.y());
            hi = std::max(hi, p.y());
        }
        return hi - lo;
    };
    const auto dense = upa_positions<double>(8, 8, 0.015);
    CHECK(dense.num_elements() == 64);
    CHECK(side(dense) == doctest::Approx(0.105).epsilon(1e-12));
    const auto sparse = upa_positions<double>(8, 8, 0.06);
    CHECK(side(sparse) == doctest::Approx(0.42).epsilon(1e-12));
    CHECK(side(upa_positions<double>(8, 8, lambda / 2)) == doctest::Approx(7 * lambda / 2));

    const auto one = upa_positions<double>(1, 1, 0.3);
    REQUIRE(one.num_elements() == 1);
    CHECK(one.elements[0] == Vec3d::Zero());

    for (const auto &p : dense.elements)
    {
        CHECK(p.x() == 0.0);
        const bool mirrored = std::any_of(dense.elements.begin(), dense.elements.end(),
                                          [&](const Vec3d &q) { return (q + p).norm() < 1e-15; });
        CHECK(mirrored);
    }
    CHECK(validate(dense, 64).ok());
    CHECK_FALSE(validate(dense, 63).ok());
    CHECK_THROWS_AS(upa_positions<double>(0, 8, 0.1), std::invalid_argument);
}

TEST_CASE("core helpers")
{
    CHECK_THROWS_AS(unit<double>(Vec3d::Zero()), DegeneratePositionError);
    std::mt19937_64 gen(5);
    for (int i = 0; i < 100; ++i)
    {
        const Vec3d v = 3.0 * oracle::random_unit(gen);
        const Vec3d o = any_orthogonal<double>(v);
        CHECK(std::abs(o.norm() - 1.0) < 1e-12);
        CHECK(std::abs(o.dot(v)) < 1e-12);
    }
    CHECK(std::abs(any_orthogonal<double>(Vec3d::UnitX()).dot(Vec3d::UnitX())) < 1e-15);
}
