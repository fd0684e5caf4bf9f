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

#ifndef TOMA_GEOMETRY_HPP
#define TOMA_GEOMETRY_HPP

#include "toma/core.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace toma
{
    // Towed array geometry. Cable m runs straight from the aircraft (origin) to
    // the drone at apv[m]; its N elements sit at (n/N) * apv[m], n = 1..N.
    template <typename Scalar>
    struct ArrayGeometry
    {
        PointList<Scalar> apv;   // drone (cable tip) positions
        int n_per_cable = 1;     // N
        Scalar cable_len = 1;    // L, meters
        Scalar min_sep = 0;      // D, meters

        int num_cables() const { return static_cast<int>(apv.size()); }
        int num_elements() const { return num_cables() * n_per_cable; }

        bool operator==(const ArrayGeometry &) const = default;
    };

    // Explicit element list for arrays that are not built from towed cables.
    template <typename Scalar>
    struct FixedGeometry
    {
        PointList<Scalar> elements;

        int num_elements() const { return static_cast<int>(elements.size()); }
    };

    // Feasibility tolerances, relative to L for the cable length and absolute
    // (meters) for the pairwise drone separation.
    inline constexpr double cable_length_rel_tol = 1e-9;
    inline constexpr double separation_abs_tol = 1e-9;

    template <typename Scalar>
    PointList<Scalar> element_positions(const ArrayGeometry<Scalar> &geom)
    {
        PointList<Scalar> out;
        out.reserve(static_cast<size_t>(geom.num_elements()));
        const Scalar n_total = Scalar(geom.n_per_cable);
        for (const auto &tip : geom.apv)
            for (int n = 1; n <= geom.n_per_cable; ++n)
                out.push_back(n == geom.n_per_cable ? tip : Vec3<Scalar>((Scalar(n) / n_total) * tip));
        return out;
    }

    // Element positions of one cable, same ordering as element_positions.
    template <typename Scalar>
    PointList<Scalar> cable_elements(const Vec3<Scalar> &tip, int n_per_cable)
    {
        PointList<Scalar> out;
        out.reserve(static_cast<size_t>(n_per_cable));
        for (int n = 1; n <= n_per_cable; ++n)
            out.push_back(n == n_per_cable ? tip : Vec3<Scalar>((Scalar(n) / Scalar(n_per_cable)) * tip));
        return out;
    }

    enum class ViolationKind
    {
        cable_length, // | ||t_m|| - L | too large
        collision,    // ||t_m - t_k|| < D
        structure     // M < 1, N < 1, non-finite coordinates
    };

    struct ConstraintViolation
    {
        ViolationKind kind;
        int cable = -1;
        int other = -1;      // second cable for collisions
        double value = 0;    // offending norm or distance
    };

    struct FeasibilityReport
    {
        std::vector<ConstraintViolation> violations;

        bool ok() const { return violations.empty(); }

        std::string describe() const
        {
            std::ostringstream os;
            for (const auto &v : violations)
            {
                switch (v.kind)
                {
                case ViolationKind::cable_length:
                    os << "cable " << v.cable << ": tip norm " << v.value << " differs from cable length\n";
                    break;
                case ViolationKind::collision:
                    os << "cables " << v.cable << " and " << v.other << ": drone separation " << v.value
                       << " below minimum\n";
                    break;
                case ViolationKind::structure:
                    os << "malformed geometry (cable " << v.cable << ")\n";
                    break;
                }
            }
            return os.str();
        }
    };

    // True when tip i of `apv` keeps distance >= D - tol to every other tip.
    template <typename Scalar>
    bool separation_ok(const PointList<Scalar> &apv, int i, Scalar min_sep)
    {
        for (int k = 0; k < static_cast<int>(apv.size()); ++k)
            if (k != i && (apv[static_cast<size_t>(i)] - apv[static_cast<size_t>(k)]).norm() < min_sep - Scalar(separation_abs_tol))
                return false;
        return true;
    }

    template <typename Scalar>
    FeasibilityReport validate(const ArrayGeometry<Scalar> &geom)
    {
        FeasibilityReport report;
        const int m_count = geom.num_cables();
        if (m_count < 1 || geom.n_per_cable < 1 || !(geom.cable_len > Scalar(0)))
        {
            report.violations.push_back({ViolationKind::structure, -1, -1, 0.0});
            return report;
        }
        for (int m = 0; m < m_count; ++m)
        {
            const auto &tip = geom.apv[static_cast<size_t>(m)];
            if (!tip.allFinite())
            {
                report.violations.push_back({ViolationKind::structure, m, -1, 0.0});
                continue;
            }
            const Scalar norm = tip.norm();
            if (std::abs(norm - geom.cable_len) >= Scalar(cable_length_rel_tol) * geom.cable_len)
                report.violations.push_back({ViolationKind::cable_length, m, -1, static_cast<double>(norm)});
        }
        for (int m = 0; m < m_count; ++m)
            for (int k = m + 1; k < m_count; ++k)
            {
                const Scalar dist = (geom.apv[static_cast<size_t>(m)] - geom.apv[static_cast<size_t>(k)]).norm();
                if (dist < geom.min_sep - Scalar(separation_abs_tol))
                    report.violations.push_back({ViolationKind::collision, m, k, static_cast<double>(dist)});
            }
        return report;
    }

    // FPA baselines: finite, pairwise distinct, expected element count.
    template <typename Scalar>
    FeasibilityReport validate(const FixedGeometry<Scalar> &geom, int expected_elements)
    {
        FeasibilityReport report;
        if (geom.num_elements() != expected_elements)
            report.violations.push_back({ViolationKind::structure, -1, -1, static_cast<double>(geom.num_elements())});
        for (int i = 0; i < geom.num_elements(); ++i)
        {
            const auto &p = geom.elements[static_cast<size_t>(i)];
            if (!p.allFinite())
                report.violations.push_back({ViolationKind::structure, i, -1, 0.0});
            for (int k = i + 1; k < geom.num_elements(); ++k)
                if ((p - geom.elements[static_cast<size_t>(k)]).norm() == Scalar(0))
                    report.violations.push_back({ViolationKind::collision, i, k, 0.0});
        }
        return report;
    }

    enum class PlacementKind
    {
        horizontal, // all cables in x-O-y
        vertical,   // all cables in x-O-z
        hybrid      // half in x-O-y, half in x-O-z
    };

    inline std::string_view to_string(PlacementKind kind)
    {
        switch (kind)
        {
        case PlacementKind::horizontal:
            return "horizontal";
        case PlacementKind::vertical:
            return "vertical";
        case PlacementKind::hybrid:
            return "hybrid";
        }
        return "?";
    }

    // Benchmark placements with equal angles between adjacent cables in each
    // plane. The first cable points along +x. Hybrid placements rotate the
    // x-O-z group by 45 degrees so no two tips share an axis.
    template <typename Scalar>
    ArrayGeometry<Scalar> placement(PlacementKind kind, int m_count, int n_per_cable, Scalar cable_len, Scalar min_sep)
    {
        if (m_count < 1 || n_per_cable < 1 || !(cable_len > Scalar(0)))
            throw std::invalid_argument("placement: need M >= 1, N >= 1 and L > 0");
        if (kind == PlacementKind::hybrid && m_count % 2 != 0)
            throw std::invalid_argument("placement: hybrid placement needs an even number of cables");

        const Vec3<Scalar> ex = Vec3<Scalar>::UnitX(), ey = Vec3<Scalar>::UnitY(), ez = Vec3<Scalar>::UnitZ();
        ArrayGeometry<Scalar> geom;
        geom.n_per_cable = n_per_cable;
        geom.cable_len = cable_len;
        geom.min_sep = min_sep;

        auto ring = [&](int count, const Vec3<Scalar> &a, const Vec3<Scalar> &b, Scalar offset)
        {
            for (int m = 0; m < count; ++m)
            {
                const Scalar angle = offset + two_pi<Scalar> * Scalar(m) / Scalar(count);
                Vec3<Scalar> dir = planar_direction<Scalar>(a, b, angle);
                geom.apv.push_back(cable_len * dir.normalized());
            }
        };

        switch (kind)
        {
        case PlacementKind::horizontal:
            ring(m_count, ex, ey, Scalar(0));
            break;
        case PlacementKind::vertical:
            ring(m_count, ex, ez, Scalar(0));
            break;
        case PlacementKind::hybrid:
            ring(m_count / 2, ex, ey, Scalar(0));
            ring(m_count / 2, ex, ez, std::numbers::pi_v<Scalar> / Scalar(4));
            break;
        }

        const FeasibilityReport report = validate(geom);
        if (!report.ok())
            throw InfeasibleSpacingError("placement " + std::string(to_string(kind)) + " with M=" +
                                         std::to_string(m_count) + " is infeasible:\n" + report.describe());
        return geom;
    }

    // rows x cols uniform planar array in the y-O-z plane, centered at the
    // origin, boresight +x. Row index runs along z, column index along y.
    template <typename Scalar>
    FixedGeometry<Scalar> upa_positions(int rows, int cols, Scalar spacing)
    {
        if (rows < 1 || cols < 1 || !(spacing > Scalar(0)))
            throw std::invalid_argument("upa_positions: need rows, cols >= 1 and spacing > 0");
        FixedGeometry<Scalar> out;
        out.elements.reserve(static_cast<size_t>(rows * cols));
        const Scalar row_mid = Scalar(rows - 1) / Scalar(2);
        const Scalar col_mid = Scalar(cols - 1) / Scalar(2);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                out.elements.emplace_back(Scalar(0), (Scalar(c) - col_mid) * spacing, (Scalar(r) - row_mid) * spacing);
        return out;
    }
}

#endif
