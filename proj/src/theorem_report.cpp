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

#include "toma/theorem_report.hpp"

#include "toma/correlation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace toma
{
    namespace
    {
        std::string_view regime_name(TheoremRegime r)
        {
            switch (r)
            {
            case TheoremRegime::coincident:
                return "coincident";
            case TheoremRegime::closed_form:
                return "closed_form";
            case TheoremRegime::zero:
                return "zero";
            case TheoremRegime::numeric:
                return "numeric";
            }
            return "unknown";
        }

        // Directions in the x-O-y plane with ||u - e|| = delta.
        std::pair<Vec3d, Vec3d> pair_with_delta(double delta)
        {
            const double half = std::asin(delta / 2.0);
            return {Vec3d(std::cos(half), std::sin(half), 0.0), Vec3d(std::cos(half), -std::sin(half), 0.0)};
        }

        TheoremRow far_field_row(int cables, int n, double len, double delta, double wavelength)
        {
            const auto [u, e] = pair_with_delta(delta);
            const Vec3d diff = u - e;
            const auto term = [&](const Vec3d &tip) { return far_field_cable_term(tip, n, wavelength, diff); };
            const auto closed = cables == 1 ? theorem1_min(n, len, delta, wavelength) : theorem2_min(n, len, delta, wavelength);
            const auto brute = cables == 1 ? brute_force_min_corr<double>(term, 1, len, 128, 60)
                                           : brute_force_min_corr<double>(term, 2, len, 64, 60);
            TheoremRow row;
            row.theorem = cables == 1 ? "single_cable" : "antipodal_pair";
            row.n_per_cable = n;
            row.cable_len = len;
            row.wavelength = wavelength;
            row.parameter = delta;
            row.regime = regime_name(closed.regime);
            row.closed_form = closed.value;
            row.brute_force = brute.value;
            row.evaluations = brute.evaluations;
            return row;
        }

        TheoremRow same_direction_row(int n, double len, double dist_u, double dist_e, double wavelength)
        {
            const Vec3d dir = Vec3d::UnitX();
            const auto term = [&](const Vec3d &tip) {
                return same_direction_cable_term(tip, n, wavelength, dir, dist_u, dist_e);
            };
            const auto closed = theorem3_min(n, len, dist_u, dist_e, wavelength);
            const auto brute = brute_force_min_corr<double>(term, 1, len, 256, 60);
            TheoremRow row;
            row.theorem = "same_direction";
            row.n_per_cable = n;
            row.cable_len = len;
            row.wavelength = wavelength;
            row.parameter = std::abs(1.0 / dist_e - 1.0 / dist_u);
            row.regime = regime_name(closed.regime);
            row.closed_form = closed.value;
            row.brute_force = brute.value;
            row.evaluations = brute.evaluations;
            return row;
        }
    }

    double TheoremRow::abs_gap() const { return std::abs(brute_force - closed_form); }

    std::vector<TheoremRow> theorem_report()
    {
        constexpr double wavelength = 0.03;
        std::vector<TheoremRow> rows;
        for (int n : {4, 8})
            for (double len : {1.0, 4.0})
                for (double delta : {0.0, 0.002, 0.005, 0.02, 0.1})
                    rows.push_back(far_field_row(1, n, len, delta, wavelength));
        for (int n : {4, 8})
            for (double delta : {0.0, 0.001, 0.003, 0.02})
                rows.push_back(far_field_row(2, n, 1.0, delta, wavelength));
        for (double len : {1.0, 2.0, 4.0, 8.0})
            rows.push_back(same_direction_row(8, len, 200.0, 100.0, wavelength));
        return rows;
    }

    std::string theorem_csv(const std::vector<TheoremRow> &rows)
    {
        std::ostringstream os;
        os << "theorem,n_per_cable,cable_length,wavelength,parameter,regime,closed_form,brute_force,abs_gap,"
              "evaluations\n";
        char buf[256];
        for (const auto &r : rows)
        {
            std::snprintf(buf, sizeof buf, "%s,%d,%.12g,%.12g,%.12g,%s,%.12g,%.12g,%.6g,%lld\n", r.theorem.c_str(),
                          r.n_per_cable, r.cable_len, r.wavelength, r.parameter, r.regime.c_str(), r.closed_form,
                          r.brute_force, r.abs_gap(), r.evaluations);
            os << buf;
        }
        return os.str();
    }
}
