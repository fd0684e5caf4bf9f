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

#ifndef TOMA_THEOREM_REPORT_HPP
#define TOMA_THEOREM_REPORT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace toma
{
    // One closed-form minimum set against an exhaustive orientation search.
    struct TheoremRow
    {
        std::string theorem;  // "single_cable", "antipodal_pair" or "same_direction"
        int n_per_cable = 0;
        double cable_len = 0;
        double wavelength = 0;
        double parameter = 0; // delta for the far-field cases, |1/d_e - 1/d_u| otherwise
        std::string regime;
        double closed_form = 0;
        double brute_force = 0;
        long long evaluations = 0;

        double abs_gap() const;
    };

    // Fixed table of far-field single-cable, far-field two-cable and
    // same-direction cases covering every regime.
    std::vector<TheoremRow> theorem_report();

    std::string theorem_csv(const std::vector<TheoremRow> &rows);
}

#endif
