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

// Reference computations written independently of the library: extended
// precision phasor sums, Gram-Schmidt projectors, scalar formulas.

#ifndef TOMA_TESTS_ORACLES_HPP
#define TOMA_TESTS_ORACLES_HPP

#include "toma/core.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle
{
    using ld = long double;
    using cld = std::complex<ld>;
    inline constexpr ld pi = std::numbers::pi_v<ld>;

    inline ld distance(const toma::Vec3d &a, const toma::Vec3d &b)
    {
        const ld dx = ld(a.x()) - ld(b.x()), dy = ld(a.y()) - ld(b.y()), dz = ld(a.z()) - ld(b.z());
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    }

    // exp(j 2 pi d / lambda) with the cycle count reduced in long double.
    inline cld phasor(ld d, ld lambda)
    {
        ld cycles = d / lambda;
        cycles -= std::floor(cycles);
        return std::polar(ld(1), 2 * pi * cycles);
    }

    // |sum_i conj(a_u,i) a_e,i| for the exact spherical model.
    inline ld correlation(const toma::PointList<double> &elements, const toma::Vec3d &ru, const toma::Vec3d &re,
                          ld lambda)
    {
        cld sum = 0;
        for (const auto &t : elements)
            sum += std::conj(phasor(distance(t, ru), lambda)) * phasor(distance(t, re), lambda);
        return std::abs(sum);
    }

    // |sum_{n=1..N} exp(j 2 pi n x / (N lambda))|
    inline ld dirichlet(ld x, int n, ld lambda)
    {
        cld sum = 0;
        for (int k = 1; k <= n; ++k)
            sum += std::polar(ld(1), 2 * pi * k * x / (n * lambda));
        return std::abs(sum);
    }

    // |sum_n exp(j pi/lambda c n^2 L^2 / N^2)|, c = 1/d_e - 1/d_u
    inline ld same_direction_perpendicular(int n, ld len, ld du, ld de, ld lambda)
    {
        cld sum = 0;
        for (int k = 1; k <= n; ++k)
        {
            const ld frac = ld(k) / n;
            sum += std::polar(ld(1), pi / lambda * (1 / de - 1 / du) * frac * frac * len * len);
        }
        return std::abs(sum);
    }

    // Orthonormal basis of the column span of G by modified Gram-Schmidt.
    inline std::vector<Eigen::VectorXcd> orthonormal_basis(const Eigen::MatrixXcd &G)
    {
        std::vector<Eigen::VectorXcd> basis;
        for (Eigen::Index c = 0; c < G.cols(); ++c)
        {
            Eigen::VectorXcd v = G.col(c);
            for (const auto &q : basis)
                v -= q * q.dot(v);
            for (const auto &q : basis) // second pass for stability
                v -= q * q.dot(v);
            const double n = v.norm();
            if (n > 1e-12 * G.col(c).norm())
                basis.push_back(v / n);
        }
        return basis;
    }

    // Component of h orthogonal to span(G).
    inline Eigen::VectorXcd project_out(const Eigen::VectorXcd &h, const Eigen::MatrixXcd &G)
    {
        Eigen::VectorXcd v = h;
        for (const auto &q : orthonormal_basis(G))
            v -= q * q.dot(v);
        return v;
    }

    inline Eigen::MatrixXcd random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &gen, double scale = 1)
    {
        std::normal_distribution<double> nd(0.0, scale);
        Eigen::MatrixXcd m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                m(i, j) = {nd(gen), nd(gen)};
        return m;
    }

    inline toma::Vec3d random_unit(std::mt19937_64 &gen)
    {
        std::normal_distribution<double> nd;
        toma::Vec3d v;
        do
            v = {nd(gen), nd(gen), nd(gen)};
        while (v.norm() < 1e-6);
        return v.normalized();
    }

    inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}

#endif
