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

#ifndef TOMA_CORE_HPP
#define TOMA_CORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace toma
{
    // A point or direction in the array frame, meters. The frame is centered
    // at the central aircraft: +x forward, +y left, +z up.
    template <typename Scalar>
    using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

    template <typename Scalar>
    using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

    template <typename Scalar>
    using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

    template <typename Scalar>
    using PointList = std::vector<Vec3<Scalar>>;

    using Vec3d = Vec3<double>;
    using ComplexVectorXd = ComplexVector<double>;
    using ComplexMatrixXd = ComplexMatrix<double>;

    inline constexpr double speed_of_light = 299792458.0; // m/s

    template <typename Scalar>
    inline constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;

    // Error hierarchy. Violations that are part of normal data flow (feasibility
    // reports, failed line searches) are returned as values instead.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A receiver coincides with an antenna element, or a retraction hits the origin.
    class DegeneratePositionError : public Error
    {
    public:
        using Error::Error;
    };

    // The ZF Gram matrix is numerically singular.
    class RankDeficientError : public Error
    {
    public:
        using Error::Error;
    };

    // An argument is outside the domain of a closed-form expression.
    class DomainError : public Error
    {
    public:
        using Error::Error;
    };

    // A benchmark placement cannot honour the minimum drone separation.
    class InfeasibleSpacingError : public Error
    {
    public:
        using Error::Error;
    };

    class ConfigError : public Error
    {
    public:
        ConfigError(const std::string &message, int line = -1, int column = -1)
            : Error(line >= 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message
                              : message),
              line_(line), column_(column)
        {
        }
        int line() const { return line_; }     // 1-based, -1 if unknown
        int column() const { return column_; } // 1-based, -1 if unknown

    private:
        int line_;
        int column_;
    };

    template <typename Scalar>
    Vec3<Scalar> unit(const Vec3<Scalar> &v)
    {
        const Scalar n = v.norm();
        if (!(n > Scalar(0)))
            throw DegeneratePositionError("cannot normalize a zero vector");
        return v / n;
    }

    // Direction in the plane spanned by two axes, angle measured from the first.
    template <typename Scalar>
    Vec3<Scalar> planar_direction(const Vec3<Scalar> &first_axis, const Vec3<Scalar> &second_axis, Scalar angle)
    {
        return std::cos(angle) * first_axis + std::sin(angle) * second_axis;
    }

    // Any unit vector orthogonal to v (v need not be normalized).
    template <typename Scalar>
    Vec3<Scalar> any_orthogonal(const Vec3<Scalar> &v)
    {
        Eigen::Index least = 0;
        v.cwiseAbs().minCoeff(&least);
        return unit<Scalar>(v.cross(Vec3<Scalar>::Unit(least)));
    }
}

#endif
