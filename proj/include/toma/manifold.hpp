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

// Primitives on the sphere {t : t^T t = L^2} used by the cable-tip updates.

#ifndef TOMA_MANIFOLD_HPP
#define TOMA_MANIFOLD_HPP

#include "toma/core.hpp"

namespace toma
{
    // Projection of a Euclidean gradient onto the tangent space at t.
    template <typename Scalar>
    Vec3<Scalar> riem_grad(const Vec3<Scalar> &euclid_g, const Vec3<Scalar> &t, Scalar cable_len)
    {
        return euclid_g - t * (t.dot(euclid_g) / (cable_len * cable_len));
    }

    // Moves a tangent vector from a previous tangent space into the one at t_new.
    template <typename Scalar>
    Vec3<Scalar> transport(const Vec3<Scalar> &v, const Vec3<Scalar> &t_new, Scalar cable_len)
    {
        return v - t_new * (t_new.dot(v) / (cable_len * cable_len));
    }

    template <typename Scalar>
    Vec3<Scalar> retract(const Vec3<Scalar> &t, const Vec3<Scalar> &step, Scalar cable_len)
    {
        const Vec3<Scalar> moved = t + step;
        const Scalar n = moved.norm();
        if (!(n > Scalar(0)))
            throw DegeneratePositionError("retract: step cancels the base point");
        return (cable_len / n) * moved;
    }

    // Below this Riemannian gradient norm the point is treated as stationary.
    inline constexpr double stationary_grad_norm = 1e-15;

    // Conjugate direction grad + kappa * Transp(prev_dir) with kappa = 0.5 / ||grad||.
    template <typename Scalar>
    Vec3<Scalar> search_direction(const Vec3<Scalar> &riem_g, const Vec3<Scalar> &prev_dir, const Vec3<Scalar> &t_new,
                                  Scalar cable_len)
    {
        const Scalar gn = riem_g.norm();
        const Scalar kappa = gn < Scalar(stationary_grad_norm) ? Scalar(0) : Scalar(0.5) / gn;
        return riem_g + kappa * transport(prev_dir, t_new, cable_len);
    }
}

#endif
