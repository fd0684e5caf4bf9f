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

#ifndef TOMA_CHANNEL_HPP
#define TOMA_CHANNEL_HPP

#include "toma/core.hpp"
#include "toma/rng.hpp"

#include <cmath>
#include <limits>
#include <span>

namespace toma
{
    // Carrier and power budget. Powers are in watts.
    struct RadioParams
    {
        double carrier_freq = 10e9; // Hz
        double wavelength = speed_of_light / 10e9;
        double tx_power = 100.0;    // P, W
        double noise_power = 1e-12; // sigma^2, W

        static RadioParams from_carrier(double carrier_freq, double tx_power, double noise_power)
        {
            if (!(carrier_freq > 0) || !(tx_power >= 0) || !(noise_power > 0))
                throw std::invalid_argument("RadioParams: carrier and noise power must be positive, power non-negative");
            return {carrier_freq, speed_of_light / carrier_freq, tx_power, noise_power};
        }

        bool operator==(const RadioParams &) const = default;
    };

    // Unit phasor exp(j 2 pi d / lambda). The phase is reduced modulo one
    // cycle before scaling so large distances keep full phase accuracy.
    template <typename Scalar>
    std::complex<Scalar> propagation_phasor(Scalar distance, Scalar wavelength)
    {
        Scalar cycles = distance / wavelength;
        cycles -= std::floor(cycles);
        const Scalar phase = two_pi<Scalar> * cycles;
        return {std::cos(phase), std::sin(phase)};
    }

    // Spherical-wave array response: entry i is exp(j 2 pi ||t_i - r|| / lambda).
    template <typename Scalar>
    ComplexVector<Scalar> array_response(std::span<const Vec3<Scalar>> elements, const Vec3<Scalar> &r, Scalar wavelength)
    {
        if (!(wavelength > Scalar(0)))
            throw std::invalid_argument("array_response: wavelength must be positive");
        ComplexVector<Scalar> a(static_cast<Eigen::Index>(elements.size()));
        for (size_t i = 0; i < elements.size(); ++i)
        {
            const Scalar d = (elements[i] - r).norm();
            if (!(d > Scalar(0)))
                throw DegeneratePositionError("array_response: receiver coincides with an antenna element");
            a[static_cast<Eigen::Index>(i)] = propagation_phasor(d, wavelength);
        }
        return a;
    }

    template <typename Scalar>
    ComplexVector<Scalar> array_response(const PointList<Scalar> &elements, const Vec3<Scalar> &r, Scalar wavelength)
    {
        return array_response(std::span<const Vec3<Scalar>>(elements), r, wavelength);
    }

    // Free-space LoS amplitude lambda / (4 pi ||r||), distance from the array center.
    template <typename Scalar>
    Scalar path_gain(const Vec3<Scalar> &r, Scalar wavelength)
    {
        const Scalar d = r.norm();
        if (!(d > Scalar(0)))
            throw DegeneratePositionError("path_gain: zero distance");
        return wavelength / (Scalar(2) * two_pi<Scalar> * d);
    }

    template <typename Scalar>
    ComplexVector<Scalar> los_channel(std::span<const Vec3<Scalar>> elements, const Vec3<Scalar> &r, Scalar wavelength)
    {
        return path_gain(r, wavelength) * array_response(elements, r, wavelength);
    }

    template <typename Scalar>
    ComplexVector<Scalar> los_channel(const PointList<Scalar> &elements, const Vec3<Scalar> &r, Scalar wavelength)
    {
        return los_channel(std::span<const Vec3<Scalar>>(elements), r, wavelength);
    }

    // Rician combination with a given set of unit-variance NLoS draws:
    //   h = sqrt(k/(1+k)) h_los + sqrt(1/(1+k)) alpha z,  alpha = ||h_los|| / sqrt(len)
    // so the average power equals the LoS power for every k. k = +inf returns h_los.
    template <typename Scalar>
    ComplexVector<Scalar> rician_mix(const ComplexVector<Scalar> &los, Scalar rician_factor,
                                     const ComplexVector<Scalar> &unit_draws)
    {
        if (!(rician_factor >= Scalar(0)))
            throw std::invalid_argument("rician_mix: Rician factor must be non-negative");
        if (std::isinf(rician_factor))
            return los;
        if (unit_draws.size() != los.size())
            throw std::invalid_argument("rician_mix: draw count does not match channel length");
        const Scalar alpha = los.norm() / std::sqrt(Scalar(los.size()));
        const Scalar los_weight = std::sqrt(rician_factor / (Scalar(1) + rician_factor));
        const Scalar nlos_weight = std::sqrt(Scalar(1) / (Scalar(1) + rician_factor));
        return los_weight * los + (nlos_weight * alpha) * unit_draws;
    }

    // Draws i.i.d. CN(0, 1) per entry from `rng`, then applies rician_mix.
    template <typename Scalar>
    ComplexVector<Scalar> rician_channel(const ComplexVector<Scalar> &los, Scalar rician_factor, Rng &rng)
    {
        if (std::isinf(rician_factor))
            return los;
        ComplexVector<Scalar> draws(los.size());
        for (Eigen::Index i = 0; i < los.size(); ++i)
        {
            const std::complex<double> z = rng.complex_normal(1.0);
            draws[i] = {static_cast<Scalar>(z.real()), static_cast<Scalar>(z.imag())};
        }
        return rician_mix(los, rician_factor, draws);
    }

    // Second-order expansion of ||t - r|| about t = 0:
    //   ||r|| - r_hat^T t + (||t||^2 - (r_hat^T t)^2) / (2 ||r||)
    template <typename Scalar>
    Scalar approx_distance(const Vec3<Scalar> &t, const Vec3<Scalar> &r)
    {
        const Scalar rn = r.norm();
        if (!(rn > Scalar(0)))
            throw DegeneratePositionError("approx_distance: zero receiver distance");
        const Scalar proj = r.dot(t) / rn;
        return rn - proj + (t.squaredNorm() - proj * proj) / (Scalar(2) * rn);
    }
}

#endif
