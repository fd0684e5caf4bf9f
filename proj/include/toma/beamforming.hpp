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

#ifndef TOMA_BEAMFORMING_HPP
#define TOMA_BEAMFORMING_HPP

#include "toma/core.hpp"

#include <cmath>

namespace toma
{
    // Downlink channels, one column per receiver. H holds the K legitimate
    // users, G the I eavesdroppers; both have MN rows.
    template <typename Scalar>
    struct ChannelSet
    {
        ComplexMatrix<Scalar> H;
        ComplexMatrix<Scalar> G;

        Eigen::Index num_elements() const { return H.rows(); }
        Eigen::Index num_users() const { return H.cols(); }
        Eigen::Index num_eves() const { return G.cols(); }

        // [H, G]
        ComplexMatrix<Scalar> stacked() const
        {
            ComplexMatrix<Scalar> A(H.rows(), H.cols() + G.cols());
            A << H, G;
            return A;
        }
    };

    template <typename Scalar>
    struct BeamformerOutput
    {
        ComplexMatrix<Scalar> W; // scaled to ||W||_F^2 = P
        Scalar wbar_fro_sq = 0;  // ||W_bar||_F^2 before power scaling
        Scalar rate = 0;         // common per-user rate, bps/Hz
    };

    // Largest accepted condition number of the ZF Gram matrix.
    inline constexpr double gram_condition_limit = 1e12;

    // Cholesky factor of a Hermitian positive definite Gram matrix, rejected
    // when the reciprocal condition estimate drops below 1 / gram_condition_limit.
    template <typename Scalar>
    Eigen::LLT<ComplexMatrix<Scalar>> factor_gram(const ComplexMatrix<Scalar> &gram)
    {
        Eigen::LLT<ComplexMatrix<Scalar>> llt(gram);
        if (llt.info() != Eigen::Success)
            throw RankDeficientError("ZF Gram matrix is not positive definite");
        const Scalar rcond = llt.rcond();
        if (!(rcond >= Scalar(1) / Scalar(gram_condition_limit)))
            throw RankDeficientError("ZF Gram matrix is numerically singular (condition estimate " +
                                     std::to_string(double(1) / double(rcond)) + ")");
        return llt;
    }

    // sum_{k < K} [Gram^{-1}]_{kk}, which equals ||W_bar||_F^2 for
    // W_bar = [H, G] Gram^{-1} restricted to its first K columns.
    template <typename Scalar>
    Scalar zf_inverse_trace(const ComplexMatrix<Scalar> &gram, Eigen::Index num_users)
    {
        const auto llt = factor_gram<Scalar>(gram);
        ComplexMatrix<Scalar> unit_cols = ComplexMatrix<Scalar>::Identity(gram.rows(), num_users);
        llt.matrixL().solveInPlace(unit_cols);
        return unit_cols.squaredNorm();
    }

    template <typename Scalar>
    Scalar user_rate(Scalar wbar_fro_sq, Scalar tx_power, Scalar noise_power)
    {
        if (!(wbar_fro_sq > Scalar(0)))
            throw DomainError("user_rate: ||W_bar||_F^2 must be positive");
        return std::log2(Scalar(1) + tx_power / (wbar_fro_sq * noise_power));
    }

    // Zero-forcing precoder that nulls every eavesdropper and gives all users
    // the same received amplitude, scaled to total power P.
    template <typename Scalar>
    BeamformerOutput<Scalar> zf_beamformer(const ChannelSet<Scalar> &ch, Scalar tx_power, Scalar noise_power)
    {
        const Eigen::Index k_users = ch.num_users();
        const Eigen::Index total = k_users + ch.num_eves();
        if (k_users < 1)
            throw std::invalid_argument("zf_beamformer: need at least one user");
        if (ch.G.cols() > 0 && ch.G.rows() != ch.H.rows())
            throw std::invalid_argument("zf_beamformer: H and G row counts differ");
        if (total > ch.num_elements())
            throw RankDeficientError("zf_beamformer: more receivers than antenna elements");

        const ComplexMatrix<Scalar> A = ch.stacked();
        const ComplexMatrix<Scalar> gram = A.adjoint() * A;
        const auto llt = factor_gram<Scalar>(gram);
        const ComplexMatrix<Scalar> wbar = A * llt.solve(ComplexMatrix<Scalar>::Identity(total, k_users));

        BeamformerOutput<Scalar> out;
        out.wbar_fro_sq = wbar.squaredNorm();
        out.W = (std::sqrt(tx_power) / std::sqrt(out.wbar_fro_sq)) * wbar;
        out.rate = user_rate(out.wbar_fro_sq, tx_power, noise_power);
        return out;
    }

    template <typename Scalar>
    struct SinglePairZf
    {
        ComplexVector<Scalar> wbar; // zero when h and g are colinear
        Scalar inv_norm_sq = 0;     // 1 / ||wbar||^2
    };

    // One user, one eavesdropper: wbar = P_g h / (h^H P_g h) with P_g the
    // projector onto the orthogonal complement of g.
    template <typename Scalar>
    SinglePairZf<Scalar> zf_single(const ComplexVector<Scalar> &h, const ComplexVector<Scalar> &g)
    {
        if (h.size() != g.size())
            throw std::invalid_argument("zf_single: channel lengths differ");
        const Scalar g_sq = g.squaredNorm();
        const Scalar h_sq = h.squaredNorm();
        if (!(g_sq > Scalar(0)) || !(h_sq > Scalar(0)))
            throw std::invalid_argument("zf_single: zero channel");

        const ComplexVector<Scalar> projected = h - g * (g.dot(h) / g_sq);
        const Scalar denom = h.dot(projected).real();

        SinglePairZf<Scalar> out;
        if (!(denom > Scalar(1e-13) * h_sq))
        {
            out.wbar = ComplexVector<Scalar>::Zero(h.size());
            out.inv_norm_sq = 0;
            return out;
        }
        out.wbar = projected / denom;
        out.inv_norm_sq = Scalar(1) / out.wbar.squaredNorm();
        return out;
    }

    // 1 / ||wbar||^2 = |alpha|^2 MN - |alpha|^2 corr^2 / MN, corr = |a_u^H a_e|.
    template <typename Scalar>
    Scalar inv_wnorm_closed(Scalar alpha, Scalar num_elements, Scalar corr)
    {
        if (!(corr >= Scalar(0)) || corr > num_elements * Scalar(1 + 1e-9))
            throw DomainError("inv_wnorm_closed: correlation outside [0, MN]");
        const Scalar a2 = alpha * alpha;
        const Scalar value = a2 * num_elements - a2 * corr * corr / num_elements;
        return value > Scalar(0) ? value : Scalar(0);
    }

    // Max-min MRT rate ignoring interference and leakage. Equal received
    // SNR p_k ||h_k||^2 / sigma^2 across users under sum_k p_k = P gives
    // rate = log2(1 + (P / sigma^2) / sum_k ||h_k||^-2).
    template <typename Scalar>
    Scalar mrt_upper_bound(const ComplexMatrix<Scalar> &H, Scalar tx_power, Scalar noise_power)
    {
        if (H.cols() < 1)
            throw std::invalid_argument("mrt_upper_bound: need at least one user");
        Scalar inv_sum = 0;
        for (Eigen::Index k = 0; k < H.cols(); ++k)
        {
            const Scalar gain = H.col(k).squaredNorm();
            if (!(gain > Scalar(0)))
                throw std::invalid_argument("mrt_upper_bound: zero user channel");
            inv_sum += Scalar(1) / gain;
        }
        return std::log2(Scalar(1) + (tx_power / noise_power) / inv_sum);
    }
}

#endif
