// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dsr/core.hpp"
#include "dsr/spectral.hpp"

// Internal helpers shared by the reduction paths. Not part of the public
// surface; subject to change.
namespace dsr::detail {

/// Runs fn(i) for i in [0, count), on up to `threads` workers. Results must be
/// written to disjoint slots; exceptions propagate.
void for_each_index(Index count, unsigned threads, const std::function<void(Index)>& fn);

/// One basis column per data entry: V(:,i) = (sigma_i E - A)^-1 Bhat b_i and
/// W(:,i) = (sigma_i E - A)^-T Chat^T c_i. Conjugate entries reuse the
/// factorization of their representative.
std::pair<CMatrix, CMatrix> tangential_basis_columns(const DescriptorSystem& system, const InterpolationData& data,
                                                     const Matrix* P_l, const Matrix* P_r, unsigned threads);

/// Deterministic conjugate-pair ordering: pairs adjacent with the Im > 0
/// member first, self-conjugate entries as singletons. Throws on sets that
/// are not closed under conjugation.
InterpolationData sort_conjugate_pairs(const InterpolationData& data);

/// Block-diagonal unitary mapping paired columns [v, conj(v)] to
/// [sqrt(2) Re v, sqrt(2) Im v]; identity on singleton blocks. Applying the
/// same transform to V, W and the direction matrices is a real state-space
/// equivalence, which the feedthrough-shifted assemblies rely on.
CMatrix pair_realification_transform(const InterpolationData& sorted_data);

/// Assembles the projected model for V = [V_f, T2], W = [W_f, S2]: the finite
/// block from the given bases, the infinite block in Weierstrass coordinates
/// (E22 = N exactly nilpotent, A22 = I), and the provably-zero cross blocks
/// assigned exactly so the evaluated polynomial tail carries no
/// eps * omega^k noise.
ReducedModel assemble_dae_model(const DescriptorSystem& system, const Matrix& V_f, const Matrix& W_f,
                                const WeierstrassData& w);

}  // namespace dsr::detail
