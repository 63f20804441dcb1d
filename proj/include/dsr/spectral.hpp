// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "dsr/core.hpp"

namespace dsr {

/// Weierstrass canonical form of a regular pencil lambda E - A:
///   E = S diag(I_nf, N) T^-1,   A = S diag(J, I_ninf) T^-1,
/// with N nilpotent of index nu. P_l and P_r are the spectral projectors onto
/// the left/right deflating subspaces for the finite eigenvalues.
struct WeierstrassData {
    Matrix S, T, Sinv, Tinv;
    Matrix J;  // nf x nf, finite dynamics
    Matrix N;  // ninf x ninf, strictly upper triangular
    Index n_f = 0, n_inf = 0;
    Matrix P_l, P_r;
    int nu = 0;  // nilpotency index; 0 iff E nonsingular
};

struct StrictlyProperRealization {
    Matrix E, A, B, C;  // E nonsingular; G_sp(s) = C (sE - A)^-1 B
    Index order() const { return E.rows(); }
};

/// Dense desk-scale limit for the spectral path (default 2000; override with
/// the DSR_DENSE_LIMIT environment variable).
Index dense_limit();

/// Computes the Weierstrass data via a sorted generalized real Schur (QZ)
/// factorization followed by a generalized Sylvester block-decoupling.
/// Throws SingularPencil when the regularity probe fails, DenseLimitExceeded
/// for oversized input.
WeierstrassData weierstrass(const DescriptorSystem& system);

/// Orthonormal bases (W_inf, V_inf) of the left/right deflating subspaces for
/// the eigenvalue at infinity: Im(I - P_l^T) and Im(I - P_r). Empty for ODEs.
std::pair<Matrix, Matrix> infinite_deflating_bases(const WeierstrassData& w);

/// Additive split G = G_sp + P: strictly proper realization of order n_f and
/// the polynomial part P(s) = D - sum_{k=0}^{nu-1} s^k C T2 N^k S2^T B.
std::pair<StrictlyProperRealization, MatrixPolynomial> split_transfer(const DescriptorSystem& system,
                                                                      const WeierstrassData& w);

int pencil_index(const WeierstrassData& w);

}  // namespace dsr
