// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsr/core.hpp"
#include "dsr/spectral.hpp"

namespace dsr {

struct ColumnTag {
    Complex shift;
    int derivative_order = 0;
    bool infinite = false;
};

/// Paired Petrov-Galerkin bases with per-column provenance. V and W carry the
/// same column count so the reduced pencil is square.
struct ProjectionPair {
    Matrix V, W;
    std::vector<ColumnTag> tags;
};

/// Tangential rational Krylov columns at one shift:
/// column j = ((sigma E - A)^-1 E)^{j-1} (sigma E - A)^-1 Bhat b with
/// Bhat = P_l B when a projector is given, else B. One factorization serves
/// all columns.
CMatrix krylov_columns(const DescriptorSystem& system, Complex sigma, const CVector& b, int N,
                       const Matrix* projector = nullptr);

/// Transposed mirror of krylov_columns, with Chat^T = P_r^T C^T.
CMatrix adjoint_krylov_columns(const DescriptorSystem& system, Complex mu, const CVector& c, int M,
                               const Matrix* projector = nullptr);

/// Petrov-Galerkin projection: (W^T E V, W^T A V, W^T B, C V, D).
/// polynomial_part is left at the realization default (constant D).
ReducedModel project(const DescriptorSystem& system, const Matrix& V, const Matrix& W);

/// Hermite bi-tangential reduction ignoring the polynomial part (the classical
/// construction; interpolates but leaves the polynomial part unmatched).
ReducedModel reduce_naive(const DescriptorSystem& system, const InterpolationData& data);

/// Projector-corrected reduction: finite bases built with P_l/P_r-projected
/// right-hand sides, appended with full infinite deflating bases. The output's
/// polynomial part equals split_transfer's and the error G - G~ is strictly
/// proper.
ReducedModel reduce_dae(const DescriptorSystem& system, const InterpolationData& data, const WeierstrassData& w);

struct InterpolationCheck {
    int index;              // which interpolation point
    std::string condition;  // "right", "left", "hermite"
    double residual;        // relative
    bool pass;
};

struct InterpolationReport {
    std::vector<InterpolationCheck> checks;
    double tolerance = 1e-6;
    bool pass = true;
    double max_residual = 0.0;
};

/// A-posteriori check of the tangential conditions. G' comes from complex-step
/// differentiation at real shifts and central differences otherwise, so the
/// check stays independent of the closed-form derivative path.
InterpolationReport verify_interpolation(const DescriptorSystem& full, const ReducedModel& reduced,
                                         const InterpolationData& data, int max_derivative_order = 1,
                                         double tol = 1e-6);

namespace detail {
/// Realifies per-shift stacks (one column per data entry) and pairs ranks;
/// used by reduce_naive / reduce_dae / IRKA.
ProjectionPair realify_and_pair(const CMatrix& V, const CMatrix& W, const std::vector<ColumnTag>& tags);
}  // namespace detail

}  // namespace dsr
