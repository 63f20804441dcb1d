// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "dsr/core.hpp"
#include "dsr/irka.hpp"

namespace dsr {

/// Hidden ODE data of a Stokes-type index-2 system (G = A21 E11^-1 A12):
///   Cmat = C1 - C2 G^-1 A21 E11^-1 A11          (hidden output map)
///   Dscript = D - C2 G^-1 A21 E11^-1 B1
///   Bmat = B1 - A11 E11^-1 A12 G^-1 B2          (effective input map, B2 != 0)
///   linear_poly_coeff = -C2 G^-1 B2             (s-coefficient of the polynomial part)
///   const_feedthrough = Dscript - Cmat E11^-1 A12 G^-1 B2
/// const_feedthrough is the actual constant polynomial coefficient; it equals
/// Dscript whenever B2 = 0. All fields are assembled via factored solves.
struct Index2Hidden {
    Matrix Cmat;               // p x n1
    Matrix Dscript;            // p x m
    Matrix Bmat;               // n1 x m
    Matrix linear_poly_coeff;  // p x m
    Matrix const_feedthrough;  // p x m
};

/// Throws SingularE11 / SingularProjectedGram. Requires Index2Blocks.
Index2Hidden hidden_feedthrough(const DescriptorSystem& system);

/// Dense reference projectors (test oracle; desk scale only):
///   Pi_l = I - E11^-1 A12 G^-1 A21   (range = ker A21)
///   Pi_r = I - A12 G^-1 A21 E11^-1   (kernel = Im A12)
std::pair<Matrix, Matrix> projectors_index2(const DescriptorSystem& system);

/// Saddle-point realization of the restricted inverse: v solves
///   [sigma E11 - A11, A12; A21, 0] [v; z] = [B_eff b; 0],
/// so v = (sigma script-E - script-A)^I Pi B_eff b lies in ker A21.
CVector saddle_solve_right(const DescriptorSystem& system, Complex sigma, const CVector& b,
                           const Matrix& B_effective);

/// Transposed mirror with right-hand side [C_eff^T c; 0]; A12^T w = 0.
CVector saddle_solve_left(const DescriptorSystem& system, Complex mu, const CVector& c,
                          const Matrix& C_effective);

/// Interpolatory reduction for Stokes-type index-2 systems via saddle solves;
/// no projector is ever materialized. When B2 != 0 the model carries the
/// s-linear feedthrough in polynomial_part/extra_polynomial.
ReducedModel reduce_index2(const DescriptorSystem& system, const InterpolationData& data);

IrkaResult irka_index2(const DescriptorSystem& system, const IrkaConfig& config);

}  // namespace dsr
