// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dsr/core.hpp"
#include "dsr/irka.hpp"

namespace dsr {

/// Constant polynomial part of a semi-explicit index-1 system:
///   M1 = (E11 - E12 A22^-1 A21)^-1 E12 A22^-1
///   M2 = -A22^-1 A21 M1 - A22^-1
///   Dtilde = C1 M1 B2 + C2 M2 B2 + D
/// M1/M2 are applied through factored solves; the dense matrices are only
/// materialized at desk scale.
struct Index1Feedthrough {
    Matrix M1;      // n1 x n2
    Matrix M2;      // n2 x n2
    Matrix Dtilde;  // p x m
};

/// Throws SingularA22 / SingularSchurComplement. Requires Index1Blocks.
Index1Feedthrough polynomial_part_index1(const DescriptorSystem& system);

/// Projector-free Hermite interpolation for index-1 systems: bases from plain
/// shifted solves on the full (E, A), feedthrough-shifted reduced matrices so
/// the (constant) polynomial part matches exactly.
ReducedModel reduce_index1(const DescriptorSystem& system, const InterpolationData& data);

/// IRKA with the feedthrough correction applied inside every iteration.
IrkaResult irka_index1(const DescriptorSystem& system, const IrkaConfig& config);

}  // namespace dsr
