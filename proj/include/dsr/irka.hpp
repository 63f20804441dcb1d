// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "dsr/core.hpp"
#include "dsr/spectral.hpp"

namespace dsr {

struct IrkaConfig {
    int r = 2;                 // target order of the strictly proper part
    int max_iter = 100;
    double shift_tol = 1e-6;   // relative shift-change tolerance
    std::optional<InterpolationData> initial;  // seeding policy applies when absent
    double defect_retry = 1e-8;  // relative perturbation on singular/defective retries
    unsigned threads = 1;        // per-shift solves may run concurrently
};

struct IrkaResult {
    ReducedModel model;
    bool converged = false;
    int iterations = 0;
    std::vector<std::vector<Complex>> shift_history;  // one entry per iteration
    double final_shift_change = 0.0;
};

/// H2-optimal fixed-point iteration for general descriptor systems. Iterates
/// on the strictly proper part with projector-corrected bases, then appends
/// the infinite deflating bases so the final model keeps the polynomial part.
IrkaResult irka_dae(const DescriptorSystem& system, const WeierstrassData& w, const IrkaConfig& config);

struct OptimalityCheck {
    int index;
    Complex point;  // -lambda_i of the reduced strictly proper pencil
    double right_res, left_res, hermite_res;
    bool pass;
};

struct OptimalityReport {
    std::vector<OptimalityCheck> checks;
    double tolerance = 1e-6;
    bool pass = true;
    double max_residual = 0.0;
};

/// First-order H2 optimality residuals: bi-tangential Hermite interpolation at
/// the mirrored poles of the reduced strictly proper part, with directions
/// from the bi-normalized eigenvectors.
OptimalityReport check_h2_first_order(const DescriptorSystem& full, const ReducedModel& reduced, double tol);
OptimalityReport check_h2_first_order(const DescriptorSystem& full, const IrkaResult& result, double tol);

/// Default seeding policy: log-spaced positive real shifts over the magnitude
/// range of a coarse projected spectrum estimate; directions from dominant
/// singular vectors of D-free transfer samples.
InterpolationData seed_interpolation_data(const DescriptorSystem& system, int r, const Matrix* P_l = nullptr,
                                          const Matrix* P_r = nullptr);

namespace detail {
/// One perturb-and-retry policy shared by the IRKA variants: real relative
/// bumps applied pair-consistently so conjugate closure survives.
InterpolationData perturb_shifts(const InterpolationData& data, double magnitude, int attempt);

/// The reduced quadruple an IRKA iteration runs its eigen-update on.
struct IrkaQuadruple {
    Matrix E, A, B, C;
};

/// Shared successive-substitution loop: assemble -> eig -> mirror poles ->
/// residue directions -> converge on the matched shift-set distance. Retries
/// singular/defective iterates with perturbed shifts; on iteration cap,
/// finalizes the best (smallest shift change) iterate with converged = false.
IrkaResult run_irka_loop(const std::function<IrkaQuadruple(const InterpolationData&)>& assemble,
                         const std::function<ReducedModel(const InterpolationData&)>& finalize,
                         InterpolationData data, const IrkaConfig& config);

/// Shift/direction seeding from a spectrum estimate and D-free transfer
/// samples (log-spaced real shifts, dominant singular vector directions).
InterpolationData seed_policy(int r, std::vector<Complex> spectrum_estimate,
                              const std::function<Matrix(double)>& dfree_sample);
}  // namespace detail

}  // namespace dsr
