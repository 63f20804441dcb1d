// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "dsr/core.hpp"
#include "dsr/spectral.hpp"

namespace dsr {

struct FrequencyResponse {
    std::vector<double> omegas;       // rad/s, strictly increasing (log-spaced)
    std::vector<CMatrix> values;      // G(i omega)
    std::vector<Matrix> magnitudes;   // entrywise |G(i omega)|
};

CMatrix eval_transfer(const DescriptorSystem& system, Complex s);
CMatrix eval_transfer(const ReducedModel& model, Complex s);

/// Closed-form derivative G^(l)(s) = (-1)^l l! C [(sE-A)^-1 E]^l (sE-A)^-1 B
/// (plus the polynomial derivative for models carrying one). l <= 4.
CMatrix eval_transfer_derivative(const DescriptorSystem& system, Complex s, int ell);
CMatrix eval_transfer_derivative(const ReducedModel& model, Complex s, int ell);

FrequencyResponse bode_sample(const DescriptorSystem& system, double wmin, double wmax, int npts);
FrequencyResponse bode_sample(const ReducedModel& model, double wmin, double wmax, int npts);

/// H2 norm of an asymptotically stable strictly proper realization via the
/// dense generalized Lyapunov route: A P E^T + E P A^T + B B^T = 0,
/// norm = sqrt(trace(C P C^T)). Throws UnstableSystem / DenseLimitExceeded.
double h2_norm_sp(const StrictlyProperRealization& sp);

/// H2 norm of the difference of two strictly proper realizations.
double h2_error_sp(const StrictlyProperRealization& a, const StrictlyProperRealization& b);

/// The leading finite block of a reduced model (provenance.finite_block), as a
/// strictly proper realization.
StrictlyProperRealization strictly_proper_part(const ReducedModel& model);

struct H2Error {
    double value = 0.0;  // +inf when the polynomial parts differ
    std::string reason;  // set when value is infinite
    bool finite() const { return std::isfinite(value); }
};

/// H2 norm of G - G~ for a dense-feasible full system. Reports +inf with a
/// reason when the polynomial coefficients mismatch beyond 1e-8 relative.
H2Error h2_error(const DescriptorSystem& full, const WeierstrassData& w, const ReducedModel& reduced);

struct HinfEstimate {
    double value = 0.0;       // max over the grid of sigma_max(G - G~); a lower bound
    double omega_at_max = 0.0;
    bool divergent = false;   // error still growing at the top of the grid
};

HinfEstimate hinf_estimate(const DescriptorSystem& full, const ReducedModel& reduced, double wmin = 1e-3,
                           double wmax = 1e6, int npts = 400);

}  // namespace dsr
