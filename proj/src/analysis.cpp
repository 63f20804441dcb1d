// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#include "dsr/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "dsr/linalg.hpp"

namespace dsr {

CMatrix eval_transfer(const DescriptorSystem& system, Complex s) {
    CMatrix X = solve_shifted(system, s, system.B.to_dense().cast<Complex>());
    return system.C.apply(X) + system.D.to_dense().cast<Complex>();
}

CMatrix eval_transfer(const ReducedModel& model, Complex s) {
    CMatrix M = s * model.E.cast<Complex>() - model.A.cast<Complex>();
    Eigen::PartialPivLU<CMatrix> lu(M);
    const double minpiv =
        M.rows() == 0 ? 1.0 : lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (M.rows() > 0 &&
        minpiv <= static_cast<double>(M.rows()) * std::numeric_limits<double>::epsilon() *
                      M.cwiseAbs().colwise().sum().maxCoeff())
        throw SingularShift(s, "reduced pencil singular at evaluation point");
    CMatrix G = model.C.cast<Complex>() * lu.solve(model.B.cast<Complex>()) + model.D.cast<Complex>();
    if (!model.extra_polynomial.is_zero()) G += model.extra_polynomial.eval(s, model.outputs(), model.inputs());
    return G;
}

CMatrix eval_transfer_derivative(const DescriptorSystem& system, Complex s, int ell) {
    if (ell < 1 || ell > 4) throw InvalidParams("derivative order must be in [1, 4]");
    ShiftedFactorization fac(system, s);
    CMatrix X = fac.solve(system.B.to_dense().cast<Complex>());
    for (int j = 0; j < ell; ++j) X = fac.solve(system.E.apply(X));
    double fac_l = 1.0;
    for (int j = 2; j <= ell; ++j) fac_l *= j;
    const double sign = (ell % 2 == 0) ? 1.0 : -1.0;
    return sign * fac_l * system.C.apply(X);
}

CMatrix eval_transfer_derivative(const ReducedModel& model, Complex s, int ell) {
    if (ell < 1 || ell > 4) throw InvalidParams("derivative order must be in [1, 4]");
    CMatrix M = s * model.E.cast<Complex>() - model.A.cast<Complex>();
    Eigen::PartialPivLU<CMatrix> lu(M);
    CMatrix X = lu.solve(model.B.cast<Complex>());
    CMatrix Ec = model.E.cast<Complex>();
    for (int j = 0; j < ell; ++j) X = lu.solve(Ec * X);
    double fac_l = 1.0;
    for (int j = 2; j <= ell; ++j) fac_l *= j;
    const double sign = (ell % 2 == 0) ? 1.0 : -1.0;
    CMatrix G = sign * fac_l * model.C.cast<Complex>() * X;
    if (!model.extra_polynomial.is_zero())
        G += model.extra_polynomial.derivative(s, ell, model.outputs(), model.inputs());
    return G;
}

namespace {

std::vector<double> log_grid(double wmin, double wmax, int npts) {
    if (!(wmin > 0.0) || wmax <= wmin || npts < 2) throw InvalidParams("bad frequency grid parameters");
    std::vector<double> w(static_cast<std::size_t>(npts));
    const double ratio = std::log(wmax / wmin);
    for (int k = 0; k < npts; ++k)
        w[static_cast<std::size_t>(k)] = wmin * std::exp(ratio * static_cast<double>(k) / (npts - 1));
    w.back() = wmax;
    return w;
}

template <typename ModelT>
FrequencyResponse bode_impl(const ModelT& model, double wmin, double wmax, int npts) {
    FrequencyResponse fr;
    fr.omegas = log_grid(wmin, wmax, npts);
    fr.values.reserve(fr.omegas.size());
    fr.magnitudes.reserve(fr.omegas.size());
    for (double w : fr.omegas) {
        try {
            fr.values.push_back(eval_transfer(model, Complex(0.0, w)));
        } catch (const SingularShift&) {
            throw SingularShift(Complex(0.0, w), "imaginary-axis pole at omega = " + std::to_string(w));
        }
        fr.magnitudes.push_back(fr.values.back().cwiseAbs());
    }
    return fr;
}

}  // namespace

FrequencyResponse bode_sample(const DescriptorSystem& system, double wmin, double wmax, int npts) {
    return bode_impl(system, wmin, wmax, npts);
}

FrequencyResponse bode_sample(const ReducedModel& model, double wmin, double wmax, int npts) {
    return bode_impl(model, wmin, wmax, npts);
}

double h2_norm_sp(const StrictlyProperRealization& sp) {
    const Index n = sp.E.rows();
    if (n > dense_limit()) throw DenseLimitExceeded("H2 norm limited to the dense path");
    if (n == 0) return 0.0;
    if (!pivot_nonsingular(sp.E)) throw Error("strictly proper realization needs nonsingular E");

    Eigen::PartialPivLU<Matrix> elu(sp.E);
    Matrix A0 = elu.solve(sp.A);
    Matrix B0 = elu.solve(sp.B);

    Eigen::EigenSolver<Matrix> eig(A0);
    if (eig.info() != Eigen::Success) throw Error("eigensolver failed in stability check");
    if (eig.eigenvalues().real().maxCoeff() >= 0.0)
        throw UnstableSystem("finite dynamics are not asymptotically stable");

    const double t = lyapunov_output_trace(A0, B0, sp.C);
    return std::sqrt(std::max(t, 0.0));
}

double h2_error_sp(const StrictlyProperRealization& a, const StrictlyProperRealization& b) {
    if (a.C.rows() != b.C.rows() || a.B.cols() != b.B.cols())
        throw DimensionMismatch("error system needs matching input/output counts");
    const Index na = a.order(), nb = b.order();
    StrictlyProperRealization err;
    err.E = Matrix::Zero(na + nb, na + nb);
    err.E.topLeftCorner(na, na) = a.E;
    err.E.bottomRightCorner(nb, nb) = b.E;
    err.A = Matrix::Zero(na + nb, na + nb);
    err.A.topLeftCorner(na, na) = a.A;
    err.A.bottomRightCorner(nb, nb) = b.A;
    err.B = Matrix(na + nb, a.B.cols());
    err.B << a.B, b.B;
    err.C = Matrix(a.C.rows(), na + nb);
    err.C << a.C, -b.C;
    return h2_norm_sp(err);
}

StrictlyProperRealization strictly_proper_part(const ReducedModel& model) {
    Index fb = model.provenance.finite_block;
    if (fb < 0 || fb > model.order()) fb = model.order();
    StrictlyProperRealization sp;
    sp.E = model.E.topLeftCorner(fb, fb);
    sp.A = model.A.topLeftCorner(fb, fb);
    sp.B = model.B.topRows(fb);
    sp.C = model.C.leftCols(fb);
    return sp;
}

H2Error h2_error(const DescriptorSystem& full, const WeierstrassData& w, const ReducedModel& reduced) {
    auto [sp_full, poly_full] = split_transfer(full, w);
    const MatrixPolynomial& poly_red = reduced.polynomial_part;

    double scale = 0.0;
    for (const auto& c : poly_full.coeffs) scale = std::max(scale, c.norm());
    for (const auto& c : poly_red.coeffs) scale = std::max(scale, c.norm());
    const std::size_t deg = std::max(poly_full.coeffs.size(), poly_red.coeffs.size());
    for (std::size_t k = 0; k < deg; ++k) {
        Matrix a = k < poly_full.coeffs.size() ? poly_full.coeffs[k]
                                               : Matrix::Zero(full.outputs(), full.inputs());
        Matrix b = k < poly_red.coeffs.size() ? poly_red.coeffs[k]
                                              : Matrix::Zero(full.outputs(), full.inputs());
        if ((a - b).norm() > 1e-8 * std::max(scale, 1e-300)) {
            H2Error e;
            e.value = std::numeric_limits<double>::infinity();
            e.reason = "polynomial parts differ at degree " + std::to_string(k) +
                       " (H2 error of an improper difference is unbounded)";
            return e;
        }
    }
    H2Error e;
    e.value = h2_error_sp(sp_full, strictly_proper_part(reduced));
    return e;
}

HinfEstimate hinf_estimate(const DescriptorSystem& full, const ReducedModel& reduced, double wmin, double wmax,
                           int npts) {
    const std::vector<double> grid = log_grid(wmin, wmax, npts);
    HinfEstimate est;
    std::vector<double> err(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Complex s(0.0, grid[k]);
        CMatrix diff = eval_transfer(full, s) - eval_transfer(reduced, s);
        Eigen::JacobiSVD<CMatrix> svd(diff);
        err[k] = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
        if (err[k] > est.value) {
            est.value = err[k];
            est.omega_at_max = grid[k];
        }
    }
    // Divergence heuristic: still near the max at the top of the grid and a
    // decade of growth over the last decade.
    std::size_t below = grid.size() - 1;
    while (below > 0 && grid[below] > wmax / 10.0) --below;
    if (err.back() >= 0.999 * est.value && err.back() > 3.0 * err[below]) est.divergent = true;
    return est;
}

}  // namespace dsr
