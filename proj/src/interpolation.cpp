// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#include "dsr/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "dsr/analysis.hpp"
#include "dsr/detail.hpp"
#include "dsr/linalg.hpp"

namespace dsr {

namespace detail {

void for_each_index(Index count, unsigned threads, const std::function<void(Index)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (Index i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::future<void>> futures;
    futures.reserve(static_cast<std::size_t>(count));
    for (Index i = 0; i < count; ++i)
        futures.push_back(std::async(std::launch::async, [&fn, i] { fn(i); }));
    for (auto& f : futures) f.get();
}

std::pair<CMatrix, CMatrix> tangential_basis_columns(const DescriptorSystem& system, const InterpolationData& data,
                                                     const Matrix* P_l, const Matrix* P_r, unsigned threads) {
    const Index n = system.order();
    const auto r = static_cast<Index>(data.size());
    CMatrix V(n, r), W(n, r);

    // Conjugate entries are filled from their representative's solution, so
    // each factorization is built once per conjugate pair.
    std::vector<Index> rep(static_cast<std::size_t>(r), -1);
    std::vector<char> done(static_cast<std::size_t>(r), 0);
    for (Index i = 0; i < r; ++i) {
        if (done[static_cast<std::size_t>(i)]) continue;
        done[static_cast<std::size_t>(i)] = 1;
        rep[static_cast<std::size_t>(i)] = i;
        if (data.points[static_cast<std::size_t>(i)].imag() == 0.0) continue;
        for (Index j = i + 1; j < r; ++j) {
            if (done[static_cast<std::size_t>(j)]) continue;
            if (data.points[static_cast<std::size_t>(j)] == std::conj(data.points[static_cast<std::size_t>(i)]) &&
                data.right_dirs[static_cast<std::size_t>(j)].isApprox(
                    data.right_dirs[static_cast<std::size_t>(i)].conjugate()) &&
                data.left_dirs[static_cast<std::size_t>(j)].isApprox(
                    data.left_dirs[static_cast<std::size_t>(i)].conjugate())) {
                rep[static_cast<std::size_t>(j)] = i;
                done[static_cast<std::size_t>(j)] = 1;
                break;
            }
        }
    }

    std::vector<Index> heads;
    for (Index i = 0; i < r; ++i)
        if (rep[static_cast<std::size_t>(i)] == i) heads.push_back(i);

    for_each_index(static_cast<Index>(heads.size()), threads, [&](Index hi) {
        const Index i = heads[static_cast<std::size_t>(hi)];
        const Complex sigma = data.points[static_cast<std::size_t>(i)];
        CMatrix vcol = krylov_columns(system, sigma, data.right_dirs[static_cast<std::size_t>(i)], 1, P_l);
        CMatrix wcol = adjoint_krylov_columns(system, sigma, data.left_dirs[static_cast<std::size_t>(i)], 1, P_r);
        V.col(i) = vcol.col(0);
        W.col(i) = wcol.col(0);
    });
    for (Index i = 0; i < r; ++i) {
        const Index ri = rep[static_cast<std::size_t>(i)];
        if (ri != i) {
            V.col(i) = V.col(ri).conjugate();
            W.col(i) = W.col(ri).conjugate();
        }
    }
    return {V, W};
}

InterpolationData sort_conjugate_pairs(const InterpolationData& data) {
    const std::size_t r = data.size();
    std::vector<char> visited(r, 0);
    InterpolationData out;

    auto is_conj = [&](std::size_t i, std::size_t j) {
        return data.points[i] == std::conj(data.points[j]) &&
               data.right_dirs[i].isApprox(data.right_dirs[j].conjugate()) &&
               data.left_dirs[i].isApprox(data.left_dirs[j].conjugate());
    };
    auto self_conj = [&](std::size_t i) {
        return data.points[i].imag() == 0.0 && data.right_dirs[i].imag().isZero(0.0) &&
               data.left_dirs[i].imag().isZero(0.0);
    };

    // Stable order over representatives keeps runs reproducible.
    std::vector<std::size_t> order(r);
    for (std::size_t i = 0; i < r; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Complex pa = data.points[a], pb = data.points[b];
        if (pa.real() != pb.real()) return pa.real() < pb.real();
        return std::abs(pa.imag()) < std::abs(pb.imag());
    });

    for (std::size_t oi : order) {
        if (visited[oi]) continue;
        visited[oi] = 1;
        if (self_conj(oi)) {
            out.push(data.points[oi], data.right_dirs[oi], data.left_dirs[oi]);
            continue;
        }
        std::size_t partner = r;
        for (std::size_t j = 0; j < r; ++j) {
            if (!visited[j] && is_conj(oi, j)) {
                partner = j;
                break;
            }
        }
        if (partner == r) throw InvalidParams("interpolation data is not closed under conjugation");
        visited[partner] = 1;
        std::size_t first = oi, second = partner;
        if (data.points[first].imag() < 0.0) std::swap(first, second);
        out.push(data.points[first], data.right_dirs[first], data.left_dirs[first]);
        out.push(data.points[second], data.right_dirs[second], data.left_dirs[second]);
    }
    return out;
}

CMatrix pair_realification_transform(const InterpolationData& sorted) {
    const auto r = static_cast<Index>(sorted.size());
    CMatrix K = CMatrix::Zero(r, r);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Index i = 0;
    while (i < r) {
        if (sorted.points[static_cast<std::size_t>(i)].imag() == 0.0) {
            K(i, i) = 1.0;
            ++i;
        } else {
            K(i, i) = Complex(inv_sqrt2, 0.0);
            K(i, i + 1) = Complex(0.0, -inv_sqrt2);
            K(i + 1, i) = Complex(inv_sqrt2, 0.0);
            K(i + 1, i + 1) = Complex(0.0, inv_sqrt2);
            i += 2;
        }
    }
    return K;
}

ProjectionPair realify_and_pair(const CMatrix& V, const CMatrix& W, const std::vector<ColumnTag>& tags) {
    Matrix Vr = orthonormalize(V);
    Matrix Wr = orthonormalize(W);
    const Index k = std::min(Vr.cols(), Wr.cols());
    ProjectionPair pair;
    pair.V = Vr.leftCols(k);
    pair.W = Wr.leftCols(k);
    pair.tags = tags;
    return pair;
}

ReducedModel assemble_dae_model(const DescriptorSystem& system, const Matrix& V_f, const Matrix& W_f,
                                const WeierstrassData& w) {
    const Index k = V_f.cols(), q = w.n_inf;
    const Matrix B = system.B.to_dense();
    const Matrix C = system.C.to_dense();

    ReducedModel m;
    m.E = Matrix::Zero(k + q, k + q);
    m.A = Matrix::Zero(k + q, k + q);
    m.E.topLeftCorner(k, k) = W_f.transpose() * system.E.apply(V_f);
    m.A.topLeftCorner(k, k) = W_f.transpose() * system.A.apply(V_f);
    // Infinite part with V_inf = T2, W_inf = S2: the cross blocks vanish by
    // the commutation identities and the (2,2) blocks are exactly N and I.
    m.E.bottomRightCorner(q, q) = w.N;
    m.A.bottomRightCorner(q, q).setIdentity();
    m.B = Matrix(k + q, B.cols());
    m.B.topRows(k) = W_f.transpose() * B;
    m.B.bottomRows(q) = w.Sinv.bottomRows(q) * B;
    m.C = Matrix(C.rows(), k + q);
    m.C.leftCols(k) = C * V_f;
    m.C.rightCols(q) = C * w.T.rightCols(q);
    m.D = system.D.to_dense();
    m.polynomial_part = split_transfer(system, w).second;
    m.provenance.finite_block = k;
    m.provenance.infinite_block = q;
    return m;
}

}  // namespace detail

CMatrix krylov_columns(const DescriptorSystem& system, Complex sigma, const CVector& b, int N,
                       const Matrix* projector) {
    if (N < 1) throw InvalidParams("krylov_columns needs N >= 1");
    if (b.size() != system.inputs()) throw DimensionMismatch("direction length must equal input count");
    if (b.norm() == 0.0) throw InvalidParams("zero tangential direction");
    ShiftedFactorization fac(system, sigma);
    CMatrix rhs = system.B.apply(CMatrix(b));
    if (projector) rhs = projector->cast<Complex>() * rhs;
    CMatrix out(system.order(), N);
    out.col(0) = fac.solve(rhs);
    for (int j = 1; j < N; ++j) out.col(j) = fac.solve(system.E.apply(CMatrix(out.col(j - 1))));
    return out;
}

CMatrix adjoint_krylov_columns(const DescriptorSystem& system, Complex mu, const CVector& c, int M,
                               const Matrix* projector) {
    if (M < 1) throw InvalidParams("adjoint_krylov_columns needs M >= 1");
    if (c.size() != system.outputs()) throw DimensionMismatch("direction length must equal output count");
    if (c.norm() == 0.0) throw InvalidParams("zero tangential direction");
    ShiftedFactorization fac(system, mu);
    CMatrix rhs = system.C.apply_transpose(CMatrix(c));
    if (projector) rhs = projector->transpose().cast<Complex>() * rhs;
    CMatrix out(system.order(), M);
    out.col(0) = fac.solve_transpose(rhs);
    for (int j = 1; j < M; ++j) out.col(j) = fac.solve_transpose(system.E.apply_transpose(CMatrix(out.col(j - 1))));
    return out;
}

ReducedModel project(const DescriptorSystem& system, const Matrix& V, const Matrix& W) {
    if (V.cols() != W.cols()) throw DimensionMismatch("V and W must have equal column counts");
    if (V.rows() != system.order() || W.rows() != system.order())
        throw DimensionMismatch("projection basis row count must equal the system order");
    ReducedModel m;
    m.E = W.transpose() * system.E.apply(V);
    m.A = W.transpose() * system.A.apply(V);
    m.B = W.transpose() * system.B.to_dense();
    m.C = system.C.apply(V);
    m.D = system.D.to_dense();
    m.polynomial_part = MatrixPolynomial::constant(m.D);
    m.polynomial_part.canonicalize();
    m.provenance.method = "project";
    return m;
}

namespace {

std::vector<ColumnTag> make_tags(const InterpolationData& data) {
    std::vector<ColumnTag> tags;
    tags.reserve(data.size());
    for (const Complex& s : data.points) tags.push_back({s, 0, false});
    return tags;
}

void check_reduced_pencil(const ReducedModel& m, const InterpolationData& data) {
    for (const Complex& s : data.points) {
        CMatrix P = s * m.E.cast<Complex>() - m.A.cast<Complex>();
        if (!pivot_nonsingular(P))
            throw SingularReducedPencil("sigma Etilde - Atilde is singular at an interpolation point");
    }
}

}  // namespace

ReducedModel reduce_naive(const DescriptorSystem& system, const InterpolationData& data) {
    InterpolationData closed = conjugate_close(data);
    auto [V, W] = detail::tangential_basis_columns(system, closed, nullptr, nullptr, 1);
    ProjectionPair pair = detail::realify_and_pair(V, W, make_tags(closed));
    ReducedModel m = project(system, pair.V, pair.W);
    m.provenance.method = "naive";
    m.provenance.shifts = closed;
    m.provenance.finite_block = m.order();
    check_reduced_pencil(m, closed);
    return m;
}

ReducedModel reduce_dae(const DescriptorSystem& system, const InterpolationData& data, const WeierstrassData& w) {
    InterpolationData closed = conjugate_close(data);
    auto [Vf, Wf] = detail::tangential_basis_columns(system, closed, &w.P_l, &w.P_r, 1);
    ProjectionPair pair = detail::realify_and_pair(Vf, Wf, make_tags(closed));
    ReducedModel m = detail::assemble_dae_model(system, pair.V, pair.W, w);
    m.provenance.method = "dae";
    m.provenance.shifts = closed;
    check_reduced_pencil(m, closed);
    return m;
}

namespace {

// Derivative for the verification path only: complex-step at purely real
// shifts, central differences otherwise. Stays independent of the closed-form
// evaluation in analysis.
template <typename ModelT>
CMatrix numeric_transfer_derivative(const ModelT& model, Complex s) {
    if (s.imag() == 0.0) {
        const double h = 1e-20;
        CMatrix g = eval_transfer(model, Complex(s.real(), h));
        return (g.imag() / h).template cast<Complex>();
    }
    const double h = 1e-6 * std::max(1.0, std::abs(s));
    CMatrix gp = eval_transfer(model, s + h);
    CMatrix gm = eval_transfer(model, s - h);
    return (gp - gm) / (2.0 * h);
}

double rel(double num, double den) { return den > 0.0 ? num / den : num; }

}  // namespace

InterpolationReport verify_interpolation(const DescriptorSystem& full, const ReducedModel& reduced,
                                         const InterpolationData& data, int max_derivative_order, double tol) {
    InterpolationReport report;
    report.tolerance = tol;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const Complex s = data.points[i];
        const CVector& b = data.right_dirs[i];
        const CVector& c = data.left_dirs[i];
        CMatrix Gf = eval_transfer(full, s);
        CMatrix Gr = eval_transfer(reduced, s);

        const double right = rel((Gf * b - Gr * b).norm(), (Gf * b).norm());
        const double left = rel((c.transpose() * Gf - c.transpose() * Gr).norm(), (c.transpose() * Gf).norm());
        report.checks.push_back({static_cast<int>(i), "right", right, right <= tol});
        report.checks.push_back({static_cast<int>(i), "left", left, left <= tol});

        if (max_derivative_order >= 1) {
            CMatrix dGf = numeric_transfer_derivative(full, s);
            CMatrix dGr = numeric_transfer_derivative(reduced, s);
            Complex hf = c.transpose() * dGf * b;
            Complex hr = c.transpose() * dGr * b;
            const double herm = rel(std::abs(hf - hr), std::abs(hf));
            report.checks.push_back({static_cast<int>(i), "hermite", herm, herm <= tol});
        }
    }
    for (const auto& c : report.checks) {
        report.max_residual = std::max(report.max_residual, c.residual);
        report.pass = report.pass && c.pass;
    }
    return report;
}

}  // namespace dsr
