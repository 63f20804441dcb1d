// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#include "dsr/linalg.hpp"

#include <lapacke.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dsr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <typename Mat>
double norm1_abs(const Mat& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

bool pivot_nonsingular(const Matrix& M) {
    if (M.rows() != M.cols()) return false;
    if (M.rows() == 0) return true;
    Eigen::PartialPivLU<Matrix> lu(M);
    const double minpiv = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    return minpiv > static_cast<double>(M.rows()) * kEps * norm1_abs(M);
}

bool pivot_nonsingular(const CMatrix& M) {
    if (M.rows() != M.cols()) return false;
    if (M.rows() == 0) return true;
    Eigen::PartialPivLU<CMatrix> lu(M);
    const double minpiv = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    return minpiv > static_cast<double>(M.rows()) * kEps * norm1_abs(M);
}

bool pivot_nonsingular(const MatrixHandle& M) {
    // The strict pivot criterion needs explicit pivots; desk-scale checks
    // densify, large sparse blocks fall back to factorization success.
    if (!M.is_sparse() || M.rows() <= 4096) return pivot_nonsingular(M.to_dense());
    Eigen::SparseLU<SpMatrix> lu(M.sparse());
    return lu.info() == Eigen::Success;
}

struct ComplexLU::DenseFac {
    Eigen::PartialPivLU<CMatrix> lu;
};

struct ComplexLU::SparseFac {
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>> lu;
};

ComplexLU::ComplexLU(const CMatrix& M) : n_(M.rows()) {
    dense_ = std::make_shared<DenseFac>();
    dense_->lu.compute(M);
    if (n_ == 0) {
        ok_ = true;
        return;
    }
    const double minpiv = dense_->lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    ok_ = minpiv > static_cast<double>(n_) * kEps * norm1_abs(M);
}

ComplexLU::ComplexLU(const Eigen::SparseMatrix<Complex>& M) : n_(M.rows()) {
    sparse_ = std::make_shared<SparseFac>();
    sparse_->lu.compute(M);
    ok_ = sparse_->lu.info() == Eigen::Success;
}

CMatrix ComplexLU::solve(const CMatrix& rhs) const {
    if (dense_) return dense_->lu.solve(rhs);
    return sparse_->lu.solve(rhs);
}

CMatrix ComplexLU::solve_transpose(const CMatrix& rhs) const {
    if (dense_) return dense_->lu.transpose().solve(rhs);
    return sparse_->lu.transpose().solve(rhs);
}

ComplexLU factor_block_matrix(Index size, const std::vector<BlockTerm>& terms) {
    bool all_sparse = true;
    for (const auto& t : terms) all_sparse = all_sparse && t.M.is_sparse();
    if (all_sparse) {
        std::vector<Eigen::Triplet<Complex>> trips;
        for (const auto& t : terms) {
            const SpMatrix& m = t.M.sparse();
            for (Index j = 0; j < m.outerSize(); ++j)
                for (SpMatrix::InnerIterator it(m, j); it; ++it)
                    trips.emplace_back(static_cast<int>(t.row0 + it.row()), static_cast<int>(t.col0 + it.col()),
                                       t.coeff * it.value());
        }
        Eigen::SparseMatrix<Complex> M(size, size);
        M.setFromTriplets(trips.begin(), trips.end());
        M.makeCompressed();
        return ComplexLU(M);
    }
    CMatrix M = CMatrix::Zero(size, size);
    for (const auto& t : terms)
        M.block(t.row0, t.col0, t.M.rows(), t.M.cols()) += t.coeff * t.M.to_dense().cast<Complex>();
    return ComplexLU(M);
}

ShiftedFactorization::ShiftedFactorization(const MatrixHandle& E, const MatrixHandle& A, Complex sigma)
    : sigma_(sigma) {
    if (E.rows() != A.rows() || E.cols() != A.cols() || E.rows() != E.cols())
        throw DimensionMismatch("shifted operator needs square E, A of equal order");
    if (E.is_sparse() && A.is_sparse()) {
        Eigen::SparseMatrix<Complex> M =
            (sigma * E.sparse().cast<Complex>() - A.sparse().cast<Complex>()).pruned();
        M.makeCompressed();
        lu_ = std::make_shared<ComplexLU>(M);
    } else {
        CMatrix M = sigma * E.to_dense().cast<Complex>() - A.to_dense().cast<Complex>();
        lu_ = std::make_shared<ComplexLU>(M);
    }
    if (!lu_->ok()) throw SingularShift(sigma);
}

CMatrix solve_shifted(const DescriptorSystem& system, Complex sigma, const CMatrix& R) {
    if (R.rows() != system.order()) throw DimensionMismatch("right-hand side row count mismatch");
    ShiftedFactorization fac(system, sigma);
    return fac.solve(R);
}

CMatrix solve_shifted_adjoint(const DescriptorSystem& system, Complex sigma, const CMatrix& R) {
    if (R.rows() != system.order()) throw DimensionMismatch("right-hand side row count mismatch");
    ShiftedFactorization fac(system, sigma);
    return fac.solve_transpose(R);
}

std::vector<EigenTriple> eig_pencil(const Matrix& Etilde, const Matrix& Atilde) {
    const Index n = Etilde.rows();
    if (Etilde.cols() != n || Atilde.rows() != n || Atilde.cols() != n)
        throw DimensionMismatch("eig_pencil needs square matrices of equal order");
    if (n == 0) return {};
    if (!pivot_nonsingular(Etilde)) throw SingularReducedE("reduced E fails the pivot criterion");

    // dggev keeps conjugate pairs exact, which the IRKA shift updates rely on.
    Matrix a = Atilde, b = Etilde;
    Vector ar(n), ai(n), be(n);
    Matrix vl(n, n), vr(n, n);
    lapack_int info = LAPACKE_dggev(LAPACK_COL_MAJOR, 'V', 'V', static_cast<lapack_int>(n), a.data(),
                                    static_cast<lapack_int>(n), b.data(), static_cast<lapack_int>(n), ar.data(),
                                    ai.data(), be.data(), vl.data(), static_cast<lapack_int>(n), vr.data(),
                                    static_cast<lapack_int>(n));
    if (info != 0) throw Error("generalized eigensolver failed (dggev info=" + std::to_string(info) + ")");

    std::vector<EigenTriple> triples;
    triples.reserve(static_cast<std::size_t>(n));
    const double beta_tol = static_cast<double>(n) * kEps * be.cwiseAbs().maxCoeff();
    for (Index j = 0; j < n;) {
        if (std::abs(be(j)) <= beta_tol)
            throw SingularReducedE("reduced pencil has a numerically infinite eigenvalue");
        if (ai(j) == 0.0) {
            EigenTriple t;
            t.lambda = Complex(ar(j) / be(j), 0.0);
            t.y = vl.col(j).cast<Complex>();
            t.z = vr.col(j).cast<Complex>();
            triples.push_back(std::move(t));
            ++j;
        } else {
            Complex lambda(ar(j) / be(j), ai(j) / be(j));
            CVector y = vl.col(j).cast<Complex>() + Complex(0, 1) * vl.col(j + 1).cast<Complex>();
            CVector z = vr.col(j).cast<Complex>() + Complex(0, 1) * vr.col(j + 1).cast<Complex>();
            triples.push_back({lambda, y, z});
            triples.push_back({std::conj(lambda), y.conjugate(), z.conjugate()});
            j += 2;
        }
    }

    // Bi-normalization y_i^* E z_i = 1; a tiny pivot flags a (near-)defective pencil.
    const double defect_tol = 1e-12 * Etilde.norm();
    const CMatrix Ec = Etilde.cast<Complex>();
    for (auto& t : triples) {
        Complex d = t.y.adjoint() * Ec * t.z;
        if (std::abs(d) < defect_tol)
            throw DefectivePencil("bi-normalization pivot below 1e-12*||E||; perturb the shifts");
        t.z /= d;
    }

    std::sort(triples.begin(), triples.end(), [](const EigenTriple& p, const EigenTriple& q) {
        if (p.lambda.real() != q.lambda.real()) return p.lambda.real() < q.lambda.real();
        return p.lambda.imag() < q.lambda.imag();
    });
    return triples;
}

Matrix orthonormalize(const Matrix& V, double drop_tol) {
    if (V.cols() < 1 || V.rows() < 1) throw EmptyBasis("no columns to orthonormalize");
    Eigen::BDCSVD<Matrix> svd(V, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) throw EmptyBasis("all columns numerically zero");
    Index k = 0;
    while (k < sv.size() && sv(k) >= drop_tol * sv(0)) ++k;
    if (k == 0) throw EmptyBasis("all columns dropped by the rank tolerance");
    return svd.matrixU().leftCols(k);
}

Matrix orthonormalize(const CMatrix& V, double drop_tol) {
    if (V.cols() < 1 || V.rows() < 1) throw EmptyBasis("no columns to orthonormalize");
    Matrix stack(V.rows(), 2 * V.cols());
    stack << V.real(), V.imag();
    return orthonormalize(stack, drop_tol);
}

namespace {

// A X + X A^H = -Q by complex Schur reduction, generic over the real scalar.
template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> lyapunov_impl(
    const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& A,
    const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& Q) {
    using CMat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
    using CVec = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
    using RMat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    const Index n = A.rows();
    if (A.cols() != n || Q.rows() != n || Q.cols() != n)
        throw DimensionMismatch("lyapunov solve needs square matrices of equal order");
    if (n == 0) return RMat(0, 0);

    Eigen::ComplexSchur<CMat> schur(A.template cast<std::complex<Real>>());
    if (schur.info() != Eigen::Success) throw Error("complex Schur factorization failed");
    const CMat& U = schur.matrixU();
    const CMat& T = schur.matrixT();
    CMat Qt = -(U.adjoint() * Q.template cast<std::complex<Real>>() * U);

    // T X + X T^H = Qt, solved columnwise from the last column.
    CMat X = CMat::Zero(n, n);
    CMat M = T;
    for (Index j = n - 1; j >= 0; --j) {
        CVec rhs = Qt.col(j);
        for (Index k = j + 1; k < n; ++k) rhs -= std::conj(T(j, k)) * X.col(k);
        M.diagonal().array() = T.diagonal().array() + std::conj(T(j, j));
        X.col(j) = M.template triangularView<Eigen::Upper>().solve(rhs);
    }
    RMat out = (U * X * U.adjoint()).real();
    return Real(0.5) * (out + out.transpose());
}

}  // namespace

Matrix lyapunov_continuous(const Matrix& A, const Matrix& Q) { return lyapunov_impl<double>(A, Q); }

double lyapunov_output_trace(const Matrix& A0, const Matrix& B0, const Matrix& C) {
    using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    LMat Al = A0.cast<long double>();
    LMat Bl = B0.cast<long double>();
    LMat Cl = C.cast<long double>();
    LMat P = lyapunov_impl<long double>(Al, LMat(Bl * Bl.transpose()));
    return static_cast<double>((Cl * P * Cl.transpose()).trace());
}

std::vector<int> hungarian(const Matrix& cost) {
    const int n = static_cast<int>(cost.rows());
    if (cost.cols() != n) throw DimensionMismatch("hungarian needs a square cost matrix");
    if (n == 0) return {};
    const double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0), v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0), way(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, kInf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            int i0 = p[static_cast<std::size_t>(j0)], j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> assign(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j)
        if (p[static_cast<std::size_t>(j)] > 0) assign[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
    return assign;
}

double shift_set_distance(const std::vector<Complex>& old_set, const std::vector<Complex>& new_set) {
    if (old_set.size() != new_set.size())
        throw DimensionMismatch("shift multisets must have equal cardinality");
    const int n = static_cast<int>(old_set.size());
    if (n == 0) return 0.0;
    Matrix cost(n, n);
    for (int i = 0; i < n; ++i) {
        const double denom = std::max(std::abs(old_set[static_cast<std::size_t>(i)]), 1e-300);
        for (int j = 0; j < n; ++j)
            cost(i, j) = std::abs(new_set[static_cast<std::size_t>(j)] - old_set[static_cast<std::size_t>(i)]) / denom;
    }
    std::vector<int> match = hungarian(cost);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, cost(i, match[static_cast<std::size_t>(i)]));
    return worst;
}

}  // namespace dsr
