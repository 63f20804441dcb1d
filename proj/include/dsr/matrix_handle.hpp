// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <variant>

namespace dsr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using SpMatrix = Eigen::SparseMatrix<double>;
using Index = Eigen::Index;

/// Unified real-matrix handle: dense or compressed-sparse storage behind one
/// interface. Algorithms apply it and request factorizations through linalg;
/// they never touch elements directly.
class MatrixHandle {
public:
    MatrixHandle() : m_(Matrix(0, 0)) {}
    MatrixHandle(Matrix m) : m_(std::move(m)) {}  // NOLINT: implicit by design
    MatrixHandle(SpMatrix m) : m_(std::move(m)) { std::get<SpMatrix>(m_).makeCompressed(); }

    static MatrixHandle Identity(Index n) { return MatrixHandle(Matrix(Matrix::Identity(n, n))); }
    static MatrixHandle Zero(Index r, Index c) { return MatrixHandle(Matrix(Matrix::Zero(r, c))); }

    Index rows() const;
    Index cols() const;
    bool is_sparse() const { return std::holds_alternative<SpMatrix>(m_); }

    const Matrix& dense() const;    // only valid when !is_sparse()
    const SpMatrix& sparse() const; // only valid when is_sparse()
    Matrix to_dense() const;
    SpMatrix to_sparse() const;

    MatrixHandle block(Index row0, Index col0, Index nrows, Index ncols) const;

    Matrix apply(const Matrix& x) const;            // M * x
    Matrix apply_transpose(const Matrix& x) const;  // M^T * x
    CMatrix apply(const CMatrix& x) const;
    CMatrix apply_transpose(const CMatrix& x) const;

    double norm1() const;  // max column sum
    double normF() const;
    Index nonzeros() const;
    bool is_zero(double tol = 0.0) const;

private:
    std::variant<Matrix, SpMatrix> m_;
};

}  // namespace dsr
