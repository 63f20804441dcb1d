// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#include "dsr/matrix_handle.hpp"

#include "dsr/errors.hpp"

namespace dsr {

Index MatrixHandle::rows() const {
    return std::visit([](const auto& m) { return m.rows(); }, m_);
}

Index MatrixHandle::cols() const {
    return std::visit([](const auto& m) { return m.cols(); }, m_);
}

const Matrix& MatrixHandle::dense() const {
    if (is_sparse()) throw Error("dense() called on a sparse handle");
    return std::get<Matrix>(m_);
}

const SpMatrix& MatrixHandle::sparse() const {
    if (!is_sparse()) throw Error("sparse() called on a dense handle");
    return std::get<SpMatrix>(m_);
}

Matrix MatrixHandle::to_dense() const {
    if (is_sparse()) return Matrix(std::get<SpMatrix>(m_));
    return std::get<Matrix>(m_);
}

SpMatrix MatrixHandle::to_sparse() const {
    if (is_sparse()) return std::get<SpMatrix>(m_);
    return std::get<Matrix>(m_).sparseView();
}

MatrixHandle MatrixHandle::block(Index row0, Index col0, Index nrows, Index ncols) const {
    if (row0 < 0 || col0 < 0 || row0 + nrows > rows() || col0 + ncols > cols())
        throw DimensionMismatch("block extraction out of range");
    if (is_sparse()) return MatrixHandle(SpMatrix(std::get<SpMatrix>(m_).block(row0, col0, nrows, ncols)));
    return MatrixHandle(Matrix(std::get<Matrix>(m_).block(row0, col0, nrows, ncols)));
}

Matrix MatrixHandle::apply(const Matrix& x) const {
    return std::visit([&](const auto& m) -> Matrix { return m * x; }, m_);
}

Matrix MatrixHandle::apply_transpose(const Matrix& x) const {
    return std::visit([&](const auto& m) -> Matrix { return m.transpose() * x; }, m_);
}

// Real-times-complex products run on the real and imaginary parts separately;
// no sparse cast is ever materialized.
CMatrix MatrixHandle::apply(const CMatrix& x) const {
    Matrix re = apply(Matrix(x.real()));
    Matrix im = apply(Matrix(x.imag()));
    return re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
}

CMatrix MatrixHandle::apply_transpose(const CMatrix& x) const {
    Matrix re = apply_transpose(Matrix(x.real()));
    Matrix im = apply_transpose(Matrix(x.imag()));
    return re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
}

double MatrixHandle::norm1() const {
    if (is_sparse()) {
        const SpMatrix& m = std::get<SpMatrix>(m_);
        double best = 0.0;
        for (Index j = 0; j < m.outerSize(); ++j) {
            double s = 0.0;
            for (SpMatrix::InnerIterator it(m, j); it; ++it) s += std::abs(it.value());
            best = std::max(best, s);
        }
        return best;
    }
    const Matrix& m = std::get<Matrix>(m_);
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

double MatrixHandle::normF() const {
    return std::visit([](const auto& m) { return m.norm(); }, m_);
}

Index MatrixHandle::nonzeros() const {
    if (is_sparse()) return std::get<SpMatrix>(m_).nonZeros();
    return rows() * cols();
}

bool MatrixHandle::is_zero(double tol) const {
    if (is_sparse()) {
        const SpMatrix& m = std::get<SpMatrix>(m_);
        for (Index j = 0; j < m.outerSize(); ++j)
            for (SpMatrix::InnerIterator it(m, j); it; ++it)
                if (std::abs(it.value()) > tol) return false;
        return true;
    }
    const Matrix& m = std::get<Matrix>(m_);
    return m.size() == 0 || m.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace dsr
