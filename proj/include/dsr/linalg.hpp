// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/LU>
#include <Eigen/SparseLU>
#include <memory>
#include <vector>

#include "dsr/core.hpp"

namespace dsr {

/// Pivot-based nonsingularity test: LU with partial pivoting succeeds and the
/// smallest pivot magnitude exceeds n * eps * ||M||_1.
bool pivot_nonsingular(const Matrix& M);
bool pivot_nonsingular(const CMatrix& M);
bool pivot_nonsingular(const MatrixHandle& M);

/// LU factorization of a complex square matrix, dense or sparse. Immutable
/// once built; independent solves may run concurrently.
class ComplexLU {
public:
    explicit ComplexLU(const CMatrix& M);
    explicit ComplexLU(const Eigen::SparseMatrix<Complex>& M);

    bool ok() const { return ok_; }
    Index size() const { return n_; }
    CMatrix solve(const CMatrix& rhs) const;
    CMatrix solve_transpose(const CMatrix& rhs) const;  // M^T x = rhs (no conjugation)

private:
    struct DenseFac;
    struct SparseFac;
    std::shared_ptr<DenseFac> dense_;
    std::shared_ptr<SparseFac> sparse_;
    bool ok_ = false;
    Index n_ = 0;
};

/// One scaled block of a square block matrix: coeff * M placed at (row0, col0).
struct BlockTerm {
    MatrixHandle M;
    Index row0 = 0, col0 = 0;
    Complex coeff = 1.0;
};

/// Assembles sum of placed blocks into a size x size matrix (sparse when every
/// block is sparse) and factorizes it. Shared by the bordered index-1 solves
/// and the index-2 saddle systems.
ComplexLU factor_block_matrix(Index size, const std::vector<BlockTerm>& terms);

/// Factorization of sigma*E - A. One factorization serves both the direct and
/// the transposed solves.
class ShiftedFactorization {
public:
    ShiftedFactorization(const MatrixHandle& E, const MatrixHandle& A, Complex sigma);
    ShiftedFactorization(const DescriptorSystem& system, Complex sigma)
        : ShiftedFactorization(system.E, system.A, sigma) {}

    Complex shift() const { return sigma_; }
    CMatrix solve(const CMatrix& R) const { return lu_->solve(R); }
    CMatrix solve_transpose(const CMatrix& R) const { return lu_->solve_transpose(R); }

private:
    Complex sigma_;
    std::shared_ptr<ComplexLU> lu_;
};

/// X = (sigma E - A)^{-1} R. Throws SingularShift when sigma is numerically a
/// generalized eigenvalue of (E, A).
CMatrix solve_shifted(const DescriptorSystem& system, Complex sigma, const CMatrix& R);

/// X = (sigma E - A)^{-T} R (plain transpose, no conjugation).
CMatrix solve_shifted_adjoint(const DescriptorSystem& system, Complex sigma, const CMatrix& R);

struct EigenTriple {
    Complex lambda;
    CVector y;  // left eigenvector,  y^* A = lambda y^* E
    CVector z;  // right eigenvector, A z = lambda E z, normalized y^* E z = 1
};

/// Full eigensolve of the small dense pencil (Etilde, Atilde) with
/// bi-normalized left/right eigenvectors, sorted by (Re, Im). Conjugate pairs
/// are exact by construction. Throws SingularReducedE / DefectivePencil.
std::vector<EigenTriple> eig_pencil(const Matrix& Etilde, const Matrix& Atilde);

/// Real orthonormal basis of the real span of [Re V, Im V], rank-revealed:
/// directions with relative singular value below drop_tol are discarded.
/// Throws EmptyBasis when nothing survives.
Matrix orthonormalize(const CMatrix& V, double drop_tol = 1e-12);
Matrix orthonormalize(const Matrix& V, double drop_tol = 1e-12);

/// Solves A X + X A^H = -Q (Q symmetric psd) by complex Schur reduction.
/// Used by the dense H2 machinery; order capped by the dense limit.
Matrix lyapunov_continuous(const Matrix& A, const Matrix& Q);

/// trace(C P C^T) with A0 P + P A0^T + B0 B0^T = 0, carried out in extended
/// precision: near-zero H2 errors cancel O(1) Gramian terms, and a double
/// Lyapunov solve leaves sqrt(eps)-level noise after the square root.
double lyapunov_output_trace(const Matrix& A0, const Matrix& B0, const Matrix& C);

/// Min-cost perfect matching (Hungarian, O(n^3)). cost is square;
/// returns column assigned to each row.
std::vector<int> hungarian(const Matrix& cost);

/// Relative shift-set distance under optimal matching of the two multisets:
/// max_i |nw_match(i) - old_i| / |old_i|.
double shift_set_distance(const std::vector<Complex>& old_set, const std::vector<Complex>& new_set);

}  // namespace dsr
