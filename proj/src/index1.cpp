// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#include "dsr/index1.hpp"

#include <cmath>

#include "dsr/detail.hpp"
#include "dsr/interpolation.hpp"
#include "dsr/linalg.hpp"

namespace dsr {

namespace {

void require_index1(const DescriptorSystem& sys) {
    if (sys.structure != StructureKind::Index1Blocks)
        throw InvalidParams("operation requires an Index1Blocks system");
}

struct Index1Solvers {
    ComplexLU a22;
    ComplexLU bordered;  // [E11 E12; A21 A22]: top block of the solution is a Schur-complement solve
    Index n1, n2;
};

Index1Solvers make_solvers(const DescriptorSystem& sys) {
    require_index1(sys);
    Index1Solvers s{ComplexLU(CMatrix(0, 0)), ComplexLU(CMatrix(0, 0)), sys.n1, sys.n2};
    s.a22 = factor_block_matrix(sys.n2, {{sys.A22(), 0, 0, 1.0}});
    if (!s.a22.ok()) throw SingularA22("A22 failed the factorization check");
    s.bordered = factor_block_matrix(sys.n1 + sys.n2, {{sys.E11(), 0, 0, 1.0},
                                                       {sys.E12(), 0, sys.n1, 1.0},
                                                       {sys.A21(), sys.n1, 0, 1.0},
                                                       {sys.A22(), sys.n1, sys.n1, 1.0}});
    if (!s.bordered.ok())
        throw SingularSchurComplement("E11 - E12 A22^-1 A21 failed the factorization check");
    return s;
}

// (E11 - E12 A22^-1 A21)^-1 F via the bordered system with zero lower block.
Matrix schur_solve(const Index1Solvers& s, const Matrix& F) {
    CMatrix rhs = CMatrix::Zero(s.n1 + s.n2, F.cols());
    rhs.topRows(s.n1) = F.cast<Complex>();
    return s.bordered.solve(rhs).topRows(s.n1).real();
}

Matrix a22_solve(const Index1Solvers& s, const Matrix& F) { return s.a22.solve(F.cast<Complex>()).real(); }

struct ShiftedQuadruple {
    Matrix E, A, B, C, D;
    InterpolationData sorted;
};

// Lemma-5.2-style assembly. The correction uses Delta = Dtilde - D: with the
// paper's plain Dtilde the tangential conditions fail whenever D != 0.
ShiftedQuadruple assemble_index1(const DescriptorSystem& sys, const InterpolationData& data,
                                 const Matrix& Dtilde, unsigned threads) {
    ShiftedQuadruple q;
    q.sorted = detail::sort_conjugate_pairs(data);
    const auto r = static_cast<Index>(q.sorted.size());

    auto [Vc, Wc] = detail::tangential_basis_columns(sys, q.sorted, nullptr, nullptr, threads);
    CMatrix K = detail::pair_realification_transform(q.sorted);

    CMatrix Bdir(sys.inputs(), r), Cdir(sys.outputs(), r);
    for (Index i = 0; i < r; ++i) {
        Bdir.col(i) = q.sorted.right_dirs[static_cast<std::size_t>(i)];
        Cdir.col(i) = q.sorted.left_dirs[static_cast<std::size_t>(i)];
    }
    CMatrix Vk = Vc * K, Wk = Wc * K, Bk = Bdir * K, Ck = Cdir * K;
    const double imag_norm = Vk.imag().norm() + Wk.imag().norm() + Bk.imag().norm() + Ck.imag().norm();
    const double real_norm = Vk.real().norm() + Wk.real().norm() + Bk.real().norm() + Ck.real().norm();
    if (imag_norm > 1e-8 * std::max(real_norm, 1.0))
        throw Error("pair realification left a nonreal residue (interpolation data not properly paired)");
    Matrix V = Vk.real(), W = Wk.real(), Br = Bk.real(), Cr = Ck.real();

    // Re-orthonormalize each side and absorb the triangular factors into the
    // direction matrices: V -> V R^-1 with B-dirs -> B-dirs R^-1 is a state
    // space equivalence, so the interpolation conditions survive while the
    // assembled pencil stays well conditioned even for clustered shifts.
    {
        Eigen::HouseholderQR<Matrix> qrv(V), qrw(W);
        Matrix Rv = qrv.matrixQR().topRows(r).triangularView<Eigen::Upper>();
        Matrix Rw = qrw.matrixQR().topRows(r).triangularView<Eigen::Upper>();
        if (pivot_nonsingular(Rv) && pivot_nonsingular(Rw)) {
            V = qrv.householderQ() * Matrix::Identity(V.rows(), r);
            W = qrw.householderQ() * Matrix::Identity(W.rows(), r);
            Br = Rv.transpose().triangularView<Eigen::Lower>().solve(Br.transpose()).transpose();
            Cr = Rw.transpose().triangularView<Eigen::Lower>().solve(Cr.transpose()).transpose();
        }
    }

    const Matrix D = sys.D.to_dense();
    const Matrix Delta = Dtilde - D;
    q.E = W.transpose() * sys.E.apply(V);
    q.A = W.transpose() * sys.A.apply(V) + Cr.transpose() * Delta * Br;
    q.B = W.transpose() * sys.B.to_dense() - Cr.transpose() * Delta;
    q.C = sys.C.apply(V) - Delta * Br;
    q.D = Dtilde;
    return q;
}

ReducedModel quadruple_to_model(const ShiftedQuadruple& q) {
    if (!pivot_nonsingular(q.E))
        throw SingularReducedE("reduced E is singular; lower the target order (needs r < rank E)");
    for (const Complex& s : q.sorted.points) {
        CMatrix P = s * q.E.cast<Complex>() - q.A.cast<Complex>();
        if (!pivot_nonsingular(P))
            throw SingularReducedPencil("sigma Etilde - Atilde singular at an interpolation point");
    }
    ReducedModel m;
    m.E = q.E;
    m.A = q.A;
    m.B = q.B;
    m.C = q.C;
    m.D = q.D;
    m.polynomial_part = MatrixPolynomial::constant(q.D);
    m.polynomial_part.canonicalize();
    m.provenance.method = "index1";
    m.provenance.shifts = q.sorted;
    m.provenance.finite_block = m.order();
    return m;
}

}  // namespace

Index1Feedthrough polynomial_part_index1(const DescriptorSystem& sys) {
    Index1Solvers s = make_solvers(sys);
    const Matrix B2 = sys.B2().to_dense();
    const Matrix E12 = sys.E12().to_dense();

    Index1Feedthrough ft;
    // Dtilde through m solves; M1/M2 materialized on top for the desk-scale
    // contract (n2 extra bordered solves).
    Matrix X = a22_solve(s, B2);                    // A22^-1 B2
    Matrix M1B2 = schur_solve(s, Matrix(E12 * X));  // M1 B2
    Matrix M2B2 = -a22_solve(s, sys.A21().apply(M1B2)) - X;
    ft.Dtilde = sys.C1().apply(M1B2) + sys.C2().apply(M2B2) + sys.D.to_dense();

    Matrix A22inv = a22_solve(s, Matrix(Matrix::Identity(sys.n2, sys.n2)));
    ft.M1 = schur_solve(s, Matrix(E12 * A22inv));
    ft.M2 = -a22_solve(s, sys.A21().apply(ft.M1)) - A22inv;
    return ft;
}

ReducedModel reduce_index1(const DescriptorSystem& sys, const InterpolationData& data) {
    InterpolationData closed = conjugate_close(data);
    Index1Feedthrough ft = polynomial_part_index1(sys);
    return quadruple_to_model(assemble_index1(sys, closed, ft.Dtilde, 1));
}

IrkaResult irka_index1(const DescriptorSystem& sys, const IrkaConfig& config) {
    require_index1(sys);
    Index1Feedthrough ft = polynomial_part_index1(sys);

    InterpolationData data0 =
        config.initial ? conjugate_close(*config.initial) : seed_interpolation_data(sys, config.r);
    if (static_cast<int>(data0.size()) != config.r)
        throw InvalidParams("initial interpolation data must provide exactly r shifts after conjugate closure");

    auto assemble = [&](const InterpolationData& d) -> detail::IrkaQuadruple {
        ShiftedQuadruple q = assemble_index1(sys, d, ft.Dtilde, config.threads);
        if (!pivot_nonsingular(q.E))
            throw SingularReducedE("reduced E is singular; lower the target order (needs r < rank E)");
        return {q.E, q.A, q.B, q.C};
    };
    auto finalize = [&](const InterpolationData& d) -> ReducedModel {
        ReducedModel m = quadruple_to_model(assemble_index1(sys, d, ft.Dtilde, config.threads));
        m.provenance.method = "irka-index1";
        return m;
    };
    return detail::run_irka_loop(assemble, finalize, data0, config);
}

}  // namespace dsr
