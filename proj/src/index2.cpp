// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#include "dsr/index2.hpp"

#include <cmath>

#include "dsr/detail.hpp"
#include "dsr/interpolation.hpp"
#include "dsr/linalg.hpp"

namespace dsr {

namespace {

void require_index2(const DescriptorSystem& sys) {
    if (sys.structure != StructureKind::Index2Blocks)
        throw InvalidParams("operation requires an Index2Blocks system");
}

struct HiddenOps {
    ComplexLU e11;
    Eigen::PartialPivLU<Matrix> gram;  // G = A21 E11^-1 A12, dense n2 x n2
    Matrix X;   // E11^-1 A12
    Matrix Zt;  // A21 E11^-1
};

HiddenOps make_hidden_ops(const DescriptorSystem& sys) {
    require_index2(sys);
    HiddenOps ops{factor_block_matrix(sys.n1, {{sys.E11(), 0, 0, 1.0}}), {}, {}, {}};
    if (!ops.e11.ok()) throw SingularE11("E11 failed the factorization check");
    ops.X = ops.e11.solve(sys.A12().to_dense().cast<Complex>()).real();
    ops.Zt = ops.e11.solve_transpose(sys.A21().to_dense().transpose().cast<Complex>()).real().transpose();
    Matrix G = sys.A21().apply(ops.X);
    if (sys.n2 > 0 && !pivot_nonsingular(G))
        throw SingularProjectedGram("A21 E11^-1 A12 failed the pivot criterion");
    ops.gram.compute(G);
    return ops;
}

class SaddleFactorization {
public:
    SaddleFactorization(const DescriptorSystem& sys, Complex sigma)
        : n1_(sys.n1),
          lu_(factor_block_matrix(sys.n1 + sys.n2, {{sys.E11(), 0, 0, sigma},
                                                    {sys.A11(), 0, 0, -1.0},
                                                    {sys.A12(), 0, sys.n1, 1.0},
                                                    {sys.A21(), sys.n1, 0, 1.0}})) {
        if (!lu_.ok()) throw SingularSaddle(sigma);
    }

    CMatrix solve_right(const CMatrix& top) const {
        CMatrix rhs = CMatrix::Zero(lu_.size(), top.cols());
        rhs.topRows(n1_) = top;
        return lu_.solve(rhs).topRows(n1_);
    }
    CMatrix solve_left(const CMatrix& top) const {
        CMatrix rhs = CMatrix::Zero(lu_.size(), top.cols());
        rhs.topRows(n1_) = top;
        return lu_.solve_transpose(rhs).topRows(n1_);
    }

private:
    Index n1_;
    ComplexLU lu_;
};

// Saddle-based bases, one column per entry; conjugate entries reuse the
// representative's factorization.
std::pair<CMatrix, CMatrix> saddle_basis_columns(const DescriptorSystem& sys, const InterpolationData& data,
                                                 const Matrix& B_eff, const Matrix& C_eff, unsigned threads) {
    const auto r = static_cast<Index>(data.size());
    CMatrix V(sys.n1, r), W(sys.n1, r);
    std::vector<Index> rep(static_cast<std::size_t>(r), -1);
    for (Index i = 0; i < r; ++i) {
        if (rep[static_cast<std::size_t>(i)] >= 0) continue;
        rep[static_cast<std::size_t>(i)] = i;
        if (data.points[static_cast<std::size_t>(i)].imag() == 0.0) continue;
        for (Index j = i + 1; j < r; ++j) {
            if (rep[static_cast<std::size_t>(j)] >= 0) continue;
            if (data.points[static_cast<std::size_t>(j)] == std::conj(data.points[static_cast<std::size_t>(i)]) &&
                data.right_dirs[static_cast<std::size_t>(j)].isApprox(
                    data.right_dirs[static_cast<std::size_t>(i)].conjugate()) &&
                data.left_dirs[static_cast<std::size_t>(j)].isApprox(
                    data.left_dirs[static_cast<std::size_t>(i)].conjugate())) {
                rep[static_cast<std::size_t>(j)] = i;
                break;
            }
        }
    }
    std::vector<Index> heads;
    for (Index i = 0; i < r; ++i)
        if (rep[static_cast<std::size_t>(i)] == i) heads.push_back(i);

    detail::for_each_index(static_cast<Index>(heads.size()), threads, [&](Index hi) {
        const Index i = heads[static_cast<std::size_t>(hi)];
        SaddleFactorization fac(sys, data.points[static_cast<std::size_t>(i)]);
        V.col(i) = fac.solve_right(B_eff.cast<Complex>() * data.right_dirs[static_cast<std::size_t>(i)]);
        W.col(i) = fac.solve_left(C_eff.transpose().cast<Complex>() * data.left_dirs[static_cast<std::size_t>(i)]);
    });
    for (Index i = 0; i < r; ++i) {
        if (rep[static_cast<std::size_t>(i)] != i) {
            V.col(i) = V.col(rep[static_cast<std::size_t>(i)]).conjugate();
            W.col(i) = W.col(rep[static_cast<std::size_t>(i)]).conjugate();
        }
    }
    return {V, W};
}

struct Index2Assembly {
    Matrix E, A, B, C;
    Index k = 0;
};

Index2Assembly assemble_index2(const DescriptorSystem& sys, const InterpolationData& data,
                               const Index2Hidden& hid, unsigned threads) {
    auto [Vc, Wc] = saddle_basis_columns(sys, data, hid.Bmat, hid.Cmat, threads);
    ProjectionPair pair = detail::realify_and_pair(Vc, Wc, {});
    Index2Assembly out;
    out.k = pair.V.cols();
    out.E = pair.W.transpose() * sys.E11().apply(pair.V);
    out.A = pair.W.transpose() * sys.A11().apply(pair.V);
    out.B = pair.W.transpose() * hid.Bmat;
    out.C = hid.Cmat * pair.V;
    return out;
}

ReducedModel assembly_to_model(const Index2Assembly& a, const Index2Hidden& hid, const InterpolationData& data,
                               Index p, Index m) {
    for (const Complex& s : data.points) {
        CMatrix P = s * a.E.cast<Complex>() - a.A.cast<Complex>();
        if (!pivot_nonsingular(P))
            throw SingularReducedPencil("sigma Etilde - Atilde singular at an interpolation point");
    }
    ReducedModel mdl;
    mdl.E = a.E;
    mdl.A = a.A;
    mdl.B = a.B;
    mdl.C = a.C;
    mdl.D = hid.const_feedthrough;
    mdl.polynomial_part = MatrixPolynomial({hid.const_feedthrough, hid.linear_poly_coeff});
    mdl.polynomial_part.canonicalize();
    if (hid.linear_poly_coeff.norm() > 0.0)
        mdl.extra_polynomial = MatrixPolynomial({Matrix::Zero(p, m), hid.linear_poly_coeff});
    mdl.provenance.method = "index2";
    mdl.provenance.shifts = data;
    mdl.provenance.finite_block = a.k;
    return mdl;
}

}  // namespace

Index2Hidden hidden_feedthrough(const DescriptorSystem& sys) {
    HiddenOps ops = make_hidden_ops(sys);
    const Matrix B1 = sys.B1().to_dense();
    const Matrix B2 = sys.B2().to_dense();
    const Matrix C1 = sys.C1().to_dense();
    const Matrix C2 = sys.C2().to_dense();

    Index2Hidden hid;
    // A21 E11^-1 A11 through n2 transposed solves (Zt A11), then small dense
    // Gram solves.
    Matrix ZtA11 = sys.A11().apply_transpose(Matrix(ops.Zt.transpose())).transpose();
    hid.Cmat = C1 - C2 * ops.gram.solve(ZtA11);
    hid.Dscript = sys.D.to_dense() - C2 * ops.gram.solve(Matrix(ops.Zt * B1));
    Matrix Y = ops.gram.solve(B2);  // G^-1 B2
    Matrix XY = ops.X * Y;
    hid.Bmat = B1 - sys.A11().apply(XY);
    hid.linear_poly_coeff = -C2 * Y;
    hid.const_feedthrough = hid.Dscript - hid.Cmat * XY;
    return hid;
}

std::pair<Matrix, Matrix> projectors_index2(const DescriptorSystem& sys) {
    if (sys.n1 > dense_limit()) throw DenseLimitExceeded("projectors_index2 is a dense desk-scale oracle");
    HiddenOps ops = make_hidden_ops(sys);
    Matrix Pi_l = Matrix::Identity(sys.n1, sys.n1) - ops.X * ops.gram.solve(sys.A21().to_dense());
    Matrix Pi_r = Matrix::Identity(sys.n1, sys.n1) - sys.A12().to_dense() * ops.gram.solve(ops.Zt);
    return {Pi_l, Pi_r};
}

CVector saddle_solve_right(const DescriptorSystem& sys, Complex sigma, const CVector& b,
                           const Matrix& B_effective) {
    require_index2(sys);
    if (b.size() != B_effective.cols()) throw DimensionMismatch("direction length mismatch");
    SaddleFactorization fac(sys, sigma);
    return fac.solve_right(B_effective.cast<Complex>() * b).col(0);
}

CVector saddle_solve_left(const DescriptorSystem& sys, Complex mu, const CVector& c, const Matrix& C_effective) {
    require_index2(sys);
    if (c.size() != C_effective.rows()) throw DimensionMismatch("direction length mismatch");
    SaddleFactorization fac(sys, mu);
    return fac.solve_left(C_effective.transpose().cast<Complex>() * c).col(0);
}

ReducedModel reduce_index2(const DescriptorSystem& sys, const InterpolationData& data) {
    InterpolationData closed = conjugate_close(data);
    Index2Hidden hid = hidden_feedthrough(sys);
    Index2Assembly a = assemble_index2(sys, closed, hid, 1);
    ReducedModel m = assembly_to_model(a, hid, closed, sys.outputs(), sys.inputs());
    return m;
}

IrkaResult irka_index2(const DescriptorSystem& sys, const IrkaConfig& config) {
    require_index2(sys);
    Index2Hidden hid = hidden_feedthrough(sys);

    InterpolationData data0;
    if (config.initial) {
        data0 = conjugate_close(*config.initial);
    } else {
        // Seed from the hidden system: spectrum probe by saddle-based Krylov,
        // D-free samples through the restricted inverse.
        const double scale = (1.0 + sys.A.norm1()) / (1.0 + sys.E.norm1());
        std::vector<Complex> estimate;
        try {
            const int k = std::max(2, std::min(2 * config.r, 12));
            SaddleFactorization fac(sys, Complex(scale, 0.0));
            CMatrix V0(sys.n1, k), W0(sys.n1, k);
            CVector b0 = CVector::Ones(sys.inputs()) / std::sqrt(static_cast<double>(sys.inputs()));
            CVector c0 = CVector::Ones(sys.outputs()) / std::sqrt(static_cast<double>(sys.outputs()));
            V0.col(0) = fac.solve_right(hid.Bmat.cast<Complex>() * b0);
            W0.col(0) = fac.solve_left(hid.Cmat.transpose().cast<Complex>() * c0);
            for (int j = 1; j < k; ++j) {
                V0.col(j) = fac.solve_right(sys.E11().apply(CMatrix(V0.col(j - 1))));
                W0.col(j) = fac.solve_left(sys.E11().apply_transpose(CMatrix(W0.col(j - 1))));
            }
            ProjectionPair pair = detail::realify_and_pair(V0, W0, {});
            Matrix E0 = pair.W.transpose() * sys.E11().apply(pair.V);
            Matrix A0 = pair.W.transpose() * sys.A11().apply(pair.V);
            for (const EigenTriple& t : eig_pencil(E0, A0)) estimate.push_back(t.lambda);
        } catch (const Error&) {
            estimate.clear();
        }
        auto sample = [&](double sigma) -> Matrix {
            SaddleFactorization fac(sys, Complex(sigma, 0.0));
            return hid.Cmat * fac.solve_right(hid.Bmat.cast<Complex>()).real();
        };
        data0 = detail::seed_policy(config.r, std::move(estimate), sample);
    }
    if (static_cast<int>(data0.size()) != config.r)
        throw InvalidParams("initial interpolation data must provide exactly r shifts after conjugate closure");

    auto assemble = [&](const InterpolationData& d) -> detail::IrkaQuadruple {
        Index2Assembly a = assemble_index2(sys, d, hid, config.threads);
        return {a.E, a.A, a.B, a.C};
    };
    auto finalize = [&](const InterpolationData& d) -> ReducedModel {
        Index2Assembly a = assemble_index2(sys, d, hid, config.threads);
        ReducedModel m = assembly_to_model(a, hid, d, sys.outputs(), sys.inputs());
        m.provenance.method = "irka-index2";
        return m;
    };
    return detail::run_irka_loop(assemble, finalize, data0, config);
}

}  // namespace dsr
