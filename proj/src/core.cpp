// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#include "dsr/core.hpp"

#include <algorithm>

#include "dsr/linalg.hpp"

namespace dsr {

std::string to_string(StructureKind k) {
    switch (k) {
        case StructureKind::General: return "general";
        case StructureKind::Index1Blocks: return "index1";
        case StructureKind::Index2Blocks: return "index2";
    }
    return "general";
}

StructureKind structure_from_string(const std::string& s) {
    if (s == "general") return StructureKind::General;
    if (s == "index1") return StructureKind::Index1Blocks;
    if (s == "index2") return StructureKind::Index2Blocks;
    throw InvalidParams("unknown structure kind: " + s);
}

namespace {

void check_dims(const DescriptorSystem& sys, std::vector<Diagnostic>& out) {
    const Index n = sys.E.rows();
    if (sys.E.cols() != n) out.push_back({"E square", "E is not square"});
    if (sys.A.rows() != n || sys.A.cols() != n)
        out.push_back({"A square of order n", "A must match E's order"});
    if (sys.B.rows() != n) out.push_back({"B has n rows", "B row count mismatch"});
    if (sys.C.cols() != n) out.push_back({"C has n columns", "C column count mismatch"});
    if (sys.D.rows() != sys.C.rows() || sys.D.cols() != sys.B.cols())
        out.push_back({"D is p x m", "D shape must be (C.rows(), B.cols())"});
}

}  // namespace

std::vector<Diagnostic> validate(const DescriptorSystem& sys) {
    std::vector<Diagnostic> out;
    check_dims(sys, out);
    if (!out.empty()) return out;  // block checks assume consistent dims

    const Index n = sys.order();
    if (sys.structure != StructureKind::General) {
        if (sys.n1 < 0 || sys.n2 < 0 || sys.n1 + sys.n2 != n) {
            out.push_back({"block sizes", "n1 + n2 must equal the system order"});
            return out;
        }
    }

    const double scale = std::max(1.0, std::max(sys.E.norm1(), sys.A.norm1()));
    const double ztol = 1e-14 * scale;

    if (sys.structure == StructureKind::Index1Blocks) {
        if (!sys.E.block(sys.n1, 0, sys.n2, n).is_zero(ztol))
            out.push_back({"E lower block rows zero", "index-1 form requires E21 = 0 and E22 = 0"});
        if (!pivot_nonsingular(sys.A22()))
            out.push_back({"A22 singular", "index-1 regularity requires nonsingular A22"});
        else {
            // Schur complement E11 - E12 A22^-1 A21, checked by factorization success.
            Matrix A22 = sys.A22().to_dense();
            Matrix X = Eigen::PartialPivLU<Matrix>(A22).solve(sys.A21().to_dense());
            Matrix schur = sys.E11().to_dense() - sys.E12().to_dense() * X;
            if (!pivot_nonsingular(schur))
                out.push_back({"E11 - E12 A22^-1 A21 singular", "index-1 Schur complement is singular"});
        }
    } else if (sys.structure == StructureKind::Index2Blocks) {
        if (!sys.E.block(0, sys.n1, sys.n1, sys.n2).is_zero(ztol) ||
            !sys.E.block(sys.n1, 0, sys.n2, n).is_zero(ztol))
            out.push_back({"E off-diagonal blocks zero", "index-2 form requires E12, E21, E22 = 0"});
        if (!sys.A22().is_zero(ztol))
            out.push_back({"A22 block zero", "index-2 form requires a zero A22 block"});
        if (!pivot_nonsingular(sys.E11()))
            out.push_back({"E11 singular", "index-2 form requires nonsingular E11"});
        else {
            Matrix E11 = sys.E11().to_dense();
            Matrix X = Eigen::PartialPivLU<Matrix>(E11).solve(sys.A12().to_dense());
            Matrix gram = sys.A21().to_dense() * X;
            if (gram.rows() > 0 && !pivot_nonsingular(gram))
                out.push_back({"index-2 regularity violated", "A21 E11^-1 A12 is singular"});
        }
    }
    return out;
}

CMatrix MatrixPolynomial::eval(Complex s, Index p_hint, Index m_hint) const {
    if (coeffs.empty()) return CMatrix::Zero(p_hint, m_hint);
    CMatrix acc = CMatrix::Zero(coeffs[0].rows(), coeffs[0].cols());
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
        acc = acc * s + coeffs[static_cast<std::size_t>(k)].cast<Complex>();
    return acc;
}

CMatrix MatrixPolynomial::derivative(Complex s, int ell, Index p_hint, Index m_hint) const {
    if (coeffs.empty()) return CMatrix::Zero(p_hint, m_hint);
    CMatrix acc = CMatrix::Zero(coeffs[0].rows(), coeffs[0].cols());
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= ell; --k) {
        double fac = 1.0;
        for (int j = 0; j < ell; ++j) fac *= static_cast<double>(k - j);
        acc = acc * s + fac * coeffs[static_cast<std::size_t>(k)].cast<Complex>();
    }
    return acc;
}

void MatrixPolynomial::canonicalize(double tol) {
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, c.norm());
    if (scale == 0.0) {
        coeffs.clear();
        return;
    }
    while (!coeffs.empty() && coeffs.back().norm() <= tol * scale) coeffs.pop_back();
}

void InterpolationData::push(Complex sigma, CVector b, CVector c) {
    points.push_back(sigma);
    right_dirs.push_back(std::move(b));
    left_dirs.push_back(std::move(c));
}

namespace {

bool entries_conjugate(const InterpolationData& d, std::size_t i, std::size_t j, double tol) {
    if (std::abs(d.points[i] - std::conj(d.points[j])) > tol) return false;
    if ((d.right_dirs[i] - d.right_dirs[j].conjugate()).norm() > tol) return false;
    if ((d.left_dirs[i] - d.left_dirs[j].conjugate()).norm() > tol) return false;
    return true;
}

}  // namespace

bool InterpolationData::conjugate_closed(double tol) const {
    for (std::size_t i = 0; i < size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < size() && !found; ++j) found = entries_conjugate(*this, i, j, tol);
        if (!found) return false;
    }
    return true;
}

InterpolationData conjugate_close(const InterpolationData& data) {
    if (data.right_dirs.size() != data.size() || data.left_dirs.size() != data.size())
        throw DimensionMismatch("interpolation data lists must have equal lengths");
    InterpolationData out = data;
    const std::size_t original = data.size();
    for (std::size_t i = 0; i < original; ++i) {
        bool found = false;
        for (std::size_t j = 0; j < out.size() && !found; ++j) found = entries_conjugate(out, i, j, 0.0);
        if (!found)
            out.push(std::conj(data.points[i]), data.right_dirs[i].conjugate(), data.left_dirs[i].conjugate());
    }
    return out;
}

}  // namespace dsr
