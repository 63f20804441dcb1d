// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#include "dsr/spectral.hpp"

#include <lapacke.h>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "dsr/linalg.hpp"

namespace dsr {

namespace {

void probe_regularity(const Matrix& E, const Matrix& A) {
    // Fixed pseudo-random probe shifts, scaled to the pencil.
    const double scale = (1.0 + A.cwiseAbs().colwise().sum().maxCoeff()) /
                         (1.0 + E.cwiseAbs().colwise().sum().maxCoeff());
    const Complex probes[3] = {Complex(0.5372815, 0.8132907), Complex(-1.7230134, 0.2855618),
                               Complex(0.9330127, -1.3660254)};
    for (const Complex& c : probes) {
        CMatrix M = (c * scale) * E.cast<Complex>() - A.cast<Complex>();
        if (pivot_nonsingular(M)) return;
    }
    throw SingularPencil("pencil failed the regularity probe at 3 shifts");
}

// Finite/infinite classification on the QZ ratios |beta| / (|alpha| + |beta|).
// Infinite eigenvalues of index nu perturb like eps^(1/nu), so a fixed cutoff
// misses the Jordan-coupled ones; the split is taken at the geometric middle
// of the gap between the junk cluster and the finite-looking cluster, with a
// 1e-12 floor and a 1e-5 cap.
double infinite_cutoff(const std::vector<double>& ratios) {
    constexpr double kFloor = 1e-12;
    constexpr double kCap = 1e-5;
    double max_small = 0.0, min_big = std::numeric_limits<double>::infinity();
    for (double r : ratios) {
        if (r < kCap)
            max_small = std::max(max_small, r);
        else
            min_big = std::min(min_big, r);
    }
    if (max_small == 0.0) return kFloor;                       // nothing below the cap
    if (!std::isfinite(min_big)) return kCap;                  // everything looks infinite
    return std::clamp(std::sqrt(max_small * min_big), kFloor, kCap);
}

// Orthogonal change of basis adapted to the kernel flag of the strictly upper
// triangular N, with the blocks the flag proves zero cleared. The result is
// exactly nilpotent with index nu = number of flag layers, which keeps the
// evaluated polynomial part from picking up eps * omega^k noise terms.
struct NilpotentCanon {
    Matrix N, Q;
    int nu = 0;
};

NilpotentCanon canonicalize_nilpotent(const Matrix& N_in) {
    const Index q = N_in.rows();
    NilpotentCanon out;
    out.Q = Matrix::Identity(q, q);
    out.N = N_in;
    if (q == 0) {
        out.nu = 0;
        return out;
    }
    Eigen::BDCSVD<Matrix> svd0(N_in);
    const double smax = svd0.singularValues().size() ? svd0.singularValues()(0) : 0.0;
    if (smax <= 0.0) {
        out.N.setZero();
        out.nu = 1;
        return out;
    }

    // Flag layers: an orthonormal basis of ker(N^k) grown layer by layer.
    Matrix Q(q, 0);
    std::vector<Index> layer_sizes;
    Matrix P = Matrix::Identity(q, q);
    int nu = 0;
    while (Q.cols() < q) {
        ++nu;
        if (nu > q) throw Error("nilpotent flag construction failed");
        P = P * N_in;  // N^nu
        Eigen::BDCSVD<Matrix> svd(P, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        Index rank = 0;
        const double tol = 1e-8 * std::pow(smax, nu);
        while (rank < sv.size() && sv(rank) > tol) ++rank;
        Matrix kern = svd.matrixV().rightCols(q - rank);
        // Strip the part already in the flag, orthonormalize the rest.
        Matrix fresh = kern - Q * (Q.transpose() * kern);
        Eigen::BDCSVD<Matrix> fsvd(fresh, Eigen::ComputeThinU);
        Index fr = 0;
        while (fr < fsvd.singularValues().size() && fsvd.singularValues()(fr) > 1e-8) ++fr;
        if (fr == 0) throw Error("nilpotent flag construction stalled");
        Matrix add = fsvd.matrixU().leftCols(fr);
        Matrix grown(q, Q.cols() + fr);
        grown << Q, add;
        Q = grown;
        layer_sizes.push_back(fr);
    }

    Matrix Nc = Q.transpose() * N_in * Q;
    // N maps layer k into layers < k; everything at or below the block
    // diagonal is provably zero.
    std::vector<Index> offsets(layer_sizes.size() + 1, 0);
    for (std::size_t k = 0; k < layer_sizes.size(); ++k) offsets[k + 1] = offsets[k] + layer_sizes[k];
    double cleared = 0.0;
    for (std::size_t bi = 0; bi < layer_sizes.size(); ++bi)
        for (std::size_t bj = 0; bj <= bi; ++bj) {
            cleared = std::max(
                cleared, Nc.block(offsets[bi], offsets[bj], layer_sizes[bi], layer_sizes[bj]).cwiseAbs().maxCoeff());
            Nc.block(offsets[bi], offsets[bj], layer_sizes[bi], layer_sizes[bj]).setZero();
        }
    if (cleared > 1e-6 * smax) throw Error("nilpotent structure cleanup exceeded its tolerance budget");

    out.N = Nc;
    out.Q = Q;
    out.nu = nu;
    return out;
}

}  // namespace

Index dense_limit() {
    static const Index limit = [] {
        if (const char* env = std::getenv("DSR_DENSE_LIMIT")) {
            long v = std::atol(env);
            if (v > 0) return static_cast<Index>(v);
        }
        return static_cast<Index>(2000);
    }();
    return limit;
}

WeierstrassData weierstrass(const DescriptorSystem& system) {
    const Index n = system.order();
    if (n > dense_limit())
        throw DenseLimitExceeded("order " + std::to_string(n) + " exceeds the dense limit " +
                                 std::to_string(dense_limit()));
    Matrix E = system.E.to_dense();
    Matrix A = system.A.to_dense();
    if (E.rows() != E.cols() || A.rows() != n || A.cols() != n)
        throw DimensionMismatch("weierstrass needs square E, A of equal order");
    probe_regularity(E, A);

    WeierstrassData w;
    if (n == 0) return w;

    // Unsorted QZ first: A = Q S Z^T, E = Q T Z^T.
    Matrix S = A, T = E;
    Matrix Q(n, n), Z(n, n);
    Vector ar(n), ai(n), be(n);
    lapack_int sdim = 0;
    lapack_int info = LAPACKE_dgges(LAPACK_COL_MAJOR, 'V', 'V', 'N', nullptr, static_cast<lapack_int>(n),
                                    S.data(), static_cast<lapack_int>(n), T.data(), static_cast<lapack_int>(n),
                                    &sdim, ar.data(), ai.data(), be.data(), Q.data(), static_cast<lapack_int>(n),
                                    Z.data(), static_cast<lapack_int>(n));
    if (info != 0) throw Error("QZ factorization failed (dgges info=" + std::to_string(info) + ")");

    std::vector<double> ratios(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        const double a = std::hypot(ar(i), ai(i));
        const double b = std::abs(be(i));
        ratios[static_cast<std::size_t>(i)] = (a + b) > 0.0 ? b / (a + b) : 0.0;
    }
    const double cutoff = infinite_cutoff(ratios);
    std::vector<lapack_logical> select(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
        select[static_cast<std::size_t>(i)] = ratios[static_cast<std::size_t>(i)] > cutoff ? 1 : 0;

    lapack_int m_sel = 0;
    double pl = 0.0, pr = 0.0;
    double dif[2] = {0.0, 0.0};
    // Explicit workspace: the high-level wrapper's ijob=0 query path is
    // unreliable in some LAPACK builds.
    std::vector<double> work(static_cast<std::size_t>(4 * n + 16));
    std::vector<lapack_int> iwork(static_cast<std::size_t>(std::max<Index>(n, 1)));
    info = LAPACKE_dtgsen_work(LAPACK_COL_MAJOR, 0, 1, 1, select.data(), static_cast<lapack_int>(n), S.data(),
                               static_cast<lapack_int>(n), T.data(), static_cast<lapack_int>(n), ar.data(),
                               ai.data(), be.data(), Q.data(), static_cast<lapack_int>(n), Z.data(),
                               static_cast<lapack_int>(n), &m_sel, &pl, &pr, dif,
                               work.data(), static_cast<lapack_int>(work.size()), iwork.data(),
                               static_cast<lapack_int>(iwork.size()));
    if (info != 0)
        throw Error("finite/infinite reordering failed (dtgsen info=" + std::to_string(info) + ")");

    const Index nf = static_cast<Index>(m_sel);
    const Index ninf = n - nf;
    w.n_f = nf;
    w.n_inf = ninf;

    // Decouple the off-diagonal blocks with the generalized Sylvester solution:
    //   S11 R - L S22 = -S12,  T11 R - L T22 = -T12.
    Matrix Sw = Q, Tw = Z;
    if (nf > 0 && ninf > 0) {
        Matrix S11 = S.topLeftCorner(nf, nf), S22 = S.bottomRightCorner(ninf, ninf);
        Matrix T11 = T.topLeftCorner(nf, nf), T22 = T.bottomRightCorner(ninf, ninf);
        Matrix R = -S.topRightCorner(nf, ninf);
        Matrix L = -T.topRightCorner(nf, ninf);
        double scale = 1.0, dif2 = 0.0;
        info = LAPACKE_dtgsyl(LAPACK_COL_MAJOR, 'N', 0, static_cast<lapack_int>(nf),
                              static_cast<lapack_int>(ninf), S11.data(), static_cast<lapack_int>(nf), S22.data(),
                              static_cast<lapack_int>(ninf), R.data(), static_cast<lapack_int>(nf), T11.data(),
                              static_cast<lapack_int>(nf), T22.data(), static_cast<lapack_int>(ninf), L.data(),
                              static_cast<lapack_int>(nf), &scale, &dif2);
        if (info != 0 || scale == 0.0)
            throw Error("generalized Sylvester solve failed (dtgsyl info=" + std::to_string(info) + ")");
        R /= scale;
        L /= scale;
        // A = (Q [I L; 0 I]) diag(S11,S22) ([I R; 0 I]^-1 Z^T); same for E.
        Sw.rightCols(ninf) += Sw.leftCols(nf) * L;
        Tw.rightCols(ninf) += Tw.leftCols(nf) * R;
    }

    Matrix S11 = S.topLeftCorner(nf, nf), S22 = S.bottomRightCorner(ninf, ninf);
    Matrix T11 = T.topLeftCorner(nf, nf), T22 = T.bottomRightCorner(ninf, ninf);

    // Absorb the diagonal factors so E's finite block and A's infinite block
    // become identities: S <- [S1 T11, S2 S22], J = T11^-1 S11, N = S22^-1 T22.
    // Jordan-coupled infinite pairs can sit in 2x2 quasi-triangular blocks
    // whose T entries are far from zero, so nothing here assumes a tiny
    // trailing diagonal; nilpotency is established on N itself.
    Matrix Sfull = Sw;
    Sfull.leftCols(nf) = Sw.leftCols(nf) * T11;
    Sfull.rightCols(ninf) = Sw.rightCols(ninf) * S22;

    w.J = nf > 0 ? Matrix(Eigen::PartialPivLU<Matrix>(T11).solve(S11)) : Matrix(0, 0);
    if (ninf > 0) {
        Eigen::PartialPivLU<Matrix> s22lu(S22);
        Matrix N = s22lu.solve(T22);
        // Entries at pure-roundoff level are cleared before the structural
        // analysis; the floor scales with the solve's own noise level.
        const double floor = 100.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                             s22lu.inverse().norm() * T.norm();
        N = (N.cwiseAbs().array() > floor).select(N, 0.0);
        NilpotentCanon canon = canonicalize_nilpotent(N);
        w.N = canon.N;
        w.nu = canon.nu;
        Sfull.rightCols(ninf) = Sfull.rightCols(ninf) * canon.Q;
        Tw.rightCols(ninf) = Tw.rightCols(ninf) * canon.Q;
    } else {
        w.N = Matrix(0, 0);
        w.nu = 0;
    }

    w.S = Sfull;
    w.T = Tw;
    w.Sinv = Eigen::PartialPivLU<Matrix>(Sfull).inverse();
    w.Tinv = Eigen::PartialPivLU<Matrix>(Tw).inverse();
    w.P_l = Sfull.leftCols(nf) * w.Sinv.topRows(nf);
    w.P_r = Tw.leftCols(nf) * w.Tinv.topRows(nf);
    return w;
}

std::pair<Matrix, Matrix> infinite_deflating_bases(const WeierstrassData& w) {
    const Index n = w.S.rows();
    if (w.n_inf == 0) return {Matrix(n, 0), Matrix(n, 0)};
    Matrix Winf = orthonormalize(Matrix(w.Sinv.bottomRows(w.n_inf).transpose()));
    Matrix Vinf = orthonormalize(Matrix(w.T.rightCols(w.n_inf)));
    return {Winf, Vinf};
}

std::pair<StrictlyProperRealization, MatrixPolynomial> split_transfer(const DescriptorSystem& system,
                                                                      const WeierstrassData& w) {
    const Index nf = w.n_f, ninf = w.n_inf;
    Matrix B = system.B.to_dense();
    Matrix C = system.C.to_dense();
    Matrix D = system.D.to_dense();

    StrictlyProperRealization sp;
    sp.E = Matrix::Identity(nf, nf);
    sp.A = w.J;
    sp.B = w.Sinv.topRows(nf) * B;
    sp.C = C * w.T.leftCols(nf);

    MatrixPolynomial poly;
    if (ninf == 0) {
        poly.coeffs = {D};
    } else {
        Matrix S2tB = w.Sinv.bottomRows(ninf) * B;
        Matrix CT2 = C * w.T.rightCols(ninf);
        poly.coeffs.resize(static_cast<std::size_t>(std::max(w.nu, 1)));
        Matrix Nk = Matrix::Identity(ninf, ninf);
        for (int k = 0; k < std::max(w.nu, 1); ++k) {
            poly.coeffs[static_cast<std::size_t>(k)] = -CT2 * Nk * S2tB;
            if (k == 0) poly.coeffs[0] += D;
            Nk = Nk * w.N;
        }
    }
    poly.canonicalize();
    return {sp, poly};
}

int pencil_index(const WeierstrassData& w) { return w.nu; }

}  // namespace dsr
