// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsr/errors.hpp"
#include "dsr/matrix_handle.hpp"

namespace dsr {

enum class StructureKind {
    General,
    Index1Blocks,  // semi-explicit: E = [E11 E12; 0 0], A22 nonsingular
    Index2Blocks,  // Stokes-type:   E = [E11 0; 0 0], A = [A11 A12; A21 0]
};

std::string to_string(StructureKind k);
StructureKind structure_from_string(const std::string& s);

/// Linear descriptor system E x' = A x + B u, y = C x + D u with possibly
/// singular E. Block structure (n1, n2) is caller-declared metadata; nothing
/// here tries to detect the index.
struct DescriptorSystem {
    MatrixHandle E, A, B, C, D;
    StructureKind structure = StructureKind::General;
    Index n1 = 0, n2 = 0;
    std::string name;

    Index order() const { return E.rows(); }
    Index inputs() const { return B.cols(); }
    Index outputs() const { return C.rows(); }

    // Block accessors for the index-1/index-2 forms.
    MatrixHandle E11() const { return E.block(0, 0, n1, n1); }
    MatrixHandle E12() const { return E.block(0, n1, n1, n2); }
    MatrixHandle A11() const { return A.block(0, 0, n1, n1); }
    MatrixHandle A12() const { return A.block(0, n1, n1, n2); }
    MatrixHandle A21() const { return A.block(n1, 0, n2, n1); }
    MatrixHandle A22() const { return A.block(n1, n1, n2, n2); }
    MatrixHandle B1() const { return B.block(0, 0, n1, B.cols()); }
    MatrixHandle B2() const { return B.block(n1, 0, n2, B.cols()); }
    MatrixHandle C1() const { return C.block(0, 0, C.rows(), n1); }
    MatrixHandle C2() const { return C.block(0, n1, C.rows(), n2); }
};

struct Diagnostic {
    std::string invariant;  // short id, e.g. "index-2 regularity violated"
    std::string message;
};

/// Structural validation. Returns an empty list iff all invariants of the
/// declared StructureKind hold. Never throws; diagnostics, not failures.
std::vector<Diagnostic> validate(const DescriptorSystem& system);

/// Matrix polynomial P(s) = sum_k coeffs[k] s^k with real p x m coefficients.
/// Canonical form keeps the trailing coefficient nonzero (or no coefficients
/// at all for the zero polynomial).
struct MatrixPolynomial {
    std::vector<Matrix> coeffs;

    MatrixPolynomial() = default;
    explicit MatrixPolynomial(std::vector<Matrix> c) : coeffs(std::move(c)) {}
    static MatrixPolynomial constant(Matrix c) { return MatrixPolynomial({std::move(c)}); }

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    CMatrix eval(Complex s, Index p_hint = 0, Index m_hint = 0) const;
    CMatrix derivative(Complex s, int ell, Index p_hint = 0, Index m_hint = 0) const;
    /// Drop trailing coefficients with norm below tol * (largest coefficient norm).
    void canonicalize(double tol = 1e-11);
};

/// Tangential interpolation data: points sigma_i with right directions b_i
/// (length m) and left directions c_i (length p). All algorithms assume the
/// set is closed under conjugation so that real reduced models exist.
struct InterpolationData {
    std::vector<Complex> points;
    std::vector<CVector> right_dirs;
    std::vector<CVector> left_dirs;

    std::size_t size() const { return points.size(); }
    void push(Complex sigma, CVector b, CVector c);
    bool conjugate_closed(double tol = 0.0) const;
};

/// Closes the set under conjugation: for every entry (sigma, b, c) with a
/// nonreal component, ensures (conj sigma, conj b, conj c) is present.
/// Deduplicates exact conjugate pairs; preserves input entries.
InterpolationData conjugate_close(const InterpolationData& data);

struct Provenance {
    std::string method;        // "naive", "dae", "index1", "index2", "irka-..."
    InterpolationData shifts;  // shifts/directions the final bases were built from
    Index finite_block = -1;   // leading block realizing the strictly proper part (-1: whole model)
    Index infinite_block = 0;  // trailing block carrying the infinite part (dae path)
    bool converged = true;
    int iterations = 0;
    double final_shift_change = 0.0;
};

/// Projected reduced-order model. The realization (E, A, B, C, D) is always
/// real; polynomial_part records the full polynomial part of the model's
/// transfer function, while extra_polynomial holds the (rare) terms that the
/// realization cannot carry (index-2 with B2 != 0) and that evaluation adds
/// on top.
struct ReducedModel {
    Matrix E, A, B, C, D;
    MatrixPolynomial polynomial_part;
    MatrixPolynomial extra_polynomial;
    Provenance provenance;

    Index order() const { return E.rows(); }
    Index inputs() const { return B.cols(); }
    Index outputs() const { return C.rows(); }
};

}  // namespace dsr
