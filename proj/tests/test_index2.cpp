// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "dsr/analysis.hpp"
#include "dsr/index2.hpp"
#include "dsr/interpolation.hpp"
#include "dsr/linalg.hpp"
#include "dsr/model_io.hpp"
#include "oracles.hpp"

using namespace dsr;

TEST_CASE("hidden feedthrough collapse and hand cases") {
    SUBCASE("C2 = 0 keeps the original output data") {
        DescriptorSystem sys = oracles::index2_n1_2();
        Index2Hidden hid = hidden_feedthrough(sys);
        CHECK((hid.Cmat - sys.C1().to_dense()).norm() < 1e-14);
        CHECK(hid.Dscript.norm() == doctest::Approx(0.0));
        CHECK(hid.linear_poly_coeff.norm() == doctest::Approx(0.0));
        CHECK((hid.const_feedthrough - hid.Dscript).norm() == doctest::Approx(0.0));
    }
    SUBCASE("C2 = 1, B1 = [1;0] gives script-D = -1") {
        DescriptorSystem sys = oracles::index2_n1_2(1.0, 1.0);
        Matrix B = sys.B.to_dense();
        B(1, 0) = 0.0;  // B1 = [1; 0]
        sys.B = B;
        Index2Hidden hid = hidden_feedthrough(sys);
        CHECK(hid.Dscript(0, 0) == doctest::Approx(-1.0));
    }
}

TEST_CASE("hidden feedthrough error taxonomy") {
    DescriptorSystem sys = oracles::index2_n1_2();
    SUBCASE("singular E11") {
        Matrix E = sys.E.to_dense();
        E(1, 1) = 0.0;
        sys.E = E;
        CHECK_THROWS_AS(hidden_feedthrough(sys), SingularE11);
    }
    SUBCASE("singular projected Gram") {
        Matrix A = sys.A.to_dense();
        A(0, 2) = 0.0;  // A12 = 0
        sys.A = A;
        CHECK_THROWS_AS(hidden_feedthrough(sys), SingularProjectedGram);
    }
}

TEST_CASE("reference projectors on hand instances") {
    DescriptorSystem sys = oracles::index2_n1_2();
    auto [Pl, Pr] = projectors_index2(sys);
    Matrix expect = Matrix::Zero(2, 2);
    expect(1, 1) = 1.0;
    CHECK((Pl - expect).norm() < 1e-14);
    CHECK((Pr - expect).norm() < 1e-14);
}

TEST_CASE("projector identities on random nonsymmetric instances") {
    oracles::Rng rng(101);
    for (int trial = 0; trial < 5; ++trial) {
        SyntheticParams prm;
        prm.n1 = 6 + trial;
        prm.n2 = 2;
        DescriptorSystem sys = generate_synthetic("stokes-index2", prm, 100 + trial);
        auto [Pl, Pr] = projectors_index2(sys);
        Matrix E11 = sys.E11().to_dense(), A12 = sys.A12().to_dense(), A21 = sys.A21().to_dense();

        CHECK((Pl * Pl - Pl).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((Pr * Pr - Pr).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((A21 * Pl).norm() < 1e-10 * A21.norm());
        CHECK((Pr * A12).norm() < 1e-10 * A12.norm());
        CHECK(Eigen::FullPivLU<Matrix>(Pl).rank() == prm.n1 - prm.n2);
        CHECK(Eigen::FullPivLU<Matrix>(Pr).rank() == prm.n1 - prm.n2);
        // Intertwining: Pr E11 = E11 Pl, so scriptE v = Pr E11 v on Im(Pl).
        CHECK((Pr * E11 - E11 * Pl).norm() < 1e-10 * E11.norm());

        // Symmetric special case: E11 = I and A12 = A21^T make Pl = Pr.
        DescriptorSystem symd = sys;
        Matrix A = sys.A.to_dense();
        A.block(0, prm.n1, prm.n1, prm.n2) = A.block(prm.n1, 0, prm.n2, prm.n1).transpose();
        symd.A = A;
        Matrix Esym = sys.E.to_dense();
        Esym.topLeftCorner(prm.n1, prm.n1).setIdentity();
        symd.E = Esym;
        auto [Psl, Psr] = projectors_index2(symd);
        CHECK((Psl - Psr).norm() < 1e-10);
    }
}

TEST_CASE("saddle solve against the hand 3x3 system") {
    DescriptorSystem sys = oracles::index2_n1_2();
    CVector b = CVector::Ones(1);
    CVector v = saddle_solve_right(sys, Complex(1, 0), b, sys.B1().to_dense());
    CHECK(std::abs(v(0)) < 1e-14);
    CHECK(std::abs(v(1) - Complex(0.5, 0)) < 1e-14);

    CVector w = saddle_solve_left(sys, Complex(1, 0), b, Matrix(sys.C1().to_dense()));
    CHECK(std::abs(w(0)) < 1e-14);
    CHECK(std::abs(w(1) - Complex(0.5, 0)) < 1e-14);

    CHECK(saddle_solve_right(sys, Complex(1, 0), CVector::Zero(1), sys.B1().to_dense()).norm() == 0.0);
    CHECK_THROWS_AS(saddle_solve_right(sys, Complex(-1, 0), b, sys.B1().to_dense()), SingularSaddle);
}

TEST_CASE("saddle solutions match the null-space restricted-inverse oracle") {
    oracles::Rng rng(103);
    std::uniform_real_distribution<double> uni(0.3, 3.0);
    for (int trial = 0; trial < 6; ++trial) {
        SyntheticParams prm;
        prm.n1 = 5 + trial;
        prm.n2 = 1 + trial % 3;
        prm.m = 2;
        prm.p = 2;
        DescriptorSystem sys = generate_synthetic("stokes-index2", prm, 200 + trial);
        Index2Hidden hid = hidden_feedthrough(sys);
        oracles::ThetaOracle th = oracles::make_theta(sys);
        const Complex sigma(uni(rng.gen), uni(rng.gen));

        CMatrix Ri = oracles::restricted_inverse(sys, th, sigma);
        CVector b = rng.crandn(2);
        CVector v = saddle_solve_right(sys, sigma, b, hid.Bmat);
        CVector v_oracle = Ri * (hid.Bmat.cast<Complex>() * b);
        CHECK((v - v_oracle).norm() <= 1e-8 * std::max(1.0, v_oracle.norm()));
        CHECK((sys.A21().to_dense().cast<Complex>() * v).norm() <= 1e-10 * std::max(1.0, v.norm()));

        CVector c = rng.crandn(2);
        CVector w = saddle_solve_left(sys, sigma, c, hid.Cmat);
        CVector w_oracle = Ri.transpose() * (hid.Cmat.transpose().cast<Complex>() * c);
        CHECK((w - w_oracle).norm() <= 1e-8 * std::max(1.0, w_oracle.norm()));
        CHECK((sys.A12().to_dense().transpose().cast<Complex>() * w).norm() <= 1e-10 * std::max(1.0, w.norm()));

        // Restricted-inverse identities against the dense projectors.
        auto [Pl, Pr] = projectors_index2(sys);
        Matrix E11 = sys.E11().to_dense(), A11 = sys.A11().to_dense();
        CMatrix op = Pr.cast<Complex>() * (sigma * E11.cast<Complex>() - A11.cast<Complex>()) * Pl.cast<Complex>();
        CHECK((Ri * op - Pl.cast<Complex>()).norm() <= 1e-8 * std::max(1.0, Pl.norm()));
        CHECK((op * Ri - Pr.cast<Complex>()).norm() <= 1e-8 * std::max(1.0, Pr.norm()));
    }
}

TEST_CASE("reduce_index2 captures the hidden first-order system exactly") {
    DescriptorSystem sys = oracles::index2_n1_2();
    InterpolationData data = oracles::single_shift(Complex(1, 0));
    ReducedModel m = reduce_index2(sys, data);
    CHECK(m.order() == 1);
    for (const Complex s : {Complex(1, 0), Complex(0.5, 2.0), Complex(4, -1)}) {
        const Complex expect = Complex(1, 0) / (s + Complex(1, 0));
        CHECK(std::abs(eval_transfer(m, s)(0, 0) - expect) < 1e-12);
    }
}

TEST_CASE("reduce_index2 basis columns satisfy the constraint") {
    SyntheticParams prm;
    prm.n1 = 9;
    prm.n2 = 3;
    prm.m = 2;
    prm.p = 2;
    DescriptorSystem sys = generate_synthetic("stokes-index2", prm, 7);
    oracles::Rng rng(107);
    InterpolationData data = oracles::random_closed_data(rng, 2, 2, 2);
    ReducedModel m = reduce_index2(sys, data);
    InterpolationReport rep = verify_interpolation(sys, m, data, 1, 1e-6);
    CHECK(rep.pass);
}

TEST_CASE("B2 != 0: improper transfer matched, bounded error") {
    SyntheticParams prm;
    prm.n1 = 8;
    prm.n2 = 2;
    DescriptorSystem sys = generate_synthetic("stokes-index2", prm, 11);  // B2 != 0 by default
    Index2Hidden hid = hidden_feedthrough(sys);
    CHECK(hid.linear_poly_coeff.norm() > 0.0);

    oracles::Rng rng(109);
    InterpolationData data = oracles::random_closed_data(rng, 1, 1, 1);
    ReducedModel m = reduce_index2(sys, data);
    REQUIRE(m.polynomial_part.degree() == 1);
    REQUIRE(m.extra_polynomial.degree() == 1);

    // Polynomial part agrees with the dense spectral split coefficient-wise.
    auto [sp, poly] = split_transfer(sys, weierstrass(sys));
    REQUIRE(poly.degree() == 1);
    CHECK((poly.coeffs[0] - m.polynomial_part.coeffs[0]).norm() <= 1e-8 * std::max(1.0, poly.coeffs[0].norm()));
    CHECK((poly.coeffs[1] - m.polynomial_part.coeffs[1]).norm() <= 1e-8 * std::max(1.0, poly.coeffs[1].norm()));

    InterpolationReport rep = verify_interpolation(sys, m, data, 1, 1e-6);
    CHECK(rep.pass);

    // G itself is improper, but the error stays bounded as omega grows.
    for (double w : {1e3, 1e4, 1e5, 1e6}) {
        const double err = (oracles::transfer(sys, Complex(0, w)) - eval_transfer(m, Complex(0, w))).norm();
        CHECK(err < 10.0);
    }
    const double glow = oracles::transfer(sys, Complex(0, 1e6)).norm();
    CHECK(glow > 1e3);  // the full response really does grow
}

TEST_CASE("agreement with the general projector path on index-2 systems") {
    SyntheticParams prm;
    prm.n1 = 7;
    prm.n2 = 2;
    prm.m = 2;
    prm.p = 2;
    DescriptorSystem sys = generate_synthetic("stokes-index2", prm, 13);
    oracles::Rng rng(113);
    InterpolationData data = oracles::random_closed_data(rng, 1, 2, 2);
    ReducedModel a = reduce_index2(sys, data);
    ReducedModel b = reduce_dae(sys, data, weierstrass(sys));
    std::uniform_real_distribution<double> uni(0.2, 3.0);
    for (int k = 0; k < 10; ++k) {
        const Complex s(uni(rng.gen), uni(rng.gen));
        CMatrix ga = eval_transfer(a, s), gb = eval_transfer(b, s);
        CHECK((ga - gb).norm() <= 1e-6 * std::max(1.0, ga.norm()));
    }
    // Polynomial parts agree coefficient-wise.
    REQUIRE(a.polynomial_part.coeffs.size() == b.polynomial_part.coeffs.size());
    for (std::size_t k = 0; k < a.polynomial_part.coeffs.size(); ++k)
        CHECK((a.polynomial_part.coeffs[k] - b.polynomial_part.coeffs[k]).norm() <=
              1e-6 * std::max(1.0, a.polynomial_part.coeffs[k].norm()));
}

TEST_CASE("irka_index2 finds the mirrored hidden pole") {
    DescriptorSystem sys = oracles::index2_n1_2();
    IrkaConfig cfg;
    cfg.r = 1;
    cfg.initial = oracles::single_shift(Complex(0.2, 0));
    IrkaResult res = irka_index2(sys, cfg);
    REQUIRE(res.converged);
    CHECK(std::abs(res.shift_history.back()[0] - Complex(1, 0)) < 1e-8);
}

TEST_CASE("irka_index2 full hidden-order recovery") {
    SyntheticParams prm;
    prm.n1 = 6;
    prm.n2 = 2;
    DescriptorSystem sys = generate_synthetic("stokes-index2", prm, 17);
    IrkaConfig cfg;
    cfg.r = 4;  // hidden order n1 - n2
    IrkaResult res = irka_index2(sys, cfg);
    REQUIRE(res.converged);
    auto [sp_full, poly] = split_transfer(sys, weierstrass(sys));
    CHECK(h2_error_sp(sp_full, strictly_proper_part(res.model)) < 1e-8);
}

TEST_CASE("irka_index2 iteration cap yields a valid unconverged iterate") {
    SyntheticParams prm;
    prm.n1 = 8;
    prm.n2 = 2;
    DescriptorSystem sys = generate_synthetic("stokes-index2", prm, 19);
    IrkaConfig cfg;
    cfg.r = 2;
    cfg.max_iter = 1;
    IrkaResult res = irka_index2(sys, cfg);
    CHECK(!res.converged);
    CHECK(res.model.order() == 2);
    CHECK(std::isfinite(eval_transfer(res.model, Complex(1, 0)).norm()));
}

TEST_CASE("irka_index2 converged model passes the first-order check") {
    SyntheticParams prm;
    prm.n1 = 8;
    prm.n2 = 2;
    prm.m = 2;
    prm.p = 2;
    DescriptorSystem sys = generate_synthetic("stokes-index2", prm, 23);
    IrkaConfig cfg;
    cfg.r = 3;
    IrkaResult res = irka_index2(sys, cfg);
    REQUIRE(res.converged);
    OptimalityReport rep = check_h2_first_order(sys, res, 1e-6);
    CHECK(rep.pass);
}
