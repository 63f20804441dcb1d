// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "dsr/analysis.hpp"
#include "dsr/irka.hpp"
#include "dsr/linalg.hpp"
#include "dsr/model_io.hpp"
#include "oracles.hpp"

using namespace dsr;

TEST_CASE("order-1 fixed point is the mirrored pole") {
    DescriptorSystem sys = oracles::siso_ode({-2.0});
    WeierstrassData w = weierstrass(sys);
    IrkaConfig cfg;
    cfg.r = 1;
    cfg.initial = oracles::single_shift(Complex(1, 0));
    IrkaResult res = irka_dae(sys, w, cfg);
    CHECK(res.converged);
    CHECK(std::abs(res.shift_history.back()[0] - Complex(2, 0)) < 1e-8);
    for (const Complex s : {Complex(1, 0), Complex(3, 2)})
        CHECK((eval_transfer(res.model, s) - oracles::transfer(sys, s)).norm() < 1e-10);
}

TEST_CASE("two-pole full recovery: shifts converge to {1,3} and H2 error vanishes") {
    DescriptorSystem sys = oracles::siso_ode({-1.0, -3.0});
    WeierstrassData w = weierstrass(sys);
    IrkaConfig cfg;
    cfg.r = 2;
    InterpolationData init;
    init.push(Complex(0.5, 0), CVector::Ones(1), CVector::Ones(1));
    init.push(Complex(5.0, 0), CVector::Ones(1), CVector::Ones(1));
    cfg.initial = init;
    IrkaResult res = irka_dae(sys, w, cfg);
    REQUIRE(res.converged);
    std::vector<Complex> expect = {Complex(1, 0), Complex(3, 0)};
    CHECK(shift_set_distance(expect, res.shift_history.back()) < 1e-6);

    auto [sp_full, poly] = split_transfer(sys, w);
    CHECK(h2_error_sp(sp_full, strictly_proper_part(res.model)) < 1e-8);
}

TEST_CASE("canonical index-1 keeps its polynomial part through the loop") {
    DescriptorSystem sys = oracles::canonical_index1();
    WeierstrassData w = weierstrass(sys);
    IrkaConfig cfg;
    cfg.r = 1;
    cfg.initial = oracles::single_shift(Complex(0.3, 0));
    IrkaResult res = irka_dae(sys, w, cfg);
    REQUIRE(res.converged);
    CHECK(std::abs(res.shift_history.back()[0] - Complex(1, 0)) < 1e-6);
    REQUIRE(res.model.polynomial_part.degree() == 0);
    CHECK(res.model.polynomial_part.coeffs[0](0, 0) == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("converged runs satisfy the first-order conditions") {
    oracles::Rng rng(73);
    DescriptorSystem sys;
    sys.E = Matrix(Matrix::Identity(6, 6));
    Matrix L = rng.randn(6, 6);
    sys.A = Matrix(-(L * L.transpose() / 6 + Matrix::Identity(6, 6)) + 0.4 * (L - L.transpose()));
    sys.B = rng.randn(6, 2);
    sys.C = rng.randn(2, 6);
    sys.D = MatrixHandle::Zero(2, 2);
    WeierstrassData w = weierstrass(sys);
    IrkaConfig cfg;
    cfg.r = 3;
    IrkaResult res = irka_dae(sys, w, cfg);
    REQUIRE(res.converged);
    OptimalityReport rep = check_h2_first_order(sys, res, 1e-6);
    CHECK(rep.pass);

    // Fixed-point property: converged shifts mirror the reduced poles.
    auto triples = eig_pencil(strictly_proper_part(res.model).E, strictly_proper_part(res.model).A);
    std::vector<Complex> mirrored;
    for (const auto& t : triples) mirrored.push_back(-t.lambda);
    CHECK(shift_set_distance(res.shift_history.back(), mirrored) < 1e-5);
}

TEST_CASE("iteration cap returns the best iterate with converged = false") {
    DescriptorSystem sys = oracles::siso_ode({-1.0, -3.0, -7.0});
    WeierstrassData w = weierstrass(sys);
    IrkaConfig cfg;
    cfg.r = 2;
    cfg.max_iter = 1;
    cfg.initial = [] {
        InterpolationData d;
        d.push(Complex(0.1, 0), CVector::Ones(1), CVector::Ones(1));
        d.push(Complex(40.0, 0), CVector::Ones(1), CVector::Ones(1));
        return d;
    }();
    IrkaResult res = irka_dae(sys, w, cfg);
    CHECK(!res.converged);
    CHECK(res.iterations == 1);
    CHECK(res.model.order() == 2);
    OptimalityReport rep = check_h2_first_order(sys, res, 1e-8);
    CHECK(!rep.pass);  // one step is not a fixed point here
}

TEST_CASE("full-order reduction passes the optimality check trivially") {
    DescriptorSystem sys = oracles::siso_ode({-1.0, -3.0});
    WeierstrassData w = weierstrass(sys);
    IrkaConfig cfg;
    cfg.r = 2;
    IrkaResult res = irka_dae(sys, w, cfg);
    OptimalityReport rep = check_h2_first_order(sys, res, 1e-7);
    CHECK(rep.pass);
}

TEST_CASE("conjugate closure is preserved across iterations") {
    oracles::Rng rng(79);
    DescriptorSystem sys;
    Matrix A = Matrix::Zero(4, 4);
    A << -1.0, 2.0, 0.0, 0.0, -2.0, -1.0, 0.0, 0.0, 0.0, 0.0, -3.0, 5.0, 0.0, 0.0, -5.0, -3.0;
    sys.E = MatrixHandle::Identity(4);
    sys.A = A;  // complex pole pairs
    sys.B = rng.randn(4, 1);
    sys.C = rng.randn(1, 4);
    sys.D = MatrixHandle::Zero(1, 1);
    WeierstrassData w = weierstrass(sys);
    IrkaConfig cfg;
    cfg.r = 2;
    IrkaResult res = irka_dae(sys, w, cfg);
    for (const auto& points : res.shift_history) {
        for (const Complex& s : points) {
            if (s.imag() == 0.0) continue;
            bool has_conj = false;
            for (const Complex& t : points) has_conj = has_conj || t == std::conj(s);
            CHECK(has_conj);
        }
    }
}

TEST_CASE("irka rejects r above the finite subspace dimension") {
    DescriptorSystem sys = oracles::canonical_index1();  // n_f = 1
    WeierstrassData w = weierstrass(sys);
    IrkaConfig cfg;
    cfg.r = 2;
    CHECK_THROWS_AS(irka_dae(sys, w, cfg), InvalidParams);
}

TEST_CASE("seed policy is deterministic and conjugate-closed") {
    SyntheticParams prm;
    prm.n = 10;
    prm.m = 2;
    prm.p = 2;
    DescriptorSystem sys = generate_synthetic("ode", prm, 12);
    InterpolationData a = seed_interpolation_data(sys, 4);
    InterpolationData b = seed_interpolation_data(sys, 4);
    REQUIRE(a.size() == 4);
    CHECK(a.conjugate_closed());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.points[i] == b.points[i]);
        CHECK((a.right_dirs[i] - b.right_dirs[i]).norm() == 0.0);
    }
    for (const Complex& s : a.points) CHECK(s.real() > 0.0);
}

TEST_CASE("perturb_shifts keeps conjugate closure") {
    InterpolationData d;
    d.push(Complex(1, 2), CVector::Ones(1), CVector::Ones(1));
    d.push(Complex(1, -2), CVector::Ones(1), CVector::Ones(1));
    d.push(Complex(3, 0), CVector::Ones(1), CVector::Ones(1));
    InterpolationData p = detail::perturb_shifts(d, 1e-6, 2);
    CHECK(p.conjugate_closed());
    CHECK(p.points[0] != d.points[0]);
}
