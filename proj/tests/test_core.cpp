// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "dsr/core.hpp"
#include "oracles.hpp"

using namespace dsr;

TEST_CASE("validate accepts a well-formed ODE") {
    DescriptorSystem sys;
    sys.E = MatrixHandle::Identity(2);
    sys.A = Matrix(-Matrix::Identity(2, 2));
    sys.B = MatrixHandle::Identity(2);
    sys.C = MatrixHandle::Identity(2);
    sys.D = MatrixHandle::Zero(2, 2);
    CHECK(validate(sys).empty());
    CHECK(validate(sys).empty());  // idempotent, no side effects
}

TEST_CASE("validate flags dimension inconsistencies") {
    DescriptorSystem sys;
    sys.E = MatrixHandle::Identity(2);
    sys.A = MatrixHandle::Identity(2);
    sys.B = MatrixHandle::Zero(3, 1);
    sys.C = MatrixHandle::Zero(1, 2);
    sys.D = MatrixHandle::Zero(1, 1);
    auto diags = validate(sys);
    REQUIRE(!diags.empty());
    CHECK(diags[0].invariant == "B has n rows");
}

TEST_CASE("validate: index-2 regularity violated when A12 = 0") {
    DescriptorSystem sys = oracles::index2_n1_2();
    Matrix A = sys.A.to_dense();
    A(0, 2) = 0.0;  // zero out A12
    sys.A = A;
    auto diags = validate(sys);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].invariant == "index-2 regularity violated");
}

TEST_CASE("validate: index-1 singular A22") {
    DescriptorSystem sys = oracles::index1_n3();
    Matrix A = sys.A.to_dense();
    A(2, 2) = 0.0;
    sys.A = A;
    auto diags = validate(sys);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].invariant == "A22 singular");
}

TEST_CASE("validate: index-2 structural zeros enforced") {
    DescriptorSystem sys = oracles::index2_n1_2();
    Matrix E = sys.E.to_dense();
    E(2, 2) = 1.0;
    sys.E = E;
    auto diags = validate(sys);
    REQUIRE(!diags.empty());
    CHECK(diags[0].invariant == "E off-diagonal blocks zero");
}

TEST_CASE("conjugate_close adds the missing conjugate entry") {
    InterpolationData d;
    d.push(Complex(1, 1), CVector::Ones(1), CVector::Ones(1));
    InterpolationData closed = conjugate_close(d);
    REQUIRE(closed.size() == 2);
    CHECK(closed.points[1] == Complex(1, -1));
    CHECK(closed.conjugate_closed());
}

TEST_CASE("conjugate_close leaves real data unchanged") {
    InterpolationData d;
    d.push(Complex(2, 0), CVector::Ones(1), CVector::Ones(1));
    InterpolationData closed = conjugate_close(d);
    CHECK(closed.size() == 1);
    CHECK(closed.points[0] == Complex(2, 0));
}

TEST_CASE("conjugate_close does not duplicate existing pairs") {
    InterpolationData d;
    d.push(Complex(1, 1), CVector::Ones(1), CVector::Ones(1));
    d.push(Complex(1, -1), CVector::Ones(1), CVector::Ones(1));
    CHECK(conjugate_close(d).size() == 2);
}

TEST_CASE("conjugate_close is idempotent on random data") {
    oracles::Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        InterpolationData d = oracles::random_closed_data(rng, 1 + trial % 3, 2, 2);
        InterpolationData once = conjugate_close(d);
        InterpolationData twice = conjugate_close(once);
        REQUIRE(twice.size() == once.size());
        for (std::size_t i = 0; i < once.size(); ++i) CHECK(twice.points[i] == once.points[i]);
    }
}

TEST_CASE("matrix polynomial evaluation and canonical form") {
    Matrix p0(1, 1), p1(1, 1), z(1, 1);
    p0 << -2.0;
    p1 << -1.0;
    z << 0.0;
    MatrixPolynomial poly({p0, p1, z});
    poly.canonicalize();
    CHECK(poly.degree() == 1);
    CHECK(poly.eval(Complex(3, 0))(0, 0) == Complex(-5, 0));
    CHECK(poly.derivative(Complex(3, 0), 1)(0, 0) == Complex(-1, 0));

    MatrixPolynomial zero({z});
    zero.canonicalize();
    CHECK(zero.is_zero());
    CHECK(zero.eval(Complex(1, 0), 1, 1).norm() == 0.0);
}

TEST_CASE("matrix handle blocks and norms") {
    oracles::Rng rng(3);
    Matrix M = rng.randn(4, 4);
    MatrixHandle dense(M);
    MatrixHandle sparse(MatrixHandle(M).to_sparse());
    CHECK(dense.block(1, 1, 2, 2).to_dense().isApprox(M.block(1, 1, 2, 2)));
    CHECK(sparse.block(1, 1, 2, 2).to_dense().isApprox(M.block(1, 1, 2, 2)));
    CHECK(dense.norm1() == doctest::Approx(sparse.norm1()));
    CMatrix X = rng.randn(4, 2).cast<Complex>() + Complex(0, 1) * rng.randn(4, 2).cast<Complex>();
    CHECK((dense.apply(X) - sparse.apply(X)).norm() < 1e-14);
    CHECK((dense.apply_transpose(X) - sparse.apply_transpose(X)).norm() < 1e-14);
}
