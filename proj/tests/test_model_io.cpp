// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "dsr/index2.hpp"
#include "dsr/interpolation.hpp"
#include "dsr/model_io.hpp"
#include "dsr/spectral.hpp"
#include "oracles.hpp"

using namespace dsr;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("dsr_io_" + std::to_string(::getpid()) + "_" +
                                                  std::to_string(counter++))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int counter;
};
int TempDir::counter = 0;

}  // namespace

TEST_CASE("matrix market dense round trip is bit exact") {
    TempDir tmp;
    oracles::Rng rng(131);
    Matrix M = rng.randn(5, 3);
    M(0, 0) = 1.0 / 3.0;
    M(1, 2) = 1e-300;
    write_matrix_market(tmp.path / "m.mtx", MatrixHandle(M));
    MatrixHandle back = read_matrix_market(tmp.path / "m.mtx");
    REQUIRE(!back.is_sparse());
    CHECK((back.dense() - M).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix market sparse round trip") {
    TempDir tmp;
    SpMatrix S(4, 4);
    std::vector<Eigen::Triplet<double>> t = {{0, 0, 1.5}, {2, 1, -2.25}, {3, 3, 1.0 / 7.0}};
    S.setFromTriplets(t.begin(), t.end());
    write_matrix_market(tmp.path / "s.mtx", MatrixHandle(S));
    MatrixHandle back = read_matrix_market(tmp.path / "s.mtx");
    REQUIRE(back.is_sparse());
    CHECK((back.to_dense() - Matrix(S)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix market symmetric and pattern variants parse") {
    TempDir tmp;
    {
        std::ofstream out(tmp.path / "sym.mtx");
        out << "%%MatrixMarket matrix coordinate real symmetric\n% comment\n3 3 2\n2 1 5.0\n3 3 1.0\n";
    }
    Matrix S = read_matrix_market(tmp.path / "sym.mtx").to_dense();
    CHECK(S(1, 0) == 5.0);
    CHECK(S(0, 1) == 5.0);
    CHECK(S(2, 2) == 1.0);
    {
        std::ofstream out(tmp.path / "pat.mtx");
        out << "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n2 1\n";
    }
    Matrix P = read_matrix_market(tmp.path / "pat.mtx").to_dense();
    CHECK(P(1, 0) == 1.0);

    {
        std::ofstream out(tmp.path / "bad.mtx");
        out << "%%MatrixMarket matrix coordinate real general\n2 2 1\n5 1 3.0\n";
    }
    CHECK_THROWS_AS(read_matrix_market(tmp.path / "bad.mtx"), ParseError);
}

TEST_CASE("system manifest round trip") {
    TempDir tmp;
    DescriptorSystem sys = oracles::index1_n3();
    sys.name = "roundtrip";
    auto manifest = save_system(sys, tmp.path / "sys");
    DescriptorSystem back = load_system(manifest);
    CHECK(back.name == "roundtrip");
    CHECK(back.structure == StructureKind::Index1Blocks);
    CHECK(back.n1 == 2);
    CHECK((back.E.to_dense() - sys.E.to_dense()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.A.to_dense() - sys.A.to_dense()).cwiseAbs().maxCoeff() == 0.0);

    // Second hop is bit-identical too.
    auto manifest2 = save_system(back, tmp.path / "sys2");
    DescriptorSystem again = load_system(manifest2);
    CHECK((again.B.to_dense() - sys.B.to_dense()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("manifest with omitted D defaults to zero") {
    TempDir tmp;
    DescriptorSystem sys = oracles::siso_ode({-1.0});
    save_system(sys, tmp.path);
    // Drop D from the manifest.
    std::ifstream in(tmp.path / "system.json");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    auto pos = text.find("\"D\": \"D.mtx\",");
    REQUIRE(pos != std::string::npos);
    text.erase(pos, std::string("\"D\": \"D.mtx\",").size());
    std::ofstream out(tmp.path / "system.json");
    out << text;
    out.close();
    DescriptorSystem back = load_system(tmp.path / "system.json");
    CHECK(back.D.rows() == 1);
    CHECK(back.D.is_zero());
}

TEST_CASE("manifest with inconsistent block sizes is rejected") {
    TempDir tmp;
    DescriptorSystem sys = oracles::index1_n3();
    save_system(sys, tmp.path);
    std::ifstream in(tmp.path / "system.json");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    auto pos = text.find("\"n1\": 2");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 7, "\"n1\": 1");
    std::ofstream out(tmp.path / "system.json");
    out << text;
    out.close();
    CHECK_THROWS_AS(load_system(tmp.path / "system.json"), DimensionMismatch);
}

TEST_CASE("invalid structure fails validation on load") {
    TempDir tmp;
    DescriptorSystem sys = oracles::index1_n3();
    Matrix A = sys.A.to_dense();
    A(2, 2) = 0.0;  // singular A22
    sys.A = A;
    // save_system writes without validating; load must reject.
    save_system(sys, tmp.path);
    CHECK_THROWS_AS(load_system(tmp.path / "system.json"), ValidationFailed);
}

TEST_CASE("reduced model save/load is value-identical") {
    TempDir tmp;
    SyntheticParams prm;
    prm.n1 = 6;
    prm.n2 = 2;
    DescriptorSystem sys = generate_synthetic("stokes-index2", prm, 3);
    oracles::Rng rng(137);
    InterpolationData data = oracles::random_closed_data(rng, 1, 1, 1);
    ReducedModel m = reduce_index2(sys, data);

    auto path = save_model(m, tmp.path / "model");
    ReducedModel back = load_model(path);
    CHECK((back.E - m.E).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.A - m.A).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.B - m.B).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.C - m.C).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.D - m.D).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(back.polynomial_part.coeffs.size() == m.polynomial_part.coeffs.size());
    for (std::size_t k = 0; k < m.polynomial_part.coeffs.size(); ++k)
        CHECK((back.polynomial_part.coeffs[k] - m.polynomial_part.coeffs[k]).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(back.extra_polynomial.coeffs.size() == m.extra_polynomial.coeffs.size());
    CHECK(back.provenance.method == m.provenance.method);
    CHECK(back.provenance.finite_block == m.provenance.finite_block);

    // Provenance shifts survive with conjugate pairs intact.
    REQUIRE(back.provenance.shifts.size() == m.provenance.shifts.size());
    CHECK(back.provenance.shifts.conjugate_closed());
    for (std::size_t i = 0; i < m.provenance.shifts.size(); ++i)
        CHECK(back.provenance.shifts.points[i] == m.provenance.shifts.points[i]);

    // load -> save -> load fixed point.
    auto path2 = save_model(back, tmp.path / "model2");
    ReducedModel back2 = load_model(path2);
    CHECK((back2.E - back.E).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("interpolation data json round trip") {
    TempDir tmp;
    oracles::Rng rng(139);
    InterpolationData d = oracles::random_closed_data(rng, 2, 2, 3);
    save_interpolation_data(d, tmp.path / "shifts.json");
    InterpolationData back = load_interpolation_data(tmp.path / "shifts.json");
    REQUIRE(back.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(back.points[i] == d.points[i]);
        CHECK((back.right_dirs[i] - d.right_dirs[i]).norm() == 0.0);
        CHECK((back.left_dirs[i] - d.left_dirs[i]).norm() == 0.0);
    }
}

TEST_CASE("generators are deterministic and structurally valid") {
    SyntheticParams i1;
    i1.n1 = 4;
    i1.n2 = 2;
    i1.m = 2;
    i1.p = 2;
    DescriptorSystem a = generate_synthetic("semiexplicit-index1", i1, 0);
    DescriptorSystem b = generate_synthetic("semiexplicit-index1", i1, 0);
    CHECK((a.A.to_dense() - b.A.to_dense()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(validate(a).empty());

    SyntheticParams st;
    st.n1 = 50;
    st.n2 = 10;
    DescriptorSystem s = generate_synthetic("stokes-index2", st, 1);
    CHECK(validate(s).empty());
    WeierstrassData w = weierstrass(s);
    CHECK(pencil_index(w) == 2);

    SyntheticParams od;
    od.n = 10;
    DescriptorSystem o = generate_synthetic("ode", od, 2);
    CHECK(validate(o).empty());
    CHECK(pencil_index(weierstrass(o)) == 0);

    SyntheticParams rl;
    rl.n1 = 30;
    rl.n2 = 6;
    DescriptorSystem r = generate_synthetic("rlc-index2", rl, 3);
    CHECK(r.E.is_sparse());
    CHECK(validate(r).empty());
    CHECK(pencil_index(weierstrass(r)) == 2);

    CHECK_THROWS_AS(generate_synthetic("unknown", od, 0), InvalidParams);
    SyntheticParams bad;
    bad.n1 = 2;
    bad.n2 = 2;
    CHECK_THROWS_AS(generate_synthetic("stokes-index2", bad, 0), InvalidParams);
}
