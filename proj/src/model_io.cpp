// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
#include "dsr/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace dsr {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

MatrixHandle read_matrix_market(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file.string());

    std::string line;
    long lineno = 0;
    if (!std::getline(in, line)) throw ParseError(file.string(), 1, "empty file");
    ++lineno;

    std::istringstream banner(line);
    std::string tag, object, format, field, symmetry;
    banner >> tag >> object >> format >> field >> symmetry;
    if (lower(tag) != "%%matrixmarket" || lower(object) != "matrix")
        throw ParseError(file.string(), lineno, "not a MatrixMarket matrix file");
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (format != "coordinate" && format != "array")
        throw ParseError(file.string(), lineno, "unsupported format: " + format);
    if (field != "real" && field != "integer" && field != "pattern")
        throw ParseError(file.string(), lineno, "unsupported field: " + field);
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric")
        throw ParseError(file.string(), lineno, "unsupported symmetry: " + symmetry);
    if (format == "array" && field == "pattern")
        throw ParseError(file.string(), lineno, "pattern field is only valid with coordinate format");

    auto next_data_line = [&](std::istringstream& out) {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '%') continue;
            out.clear();
            out.str(line);
            return true;
        }
        return false;
    };

    std::istringstream ls;
    if (!next_data_line(ls)) throw ParseError(file.string(), lineno, "missing size line");

    if (format == "coordinate") {
        Index rows = 0, cols = 0;
        long long nnz = 0;
        if (!(ls >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0)
            throw ParseError(file.string(), lineno, "bad coordinate size line");
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(static_cast<std::size_t>(nnz) * (symmetry == "general" ? 1 : 2));
        for (long long k = 0; k < nnz; ++k) {
            if (!next_data_line(ls)) throw ParseError(file.string(), lineno, "unexpected end of entries");
            long long i = 0, j = 0;
            double v = 1.0;
            if (!(ls >> i >> j)) throw ParseError(file.string(), lineno, "bad coordinate entry");
            if (field != "pattern" && !(ls >> v)) throw ParseError(file.string(), lineno, "missing value");
            if (i < 1 || i > rows || j < 1 || j > cols)
                throw ParseError(file.string(), lineno, "index out of range");
            trips.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1), v);
            if (i != j && symmetry == "symmetric")
                trips.emplace_back(static_cast<int>(j - 1), static_cast<int>(i - 1), v);
            if (i != j && symmetry == "skew-symmetric")
                trips.emplace_back(static_cast<int>(j - 1), static_cast<int>(i - 1), -v);
        }
        SpMatrix M(rows, cols);
        M.setFromTriplets(trips.begin(), trips.end());
        M.makeCompressed();
        return MatrixHandle(std::move(M));
    }

    Index rows = 0, cols = 0;
    if (!(ls >> rows >> cols) || rows < 0 || cols < 0)
        throw ParseError(file.string(), lineno, "bad array size line");
    Matrix M = Matrix::Zero(rows, cols);
    auto read_value = [&](double& v) {
        while (true) {
            if (ls >> v) return true;
            if (!next_data_line(ls)) return false;
        }
    };
    ls.setstate(std::ios::eofbit);  // force a fresh data line first
    if (symmetry == "general") {
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i) {
                double v;
                if (!read_value(v)) throw ParseError(file.string(), lineno, "unexpected end of array data");
                M(i, j) = v;
            }
    } else {
        if (rows != cols) throw ParseError(file.string(), lineno, "symmetric array must be square");
        for (Index j = 0; j < cols; ++j)
            for (Index i = j; i < rows; ++i) {
                double v;
                if (!read_value(v)) throw ParseError(file.string(), lineno, "unexpected end of array data");
                M(i, j) = v;
                M(j, i) = symmetry == "symmetric" ? v : (i == j ? v : -v);
            }
    }
    return MatrixHandle(std::move(M));
}

void write_matrix_market(const std::filesystem::path& file, const MatrixHandle& M) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file.string());
    if (M.is_sparse()) {
        const SpMatrix& S = M.sparse();
        out << "%%MatrixMarket matrix coordinate real general\n";
        out << S.rows() << " " << S.cols() << " " << S.nonZeros() << "\n";
        for (Index j = 0; j < S.outerSize(); ++j)
            for (SpMatrix::InnerIterator it(S, j); it; ++it)
                out << (it.row() + 1) << " " << (it.col() + 1) << " " << fmt17(it.value()) << "\n";
    } else {
        const Matrix& D = M.dense();
        out << "%%MatrixMarket matrix array real general\n";
        out << D.rows() << " " << D.cols() << "\n";
        for (Index j = 0; j < D.cols(); ++j)
            for (Index i = 0; i < D.rows(); ++i) out << fmt17(D(i, j)) << "\n";
    }
    if (!out) throw IoError("write failed for " + file.string());
}

namespace {

json interpolation_to_json(const InterpolationData& data) {
    json j;
    j["points"] = json::array();
    j["right_dirs"] = json::array();
    j["left_dirs"] = json::array();
    for (std::size_t i = 0; i < data.size(); ++i) {
        j["points"].push_back({data.points[i].real(), data.points[i].imag()});
        json b = json::array(), c = json::array();
        for (Index k = 0; k < data.right_dirs[i].size(); ++k)
            b.push_back({data.right_dirs[i](k).real(), data.right_dirs[i](k).imag()});
        for (Index k = 0; k < data.left_dirs[i].size(); ++k)
            c.push_back({data.left_dirs[i](k).real(), data.left_dirs[i](k).imag()});
        j["right_dirs"].push_back(b);
        j["left_dirs"].push_back(c);
    }
    return j;
}

InterpolationData interpolation_from_json(const json& j) {
    InterpolationData data;
    const auto& pts = j.at("points");
    const auto& rd = j.at("right_dirs");
    const auto& ld = j.at("left_dirs");
    if (pts.size() != rd.size() || pts.size() != ld.size())
        throw ParseError("interpolation data lists must have equal lengths");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CVector b(rd[i].size()), c(ld[i].size());
        for (std::size_t k = 0; k < rd[i].size(); ++k)
            b(static_cast<Index>(k)) = Complex(rd[i][k][0].get<double>(), rd[i][k][1].get<double>());
        for (std::size_t k = 0; k < ld[i].size(); ++k)
            c(static_cast<Index>(k)) = Complex(ld[i][k][0].get<double>(), ld[i][k][1].get<double>());
        data.push(Complex(pts[i][0].get<double>(), pts[i][1].get<double>()), std::move(b), std::move(c));
    }
    return data;
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

}  // namespace

DescriptorSystem load_system(const std::filesystem::path& manifest_path) {
    json j = load_json_file(manifest_path);
    const auto dir = manifest_path.parent_path();
    try {
        if (j.value("format_version", 0) != 1)
            throw ParseError(manifest_path.string() + ": unsupported format_version");
        DescriptorSystem sys;
        sys.name = j.value("name", "");
        sys.structure = structure_from_string(j.value("structure", "general"));
        sys.n1 = j.value("n1", 0);
        sys.n2 = j.value("n2", 0);
        const auto& mats = j.at("matrices");
        sys.E = read_matrix_market(dir / mats.at("E").get<std::string>());
        sys.A = read_matrix_market(dir / mats.at("A").get<std::string>());
        sys.B = read_matrix_market(dir / mats.at("B").get<std::string>());
        sys.C = read_matrix_market(dir / mats.at("C").get<std::string>());
        if (mats.contains("D"))
            sys.D = read_matrix_market(dir / mats.at("D").get<std::string>());
        else
            sys.D = MatrixHandle::Zero(sys.C.rows(), sys.B.cols());

        if (sys.structure != StructureKind::General && sys.n1 + sys.n2 != sys.E.rows())
            throw DimensionMismatch("declared block sizes n1 + n2 do not match the matrix order");
        std::vector<Diagnostic> diags = validate(sys);
        if (!diags.empty()) {
            std::string msg = "validation failed:";
            for (const auto& d : diags) msg += " [" + d.invariant + "] " + d.message + ";";
            throw ValidationFailed(msg);
        }
        return sys;
    } catch (const json::exception& e) {
        throw ParseError(manifest_path.string() + ": " + e.what());
    }
}

std::filesystem::path save_system(const DescriptorSystem& system, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_matrix_market(dir / "E.mtx", system.E);
    write_matrix_market(dir / "A.mtx", system.A);
    write_matrix_market(dir / "B.mtx", system.B);
    write_matrix_market(dir / "C.mtx", system.C);
    write_matrix_market(dir / "D.mtx", system.D);
    json j;
    j["format_version"] = 1;
    j["name"] = system.name;
    j["structure"] = to_string(system.structure);
    j["n1"] = system.n1;
    j["n2"] = system.n2;
    j["matrices"] = {{"E", "E.mtx"}, {"A", "A.mtx"}, {"B", "B.mtx"}, {"C", "C.mtx"}, {"D", "D.mtx"}};
    const auto path = dir / "system.json";
    write_json_file(path, j);
    return path;
}

std::filesystem::path save_model(const ReducedModel& model, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_matrix_market(dir / "E.mtx", MatrixHandle(model.E));
    write_matrix_market(dir / "A.mtx", MatrixHandle(model.A));
    write_matrix_market(dir / "B.mtx", MatrixHandle(model.B));
    write_matrix_market(dir / "C.mtx", MatrixHandle(model.C));
    write_matrix_market(dir / "D.mtx", MatrixHandle(model.D));

    json j;
    j["format_version"] = 1;
    j["kind"] = "reduced_model";
    j["matrices"] = {{"E", "E.mtx"}, {"A", "A.mtx"}, {"B", "B.mtx"}, {"C", "C.mtx"}, {"D", "D.mtx"}};
    j["polynomial"] = json::array();
    for (std::size_t k = 0; k < model.polynomial_part.coeffs.size(); ++k) {
        std::string name = "poly_" + std::to_string(k) + ".mtx";
        write_matrix_market(dir / name, MatrixHandle(model.polynomial_part.coeffs[k]));
        j["polynomial"].push_back(name);
    }
    j["extra_polynomial"] = json::array();
    for (std::size_t k = 0; k < model.extra_polynomial.coeffs.size(); ++k) {
        std::string name = "extra_" + std::to_string(k) + ".mtx";
        write_matrix_market(dir / name, MatrixHandle(model.extra_polynomial.coeffs[k]));
        j["extra_polynomial"].push_back(name);
    }
    json prov;
    prov["method"] = model.provenance.method;
    prov["finite_block"] = model.provenance.finite_block;
    prov["infinite_block"] = model.provenance.infinite_block;
    prov["converged"] = model.provenance.converged;
    prov["iterations"] = model.provenance.iterations;
    prov["final_shift_change"] = model.provenance.final_shift_change;
    prov["shifts"] = interpolation_to_json(model.provenance.shifts);
    j["provenance"] = prov;
    const auto path = dir / "model.json";
    write_json_file(path, j);
    return path;
}

ReducedModel load_model(const std::filesystem::path& manifest_path) {
    auto path = manifest_path;
    if (std::filesystem::is_directory(path)) path /= "model.json";
    json j = load_json_file(path);
    const auto dir = path.parent_path();
    try {
        if (j.value("kind", "") != "reduced_model") throw ParseError(path.string() + ": not a reduced model");
        ReducedModel m;
        const auto& mats = j.at("matrices");
        m.E = read_matrix_market(dir / mats.at("E").get<std::string>()).to_dense();
        m.A = read_matrix_market(dir / mats.at("A").get<std::string>()).to_dense();
        m.B = read_matrix_market(dir / mats.at("B").get<std::string>()).to_dense();
        m.C = read_matrix_market(dir / mats.at("C").get<std::string>()).to_dense();
        m.D = read_matrix_market(dir / mats.at("D").get<std::string>()).to_dense();
        for (const auto& name : j.at("polynomial"))
            m.polynomial_part.coeffs.push_back(read_matrix_market(dir / name.get<std::string>()).to_dense());
        for (const auto& name : j.at("extra_polynomial"))
            m.extra_polynomial.coeffs.push_back(read_matrix_market(dir / name.get<std::string>()).to_dense());
        const auto& prov = j.at("provenance");
        m.provenance.method = prov.value("method", "");
        m.provenance.finite_block = prov.value("finite_block", Index(-1));
        m.provenance.infinite_block = prov.value("infinite_block", Index(0));
        m.provenance.converged = prov.value("converged", true);
        m.provenance.iterations = prov.value("iterations", 0);
        m.provenance.final_shift_change = prov.value("final_shift_change", 0.0);
        m.provenance.shifts = interpolation_from_json(prov.at("shifts"));
        return m;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

InterpolationData load_interpolation_data(const std::filesystem::path& file) {
    return interpolation_from_json(load_json_file(file));
}

void save_interpolation_data(const InterpolationData& data, const std::filesystem::path& file) {
    write_json_file(file, interpolation_to_json(data));
}

namespace {

struct Rng {
    std::mt19937_64 gen;
    std::normal_distribution<double> normal{0.0, 1.0};
    std::uniform_real_distribution<double> uniform{0.0, 1.0};

    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double n() { return normal(gen); }
    double u() { return uniform(gen); }
    Matrix randn(Index r, Index c) {
        Matrix m(r, c);
        for (Index j = 0; j < c; ++j)
            for (Index i = 0; i < r; ++i) m(i, j) = n();
        return m;
    }
};

// I + S with symmetric ||S|| <= 1/2: positive definite, mildly nonnormal-free.
Matrix spd_near_identity(Rng& rng, Index n) {
    Matrix R = rng.randn(n, n);
    Matrix S = 0.5 * (R + R.transpose());
    const double nrm = S.norm();
    if (nrm > 0.0) S *= 0.5 / nrm;
    return Matrix::Identity(n, n) + S;
}

// Symmetric part strictly negative definite, plus a skew part for complex
// spectra; any pencil (SPD, this) is asymptotically stable.
Matrix stable_matrix(Rng& rng, Index n) {
    Matrix L = rng.randn(n, n);
    Matrix P = L * L.transpose() / static_cast<double>(std::max<Index>(n, 1)) +
               0.5 * Matrix::Identity(n, n);
    Matrix K = rng.randn(n, n);
    return -P + 0.25 * (K - K.transpose());
}

Matrix row_diag_dominant(Rng& rng, Index n) {
    Matrix M = rng.randn(n, n);
    for (Index i = 0; i < n; ++i) {
        double off = M.row(i).cwiseAbs().sum() - std::abs(M(i, i));
        M(i, i) = off + 1.0 + rng.u();
    }
    return M;
}

DescriptorSystem make_ode(const SyntheticParams& prm, Rng& rng) {
    if (prm.n < 1 || prm.m < 1 || prm.p < 1) throw InvalidParams("ode generator needs n, m, p >= 1");
    DescriptorSystem sys;
    sys.E = spd_near_identity(rng, prm.n);
    sys.A = stable_matrix(rng, prm.n);
    sys.B = rng.randn(prm.n, prm.m);
    sys.C = rng.randn(prm.p, prm.n);
    sys.D = prm.d_nonzero ? MatrixHandle(rng.randn(prm.p, prm.m)) : MatrixHandle::Zero(prm.p, prm.m);
    return sys;
}

DescriptorSystem make_index1(const SyntheticParams& prm, Rng& rng) {
    const Index n1 = prm.n1, n2 = prm.n2;
    if (n1 < 1 || n2 < 1 || prm.m < 1 || prm.p < 1) throw InvalidParams("index-1 generator needs n1, n2, m, p >= 1");
    const Index n = n1 + n2;

    // Build the hidden pencil stable first, then back out A11/E11 so the
    // declared invariants hold by construction.
    Matrix Es = spd_near_identity(rng, n1);
    Matrix As = stable_matrix(rng, n1);
    Matrix A22 = row_diag_dominant(rng, n2);
    Matrix A21 = rng.randn(n2, n1);
    Matrix A12 = rng.randn(n1, n2);
    Matrix E12 = 0.5 * rng.randn(n1, n2);
    Eigen::PartialPivLU<Matrix> a22lu(A22);
    Matrix A11 = As + A12 * a22lu.solve(A21);
    Matrix E11 = Es + E12 * a22lu.solve(A21);

    Matrix E = Matrix::Zero(n, n), A(n, n);
    E.topLeftCorner(n1, n1) = E11;
    E.topRightCorner(n1, n2) = E12;
    A.topLeftCorner(n1, n1) = A11;
    A.topRightCorner(n1, n2) = A12;
    A.bottomLeftCorner(n2, n1) = A21;
    A.bottomRightCorner(n2, n2) = A22;

    DescriptorSystem sys;
    sys.structure = StructureKind::Index1Blocks;
    sys.n1 = n1;
    sys.n2 = n2;
    sys.E = E;
    sys.A = A;
    sys.B = rng.randn(n, prm.m);
    sys.C = rng.randn(prm.p, n);
    sys.D = prm.d_nonzero ? MatrixHandle(rng.randn(prm.p, prm.m)) : MatrixHandle::Zero(prm.p, prm.m);
    return sys;
}

DescriptorSystem make_stokes(const SyntheticParams& prm, Rng& rng) {
    const Index n1 = prm.n1, n2 = prm.n2;
    if (n1 < 2 || n2 < 1 || n2 >= n1 || prm.m < 1 || prm.p < 1)
        throw InvalidParams("index-2 generator needs n1 >= 2, 1 <= n2 < n1, m, p >= 1");
    const Index n = n1 + n2;

    Matrix E11 = spd_near_identity(rng, n1);
    Matrix A11 = stable_matrix(rng, n1);
    Matrix A21 = rng.randn(n2, n1);
    // A12 = A21^T M keeps Im(A12) inside Im(A21^T): the hidden dynamics stay
    // provably stable while the coupling is nonsymmetric.
    Matrix M = row_diag_dominant(rng, n2);
    M *= 1.0 / static_cast<double>(n2);
    Matrix A12 = A21.transpose() * M;

    Matrix E = Matrix::Zero(n, n), A = Matrix::Zero(n, n);
    E.topLeftCorner(n1, n1) = E11;
    A.topLeftCorner(n1, n1) = A11;
    A.topRightCorner(n1, n2) = A12;
    A.bottomLeftCorner(n2, n1) = A21;

    DescriptorSystem sys;
    sys.structure = StructureKind::Index2Blocks;
    sys.n1 = n1;
    sys.n2 = n2;
    sys.E = E;
    sys.A = A;
    Matrix B(n, prm.m);
    B.topRows(n1) = rng.randn(n1, prm.m);
    B.bottomRows(n2) = prm.b2_zero ? Matrix::Zero(n2, prm.m) : rng.randn(n2, prm.m);
    sys.B = B;
    sys.C = rng.randn(prm.p, n);
    sys.D = prm.d_nonzero ? MatrixHandle(rng.randn(prm.p, prm.m)) : MatrixHandle::Zero(prm.p, prm.m);
    return sys;
}

// Circuit-flavored sparse variant: banded SPD E11, banded dissipative A11,
// two-entry constraint rows. Stands in for the unavailable source dataset.
DescriptorSystem make_rlc(const SyntheticParams& prm, Rng& rng) {
    const Index n1 = prm.n1, n2 = prm.n2;
    if (n1 < 4 || n2 < 1 || 2 * n2 > n1 || prm.m < 1 || prm.p < 1)
        throw InvalidParams("rlc generator needs n1 >= 4 and n2 <= n1/2");
    const Index n = n1 + n2;

    std::vector<Eigen::Triplet<double>> eT, aT;
    for (Index i = 0; i < n1; ++i) {
        eT.emplace_back(static_cast<int>(i), static_cast<int>(i), 2.0 + rng.u());
        aT.emplace_back(static_cast<int>(i), static_cast<int>(i), -(1.5 + rng.u()));
        if (i + 1 < n1) {
            const double ec = -0.5 - 0.3 * rng.u();
            eT.emplace_back(static_cast<int>(i), static_cast<int>(i + 1), ec);
            eT.emplace_back(static_cast<int>(i + 1), static_cast<int>(i), ec);
            const double as = 0.4 * rng.u();   // symmetric (dissipative) part
            const double ak = 0.8 * rng.u();   // skew part, complex spectrum
            aT.emplace_back(static_cast<int>(i), static_cast<int>(i + 1), -as - ak);
            aT.emplace_back(static_cast<int>(i + 1), static_cast<int>(i), -as + ak);
        }
    }
    // Constraint rows with distinct leading columns (full row rank), and
    // A12 = A21^T diag(+): stable hidden dynamics, nonsymmetric coupling.
    for (Index k = 0; k < n2; ++k) {
        const Index c0 = (k * n1) / n2;
        const double v0 = 1.0 + rng.u(), v1 = -(1.0 + rng.u());
        const double mk = 1.0 + rng.u();
        aT.emplace_back(static_cast<int>(n1 + k), static_cast<int>(c0), v0);
        aT.emplace_back(static_cast<int>(n1 + k), static_cast<int>(c0 + 1), v1);
        aT.emplace_back(static_cast<int>(c0), static_cast<int>(n1 + k), mk * v0);
        aT.emplace_back(static_cast<int>(c0 + 1), static_cast<int>(n1 + k), mk * v1);
    }
    SpMatrix E(n, n), A(n, n);
    E.setFromTriplets(eT.begin(), eT.end());
    A.setFromTriplets(aT.begin(), aT.end());

    std::vector<Eigen::Triplet<double>> bT, cT;
    for (Index col = 0; col < prm.m; ++col) {
        bT.emplace_back(static_cast<int>((n1 / 3 + 7 * col) % n1), static_cast<int>(col), 1.0 + rng.u());
        bT.emplace_back(static_cast<int>((2 * n1 / 3 + 3 * col) % n1), static_cast<int>(col), 0.5 * rng.n());
        if (!prm.b2_zero)
            bT.emplace_back(static_cast<int>(n1 + (col % n2)), static_cast<int>(col), 0.5 + rng.u());
    }
    for (Index row = 0; row < prm.p; ++row) {
        cT.emplace_back(static_cast<int>(row), static_cast<int>((n1 / 4 + 5 * row) % n1), 1.0 + rng.u());
        cT.emplace_back(static_cast<int>(row), static_cast<int>((3 * n1 / 4 + row) % n1), 0.5 * rng.n());
        cT.emplace_back(static_cast<int>(row), static_cast<int>(n1 + (row % n2)), 0.7 + rng.u());
    }
    SpMatrix B(n, prm.m), C(prm.p, n);
    B.setFromTriplets(bT.begin(), bT.end());
    C.setFromTriplets(cT.begin(), cT.end());

    DescriptorSystem sys;
    sys.structure = StructureKind::Index2Blocks;
    sys.n1 = n1;
    sys.n2 = n2;
    sys.E = E;
    sys.A = A;
    sys.B = B;
    sys.C = C;
    sys.D = MatrixHandle::Zero(prm.p, prm.m);
    return sys;
}

}  // namespace

DescriptorSystem generate_synthetic(const std::string& kind, const SyntheticParams& params, std::uint64_t seed) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    DescriptorSystem sys;
    if (kind == "ode")
        sys = make_ode(params, rng);
    else if (kind == "semiexplicit-index1")
        sys = make_index1(params, rng);
    else if (kind == "stokes-index2")
        sys = make_stokes(params, rng);
    else if (kind == "rlc-index2")
        sys = make_rlc(params, rng);
    else
        throw InvalidParams("unknown synthetic kind: " + kind);
    sys.name = kind + "-seed" + std::to_string(seed);
    if (params.sparse && !sys.E.is_sparse()) {
        sys.E = MatrixHandle(sys.E.to_sparse());
        sys.A = MatrixHandle(sys.A.to_sparse());
        sys.B = MatrixHandle(sys.B.to_sparse());
        sys.C = MatrixHandle(sys.C.to_sparse());
    }
    return sys;
}

}  // namespace dsr
