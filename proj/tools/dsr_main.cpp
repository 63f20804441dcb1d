// Copyright (c) 2026 The dsr authors.
// SPDX-License-Identifier: Apache-2.0
//
// Batch front door: reduce a descriptor system, sweep frequency responses,
// verify interpolation/optimality residuals, print system info.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "dsr/analysis.hpp"
#include "dsr/index1.hpp"
#include "dsr/index2.hpp"
#include "dsr/interpolation.hpp"
#include "dsr/irka.hpp"
#include "dsr/model_io.hpp"
#include "dsr/spectral.hpp"

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json points_json(const std::vector<dsr::Complex>& pts) {
    json out = json::array();
    for (const auto& p : pts) out.push_back({p.real(), p.imag()});
    return out;
}

void check_method_structure(const std::string& method, const dsr::DescriptorSystem& sys) {
    const bool wants1 = method == "index1" || method == "irka-index1";
    const bool wants2 = method == "index2" || method == "irka-index2";
    if (wants1 && sys.structure != dsr::StructureKind::Index1Blocks)
        throw dsr::InvalidParams("method/structure mismatch: " + method + " requires an index1 manifest");
    if (wants2 && sys.structure != dsr::StructureKind::Index2Blocks)
        throw dsr::InvalidParams("method/structure mismatch: " + method + " requires an index2 manifest");
}

struct ReduceArgs {
    std::string manifest, method = "irka-dae", out = "reduced";
    std::string shifts_file;
    int order = 2, max_iter = 100;
    double shift_tol = 1e-6, defect_retry = 1e-8, verify_tol = 1e-6;
    unsigned threads = 1;
};

int cmd_reduce(const ReduceArgs& args) {
    dsr::DescriptorSystem sys = dsr::load_system(args.manifest);
    check_method_structure(args.method, sys);

    std::optional<dsr::InterpolationData> shifts;
    if (!args.shifts_file.empty()) shifts = dsr::load_interpolation_data(args.shifts_file);

    dsr::IrkaConfig cfg;
    cfg.r = args.order;
    cfg.max_iter = args.max_iter;
    cfg.shift_tol = args.shift_tol;
    cfg.defect_retry = args.defect_retry;
    cfg.threads = args.threads;
    cfg.initial = shifts;

    dsr::ReducedModel model;
    json report;
    bool converged = true;

    if (args.method == "naive" || args.method == "dae" || args.method == "index1" || args.method == "index2") {
        dsr::InterpolationData data =
            shifts ? dsr::conjugate_close(*shifts) : dsr::seed_interpolation_data(sys, args.order);
        if (args.method == "naive") {
            model = dsr::reduce_naive(sys, data);
        } else if (args.method == "dae") {
            dsr::WeierstrassData w = dsr::weierstrass(sys);
            model = dsr::reduce_dae(sys, data, w);
        } else if (args.method == "index1") {
            model = dsr::reduce_index1(sys, data);
        } else {
            model = dsr::reduce_index2(sys, data);
        }
    } else if (args.method == "irka-dae" || args.method == "irka-index1" || args.method == "irka-index2") {
        dsr::IrkaResult result;
        if (args.method == "irka-dae") {
            dsr::WeierstrassData w = dsr::weierstrass(sys);
            result = dsr::irka_dae(sys, w, cfg);
        } else if (args.method == "irka-index1") {
            result = dsr::irka_index1(sys, cfg);
        } else {
            result = dsr::irka_index2(sys, cfg);
        }
        model = result.model;
        converged = result.converged;
        report["converged"] = result.converged;
        report["iterations"] = result.iterations;
        report["final_shift_change"] = result.final_shift_change;
        report["shift_history"] = json::array();
        for (const auto& it : result.shift_history) report["shift_history"].push_back(points_json(it));
    } else {
        throw dsr::InvalidParams("unknown method: " + args.method);
    }

    const auto model_path = dsr::save_model(model, args.out);

    report["method"] = args.method;
    report["model"] = model_path.string();
    report["order"] = model.order();
    dsr::InterpolationReport ver =
        dsr::verify_interpolation(sys, model, model.provenance.shifts, 1, args.verify_tol);
    report["interpolation"] = json::array();
    for (const auto& c : ver.checks)
        report["interpolation"].push_back(
            {{"index", c.index}, {"condition", c.condition}, {"residual", c.residual}, {"pass", c.pass}});
    report["interpolation_pass"] = ver.pass;
    report["interpolation_max_residual"] = ver.max_residual;

    std::ofstream rep(std::filesystem::path(args.out) / "report.json");
    rep << report.dump(2) << "\n";
    std::cout << "model written to " << model_path.string() << (converged ? "" : " (not converged)") << "\n";
    return converged ? 0 : 2;
}

struct BodeArgs {
    std::string manifest, model, out = "bode.csv";
    double wmin = 1e-3, wmax = 1e6;
    int npts = 400;
};

int cmd_bode(const BodeArgs& args) {
    dsr::DescriptorSystem sys = dsr::load_system(args.manifest);
    std::optional<dsr::ReducedModel> model;
    if (!args.model.empty()) model = dsr::load_model(args.model);

    dsr::FrequencyResponse full = dsr::bode_sample(sys, args.wmin, args.wmax, args.npts);
    std::optional<dsr::FrequencyResponse> red;
    if (model) red = dsr::bode_sample(*model, args.wmin, args.wmax, args.npts);

    std::ofstream out(args.out);
    if (!out) throw dsr::IoError("cannot write " + args.out);
    const dsr::Index p = sys.outputs(), m = sys.inputs();
    out << "omega";
    auto emit_header = [&](const std::string& prefix) {
        for (dsr::Index i = 0; i < p; ++i)
            for (dsr::Index j = 0; j < m; ++j) out << "," << prefix << "_" << (i + 1) << "_" << (j + 1);
    };
    emit_header("G_abs");
    if (red) {
        emit_header("Gr_abs");
        emit_header("err_abs");
    }
    out << "\n";
    for (std::size_t k = 0; k < full.omegas.size(); ++k) {
        out << fmt17(full.omegas[k]);
        for (dsr::Index i = 0; i < p; ++i)
            for (dsr::Index j = 0; j < m; ++j) out << "," << fmt17(full.magnitudes[k](i, j));
        if (red) {
            for (dsr::Index i = 0; i < p; ++i)
                for (dsr::Index j = 0; j < m; ++j) out << "," << fmt17(red->magnitudes[k](i, j));
            for (dsr::Index i = 0; i < p; ++i)
                for (dsr::Index j = 0; j < m; ++j)
                    out << "," << fmt17(std::abs(full.values[k](i, j) - red->values[k](i, j)));
        }
        out << "\n";
    }
    std::cout << "bode sweep written to " << args.out << "\n";
    return 0;
}

struct VerifyArgs {
    std::string manifest, model, shifts_file, out;
    double tol = 1e-6;
    bool optimality = false;
};

int cmd_verify(const VerifyArgs& args) {
    dsr::DescriptorSystem sys = dsr::load_system(args.manifest);
    dsr::ReducedModel model = dsr::load_model(args.model);
    dsr::InterpolationData data =
        args.shifts_file.empty() ? model.provenance.shifts : dsr::load_interpolation_data(args.shifts_file);

    json report;
    report["tolerance"] = args.tol;
    dsr::InterpolationReport ver = dsr::verify_interpolation(sys, model, data, 1, args.tol);
    report["interpolation"] = json::array();
    for (const auto& c : ver.checks)
        report["interpolation"].push_back(
            {{"index", c.index}, {"condition", c.condition}, {"residual", c.residual}, {"pass", c.pass}});
    bool pass = ver.pass;

    if (args.optimality) {
        dsr::OptimalityReport opt = dsr::check_h2_first_order(sys, model, args.tol);
        report["optimality"] = json::array();
        for (const auto& c : opt.checks)
            report["optimality"].push_back({{"index", c.index},
                                            {"point", {c.point.real(), c.point.imag()}},
                                            {"right", c.right_res},
                                            {"left", c.left_res},
                                            {"hermite", c.hermite_res},
                                            {"pass", c.pass}});
        pass = pass && opt.pass;
    }
    report["pass"] = pass;

    if (args.out.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(args.out);
        out << report.dump(2) << "\n";
        std::cout << "verification report written to " << args.out << "\n";
    }
    return 0;
}

struct InfoArgs {
    std::string manifest;
    bool as_json = false;
};

int cmd_info(const InfoArgs& args) {
    dsr::DescriptorSystem sys = dsr::load_system(args.manifest);
    json j;
    j["name"] = sys.name;
    j["order"] = sys.order();
    j["inputs"] = sys.inputs();
    j["outputs"] = sys.outputs();
    j["structure"] = dsr::to_string(sys.structure);
    if (sys.structure != dsr::StructureKind::General) {
        j["n1"] = sys.n1;
        j["n2"] = sys.n2;
    }
    j["nnz_E"] = sys.E.nonzeros();
    j["nnz_A"] = sys.A.nonzeros();

    bool spectral_done = false;
    if (sys.order() <= dsr::dense_limit()) {
        dsr::WeierstrassData w = dsr::weierstrass(sys);
        auto [sp, poly] = dsr::split_transfer(sys, w);
        j["n_finite"] = w.n_f;
        j["n_infinite"] = w.n_inf;
        j["index"] = w.nu;
        j["polynomial_degree"] = poly.degree();
        spectral_done = true;
    }

    if (args.as_json) {
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "name:      " << j["name"].get<std::string>() << "\n"
              << "order:     " << sys.order() << "  (inputs " << sys.inputs() << ", outputs " << sys.outputs()
              << ")\n"
              << "structure: " << dsr::to_string(sys.structure);
    if (sys.structure != dsr::StructureKind::General) std::cout << "  (n1 " << sys.n1 << ", n2 " << sys.n2 << ")";
    std::cout << "\nnnz:       E " << sys.E.nonzeros() << ", A " << sys.A.nonzeros() << "\n";
    if (spectral_done) {
        std::cout << "finite/infinite dims: " << j["n_finite"].get<dsr::Index>() << " / "
                  << j["n_infinite"].get<dsr::Index>() << "\n"
                  << "pencil index:        " << j["index"].get<int>() << "\n"
                  << "polynomial degree:   " << j["polynomial_degree"].get<int>() << "\n";
    } else {
        std::cout << "spectral analysis skipped (order above dense limit " << dsr::dense_limit() << ")\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interpolatory model reduction for descriptor systems"};
    app.require_subcommand(1);

    ReduceArgs rargs;
    CLI::App* reduce = app.add_subcommand("reduce", "reduce a system to a small surrogate model");
    reduce->add_option("--manifest", rargs.manifest, "system manifest (JSON)")->required();
    reduce->add_option("--method", rargs.method,
                       "naive|dae|index1|index2|irka-dae|irka-index1|irka-index2");
    reduce->add_option("--order,-r", rargs.order, "target order of the strictly proper part");
    reduce->add_option("--shifts", rargs.shifts_file, "interpolation data (JSON); seeded when absent");
    reduce->add_option("--out,-o", rargs.out, "output directory");
    reduce->add_option("--max-iter", rargs.max_iter, "IRKA iteration cap");
    reduce->add_option("--shift-tol", rargs.shift_tol, "relative shift-change tolerance");
    reduce->add_option("--defect-retry", rargs.defect_retry, "retry perturbation magnitude");
    reduce->add_option("--verify-tol", rargs.verify_tol, "report tolerance for interpolation residuals");
    reduce->add_option("--threads", rargs.threads, "concurrent shifted solves");

    BodeArgs bargs;
    CLI::App* bode = app.add_subcommand("bode", "frequency response sweep to CSV");
    bode->add_option("--manifest", bargs.manifest, "system manifest (JSON)")->required();
    bode->add_option("--model", bargs.model, "reduced model directory (optional)");
    bode->add_option("--out,-o", bargs.out, "output CSV path");
    bode->add_option("--wmin", bargs.wmin, "grid start (rad/s)");
    bode->add_option("--wmax", bargs.wmax, "grid end (rad/s)");
    bode->add_option("--npts", bargs.npts, "grid points");

    VerifyArgs vargs;
    CLI::App* verify = app.add_subcommand("verify", "check interpolation/optimality residuals");
    verify->add_option("--manifest", vargs.manifest, "system manifest (JSON)")->required();
    verify->add_option("--model", vargs.model, "reduced model directory")->required();
    verify->add_option("--shifts", vargs.shifts_file, "interpolation data (defaults to model provenance)");
    verify->add_option("--tol", vargs.tol, "pass tolerance");
    verify->add_flag("--optimality", vargs.optimality, "also check first-order H2 conditions");
    verify->add_option("--out,-o", vargs.out, "report path (stdout when absent)");

    InfoArgs iargs;
    CLI::App* info = app.add_subcommand("info", "print system facts");
    info->add_option("--manifest", iargs.manifest, "system manifest (JSON)")->required();
    info->add_flag("--json", iargs.as_json, "JSON output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (reduce->parsed()) return cmd_reduce(rargs);
        if (bode->parsed()) return cmd_bode(bargs);
        if (verify->parsed()) return cmd_verify(vargs);
        if (info->parsed()) return cmd_info(iargs);
    } catch (const dsr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
