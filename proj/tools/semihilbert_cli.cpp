#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "semihilbert/cso.hpp"
#include "semihilbert/diagonal_model.hpp"
#include "semihilbert/errors.hpp"
#include "semihilbert/json_io.hpp"
#include "semihilbert/numrange.hpp"
#include "semihilbert/spectra.hpp"
#include "semihilbert/verify.hpp"
#include "svg_writer.hpp"

namespace {

using namespace semihilbert;
using nlohmann::json;

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitWrite = 4;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt(Complex z) {
    std::string out = fmt(z.real());
    out += (z.imag() < 0 ? "-" : "+");
    out += fmt(std::abs(z.imag()));
    out += "i";
    return out;
}

json complex_list(const std::vector<Complex>& pts) {
    json out = json::array();
    for (const auto& z : pts) out.push_back({round12(z.real()), round12(z.imag())});
    return out;
}

std::string join_points(const std::vector<Complex>& pts) {
    std::string out;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k) out += ", ";
        out += fmt(pts[k]);
    }
    return out.empty() ? "(empty)" : out;
}

SemiHilbertOperator load_pair(const std::string& a_path, const std::string& t_path,
                              double rank_tol) {
    const ComplexMatrix a = load_matrix_file(a_path);
    const ComplexMatrix t = load_matrix_file(t_path);
    return SemiHilbertOperator(make_space(a, rank_tol), t);
}

bool write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << content;
    return out.good();
}

int cmd_analyze(const std::string& a_path, const std::string& t_path, double rank_tol,
                std::size_t angles, bool as_json) {
    const SemiHilbertOperator op = load_pair(a_path, t_path, rank_tol);

    const bool half = op.in_b_a_half();
    const bool ba = op.in_b_a();
    json out;
    out["dimension"] = op.space().dim();
    out["rank"] = op.space().rank();
    out["in_b_a_half"] = half;
    out["in_b_a_half_residual"] = round12(op.b_a_half_residual());
    out["in_b_a"] = ba;
    out["in_b_a_residual"] = round12(op.b_a_residual());

    const CsoResult cso = induces_cso(op);
    out["induces_cso"] = cso.verdict == CsoVerdict::yes  ? "yes"
                         : cso.verdict == CsoVerdict::no ? "no"
                                                         : "unknown";
    if (half) {
        out["norm_a"] = round12(a_operator_norm(op));
        const SpectralRadius sr = a_spectral_radius(op);
        out["spectral_radius"] = round12(sr.from_spectrum);
        out["spectral_radius_limit"] = round12(sr.from_power_limit);
        out["numerical_radius"] = round12(a_numerical_radius(op, angles));
        out["sigma_a"] = complex_list(a_spectrum(op).points);
        out["sigma_a_point"] = complex_list(a_point_spectrum(op).points);
        out["a_invertible"] = is_a_invertible(op);
    }
    if (ba) {
        out["a_normal"] = is_a_normal(op);
        out["a_hyponormal"] = is_a_hyponormal(op);
        const ConvCompare cc = conv_spectrum_compare(op, angles);
        out["conv_hull_verdict"] = cc.verdict;
        out["conv_hull_distance"] = round12(cc.distance);
        out["err_bound"] = round12(cc.err_bound);
    }

    if (as_json) {
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    std::cout << "dimension: " << op.space().dim() << "\n";
    std::cout << "rank(A): " << op.space().rank() << "\n";
    std::cout << "in B_{A^1/2}: " << (half ? "yes" : "no") << " (residual "
              << fmt(op.b_a_half_residual()) << ")\n";
    std::cout << "in B_A: " << (ba ? "yes" : "no") << " (residual " << fmt(op.b_a_residual())
              << ")\n";
    std::cout << "induces CSO: " << out["induces_cso"].get<std::string>() << "\n";
    if (half) {
        std::cout << "|T|_A: " << fmt(out["norm_a"].get<double>()) << "\n";
        std::cout << "w_A(T): " << fmt(out["numerical_radius"].get<double>()) << "\n";
        std::cout << "r_A(T): " << fmt(out["spectral_radius"].get<double>())
                  << " (power-limit estimate " << fmt(out["spectral_radius_limit"].get<double>())
                  << ")\n";
        std::cout << "A-invertible: " << (out["a_invertible"].get<bool>() ? "yes" : "no") << "\n";
        std::cout << "sigma_A: " << join_points(a_spectrum(op).points) << "\n";
        std::cout << "sigma_Ap: " << join_points(a_point_spectrum(op).points) << "\n";
    } else {
        std::cout << "operator is not A-bounded; spectral data undefined\n";
    }
    if (ba) {
        std::cout << "A-normal: " << (out["a_normal"].get<bool>() ? "yes" : "no") << "\n";
        std::cout << "A-hyponormal: " << (out["a_hyponormal"].get<bool>() ? "yes" : "no") << "\n";
        std::cout << "closure W_A = conv sigma_A: "
                  << (out["conv_hull_verdict"].get<bool>() ? "yes" : "no") << " (distance "
                  << fmt(out["conv_hull_distance"].get<double>()) << ", err bound "
                  << fmt(out["err_bound"].get<double>()) << ")\n";
    }
    return 0;
}

int cmd_range(const std::string& a_path, const std::string& t_path, const std::string& svg_path,
              double rank_tol, std::size_t angles) {
    const SemiHilbertOperator op = load_pair(a_path, t_path, rank_tol);
    const RegionApprox region = numerical_range(op, angles);
    const SpectrumSet spec = a_spectrum(op);

    if (!svg_path.empty()) {
        tools::SvgPlot plot;
        plot.add_polygon(region.outer(), "#888888", "none");
        plot.add_polygon(region.inner(), "#1f6f43", "#58a27a");
        plot.add_markers(spec.points, "#b03030");
        if (!write_text_file(svg_path, plot.render())) {
            std::cerr << "error: cannot write " << svg_path << "\n";
            return kExitWrite;
        }
    }

    json out;
    out["angles"] = region.angles();
    out["err_bound"] = round12(region.err_bound());
    out["degenerate"] = region.degenerate();
    out["inner"] = complex_list(region.inner().vertices());
    out["outer"] = complex_list(region.outer().vertices());
    out["spectrum"] = complex_list(spec.points);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_spectra(const std::string& a_path, const std::string& t_path, double rank_tol,
                bool as_json) {
    const SemiHilbertOperator op = load_pair(a_path, t_path, rank_tol);
    const SpectrumSet full = a_spectrum(op);
    const SpectrumSet point = a_point_spectrum(op);
    const ApproxSpectrum approx = a_approx_spectrum(op);
    const SpectrumSet ess = a_essential_spectrum(op);

    if (as_json) {
        json out;
        out["sigma_a"] = complex_list(full.points);
        out["sigma_a_point"] = complex_list(point.points);
        out["sigma_a_approx"] = complex_list(approx.set.points);
        out["sigma_a_essential"] = complex_list(ess.points);
        json wit = json::array();
        for (const auto& w : approx.witnesses) {
            wit.push_back({{"lambda", {round12(w.lambda.real()), round12(w.lambda.imag())}},
                           {"residual", round12(w.residual)}});
        }
        out["witnesses"] = std::move(wit);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "sigma_A: " << join_points(full.points) << "\n";
    std::cout << "sigma_Ap: " << join_points(point.points) << "\n";
    std::cout << "sigma_Aapp: " << join_points(approx.set.points) << "\n";
    std::cout << "sigma_Aess: " << join_points(ess.points) << "\n";
    double worst = 0.0;
    for (const auto& w : approx.witnesses) worst = std::max(worst, w.residual);
    std::cout << "max witness residual: " << fmt(worst) << "\n";
    return 0;
}

std::string sibling_path(const std::string& input, const std::string& tag) {
    const std::size_t dot = input.find_last_of('.');
    const std::size_t slash = input.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return input + "." + tag;
    }
    return input.substr(0, dot) + "." + tag + input.substr(dot);
}

int cmd_model(const std::string& path, const std::string& action, double eps,
              const std::string& svg_path, std::size_t angles) {
    const DiagonalModel model = load_model_file(path);

    if (action == "spectra") {
        const ModelSpectra ms = model_spectra(model);
        json out;
        out["head_points"] = complex_list(ms.head_points);
        out["entry_prefix"] = complex_list(ms.entry_prefix);
        out["tail_rule"] = ms.tail_rule;
        out["limits"] = complex_list(ms.limits);
        out["point"] = complex_list(ms.point());
        out["full"] = complex_list(ms.full());
        out["approximate"] = complex_list(ms.approximate());
        out["essential"] = complex_list(ms.essential());
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (action == "range") {
        double stability = 0.0;
        const ConvexPolygon hull = wa_closure(model, 4096, &stability, angles);
        if (!svg_path.empty()) {
            tools::SvgPlot plot;
            plot.add_polygon(hull, "#1f6f43", "#58a27a");
            plot.add_markers(model.limits(), "#b03030");
            if (!write_text_file(svg_path, plot.render())) {
                std::cerr << "error: cannot write " << svg_path << "\n";
                return kExitWrite;
            }
        }
        json out;
        out["vertices"] = complex_list(hull.vertices());
        out["doubling_stability"] = round12(stability);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (action == "closed") {
        const ClosednessReport rep = is_wa_closed(model);
        json out;
        out["closed"] = rep.closed;
        out["offending"] = complex_list(rep.offending);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (action == "close") {
        const ClosingPerturbation cp = closing_perturbation(model, eps);
        const std::string out_path = sibling_path(path, "closed");
        try {
            save_model_file(out_path, cp.model);
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitWrite;
        }
        json out;
        out["k_norm"] = round12(cp.k_norm);
        json entries = json::array();
        for (const auto& [n, z] : cp.k_entries) {
            entries.push_back({json(n), json(round12(z.real())), json(round12(z.imag()))});
        }
        out["k_entries"] = std::move(entries);
        out["output"] = out_path;
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (action == "anderson") {
        const AndersonReport rep = anderson_verify(model, angles);
        json out;
        out["range_in_disk"] = rep.range_in_disk;
        out["ess_in_open_disk"] = rep.ess_in_open_disk;
        out["boundary_infinite"] = rep.boundary_infinite;
        out["boundary_evidence"] = rep.boundary_evidence;
        out["all_hypotheses"] = rep.all_hypotheses;
        out["conclusion_checked"] = rep.conclusion_checked;
        if (rep.disk_distance >= 0.0) out["disk_distance"] = round12(rep.disk_distance);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cerr << "error: unknown model action '" << action << "'\n";
    return kExitParse;
}

int cmd_check(const std::string& suite_str, std::uint64_t seed, std::size_t count) {
    const std::optional<Suite> suite = suite_from_name(suite_str);
    if (!suite) {
        std::cerr << "error: unknown suite '" << suite_str << "'\n";
        return kExitParse;
    }
    const SuiteReport report = run_suite(*suite, seed, count);
    std::cout << report_to_json(report);
    std::cerr << "suite " << report.suite << " finished in " << fmt(report.wall_ms) << " ms\n";
    return report.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-Hilbertian operator toolkit"};
    app.require_subcommand(1);

    std::string a_path, t_path, svg_path, model_path, model_action, suite = "golden";
    double rank_tol = 1e-12;
    double eps = 0.1;
    std::size_t angles = 720;
    std::uint64_t seed = 42;
    std::size_t count = 100;
    bool as_json = false;

    auto* analyze = app.add_subcommand("analyze", "classify a weighted pair A, T");
    analyze->add_option("A", a_path, "weight matrix JSON file")->required();
    analyze->add_option("T", t_path, "operator matrix JSON file")->required();
    analyze->add_option("--rank-tol", rank_tol, "relative rank cutoff");
    analyze->add_option("--angles", angles, "sweep directions");
    analyze->add_flag("--json", as_json, "emit JSON");

    auto* range = app.add_subcommand("range", "numerical range plot and polygon data");
    range->add_option("A", a_path, "weight matrix JSON file")->required();
    range->add_option("T", t_path, "operator matrix JSON file")->required();
    range->add_option("--svg", svg_path, "SVG output path");
    range->add_option("--angles", angles, "sweep directions");
    range->add_option("--rank-tol", rank_tol, "relative rank cutoff");

    auto* spectra = app.add_subcommand("spectra", "all spectrum variants of a pair");
    spectra->add_option("A", a_path, "weight matrix JSON file")->required();
    spectra->add_option("T", t_path, "operator matrix JSON file")->required();
    spectra->add_option("--rank-tol", rank_tol, "relative rank cutoff");
    spectra->add_flag("--json", as_json, "emit JSON");

    auto* model = app.add_subcommand("model", "diagonal model analyses");
    model->add_option("file", model_path, "model JSON file")->required();
    model->add_option("action", model_action, "spectra | range | closed | close | anderson")
        ->required();
    model->add_option("--eps", eps, "perturbation budget for close");
    model->add_option("--svg", svg_path, "SVG output path for range");
    model->add_option("--angles", angles, "sweep directions");

    auto* check = app.add_subcommand("check", "randomized theorem suites");
    check->add_option("--suite", suite, "suite name or golden")->required();
    check->add_option("--seed", seed, "base seed");
    check->add_option("--count", count, "instance count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitParse;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(a_path, t_path, rank_tol, angles, as_json);
        if (range->parsed()) return cmd_range(a_path, t_path, svg_path, rank_tol, angles);
        if (spectra->parsed()) return cmd_spectra(a_path, t_path, rank_tol, as_json);
        if (model->parsed()) return cmd_model(model_path, model_action, eps, svg_path, angles);
        if (check->parsed()) return cmd_check(suite, seed, count);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return 0;
}
