#include "semihilbert/verify.hpp"

#include <chrono>
#include <limits>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "semihilbert/cso.hpp"
#include "semihilbert/diagonal_model.hpp"
#include "semihilbert/eig.hpp"
#include "semihilbert/errors.hpp"
#include "semihilbert/generators.hpp"
#include "semihilbert/numrange.hpp"
#include "semihilbert/parallel.hpp"
#include "semihilbert/spectra.hpp"

namespace semihilbert {

namespace {

struct InstanceOutcome {
    std::optional<std::string> failure;
    double residual = 0.0;
};

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

SpacePtr sized_space(Rng& rng, std::size_t n_max = 12, std::size_t rank_max = 0) {
    std::uniform_int_distribution<std::size_t> nd(2, n_max);
    const std::size_t n = nd(rng);
    std::size_t cap = rank_max == 0 ? n : std::min(rank_max, n);
    std::uniform_int_distribution<std::size_t> rd(1, cap);
    return random_space(n, rd(rng), rng);
}

DiagonalModel ex1_model() {
    return DiagonalModel(std::nullopt, std::nullopt, SeqExpr::parse("1/n"),
                         SeqExpr::parse("exp(i*(pi/4 + pi/(8*n)))"),
                         {std::polar(1.0, std::numbers::pi / 4.0)});
}

DiagonalModel anderson_positive_model() {
    return DiagonalModel(ComplexMatrix::identity(2),
                         ComplexMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}}),
                         SeqExpr::parse("1/n"), SeqExpr::parse("(1/2)*exp(i*pi/n)"),
                         {Complex(0.5, 0.0)});
}

// ---- adjoint: the seminorm-equality criterion and adjoint compression ----

InstanceOutcome adjoint_instance(std::size_t index, Rng& rng) {
    InstanceOutcome out;
    const SpacePtr space = sized_space(rng);
    const bool want_normal = index % 2 == 0;
    const SemiHilbertOperator op =
        want_normal ? random_a_normal(space, rng) : random_a_nonnormal(space, rng);

    const ComplexMatrix& a = space->a();
    const ComplexMatrix& t = op.matrix();
    const SemiHilbertOperator adj = sharp(op);
    const ComplexMatrix& ts = adj.matrix();

    const double scale =
        std::max(1.0, a.frobenius_norm() * std::max(1.0, std::pow(t.frobenius_norm(), 2)));
    const double eq_residual =
        (t.adjoint() * (a * t) - ts.adjoint() * (a * ts)).frobenius_norm() / scale;
    const bool seminorms_equal = eq_residual <= 1e-9;
    const bool normal = is_a_normal(op);
    if (seminorms_equal != normal) {
        out.failure = "seminorm equality and weighted normality disagree, residual " +
                      fmt(eq_residual);
        return out;
    }
    if (normal) out.residual = std::max(out.residual, eq_residual);

    const ComplexMatrix ms = compress(adj);
    const ComplexMatrix m = compress(op);
    const double adj_residual =
        (ms - m.adjoint()).frobenius_norm() / std::max(1.0, m.frobenius_norm());
    if (adj_residual > 1e-8) {
        out.failure = "adjoint does not compress to the conjugate transpose, residual " +
                      fmt(adj_residual);
        return out;
    }
    out.residual = std::max(out.residual, adj_residual);
    return out;
}

// ---- normal: shifts, inverses, radius chain ----

InstanceOutcome normal_instance(std::size_t index, Rng& rng) {
    InstanceOutcome out;
    const SpacePtr space = sized_space(rng);

    if (index % 3 == 2) {
        const SemiHilbertOperator op = random_a_nonnormal(space, rng);
        if (space->rank() >= 2 && is_a_normal(op)) {
            out.failure = "nonnormal construction classified as weighted normal";
        }
        return out;
    }

    const SemiHilbertOperator op = random_a_normal(space, rng);
    const ANormalDiagnostics diag = a_normal_diagnostics(op);
    if (!diag.refined || diag.compressed_residual > 1e-9) {
        out.failure = "normal lift failed the normality criteria, residuals " +
                      fmt(diag.matrix_residual) + " / " + fmt(diag.compressed_residual);
        return out;
    }
    out.residual = std::max(diag.matrix_residual, diag.compressed_residual);

    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int k = 0; k < 3; ++k) {
        const Complex lambda(coord(rng), coord(rng));
        ComplexMatrix shifted = op.matrix();
        for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= lambda;
        const SemiHilbertOperator sh(space, shifted);
        if (!is_a_normal(sh)) {
            out.failure = "translate of a weighted normal operator lost normality";
            return out;
        }
    }

    const double norm = a_operator_norm(op);
    const SpectralRadius sr = a_spectral_radius(op);
    const double w = a_numerical_radius(op, 512);
    const double scale = std::max(1.0, norm);
    const double radius_gap = std::abs(sr.from_spectrum - norm) / scale;
    const double wgap = std::abs(w - norm) / scale;
    if (radius_gap > 1e-7 || wgap > 1e-7) {
        out.failure = "radius chain broke: r=" + fmt(sr.from_spectrum) + " w=" + fmt(w) +
                      " norm=" + fmt(norm);
        return out;
    }
    out.residual = std::max({out.residual, radius_gap, wgap});

    if (is_a_invertible(op)) {
        const SemiHilbertOperator inv = a_inverse(op);
        if (!is_a_normal(inv)) {
            out.failure = "inverse of a weighted normal operator lost normality";
            return out;
        }
        const ComplexMatrix& a = space->a();
        const double inv_res = (a * (op.matrix() * inv.matrix()) - a).frobenius_norm() /
                               std::max(1.0, a.frobenius_norm());
        if (inv_res > 1e-8) {
            out.failure = "weighted inverse residual " + fmt(inv_res);
            return out;
        }
        out.residual = std::max(out.residual, inv_res);
    }
    return out;
}

// ---- spectra: point/full/approximate coincidences, invertibility margins ----

InstanceOutcome spectra_instance(std::size_t index, Rng& rng) {
    InstanceOutcome out;
    const SpacePtr space = sized_space(rng);
    const std::size_t r = space->rank();
    const SemiHilbertOperator op = random_b_a_member(space, random_ginibre(r, rng), rng);

    const SpectrumSet full = a_spectrum(op);
    const SpectrumSet pt = a_point_spectrum(op);
    const double scale = 1.0 + op.compressed().frobenius_norm();
    const double match = multiset_match_distance(full.points, pt.points);
    if (match > 1e-7 * scale) {
        out.failure = "point and full spectra diverge by " + fmt(match);
        return out;
    }
    out.residual = std::max(out.residual, match);

    const ApproxSpectrum approx = a_approx_spectrum(op);
    const double amatch = multiset_match_distance(full.points, approx.set.points);
    if (amatch > 1e-7 * scale) {
        out.failure = "approximate spectrum diverges by " + fmt(amatch);
        return out;
    }
    for (const auto& w : approx.witnesses) {
        if (w.residual > 1e-6 * scale) {
            out.failure = "approximate witness residual " + fmt(w.residual);
            return out;
        }
        out.residual = std::max(out.residual, w.residual);
    }

    const RegionApprox region = numerical_range(op, 512);
    for (const auto& lambda : full.points) {
        if (contains_point(region, lambda, 1e-7) == PointLocation::outside) {
            out.failure = "spectrum point escaped the numerical range closure";
            return out;
        }
    }

    // Invertibility on and off the spectrum.
    for (std::size_t k = 0; k < std::min<std::size_t>(full.points.size(), 2); ++k) {
        ComplexMatrix shifted = op.matrix();
        for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= full.points[k];
        bool threw = false;
        try {
            a_inverse(SemiHilbertOperator(space, shifted), 1e-8);
        } catch (const NotAInvertibleError&) {
            threw = true;
        }
        if (!threw) {
            out.failure = "translate by a spectrum point was invertible";
            return out;
        }
    }
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int k = 0; k < 2; ++k) {
        Complex mu;
        bool found = false;
        for (int tries = 0; tries < 64 && !found; ++tries) {
            mu = std::polar(4.0 * scale * (0.25 + 0.25 * k), angle(rng));
            double dist = std::numeric_limits<double>::infinity();
            for (const auto& l : full.points) dist = std::min(dist, std::abs(mu - l));
            found = dist > 0.1 * scale;
        }
        if (!found) continue;
        ComplexMatrix shifted = op.matrix();
        for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= mu;
        const SemiHilbertOperator sh(space, shifted);
        const SemiHilbertOperator inv = a_inverse(sh);
        const ComplexMatrix& a = space->a();
        const double res = (a * (sh.matrix() * inv.matrix()) - a).frobenius_norm() /
                           std::max(1.0, a.frobenius_norm() * (1.0 + scale));
        if (res > 1e-8) {
            out.failure = "off-spectrum inverse residual " + fmt(res);
            return out;
        }
        out.residual = std::max(out.residual, res);
    }

    // Commuting products are invertible exactly when both factors are.
    const ComplexMatrix m1 = op.compressed();
    ComplexMatrix m2 = m1 * m1;
    const double shift_re = (index % 2 == 0) ? 0.7 : 0.0;
    for (std::size_t i = 0; i < r; ++i) m2(i, i) += Complex(shift_re, 0.3);
    const SemiHilbertOperator t1 = lift(space, m1);
    const SemiHilbertOperator t2 = lift(space, m2);
    const SemiHilbertOperator prod(space, t1.matrix() * t2.matrix());
    const bool both = is_a_invertible(t1, 1e-9) && is_a_invertible(t2, 1e-9);
    const bool prod_inv = is_a_invertible(prod, 1e-9);
    // Margins below the decision tolerance would make the equivalence
    // ill-posed; skip those draws.
    const double margin1 = smallest_singular_value(m1);
    const double margin2 = smallest_singular_value(m2);
    if (margin1 > 1e-6 * scale && margin2 > 1e-6 * scale && both != prod_inv) {
        out.failure = "commuting product invertibility mismatch";
        return out;
    }

    // Translates beyond the operator seminorm are always invertible.
    const double lam = a_operator_norm(op) * 1.5 + 0.5;
    ComplexMatrix shifted = -op.matrix();
    for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += lam;
    if (!is_a_invertible(SemiHilbertOperator(space, shifted))) {
        out.failure = "translate beyond the seminorm was not invertible";
        return out;
    }
    return out;
}

// ---- range: hull identity for weighted normal operators ----

InstanceOutcome range_instance(std::size_t, Rng& rng) {
    InstanceOutcome out;
    const SpacePtr space = sized_space(rng);
    const SemiHilbertOperator op = random_a_normal(space, rng);

    const ConvCompare cc = conv_spectrum_compare(op, 2048, 1e-6);
    if (!cc.verdict || cc.distance > 1e-6) {
        out.failure = "range closure vs spectrum hull distance " + fmt(cc.distance);
        return out;
    }
    out.residual = cc.distance;

    const RegionApprox region = numerical_range(op, 512);
    const SpectrumSet pts = a_point_spectrum(op);
    for (const auto& lambda : pts.points) {
        if (contains_point(region, lambda, 1e-7) == PointLocation::outside) {
            out.failure = "point spectrum escaped the numerical range";
            return out;
        }
    }
    return out;
}

// ---- mapping: polynomial spectral mapping ----

InstanceOutcome mapping_instance(std::size_t, Rng& rng) {
    InstanceOutcome out;
    const SpacePtr space = sized_space(rng);
    const SemiHilbertOperator op = random_b_a_member(space, random_ginibre(space->rank(), rng), rng);

    std::uniform_int_distribution<int> deg_dist(1, 3);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const int deg = deg_dist(rng);
    std::vector<Complex> coeffs(static_cast<std::size_t>(deg) + 1);
    for (auto& c : coeffs) c = Complex(coef(rng), coef(rng));
    if (std::abs(coeffs.back()) < 0.3) coeffs.back() += Complex(0.5, 0.5);

    if (!spectral_mapping_check(op, coeffs, 1e-7)) {
        out.failure = "spectral mapping mismatch at degree " + std::to_string(deg);
    }
    return out;
}

// ---- cso: weighted normal operators induce complex symmetric compressions ----

InstanceOutcome cso_instance(std::size_t index, Rng& rng) {
    InstanceOutcome out;
    const SpacePtr space = sized_space(rng, 8, 6);
    const SemiHilbertOperator op = random_a_normal(space, rng);

    const CsoResult res = induces_cso(op);
    if (res.verdict != CsoVerdict::yes || !res.witness || !res.certificate) {
        out.failure = "normal lift not recognized as inducing a complex symmetric operator (" +
                      res.reason + ")";
        return out;
    }
    const double scale = 1.0 + op.compressed().frobenius_norm();
    if (res.certificate->symmetry_residual > 1e-6 * scale ||
        res.certificate->orthonormal_residual > 1e-6) {
        out.failure = "symmetric-form certificate residuals " +
                      fmt(res.certificate->symmetry_residual) + " / " +
                      fmt(res.certificate->orthonormal_residual);
        return out;
    }
    out.residual = std::max(res.certificate->symmetry_residual,
                            res.certificate->orthonormal_residual);

    if (index % 4 == 0) {
        // Verdict is a unitary invariant of the compression.
        const std::size_t r = space->rank();
        const ComplexMatrix w = random_unitary(r, rng);
        const ComplexMatrix conjugated = w * op.compressed() * w.adjoint();
        const CsoResult res2 = matrix_induces_cso(conjugated);
        if (res2.verdict != CsoVerdict::yes) {
            out.failure = "verdict changed under unitary similarity";
            return out;
        }
    }
    return out;
}

// ---- model: diagonal example spectra and truncation convergence ----

InstanceOutcome model_instance(std::size_t index, Rng& rng) {
    InstanceOutcome out;
    const DiagonalModel ex1 = ex1_model();
    const ModelSpectra ms = model_spectra(ex1, 16);

    double worst = 0.0;
    for (std::size_t n = 1; n <= ms.entry_prefix.size(); ++n) {
        const double theta = std::numbers::pi / 4.0 + std::numbers::pi / (8.0 * double(n));
        worst = std::max(worst,
                         std::abs(ms.entry_prefix[n - 1] - std::polar(1.0, theta)));
    }
    if (worst > 1e-12) {
        out.failure = "diagonal entries drifted from the rule, residual " + fmt(worst);
        return out;
    }
    if (ms.essential().size() != 1 ||
        std::abs(ms.essential().front() - std::polar(1.0, std::numbers::pi / 4.0)) > 1e-12) {
        out.failure = "essential spectrum is not the declared limit";
        return out;
    }
    out.residual = worst;

    const std::size_t n_trunc = 4 + (index % 4) * 2;
    const SemiHilbertOperator trunc = truncate(ex1, n_trunc);
    if (!is_a_normal(trunc)) {
        out.failure = "diagonal truncation not weighted normal";
        return out;
    }
    const SpectrumSet spec = a_spectrum(trunc);
    std::vector<Complex> expected;
    for (std::size_t n = 1; n <= n_trunc; ++n) expected.push_back(ex1.lambda_at(long(n)));
    const double match = multiset_match_distance(spec.points, expected);
    if (match > 1e-9) {
        out.failure = "truncation spectrum mismatch " + fmt(match);
        return out;
    }
    out.residual = std::max(out.residual, match);

    // Hull convergence as the section doubles.
    const std::size_t base = 64 << (index % 3);
    double stability = 0.0;
    wa_closure(ex1, base, &stability);
    double stability2 = 0.0;
    wa_closure(ex1, 2 * base, &stability2);
    if (!(stability2 <= stability + 1e-12)) {
        out.failure = "hull stability did not improve on doubling";
        return out;
    }

    // A constant-tail model keeps every spectrum at the constant.
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    const Complex c(coord(rng), coord(rng));
    std::ostringstream expr;
    expr.precision(17);
    expr << "(" << c.real() << ") + i*(" << c.imag() << ")";
    const DiagonalModel constant(std::nullopt, std::nullopt, SeqExpr::parse("1/n"),
                                 SeqExpr::parse(expr.str()), {c});
    const ModelSpectra cs = model_spectra(constant, 4);
    for (const auto& z : cs.full()) {
        if (std::abs(z - c) > 1e-12) {
            out.failure = "constant model spectra strayed from the constant";
            return out;
        }
    }
    return out;
}

// ---- anderson: the disk criterion and its failure modes ----

InstanceOutcome anderson_instance(std::size_t index, Rng& rng) {
    InstanceOutcome out;
    if (index % 3 == 0) {
        const AndersonReport rep = anderson_verify(anderson_positive_model());
        if (!rep.all_hypotheses || !rep.conclusion_checked) {
            out.failure = "positive instance failed, disk distance " + fmt(rep.disk_distance);
            return out;
        }
        out.residual = rep.disk_distance;
        return out;
    }
    if (index % 3 == 1) {
        const AndersonReport rep = anderson_verify(ex1_model());
        if (rep.ess_in_open_disk || rep.conclusion_checked) {
            out.failure = "boundary limit point not flagged against the open-disk hypothesis";
        }
        return out;
    }
    // Random strictly-inside tail: hypotheses must not all hold unless
    // the closure is the full disk.
    std::uniform_real_distribution<double> rad(0.2, 0.8);
    const double rho = rad(rng);
    std::ostringstream expr;
    expr.precision(17);
    expr << rho << "*exp(i*pi/n)";
    const DiagonalModel inside(std::nullopt, std::nullopt, SeqExpr::parse("1/n"),
                               SeqExpr::parse(expr.str()), {Complex(rho, 0.0)});
    const AndersonReport rep = anderson_verify(inside);
    if (rep.all_hypotheses && !rep.conclusion_checked) {
        out.failure = "hypotheses held on a non-disk hull";
    }
    return out;
}

// ---- perturb: closing perturbations stay finite rank and small ----

InstanceOutcome perturb_instance(std::size_t index, Rng& rng) {
    InstanceOutcome out;
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> coord(-0.5, 0.5);
    std::uniform_real_distribution<double> eps_dist(0.05, 0.2);
    const double alpha = angle(rng);
    const Complex mu(coord(rng), coord(rng));

    std::ostringstream expr;
    expr.precision(17);
    expr << "(" << mu.real() << ") + i*(" << mu.imag() << ") + exp(i*(" << alpha << "))/n";
    const DiagonalModel model(std::nullopt, std::nullopt, SeqExpr::parse("1/n"),
                              SeqExpr::parse(expr.str()), {mu});

    const ClosednessReport before = is_wa_closed(model);
    if (before.closed || before.offending.empty()) {
        out.failure = "ray model unexpectedly closed";
        return out;
    }

    const double eps = eps_dist(rng);
    const ClosingPerturbation cp = closing_perturbation(model, eps);
    if (cp.k_norm >= eps) {
        out.failure = "perturbation norm " + fmt(cp.k_norm) + " reached eps " + fmt(eps);
        return out;
    }
    if (cp.k_entries.size() > before.offending.size()) {
        out.failure = "perturbation rank exceeded the offending count";
        return out;
    }
    const ClosednessReport after = is_wa_closed(cp.model);
    if (!after.closed) {
        out.failure = "closure still open after the perturbation";
        return out;
    }
    out.residual = cp.k_norm;

    if (index % 2 == 1) {
        // Finite sections always have closed ranges: the two-sided
        // approximation collapses, so the zero perturbation suffices.
        const SpacePtr space = sized_space(rng, 8);
        const SemiHilbertOperator op = random_a_normal(space, rng);
        const RegionApprox region = numerical_range(op, 1024);
        const double scale = 1.0 + op.compressed().frobenius_norm();
        if (region.err_bound() > 1e-7 * scale) {
            out.failure = "finite section range closure gap " + fmt(region.err_bound());
            return out;
        }
    }
    return out;
}

using InstanceFn = InstanceOutcome (*)(std::size_t, Rng&);

InstanceFn instance_fn(Suite suite) {
    switch (suite) {
        case Suite::adjoint: return &adjoint_instance;
        case Suite::normal: return &normal_instance;
        case Suite::spectra: return &spectra_instance;
        case Suite::range: return &range_instance;
        case Suite::mapping: return &mapping_instance;
        case Suite::cso: return &cso_instance;
        case Suite::model: return &model_instance;
        case Suite::anderson: return &anderson_instance;
        case Suite::perturb: return &perturb_instance;
        case Suite::golden: return nullptr;
    }
    return nullptr;
}

} // namespace

std::optional<Suite> suite_from_name(std::string_view name) {
    if (name == "adjoint") return Suite::adjoint;
    if (name == "normal") return Suite::normal;
    if (name == "spectra") return Suite::spectra;
    if (name == "range") return Suite::range;
    if (name == "mapping") return Suite::mapping;
    if (name == "cso") return Suite::cso;
    if (name == "model") return Suite::model;
    if (name == "anderson") return Suite::anderson;
    if (name == "perturb") return Suite::perturb;
    if (name == "golden") return Suite::golden;
    return std::nullopt;
}

std::string suite_name(Suite s) {
    switch (s) {
        case Suite::adjoint: return "adjoint";
        case Suite::normal: return "normal";
        case Suite::spectra: return "spectra";
        case Suite::range: return "range";
        case Suite::mapping: return "mapping";
        case Suite::cso: return "cso";
        case Suite::model: return "model";
        case Suite::anderson: return "anderson";
        case Suite::perturb: return "perturb";
        case Suite::golden: return "golden";
    }
    return "unknown";
}

SuiteReport run_suite(Suite suite, std::uint64_t seed, std::size_t count) {
    if (suite == Suite::golden) return golden_examples();
    const InstanceFn fn = instance_fn(suite);
    if (!fn) throw Error("run_suite: unknown suite");

    const auto start = std::chrono::steady_clock::now();
    std::vector<InstanceOutcome> outcomes(count);
    std::vector<std::uint64_t> seeds(count);
    parallel_for(count, [&](std::size_t i) {
        seeds[i] = mix_seed(seed, i);
        Rng rng(seeds[i]);
        try {
            outcomes[i] = fn(i, rng);
        } catch (const std::exception& e) {
            outcomes[i].failure = std::string("exception: ") + e.what();
        }
    });

    SuiteReport report;
    report.suite = suite_name(suite);
    report.instances = count;
    for (std::size_t i = 0; i < count; ++i) {
        report.max_residual = std::max(report.max_residual, outcomes[i].residual);
        if (outcomes[i].failure) {
            report.failures.push_back({i, seeds[i], *outcomes[i].failure});
        }
    }
    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return report;
}

namespace {

void golden_check(SuiteReport& report, std::size_t index, bool ok, double residual,
                  const std::string& what) {
    report.instances += 1;
    report.max_residual = std::max(report.max_residual, residual);
    if (!ok) report.failures.push_back({index, 0, what + " (residual " + fmt(residual) + ")"});
}

} // namespace

SuiteReport golden_examples() {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport report;
    report.suite = "golden";
    std::size_t idx = 0;

    try {
        // Rank-one weight on two dimensions with the worked 2x2 operator.
        const ComplexMatrix a2 = ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
        const ComplexMatrix t2 = ComplexMatrix::from_rows({{2.0, 2.0}, {0.0, 0.0}});
        const SpacePtr s2 = make_space(a2);
        const SemiHilbertOperator op2(s2, t2);
        const SemiHilbertOperator adj2 = sharp(op2);

        const ComplexMatrix expected_sharp = ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
        golden_check(report, idx++, (adj2.matrix() - expected_sharp).frobenius_norm() <= 1e-12,
                     (adj2.matrix() - expected_sharp).frobenius_norm(), "2x2 adjoint matrix");

        const ComplexMatrix st = adj2.matrix() * t2;
        const ComplexMatrix ts = t2 * adj2.matrix();
        const ComplexMatrix expected_st = ComplexMatrix::from_rows({{2.0, 2.0}, {2.0, 2.0}});
        const ComplexMatrix expected_ts = ComplexMatrix::from_rows({{4.0, 4.0}, {0.0, 0.0}});
        const ComplexMatrix expected_a_both = ComplexMatrix::from_rows({{4.0, 4.0}, {4.0, 4.0}});
        golden_check(report, idx++, (st - expected_st).frobenius_norm() <= 1e-12,
                     (st - expected_st).frobenius_norm(), "2x2 sharp-T product");
        golden_check(report, idx++, (ts - expected_ts).frobenius_norm() <= 1e-12,
                     (ts - expected_ts).frobenius_norm(), "2x2 T-sharp product");
        golden_check(report, idx++,
                     (a2 * st - expected_a_both).frobenius_norm() <= 1e-12 &&
                         (a2 * ts - expected_a_both).frobenius_norm() <= 1e-12,
                     std::max((a2 * st - expected_a_both).frobenius_norm(),
                              (a2 * ts - expected_a_both).frobenius_norm()),
                     "2x2 weighted products agree");
        golden_check(report, idx++, is_a_normal(op2) && (st - ts).frobenius_norm() > 1.0,
                     0.0, "2x2 weighted normal with distinct unweighted products");
        golden_check(report, idx++, std::abs(a_operator_norm(op2) - 2.0) <= 1e-12,
                     std::abs(a_operator_norm(op2) - 2.0), "2x2 operator seminorm");
        const SpectrumSet spec2 = a_spectrum(op2);
        golden_check(report, idx++,
                     spec2.points.size() == 1 && std::abs(spec2.points[0] - Complex(2.0)) <= 1e-12,
                     spec2.points.empty() ? 1.0 : std::abs(spec2.points[0] - Complex(2.0)),
                     "2x2 weighted spectrum");

        // Block-diagonal 5x5 example: triangle range without normality.
        const ComplexMatrix a5 = ComplexMatrix::diagonal(std::vector<double>{1, 1, 2, 1, 1});
        ComplexMatrix t5(5, 5);
        t5(0, 1) = 1.0;
        t5(2, 2) = Complex(0.0, 2.0);
        t5(3, 3) = Complex(-1.5, -1.0);
        t5(4, 4) = Complex(1.5, -1.0);
        const SpacePtr s5 = make_space(a5);
        const SemiHilbertOperator op5(s5, t5);

        const std::vector<Complex> tri = {Complex(0.0, 2.0), Complex(-1.5, -1.0),
                                          Complex(1.5, -1.0)};
        const ConvexPolygon triangle = convex_hull(tri);
        const RegionApprox region5 = numerical_range(op5, 1440);
        const double tri_dist = hausdorff(region5.inner(), triangle);
        golden_check(report, idx++, tri_dist <= region5.err_bound() + 1e-8, tri_dist,
                     "5x5 range is the triangle");
        golden_check(report, idx++, !is_a_normal(op5), 0.0, "5x5 operator is not weighted normal");
        const ConvCompare cc5 = conv_spectrum_compare(op5, 1440);
        golden_check(report, idx++, cc5.verdict, cc5.distance,
                     "5x5 range closure equals the spectrum hull");
        golden_check(report, idx++, std::abs(a_numerical_radius(op5, 1440) - 2.0) <= 1e-9,
                     std::abs(a_numerical_radius(op5, 1440) - 2.0), "5x5 numerical radius");

        // Rank-one weight turns the non-symmetric 3x3 into a scalar.
        const ComplexMatrix a3 = ComplexMatrix::diagonal(std::vector<double>{1, 0, 0});
        const ComplexMatrix t3 =
            ComplexMatrix::from_rows({{1, 1, 0}, {0, 0, 0}, {0, 0, 1}});
        const SemiHilbertOperator op3(make_space(a3), t3);
        const CsoResult cso_yes = induces_cso(op3);
        golden_check(report, idx++, cso_yes.verdict == CsoVerdict::yes, 0.0,
                     "rank-one weight induces a complex symmetric compression");

        const ComplexMatrix t3b =
            ComplexMatrix::from_rows({{1, 1, 0}, {0, 0, 2}, {0, 0, 1}});
        const SemiHilbertOperator op3b(make_space(ComplexMatrix::identity(3)), t3b);
        const CsoResult cso_no = induces_cso(op3b);
        golden_check(report, idx++, cso_no.verdict == CsoVerdict::no, 0.0,
                     "unequal superdiagonal weights are not complex symmetric");

        // Diagonal model: spectra, closedness and the closing perturbation.
        const DiagonalModel ex1 = ex1_model();
        const ModelSpectra ms = model_spectra(ex1, 8);
        const Complex lambda0 = std::polar(1.0, std::numbers::pi / 4.0);
        double drift = 0.0;
        for (std::size_t n = 1; n <= ms.entry_prefix.size(); ++n) {
            const double theta = std::numbers::pi / 4.0 + std::numbers::pi / (8.0 * double(n));
            drift = std::max(drift, std::abs(ms.entry_prefix[n - 1] - std::polar(1.0, theta)));
        }
        golden_check(report, idx++, drift <= 1e-12, drift, "diagonal entries follow the rule");
        golden_check(report, idx++,
                     ms.essential().size() == 1 && std::abs(ms.essential()[0] - lambda0) <= 1e-12,
                     ms.essential().empty() ? 1.0 : std::abs(ms.essential()[0] - lambda0),
                     "essential spectrum is the limit point");

        const ClosednessReport closed = is_wa_closed(ex1);
        golden_check(report, idx++,
                     !closed.closed && closed.offending.size() == 1 &&
                         std::abs(closed.offending[0] - lambda0) <= 1e-9,
                     closed.offending.empty() ? 1.0 : std::abs(closed.offending[0] - lambda0),
                     "range closure misses exactly the limit point");

        const ClosingPerturbation cp = closing_perturbation(ex1, 0.1);
        const double expected_gap = 2.0 * std::sin(std::numbers::pi / 64.0);
        golden_check(report, idx++,
                     cp.k_entries.size() == 1 && cp.k_entries[0].first == 4 &&
                         std::abs(cp.k_norm - expected_gap) <= 1e-10 && cp.k_norm < 0.1,
                     std::abs(cp.k_norm - expected_gap), "closing perturbation snaps entry four");
        golden_check(report, idx++, is_wa_closed(cp.model).closed, 0.0,
                     "perturbed model has a closed range");
    } catch (const std::exception& e) {
        report.failures.push_back({idx, 0, std::string("exception: ") + e.what()});
    }

    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return report;
}

} // namespace semihilbert
