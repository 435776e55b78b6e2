#include "semihilbert/diagonal_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "semihilbert/eig.hpp"
#include "semihilbert/errors.hpp"
#include "semihilbert/numrange.hpp"
#include "semihilbert/spectra.hpp"

namespace semihilbert {

namespace {

double set_distance(Complex z, const std::vector<Complex>& set) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : set) best = std::min(best, std::abs(z - s));
    return best;
}

// Hausdorff distance between a convex polygon and the closed unit
// disk via the support-function identity: for convex bodies the
// Hausdorff distance is the sup-norm gap of the support functions,
// and against the disk that gap is extremal either at a vertex
// direction or at an edge normal.
double unit_disk_hausdorff(const ConvexPolygon& p) {
    const auto& v = p.vertices();
    if (v.empty()) throw DimensionError("unit_disk_hausdorff: empty polygon");
    double h_max = 0.0;
    for (const auto& z : v) h_max = std::max(h_max, std::abs(z));
    double h_min;
    if (v.size() == 1) {
        h_min = -std::abs(v[0]);
    } else {
        h_min = std::numeric_limits<double>::infinity();
        const std::size_t edges = v.size() == 2 ? 1 : v.size();
        for (std::size_t k = 0; k < edges; ++k) {
            const Complex a = v[k];
            const Complex b = v[(k + 1) % v.size()];
            const Complex d = b - a;
            const double len = std::abs(d);
            if (len <= 0.0) continue;
            // Outward normal of a counterclockwise edge.
            const double nx = d.imag() / len;
            const double ny = -d.real() / len;
            const double h = a.real() * nx + a.imag() * ny;
            h_min = std::min(h_min, h);
            if (v.size() == 2) h_min = std::min(h_min, -h);
        }
    }
    return std::max(h_max - 1.0, 1.0 - h_min);
}

// Sampled sup-norm gap of support functions; an O((V+W) angles)
// Hausdorff estimate for large convex polygons.
double support_gap(const ConvexPolygon& a, const ConvexPolygon& b, std::size_t angles) {
    double worst = 0.0;
    for (std::size_t k = 0; k < angles; ++k) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles);
        const double cx = std::cos(theta);
        const double cy = std::sin(theta);
        double ha = -std::numeric_limits<double>::infinity();
        for (const auto& z : a.vertices()) ha = std::max(ha, z.real() * cx + z.imag() * cy);
        double hb = -std::numeric_limits<double>::infinity();
        for (const auto& z : b.vertices()) hb = std::max(hb, z.real() * cx + z.imag() * cy);
        worst = std::max(worst, std::abs(ha - hb));
    }
    return worst;
}

ComplexMatrix head_compression(const DiagonalModel& model) {
    const SpacePtr space = make_space(*model.head_a());
    const SemiHilbertOperator op(space, *model.head_t());
    if (!op.in_b_a_half()) {
        throw ModelError("diagonal model: head operator is not bounded for the head weight");
    }
    return op.compressed();
}

} // namespace

DiagonalModel::DiagonalModel(std::optional<ComplexMatrix> head_a,
                             std::optional<ComplexMatrix> head_t, SeqExpr a_seq,
                             SeqExpr lambda_seq, std::vector<Complex> limits,
                             std::map<long, Complex> overrides, ModelProbe probe)
    : head_a_(std::move(head_a)),
      head_t_(std::move(head_t)),
      a_seq_(std::move(a_seq)),
      lambda_seq_(std::move(lambda_seq)),
      limits_(std::move(limits)),
      overrides_(std::move(overrides)),
      probe_(probe) {
    if (head_a_.has_value() != head_t_.has_value()) {
        throw ModelError("diagonal model: head blocks must be given for both sides or neither");
    }
    if (head_a_) {
        if (!head_a_->is_square() || !head_t_->is_square() ||
            head_a_->rows() != head_t_->rows()) {
            throw ModelError("diagonal model: head blocks are size-mismatched");
        }
        head_compression(*this); // validates positivity and boundedness
    }
    if (limits_.empty()) {
        throw ModelError("diagonal model: declare at least one accumulation point");
    }
    for (const auto& [k, v] : overrides_) {
        if (k < 1) throw ModelError("diagonal model: override index must be >= 1");
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ModelError("diagonal model: non-finite override");
        }
    }
    if (probe_.n_probe < 16) probe_.n_probe = 16;

    // Probe the sequences: positivity of the weights, finiteness of the
    // entries, each declared limit approached, late tail near the limit set.
    weight_inf_ = std::numeric_limits<double>::infinity();
    std::vector<double> limit_best(limits_.size(), std::numeric_limits<double>::infinity());
    double tail_worst = 0.0;
    double entry_sup = 0.0;
    for (long n = 1; n <= probe_.n_probe; ++n) {
        const Complex a = a_seq_.eval(n);
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw ModelError("diagonal model: weight not finite at n = " + std::to_string(n));
        }
        if (std::abs(a.imag()) > 1e-10 * (1.0 + std::abs(a.real())) || a.real() <= 0.0) {
            throw ModelError("diagonal model: weight not real positive at n = " +
                             std::to_string(n));
        }
        weight_inf_ = std::min(weight_inf_, a.real());

        const Complex lam = lambda_at(n);
        if (!std::isfinite(lam.real()) || !std::isfinite(lam.imag())) {
            throw ModelError("diagonal model: entry not finite at n = " + std::to_string(n));
        }
        entry_sup = std::max(entry_sup, std::abs(lam));
        for (std::size_t j = 0; j < limits_.size(); ++j) {
            limit_best[j] = std::min(limit_best[j], std::abs(lam - limits_[j]));
        }
        if (n > probe_.n_probe / 2 && !overrides_.count(n)) {
            tail_worst = std::max(tail_worst, set_distance(lam, limits_));
        }
    }
    const double scale = 1.0 + entry_sup;
    for (std::size_t j = 0; j < limits_.size(); ++j) {
        if (limit_best[j] > probe_.limit_tol * scale) {
            throw ModelError("diagonal model: no probed subsequence approaches declared limit " +
                             std::to_string(j));
        }
    }
    if (tail_worst > probe_.limit_tol * scale) {
        throw ModelError("diagonal model: probed tail strays from the declared limit set");
    }
}

double DiagonalModel::a_at(long n) const {
    const Complex a = a_seq_.eval(n);
    return a.real();
}

Complex DiagonalModel::lambda_at(long n) const {
    const auto it = overrides_.find(n);
    if (it != overrides_.end()) return it->second;
    return lambda_seq_.eval(n);
}

SemiHilbertOperator truncate(const DiagonalModel& model, std::size_t n) {
    if (n < 1) throw ModelError("truncate: need at least one diagonal entry");
    std::vector<double> weights(n);
    std::vector<Complex> entries(n);
    for (std::size_t k = 0; k < n; ++k) {
        weights[k] = model.a_at(static_cast<long>(k + 1));
        entries[k] = model.lambda_at(static_cast<long>(k + 1));
    }
    ComplexMatrix a_tail = ComplexMatrix::diagonal(weights);
    ComplexMatrix t_tail = ComplexMatrix::diagonal(entries);
    ComplexMatrix a_full = model.has_head() ? model.head_a()->direct_sum(a_tail) : a_tail;
    ComplexMatrix t_full = model.has_head() ? model.head_t()->direct_sum(t_tail) : t_tail;
    return SemiHilbertOperator(make_space(a_full), std::move(t_full));
}

std::vector<Complex> ModelSpectra::point() const {
    std::vector<Complex> out = head_points;
    out.insert(out.end(), entry_prefix.begin(), entry_prefix.end());
    return out;
}

std::vector<Complex> ModelSpectra::full() const {
    std::vector<Complex> out = point();
    out.insert(out.end(), limits.begin(), limits.end());
    return out;
}

std::vector<Complex> ModelSpectra::approximate() const { return full(); }

std::vector<Complex> ModelSpectra::essential() const { return limits; }

ModelSpectra model_spectra(const DiagonalModel& model, std::size_t n_report) {
    ModelSpectra out;
    if (model.has_head()) out.head_points = general_eig(head_compression(model));
    out.entry_prefix.reserve(n_report);
    for (std::size_t n = 1; n <= n_report; ++n) {
        out.entry_prefix.push_back(model.lambda_at(static_cast<long>(n)));
    }
    out.tail_rule = model.lambda_seq().source();
    out.limits = model.limits();
    return out;
}

ConvexPolygon wa_closure(const DiagonalModel& model, std::size_t n_hull, double* stability,
                         std::size_t head_angles) {
    std::vector<Complex> head_verts;
    if (model.has_head()) {
        // The adaptive sweep reaches the target regardless of the base
        // grid; 2e-8 keeps the vertex count manageable well inside the
        // disk-criterion tolerances.
        const RegionApprox head =
            matrix_numerical_range(head_compression(model), head_angles, 2e-8);
        head_verts = head.outer().vertices();
    }
    auto collect = [&](std::size_t count) {
        std::vector<Complex> pts;
        pts.reserve(count + model.limits().size() + head_verts.size());
        for (std::size_t n = 1; n <= count; ++n)
            pts.push_back(model.lambda_at(static_cast<long>(n)));
        pts.insert(pts.end(), model.limits().begin(), model.limits().end());
        pts.insert(pts.end(), head_verts.begin(), head_verts.end());
        return convex_hull(pts, 1e-13);
    };
    ConvexPolygon hull = collect(n_hull);
    if (stability) *stability = support_gap(hull, collect(2 * n_hull), 2048);
    return hull;
}

ClosednessReport is_wa_closed(const DiagonalModel& model, std::size_t n_hull, long n_search,
                              double attain_tol) {
    if (model.has_head()) {
        throw ModelError("is_wa_closed: only pure diagonal models are supported");
    }
    const ConvexPolygon hull = wa_closure(model, n_hull);

    // Entries sorted by real part for nearest-neighbor checks.
    std::vector<Complex> entries(static_cast<std::size_t>(n_search));
    double sup = 0.0;
    for (long n = 1; n <= n_search; ++n) {
        entries[static_cast<std::size_t>(n - 1)] = model.lambda_at(n);
        sup = std::max(sup, std::abs(entries[static_cast<std::size_t>(n - 1)]));
    }
    std::sort(entries.begin(), entries.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    const double tol = attain_tol * (1.0 + sup);

    auto attained = [&](Complex v) {
        auto lo = std::lower_bound(entries.begin(), entries.end(), v.real() - tol,
                                   [](Complex e, double x) { return e.real() < x; });
        for (auto it = lo; it != entries.end() && it->real() <= v.real() + tol; ++it) {
            if (std::abs(*it - v) <= tol) return true;
        }
        return false;
    };

    ClosednessReport report;
    for (const auto& v : hull.vertices()) {
        if (!attained(v)) report.offending.push_back(v);
    }
    report.closed = report.offending.empty();
    return report;
}

ClosingPerturbation closing_perturbation(const DiagonalModel& model, double eps, long n_search) {
    if (eps <= 0.0) throw ModelError("closing_perturbation: eps must be positive");
    const ClosednessReport report = is_wa_closed(model, 4096, n_search);
    if (report.closed) {
        return ClosingPerturbation{model, {}, 0.0};
    }

    const double budget = eps / static_cast<double>(report.offending.size());
    std::map<long, Complex> overrides = model.overrides();
    std::vector<std::pair<long, Complex>> k_entries;
    double k_norm = 0.0;

    for (const Complex mu : report.offending) {
        long chosen = 0;
        Complex gap;
        for (long n = 1; n <= n_search; ++n) {
            if (overrides.count(n)) continue;
            const Complex lam = model.lambda_at(n);
            if (std::abs(lam - mu) < budget) {
                chosen = n;
                gap = mu - lam;
                break;
            }
        }
        if (chosen == 0) {
            throw ModelError("closing_perturbation: cannot close within eps up to n = " +
                             std::to_string(n_search));
        }
        overrides[chosen] = mu;
        k_entries.emplace_back(chosen, gap);
        k_norm = std::max(k_norm, std::abs(gap));
    }

    DiagonalModel closed(model.head_a(), model.head_t(), model.a_seq(), model.lambda_seq(),
                         model.limits(), std::move(overrides), model.probe());
    return ClosingPerturbation{std::move(closed), std::move(k_entries), k_norm};
}

AndersonReport anderson_verify(const DiagonalModel& model, std::size_t angles, double tol) {
    AndersonReport report;
    const ConvexPolygon closure = wa_closure(model, 4096, nullptr, angles);

    double max_mod = 0.0;
    for (const auto& v : closure.vertices()) max_mod = std::max(max_mod, std::abs(v));
    report.range_in_disk = max_mod <= 1.0 + tol;

    report.ess_in_open_disk = true;
    bool accumulation_on_circle = false;
    for (const auto& mu : model.limits()) {
        if (std::abs(mu) >= 1.0 - tol) report.ess_in_open_disk = false;
        if (std::abs(std::abs(mu) - 1.0) <= 1e-9) accumulation_on_circle = true;
    }

    // Arc evidence: the support function of the closure sits at level
    // one on at least three consecutive grid directions.
    std::vector<bool> at_one(angles, false);
    for (std::size_t k = 0; k < angles; ++k) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles);
        double h = -std::numeric_limits<double>::infinity();
        for (const auto& v : closure.vertices()) {
            h = std::max(h, v.real() * std::cos(theta) + v.imag() * std::sin(theta));
        }
        at_one[k] = std::abs(h - 1.0) <= 1e-9;
    }
    std::size_t best_run = 0, run = 0;
    for (std::size_t k = 0; k < 2 * angles; ++k) { // doubled pass handles wraparound
        if (at_one[k % angles]) {
            ++run;
            best_run = std::max(best_run, run);
            if (best_run >= angles) break;
        } else {
            run = 0;
        }
    }
    const bool arc = best_run >= 3;

    report.boundary_infinite = arc || accumulation_on_circle;
    if (arc && accumulation_on_circle) {
        report.boundary_evidence = "arc; declared accumulation on the circle";
    } else if (arc) {
        report.boundary_evidence = "arc";
    } else if (accumulation_on_circle) {
        report.boundary_evidence = "declared accumulation on the circle";
    }

    report.all_hypotheses =
        report.range_in_disk && report.ess_in_open_disk && report.boundary_infinite;
    if (report.all_hypotheses) {
        report.disk_distance = unit_disk_hausdorff(closure);
        report.conclusion_checked = report.disk_distance <= tol;
    }
    return report;
}

} // namespace semihilbert
