#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semihilbert/geometry.hpp"
#include "semihilbert/operator.hpp"
#include "semihilbert/seq_expr.hpp"

namespace semihilbert {

struct ModelProbe {
    long n_probe = 10000;    // indices checked during validation
    double limit_tol = 1e-3; // admissible tail distance to the declared limit set
};

/// Lazily defined infinite diagonal pair: an optional finite head block
/// on both sides, positive diagonal weights a_n, diagonal entries
/// lambda_n given by sequence expressions, a finite list of declared
/// accumulation points of the entries, and finitely many explicit entry
/// overrides (used by the closing perturbation).
///
/// Validation probes the sequences: the weights must be real and
/// positive, every declared limit must be approached by a subsequence,
/// and the late tail must stay near the declared limit set.
class DiagonalModel {
public:
    DiagonalModel(std::optional<ComplexMatrix> head_a, std::optional<ComplexMatrix> head_t,
                  SeqExpr a_seq, SeqExpr lambda_seq, std::vector<Complex> limits,
                  std::map<long, Complex> overrides = {}, ModelProbe probe = {});

    bool has_head() const noexcept { return head_a_.has_value(); }
    const std::optional<ComplexMatrix>& head_a() const noexcept { return head_a_; }
    const std::optional<ComplexMatrix>& head_t() const noexcept { return head_t_; }
    const SeqExpr& a_seq() const noexcept { return a_seq_; }
    const SeqExpr& lambda_seq() const noexcept { return lambda_seq_; }
    const std::vector<Complex>& limits() const noexcept { return limits_; }
    const std::map<long, Complex>& overrides() const noexcept { return overrides_; }
    const ModelProbe& probe() const noexcept { return probe_; }

    /// Infimum of the probed tail weights (0 is admissible).
    double weight_inf() const noexcept { return weight_inf_; }

    double a_at(long n) const;       // n >= 1
    Complex lambda_at(long n) const; // n >= 1, override-aware

private:
    std::optional<ComplexMatrix> head_a_;
    std::optional<ComplexMatrix> head_t_;
    SeqExpr a_seq_;
    SeqExpr lambda_seq_;
    std::vector<Complex> limits_;
    std::map<long, Complex> overrides_;
    ModelProbe probe_;
    double weight_inf_ = 0.0;
};

/// Finite section: head_A + diag(a_1..a_N) against head_T + diag(lambda_1..lambda_N).
SemiHilbertOperator truncate(const DiagonalModel& model, std::size_t n);

/// The four spectra of the model. Entry lists are reported as a prefix
/// plus the tail rule; the full and approximate spectra append the
/// declared limits and the essential spectrum is exactly the limit set
/// (the head only contributes a finite-rank defect).
struct ModelSpectra {
    std::vector<Complex> head_points;
    std::vector<Complex> entry_prefix;
    std::string tail_rule;
    std::vector<Complex> limits;

    std::vector<Complex> point() const;       // head_points + entries
    std::vector<Complex> full() const;        // point + limits
    std::vector<Complex> approximate() const; // same as full
    std::vector<Complex> essential() const;   // limits
};
ModelSpectra model_spectra(const DiagonalModel& model, std::size_t n_report = 64);

/// Hull of the entries up to n_hull, the declared limits and, when a
/// head is present, the outer vertices of the head's numerical range.
/// `stability` receives the Hausdorff change when n_hull doubles.
ConvexPolygon wa_closure(const DiagonalModel& model, std::size_t n_hull = 4096,
                         double* stability = nullptr, std::size_t head_angles = 4096);

struct ClosednessReport {
    bool closed = false;
    std::vector<Complex> offending; // extreme limit points never attained
};

/// Closedness criterion for pure diagonal models: every extreme point
/// of the closure must be an attained entry. Models with a head block
/// are not supported here.
ClosednessReport is_wa_closed(const DiagonalModel& model, std::size_t n_hull = 4096,
                              long n_search = 100000, double attain_tol = 1e-8);

struct ClosingPerturbation {
    DiagonalModel model;                          // entries patched at k_entries
    std::vector<std::pair<long, Complex>> k_entries; // index -> added diagonal value
    double k_norm = 0.0;                          // max modulus of the added entries
};

/// Finite-rank diagonal perturbation that closes the range: for each
/// offending extreme point, the nearest entry within eps/count is
/// snapped onto it. Throws ModelError when no entry within budget is
/// found up to n_search.
ClosingPerturbation closing_perturbation(const DiagonalModel& model, double eps,
                                         long n_search = 100000);

struct AndersonReport {
    bool range_in_disk = false;
    bool ess_in_open_disk = false;
    bool boundary_infinite = false;
    std::string boundary_evidence; // "arc", "declared accumulation", both, or empty
    bool all_hypotheses = false;
    bool conclusion_checked = false; // closure matches the closed unit disk
    double disk_distance = -1.0;     // Hausdorff to the unit disk when checked
};

/// Disk criterion: range inside the closed unit disk, essential
/// spectrum strictly inside, infinitely many boundary contact points
/// (an arc of the support function at level one, or entries
/// accumulating on the circle at a declared limit). When all three
/// hold the closure must fill the whole disk, and that is verified.
AndersonReport anderson_verify(const DiagonalModel& model, std::size_t angles = 4096,
                               double tol = 1e-6);

} // namespace semihilbert
