#pragma once

#include <string>

#include "semihilbert/complex_matrix.hpp"
#include "semihilbert/diagonal_model.hpp"
#include "semihilbert/verify.hpp"

namespace semihilbert {

/// Round through 12 significant digits; all serialized numerics pass
/// through this so that repeated runs emit identical bytes.
double round12(double v);

/// Matrix files: {"rows": r, "cols": c, "data": [[re, im], ...]} with
/// row-major data of length r*c.
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);
ComplexMatrix load_matrix_file(const std::string& path);
void save_matrix_file(const std::string& path, const ComplexMatrix& m);

/// Model files: {"head_A": matrix|null, "head_T": matrix|null,
/// "a": "expr", "lambda": "expr", "limits": [[re,im],...]} plus an
/// optional "overrides": [[n, re, im], ...] written by the closing
/// perturbation.
std::string model_to_json(const DiagonalModel& model);
DiagonalModel model_from_json(const std::string& text, ModelProbe probe = {});
DiagonalModel load_model_file(const std::string& path, ModelProbe probe = {});
void save_model_file(const std::string& path, const DiagonalModel& model);

/// Suite reports serialize without the wall time so identical runs are
/// byte identical.
std::string report_to_json(const SuiteReport& report);

} // namespace semihilbert
