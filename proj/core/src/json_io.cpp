#include "semihilbert/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "semihilbert/errors.hpp"

namespace semihilbert {

using nlohmann::json;

double round12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

namespace {

json matrix_to_value(const ComplexMatrix& m) {
    json data = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            data.push_back({round12(m(i, j).real()), round12(m(i, j).imag())});
        }
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_value(const json& v) {
    if (!v.is_object() || !v.contains("rows") || !v.contains("cols") || !v.contains("data")) {
        throw ParseError("matrix JSON needs rows, cols and data", 0);
    }
    const auto rows = v.at("rows").get<std::size_t>();
    const auto cols = v.at("cols").get<std::size_t>();
    const json& data = v.at("data");
    if (!data.is_array() || data.size() != rows * cols) {
        throw ParseError("matrix JSON data length must be rows*cols", 0);
    }
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const auto& item : data) {
        if (!item.is_array() || item.size() != 2) {
            throw ParseError("matrix JSON entries must be [re, im] pairs", 0);
        }
        entries.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

json parse_text(const std::string& text) {
    json v = json::parse(text, nullptr, false);
    if (v.is_discarded()) throw ParseError("invalid JSON", 0);
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
    if (!out.good()) throw Error("write failed: " + path);
}

} // namespace

std::string matrix_to_json(const ComplexMatrix& m) { return matrix_to_value(m).dump(2) + "\n"; }

ComplexMatrix matrix_from_json(const std::string& text) {
    return matrix_from_value(parse_text(text));
}

ComplexMatrix load_matrix_file(const std::string& path) {
    return matrix_from_json(read_file(path));
}

void save_matrix_file(const std::string& path, const ComplexMatrix& m) {
    write_file(path, matrix_to_json(m));
}

std::string model_to_json(const DiagonalModel& model) {
    json v;
    v["head_A"] = model.has_head() ? matrix_to_value(*model.head_a()) : json(nullptr);
    v["head_T"] = model.has_head() ? matrix_to_value(*model.head_t()) : json(nullptr);
    v["a"] = model.a_seq().source();
    v["lambda"] = model.lambda_seq().source();
    json limits = json::array();
    for (const auto& mu : model.limits()) {
        limits.push_back({round12(mu.real()), round12(mu.imag())});
    }
    v["limits"] = std::move(limits);
    if (!model.overrides().empty()) {
        json overrides = json::array();
        for (const auto& [n, z] : model.overrides()) {
            overrides.push_back({json(n), json(round12(z.real())), json(round12(z.imag()))});
        }
        v["overrides"] = std::move(overrides);
    }
    return v.dump(2) + "\n";
}

DiagonalModel model_from_json(const std::string& text, ModelProbe probe) {
    const json v = parse_text(text);
    if (!v.is_object()) throw ParseError("model JSON must be an object", 0);
    for (const char* key : {"a", "lambda", "limits"}) {
        if (!v.contains(key)) throw ParseError(std::string("model JSON missing ") + key, 0);
    }

    std::optional<ComplexMatrix> head_a;
    std::optional<ComplexMatrix> head_t;
    if (v.contains("head_A") && !v.at("head_A").is_null()) {
        head_a = matrix_from_value(v.at("head_A"));
    }
    if (v.contains("head_T") && !v.at("head_T").is_null()) {
        head_t = matrix_from_value(v.at("head_T"));
    }

    SeqExpr a_expr = SeqExpr::parse(v.at("a").get<std::string>());
    SeqExpr lam_expr = SeqExpr::parse(v.at("lambda").get<std::string>());

    std::vector<Complex> limits;
    for (const auto& item : v.at("limits")) {
        if (!item.is_array() || item.size() != 2) {
            throw ParseError("model limits must be [re, im] pairs", 0);
        }
        limits.emplace_back(item[0].get<double>(), item[1].get<double>());
    }

    std::map<long, Complex> overrides;
    if (v.contains("overrides")) {
        for (const auto& item : v.at("overrides")) {
            if (!item.is_array() || item.size() != 3) {
                throw ParseError("model overrides must be [n, re, im] triples", 0);
            }
            overrides[item[0].get<long>()] = Complex(item[1].get<double>(), item[2].get<double>());
        }
    }
    return DiagonalModel(std::move(head_a), std::move(head_t), std::move(a_expr),
                         std::move(lam_expr), std::move(limits), std::move(overrides), probe);
}

DiagonalModel load_model_file(const std::string& path, ModelProbe probe) {
    return model_from_json(read_file(path), probe);
}

void save_model_file(const std::string& path, const DiagonalModel& model) {
    write_file(path, model_to_json(model));
}

std::string report_to_json(const SuiteReport& report) {
    json v;
    v["suite"] = report.suite;
    v["instances"] = report.instances;
    v["passed"] = report.passed();
    v["max_residual"] = round12(report.max_residual);
    json failures = json::array();
    for (const auto& f : report.failures) {
        failures.push_back({{"index", f.index}, {"seed", f.seed}, {"what", f.what}});
    }
    v["failures"] = std::move(failures);
    return v.dump(2) + "\n";
}

} // namespace semihilbert
