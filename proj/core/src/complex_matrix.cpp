#include "semihilbert/complex_matrix.hpp"

#include <cmath>
#include <utility>

#include "semihilbert/errors.hpp"

namespace semihilbert {

namespace {

void require_finite(const ComplexMatrix& m, const char* where) {
    if (!m.all_finite()) {
        throw DimensionError(std::string(where) + ": non-finite entry");
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("ComplexMatrix: entry count does not match shape");
    }
    require_finite(*this, "ComplexMatrix");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::vector<Complex> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    require_finite(m, "ComplexMatrix::diagonal");
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    require_finite(m, "ComplexMatrix::diagonal");
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("from_rows: ragged rows");
        std::size_t j = 0;
        for (const auto& z : row) m(i, j++) = z;
        ++i;
    }
    require_finite(m, "ComplexMatrix::from_rows");
    return m;
}

ComplexMatrix ComplexMatrix::column(const ComplexVector& x) {
    ComplexMatrix m(x.size(), 1);
    for (std::size_t i = 0; i < x.size(); ++i) m(i, 0) = x[i];
    require_finite(m, "ComplexMatrix::column");
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("operator+=: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("operator-=: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = std::conj(data_[k]);
    return m;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) throw DimensionError("trace: matrix must be square");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::all_finite() const noexcept {
    for (const auto& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
    if (!is_square()) return false;
    double diff = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            diff += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    return std::sqrt(diff) <= rel_tol * (frobenius_norm() + 1e-300);
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t h,
                                   std::size_t w) const {
    if (r0 + h > rows_ || c0 + w > cols_) throw DimensionError("block: out of range");
    ComplexMatrix m(h, w);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < w; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("set_block: out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

ComplexMatrix ComplexMatrix::direct_sum(const ComplexMatrix& other) const {
    ComplexMatrix m(rows_ + other.rows_, cols_ + other.cols_);
    m.set_block(0, 0, *this);
    m.set_block(rows_, cols_, other);
    return m;
}

ComplexVector ComplexMatrix::apply(const ComplexVector& x) const {
    if (x.size() != cols_) throw DimensionError("apply: vector length mismatch");
    ComplexVector y(rows_, Complex(0.0));
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex acc = 0.0;
        const Complex* row = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    lhs += rhs;
    return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    lhs -= rhs;
    return lhs;
}

ComplexMatrix operator-(const ComplexMatrix& m) {
    ComplexMatrix out = m;
    out *= Complex(-1.0);
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) throw DimensionError("operator*: shape mismatch");
    ComplexMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex(0.0)) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

ComplexMatrix operator*(Complex s, ComplexMatrix m) {
    m *= s;
    return m;
}

ComplexMatrix operator*(ComplexMatrix m, Complex s) {
    m *= s;
    return m;
}

double vec_norm(const ComplexVector& x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

Complex vec_dot(const ComplexVector& x, const ComplexVector& y) {
    if (x.size() != y.size()) throw DimensionError("vec_dot: length mismatch");
    Complex acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) acc += x[k] * std::conj(y[k]);
    return acc;
}

} // namespace semihilbert
