#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace semihilbert {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense complex matrix, row major. The carrier type for weights,
/// operators and compressions alike. Factory constructors reject
/// non-finite entries.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols); // zero filled
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::vector<Complex> d);
    static ComplexMatrix diagonal(const std::vector<double>& d);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    static ComplexMatrix column(const ComplexVector& x);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool is_empty() const noexcept { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * cols_ + j];
    }
    const std::vector<Complex>& data() const noexcept { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const noexcept;
    bool is_hermitian(double rel_tol = 1e-12) const;

    ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const;
    void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);
    ComplexMatrix direct_sum(const ComplexMatrix& other) const;

    ComplexVector apply(const ComplexVector& x) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(const ComplexMatrix& m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);

/// Euclidean norm of a coefficient vector.
double vec_norm(const ComplexVector& x);

/// Standard inner product, linear in the first argument.
Complex vec_dot(const ComplexVector& x, const ComplexVector& y);

} // namespace semihilbert
