#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fbm::linalg {

/// Kernel execution policy. Parallel variants use OpenMP when available and
/// are arranged so every floating-point operation happens in the same order
/// as the serial reference: results are bit-identical for any thread count.
enum class Execution { serial, parallel };

/// Dense row-major matrix. Just enough surface for the covariance kernels;
/// not a general linear-algebra type.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    double* row(std::size_t i) noexcept { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const noexcept { return data_.data() + i * cols_; }

    const std::vector<double>& data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Lower Cholesky factor of a symmetric positive-definite matrix.
/// Only the lower triangle of `a` is read; the returned matrix has zeros
/// above the diagonal. Throws FactorizationError naming the failing pivot
/// if a non-positive pivot turns up.
Matrix cholesky_lower(const Matrix& a, Execution exec = Execution::parallel);

/// Solve L x = b with L lower triangular.
void solve_lower(const Matrix& l, std::span<const double> b, std::span<double> x);

/// Solve L' x = b with L lower triangular (transposed back-substitution).
void solve_lower_transposed(const Matrix& l, std::span<const double> b, std::span<double> x);

double dot(std::span<const double> a, std::span<const double> b);

/// In-place radix-2 complex FFT; size must be a power of two.
/// `inverse` applies the conjugate transform without the 1/n factor.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse);

/// Reference O(n^2) DFT used to test the radix-2 kernel.
std::vector<std::complex<double>> dft_reference(const std::vector<std::complex<double>>& a,
                                                bool inverse);

std::size_t next_pow2(std::size_t n);

}  // namespace fbm::linalg
