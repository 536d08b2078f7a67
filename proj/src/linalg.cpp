#include "fbm/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fbm/types.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fbm::linalg {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

// Left-looking Cholesky over contiguous rows. Each entry of column j is an
// independent dot product against row j, so the i-loop parallelizes without
// changing any summation order: serial and parallel results are bit-identical.
Matrix cholesky_lower(const Matrix& a, Execution exec) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("cholesky_lower: matrix must be square");

    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) l(i, j) = a(i, j);

    for (std::size_t j = 0; j < n; ++j) {
        const double* rj = l.row(j);
        const double djj = l(j, j) - dot({rj, j}, {rj, j});
        if (!(djj > 0.0)) throw FactorizationError(j);
        const double ljj = std::sqrt(djj);
        l(j, j) = ljj;

        const bool par = exec == Execution::parallel && n - j > 64;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
        for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(j) + 1;
             i < static_cast<std::ptrdiff_t>(n); ++i) {
            const double* ri = l.row(static_cast<std::size_t>(i));
            l(static_cast<std::size_t>(i), j) =
                (l(static_cast<std::size_t>(i), j) - dot({ri, j}, {rj, j})) / ljj;
        }
        (void)par;
    }
    return l;
}

void solve_lower(const Matrix& l, std::span<const double> b, std::span<double> x) {
    const std::size_t n = l.rows();
    if (b.size() != n || x.size() != n)
        throw std::invalid_argument("solve_lower: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        const double* ri = l.row(i);
        x[i] = (b[i] - dot({ri, i}, {x.data(), i})) / ri[i];
    }
}

void solve_lower_transposed(const Matrix& l, std::span<const double> b, std::span<double> x) {
    const std::size_t n = l.rows();
    if (b.size() != n || x.size() != n)
        throw std::invalid_argument("solve_lower_transposed: dimension mismatch");
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
        x[ii] = s / l(ii, ii);
    }
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_radix2: size must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang =
            (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::vector<std::complex<double>> dft_reference(const std::vector<std::complex<double>>& a,
                                                bool inverse) {
    const std::size_t n = a.size();
    std::vector<std::complex<double>> out(n);
    const double sign = inverse ? 2.0 : -2.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> s(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sign * std::numbers::pi * static_cast<double>(k) *
                               static_cast<double>(j) / static_cast<double>(n);
            s += a[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = s;
    }
    return out;
}

}  // namespace fbm::linalg
