#include "schurlab/random.hpp"

#include <cmath>

namespace schurlab {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::gaussian() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

cplx Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
}

std::size_t Rng::index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

Vec Rng::gaussian_vector(std::size_t k) {
    Vec v(k);
    for (auto& z : v) z = complex_gaussian();
    return v;
}

Vec Rng::unit_vector(std::size_t k) {
    for (;;) {
        Vec v = gaussian_vector(k);
        const double n = norm2(v);
        if (n < 1e-12) continue;
        for (auto& z : v) z /= n;
        return v;
    }
}

Mat Rng::gaussian_matrix(std::size_t rows, std::size_t cols) {
    Mat m(rows, cols);
    for (auto& z : m.data()) z = complex_gaussian();
    return m;
}

Mat Rng::unit_columns(std::size_t rows, std::size_t cols) {
    Mat m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) m.set_col(j, unit_vector(rows));
    return m;
}

Mat Rng::hermitian(std::size_t n) {
    const Mat g = gaussian_matrix(n, n);
    return 0.5 * (g + g.adjoint());
}

Mat Rng::psd(std::size_t n, std::size_t rank) {
    const Mat g = gaussian_matrix(n, rank);
    return g * g.adjoint();
}

Mat Rng::unitary(std::size_t n) {
    Mat q = gaussian_matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec c = q.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < j; ++k) {
                const Vec b = q.col(k);
                const cplx d = dot(b, c);
                for (std::size_t i = 0; i < n; ++i) c[i] -= d * b[i];
            }
        const double nrm = norm2(c);
        for (auto& z : c) z /= nrm;
        q.set_col(j, c);
    }
    return q;
}

Mat Rng::correlation(std::size_t n, std::size_t dim) {
    const Mat l = unit_columns(dim, n);
    Mat x = l.adjoint() * l;
    for (std::size_t i = 0; i < n; ++i) x(i, i) = 1.0;
    return x;
}

}  // namespace schurlab
