#pragma once

#include <cstdint>
#include <random>

#include "schurlab/matrix.hpp"

namespace schurlab {

/// splitmix64 finaliser; used to derive independent per-trial seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0);
    double gaussian();
    /// Standard complex Gaussian (independent N(0, 1/2) real and imaginary parts).
    cplx complex_gaussian();
    std::size_t index(std::size_t n);

    Vec gaussian_vector(std::size_t k);
    Vec unit_vector(std::size_t k);
    Mat gaussian_matrix(std::size_t rows, std::size_t cols);
    /// rows x cols with independent unit columns.
    Mat unit_columns(std::size_t rows, std::size_t cols);
    Mat hermitian(std::size_t n);
    /// G G* with G n x rank Gaussian.
    Mat psd(std::size_t n, std::size_t rank);
    /// Haar-ish unitary via Gram-Schmidt of a Gaussian matrix.
    Mat unitary(std::size_t n);
    /// Element of Q_n: Gram matrix of n unit vectors in C^dim.
    Mat correlation(std::size_t n, std::size_t dim);

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace schurlab
