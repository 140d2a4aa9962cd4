#pragma once

#include <vector>

#include "schurlab/matrix.hpp"
#include "schurlab/random.hpp"

namespace gen {

using schurlab::Mat;
using schurlab::Rng;
using schurlab::Vec;

/// n vectors in a random r-dimensional subspace of C^k. Occasionally repeats
/// or rescales a vector so degenerate sets show up too.
inline std::vector<Vec> vector_set(Rng& rng, std::size_t k, std::size_t r, std::size_t n) {
    const Mat basis = rng.gaussian_matrix(k, r);
    std::vector<Vec> out;
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0 && rng.uniform() < 0.1) {
            Vec v = out[rng.index(out.size())];
            const auto c = rng.complex_gaussian();
            for (auto& z : v) z *= c;
            out.push_back(std::move(v));
        } else {
            const Vec c = rng.gaussian_vector(r);
            out.push_back(basis * std::span<const schurlab::cplx>(c));
        }
    }
    return out;
}

/// Random set with its sizes drawn from k <= kmax, n <= nmax.
inline std::vector<Vec> random_set(Rng& rng, std::size_t kmax, std::size_t nmax) {
    const std::size_t k = 1 + rng.index(kmax);
    const std::size_t r = 1 + rng.index(k);
    const std::size_t n = 1 + rng.index(nmax);
    return vector_set(rng, k, r, n);
}

/// Invertible-on-the-span map C^k -> C^m, m >= k.
inline Mat injective_map(Rng& rng, std::size_t k) {
    const std::size_t m = k + rng.index(3);
    return rng.gaussian_matrix(m, k) + Mat::identity(m).block(0, 0, m, k);
}

}  // namespace gen
