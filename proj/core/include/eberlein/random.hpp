#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "eberlein/matrix.hpp"

namespace eberlein {

/// Seedable generator with platform-independent output: std::mt19937_64
/// (its sequence is fixed by the standard) plus hand-rolled uniform and
/// Box-Muller normal transforms, since the std distributions are
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer on [0, bound), rejection sampled.
    std::uint64_t below(std::uint64_t bound);
    double normal();
    /// randn + 1i*randn
    cplx complex_normal() {
        const double re = normal();
        return {re, normal()};
    }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

/// Seed from the EBERLEIN_SEED environment variable if set, else OS entropy.
std::uint64_t default_seed();

/// Haar-like random unitary: complex Gaussian matrix orthonormalized column by
/// column with modified Gram-Schmidt and one reorthogonalization pass.
Matrix random_unitary(std::size_t n, Rng& rng);
Matrix random_unitary(std::size_t n, std::uint64_t seed);

/// n x n matrix of independent complex Gaussian entries, row-major draw order.
Matrix random_complex_gaussian(std::size_t n, Rng& rng);

}  // namespace eberlein
