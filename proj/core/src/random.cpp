#include "eberlein/random.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "eberlein/error.hpp"

namespace eberlein {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw InvalidArgument("Rng::below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

double Rng::normal() {
    if (spare_) {
        const double z = *spare_;
        spare_.reset();
        return z;
    }
    double u1;
    do {
        u1 = uniform();
    } while (u1 == 0.0);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("EBERLEIN_SEED"); env && *env) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InvalidArgument(std::string("EBERLEIN_SEED is not an unsigned integer: ") + env);
        }
    }
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

Matrix random_complex_gaussian(std::size_t n, Rng& rng) {
    Matrix a(n);
    for (auto& z : a.data()) z = rng.complex_normal();
    return a;
}

Matrix random_unitary(std::size_t n, Rng& rng) {
    if (n == 0) throw InvalidArgument("random_unitary: n must be positive");
    Matrix q = random_complex_gaussian(n, rng);
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * q(i, j);
                for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, k);
            }
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(q(i, j));
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw NumericalFailure("random_unitary: rank-deficient draw");
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
    }
    return q;
}

Matrix random_unitary(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(n, rng);
}

}  // namespace eberlein
