//
// Project     : tpn
// Module      : random
// Description : seeded random scalars, Ginibre matrices, Haar unitaries
//

#ifndef TPN_RANDOM_HPP
#define TPN_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <tpn/matrix.hpp>

namespace tpn {

// Deterministic random source.  Doubles are derived from raw mt19937_64
// words rather than std distributions, so the stream depends only on the
// seed, not on the standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box–Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();   // (0, 1], keeps log finite
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    // Real and imaginary parts independent standard normals.
    cplx gaussian_cplx() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

    // Uniform on the unit circle.
    cplx unimodular() {
        const double angle = 2.0 * std::numbers::pi * uniform();
        return {std::cos(angle), std::sin(angle)};
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rng.gaussian_cplx();
    return m;
}

// Haar-distributed unitary: QR of a complex Ginibre matrix by modified
// Gram–Schmidt.  MGS normalizes against real positive column norms, which
// is exactly the R-diagonal phase fix the Haar construction needs.
inline ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
    ComplexMatrix g = random_gaussian_matrix(n, n, rng);
    ComplexMatrix q(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<cplx> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = g(i, j);
        // two orthogonalization passes for stability
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx proj{0.0, 0.0};
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * col[i];
                for (std::size_t i = 0; i < n; ++i) col[i] -= proj * q(i, k);
            }
        }
        double nrm = 0.0;
        for (const auto& c : col) nrm += std::norm(c);
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) q(i, j) = col[i] / nrm;
    }
    return q;
}

inline ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(n, rng);
}

} // namespace tpn

#endif // TPN_RANDOM_HPP
