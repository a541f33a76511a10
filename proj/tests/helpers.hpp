//
// Test helpers: independent oracles and construction rigs shared by the
// unit and acceptance suites.  Nothing here calls back into the Jacobi
// decompositions it is used to check.
//

#ifndef TPN_TESTS_HELPERS_HPP
#define TPN_TESTS_HELPERS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <tpn/matrix.hpp>
#include <tpn/random.hpp>

namespace tpn::testing {

inline bool close(double a, double b, double tolerance) {
    return std::abs(a - b) <= tolerance;
}

inline double matrix_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).frobenius_norm();
}

inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
    const ComplexMatrix g = random_gaussian_matrix(n, n, rng);
    ComplexMatrix h = g + g.adjoint();
    h *= 0.5;
    return h;
}

inline ComplexMatrix random_psd(std::size_t n, Rng& rng) {
    const ComplexMatrix g = random_gaussian_matrix(n, n, rng);
    return g * g.adjoint();
}

// A = U·D₁·V, B = U·D₂·V with disjointly supported nonnegative diagonals:
// orthogonal by construction, with prescribed ranks.
struct OrthogonalPair {
    ComplexMatrix a;
    ComplexMatrix b;
};

inline OrthogonalPair make_orthogonal_pair(std::size_t n, std::size_t rank_a,
                                           std::size_t rank_b, Rng& rng) {
    if (rank_a + rank_b > n)
        throw std::out_of_range("make_orthogonal_pair: rank_a + rank_b exceeds n");
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix v = random_unitary(n, rng);
    ComplexMatrix d1(n, n), d2(n, n);
    for (std::size_t i = 0; i < rank_a; ++i) d1(i, i) = 0.5 + rng.uniform();
    for (std::size_t i = 0; i < rank_b; ++i) d2(rank_a + i, rank_a + i) = 0.5 + rng.uniform();
    return {u * d1 * v, u * d2 * v};
}

// Roots of the characteristic polynomial of a 3x3 complex matrix by
// Cardano's formula.  Serves as the independent spectrum oracle for the
// psd/Hermitian product checks.
inline std::array<cplx, 3> char_poly_roots_3x3(const ComplexMatrix& m) {
    const auto minor2 = [&](std::size_t i1, std::size_t i2) {
        return m(i1, i1) * m(i2, i2) - m(i1, i2) * m(i2, i1);
    };
    const cplx det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                     m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                     m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    // λ³ + aλ² + bλ + c
    const cplx a = -m.trace();
    const cplx b = minor2(0, 1) + minor2(0, 2) + minor2(1, 2);
    const cplx c = -det;

    // depressed cubic t³ + pt + q with λ = t − a/3
    const cplx p = b - a * a / 3.0;
    const cplx q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    const cplx sqrt_disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    // pick the branch that avoids cancellation
    cplx u_cubed = -q / 2.0 + sqrt_disc;
    if (std::abs(-q / 2.0 - sqrt_disc) > std::abs(u_cubed)) u_cubed = -q / 2.0 - sqrt_disc;

    std::array<cplx, 3> roots;
    const cplx shift = -a / 3.0;
    if (std::abs(u_cubed) == 0.0) {
        const cplx t0 = -std::pow(q, 1.0 / 3.0);
        for (int k = 0; k < 3; ++k) {
            const double angle = 2.0 * std::numbers::pi * k / 3.0;
            roots[k] = t0 * cplx{std::cos(angle), std::sin(angle)} + shift;
        }
        return roots;
    }
    const cplx u0 = std::pow(u_cubed, 1.0 / 3.0);
    for (int k = 0; k < 3; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / 3.0;
        const cplx omega{std::cos(angle), std::sin(angle)};
        const cplx u = u0 * omega;
        const cplx v = -p / (3.0 * u);
        roots[k] = u + v + shift;
    }
    return roots;
}

inline std::vector<double> sorted_desc(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

} // namespace tpn::testing

#endif // TPN_TESTS_HELPERS_HPP
