//
// Project     : tpn
// Module      : gallery
// Description : named witness matrices and maps (the C_r family, the
//               corner-swap Frobenius isometry), the CCNR realignment
//               criterion, and seeded product-state generators
//

#ifndef TPN_GALLERY_HPP
#define TPN_GALLERY_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <tpn/decomp.hpp>
#include <tpn/errors.hpp>
#include <tpn/matrix.hpp>
#include <tpn/preserver.hpp>
#include <tpn/random.hpp>
#include <tpn/tolerances.hpp>

namespace tpn {

// C_r = r²E₁₁⊗E₁₁ + r(E₁₂⊗E₁₂ + E₂₁⊗E₂₁) + E₂₂⊗E₂₂ in M₂⊗M₂.
// Singular values {r²+1, 0, 0, 0}; its factor-2 partial transpose has
// {r², r, r, 1}, which separates every norm here except Frobenius.
inline ComplexMatrix c_r_matrix(double r) {
    if (!(r >= 0.0))
        throw precondition_error("c_r_matrix: r must be nonnegative");
    const auto e = [](std::size_t i, std::size_t j) {
        return ComplexMatrix::matrix_unit(2, 2, i, j);
    };
    ComplexMatrix c = kron(e(0, 0), e(0, 0));
    c *= r * r;
    ComplexMatrix mid = kron(e(0, 1), e(0, 1)) + kron(e(1, 0), e(1, 0));
    mid *= r;
    return c + mid + kron(e(1, 1), e(1, 1));
}

// The Frobenius-preserving map that exchanges entries (1, mn) and (mn, 1)
// and fixes everything else, as a vec-coordinate permutation.  It is an
// inner-product isometry but not of standard form.
inline SuperOperator swap_corner_map(std::size_t m, std::size_t n) {
    if (m < 2 || n < 2)
        throw dimension_error("swap_corner_map: factors must have dimension >= 2");
    const std::size_t big = m * n;
    ComplexMatrix s = ComplexMatrix::identity(big * big);
    // vec position of entry (i, j) is j·N + i
    const std::size_t pos_top = (big - 1) * big;  // entry (0, N-1)
    const std::size_t pos_bot = big - 1;          // entry (N-1, 0)
    s(pos_top, pos_top) = 0.0;
    s(pos_bot, pos_bot) = 0.0;
    s(pos_top, pos_bot) = 1.0;
    s(pos_bot, pos_top) = 1.0;
    return SuperOperator(TensorShape{m, n}, std::move(s));
}

struct CcnrReport {
    double realignment_trace_norm = 0.0;
    bool flagged_entangled = false;   // true is a certificate; false is inconclusive
    std::vector<std::string> warnings;
};

// CCNR separability screen: trace norm of the (m,n)-realignment of rho.
// Values above 1 certify entanglement.  Hermiticity/psd defects are
// warned about, never rejected; a wrong trace is a hard error.
inline CcnrReport ccnr_check(const ComplexMatrix& rho, std::size_t m, std::size_t n) {
    if (rho.rows() != m * n || rho.cols() != m * n)
        throw dimension_error("ccnr_check: state must be (mn) x (mn)");
    if (std::abs(rho.trace() - cplx{1.0, 0.0}) > 1e-6)
        throw precondition_error("ccnr_check: trace differs from 1 by more than 1e-6");

    CcnrReport rep;
    const double scale = std::max(1.0, rho.frobenius_norm());
    if (rho.hermiticity_defect() > tol::hermitian * scale) {
        rep.warnings.push_back("state is not Hermitian within tolerance");
    } else {
        ComplexMatrix sym(rho.rows(), rho.cols());
        for (std::size_t i = 0; i < rho.rows(); ++i)
            for (std::size_t j = 0; j < rho.cols(); ++j)
                sym(i, j) = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
        const auto eig = hermitian_eig(sym);
        if (eig.values.back() < -tol::hermitian * scale)
            rep.warnings.push_back("state has a negative eigenvalue beyond tolerance");
    }

    const ComplexMatrix realigned = rearrange(rho, m, m, n, n);
    double tn = 0.0;
    for (double s : singular_values(realigned)) tn += s;
    rep.realignment_trace_norm = tn;
    rep.flagged_entangled = tn > 1.0 + tol::ccnr;
    return rep;
}

// ⊗ᵢAᵢ with independent complex Gaussian factors.
inline ComplexMatrix random_product_matrix(const TensorShape& shape, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ComplexMatrix> factors;
    factors.reserve(shape.factors());
    for (std::size_t s = 0; s < shape.factors(); ++s)
        factors.push_back(random_gaussian_matrix(shape.dims[s], shape.dims[s], rng));
    return kron_all(factors);
}

// ½·Σ_{i,j} E_ij⊗E_ij: the maximally entangled two-qubit state.  Its
// realignment is I₄/2, so the CCNR trace norm is exactly 2.
inline ComplexMatrix maximally_entangled_state() {
    ComplexMatrix rho(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            rho += kron(ComplexMatrix::matrix_unit(2, 2, i, j),
                        ComplexMatrix::matrix_unit(2, 2, i, j));
    rho *= 0.5;
    return rho;
}

// (I₂/2)⊗(I₂/2): realignment trace norm ½.
inline ComplexMatrix maximally_mixed_product_state() {
    ComplexMatrix rho = ComplexMatrix::identity(4);
    rho *= 0.25;
    return rho;
}

// xx*⊗yy* for seeded random unit vectors: realignment trace norm exactly 1,
// the CCNR boundary.
inline ComplexMatrix random_pure_product_state(std::size_t m, std::size_t n,
                                               std::uint64_t seed) {
    Rng rng(seed);
    const auto projector = [&rng](std::size_t dim) {
        std::vector<cplx> x(dim);
        double nrm = 0.0;
        for (auto& e : x) {
            e = rng.gaussian_cplx();
            nrm += std::norm(e);
        }
        nrm = std::sqrt(nrm);
        ComplexMatrix p(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                p(i, j) = x[i] * std::conj(x[j]) / (nrm * nrm);
        return p;
    };
    return kron(projector(m), projector(n));
}

// Σᵢ pᵢ·Aᵢ⊗Bᵢ with psd unit-trace factors and a random probability vector:
// separable by construction, so CCNR must not flag it.
inline ComplexMatrix random_separable_mixture(std::size_t m, std::size_t n,
                                              std::size_t terms, std::uint64_t seed) {
    if (terms < 1)
        throw precondition_error("random_separable_mixture: need at least one term");
    Rng rng(seed);
    const auto psd_state = [&rng](std::size_t dim) {
        const ComplexMatrix g = random_gaussian_matrix(dim, dim, rng);
        ComplexMatrix p = g * g.adjoint();
        p *= 1.0 / p.trace().real();
        return p;
    };
    std::vector<double> weights(terms);
    double total = 0.0;
    for (auto& w : weights) {
        w = rng.uniform() + 1e-3;
        total += w;
    }
    ComplexMatrix rho(m * n, m * n);
    for (std::size_t t = 0; t < terms; ++t)
        rho += (weights[t] / total) * kron(psd_state(m), psd_state(n));
    return rho;
}

} // namespace tpn

#endif // TPN_GALLERY_HPP
