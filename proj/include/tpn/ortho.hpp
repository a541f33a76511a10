//
// Project     : tpn
// Module      : ortho
// Description : matrix orthogonality (AB* = A*B = 0), simultaneous
//               diagonalization, and numerical oracles for the Ky Fan /
//               Schatten additivity lemmas and the Clarkson inequalities
//

#ifndef TPN_ORTHO_HPP
#define TPN_ORTHO_HPP

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <tpn/decomp.hpp>
#include <tpn/errors.hpp>
#include <tpn/matrix.hpp>
#include <tpn/norms.hpp>
#include <tpn/random.hpp>
#include <tpn/tolerances.hpp>

namespace tpn {

struct OrthoReport {
    bool orthogonal = false;
    double residual = 0.0;     // max(‖AB*‖_F, ‖A*B‖_F)
    std::size_t rank_a = 0;
    std::size_t rank_b = 0;
};

// A ⊥ B iff AB* = A*B = 0; both products are required.
inline OrthoReport is_orthogonal(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_error("is_orthogonal: shapes differ");
    OrthoReport rep;
    rep.residual = std::max((a * b.adjoint()).frobenius_norm(),
                            (a.adjoint() * b).frobenius_norm());
    rep.orthogonal =
        rep.residual <= tol::ortho * std::max(1.0, a.frobenius_norm() * b.frobenius_norm());
    rep.rank_a = numerical_rank(a);
    rep.rank_b = numerical_rank(b);
    return rep;
}

struct SimultaneousDiagonalization {
    ComplexMatrix u;               // unitary
    ComplexMatrix v;               // unitary
    std::vector<double> diag_a;    // nonnegative, UAV = Diag(diag_a)
    std::vector<double> diag_b;    // nonnegative, UBV = Diag(diag_b), disjoint support
};

// For orthogonal A, B produces unitary U, V with UAV and UBV nonnegative
// diagonal and disjointly supported.  In the singular basis of A the
// orthogonality relations zero out the leading rows and columns of B, so
// an SVD of the trailing block finishes the job.
inline SimultaneousDiagonalization simultaneous_diagonalize(const ComplexMatrix& a,
                                                            const ComplexMatrix& b) {
    if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_error("simultaneous_diagonalize: need equal square shapes");
    const auto rep = is_orthogonal(a, b);
    if (!rep.orthogonal)
        throw not_orthogonal_error("simultaneous_diagonalize: inputs are not orthogonal");

    const std::size_t n = a.rows();
    const auto sa = svd(a, true);
    const std::size_t ra = numerical_rank(std::span<const double>(sa.values));

    const ComplexMatrix bp = sa.left->adjoint() * b * (*sa.right);
    const std::size_t nb = n - ra;

    SimultaneousDiagonalization out;
    out.diag_a = sa.values;
    out.diag_b.assign(n, 0.0);

    if (nb == 0) {
        out.u = sa.left->adjoint();
        out.v = *sa.right;
        return out;
    }

    ComplexMatrix b2(nb, nb);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            b2(i, j) = bp(ra + i, ra + j);
    const auto sb = svd(b2, true);
    for (std::size_t i = 0; i < nb; ++i) out.diag_b[ra + i] = sb.values[i];

    // U = (I ⊕ U₂*)·Ua*,  V = Va·(I ⊕ V₂)
    ComplexMatrix lblock = ComplexMatrix::identity(n);
    ComplexMatrix rblock = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            lblock(ra + i, ra + j) = std::conj((*sb.left)(j, i));
            rblock(ra + i, ra + j) = (*sb.right)(i, j);
        }
    out.u = lblock * sa.left->adjoint();
    out.v = (*sa.right) * rblock;
    return out;
}

// Samples ‖αA+βB‖_(k) = |α|‖A‖_(k) + |β|‖B‖_(k) over random complex pairs
// and cross-validates against the algebraic characterization
// (A ⊥ B and rank A + rank B ≤ k).  Disagreement means a library bug or a
// genuine counterexample and is raised as lemma_violation_error.
inline bool additivity_check(const ComplexMatrix& a, const ComplexMatrix& b,
                             std::size_t k, std::size_t samples, std::uint64_t seed) {
    if (a.frobenius_norm() == 0.0 || b.frobenius_norm() == 0.0)
        throw zero_matrix_error("additivity_check: zero matrix");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_error("additivity_check: shapes differ");

    const NormSpec spec = NormSpec::ky_fan(k);
    const double norm_a = norm(a, spec);
    const double norm_b = norm(b, spec);

    Rng rng(seed);
    bool additive = true;
    for (std::size_t t = 0; t < samples && additive; ++t) {
        const cplx alpha = (0.5 + 1.5 * rng.uniform()) * rng.unimodular();
        const cplx beta = (0.5 + 1.5 * rng.uniform()) * rng.unimodular();
        const double lhs = norm(alpha * a + beta * b, spec);
        const double rhs = std::abs(alpha) * norm_a + std::abs(beta) * norm_b;
        if (std::abs(lhs - rhs) > tol::lemma_eq * std::max(1.0, rhs)) additive = false;
    }

    const auto rep = is_orthogonal(a, b);
    const bool characterized = rep.orthogonal && (rep.rank_a + rep.rank_b <= k);
    if (additive != characterized)
        throw lemma_violation_error(
            "additivity_check: sampled additivity disagrees with orthogonality + rank bound");
    return additive;
}

// Square root of a positive semidefinite matrix.  Eigenvalues in
// [-tol, 0) are floored to zero; anything lower is rejected.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
    const auto eig = hermitian_eig(a);
    const double floor_tol = tol::hermitian * std::max(1.0, a.frobenius_norm());
    const std::size_t n = a.rows();
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double lambda = eig.values[i];
        if (lambda < -floor_tol)
            throw not_psd_error("psd_sqrt: matrix has a significantly negative eigenvalue");
        if (lambda < 0.0) lambda = 0.0;
        d(i, i) = std::sqrt(lambda);
    }
    return eig.vectors * d * eig.vectors.adjoint();
}

struct PsdHermitianSpectrum {
    std::vector<double> spectrum;   // eigenvalues of A^{1/2} B A^{1/2} = σ(AB)
    bool top_block_zero = false;    // compression of B to range(A) vanishes
};

// σ(AB) for psd A and Hermitian B, computed through the Hermitian matrix
// A^{1/2} B A^{1/2} (same spectrum), so reality is automatic.  When the
// spectrum vanishes, additionally checks that B compresses to zero on
// range(A), the block structure the zero spectrum forces.
inline PsdHermitianSpectrum psd_hermitian_spectrum_check(const ComplexMatrix& a,
                                                         const ComplexMatrix& b) {
    if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_error("psd_hermitian_spectrum_check: need equal square shapes");
    if (b.hermiticity_defect() > tol::hermitian * std::max(1.0, b.frobenius_norm()))
        throw not_hermitian_error("psd_hermitian_spectrum_check: B is not Hermitian");

    const auto eig_a = hermitian_eig(a);   // throws not_hermitian_error for bad A
    const double floor_tol = tol::hermitian * std::max(1.0, a.frobenius_norm());
    if (!eig_a.values.empty() && eig_a.values.back() < -floor_tol)
        throw not_psd_error("psd_hermitian_spectrum_check: A is not positive semidefinite");

    const std::size_t n = a.rows();
    ComplexMatrix sqrt_d(n, n);
    for (std::size_t i = 0; i < n; ++i)
        sqrt_d(i, i) = std::sqrt(std::max(0.0, eig_a.values[i]));
    const ComplexMatrix root = eig_a.vectors * sqrt_d * eig_a.vectors.adjoint();

    PsdHermitianSpectrum out;
    out.spectrum = hermitian_eig(root * b * root).values;

    const double scale = std::max(1.0, a.frobenius_norm() * b.frobenius_norm());
    bool spectrum_zero = true;
    for (double lambda : out.spectrum)
        if (std::abs(lambda) > tol::ortho * scale) spectrum_zero = false;

    if (spectrum_zero) {
        // rank of A from its (nonnegative) eigenvalues
        std::size_t ra = numerical_rank(std::span<const double>(eig_a.values));
        ComplexMatrix range(n, ra);
        for (std::size_t j = 0; j < ra; ++j)
            for (std::size_t i = 0; i < n; ++i)
                range(i, j) = eig_a.vectors(i, j);
        const double block = (range.adjoint() * b * range).frobenius_norm();
        out.top_block_zero = block <= tol::ortho * scale;
    }
    return out;
}

enum class LemmaVerdict { hypotheses_failed, conclusion_holds, conclusion_violated };

// 16 equally spaced unimodular scalars plus 8 seeded random ones.
inline std::vector<cplx> default_unimodular_alphas(std::uint64_t seed) {
    std::vector<cplx> alphas;
    alphas.reserve(24);
    for (int j = 0; j < 16; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / 16.0;
        alphas.emplace_back(std::cos(angle), std::sin(angle));
    }
    Rng rng(seed);
    for (int j = 0; j < 8; ++j) alphas.push_back(rng.unimodular());
    return alphas;
}

namespace detail {

inline bool values_in_01(std::span<const double> values) {
    for (double s : values)
        if (std::min(std::abs(s), std::abs(s - 1.0)) > tol::sv01) return false;
    return true;
}

} // namespace detail

// Hypotheses: ‖A‖, ‖B‖ ≤ 1 (precondition), rank A ≤ k, and for every
// supplied unit α both ‖A+αB‖_(k) = k and
// ‖2A+αB‖_(k) = ‖A‖_(k) + ‖A+αB‖_(k).  Conclusion: A ⊥ B and the
// singular values of A all lie in {0,1}.
inline LemmaVerdict lemma24_oracle(const ComplexMatrix& a, const ComplexMatrix& b,
                                   std::size_t k, std::span<const cplx> alphas) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_error("lemma24_oracle: shapes differ");
    const auto sa = singular_values(a);
    const auto sb = singular_values(b);
    if (sa[0] > 1.0 + tol::lemma_eq || sb[0] > 1.0 + tol::lemma_eq)
        throw precondition_error("lemma24_oracle: spectral norm exceeds 1");

    const NormSpec spec = NormSpec::ky_fan(k);
    const double kk = static_cast<double>(k);
    bool hypotheses = numerical_rank(std::span<const double>(sa)) <= k;
    const double norm_a = norm(a, spec);
    for (const cplx& alpha : alphas) {
        if (!hypotheses) break;
        const ComplexMatrix sum = a + alpha * b;
        const double n1 = norm(sum, spec);
        if (std::abs(n1 - kk) > tol::lemma_eq * std::max(1.0, kk)) hypotheses = false;
        const double n2 = norm(a + sum, spec);   // 2A + αB
        if (std::abs(n2 - (norm_a + n1)) > tol::lemma_eq * std::max(1.0, norm_a + n1))
            hypotheses = false;
    }
    if (!hypotheses) return LemmaVerdict::hypotheses_failed;

    const bool conclusion =
        is_orthogonal(a, b).orthogonal && detail::values_in_01(std::span<const double>(sa));
    return conclusion ? LemmaVerdict::conclusion_holds : LemmaVerdict::conclusion_violated;
}

// Preconditions: rank A ≥ k and σ(A*A) ⊆ {0,1}.  Hypothesis:
// ‖A+αB‖_(k) = k for every supplied unit α.  Conclusion: A ⊥ B.
inline LemmaVerdict lemma25_oracle(const ComplexMatrix& a, const ComplexMatrix& b,
                                   std::size_t k, std::span<const cplx> alphas) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_error("lemma25_oracle: shapes differ");
    const auto sa = singular_values(a);
    if (numerical_rank(std::span<const double>(sa)) < k)
        throw precondition_error("lemma25_oracle: rank A below k");
    if (!detail::values_in_01(std::span<const double>(sa)))
        throw precondition_error("lemma25_oracle: singular values of A not in {0,1}");

    const NormSpec spec = NormSpec::ky_fan(k);
    const double kk = static_cast<double>(k);
    for (const cplx& alpha : alphas) {
        const double n1 = norm(a + alpha * b, spec);
        if (std::abs(n1 - kk) > tol::lemma_eq * std::max(1.0, kk))
            return LemmaVerdict::hypotheses_failed;
    }
    return is_orthogonal(a, b).orthogonal ? LemmaVerdict::conclusion_holds
                                          : LemmaVerdict::conclusion_violated;
}

struct ClarksonReport {
    double lower_gap = 0.0;      // middle − lower bound (orientation per p)
    double upper_gap = 0.0;      // upper bound − middle
    bool equality_case = false;
    bool degenerate = false;     // T + S or T − S vanishes
    bool orthogonal = false;     // confirmed when equality holds nondegenerately
    double ortho_residual = 0.0;
};

// Two-sided Clarkson–McCarthy inequality for ‖T±S‖_p^p.  For p < 2 the
// bounds are 2^{p−1}(‖T‖_p^p+‖S‖_p^p) ≤ middle ≤ 2(…); for p > 2 they
// swap.  p = 2 is rejected: every gap is identically zero there.  A
// nondegenerate equality forces T ⊥ S; failure of that consequence is a
// lemma violation.
inline ClarksonReport clarkson_check(const ComplexMatrix& t, const ComplexMatrix& s, double p) {
    if (t.rows() != s.rows() || t.cols() != s.cols())
        throw dimension_error("clarkson_check: shapes differ");
    if (!(p >= 1.0) || !std::isfinite(p))
        throw invalid_spec_error("clarkson_check: need 1 <= p < inf");
    if (p == 2.0)
        throw invalid_spec_error("clarkson_check: p = 2 always gives equality");

    const auto ppow = [p](const ComplexMatrix& x) {
        double sum = 0.0;
        for (double v : singular_values(x)) sum += std::pow(v, p);
        return sum;
    };

    const double base = ppow(t) + ppow(s);
    const double middle = ppow(t + s) + ppow(t - s);
    const double small = std::pow(2.0, p - 1.0) * base;
    const double big = 2.0 * base;
    const double lower = (p < 2.0) ? small : big;
    const double upper = (p < 2.0) ? big : small;

    ClarksonReport rep;
    rep.lower_gap = middle - lower;
    rep.upper_gap = upper - middle;

    const double scale = std::max(1.0, middle);
    rep.equality_case =
        rep.lower_gap <= tol::lemma_eq * scale || rep.upper_gap <= tol::lemma_eq * scale;

    const double fscale = std::max({1.0, t.frobenius_norm(), s.frobenius_norm()});
    rep.degenerate = (t + s).frobenius_norm() <= 1e-10 * fscale ||
                     (t - s).frobenius_norm() <= 1e-10 * fscale;

    if (rep.equality_case && !rep.degenerate) {
        const auto ortho = is_orthogonal(t, s);
        rep.ortho_residual = ortho.residual;
        rep.orthogonal = ortho.residual <=
                         1e-6 * std::max(1.0, t.frobenius_norm() * s.frobenius_norm());
        if (!rep.orthogonal)
            throw lemma_violation_error(
                "clarkson_check: equality case without orthogonality");
    }
    return rep;
}

} // namespace tpn

#endif // TPN_ORTHO_HPP
