//
// Project     : tpn
// Module      : decomp
// Description : SVD via one-sided Jacobi, Hermitian eigendecomposition via
//               two-sided Jacobi, numerical rank
//

#ifndef TPN_DECOMP_HPP
#define TPN_DECOMP_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include <tpn/errors.hpp>
#include <tpn/matrix.hpp>
#include <tpn/tolerances.hpp>

namespace tpn {

// Singular values (non-increasing) with optional unitary factors satisfying
// A = left · Diag(values) · right*.
struct SingularSpectrum {
    std::vector<double> values;
    std::optional<ComplexMatrix> left;
    std::optional<ComplexMatrix> right;
};

struct EigenDecomposition {
    std::vector<double> values;   // non-increasing
    ComplexMatrix vectors;        // unitary, A = vectors · Diag(values) · vectors*
};

namespace detail {

// 2x2 unitary J = [[c, s], [-z*s, z*c]] (z unimodular) diagonalizing the
// Hermitian block [[a, b], [conj(b), d]] as J* G J.
struct JacobiRotation {
    double c = 1.0;
    double s = 0.0;
    cplx z = {1.0, 0.0};
};

inline JacobiRotation make_rotation(double diag_p, double diag_q, cplx off) {
    JacobiRotation rot;
    const double mag = std::abs(off);
    rot.z = std::conj(off) / mag;
    const double tau = (diag_q - diag_p) / (2.0 * mag);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    rot.c = 1.0 / std::sqrt(1.0 + t * t);
    rot.s = t * rot.c;
    return rot;
}

// Fills the columns of u marked in `fill` so the result is unitary.
// Pivoted Gram-Schmidt on the columns of the complement projector
// I - U_have·U_have*: the pivot column norm stays bounded away from zero
// while slots remain, so the completion never runs dry.
inline void complete_basis(ComplexMatrix& u, const std::vector<bool>& fill) {
    const std::size_t m = u.rows();
    std::vector<std::size_t> have, need;
    for (std::size_t j = 0; j < u.cols(); ++j)
        (fill[j] ? need : have).push_back(j);
    if (need.empty()) return;

    ComplexMatrix proj = ComplexMatrix::identity(m);
    for (std::size_t k : have)
        for (std::size_t i = 0; i < m; ++i) {
            const cplx uik = u(i, k);
            for (std::size_t j = 0; j < m; ++j)
                proj(i, j) -= uik * std::conj(u(j, k));
        }

    std::vector<bool> used(m, false);
    std::vector<std::size_t> accepted = have;
    for (std::size_t slot : need) {
        std::size_t best = 0;
        double best_sq = -1.0;
        for (std::size_t c = 0; c < m; ++c) {
            if (used[c]) continue;
            double sq = 0.0;
            for (std::size_t i = 0; i < m; ++i) sq += std::norm(proj(i, c));
            if (sq > best_sq) {
                best_sq = sq;
                best = c;
            }
        }
        used[best] = true;

        std::vector<cplx> col(m);
        for (std::size_t i = 0; i < m; ++i) col[i] = proj(i, best);
        // refinement pass against everything accepted so far
        for (std::size_t k : accepted) {
            cplx dot{0.0, 0.0};
            for (std::size_t i = 0; i < m; ++i) dot += std::conj(u(i, k)) * col[i];
            for (std::size_t i = 0; i < m; ++i) col[i] -= dot * u(i, k);
        }
        double nrm = 0.0;
        for (const auto& e : col) nrm += std::norm(e);
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < m; ++i) u(i, slot) = col[i] / nrm;
        accepted.push_back(slot);

        // deflate the remaining projector columns
        for (std::size_t c = 0; c < m; ++c) {
            if (used[c]) continue;
            cplx dot{0.0, 0.0};
            for (std::size_t i = 0; i < m; ++i) dot += std::conj(u(i, slot)) * proj(i, c);
            for (std::size_t i = 0; i < m; ++i) proj(i, c) -= dot * u(i, slot);
        }
    }
}

// One-sided Jacobi on the columns of a tall (rows >= cols) matrix.
inline SingularSpectrum jacobi_svd_tall(const ComplexMatrix& a, bool want_factors) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const double fnorm = a.frobenius_norm();

    SingularSpectrum out;
    if (fnorm == 0.0) {
        out.values.assign(n, 0.0);
        if (want_factors) {
            out.left = ComplexMatrix::identity(m);
            out.right = ComplexMatrix::identity(n);
        }
        return out;
    }

    ComplexMatrix w = a;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const std::size_t max_sweeps = tol::sweep_factor * n;
    bool converged = (n <= 1);
    for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double gpp = 0.0, gqq = 0.0;
                cplx gpq{0.0, 0.0};
                for (std::size_t k = 0; k < m; ++k) {
                    gpp += std::norm(w(k, p));
                    gqq += std::norm(w(k, q));
                    gpq += std::conj(w(k, p)) * w(k, q);
                }
                const double off = std::abs(gpq);
                if (off == 0.0 || off <= tol::gram_rel * std::sqrt(gpp * gqq))
                    continue;
                converged = false;
                const auto rot = make_rotation(gpp, gqq, gpq);
                for (std::size_t k = 0; k < m; ++k) {
                    const cplx wp = w(k, p), wq = w(k, q);
                    w(k, p) = rot.c * wp - rot.s * (rot.z * wq);
                    w(k, q) = rot.s * wp + rot.c * (rot.z * wq);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vp = v(k, p), vq = v(k, q);
                    v(k, p) = rot.c * vp - rot.s * (rot.z * vq);
                    v(k, q) = rot.s * vp + rot.c * (rot.z * vq);
                }
            }
        }
    }
    if (!converged) {
        // budget exhausted: accept only if the absolute criterion holds
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                cplx gpq{0.0, 0.0};
                for (std::size_t k = 0; k < m; ++k) gpq += std::conj(w(k, p)) * w(k, q);
                if (std::abs(gpq) >= tol::gram_rel * fnorm * fnorm)
                    throw convergence_error("svd: Jacobi sweep budget exhausted");
            }
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) s += std::norm(w(k, j));
        sigma[j] = std::sqrt(s);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.values[j] = sigma[order[j]];

    if (want_factors) {
        ComplexMatrix left(m, m);
        std::vector<bool> fill(m, true);
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t src = order[j];
            if (sigma[src] > 0.0) {
                for (std::size_t k = 0; k < m; ++k) left(k, j) = w(k, src) / sigma[src];
                fill[j] = false;
            }
        }
        detail::complete_basis(left, fill);

        ComplexMatrix right(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                right(k, j) = v(k, order[j]);

        out.left = std::move(left);
        out.right = std::move(right);
    }
    return out;
}

} // namespace detail

// Full SVD.  Values come back non-increasing with length min(rows, cols);
// when requested, left (rows x rows) and right (cols x cols) are unitary
// with A = left · Diag(values) · right*.
inline SingularSpectrum svd(const ComplexMatrix& a, bool want_factors = false) {
    if (a.rows() == 0 || a.cols() == 0)
        throw dimension_error("svd: empty matrix");
    if (!a.is_finite())
        throw error("svd: input has non-finite entries");

    if (a.rows() >= a.cols())
        return detail::jacobi_svd_tall(a, want_factors);

    // wide: decompose the adjoint and swap the factors
    SingularSpectrum t = detail::jacobi_svd_tall(a.adjoint(), want_factors);
    SingularSpectrum out;
    out.values = std::move(t.values);
    if (want_factors) {
        out.left = std::move(t.right);
        out.right = std::move(t.left);
    }
    return out;
}

inline std::vector<double> singular_values(const ComplexMatrix& a) {
    return svd(a, false).values;
}

// Hermitian eigendecomposition by two-sided Jacobi.  Throws
// not_hermitian_error when ‖A − A*‖_F exceeds the tolerance.
inline EigenDecomposition hermitian_eig(const ComplexMatrix& a) {
    if (!a.is_square())
        throw dimension_error("hermitian_eig: matrix is not square");
    if (!a.is_finite())
        throw error("hermitian_eig: input has non-finite entries");
    const double fnorm = a.frobenius_norm();
    if (a.hermiticity_defect() > tol::hermitian * std::max(1.0, fnorm))
        throw not_hermitian_error("hermitian_eig: matrix is not Hermitian");

    const std::size_t n = a.rows();
    // exact symmetrization removes the tolerated drift
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    ComplexMatrix q = ComplexMatrix::identity(n);

    const double threshold = tol::gram_rel * fnorm;
    const std::size_t max_sweeps = tol::sweep_factor * n;
    bool converged = (n <= 1) || (fnorm == 0.0);
    for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t qq = p + 1; qq < n; ++qq) {
                const cplx b = h(p, qq);
                if (std::abs(b) <= threshold) continue;
                converged = false;
                const auto rot = detail::make_rotation(h(p, p).real(), h(qq, qq).real(), b);
                // H <- H·J, then H <- J*·H, Q <- Q·J
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx hp = h(k, p), hq = h(k, qq);
                    h(k, p) = rot.c * hp - rot.s * (rot.z * hq);
                    h(k, qq) = rot.s * hp + rot.c * (rot.z * hq);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx hp = h(p, k), hq = h(qq, k);
                    h(p, k) = rot.c * hp - rot.s * (std::conj(rot.z) * hq);
                    h(qq, k) = rot.s * hp + rot.c * (std::conj(rot.z) * hq);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx qp = q(k, p), qn = q(k, qq);
                    q(k, p) = rot.c * qp - rot.s * (rot.z * qn);
                    q(k, qq) = rot.s * qp + rot.c * (rot.z * qn);
                }
            }
        }
    }
    if (!converged)
        throw convergence_error("hermitian_eig: Jacobi sweep budget exhausted");

    std::vector<double> lambda(n);
    for (std::size_t i = 0; i < n; ++i) lambda[i] = h(i, i).real();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return lambda[i] > lambda[j]; });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = lambda[order[j]];
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = q(k, order[j]);
    }
    return out;
}

// Count of singular values above rank_rel·max(1, s₁).
inline std::size_t numerical_rank(std::span<const double> values) {
    if (values.empty()) return 0;
    const double threshold = tol::rank_rel * std::max(1.0, values[0]);
    std::size_t r = 0;
    for (double s : values)
        if (s > threshold) ++r;
    return r;
}

inline std::size_t numerical_rank(const ComplexMatrix& a) {
    const auto s = singular_values(a);
    return numerical_rank(std::span<const double>(s));
}

} // namespace tpn

#endif // TPN_DECOMP_HPP
