//
// Project     : tpn
// Module      : norms
// Description : Ky Fan k-norms, Schatten p-norms, norm-attaining vectors
//

#ifndef TPN_NORMS_HPP
#define TPN_NORMS_HPP

#include <cmath>
#include <string>
#include <utility>

#include <tpn/decomp.hpp>
#include <tpn/errors.hpp>
#include <tpn/matrix.hpp>

namespace tpn {

// Selects a unitarily invariant norm.  Spectral stands in for both
// Ky Fan 1 and Schatten infinity.
struct NormSpec {
    enum class Kind { ky_fan, schatten, spectral, trace_norm, frobenius };

    Kind kind = Kind::frobenius;
    std::size_t k = 1;    // ky_fan only
    double p = 2.0;       // schatten only

    static NormSpec ky_fan(std::size_t k) {
        if (k < 1) throw invalid_spec_error("NormSpec: Ky Fan k must be >= 1");
        NormSpec s;
        s.kind = Kind::ky_fan;
        s.k = k;
        return s;
    }

    static NormSpec schatten(double p) {
        if (!(p >= 1.0) || !std::isfinite(p))
            throw invalid_spec_error("NormSpec: Schatten p must satisfy 1 <= p < inf");
        NormSpec s;
        s.kind = Kind::schatten;
        s.p = p;
        return s;
    }

    static NormSpec spectral() {
        NormSpec s;
        s.kind = Kind::spectral;
        return s;
    }

    static NormSpec trace_norm() {
        NormSpec s;
        s.kind = Kind::trace_norm;
        return s;
    }

    static NormSpec frobenius() {
        NormSpec s;
        s.kind = Kind::frobenius;
        return s;
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::ky_fan: return "ky-fan:" + std::to_string(k);
            case Kind::schatten: {
                std::string ps = std::to_string(p);
                ps.erase(ps.find_last_not_of('0') + 1);
                if (!ps.empty() && ps.back() == '.') ps.pop_back();
                return "schatten:" + ps;
            }
            case Kind::spectral: return "spectral";
            case Kind::trace_norm: return "trace-norm";
            case Kind::frobenius: return "frobenius";
        }
        return "?";
    }
};

// Evaluates the selected norm.  Ky Fan k is allowed up to the ambient
// dimension max(rows, cols); indices past min(rows, cols) sum zero-padded
// singular values.  Frobenius is computed entrywise, everything else from
// the singular values.
inline double norm(const ComplexMatrix& a, const NormSpec& spec) {
    if (a.rows() == 0 || a.cols() == 0)
        throw dimension_error("norm: empty matrix");

    switch (spec.kind) {
        case NormSpec::Kind::frobenius:
            return a.frobenius_norm();
        case NormSpec::Kind::spectral: {
            return singular_values(a)[0];
        }
        case NormSpec::Kind::trace_norm: {
            const auto s = singular_values(a);
            double sum = 0.0;
            for (double v : s) sum += v;
            return sum;
        }
        case NormSpec::Kind::ky_fan: {
            const std::size_t ambient = std::max(a.rows(), a.cols());
            if (spec.k < 1 || spec.k > ambient)
                throw invalid_spec_error("norm: Ky Fan k out of range for this matrix");
            const auto s = singular_values(a);
            double sum = 0.0;
            for (std::size_t i = 0; i < std::min<std::size_t>(spec.k, s.size()); ++i)
                sum += s[i];
            return sum;
        }
        case NormSpec::Kind::schatten: {
            if (!(spec.p >= 1.0) || !std::isfinite(spec.p))
                throw invalid_spec_error("norm: Schatten p must satisfy 1 <= p < inf");
            const auto s = singular_values(a);
            if (spec.p == 1.0) {
                double sum = 0.0;
                for (double v : s) sum += v;
                return sum;
            }
            double sum = 0.0;
            for (double v : s) sum += std::pow(v, spec.p);
            return std::pow(sum, 1.0 / spec.p);
        }
    }
    throw invalid_spec_error("norm: unknown spec");
}

// Leading left/right singular vectors: unit x, y with x*Ay = s1(A).
inline std::pair<ComplexMatrix, ComplexMatrix> norm_attaining_vectors(const ComplexMatrix& a) {
    if (a.frobenius_norm() == 0.0)
        throw zero_matrix_error("norm_attaining_vectors: zero matrix");
    const auto spec = svd(a, true);
    ComplexMatrix x(a.rows(), 1);
    ComplexMatrix y(a.cols(), 1);
    for (std::size_t i = 0; i < a.rows(); ++i) x(i, 0) = (*spec.left)(i, 0);
    for (std::size_t i = 0; i < a.cols(); ++i) y(i, 0) = (*spec.right)(i, 0);
    return {std::move(x), std::move(y)};
}

} // namespace tpn

#endif // TPN_NORMS_HPP
