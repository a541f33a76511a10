//
// Project     : tpn
// Module      : tolerances
// Description : numerical tolerances shared across the library
//

#ifndef TPN_TOLERANCES_HPP
#define TPN_TOLERANCES_HPP

#include <cstddef>

namespace tpn::tol {

// Relative accuracy of the SVD / eigensolvers (reconstruction residual).
inline constexpr double svd = 1e-10;

// ‖U*U − I‖_F allowance for matrices claimed unitary.
inline constexpr double unitary = 1e-8;

// ‖A − A*‖_F allowance, relative to max(1, ‖A‖_F).
inline constexpr double hermitian = 1e-8;

// Numerical rank: singular values above rank_rel·max(1, s₁) count.
inline constexpr double rank_rel = 1e-8;

// Orthogonality residual max(‖AB*‖_F, ‖A*B‖_F), relative to
// max(1, ‖A‖_F·‖B‖_F).
inline constexpr double ortho = 1e-8;

// Jacobi sweeps: a column pair counts as converged once its Gram entry
// falls below gram_rel relative to the column norms; the sweep budget is
// sweep_factor·n sweeps.
inline constexpr double gram_rel = 1e-13;
inline constexpr std::size_t sweep_factor = 30;

// Ky Fan / Schatten norm equality checks in the lemma oracles.
inline constexpr double lemma_eq = 1e-8;

// "Singular values lie in {0,1}" means within sv01 of either value.
inline constexpr double sv01 = 1e-6;

// Product-preservation verification threshold (relative to the norm scale
// of the sampled inputs).
inline constexpr double verify = 1e-6;

// CCNR flag margin: entangled when the realignment trace norm exceeds
// 1 + ccnr.
inline constexpr double ccnr = 1e-8;

// recover() accepts a candidate when the reconstruction residual is below
// recover_rel·N for an N×N ambient space.
inline constexpr double recover_rel = 1e-6;

} // namespace tpn::tol

#endif // TPN_TOLERANCES_HPP
