//
// A short tour: build a random standard-form preserver on M_2 (x) M_3,
// confirm that it preserves Ky Fan and Schatten norms on product matrices,
// recover its canonical (U, V, flags) data back from the raw superoperator
// matrix, and finish with the two textbook counterexamples.
//

#include <cstdio>

#include <tpn/tpn.hpp>

using namespace tpn;

int main() {
    const TensorShape shape{2, 3};
    Rng rng(2718);

    StandardForm form;
    form.u = random_unitary(shape.total(), rng);
    form.v = random_unitary(shape.total(), rng);
    form.flags = {FactorFlag::transpose, FactorFlag::identity};

    const SuperOperator phi = build_standard_form(form, shape);
    std::printf("built a standard-form preserver on a %zu-dimensional space\n",
                phi.ambient_dim());

    for (const auto& spec : {NormSpec::spectral(), NormSpec::ky_fan(3),
                             NormSpec::schatten(1.5)}) {
        const auto res = verify_on_products(phi, spec, 50, 1);
        std::printf("  %-14s preserved on products: max deviation %.2e\n",
                    spec.to_string().c_str(), res.max_deviation);
    }

    const auto rec = recover(phi);
    std::printf("recovered flags:");
    for (auto f : rec.form->flags)
        std::printf(" %s", f == FactorFlag::identity ? "identity" : "transpose");
    std::printf("  (residual %.2e over %zu assignments)\n", rec.residual, rec.flags_tested);

    // the C_r family shows product preservation does not reach all of M_N
    const ComplexMatrix c2 = c_r_matrix(2.0);
    const StandardForm pt{ComplexMatrix::identity(4), ComplexMatrix::identity(4),
                          {FactorFlag::identity, FactorFlag::transpose}};
    const ComplexMatrix image = build_standard_form(pt, TensorShape{2, 2}).apply(c2);
    std::printf("C_2 spectral norm %.1f vs %.1f after a factor transpose\n",
                norm(c2, NormSpec::spectral()), norm(image, NormSpec::spectral()));

    // the corner swap preserves Frobenius on everything yet has no
    // standard form
    const auto swap = swap_corner_map(2, 2);
    const auto frob = verify_on_products(swap, NormSpec::frobenius(), 100, 2);
    const auto verdict = recover(swap).verdict;
    std::printf("corner swap: frobenius deviation %.2e, standard form found: %s\n",
                frob.max_deviation,
                verdict == RecoveryVerdict::standard_form_found ? "yes" : "no");
    return 0;
}
