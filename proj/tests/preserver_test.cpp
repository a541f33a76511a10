#include <catch2/catch_amalgamated.hpp>

#include <tpn/gallery.hpp>
#include <tpn/norms.hpp>
#include <tpn/preserver.hpp>
#include <tpn/random.hpp>

#include "helpers.hpp"

using namespace tpn;
using tpn::testing::matrix_distance;

namespace {

StandardForm random_form(const TensorShape& shape, std::uint64_t seed) {
    Rng rng(seed);
    StandardForm f;
    f.u = random_unitary(shape.total(), rng);
    f.v = random_unitary(shape.total(), rng);
    for (std::size_t s = 0; s < shape.factors(); ++s)
        f.flags.push_back(rng.uniform() < 0.5 ? FactorFlag::identity : FactorFlag::transpose);
    return f;
}

// Compares two unitary pairs modulo the (λU, λ̄V) gauge by normalizing both
// with the library's gauge rule.
bool same_up_to_gauge(const StandardForm& lhs, const StandardForm& rhs, double tolerance) {
    ComplexMatrix lu = lhs.u, lv = lhs.v, ru = rhs.u, rv = rhs.v;
    detail::fix_phase_gauge(lu, lv);
    detail::fix_phase_gauge(ru, rv);
    return matrix_distance(lu, ru) <= tolerance && matrix_distance(lv, rv) <= tolerance;
}

} // namespace

TEST_CASE("apply: identity, sandwich, and transpose bookkeeping") {
    const TensorShape shape{2, 2};
    Rng rng(800);
    const ComplexMatrix x = random_gaussian_matrix(4, 4, rng);

    REQUIRE(matrix_distance(SuperOperator::identity(shape).apply(x), x) == 0.0);

    const StandardForm f{random_unitary(4, rng), random_unitary(4, rng),
                         {FactorFlag::identity, FactorFlag::identity}};
    const auto phi = build_standard_form(f, shape);
    REQUIRE(matrix_distance(phi.apply(x), f.u * x * f.v) <= 1e-10);

    const StandardForm pt{ComplexMatrix::identity(4), ComplexMatrix::identity(4),
                          {FactorFlag::identity, FactorFlag::transpose}};
    const auto tau = build_standard_form(pt, shape);
    const ComplexMatrix e12 = ComplexMatrix::matrix_unit(2, 2, 0, 1);
    const ComplexMatrix e21 = ComplexMatrix::matrix_unit(2, 2, 1, 0);
    REQUIRE(matrix_distance(tau.apply(kron(e12, e12)), kron(e12, e21)) == 0.0);

    REQUIRE_THROWS_AS(phi.apply(ComplexMatrix::identity(3)), dimension_error);
}

TEST_CASE("partial transpose acts factorwise on products") {
    const TensorShape shape{2, 3};
    Rng rng(801);
    const ComplexMatrix a = random_gaussian_matrix(2, 2, rng);
    const ComplexMatrix b = random_gaussian_matrix(3, 3, rng);
    const StandardForm pt{ComplexMatrix::identity(6), ComplexMatrix::identity(6),
                          {FactorFlag::transpose, FactorFlag::identity}};
    const auto tau = build_standard_form(pt, shape);
    REQUIRE(matrix_distance(tau.apply(kron(a, b)), kron(a.transpose(), b)) <= 1e-12);
}

TEST_CASE("build_standard_form with trivial data is the identity") {
    const TensorShape shape{2, 2};
    const StandardForm f{ComplexMatrix::identity(4), ComplexMatrix::identity(4),
                         {FactorFlag::identity, FactorFlag::identity}};
    REQUIRE(matrix_distance(build_standard_form(f, shape).matrix(),
                            ComplexMatrix::identity(16)) == 0.0);
}

TEST_CASE("partial transpose on factor 2 maps C_2 to the {4,2,2,1} witness") {
    const StandardForm pt{ComplexMatrix::identity(4), ComplexMatrix::identity(4),
                          {FactorFlag::identity, FactorFlag::transpose}};
    const auto phi = build_standard_form(pt, TensorShape{2, 2});
    const auto s = singular_values(phi.apply(c_r_matrix(2.0)));
    const std::vector<double> expected = {4.0, 2.0, 2.0, 1.0};
    for (std::size_t i = 0; i < 4; ++i)
        REQUIRE_THAT(s[i], Catch::Matchers::WithinAbs(expected[i], 1e-10));
}

TEST_CASE("standard forms preserve Schatten-3 on random products") {
    const TensorShape shape{2, 3};
    const auto phi = build_standard_form(random_form(shape, 31), shape);
    const NormSpec spec = NormSpec::schatten(3);
    Rng rng(802);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix x = kron(random_gaussian_matrix(2, 2, rng),
                                     random_gaussian_matrix(3, 3, rng));
        const double before = norm(x, spec);
        REQUIRE_THAT(norm(phi.apply(x), spec),
                     Catch::Matchers::WithinAbs(before, 1e-8 * std::max(1.0, before)));
    }
}

TEST_CASE("verify_on_products: standard forms pass every spec") {
    const TensorShape shape{2, 2};
    const auto phi = build_standard_form(random_form(shape, 32), shape);
    for (const auto& spec : {NormSpec::spectral(), NormSpec::ky_fan(2), NormSpec::ky_fan(4),
                             NormSpec::schatten(1), NormSpec::schatten(3),
                             NormSpec::frobenius()}) {
        const auto res = verify_on_products(phi, spec, 40, 900);
        REQUIRE(res.pass);
    }
}

TEST_CASE("verify_on_products: the corner swap passes Frobenius and fails spectral") {
    const auto swap = swap_corner_map(2, 2);
    const auto frob = verify_on_products(swap, NormSpec::frobenius(), 200, 901);
    REQUIRE(frob.pass);
    REQUIRE(frob.max_deviation <= 1e-12);

    const auto spec = verify_on_products(swap, NormSpec::spectral(), 200, 901);
    REQUIRE_FALSE(spec.pass);
    REQUIRE(spec.max_deviation > 0.1);
}

TEST_CASE("recover: identity map") {
    const auto rep = recover(SuperOperator::identity(TensorShape{2, 2}));
    REQUIRE(rep.verdict == RecoveryVerdict::standard_form_found);
    REQUIRE(rep.residual <= 1e-10);
    REQUIRE(rep.flags_tested == 4);
    REQUIRE(rep.form->flags ==
            std::vector<FactorFlag>{FactorFlag::identity, FactorFlag::identity});
    // gauge makes U = V = I exactly representable
    REQUIRE(matrix_distance(rep.form->u, ComplexMatrix::identity(4)) <= 1e-10);
    REQUIRE(matrix_distance(rep.form->v, ComplexMatrix::identity(4)) <= 1e-10);
}

TEST_CASE("recover round-trips random standard forms") {
    for (const auto& dims : {std::vector<std::size_t>{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}}) {
        const TensorShape shape(dims);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const StandardForm f = random_form(shape, 4000 + 17 * seed + shape.total());
            const auto phi = build_standard_form(f, shape);
            const auto rep = recover(phi);
            REQUIRE(rep.verdict == RecoveryVerdict::standard_form_found);
            REQUIRE(rep.form->flags == f.flags);
            REQUIRE(rep.residual <= 1e-8);
            REQUIRE(same_up_to_gauge(*rep.form, f, 1e-8));
            // reconstruction matches the input superoperator matrix
            const auto rebuilt = build_standard_form(*rep.form, shape);
            REQUIRE(matrix_distance(rebuilt.matrix(), phi.matrix()) <= 1e-8);
        }
    }
}

TEST_CASE("recover rejects the corner swap with every flag assignment") {
    const auto swap = swap_corner_map(2, 2);
    const auto rep = recover(swap);
    REQUIRE(rep.verdict == RecoveryVerdict::not_standard_form);
    REQUIRE_FALSE(rep.form.has_value());

    // every flag assignment leaves the rearranged matrix far from rank one
    for (std::size_t mask = 0; mask < 4; ++mask) {
        std::vector<FactorFlag> flags{mask & 1 ? FactorFlag::transpose : FactorFlag::identity,
                                      mask & 2 ? FactorFlag::transpose : FactorFlag::identity};
        const auto map = detail::partial_transpose_index_map(swap.shape(), flags);
        const auto mf = detail::compose_partial_transpose(swap.matrix(), map);
        REQUIRE(numerical_rank(rearrange(mf, 4, 4, 4, 4)) >= 2);
    }
}

TEST_CASE("recover: scaled isometries are not standard forms") {
    // 0.5·identity has a rank-one rearrangement but fails the residual test
    ComplexMatrix half = ComplexMatrix::identity(16);
    half *= 0.5;
    const auto rep = recover(SuperOperator(TensorShape{2, 2}, half));
    REQUIRE(rep.verdict == RecoveryVerdict::not_standard_form);

    const auto zero = recover(SuperOperator(TensorShape{2, 2}, ComplexMatrix(16, 16)));
    REQUIRE(zero.verdict == RecoveryVerdict::not_standard_form);
}

TEST_CASE("recover soundness: a found form implies preservation on products") {
    const TensorShape shape{2, 3};
    const StandardForm f = random_form(shape, 4321);
    const auto phi = build_standard_form(f, shape);
    const auto rep = recover(phi);
    REQUIRE(rep.verdict == RecoveryVerdict::standard_form_found);
    for (const auto& spec :
         {NormSpec::spectral(), NormSpec::ky_fan(2), NormSpec::ky_fan(3),
          NormSpec::ky_fan(6), NormSpec::schatten(1), NormSpec::schatten(1.5),
          NormSpec::schatten(3)}) {
        REQUIRE(verify_on_products(phi, spec, 25, 902).pass);
    }
}

TEST_CASE("separation: product preservation does not extend to all matrices") {
    // flags (Id, T) preserve every norm on products, yet C_r norms move
    const TensorShape shape{2, 2};
    const StandardForm pt{ComplexMatrix::identity(4), ComplexMatrix::identity(4),
                          {FactorFlag::identity, FactorFlag::transpose}};
    const auto phi = build_standard_form(pt, shape);
    for (const auto& spec : {NormSpec::spectral(), NormSpec::ky_fan(2),
                             NormSpec::trace_norm(), NormSpec::schatten(3)}) {
        REQUIRE(verify_on_products(phi, spec, 30, 903).pass);
        for (double r : {0.5, 2.0, 5.0}) {
            const ComplexMatrix c = c_r_matrix(r);
            REQUIRE(std::abs(norm(phi.apply(c), spec) - norm(c, spec)) > 1e-3);
        }
    }
}

TEST_CASE("rearranged Kronecker products have numerical rank one") {
    Rng rng(804);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix p = random_gaussian_matrix(4, 4, rng);
        const ComplexMatrix q = random_gaussian_matrix(4, 4, rng);
        REQUIRE(numerical_rank(rearrange(kron(p, q), 4, 4, 4, 4)) == 1);
    }
}

TEST_CASE("matrix_unit_probe diagnostics") {
    const TensorShape shape{2, 2};
    {
        const auto probe = matrix_unit_probe(SuperOperator::identity(shape));
        REQUIRE(probe.images.size() == 4);
        REQUIRE(probe.all_pairwise_orthogonal);
        for (std::size_t d = 0; d < 4; ++d) {
            REQUIRE(matrix_distance(probe.images[d], ComplexMatrix::matrix_unit(4, 4, d, d)) == 0.0);
            REQUIRE_THAT(probe.spectral_norms[d], Catch::Matchers::WithinAbs(1.0, 1e-12));
        }
    }
    {
        const auto phi = build_standard_form(random_form(shape, 33), shape);
        const auto probe = matrix_unit_probe(phi);
        REQUIRE(probe.all_pairwise_orthogonal);
        for (double s : probe.spectral_norms)
            REQUIRE_THAT(s, Catch::Matchers::WithinAbs(1.0, 1e-10));
    }
    {
        // the corner swap passes the probe even though full recovery rejects it
        const auto probe = matrix_unit_probe(swap_corner_map(2, 2));
        REQUIRE(probe.all_pairwise_orthogonal);
        for (double s : probe.spectral_norms)
            REQUIRE_THAT(s, Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("superoperator and builder dimension checks") {
    REQUIRE_THROWS_AS(SuperOperator(TensorShape{2, 2}, ComplexMatrix::identity(4)),
                      dimension_error);
    const StandardForm bad{ComplexMatrix::identity(3), ComplexMatrix::identity(3),
                           {FactorFlag::identity, FactorFlag::identity}};
    REQUIRE_THROWS_AS(build_standard_form(bad, TensorShape{2, 2}), dimension_error);
    const StandardForm wrong_flags{ComplexMatrix::identity(4), ComplexMatrix::identity(4),
                                   {FactorFlag::identity}};
    REQUIRE_THROWS_AS(build_standard_form(wrong_flags, TensorShape{2, 2}), dimension_error);
}
