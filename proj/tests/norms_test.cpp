#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <tpn/gallery.hpp>
#include <tpn/norms.hpp>
#include <tpn/preserver.hpp>
#include <tpn/random.hpp>

#include "helpers.hpp"

using namespace tpn;

namespace {

const std::vector<NormSpec> every_spec = {
    NormSpec::spectral(),   NormSpec::ky_fan(2),    NormSpec::trace_norm(),
    NormSpec::frobenius(),  NormSpec::schatten(1),  NormSpec::schatten(1.5),
    NormSpec::schatten(3),
};

} // namespace

TEST_CASE("norm values on diagonal matrices") {
    REQUIRE_THAT(norm(ComplexMatrix::diagonal({3.0, 2.0, 1.0}), NormSpec::ky_fan(2)),
                 Catch::Matchers::WithinAbs(5.0, 1e-12));
    REQUIRE_THAT(norm(ComplexMatrix::diagonal({2.0, 2.0}), NormSpec::schatten(3)),
                 Catch::Matchers::WithinAbs(std::pow(16.0, 1.0 / 3.0), 1e-9));
}

TEST_CASE("norms of the C_2 witness and its partial transpose") {
    const ComplexMatrix c2 = c_r_matrix(2.0);
    const StandardForm pt{ComplexMatrix::identity(4), ComplexMatrix::identity(4),
                          {FactorFlag::identity, FactorFlag::transpose}};
    const ComplexMatrix image = build_standard_form(pt, TensorShape{2, 2}).apply(c2);

    REQUIRE_THAT(norm(c2, NormSpec::spectral()), Catch::Matchers::WithinAbs(5.0, 1e-10));
    REQUIRE_THAT(norm(image, NormSpec::spectral()), Catch::Matchers::WithinAbs(4.0, 1e-10));
    REQUIRE_THAT(norm(image, NormSpec::trace_norm()), Catch::Matchers::WithinAbs(9.0, 1e-10));
    REQUIRE_THAT(norm(image, NormSpec::frobenius()), Catch::Matchers::WithinAbs(5.0, 1e-10));
}

TEST_CASE("Ky Fan k is allowed up to the ambient dimension with zero padding") {
    const ComplexMatrix a = ComplexMatrix::diagonal({2.0, 1.0});
    REQUIRE(norm(a, NormSpec::ky_fan(2)) == norm(a, NormSpec::ky_fan(2)));
    // k beyond min-side pads zeros: a 2x3 matrix accepts k = 3
    ComplexMatrix wide(2, 3);
    wide(0, 0) = 2.0;
    wide(1, 1) = 1.0;
    REQUIRE_THAT(norm(wide, NormSpec::ky_fan(3)), Catch::Matchers::WithinAbs(3.0, 1e-12));
    REQUIRE_THROWS_AS(norm(wide, NormSpec::ky_fan(4)), invalid_spec_error);
}

TEST_CASE("invalid specs are rejected") {
    REQUIRE_THROWS_AS(NormSpec::ky_fan(0), invalid_spec_error);
    REQUIRE_THROWS_AS(NormSpec::schatten(0.5), invalid_spec_error);
    REQUIRE_THROWS_AS(NormSpec::schatten(std::numeric_limits<double>::infinity()),
                      invalid_spec_error);
    REQUIRE_THROWS_AS(norm(ComplexMatrix::identity(2), NormSpec::ky_fan(3)),
                      invalid_spec_error);
}

TEST_CASE("unitary invariance for every spec") {
    Rng rng(600);
    const ComplexMatrix a = random_gaussian_matrix(5, 5, rng);
    const ComplexMatrix u = random_unitary(5, rng);
    const ComplexMatrix v = random_unitary(5, rng);
    for (const auto& spec : every_spec) {
        const double base = norm(a, spec);
        REQUIRE_THAT(norm(u * a * v, spec),
                     Catch::Matchers::WithinAbs(base, 1e-8 * std::max(1.0, base)));
    }
}

TEST_CASE("triangle inequality and absolute homogeneity") {
    Rng rng(601);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix a = random_gaussian_matrix(4, 4, rng);
        const ComplexMatrix b = random_gaussian_matrix(4, 4, rng);
        const cplx lambda = 3.0 * rng.gaussian_cplx();
        for (const auto& spec : every_spec) {
            REQUIRE(norm(a + b, spec) <= norm(a, spec) + norm(b, spec) + 1e-9);
            REQUIRE_THAT(norm(lambda * a, spec),
                         Catch::Matchers::WithinAbs(std::abs(lambda) * norm(a, spec), 1e-8));
        }
    }
}

TEST_CASE("Schatten and spectral norms are multiplicative on tensors") {
    Rng rng(602);
    const ComplexMatrix a = random_gaussian_matrix(3, 3, rng);
    const ComplexMatrix b = random_gaussian_matrix(4, 4, rng);
    const ComplexMatrix k = kron(a, b);
    for (const auto& spec : {NormSpec::spectral(), NormSpec::schatten(1),
                             NormSpec::schatten(2.5), NormSpec::frobenius()}) {
        const double expected = norm(a, spec) * norm(b, spec);
        REQUIRE_THAT(norm(k, spec),
                     Catch::Matchers::WithinAbs(expected, 1e-8 * std::max(1.0, expected)));
    }
}

TEST_CASE("Ky Fan norms are monotone in k") {
    Rng rng(603);
    const ComplexMatrix a = random_gaussian_matrix(6, 6, rng);
    for (std::size_t k = 1; k < 6; ++k)
        REQUIRE(norm(a, NormSpec::ky_fan(k)) <= norm(a, NormSpec::ky_fan(k + 1)) + 1e-12);
}

TEST_CASE("special cases coincide") {
    Rng rng(604);
    const ComplexMatrix a = random_gaussian_matrix(5, 5, rng);
    REQUIRE_THAT(norm(a, NormSpec::ky_fan(1)),
                 Catch::Matchers::WithinAbs(norm(a, NormSpec::spectral()), 1e-10));
    REQUIRE_THAT(norm(a, NormSpec::ky_fan(5)),
                 Catch::Matchers::WithinAbs(norm(a, NormSpec::trace_norm()), 1e-10));
    REQUIRE_THAT(norm(a, NormSpec::schatten(1)),
                 Catch::Matchers::WithinAbs(norm(a, NormSpec::trace_norm()), 1e-10));
    REQUIRE_THAT(norm(a, NormSpec::schatten(2)),
                 Catch::Matchers::WithinAbs(norm(a, NormSpec::frobenius()), 1e-10));
}

TEST_CASE("norm attaining vectors") {
    {
        const auto [x, y] = norm_attaining_vectors(ComplexMatrix::diagonal({3.0, 1.0}));
        REQUIRE_THAT(std::abs(x(0, 0)), Catch::Matchers::WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(std::abs(y(0, 0)), Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
    {
        const auto [x, y] = norm_attaining_vectors(ComplexMatrix::matrix_unit(2, 2, 0, 1));
        REQUIRE_THAT(std::abs(x(0, 0)), Catch::Matchers::WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(std::abs(y(1, 0)), Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
    {
        Rng rng(605);
        const ComplexMatrix a = random_gaussian_matrix(6, 6, rng);
        const auto [x, y] = norm_attaining_vectors(a);
        const cplx value = (x.adjoint() * a * y)(0, 0);
        REQUIRE_THAT(value.real(),
                     Catch::Matchers::WithinAbs(norm(a, NormSpec::spectral()), 1e-10));
        REQUIRE_THAT(value.imag(), Catch::Matchers::WithinAbs(0.0, 1e-10));
    }
    REQUIRE_THROWS_AS(norm_attaining_vectors(ComplexMatrix(3, 3)), zero_matrix_error);
}
