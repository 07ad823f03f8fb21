#include <catch2/catch_amalgamated.hpp>

#include "muub/monoid.hpp"
#include "muub/reference.hpp"
#include "muub/verify.hpp"
#include "test_support.hpp"

using namespace muub;
using Catch::Approx;

namespace {

OperatorBasis subspace_powers(int d) {
    OperatorBasis basis;
    basis.dim = d;
    basis.span_dim = d;
    basis.label = "powers";
    for (int i = 0; i < d; ++i) basis.elements.push_back(weyl_operator(d, 0, i));
    return basis;
}

}  // namespace

TEST_CASE("canonical basis certifies as orthogonal and unitary", "[verify]") {
    const Certificate cert = check_orthogonal_unitary_basis(canonical_basis(3));
    CHECK(cert.pass);
    CHECK(cert.worst_unitarity_residual < 1e-12);
    CHECK(cert.worst_orthogonality_residual < 1e-12);
    CHECK(cert.failures.empty());
}

TEST_CASE("duplicated element fails with overlap d^2", "[verify]") {
    OperatorBasis basis = canonical_basis(3);
    basis.elements[2] = weyl_operator(3, 1, 0);  // X appears twice now
    basis.element_exponents.clear();
    basis.exponent_order = 0;
    const Certificate cert = check_orthogonal_unitary_basis(basis);
    CHECK_FALSE(cert.pass);
    CHECK(cert.worst_orthogonality_residual == Approx(9.0).margin(1e-9));
    REQUIRE_FALSE(cert.failures.empty());
    CHECK(cert.failures.front().kind == "non-orthogonal pair");
}

TEST_CASE("clock-span power basis certifies", "[verify]") {
    const Certificate cert = check_orthogonal_unitary_basis(subspace_powers(3));
    CHECK(cert.pass);
}

TEST_CASE("mixed dimensions are rejected", "[verify]") {
    OperatorBasis basis = subspace_powers(3);
    basis.elements[1] = OperatorMatrix::identity(2);
    CHECK_THROWS_AS(check_orthogonal_unitary_basis(basis), std::invalid_argument);
}

TEST_CASE("canonical vs generated basis share C = 1", "[verify]") {
    const OperatorBasis canonical = canonical_basis(3);
    const OperatorBasis generated =
        basis_from_generator(reference::qutrit_generators()[0], Tolerance{}, "U1");
    const double c = check_mutually_unbiased(canonical, generated);
    CHECK(c == Approx(1.0).margin(1e-12));
    CHECK(check_mutually_unbiased(generated, canonical) == Approx(c).margin(1e-15));
}

TEST_CASE("a basis is never unbiased to itself", "[verify]") {
    const OperatorBasis canonical = canonical_basis(3);
    try {
        check_mutually_unbiased(canonical, canonical);
        FAIL("expected NotUnbiasedError");
    } catch (const NotUnbiasedError& e) {
        CHECK(e.min_overlap == Approx(0.0).margin(1e-9));
        CHECK(e.max_overlap == Approx(9.0).margin(1e-9));  // diagonal pairs give d^2
    }
}

TEST_CASE("clock-span families overlap at C = 3", "[verify]") {
    const MuubCollection recipe = subspace_recipe(3);
    const double c = check_mutually_unbiased(recipe.bases[1], recipe.bases[2]);
    CHECK(c == Approx(3.0).margin(1e-12));
}

TEST_CASE("constant zero overlaps are degenerate, not unbiased", "[verify]") {
    // clock span vs its X-translate: every cross trace vanishes
    const OperatorBasis powers = subspace_powers(3);
    OperatorBasis shifted = powers;
    shifted.label = "shifted";
    for (int i = 0; i < 3; ++i) shifted.elements[i] = weyl_operator(3, 1, i);
    CHECK_THROWS_AS(check_mutually_unbiased(powers, shifted), DegenerateConstantError);
}

TEST_CASE("global phases never change a verdict", "[verify]") {
    MuubCollection collection = reference::qutrit_full_collection();
    collection.bases[3].elements[4] *= root_of_unity(97, 13);
    collection.bases[3].element_exponents.clear();
    collection.bases[3].exponent_order = 0;
    const Certificate cert = verify_collection(collection);
    CHECK(cert.pass);
    CHECK(cert.constant_C == Approx(1.0).margin(1e-9));
}

TEST_CASE("the bundled collection verifies with C = 1", "[verify]") {
    const Certificate cert = verify_collection(reference::qutrit_full_collection());
    CHECK(cert.pass);
    CHECK(cert.basis_count == 8);
    CHECK(cert.constant_C == Approx(1.0).margin(1e-9));
    CHECK(cert.worst_unitarity_residual < 1e-9);
    CHECK(cert.worst_orthogonality_residual < 1e-9);
    CHECK(cert.worst_unbiasedness_residual < 1e-9);
}

TEST_CASE("repeating a basis breaks a collection", "[verify]") {
    MuubCollection collection;
    collection.dim = 3;
    collection.bases.push_back(canonical_basis(3));
    collection.bases.push_back(canonical_basis(3));
    const Certificate cert = verify_collection(collection);
    CHECK_FALSE(cert.pass);
}

TEST_CASE("subspace recipe at d = 5 verifies with C = 5", "[verify]") {
    const Certificate cert = verify_collection(subspace_recipe(5));
    CHECK(cert.pass);
    CHECK(cert.basis_count == 5);
    CHECK(cert.constant_C == Approx(5.0).margin(1e-9));
}

TEST_CASE("full-space collections beyond d^2 - 1 bases are rejected", "[verify]") {
    MuubCollection collection;
    collection.dim = 2;
    for (int k = 0; k < 4; ++k) collection.bases.push_back(canonical_basis(2));
    CHECK_THROWS_AS(verify_collection(collection), BoundViolationError);
}

TEST_CASE("overlaps against a full basis resolve the whole norm", "[verify]") {
    testing::Rng rng(23);
    const OperatorMatrix u = testing::random_unitary(rng, 3);
    for (const OperatorBasis& basis :
         {canonical_basis(3), basis_from_generator(reference::qutrit_generators()[2])}) {
        double total = 0.0;
        for (const OperatorMatrix& e : basis.elements) total += hs_overlap(u, e);
        CHECK(total == Approx(9.0).margin(1e-9));
    }
}

TEST_CASE("exact-term materialization matches plain products", "[verify]") {
    // one product term
    const OperatorMatrix one = matrix_from_weyl_terms(3, 3, {{1, 2, 0}});
    CHECK(testing::max_entry_diff(one, weyl_operator(3, 1, 2)) == 0.0);
    // equal-weight pair: (X + w Z)/sqrt(2)
    const OperatorMatrix pair = matrix_from_weyl_terms(3, 3, {{1, 0, 0}, {0, 1, 1}});
    OperatorMatrix expect = weyl_operator(3, 1, 0);
    OperatorMatrix z = weyl_operator(3, 0, 1);
    z *= root_of_unity(3, 1);
    expect += z;
    expect *= Complex{1.0 / std::sqrt(2.0), 0.0};
    CHECK(testing::max_entry_diff(pair, expect) < 1e-15);

    CHECK_THROWS_AS(matrix_from_weyl_terms(3, 3, {}), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_weyl_terms(3, 3, {{3, 0, 0}}), std::invalid_argument);
}
