#include <catch2/catch_amalgamated.hpp>

#include "muub/choi.hpp"
#include "muub/reference.hpp"
#include "test_support.hpp"

using namespace muub;
using Catch::Approx;

namespace {

BipartiteVector product_state(int d, int r, int s) {
    BipartiteVector v{d, std::vector<Complex>(static_cast<size_t>(d) * d)};
    v.amps[static_cast<size_t>(r) * d + s] = 1.0;
    return v;
}

}  // namespace

TEST_CASE("choi images of the d = 2 product operators", "[choi]") {
    const double s = 1.0 / std::sqrt(2.0);

    const BipartiteVector id = choi_vector(OperatorMatrix::identity(2));
    CHECK(std::abs(id.amps[0] - Complex{s}) < 1e-15);  // |00>
    CHECK(std::abs(id.amps[1]) < 1e-15);
    CHECK(std::abs(id.amps[2]) < 1e-15);
    CHECK(std::abs(id.amps[3] - Complex{s}) < 1e-15);  // |11>

    const BipartiteVector x = choi_vector(weyl_operator(2, 1, 0));
    CHECK(std::abs(x.amps[1] - Complex{s}) < 1e-15);  // |01>
    CHECK(std::abs(x.amps[2] - Complex{s}) < 1e-15);  // |10>

    const BipartiteVector z = choi_vector(weyl_operator(2, 0, 1));
    CHECK(std::abs(z.amps[0] - Complex{s}) < 1e-15);
    CHECK(std::abs(z.amps[3] + Complex{s}) < 1e-15);  // -|11>
}

TEST_CASE("the zero operator has no state image", "[choi]") {
    CHECK_THROWS_AS(choi_vector(OperatorMatrix(3)), DegenerateInputError);
}

TEST_CASE("maximal entanglement detection", "[choi]") {
    CHECK(is_maximally_entangled(choi_vector(OperatorMatrix::identity(3))));
    CHECK_FALSE(is_maximally_entangled(product_state(2, 0, 0)));

    BipartiteVector unnormalized = product_state(2, 0, 0);
    unnormalized.amps[0] = 2.0;
    CHECK_THROWS_AS(is_maximally_entangled(unnormalized), std::invalid_argument);
}

TEST_CASE("every operator of the bundled collection maps to a maximally entangled state",
          "[choi]") {
    for (const OperatorBasis& basis : reference::qutrit_full_collection().bases)
        for (const OperatorMatrix& u : basis.elements)
            CHECK(entanglement_residual(choi_vector(u)) < 1e-9);
}

TEST_CASE("state overlap equals the scaled operator overlap", "[choi]") {
    testing::Rng rng(101);
    for (int d : {2, 3, 5, 7}) {
        for (int trial = 0; trial < 200; ++trial) {
            const OperatorMatrix u = testing::random_unitary(rng, d);
            const OperatorMatrix v = testing::random_unitary(rng, d);
            const double lhs = std::norm(bipartite_inner(choi_vector(u), choi_vector(v)));
            const double rhs = hs_overlap(u, v) / (static_cast<double>(d) * d);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("maximal entanglement characterizes unitarity", "[choi]") {
    testing::Rng rng(55);
    for (int d : {2, 3, 5}) {
        for (int trial = 0; trial < 50; ++trial) {
            const OperatorMatrix u = testing::random_unitary(rng, d);
            CHECK(is_maximally_entangled(choi_vector(u)));
            const OperatorMatrix m = testing::random_hs_normalized(rng, d);
            CHECK(is_maximally_entangled(choi_vector(m)) == is_unitary(m));
            CHECK_FALSE(is_unitary(m));  // a Gaussian draw never lands on a unitary
        }
    }
}

TEST_CASE("state report for the bundled collection", "[choi]") {
    const MesMubReport report = mes_mub_report(reference::qutrit_full_collection());
    CHECK(report.pass);
    CHECK(report.basis_count == 8);
    CHECK(report.expected_overlap == Approx(1.0 / 9.0).margin(1e-12));
    CHECK(report.worst_entanglement_residual < 1e-9);
    CHECK(report.worst_orthonormality_residual < 1e-9);
    CHECK(report.worst_overlap_deviation < 1e-9);
    CHECK(report.pair_stats.size() == 28);
}

TEST_CASE("a single-basis collection passes trivially", "[choi]") {
    MuubCollection collection;
    collection.dim = 3;
    collection.bases.push_back(canonical_basis(3));
    const MesMubReport report = mes_mub_report(collection);
    CHECK(report.pass);
    CHECK(report.pair_stats.empty());
}

TEST_CASE("a basis of scaled matrix units fails the entanglement check", "[choi]") {
    // sqrt(d) E_rs has the right norm but its image is the product state |s>|r>
    MuubCollection collection;
    collection.dim = 2;
    OperatorBasis units;
    units.dim = 2;
    units.span_dim = 4;
    units.label = "units";
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
            OperatorMatrix e(2);
            e.at(r, s) = std::sqrt(2.0);
            units.elements.push_back(e);
        }
    collection.bases.push_back(std::move(units));
    const MesMubReport report = mes_mub_report(collection);
    CHECK_FALSE(report.pass);
    REQUIRE_FALSE(report.failures.empty());
    CHECK(report.failures.front().kind == "not maximally entangled");
}

TEST_CASE("guaranteed state-basis counts", "[choi]") {
    CHECK(min_mes_mub_count(2) == 3);
    CHECK(min_mes_mub_count(3) == 6);
    CHECK(min_mes_mub_count(5) == 20);
    CHECK(min_mes_mub_count(7) == 42);
    CHECK_THROWS_AS(min_mes_mub_count(4), UnsupportedDimensionError);
    for (int d : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31})
        CHECK(min_mes_mub_count(d) <= static_cast<long long>(d) * d - 1);
}

TEST_CASE("count ratio values", "[choi]") {
    CHECK(ratio_R(3) == Approx(4.0 / 3.0).margin(1e-15));
    CHECK(ratio_R(2) == Approx(1.5).margin(1e-15));
    CHECK(ratio_R(97) == 98.0 / 97.0);
    CHECK_THROWS_AS(ratio_R(1), std::invalid_argument);
    CHECK_THROWS_AS(ratio_R(9), std::invalid_argument);

    // R - 1 = 1/d holds exactly in the rational form
    for (long long d : {2LL, 3LL, 5LL, 97LL, 997LL}) {
        const Rational r = ratio_R_rational(d);
        CHECK(r.num - r.den == 1);
        CHECK(r.den == d);
    }
}

TEST_CASE("ratio table rows", "[choi]") {
    const std::vector<RatioRow> rows = emit_ratio_table(24);
    REQUIRE(rows.size() == 24);
    CHECK(rows.front().d == 3);
    CHECK(rows.front().R == Approx(4.0 / 3.0).margin(1e-15));
    CHECK(rows.back().d == 97);
    for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].R < rows[i - 1].R);
    for (const RatioRow& row : rows) CHECK(row.R > 1.0);

    CHECK(emit_ratio_table(1).size() == 1);
    CHECK(emit_ratio_table(0).empty());
    CHECK_THROWS_AS(emit_ratio_table(-1), std::invalid_argument);
}
