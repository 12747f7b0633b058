#include <cmath>
#include <string>

#include "doctest.h"
#include "seplab/closed_forms.hpp"
#include "seplab/oracle.hpp"

using namespace seplab;

TEST_CASE("polytope expectation at n=4, p=1/2 is 21/2") {
    CHECK(expectation_polytope(4, 0.5L) ==
          doctest::Approx(10.5).epsilon(1e-12));
    CHECK(expectation_polytope_exact(4, Rational(1, 2)) == Rational(21, 2));
}

TEST_CASE("exact polytope expectation equals exhaustive enumeration") {
    for (int n = 2; n <= 4; ++n)
        for (int num = 1; num <= 3; ++num) {
            const Rational p(num, 4);
            CHECK(expectation_polytope_exact(n, p) ==
                  exhaustive_expectation(n, p, ExhaustiveModel::polytope_combinatorial));
        }
}

TEST_CASE("exact triangulation expectation equals exhaustive enumeration") {
    for (int n = 2; n <= 4; ++n)
        for (int num = 1; num <= 3; ++num) {
            const Rational p(num, 4);
            CHECK(expectation_triangulation_exact(n, p, OriginVariant::proof_p) ==
                  exhaustive_expectation(n, p,
                                         ExhaustiveModel::triangulation_combinatorial));
        }
}

TEST_CASE("n=2 separates the two origin-term variants") {
    // One potential arc; when present the triangulation has exactly the two
    // origin edges, so the expectation is 2p. Only the linear variant agrees.
    const Rational half(1, 2);
    CHECK(expectation_triangulation_exact(2, half, OriginVariant::proof_p) ==
          Rational(1));
    CHECK(expectation_triangulation_exact(2, half, OriginVariant::theorem_p2) ==
          Rational(1, 2));
    CHECK(exhaustive_expectation(2, half, ExhaustiveModel::triangulation_combinatorial) ==
          Rational(1));
}

TEST_CASE("long-double expectations track the exact rationals") {
    for (int n : {5, 12, 30}) {
        const Rational p(1, 10);
        const long double exact_poly =
            expectation_polytope_exact(n, p).convert_to<long double>();
        CHECK(static_cast<double>(expectation_polytope(n, 0.1L)) ==
              doctest::Approx(static_cast<double>(exact_poly)).epsilon(1e-12));
        const long double exact_tri =
            expectation_triangulation_exact(n, p).convert_to<long double>();
        CHECK(static_cast<double>(expectation_triangulation(n, 0.1L)) ==
              doctest::Approx(static_cast<double>(exact_tri)).epsilon(1e-12));
    }
}

TEST_CASE("expectations reject p outside [0, 1]") {
    CHECK_THROWS_AS(expectation_polytope(4, -0.1L), std::invalid_argument);
    CHECK_THROWS_AS(expectation_triangulation(4, 1.5L), std::invalid_argument);
    CHECK_THROWS_AS(expectation_polytope_exact(4, Rational(5, 4)), std::invalid_argument);
    CHECK_THROWS_AS(origin_variant_from_string("cubic"), std::invalid_argument);
    CHECK(origin_variant_from_string(to_string(OriginVariant::theorem_p2)) ==
          OriginVariant::theorem_p2);
}

TEST_CASE("principal variance terms stay positive away from the boundary") {
    for (int n : {8, 20, 60})
        for (long double p = 0.1L; p < 0.95L; p += 0.1L)
            CHECK(variance_case1_polytope(n, p) > 0.0L);
}

TEST_CASE("variance dips at p = 1/sqrt(2)") {
    CHECK(std::fabs(critical_p() - std::sqrt(0.5L)) <= 1e-16L);
    const int n = 60;
    long double best_p = 0, best_v = 1e300L;
    for (long double p = 0.60L; p <= 0.80L + 1e-9L; p += 0.005L) {
        const long double v = variance_case1_polytope(n, p);
        if (v < best_v) {
            best_v = v;
            best_p = p;
        }
    }
    CHECK(std::fabs(best_p - critical_p()) < 0.01L);
    const long double at_dip = variance_case1_polytope(n, critical_p());
    CHECK(at_dip < variance_case1_polytope(n, critical_p() - 0.05L));
    CHECK(at_dip < variance_case1_polytope(n, critical_p() + 0.05L));
    // The flanks dominate the dip by a wide margin, not a hair.
    CHECK(variance_case1_polytope(n, critical_p() - 0.15L) > 2.0L * at_dip);
    CHECK(variance_case1_polytope(n, critical_p() + 0.15L) > 2.0L * at_dip);
}

TEST_CASE("fourth binomial moment via falling factorials") {
    CHECK(static_cast<double>(binomial_moment4(2, 0.5L)) == doctest::Approx(4.5));
    // Direct enumeration of E[X^4] for X ~ Binomial(5, 0.3).
    const long double p = 0.3L, q = 0.7L;
    long double direct = 0.0L;
    const long double choose[6] = {1, 5, 10, 10, 5, 1};
    for (int k = 0; k <= 5; ++k)
        direct += choose[k] * std::pow(p, k) * std::pow(q, 5 - k) *
                  static_cast<long double>(k) * k * k * k;
    CHECK(static_cast<double>(binomial_moment4(5, p)) ==
          doctest::Approx(static_cast<double>(direct)).epsilon(1e-14));
    CHECK(binomial_moment4(0, 0.5L) == 0.0L);
    CHECK_THROWS_AS(binomial_moment4(-1, 0.5L), std::invalid_argument);
}

TEST_CASE("moment reports carry the right regime label") {
    using doctest::Approx;
    const MomentReport generic = moment_report(30, 0.3L, Model::polytope);
    CHECK(generic.regime_label.find("generic") == 0);
    CHECK(static_cast<double>(generic.expectation) ==
          Approx(static_cast<double>(expectation_polytope(30, 0.3L))));
    CHECK(static_cast<double>(generic.variance_principal) ==
          Approx(static_cast<double>(variance_case1_polytope(30, 0.3L))));

    CHECK(moment_report(10, 0.95L, Model::polytope).regime_label.find("near-complete") ==
          0);
    CHECK(moment_report(100, 0.00005L, Model::polytope).regime_label.find("sparse") == 0);

    const MomentReport tri = moment_report(12, 0.4L, Model::triangulation);
    CHECK(tri.variance_principal == 0.0L);
    CHECK(static_cast<double>(tri.expectation) ==
          Approx(static_cast<double>(expectation_triangulation(12, 0.4L))));
}
