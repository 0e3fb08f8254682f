#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tjurina/errors.hpp"
#include "tjurina/invariants.hpp"

#include <string>
#include <vector>

using namespace tjurina;

namespace {

VarsPtr xy() { return make_vars({"x", "y"}); }

Germ G(const std::string& text) { return Germ::parse(text, xy()); }

// y^4 - x^5 + x^3 y^2: the smallest catalogued germ with mu > tau
const char* kPivotCurve = "y^4 - x^5 + x^3*y^2";

} // namespace

TEST_CASE("germ validation") {
    CHECK_THROWS_AS(G("0"), NonIsolatedError);
    CHECK_THROWS_AS(G("1 + x^2"), NonIsolatedError);
    CHECK_THROWS_AS(G("x + y^2"), NonIsolatedError);
    CHECK(G("x^2 + y^2").arity() == 2);
    CHECK(G("x^2").poly() == parse_polynomial("x^2", xy()));
}

TEST_CASE("jacobian ideal") {
    Germ g = G("x^3 + x*y^2");
    auto jac = jacobian_ideal(g);
    REQUIRE(jac.size() == 2);
    CHECK(jac[0] == parse_polynomial("3*x^2 + y^2", xy()));
    CHECK(jac[1] == parse_polynomial("2*x*y", xy()));
}

TEST_CASE("milnor numbers") {
    SUBCASE("two-monomial curves") {
        for (auto [a, b] : {std::pair{2, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}}) {
            std::string t = "x^" + std::to_string(a) + " + y^" + std::to_string(b);
            CHECK(milnor_number(G(t)) == std::size_t((a - 1) * (b - 1)));
        }
    }
    SUBCASE("corank-two series") {
        for (int k = 4; k <= 7; ++k)
            CHECK(milnor_number(G("x^" + std::to_string(k - 1) + " + x*y^2")) == std::size_t(k));
    }
    SUBCASE("three variables") {
        auto v = make_vars({"x", "y", "z"});
        CHECK(milnor_number(Germ::parse("x^2 + y^2 + z^2", v)) == 1);
        CHECK(milnor_number(Germ::parse("x^3 + y^3 + z^3", v)) == 8);
    }
    SUBCASE("non-isolated germs are refused") {
        CHECK_THROWS_AS(milnor_number(G("x^2*y^2")), NonIsolatedError);
        CHECK_THROWS_AS(milnor_number(G("x^2")), NonIsolatedError);
    }
}

TEST_CASE("tjurina numbers") {
    // equality for weighted-homogeneous germs
    CHECK(tjurina_number(G("x^3 + y^4")) == 6);
    CHECK(tjurina_number(G("x^2*y + y^5")) == 6);
    // the strict drop on the pivot curve
    CHECK(milnor_number(G(kPivotCurve)) == 12);
    CHECK(tjurina_number(G(kPivotCurve)) == 11);
    // y^5 - x^6 + x^3 y^3: a larger drop with a two-dimensional overlap
    CHECK(milnor_number(G("y^5 - x^6 + x^3*y^3")) == 20);
    CHECK(tjurina_number(G("y^5 - x^6 + x^3*y^3")) == 18);
}

TEST_CASE("multiplication operator") {
    Germ g = G(kPivotCurve);
    MilnorAlgebra alg = milnor_algebra(g);
    CHECK(alg.mu() == 12);
    REQUIRE(alg.mult_f.rows() == 12);

    SUBCASE("columns are class vectors of f times the basis") {
        CHECK(multiplication_matrix(alg.presentation, g.poly()) == alg.mult_f);
        std::size_t j = alg.presentation.index_of(Monomial({0, 0}));
        auto col = class_vector(g.poly(), alg.presentation);
        for (std::size_t i = 0; i < 12; ++i) CHECK(alg.mult_f.at(i, j) == col[i]);
    }
    SUBCASE("weighted-homogeneous germs multiply to zero") {
        CHECK(milnor_algebra(G("x^3 + y^4")).mult_f.is_zero());
        CHECK(milnor_algebra(G("x^2 + y^2")).mult_f.is_zero());
    }
}

TEST_CASE("operator decomposition") {
    MilnorAlgebra alg = milnor_algebra(G(kPivotCurve));
    OperatorDecomposition dec = decompose(alg);
    CHECK(dec.nu1 == 1);
    CHECK(dec.kernel.dim() == 11);
    CHECK(dec.image.dim() == 1);
    CHECK(dec.kernel_cap_image.dim() == 1);
    CHECK(dec.B.dim() == 0);
    CHECK(dec.A.dim() == dec.nu1);
    CHECK(dec.kernel.dim() + dec.B.dim() + dec.A.dim() == alg.mu());
    CHECK(dec.kernel.contains(dec.kernel_cap_image));
    CHECK(dec.image.contains(dec.kernel_cap_image));

    CHECK(nu1_invariant(G(kPivotCurve)) == 1);
    CHECK(nu1_invariant(G("x^3 + y^4")) == 0);
    CHECK(nu1_invariant(G("y^5 - x^6 + x^3*y^3")) == 2);
}

TEST_CASE("nilpotency exponent of multiplication by f") {
    SUBCASE("one iff mu equals tau") {
        for (const char* t : {"x^2 + y^2", "x^3 + y^4", "x^2*y + y^5", kPivotCurve,
                              "y^5 - x^6 + x^3*y^3"}) {
            Germ g = G(t);
            std::size_t e = bs_exponent(g);
            CHECK((e == 1) == (milnor_number(g) == tjurina_number(g)));
        }
    }
    SUBCASE("bounded by the arity") {
        CHECK(bs_exponent(G(kPivotCurve)) == 2);
        CHECK(bs_exponent(G("y^5 - x^6 + x^3*y^3")) == 2);
        auto v = make_vars({"x", "y", "z"});
        CHECK(bs_exponent(Germ::parse("x^2 + y^2 + z^2", v)) == 1);
    }
}

TEST_CASE("weighted-homogeneity detection") {
    SUBCASE("weights solve the support equations") {
        auto w = detect_quasihomogeneous(G("x^2*y + y^5"));
        REQUIRE(w.has_value());
        REQUIRE(w->size() == 2);
        CHECK((*w)[0] == Rational(2, 5));
        CHECK((*w)[1] == Rational(1, 5));

        auto w2 = detect_quasihomogeneous(G("x^3 + y^4"));
        REQUIRE(w2.has_value());
        CHECK((*w2)[0] == Rational(1, 3));
        CHECK((*w2)[1] == Rational(1, 4));
    }
    SUBCASE("inconsistent supports give nothing") {
        CHECK(!detect_quasihomogeneous(G(kPivotCurve)).has_value());
        CHECK(!detect_quasihomogeneous(G("y^5 - x^6 + x^3*y^3")).has_value());
    }
}

TEST_CASE("spectrum") {
    Germ g = G("x^3 + y^4");
    auto w = detect_quasihomogeneous(g);
    REQUIRE(w.has_value());
    auto sp = qh_spectrum(g, *w);
    std::vector<Rational> expect{Rational(7, 12),  Rational(5, 6),  Rational(11, 12),
                                 Rational(13, 12), Rational(7, 6), Rational(17, 12)};
    CHECK(sp == expect);
    // symmetric around half the arity
    for (std::size_t i = 0; i < sp.size(); ++i)
        CHECK(sp[i] + sp[sp.size() - 1 - i] == Rational(2));
}

TEST_CASE("quotient versus nilpotency bound") {
    SUBCASE("equality case") {
        MuTauBsReport r = check_mu_tau_vs_bs(G("x^3 + y^4"));
        CHECK(r.ebs == 1);
        CHECK(r.equality_case);
        CHECK(r.mu == r.tau);
        CHECK(r.quotient == Rational(1));
        CHECK(r.varchenko_checked);
    }
    SUBCASE("strict case") {
        MuTauBsReport r = check_mu_tau_vs_bs(G(kPivotCurve));
        CHECK(r.ebs == 2);
        CHECK(!r.equality_case);
        CHECK(r.quotient == Rational(12, 11));
        CHECK(r.quotient < Rational(int(r.ebs)));
        CHECK(!r.varchenko_checked);
    }
}

TEST_CASE("analysis bundle") {
    AnalyzedGerm a = analyze(G(kPivotCurve));
    CHECK(a.mu == 12);
    CHECK(a.tau == 11);
    CHECK(a.nu1 == 1);
    CHECK(a.ebs == 2);
    CHECK(!a.qh_weights.has_value());
    CHECK(a.algebra.mu() == 12);
    CHECK(a.dec.nu1 == 1);

    AnalyzedGerm e6 = analyze(G("x^3 + y^4"));
    CHECK(e6.mu == 6);
    CHECK(e6.tau == 6);
    CHECK(e6.nu1 == 0);
    CHECK(e6.ebs == 1);
    CHECK(e6.qh_weights.has_value());
}

TEST_CASE("invariant reports") {
    InvariantReport r = invariant_report(G(kPivotCurve));
    CHECK(r.mu == 12);
    CHECK(r.tau == 11);
    CHECK(r.nu1 == 1);
    CHECK(r.ebs == 2);
    CHECK(r.mu_minus_tau == 1);
    CHECK(r.quotient_mu_tau == Rational(12, 11));
    CHECK(!r.qh_weights.has_value());
    CHECK(!r.spectrum.has_value());
    CHECK(!r.alpha_min.has_value());

    InvariantReport e6 = invariant_report(G("x^3 + y^4"));
    CHECK(e6.mu_minus_tau == 0);
    REQUIRE(e6.spectrum.has_value());
    CHECK(e6.spectrum->size() == 6);
    CHECK(e6.alpha_min == Rational(7, 12));

    // the bundled route agrees with the from-scratch route
    InvariantReport via = invariant_report(analyze(G(kPivotCurve)));
    CHECK(via.mu == r.mu);
    CHECK(via.tau == r.tau);
    CHECK(via.nu1 == r.nu1);
    CHECK(via.ebs == r.ebs);
}
