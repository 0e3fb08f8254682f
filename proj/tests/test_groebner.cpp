#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tjurina/errors.hpp"
#include "tjurina/groebner.hpp"

#include <algorithm>
#include <string>
#include <vector>

using namespace tjurina;

namespace {

VarsPtr xy() { return make_vars({"x", "y"}); }

Polynomial P(const std::string& text, VarsPtr vars) { return parse_polynomial(text, vars); }

std::vector<Monomial> leading_monomials(const GroebnerBasis& gb) {
    std::vector<Monomial> out;
    for (const auto& g : gb.generators()) out.push_back(g.leading_monomial());
    return out;
}

} // namespace

TEST_CASE("basis normalization") {
    auto v = xy();
    GroebnerBasis gb = buchberger({P("2*x^2 - 2*y", v), P("3*y^2", v)});
    REQUIRE(gb.generators().size() == 2);
    // monic, sorted by leading monomial ascending
    for (const auto& g : gb.generators()) CHECK(g.leading_coefficient() == Rational(1));
    CHECK(gb.generators()[0].leading_monomial() == Monomial({0, 2}));
    CHECK(gb.generators()[1].leading_monomial() == Monomial({2, 0}));
    CHECK(!gb.truncation_degree().has_value());
}

TEST_CASE("normal forms") {
    auto v = xy();
    GroebnerBasis gb = buchberger({P("x^2 - y", v), P("y^2", v)});

    SUBCASE("membership reduces to zero") {
        CHECK(normal_form(P("x^4", v), gb).is_zero());
        CHECK(normal_form(P("x^2*y - y^2", v), gb).is_zero());
        CHECK(normal_form(P("x^2 - y", v) * P("x + 3*y", v), gb).is_zero());
    }
    SUBCASE("remainders avoid leading monomials") {
        Polynomial r = normal_form(P("x^3", v), gb);
        CHECK(r == P("x*y", v));
        for (const auto& [m, c] : r.terms())
            for (const auto& lm : leading_monomials(gb)) CHECK(!lm.divides(m));
    }
    SUBCASE("idempotent and linear") {
        Polynomial p = P("x^5 + 2*x^3*y - y^3 + x", v);
        Polynomial q = P("x^4 - 3*y^2 + 1", v);
        Polynomial np = normal_form(p, gb);
        CHECK(normal_form(np, gb) == np);
        CHECK(normal_form(p + q, gb) == np + normal_form(q, gb));
        CHECK(normal_form(p.scaled(Rational(7, 3)), gb) == np.scaled(Rational(7, 3)));
    }
    SUBCASE("single generator") {
        GroebnerBasis one = buchberger({P("x^2 - 1", v)});
        CHECK(normal_form(P("x^3 + x", v), one) == P("2*x", v));
    }
}

TEST_CASE("truncated bases") {
    auto v = xy();
    GroebnerBasis gb = buchberger_truncated({P("x^2 - y^3", v)}, 4);
    REQUIRE(gb.truncation_degree() == 4);

    SUBCASE("truncation feeds back into low degrees") {
        // x^3 = x * x^2 = x * y^3 lands in m^4, so x^3 itself joins the ideal
        auto lms = leading_monomials(gb);
        std::vector<Monomial> expect{Monomial({0, 3}), Monomial({2, 1}), Monomial({3, 0})};
        CHECK(lms == expect);
        CHECK(normal_form(P("x*y^3 + y^5", v), gb).is_zero());
    }
    SUBCASE("reduction stays below the bound") {
        Polynomial r = normal_form(P("y^3 + y", v), gb);
        CHECK(r == P("x^2 + y", v));
        CHECK(r.total_degree() < 4);
    }
}

TEST_CASE("local quotients") {
    auto v = xy();

    SUBCASE("morse point") {
        QuotientPresentation q = local_quotient({P("2*x", v), P("2*y", v)});
        CHECK(q.dimension() == 1);
        CHECK(q.basis_monomials() == std::vector<Monomial>{Monomial::one(2)});
        auto c = class_vector(P("5 + x + x*y^2", v), q);
        REQUIRE(c.size() == 1);
        CHECK(c[0] == Rational(5));
    }

    SUBCASE("staircase of a known algebra") {
        // gradient of y^4 - x^5 + x^3 y^2
        std::vector<Polynomial> jac{P("-5*x^4 + 3*x^2*y^2", v), P("4*y^3 + 2*x^3*y", v)};
        QuotientPresentation q = local_quotient(jac);
        CHECK(q.dimension() == 12);

        std::vector<Monomial> expect{
            Monomial({0, 0}), Monomial({0, 1}), Monomial({1, 0}), Monomial({0, 2}),
            Monomial({1, 1}), Monomial({2, 0}), Monomial({0, 3}), Monomial({1, 2}),
            Monomial({2, 1}), Monomial({3, 0}), Monomial({0, 4}), Monomial({2, 2}),
        };
        std::sort(expect.begin(), expect.end(), DegRevLex{});
        CHECK(q.basis_monomials() == expect);

        auto lms = leading_monomials(q.gb());
        std::vector<Monomial> corners{Monomial({1, 3}), Monomial({3, 1}), Monomial({4, 0}),
                                      Monomial({0, 5})};
        for (const auto& c : corners)
            CHECK(std::count(lms.begin(), lms.end(), c) == 1);

        SUBCASE("index_of inverts the staircase") {
            for (std::size_t i = 0; i < q.dimension(); ++i)
                CHECK(q.index_of(q.basis_monomials()[i]) == i);
        }
        SUBCASE("class vectors of basis monomials are unit vectors") {
            for (std::size_t i = 0; i < q.dimension(); ++i) {
                auto c = class_vector(Polynomial::term(v, q.basis_monomials()[i], Rational(1)), q);
                for (std::size_t k = 0; k < c.size(); ++k)
                    CHECK(c[k] == (k == i ? Rational(1) : Rational(0)));
            }
        }
        SUBCASE("class vector reduces before reading coordinates") {
            // x^4 = 3/5 x^2 y^2 in the quotient
            auto c = class_vector(P("x^4", v), q);
            CHECK(c[q.index_of(Monomial({2, 2}))] == Rational(3, 5));
        }
    }

    SUBCASE("adding the function drops the dimension to tau") {
        std::vector<Polynomial> gens{P("-5*x^4 + 3*x^2*y^2", v), P("4*y^3 + 2*x^3*y", v),
                                     P("y^4 - x^5 + x^3*y^2", v)};
        CHECK(local_quotient(gens).dimension() == 11);
    }

    SUBCASE("truncation degree is recorded and stabilized") {
        QuotientPresentation q = local_quotient({P("x^3", v), P("y^2", v)});
        CHECK(q.dimension() == 6);
        CHECK(q.truncation() > 0);
        // re-running at a generous explicit cap changes nothing
        LocalQuotientOptions wide;
        wide.degree_cap = 64;
        CHECK(local_quotient({P("x^3", v), P("y^2", v)}, wide).dimension() == 6);
    }

    SUBCASE("non-stabilizing ideals are refused") {
        CHECK_THROWS_AS(local_quotient({P("x", v)}), NonIsolatedError);
        LocalQuotientOptions tight;
        tight.degree_cap = 4;
        CHECK_THROWS_AS(local_quotient({P("x^5", v), P("y^5", v)}, tight), NonIsolatedError);
    }
}
