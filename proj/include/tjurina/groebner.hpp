#pragma once

#include "tjurina/polyring.hpp"

#include <optional>
#include <vector>

namespace tjurina {

// Reduced Groebner basis for DegRevLex. Generators are monic, pairwise
// tail-reduced, sorted by leading monomial ascending. When
// truncation_degree is set the basis presents the ideal
// (input) + (all monomials of that total degree); reduction drops every term
// of degree >= the bound, and the surviving degree-N monomial generators are
// materialized in the generator list.
class GroebnerBasis {
public:
    const std::vector<Polynomial>& generators() const noexcept { return gens_; }
    const VarsPtr& vars() const noexcept { return vars_; }
    std::optional<int> truncation_degree() const noexcept { return truncation_; }

private:
    friend GroebnerBasis buchberger(const std::vector<Polynomial>&);
    friend GroebnerBasis buchberger_truncated(const std::vector<Polynomial>&, int);
    GroebnerBasis(VarsPtr vars, std::vector<Polynomial> gens, std::optional<int> trunc)
        : vars_(std::move(vars)), gens_(std::move(gens)), truncation_(trunc) {}

    VarsPtr vars_;
    std::vector<Polynomial> gens_;
    std::optional<int> truncation_;
};

GroebnerBasis buchberger(const std::vector<Polynomial>& generators);

// Basis of (generators) + m^N, computed with degree-truncated arithmetic.
GroebnerBasis buchberger_truncated(const std::vector<Polynomial>& generators, int N);

// Unique remainder: no term of the result is divisible by a basis leading
// monomial, and (in truncated bases) every term has degree below the bound.
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);

struct LocalQuotientOptions {
    int degree_cap = 128;
};

// Monomial-basis presentation of C{x}/(I + m^N) at a stabilized N, which by
// the Nakayama argument presents the local quotient C{x}/I.
class QuotientPresentation {
public:
    QuotientPresentation(GroebnerBasis gb, std::vector<Monomial> basis, int truncation);

    const GroebnerBasis& gb() const noexcept { return gb_; }
    // the monomial staircase, ascending in DegRevLex
    const std::vector<Monomial>& basis_monomials() const noexcept { return basis_; }
    int truncation() const noexcept { return truncation_; }
    std::size_t dimension() const noexcept { return basis_.size(); }
    std::size_t index_of(const Monomial& m) const; // position in the staircase

private:
    GroebnerBasis gb_;
    std::vector<Monomial> basis_;
    int truncation_;
};

// Stabilized finite-dimensional presentation of C{x}/(generators), or
// NonIsolatedError if the dimension never stabilizes below the degree cap.
QuotientPresentation local_quotient(const std::vector<Polynomial>& generators,
                                    const LocalQuotientOptions& opts = {});

// Coordinates of the class of p in the staircase basis.
std::vector<Rational> class_vector(const Polynomial& p, const QuotientPresentation& q);

} // namespace tjurina
