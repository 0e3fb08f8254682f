#pragma once

#include "tjurina/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tjurina {

// Ordered, immutable set of variable names shared by the polynomials of one
// ring. Polynomials hold it by shared_ptr; arity mismatches are bugs.
class VariableSet {
public:
    explicit VariableSet(std::vector<std::string> names);

    std::size_t arity() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const VariableSet& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
};

using VarsPtr = std::shared_ptr<const VariableSet>;

VarsPtr make_vars(std::vector<std::string> names);

// Exponent vector. Arity is fixed by the owning ring.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exponents);
    static Monomial one(std::size_t arity) { return Monomial(std::vector<int>(arity, 0)); }

    std::size_t arity() const noexcept { return e_.size(); }
    int exponent(std::size_t i) const { return e_.at(i); }
    const std::vector<int>& exponents() const noexcept { return e_; }
    int total_degree() const noexcept;
    bool is_one() const noexcept { return total_degree() == 0; }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    // quotient o / *this is taken by the caller as divided_into
    Monomial divided_by(const Monomial& d) const; // requires d.divides(*this)
    static Monomial lcm(const Monomial& a, const Monomial& b);
    bool coprime_with(const Monomial& o) const;

    bool operator==(const Monomial& o) const { return e_ == o.e_; }

private:
    std::vector<int> e_;
};

// Degree-reverse-lexicographic order: compare total degree first; on ties the
// monomial with the larger exponent on the last differing variable is smaller.
struct DegRevLex {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

Rational weighted_degree(const Monomial& m, const std::vector<Rational>& weights);

class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, DegRevLex>;

    explicit Polynomial(VarsPtr vars);
    static Polynomial zero(VarsPtr vars) { return Polynomial(std::move(vars)); }
    static Polynomial constant(VarsPtr vars, const Rational& c);
    static Polynomial term(VarsPtr vars, const Monomial& m, const Rational& c);
    static Polynomial variable(VarsPtr vars, std::size_t index);

    const VarsPtr& vars() const noexcept { return vars_; }
    std::size_t arity() const noexcept;
    // ascending in the ring order; leading term is terms().rbegin()
    const TermMap& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }
    int total_degree() const;      // -1 for the zero polynomial
    int order_at_origin() const;   // min total degree of a term; -1 for zero

    const Monomial& leading_monomial() const;    // requires nonzero
    const Rational& leading_coefficient() const; // requires nonzero
    Rational coefficient(const Monomial& m) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const Rational& c) const;
    bool operator==(const Polynomial& o) const;

    // *this += c * x^shift * p; the workhorse of reduction loops.
    // drop_from_degree, when set, discards every resulting term of total
    // degree >= that bound.
    void add_scaled(const Polynomial& p, const Rational& c, const Monomial& shift,
                    std::optional<int> drop_from_degree = std::nullopt);
    void set_coefficient(const Monomial& m, const Rational& c);

    // drops terms of total degree >= bound
    Polynomial truncated(int bound) const;

    // canonical rendering, leading term first; parses back to an equal value
    std::string to_string() const;

private:
    void check_same_ring(const Polynomial& o) const;

    VarsPtr vars_;
    TermMap terms_;
};

// Grammar: expr := ['+'|'-'] term (('+'|'-') term)*, term := coef ['*' factors]
// | factors, factors := factor ('*' factor)*, factor := var ['^' uint],
// coef := uint ['/' uint]. Whitespace is ignored everywhere. Throws ParseError
// with the byte offset of the first offending character.
Polynomial parse_polynomial(const std::string& text, VarsPtr vars);

Polynomial partial_derivative(const Polynomial& p, std::size_t var_index);
std::vector<Polynomial> partial_derivatives(const Polynomial& p);

// Rewrites q over a variable set disjoint from p's, renaming only the
// colliding names, and returns both over the concatenated ring.
struct DisjointPair {
    Polynomial first;
    Polynomial second;
    VarsPtr combined;
    std::size_t arity_first; // combined = first block + second block
};
DisjointPair rename_into_disjoint(const Polynomial& p, const Polynomial& q);

// All monomials in `arity` variables of total degree exactly d, ascending in
// DegRevLex.
std::vector<Monomial> monomials_of_degree(std::size_t arity, int d);

} // namespace tjurina
