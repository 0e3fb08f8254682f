#pragma once

#include "tjurina/invariants.hpp"

#include <string>
#include <vector>

namespace tjurina {

struct FamilyMember {
    std::string deformation; // added terms in canonical text, "0" for the base
    std::size_t mu, tau;
    Rational quotient; // mu / tau
};

struct FamilyScanResult {
    std::size_t n, max_terms;
    std::size_t expected_mu; // (n-1) * n, verified on every member
    std::vector<FamilyMember> members;
    std::size_t min_tau;
    std::vector<std::string> min_tau_deformations; // attaining members, scan order
    std::size_t tau_min_formula; // 3n²/4 - 1 (n even), 3(n²-1)/4 (n odd)
    bool formula_attained;
};

// Deformations of y^n - x^(n+1) by sums of at most `max_terms` distinct
// monomials x^a y^b (a <= n-1, b <= n-2) of (n, n+1)-weighted degree above
// n(n+1), all with coefficient 1. Requires 3 <= n <= 8 and max_terms in
// {1, 2}. Every member must come out with mu = (n-1)n.
FamilyScanResult family_scan(std::size_t n, std::size_t max_terms,
                             const LocalQuotientOptions& opts = {});

} // namespace tjurina
