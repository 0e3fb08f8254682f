#include "tjurina/family.hpp"

#include "tjurina/errors.hpp"

#include <stdexcept>

namespace tjurina {

FamilyScanResult family_scan(std::size_t n, std::size_t max_terms,
                             const LocalQuotientOptions& opts) {
    if (n < 3 || n > 8) throw std::invalid_argument("family scan needs 3 <= n <= 8");
    if (max_terms < 1 || max_terms > 2)
        throw std::invalid_argument("family scan needs max-terms in {1, 2}");

    VarsPtr vars = make_vars({"x", "y"});
    const int ni = static_cast<int>(n);

    Polynomial base(vars);
    base.set_coefficient(Monomial({0, ni}), Rational(1));       // y^n
    base.set_coefficient(Monomial({ni + 1, 0}), Rational(-1));  // -x^(n+1)

    // eligible deformation monomials: below the staircase corner degrees but
    // above the principal part in (n, n+1)-weight
    std::vector<Monomial> pool;
    for (int a = 0; a <= ni - 1; ++a)
        for (int b = 0; b <= ni - 2; ++b)
            if (a * ni + b * (ni + 1) > ni * (ni + 1)) pool.emplace_back(std::vector<int>{a, b});

    std::vector<std::vector<std::size_t>> picks;
    picks.push_back({}); // the base itself
    for (std::size_t i = 0; i < pool.size(); ++i) picks.push_back({i});
    if (max_terms == 2)
        for (std::size_t i = 0; i < pool.size(); ++i)
            for (std::size_t j = i + 1; j < pool.size(); ++j) picks.push_back({i, j});

    FamilyScanResult out;
    out.n = n;
    out.max_terms = max_terms;
    out.expected_mu = (n - 1) * n;
    out.tau_min_formula =
        n % 2 == 0 ? (3 * n * n) / 4 - 1 : (3 * (n * n - 1)) / 4;

    for (const auto& pick : picks) {
        Polynomial deformation(vars);
        for (std::size_t idx : pick) deformation.set_coefficient(pool[idx], Rational(1));

        Germ g(base + deformation);
        MilnorAlgebra alg = milnor_algebra(g, opts);
        const std::size_t mu = alg.mu();
        if (mu != out.expected_mu)
            throw CheckFailedError("family member " + g.poly().to_string() + " has mu = " +
                                   std::to_string(mu) + ", expected " +
                                   std::to_string(out.expected_mu));
        const std::size_t tau = mu - rank_kernel_image(alg.mult_f).rank;

        FamilyMember m;
        m.deformation = deformation.is_zero() ? "0" : deformation.to_string();
        m.mu = mu;
        m.tau = tau;
        m.quotient = Rational(static_cast<unsigned long>(mu)) /
                     Rational(static_cast<unsigned long>(tau));
        m.quotient.canonicalize();
        out.members.push_back(std::move(m));
    }

    out.min_tau = out.members.front().tau;
    for (const auto& m : out.members)
        if (m.tau < out.min_tau) out.min_tau = m.tau;
    for (const auto& m : out.members)
        if (m.tau == out.min_tau) out.min_tau_deformations.push_back(m.deformation);
    out.formula_attained = out.min_tau == out.tau_min_formula;
    return out;
}

} // namespace tjurina
