#pragma once

#include "tjurina/exactla.hpp"
#include "tjurina/groebner.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tjurina {

// A polynomial representative of a hypersurface germ: nonzero, vanishing to
// order >= 2 at the origin.
class Germ {
public:
    explicit Germ(Polynomial p);
    static Germ parse(const std::string& text, VarsPtr vars);

    const Polynomial& poly() const noexcept { return poly_; }
    const VarsPtr& vars() const noexcept { return poly_.vars(); }
    std::size_t arity() const noexcept { return poly_.arity(); }

private:
    Polynomial poly_;
};

std::vector<Polynomial> jacobian_ideal(const Germ& g);

// Finite-dimensional C-algebra C{x}/J_f together with the matrix of
// multiplication by f in the staircase basis.
struct MilnorAlgebra {
    QuotientPresentation presentation;
    RatMatrix mult_f;
    std::size_t mu() const noexcept { return presentation.dimension(); }
};

MilnorAlgebra milnor_algebra(const Germ& g, const LocalQuotientOptions& opts = {});

// Matrix of v -> class(p * v) in the staircase basis of q.
RatMatrix multiplication_matrix(const QuotientPresentation& q, const Polynomial& p);

std::size_t milnor_number(const Germ& g, const LocalQuotientOptions& opts = {});

// Computed along two independent routes (quotient by (f) + J_f, and
// mu - rank of multiplication by f); any disagreement is raised.
std::size_t tjurina_number(const Germ& g, const LocalQuotientOptions& opts = {});

// V = Ker ⊕ B ⊕ A with Im = (Ker∩Im) ⊕ B and A a complement of Ker+Im;
// nu1 = dim(Ker∩Im) = dim A. All direct-sum facts are verified on
// construction.
struct OperatorDecomposition {
    Subspace kernel;
    Subspace image;
    Subspace kernel_cap_image;
    Subspace B;
    Subspace A;
    std::size_t nu1;
};

OperatorDecomposition decompose(const MilnorAlgebra& alg);

std::size_t nu1_invariant(const Germ& g, const LocalQuotientOptions& opts = {});

// Least k >= 1 with f^k in J_f, found by iterating multiplication by f on the
// class of 1. Bounded by the arity; exceeding it is an internal alarm.
std::size_t bs_exponent(const Germ& g, const LocalQuotientOptions& opts = {});

// Strictly positive rational weights giving every support monomial weighted
// degree 1, when such weights exist.
std::optional<std::vector<Rational>> detect_quasihomogeneous(const Germ& g);

// {sum (a_i + 1) w_i : x^a in the staircase basis}, ascending with
// multiplicity. Every entry is checked to lie strictly between 0 and arity.
std::vector<Rational> qh_spectrum(const Germ& g, const std::vector<Rational>& weights,
                                  const LocalQuotientOptions& opts = {});

struct MuTauBsReport {
    std::size_t mu, tau, ebs;
    Rational quotient;       // mu / tau
    bool equality_case;      // ebs == 1, where mu == tau is forced
    bool varchenko_checked;  // spectral bound verified (quasi-homogeneous only)
};

// Verifies mu/tau < ebs (ebs >= 2), mu == tau at ebs == 1, and for
// quasi-homogeneous germs the spectral upper bound
// ebs <= floor(arity - 2*alpha_min) + 1. Violations raise CheckFailedError.
MuTauBsReport check_mu_tau_vs_bs(const Germ& g, const LocalQuotientOptions& opts = {});

// One-pass bundle of everything the join layer consumes per factor.
struct AnalyzedGerm {
    Germ germ;
    MilnorAlgebra algebra;
    std::size_t mu, tau, nu1, ebs;
    OperatorDecomposition dec;
    std::optional<std::vector<Rational>> qh_weights;
};

AnalyzedGerm analyze(const Germ& g, const LocalQuotientOptions& opts = {});

struct InvariantReport {
    std::size_t mu, tau, nu1, ebs;
    std::size_t mu_minus_tau;
    Rational quotient_mu_tau;
    std::optional<std::vector<Rational>> qh_weights;
    std::optional<std::vector<Rational>> spectrum;
    std::optional<Rational> alpha_min;
};

InvariantReport invariant_report(const Germ& g, const LocalQuotientOptions& opts = {});
InvariantReport invariant_report(const AnalyzedGerm& a);

} // namespace tjurina
