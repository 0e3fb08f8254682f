#pragma once

#include "tjurina/invariants.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tjurina {

// f1 + f2 in separated variables. g1/g2 live in the combined ring (second
// block renamed as needed); f1/f2 are the block-local representatives used
// for per-factor analysis.
struct JoinGerm {
    Germ g1, g2, sum;
    Germ f1, f2;
    std::size_t arity_first;
};

JoinGerm make_join(const Germ& a, const Germ& b);

enum class RankMode { Auto, Exact, Modular };
std::string to_string(RankMode m);

struct JoinOptions {
    RankMode mode = RankMode::Auto;
    std::size_t exact_dim_cap = 300;  // Auto: tensor dims above this go modular
    std::size_t build_dim_cap = 4096; // largest tensor operator ever materialized
    std::size_t prime_count = 3;
    std::uint64_t prime_seed = 20260822;
    std::optional<std::uint64_t> complement_seed; // re-choose B1, B2 before b/u
    bool fullring_oracle = false;
    std::size_t fullring_arity_cap = 4;
    LocalQuotientOptions lq;
};

// The tensor-product model of the join's Milnor algebra: factor analyses plus
// (for small dimensions) the materialized operator matrix of f1⊗1 + 1⊗f2.
// Pair (i, j) of factor basis indices sits at position i * mu2 + j.
struct TensorAlgebra {
    AnalyzedGerm a1, a2;
    std::size_t dim;            // mu1 * mu2
    std::optional<RatMatrix> F; // materialized iff dim <= exact_dim_cap
};

TensorAlgebra tensor_algebra(const JoinGerm& j, const JoinOptions& opts = {});

// Assembles the tensor model from factor analyses already in hand (catalog
// runs analyze each germ once and join it many times).
TensorAlgebra tensor_algebra(AnalyzedGerm a1, AnalyzedGerm a2, const JoinOptions& opts = {});

struct TauJoinResult {
    std::size_t tau;
    RankMode mode_used; // Exact or Modular
    std::vector<std::uint64_t> primes;
    std::vector<std::size_t> per_prime_ranks;
    bool primes_agree = true;
    std::string rank_backend; // "bareiss", "dense_elimination" or "kronecker_krylov"
};

// mu1*mu2 minus the rank of the tensor operator. Modular ranks are computed
// on retry-fresh primes if one divides a denominator. Tensor dimensions above
// build_dim_cap never materialize the operator: the rank comes from the
// matrix-free Krylov routine below on narrower primes.
TauJoinResult tau_join(const TensorAlgebra& T, const JoinOptions& opts = {});

// Rank over F_p of m1 ⊗ I + I ⊗ m2 without forming the operator: a vector of
// the tensor square is a d1 x d2 matrix X and the operator acts as
// X -> m1·X + X·m2^T. Minimal-polynomial (Wiedemann) rank with random diagonal
// preconditioning on both sides; deterministic in `seed`. The result is a
// lower bound on the rational rank, exact with high probability; callers
// certify by cross-prime agreement exactly as for dense modular ranks.
// Requires max(d1, d2) * (p-1)^2 < 2^64 so rows accumulate without overflow;
// kronecker_prime_bits gives the widest admissible prime width.
std::size_t modular_kronecker_rank(const RatMatrix& m1, const RatMatrix& m2,
                                   std::uint64_t prime, std::uint64_t seed);
unsigned kronecker_prime_bits(std::size_t factor_dim);

// Independent oracle: the Tjurina number of the sum computed in the combined
// ring. Refuses combined arities above the cap. Also recomputes the combined
// Milnor number and insists it equals mu1*mu2.
std::size_t tau_join_fullring(const JoinGerm& j, const JoinOptions& opts = {});

// U = Ker(1) ⊗ Im(2) + Im(1) ⊗ Ker(2) inside the tensor square, with its
// dimension checked against tau1(mu2-tau2) + tau2(mu1-tau1) - nu1*nu1'.
Subspace compute_U(const OperatorDecomposition& d1, const OperatorDecomposition& d2);

struct BU {
    std::size_t b, u;
};

// b = dim F(B1 ⊗ B2), u = dim(that image ∩ U). A seed re-chooses B1 and B2 by
// a deterministic random shear along Ker∩Im before computing.
BU compute_b_u(const RatMatrix& F, const OperatorDecomposition& d1,
               const OperatorDecomposition& d2, const Subspace& U,
               std::optional<std::uint64_t> seed);

// Same quantities without materializing anything of tensor size: each
// spanning vector F(b1 ⊗ b2) is rank-2 in per-factor block coordinates
// (nu | K0 | B | A), where membership in U is "zero outside the seven
// allowed blocks".
BU compute_b_u_structured(const AnalyzedGerm& a1, const AnalyzedGerm& a2,
                          std::optional<std::uint64_t> seed);

struct DirectSumVerdict {
    bool ok;
    std::string detail; // empty when ok
};

// Subspace-level verification that Im(F) splits as
// F(A⊗A) ⊕ F(A⊗B) ⊕ F(B⊗A) ⊕ (U + F(B⊗B)), with the expected dimension of
// every summand. B1/B2 are the complement bases actually used for bu (they
// matter: b and u individually depend on the choice).
DirectSumVerdict verify_directsum(const RatMatrix& F, const OperatorDecomposition& d1,
                                  const OperatorDecomposition& d2, const Subspace& U,
                                  const std::vector<RatVector>& B1,
                                  const std::vector<RatVector>& B2, const BU& bu);
DirectSumVerdict verify_directsum(const RatMatrix& F, const OperatorDecomposition& d1,
                                  const OperatorDecomposition& d2, const Subspace& U,
                                  const BU& bu);

// The complement basis bu computations actually span: the stored B for no
// seed, otherwise B sheared along Ker∩Im by small deterministic integers.
// `salt` separates the two factors of one join.
std::vector<RatVector> effective_complement(const OperatorDecomposition& d,
                                            std::optional<std::uint64_t> seed,
                                            std::uint64_t salt);

enum class SmallGapCase { None, C1, C2a, C2b, C2c, C2d, C2e };
std::string to_string(SmallGapCase c);
int small_gap_value(SmallGapCase c); // 0 for None

// Pure arithmetic pattern match on the factor invariants, first matching
// pattern in the enumerated order.
SmallGapCase small_gap_case(std::size_t mu1, std::size_t tau1, std::size_t mu2,
                            std::size_t tau2);

struct JoinReport {
    InvariantReport g1, g2;
    std::string g1_text, g2_text;
    std::vector<std::string> g1_vars, g2_vars;
    std::size_t mu_join = 0;
    std::size_t tau_join_tensor = 0;
    std::optional<std::size_t> tau_fullring;
    bool fullring_match = true;
    std::size_t dim_U = 0;
    bool dim_U_by_formula = false; // true when the subspace was not materialized
    std::size_t b = 0, u = 0;
    long long b_minus_u = 0;
    long long theorem_residual = 0;
    bool bounds_ok = false;
    bool directsum_ok = false;                // dimension bookkeeping identity
    bool directsum_subspaces_checked = false; // exact path: summands verified
    std::string directsum_detail;
    std::size_t ebs_join = 0; // nilpotency index of the operator on class(1⊗1)
    std::optional<std::size_t> ebs_fullring;
    std::string charqh_case; // both_qh | one_qh | inconclusive | none_qh
    bool charqh_ok = false;
    bool maximaltau_applicable = false;
    bool maximaltau_ok = true;
    std::optional<std::size_t> cor25;
    std::string smallgap_case_name;
    long long gap = 0;
    bool smallgap_ok = false;
    RankMode rank_mode = RankMode::Exact;
    std::string rank_backend;
    std::vector<std::uint64_t> primes;
    std::vector<std::size_t> per_prime_ranks;
    bool primes_agree = true;
    std::optional<std::uint64_t> complement_seed;

    bool all_ok() const;
};

// Computes every quantity of the join identity and fills the verdict flags.
// Identity failures are reported through the flags (callers decide severity);
// only internal inconsistencies throw.
JoinReport verify_theorem(const JoinGerm& j, const JoinOptions& opts = {});
JoinReport verify_theorem(const Germ& a, const Germ& b, const JoinOptions& opts = {});
// Reuses a prebuilt tensor model; j supplies the combined ring for the
// full-ring oracle and the arity bound.
JoinReport verify_theorem(const TensorAlgebra& T, const JoinGerm& j,
                          const JoinOptions& opts = {});

struct CharQhVerdict {
    std::string case_name;
    bool ok;
};
CharQhVerdict check_charqh(const JoinGerm& j, const JoinOptions& opts = {});

struct MaximalTauVerdict {
    bool applicable;
    std::optional<std::size_t> closed_form;
    bool ok;
};
MaximalTauVerdict check_maximaltau(const JoinGerm& j, const JoinOptions& opts = {});

struct SmallGapVerdict {
    long long gap;
    SmallGapCase matched;
    bool ok;
};
SmallGapVerdict classify_small_gap(const JoinGerm& j, const JoinOptions& opts = {});

enum class QuotientProfile { CurveQh, SurfaceQh, SurfaceCurve };
std::string to_string(QuotientProfile p);

struct QuotientBoundReport {
    QuotientProfile profile;
    Rational quotient; // mu_join / tau_join
    Rational bound;
    bool ok;
};

// Strict profile bounds on mu/tau of the join; either argument order may
// fill the profile's roles.
QuotientBoundReport check_quotient_bounds(const Germ& a, const Germ& b, QuotientProfile p,
                                          const JoinOptions& opts = {});

} // namespace tjurina
