#pragma once

#include "tjurina/rational.hpp"

#include <cstdint>
#include <vector>

namespace tjurina {

using RatVector = std::vector<Rational>;

class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Rational(0)) {}
    static RatMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Rational& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    RatMatrix transposed() const;
    RatVector apply(const RatVector& v) const;
    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator+(const RatMatrix& o) const;
    bool operator==(const RatMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
    bool is_zero() const;

private:
    std::size_t rows_, cols_;
    std::vector<Rational> e_;
};

// Reduced row echelon form of the row span, computed by fraction-free
// (Bareiss) elimination and then normalized. Canonical for the row space;
// zero rows dropped.
struct EchelonForm {
    std::vector<RatVector> rows;
    std::vector<std::size_t> pivots; // pivot column of each row, increasing
};
EchelonForm reduced_echelon(std::vector<RatVector> rows);

// A subspace of Q^ambient, stored as the canonical RREF basis of its span.
// Equal subspaces compare equal memberwise.
class Subspace {
public:
    static Subspace zero(std::size_t ambient);
    static Subspace full(std::size_t ambient);
    static Subspace from_spanning(std::size_t ambient, const std::vector<RatVector>& vectors);

    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<RatVector>& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivot_columns() const noexcept { return pivots_; }

    bool contains(const RatVector& v) const;
    bool contains(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;
    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

private:
    Subspace(std::size_t ambient, EchelonForm ef);
    std::size_t ambient_;
    std::vector<RatVector> basis_;
    std::vector<std::size_t> pivots_;
};

struct RankKernelImage {
    std::size_t rank;
    Subspace kernel; // of the map v -> M v
    Subspace image;  // column space
};
RankKernelImage rank_kernel_image(const RatMatrix& M);

// dim(V+W) and V∩W via the Zassenhaus double-block elimination; the dimension
// identity dim V + dim W = dim(V+W) + dim(V∩W) is asserted on every call.
struct LatticeDims {
    std::size_t dim_sum;
    std::size_t dim_intersection;
    Subspace intersection;
};
LatticeDims lattice_dims(const Subspace& V, const Subspace& W);

// Direct complement of `inner` inside `outer`: greedily keeps those basis
// vectors of `outer` that grow the span of `inner`. Deterministic.
Subspace complement_basis(const Subspace& inner, const Subspace& outer);

// M1 ⊕ M2 acting on the tensor square, pairs ordered row-major:
// (i, j) -> i * d2 + j.
RatMatrix kronecker_sum(const RatMatrix& M1, const RatMatrix& M2);

Subspace image_of_restriction(const RatMatrix& M, const Subspace& domain);

RatVector kron_vector(const RatVector& a, const RatVector& b);

// Rank of M mod each prime. Each per-prime rank is a lower bound for the true
// rank; agreement across several independent primes is the certification
// story, decided by the caller.
struct ModularRankResult {
    std::size_t rank_estimate; // max over the primes
    std::vector<std::uint64_t> primes;
    std::vector<std::size_t> per_prime_rank;
};
ModularRankResult modular_rank(const RatMatrix& M, const std::vector<std::uint64_t>& primes);

// `count` distinct random 62-bit primes, deterministic in `seed`.
std::vector<std::uint64_t> random_primes(std::size_t count, std::uint64_t seed);

// Same, but primes drawn from [2^(bits-1), 2^bits). Small primes let callers
// accumulate many products in a 64-bit word before reducing. 16 <= bits <= 62.
std::vector<std::uint64_t> random_primes_bits(std::size_t count, unsigned bits,
                                              std::uint64_t seed);

// Entries of M reduced mod p, row-major. Throws BadPrime when p divides a
// denominator.
std::vector<std::uint64_t> reduce_mod(const RatMatrix& M, std::uint64_t p);

} // namespace tjurina
