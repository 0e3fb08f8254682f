#include "tjurina/exactla.hpp"

#include "tjurina/errors.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace tjurina {

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

RatVector RatMatrix::apply(const RatVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
    RatVector out(rows_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r) {
        Rational acc(0);
        for (std::size_t c = 0; c < cols_; ++c)
            if (at(r, c) != 0 && v[c] != 0) acc += at(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    RatMatrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = at(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < o.cols_; ++c)
                if (o.at(k, c) != 0) out.at(r, c) += a * o.at(k, c);
        }
    return out;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix shape mismatch");
    RatMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] + o.e_[i];
    return out;
}

bool RatMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Rational& x) { return x == 0; });
}

namespace {

// Scale a rational row to coprime integers.
std::vector<Integer> to_integer_row(const RatVector& row) {
    Integer l(1);
    for (const auto& x : row)
        if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<Integer> out(row.size());
    Integer g(0);
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] == 0) continue;
        Rational v = row[j] * Rational(l);
        v.canonicalize();
        out[j] = v.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[j].get_mpz_t());
    }
    if (g > 1)
        for (auto& x : out)
            if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return out;
}

} // namespace

EchelonForm reduced_echelon(std::vector<RatVector> input) {
    std::size_t nrows = input.size();
    std::size_t ncols = nrows ? input[0].size() : 0;
    for (const auto& r : input)
        if (r.size() != ncols) throw std::invalid_argument("ragged rows");

    std::vector<std::vector<Integer>> a;
    a.reserve(nrows);
    for (auto& r : input) a.push_back(to_integer_row(r));

    // fraction-free elimination; every intermediate entry is a minor of the
    // scaled input, so the one-step division is exact
    Integer prev(1);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
        std::size_t pr = r;
        while (pr < nrows && a[pr][c] == 0) ++pr;
        if (pr == nrows) continue;
        std::swap(a[r], a[pr]);
        for (std::size_t i = r + 1; i < nrows; ++i) {
            for (std::size_t j = c + 1; j < ncols; ++j) {
                Integer t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                Integer q, rem;
                mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                if (rem != 0) throw InternalCheckError("fraction-free step not exact");
                a[i][j] = q;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivots.push_back(c);
        ++r;
    }

    // normalize to reduced form over Q, bottom-up
    EchelonForm ef;
    ef.pivots = pivots;
    ef.rows.assign(pivots.size(), RatVector(ncols, Rational(0)));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        Rational inv = Rational(1) / Rational(a[i][pivots[i]]);
        for (std::size_t j = pivots[i]; j < ncols; ++j)
            if (a[i][j] != 0) ef.rows[i][j] = Rational(a[i][j]) * inv;
    }
    for (std::size_t i = pivots.size(); i-- > 0;) {
        for (std::size_t k = 0; k < i; ++k) {
            Rational f = ef.rows[k][pivots[i]];
            if (f == 0) continue;
            for (std::size_t j = pivots[i]; j < ncols; ++j)
                if (ef.rows[i][j] != 0) ef.rows[k][j] -= f * ef.rows[i][j];
        }
    }
    return ef;
}

Subspace::Subspace(std::size_t ambient, EchelonForm ef)
    : ambient_(ambient), basis_(std::move(ef.rows)), pivots_(std::move(ef.pivots)) {}

Subspace Subspace::zero(std::size_t ambient) { return Subspace(ambient, EchelonForm{}); }

Subspace Subspace::full(std::size_t ambient) {
    EchelonForm ef;
    ef.rows.assign(ambient, RatVector(ambient, Rational(0)));
    for (std::size_t i = 0; i < ambient; ++i) {
        ef.rows[i][i] = 1;
        ef.pivots.push_back(i);
    }
    return Subspace(ambient, std::move(ef));
}

Subspace Subspace::from_spanning(std::size_t ambient, const std::vector<RatVector>& vectors) {
    for (const auto& v : vectors)
        if (v.size() != ambient) throw std::invalid_argument("vector length mismatch");
    return Subspace(ambient, reduced_echelon(vectors));
}

bool Subspace::contains(const RatVector& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("vector length mismatch");
    RatVector w = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Rational& f = w[pivots_[i]];
        if (f == 0) continue;
        Rational fc = f;
        for (std::size_t j = pivots_[i]; j < ambient_; ++j)
            if (basis_[i][j] != 0) w[j] -= fc * basis_[i][j];
    }
    return std::all_of(w.begin(), w.end(), [](const Rational& x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("ambient mismatch");
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [&](const RatVector& v) { return contains(v); });
}

Subspace Subspace::sum(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("ambient mismatch");
    std::vector<RatVector> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return from_spanning(ambient_, all);
}

RankKernelImage rank_kernel_image(const RatMatrix& M) {
    EchelonForm ef = [&] {
        std::vector<RatVector> rows(M.rows(), RatVector(M.cols(), Rational(0)));
        for (std::size_t r = 0; r < M.rows(); ++r)
            for (std::size_t c = 0; c < M.cols(); ++c) rows[r][c] = M.at(r, c);
        return reduced_echelon(std::move(rows));
    }();

    std::size_t rank = ef.rows.size();

    // kernel from the reduced form: one vector per free column
    std::vector<bool> is_pivot(M.cols(), false);
    for (auto p : ef.pivots) is_pivot[p] = true;
    std::vector<RatVector> kvecs;
    for (std::size_t f = 0; f < M.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector v(M.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < ef.pivots.size(); ++i) v[ef.pivots[i]] = -ef.rows[i][f];
        kvecs.push_back(std::move(v));
    }
    Subspace kernel = Subspace::from_spanning(M.cols(), kvecs);

    RatMatrix t = M.transposed();
    std::vector<RatVector> cols(t.rows(), RatVector(t.cols(), Rational(0)));
    for (std::size_t r = 0; r < t.rows(); ++r)
        for (std::size_t c = 0; c < t.cols(); ++c) cols[r][c] = t.at(r, c);
    Subspace image = Subspace::from_spanning(M.rows(), cols);

    if (kernel.dim() != M.cols() - rank || image.dim() != rank)
        throw InternalCheckError("rank/kernel/image dimensions inconsistent");
    return RankKernelImage{rank, std::move(kernel), std::move(image)};
}

LatticeDims lattice_dims(const Subspace& V, const Subspace& W) {
    if (V.ambient_dim() != W.ambient_dim()) throw std::invalid_argument("ambient mismatch");
    std::size_t n = V.ambient_dim();
    std::vector<RatVector> rows;
    for (const auto& v : V.basis()) {
        RatVector r(2 * n, Rational(0));
        std::copy(v.begin(), v.end(), r.begin());
        std::copy(v.begin(), v.end(), r.begin() + n);
        rows.push_back(std::move(r));
    }
    for (const auto& w : W.basis()) {
        RatVector r(2 * n, Rational(0));
        std::copy(w.begin(), w.end(), r.begin());
        rows.push_back(std::move(r));
    }
    EchelonForm ef = reduced_echelon(std::move(rows));

    std::size_t dim_sum = 0;
    std::vector<RatVector> inter;
    for (std::size_t i = 0; i < ef.rows.size(); ++i) {
        if (ef.pivots[i] < n) {
            ++dim_sum;
        } else {
            inter.emplace_back(ef.rows[i].begin() + n, ef.rows[i].end());
        }
    }
    Subspace intersection = Subspace::from_spanning(n, inter);
    if (V.dim() + W.dim() != dim_sum + intersection.dim())
        throw InternalCheckError("modular law dimension identity failed");
    return LatticeDims{dim_sum, intersection.dim(), std::move(intersection)};
}

namespace {

// Row-reduction accumulator for independence tests; not canonical.
struct IncrementalSpan {
    std::vector<RatVector> rows;
    std::vector<std::size_t> pivots;

    bool try_add(RatVector v) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Rational f = v[pivots[i]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (rows[i][j] != 0) v[j] -= f * rows[i][j];
        }
        std::size_t p = 0;
        while (p < v.size() && v[p] == 0) ++p;
        if (p == v.size()) return false;
        Rational inv = Rational(1) / v[p];
        for (auto& x : v) x *= inv;
        rows.push_back(std::move(v));
        pivots.push_back(p);
        return true;
    }
};

} // namespace

Subspace complement_basis(const Subspace& inner, const Subspace& outer) {
    if (inner.ambient_dim() != outer.ambient_dim())
        throw std::invalid_argument("ambient mismatch");
    if (!outer.contains(inner))
        throw std::invalid_argument("inner subspace not contained in outer");
    IncrementalSpan span;
    for (const auto& v : inner.basis()) span.try_add(v);
    std::vector<RatVector> kept;
    for (const auto& v : outer.basis())
        if (span.try_add(v)) kept.push_back(v);
    if (inner.dim() + kept.size() != outer.dim())
        throw InternalCheckError("complement has wrong dimension");
    return Subspace::from_spanning(outer.ambient_dim(), kept);
}

RatMatrix kronecker_sum(const RatMatrix& M1, const RatMatrix& M2) {
    if (M1.rows() != M1.cols() || M2.rows() != M2.cols())
        throw std::invalid_argument("kronecker_sum needs square matrices");
    std::size_t d1 = M1.rows(), d2 = M2.rows();
    RatMatrix K(d1 * d2, d1 * d2);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t k = 0; k < d1; ++k) {
            const Rational& a = M1.at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < d2; ++j) K.at(i * d2 + j, k * d2 + j) += a;
        }
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d2; ++j)
            for (std::size_t l = 0; l < d2; ++l) {
                const Rational& b = M2.at(j, l);
                if (b == 0) continue;
                K.at(i * d2 + j, i * d2 + l) += b;
            }
    return K;
}

Subspace image_of_restriction(const RatMatrix& M, const Subspace& domain) {
    if (domain.ambient_dim() != M.cols()) throw std::invalid_argument("ambient mismatch");
    std::vector<RatVector> images;
    images.reserve(domain.dim());
    for (const auto& v : domain.basis()) images.push_back(M.apply(v));
    return Subspace::from_spanning(M.rows(), images);
}

RatVector kron_vector(const RatVector& a, const RatVector& b) {
    RatVector out(a.size() * b.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) out[i * b.size() + j] = a[i] * b[j];
    }
    return out;
}

namespace {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_of(const Integer& z, std::uint64_t p) {
    unsigned long r = mpz_fdiv_ui(z.get_mpz_t(), p);
    return static_cast<std::uint64_t>(r);
}

std::size_t rank_mod(const RatMatrix& M, std::uint64_t p) {
    std::size_t nr = M.rows(), nc = M.cols();
    std::vector<std::vector<std::uint64_t>> a(nr, std::vector<std::uint64_t>(nc));
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) {
            const Rational& x = M.at(r, c);
            std::uint64_t den = mod_of(x.get_den(), p);
            if (den == 0) throw BadPrimeError(p);
            std::uint64_t num = mod_of(x.get_num(), p);
            a[r][c] = num == 0 ? 0 : mulmod(num, powmod(den, p - 2, p), p);
        }

    std::size_t rank = 0;
    for (std::size_t c = 0; c < nc && rank < nr; ++c) {
        std::size_t pr = rank;
        while (pr < nr && a[pr][c] == 0) ++pr;
        if (pr == nr) continue;
        std::swap(a[rank], a[pr]);
        std::uint64_t inv = powmod(a[rank][c], p - 2, p);
        for (std::size_t i = rank + 1; i < nr; ++i) {
            if (a[i][c] == 0) continue;
            std::uint64_t f = mulmod(a[i][c], inv, p);
            std::uint64_t nf = p - f;
            for (std::size_t j = c; j < nc; ++j)
                if (a[rank][j]) a[i][j] = (a[i][j] + mulmod(nf, a[rank][j], p)) % p;
        }
        ++rank;
    }
    return rank;
}

} // namespace

ModularRankResult modular_rank(const RatMatrix& M, const std::vector<std::uint64_t>& primes) {
    if (primes.empty()) throw std::invalid_argument("need at least one prime");
    ModularRankResult out;
    out.primes = primes;
    out.rank_estimate = 0;
    for (auto p : primes) {
        std::size_t r = rank_mod(M, p);
        out.per_prime_rank.push_back(r);
        out.rank_estimate = std::max(out.rank_estimate, r);
    }
    return out;
}

std::vector<std::uint64_t> random_primes(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t(1) << 61,
                                                      (std::uint64_t(1) << 62) - 1);
    std::vector<std::uint64_t> out;
    while (out.size() < count) {
        Integer z(static_cast<unsigned long>(dist(gen)));
        mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
        std::uint64_t p = mpz_get_ui(z.get_mpz_t());
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
}

std::vector<std::uint64_t> random_primes_bits(std::size_t count, unsigned bits,
                                              std::uint64_t seed) {
    if (bits < 16 || bits > 62) throw std::invalid_argument("prime width out of range");
    std::mt19937_64 gen(seed);
    const std::uint64_t lo = std::uint64_t(1) << (bits - 1);
    const std::uint64_t hi = (std::uint64_t(1) << bits) - 1;
    std::uniform_int_distribution<std::uint64_t> dist(lo, hi);
    std::vector<std::uint64_t> out;
    while (out.size() < count) {
        Integer z(static_cast<unsigned long>(dist(gen)));
        mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
        std::uint64_t p = mpz_get_ui(z.get_mpz_t());
        if (p > hi) continue; // nextprime crossed the range boundary
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
}

std::vector<std::uint64_t> reduce_mod(const RatMatrix& M, std::uint64_t p) {
    std::vector<std::uint64_t> out(M.rows() * M.cols());
    for (std::size_t r = 0; r < M.rows(); ++r)
        for (std::size_t c = 0; c < M.cols(); ++c) {
            const Rational& x = M.at(r, c);
            std::uint64_t den = mod_of(x.get_den(), p);
            if (den == 0) throw BadPrimeError(p);
            std::uint64_t num = mod_of(x.get_num(), p);
            out[r * M.cols() + c] = num == 0 ? 0 : mulmod(num, powmod(den, p - 2, p), p);
        }
    return out;
}

} // namespace tjurina
