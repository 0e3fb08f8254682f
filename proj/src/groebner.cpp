#include "tjurina/groebner.hpp"

#include "tjurina/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace tjurina {

namespace {

constexpr std::size_t kBoundary = static_cast<std::size_t>(-1);

Polynomial monic(Polynomial p) {
    if (p.is_zero()) return p;
    Rational inv = Rational(1) / p.leading_coefficient();
    return p.scaled(inv);
}

// Full reduction against `basis` (zeros skipped), truncated arithmetic when
// `trunc` is set. Every term of the result is reducible by no basis lead.
Polynomial reduce(Polynomial work, const std::vector<Polynomial>& basis,
                  std::optional<int> trunc) {
    if (trunc) work = work.truncated(*trunc);
    Polynomial done(work.vars());
    while (!work.is_zero()) {
        const Monomial m = work.leading_monomial();
        const Rational c = work.leading_coefficient();
        const Polynomial* red = nullptr;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            if (g.leading_monomial().divides(m)) {
                red = &g;
                break;
            }
        }
        if (!red) {
            done.set_coefficient(m, c);
            work.set_coefficient(m, Rational(0));
            continue;
        }
        Monomial shift = m.divided_by(red->leading_monomial());
        Rational f = -c / red->leading_coefficient();
        work.add_scaled(*red, f, shift, trunc);
    }
    return done;
}

struct SPair {
    Monomial lcm;
    std::size_t i, j; // j == kBoundary: escape pair of generator i with `shift`
    Monomial shift;
};

struct SPairLess {
    bool operator()(const SPair& a, const SPair& b) const {
        int da = a.lcm.total_degree(), db = b.lcm.total_degree();
        if (da != db) return da < db;
        DegRevLex lt;
        if (lt(a.lcm, b.lcm)) return true;
        if (lt(b.lcm, a.lcm)) return false;
        if (a.i != b.i) return a.i < b.i;
        if (a.j != b.j) return a.j < b.j;
        if (lt(a.shift, b.shift)) return true;
        return false;
    }
};

class Engine {
public:
    Engine(const std::vector<Polynomial>& input, std::optional<int> trunc)
        : trunc_(trunc) {
        if (input.empty()) throw std::invalid_argument("empty generator list");
        vars_ = input.front().vars();
        for (const auto& g : input) {
            if (!(*g.vars() == *vars_)) throw std::invalid_argument("mixed variable sets");
            Polynomial t = trunc_ ? g.truncated(*trunc_) : g;
            if (!t.is_zero()) add_generator(monic(std::move(t)));
        }
    }

    std::vector<Polynomial> run() {
        while (!queue_.empty()) {
            SPair sp = *queue_.begin();
            queue_.erase(queue_.begin());
            Polynomial s(vars_);
            if (sp.j == kBoundary) {
                // lead escapes the degree bound; only the shifted tail remains
                const Polynomial& g = basis_[sp.i];
                s.add_scaled(g, Rational(-1), sp.shift, trunc_);
                s.set_coefficient(g.leading_monomial() * sp.shift, Rational(0));
            } else {
                pending_.erase({sp.i, sp.j});
                if (chain_criterion(sp)) continue;
                const Polynomial& gi = basis_[sp.i];
                const Polynomial& gj = basis_[sp.j];
                s.add_scaled(gi, Rational(1), sp.lcm.divided_by(gi.leading_monomial()), trunc_);
                s.add_scaled(gj, Rational(-1), sp.lcm.divided_by(gj.leading_monomial()), trunc_);
            }
            Polynomial h = reduce(std::move(s), basis_, trunc_);
            if (!h.is_zero()) add_generator(monic(std::move(h)));
        }
        return finish();
    }

private:
    bool chain_criterion(const SPair& sp) const {
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            if (k == sp.i || k == sp.j) continue;
            if (!basis_[k].leading_monomial().divides(sp.lcm)) continue;
            auto key = [](std::size_t a, std::size_t b) {
                return std::make_pair(std::min(a, b), std::max(a, b));
            };
            if (!pending_.count(key(sp.i, k)) && !pending_.count(key(sp.j, k))) return true;
        }
        return false;
    }

    void add_generator(Polynomial g) {
        std::size_t t = basis_.size();
        const Monomial& lmt = g.leading_monomial();
        for (std::size_t k = 0; k < t; ++k) {
            const Monomial& lmk = basis_[k].leading_monomial();
            Monomial l = Monomial::lcm(lmk, lmt);
            if (trunc_ && l.total_degree() >= *trunc_) continue; // escape pairs cover it
            if (lmk.coprime_with(lmt)) continue;
            queue_.insert(SPair{std::move(l), k, t, Monomial::one(lmt.arity())});
            pending_.insert({k, t});
        }
        if (trunc_) {
            // escape pairs: shifts s with |s| = N - deg(lm); only tail terms of
            // degree below deg(lm) can survive the shift, so skip otherwise
            int lead_deg = lmt.total_degree();
            bool has_low_tail = !g.is_zero() &&
                                g.terms().begin()->first.total_degree() < lead_deg &&
                                g.term_count() > 1;
            if (has_low_tail) {
                for (const auto& s : monomials_of_degree(lmt.arity(), *trunc_ - lead_deg))
                    queue_.insert(SPair{lmt * s, t, kBoundary, s});
            }
        }
        basis_.push_back(std::move(g));
    }

    std::vector<Polynomial> finish() {
        // minimal generators: drop any lead divisible by another surviving lead
        std::vector<Polynomial> sorted = basis_;
        std::sort(sorted.begin(), sorted.end(), [](const Polynomial& a, const Polynomial& b) {
            return DegRevLex{}(a.leading_monomial(), b.leading_monomial());
        });
        std::vector<Polynomial> kept;
        for (auto& g : sorted) {
            bool redundant = false;
            for (const auto& k : kept)
                if (k.leading_monomial().divides(g.leading_monomial())) {
                    redundant = true;
                    break;
                }
            if (!redundant) kept.push_back(std::move(g));
        }
        // tail-reduce to the unique reduced basis
        for (std::size_t i = 0; i < kept.size(); ++i) {
            std::vector<Polynomial> others;
            others.reserve(kept.size() - 1);
            for (std::size_t j = 0; j < kept.size(); ++j)
                if (j != i) others.push_back(kept[j]);
            kept[i] = monic(reduce(kept[i], others, trunc_));
        }
        if (trunc_) {
            // materialize the degree-N face of the monomial block
            for (const auto& m : monomials_of_degree(vars_->arity(), *trunc_)) {
                bool covered = false;
                for (const auto& k : kept)
                    if (k.leading_monomial().divides(m)) {
                        covered = true;
                        break;
                    }
                if (!covered) kept.push_back(Polynomial::term(vars_, m, Rational(1)));
            }
        }
        std::sort(kept.begin(), kept.end(), [](const Polynomial& a, const Polynomial& b) {
            return DegRevLex{}(a.leading_monomial(), b.leading_monomial());
        });
        return kept;
    }

    std::optional<int> trunc_;
    VarsPtr vars_;
    std::vector<Polynomial> basis_;
    std::set<SPair, SPairLess> queue_;
    std::set<std::pair<std::size_t, std::size_t>> pending_;
};

} // namespace

GroebnerBasis buchberger(const std::vector<Polynomial>& generators) {
    bool all_zero = std::all_of(generators.begin(), generators.end(),
                                [](const Polynomial& p) { return p.is_zero(); });
    if (generators.empty() || all_zero)
        throw std::invalid_argument("empty generator list");
    Engine e(generators, std::nullopt);
    return GroebnerBasis(generators.front().vars(), e.run(), std::nullopt);
}

GroebnerBasis buchberger_truncated(const std::vector<Polynomial>& generators, int N) {
    if (N < 1) throw std::invalid_argument("truncation degree must be positive");
    if (generators.empty()) throw std::invalid_argument("empty generator list");
    Engine e(generators, N);
    return GroebnerBasis(generators.front().vars(), e.run(), N);
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
    if (!(*p.vars() == *gb.vars())) throw std::invalid_argument("mixed variable sets");
    return reduce(p, gb.generators(), gb.truncation_degree());
}

QuotientPresentation::QuotientPresentation(GroebnerBasis gb, std::vector<Monomial> basis,
                                           int truncation)
    : gb_(std::move(gb)), basis_(std::move(basis)), truncation_(truncation) {}

std::size_t QuotientPresentation::index_of(const Monomial& m) const {
    auto it = std::lower_bound(basis_.begin(), basis_.end(), m,
                               [](const Monomial& a, const Monomial& b) {
                                   return DegRevLex{}(a, b);
                               });
    if (it == basis_.end() || !(*it == m))
        throw std::invalid_argument("monomial not in the staircase basis");
    return static_cast<std::size_t>(it - basis_.begin());
}

namespace {

std::vector<Monomial> staircase(const GroebnerBasis& gb, int N) {
    std::vector<Monomial> out;
    std::size_t arity = gb.vars()->arity();
    for (int d = 0; d < N; ++d)
        for (auto& m : monomials_of_degree(arity, d)) {
            bool covered = false;
            for (const auto& g : gb.generators())
                if (g.leading_monomial().divides(m)) {
                    covered = true;
                    break;
                }
            if (!covered) out.push_back(std::move(m));
        }
    return out;
}

} // namespace

QuotientPresentation local_quotient(const std::vector<Polynomial>& generators,
                                    const LocalQuotientOptions& opts) {
    if (generators.empty()) throw std::invalid_argument("empty generator list");
    const VarsPtr& vars = generators.front().vars();
    int maxdeg = 0;
    bool all_zero = true;
    for (const auto& g : generators) {
        if (!(*g.vars() == *vars)) throw std::invalid_argument("mixed variable sets");
        if (g.is_zero()) continue;
        all_zero = false;
        if (g.order_at_origin() < 1)
            throw std::invalid_argument("generator does not vanish at the origin");
        maxdeg = std::max(maxdeg, g.total_degree());
    }
    if (all_zero) throw NonIsolatedError("zero ideal has infinite-dimensional quotient");

    int cap = opts.degree_cap;
    if (cap < 2) throw std::invalid_argument("degree cap too small");
    int N = std::min(2 + 2 * maxdeg, cap);
    for (;;) {
        GroebnerBasis gb = buchberger_truncated(generators, N);
        std::vector<Monomial> stairs = staircase(gb, N);
        GroebnerBasis gb1 = buchberger_truncated(generators, N + 1);
        std::vector<Monomial> stairs1 = staircase(gb1, N + 1);
        if (stairs.size() == stairs1.size()) {
            if (stairs != stairs1)
                throw InternalCheckError("stabilized dimension with different staircases");
            return QuotientPresentation(std::move(gb), std::move(stairs), N);
        }
        if (N >= cap)
            throw NonIsolatedError("quotient dimension still growing at degree cap " +
                                   std::to_string(cap));
        N = std::min((3 * N + 1) / 2, cap);
    }
}

std::vector<Rational> class_vector(const Polynomial& p, const QuotientPresentation& q) {
    Polynomial nf = normal_form(p, q.gb());
    std::vector<Rational> out(q.dimension(), Rational(0));
    for (const auto& [m, c] : nf.terms()) out[q.index_of(m)] = c;
    return out;
}

} // namespace tjurina
