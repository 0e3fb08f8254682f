#include "tjurina/invariants.hpp"

#include "tjurina/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace tjurina {

Germ::Germ(Polynomial p) : poly_(std::move(p)) {
    if (poly_.is_zero()) throw NonIsolatedError("zero germ");
    if (poly_.order_at_origin() < 2)
        throw NonIsolatedError("germ must vanish to order >= 2 at the origin");
}

Germ Germ::parse(const std::string& text, VarsPtr vars) {
    return Germ(parse_polynomial(text, std::move(vars)));
}

std::vector<Polynomial> jacobian_ideal(const Germ& g) {
    return partial_derivatives(g.poly());
}

RatMatrix multiplication_matrix(const QuotientPresentation& q, const Polynomial& p) {
    std::size_t d = q.dimension();
    RatMatrix M(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        Polynomial pj = Polynomial::term(p.vars(), q.basis_monomials()[j], Rational(1)) * p;
        std::vector<Rational> col = class_vector(pj, q);
        for (std::size_t i = 0; i < d; ++i) M.at(i, j) = col[i];
    }
    return M;
}

MilnorAlgebra milnor_algebra(const Germ& g, const LocalQuotientOptions& opts) {
    QuotientPresentation q = local_quotient(jacobian_ideal(g), opts);
    RatMatrix M = multiplication_matrix(q, g.poly());
    return MilnorAlgebra{std::move(q), std::move(M)};
}

std::size_t milnor_number(const Germ& g, const LocalQuotientOptions& opts) {
    return local_quotient(jacobian_ideal(g), opts).dimension();
}

std::size_t tjurina_number(const Germ& g, const LocalQuotientOptions& opts) {
    std::vector<Polynomial> gens = jacobian_ideal(g);
    gens.push_back(g.poly());
    std::size_t direct = local_quotient(gens, opts).dimension();

    MilnorAlgebra alg = milnor_algebra(g, opts);
    std::size_t via_rank = alg.mu() - rank_kernel_image(alg.mult_f).rank;
    if (direct != via_rank)
        throw InternalCheckError("tjurina number mismatch: quotient route " +
                                 std::to_string(direct) + ", rank route " +
                                 std::to_string(via_rank));
    return direct;
}

OperatorDecomposition decompose(const MilnorAlgebra& alg) {
    std::size_t mu = alg.mu();
    RankKernelImage rki = rank_kernel_image(alg.mult_f);
    LatticeDims ki = lattice_dims(rki.kernel, rki.image);
    Subspace kci = ki.intersection;
    Subspace B = complement_basis(kci, rki.image);
    Subspace ker_plus_im = rki.kernel.sum(rki.image);
    Subspace A = complement_basis(ker_plus_im, Subspace::full(mu));

    std::size_t nu1 = kci.dim();
    if (B.dim() != rki.rank - nu1)
        throw InternalCheckError("B complement has wrong dimension");
    if (A.dim() != nu1)
        throw InternalCheckError("dim A != dim(Ker cap Im)");
    if (rki.kernel.dim() + B.dim() + A.dim() != mu)
        throw InternalCheckError("Ker + B + A dimensions do not fill the algebra");

    std::vector<RatVector> all = rki.kernel.basis();
    all.insert(all.end(), B.basis().begin(), B.basis().end());
    all.insert(all.end(), A.basis().begin(), A.basis().end());
    if (Subspace::from_spanning(mu, all).dim() != mu)
        throw InternalCheckError("Ker, B, A do not span");
    if (lattice_dims(rki.kernel, B).dim_intersection != 0)
        throw InternalCheckError("Ker and B intersect");

    return OperatorDecomposition{std::move(rki.kernel), std::move(rki.image),
                                 std::move(kci), std::move(B), std::move(A), nu1};
}

std::size_t nu1_invariant(const Germ& g, const LocalQuotientOptions& opts) {
    return decompose(milnor_algebra(g, opts)).nu1;
}

std::size_t bs_exponent(const Germ& g, const LocalQuotientOptions& opts) {
    MilnorAlgebra alg = milnor_algebra(g, opts);
    std::size_t d = alg.mu();
    Monomial unit = Monomial::one(g.arity());
    RatVector v(d, Rational(0));
    v[alg.presentation.index_of(unit)] = 1;

    for (std::size_t k = 1; k <= g.arity(); ++k) {
        v = alg.mult_f.apply(v);
        if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; }))
            return k;
    }
    throw InternalCheckError("power of the germ still outside the gradient ideal "
                             "beyond the arity bound");
}

namespace {

// Strict rational Fourier-Motzkin: each row is (c_1..c_d | c_0) representing
// sum c_k t_k + c_0 > 0. Returns a satisfying t, or nullopt.
std::optional<std::vector<Rational>> solve_strict(std::vector<RatVector> cons,
                                                  std::size_t d) {
    std::vector<std::vector<RatVector>> stages; // constraints seen before eliminating t_k
    for (std::size_t k = d; k-- > 0;) {
        stages.push_back(cons);
        std::vector<RatVector> next;
        std::vector<const RatVector*> pos, neg;
        for (const auto& r : cons) {
            if (r[k] > 0)
                pos.push_back(&r);
            else if (r[k] < 0)
                neg.push_back(&r);
            else
                next.push_back(r);
        }
        for (const auto* p : pos)
            for (const auto* n : neg) {
                // eliminate t_k from the pair; strictness is preserved
                RatVector row(d + 1, Rational(0));
                for (std::size_t j = 0; j <= d; ++j)
                    row[j] = (*p)[j] * -(*n)[k] + (*n)[j] * (*p)[k];
                next.push_back(std::move(row));
            }
        cons = std::move(next);
    }
    for (const auto& r : cons)
        if (!(r[d] > 0)) return std::nullopt;

    // t_0 was eliminated last, so it is pinned first; the stage recorded just
    // before eliminating t_k involves only t_0..t_k
    std::vector<Rational> t(d, Rational(0));
    for (std::size_t k = 0; k < d; ++k) {
        const auto& stage = stages[d - 1 - k];
        bool has_lo = false, has_hi = false;
        Rational lo, hi;
        for (const auto& r : stage) {
            if (r[k] == 0) continue;
            Rational rest = r[d];
            for (std::size_t j = 0; j < d; ++j)
                if (j != k && r[j] != 0) rest += r[j] * t[j];
            Rational bound = -rest / r[k];
            if (r[k] > 0) { // t_k > bound
                if (!has_lo || bound > lo) lo = bound;
                has_lo = true;
            } else { // t_k < bound
                if (!has_hi || bound < hi) hi = bound;
                has_hi = true;
            }
        }
        if (has_lo && has_hi)
            t[k] = (lo + hi) / 2;
        else if (has_lo)
            t[k] = lo + 1;
        else if (has_hi)
            t[k] = hi - 1;
    }
    return t;
}

} // namespace

std::optional<std::vector<Rational>> detect_quasihomogeneous(const Germ& g) {
    std::size_t n = g.arity();
    std::vector<RatVector> rows;
    for (const auto& [m, c] : g.poly().terms()) {
        (void)c;
        RatVector r(n + 1, Rational(0));
        for (std::size_t i = 0; i < n; ++i) r[i] = m.exponent(i);
        r[n] = 1;
        rows.push_back(std::move(r));
    }
    EchelonForm ef = reduced_echelon(std::move(rows));
    for (std::size_t i = 0; i < ef.pivots.size(); ++i)
        if (ef.pivots[i] == n) return std::nullopt; // inconsistent system

    std::vector<bool> is_pivot(n, false);
    for (auto p : ef.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    RatVector w0(n, Rational(0));
    for (std::size_t i = 0; i < ef.pivots.size(); ++i) w0[ef.pivots[i]] = ef.rows[i][n];
    std::vector<RatVector> null_basis;
    for (auto f : free_cols) {
        RatVector v(n, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < ef.pivots.size(); ++i) v[ef.pivots[i]] = -ef.rows[i][f];
        null_basis.push_back(std::move(v));
    }

    std::size_t d = null_basis.size();
    std::vector<Rational> w;
    if (d == 0) {
        w.assign(w0.begin(), w0.end());
        for (const auto& x : w)
            if (!(x > 0)) return std::nullopt;
    } else {
        std::vector<RatVector> cons;
        for (std::size_t j = 0; j < n; ++j) {
            RatVector r(d + 1, Rational(0));
            for (std::size_t k = 0; k < d; ++k) r[k] = null_basis[k][j];
            r[d] = w0[j];
            cons.push_back(std::move(r));
        }
        auto t = solve_strict(std::move(cons), d);
        if (!t) return std::nullopt;
        w.assign(w0.begin(), w0.end());
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < n; ++j) w[j] += (*t)[k] * null_basis[k][j];
    }

    for (const auto& [m, c] : g.poly().terms()) {
        (void)c;
        if (weighted_degree(m, w) != 1)
            throw InternalCheckError("computed weights are not of weighted degree one");
    }
    for (const auto& x : w)
        if (!(x > 0)) throw InternalCheckError("computed weights are not positive");
    return w;
}

std::vector<Rational> qh_spectrum(const Germ& g, const std::vector<Rational>& weights,
                                  const LocalQuotientOptions& opts) {
    if (weights.size() != g.arity()) throw std::invalid_argument("weight arity mismatch");
    for (const auto& x : weights)
        if (!(x > 0)) throw std::invalid_argument("weights must be positive");
    for (const auto& [m, c] : g.poly().terms()) {
        (void)c;
        if (weighted_degree(m, weights) != 1)
            throw std::invalid_argument("germ is not weighted-homogeneous for these weights");
    }

    QuotientPresentation q = local_quotient(jacobian_ideal(g), opts);
    std::vector<Rational> out;
    out.reserve(q.dimension());
    Rational n(static_cast<unsigned long>(g.arity()));
    for (const auto& m : q.basis_monomials()) {
        Rational s(0);
        for (std::size_t i = 0; i < weights.size(); ++i)
            s += (Rational(m.exponent(i)) + 1) * weights[i];
        if (!(s > 0) || !(s < n))
            throw InternalCheckError("spectral value outside (0, arity): " + rat_str(s));
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

MuTauBsReport check_mu_tau_vs_bs(const Germ& g, const LocalQuotientOptions& opts) {
    std::size_t mu = milnor_number(g, opts);
    std::size_t tau = tjurina_number(g, opts);
    std::size_t e = bs_exponent(g, opts);

    MuTauBsReport rep;
    rep.mu = mu;
    rep.tau = tau;
    rep.ebs = e;
    rep.quotient = Rational(static_cast<unsigned long>(mu)) /
                   Rational(static_cast<unsigned long>(tau));
    rep.equality_case = (e == 1);
    rep.varchenko_checked = false;

    if (e == 1) {
        if (mu != tau)
            throw CheckFailedError("exponent 1 requires mu == tau; got mu=" +
                                   std::to_string(mu) + " tau=" + std::to_string(tau));
    } else {
        if (!(mu < e * tau))
            throw CheckFailedError("mu/tau < exponent violated: mu=" + std::to_string(mu) +
                                   " tau=" + std::to_string(tau) +
                                   " exponent=" + std::to_string(e));
    }

    if (auto w = detect_quasihomogeneous(g)) {
        std::vector<Rational> sp = qh_spectrum(g, *w, opts);
        Rational bound_q = Rational(static_cast<unsigned long>(g.arity())) - 2 * sp.front();
        Integer bound = rat_floor(bound_q) + 1;
        if (Integer(static_cast<unsigned long>(e)) > bound)
            throw CheckFailedError("spectral bound on the exponent violated");
        rep.varchenko_checked = true;
    }
    return rep;
}

AnalyzedGerm analyze(const Germ& g, const LocalQuotientOptions& opts) {
    MilnorAlgebra alg = milnor_algebra(g, opts);
    std::size_t mu = alg.mu();

    std::vector<Polynomial> gens = jacobian_ideal(g);
    gens.push_back(g.poly());
    std::size_t tau_direct = local_quotient(gens, opts).dimension();

    OperatorDecomposition dec = decompose(alg);
    std::size_t tau_rank = mu - dec.image.dim();
    if (tau_direct != tau_rank)
        throw InternalCheckError("tjurina number mismatch: quotient route " +
                                 std::to_string(tau_direct) + ", rank route " +
                                 std::to_string(tau_rank));

    Monomial unit = Monomial::one(g.arity());
    RatVector v(mu, Rational(0));
    v[alg.presentation.index_of(unit)] = 1;
    std::size_t e = 0;
    for (std::size_t k = 1; k <= g.arity() && e == 0; ++k) {
        v = alg.mult_f.apply(v);
        if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; })) e = k;
    }
    if (e == 0)
        throw InternalCheckError("power of the germ still outside the gradient ideal "
                                 "beyond the arity bound");

    AnalyzedGerm out{g, std::move(alg), mu, tau_direct, dec.nu1, e, std::move(dec),
                     detect_quasihomogeneous(g)};
    return out;
}

InvariantReport invariant_report(const AnalyzedGerm& a) {
    InvariantReport r;
    r.mu = a.mu;
    r.tau = a.tau;
    r.nu1 = a.nu1;
    r.ebs = a.ebs;
    r.mu_minus_tau = a.mu - a.tau;
    r.quotient_mu_tau = Rational(static_cast<unsigned long>(a.mu)) /
                        Rational(static_cast<unsigned long>(a.tau));
    r.qh_weights = a.qh_weights;
    if (a.qh_weights) {
        std::vector<Rational> sp;
        sp.reserve(a.mu);
        Rational n(static_cast<unsigned long>(a.germ.arity()));
        for (const auto& m : a.algebra.presentation.basis_monomials()) {
            Rational s(0);
            for (std::size_t i = 0; i < a.qh_weights->size(); ++i)
                s += (Rational(m.exponent(i)) + 1) * (*a.qh_weights)[i];
            if (!(s > 0) || !(s < n))
                throw InternalCheckError("spectral value outside (0, arity): " + rat_str(s));
            sp.push_back(std::move(s));
        }
        std::sort(sp.begin(), sp.end());
        r.alpha_min = sp.front();
        r.spectrum = std::move(sp);
    }
    return r;
}

InvariantReport invariant_report(const Germ& g, const LocalQuotientOptions& opts) {
    return invariant_report(analyze(g, opts));
}

} // namespace tjurina
