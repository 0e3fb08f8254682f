// Acceptance gate: twelve checks, one PASS/FAIL line each, exit 0 only when
// every line passes. Wall-clock limits are enforced where a check carries one.
//
// The pair catalog below is the reference list the pairwise checks quantify
// over. Pairs up to tensor dimension 300 run in exact mode; the two
// H-factor pairs take the modular routes (dense elimination at 1728,
// matrix-free Krylov at 20736) and are certified by cross-prime agreement.

#include "tjurina/catalog.hpp"
#include "tjurina/family.hpp"
#include "tjurina/join.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

using namespace tjurina;

namespace {

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Gate {
    std::map<std::string, CatalogEntry> entries;
    std::map<std::string, AnalyzedGerm> analyzed;
    std::map<std::string, JoinReport> reports;
    std::vector<std::pair<std::string, std::string>> pairs; // the pair catalog
    bool all_pass = true;

    const AnalyzedGerm& germ(const std::string& name) {
        auto it = analyzed.find(name);
        if (it == analyzed.end())
            it = analyzed.emplace(name, analyze(entries.at(name).to_germ())).first;
        return it->second;
    }

    const JoinReport& pair_report(const std::string& a, const std::string& b) {
        const std::string key = a + "*" + b;
        auto it = reports.find(key);
        if (it == reports.end()) {
            const AnalyzedGerm& g1 = germ(a);
            const AnalyzedGerm& g2 = germ(b);
            JoinOptions opts; // Auto: exact up to dim 300, modular above
            JoinGerm jg = make_join(g1.germ, g2.germ);
            TensorAlgebra T = tensor_algebra(g1, g2, opts);
            it = reports.emplace(key, verify_theorem(T, jg, opts)).first;
        }
        return it->second;
    }

    void line(int id, bool pass, double secs, const std::string& detail) {
        all_pass = all_pass && pass;
        std::printf("%2d %s %6.1fs  %s\n", id, pass ? "PASS" : "FAIL", secs, detail.c_str());
        std::fflush(stdout);
    }

    void note_line(bool pass, double secs, const std::string& detail) {
        all_pass = all_pass && pass;
        std::printf(" + %s %6.1fs  %s\n", pass ? "PASS" : "FAIL", secs, detail.c_str());
        std::fflush(stdout);
    }
};

std::string rat_text(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return rat_str(c);
}

} // namespace

int main() {
    Gate g;
    for (const CatalogEntry& e : bundled_catalog()) g.entries.emplace(e.name, e);

    g.pairs = {
        // weighted-homogeneous on both sides
        {"A2", "E6"}, {"E6", "E12"}, {"D5", "E6"}, {"E12", "D7"}, {"A2", "S1"},
        {"FC", "A2"}, {"P5", "A2"}, {"SG", "E6"}, {"S1", "A1x"}, {"FC", "FC"},
        // one weighted-homogeneous factor
        {"E6", "G"}, {"A2", "G"}, {"S1", "G"}, {"FC", "G"},
        // neither factor weighted-homogeneous
        {"G", "G"}, {"G", "SG"}, {"SG", "SG"}, {"G", "P5"},
        // small-gap positives, two per realizable pattern
        {"A1x", "G"}, {"A1", "SG"},                    // gap 1
        {"A1x", "P5"}, {"A1", "P5"},                   // gap 2, trivial first factor
        {"P5", "A1x"}, {"P5", "A1"},                   // gap 2, trivial second factor
        {"A2x", "G"}, {"A2x", "SG"},                   // gap 2, two-dim first factor
        {"G", "A2x"}, {"SG", "A2x"},                   // gap 2, two-dim second factor
        // modular-route pairs
        {"H", "G"}, {"H", "H"},
    };

    std::printf("acceptance gate: %zu germs, %zu pairs\n", g.entries.size(), g.pairs.size());

    // 1: the pivot curve, full exact pipeline under one second
    {
        auto t0 = Clock::now();
        AnalyzedGerm a = analyze(g.entries.at("G").to_germ());
        double t = secs_since(t0);
        bool pass = a.mu == 12 && a.tau == 11 && a.nu1 == 1 && a.ebs == 2 && t < 1.0;
        g.line(1, pass, t,
               "germ G exact: mu=" + std::to_string(a.mu) + " tau=" + std::to_string(a.tau) +
                   " nu1=" + std::to_string(a.nu1) + " ebs=" + std::to_string(a.ebs) +
                   "  [limit 1s]");
    }

    // 2: the 144-dim double join, tensor route against the direct route
    {
        auto t0 = Clock::now();
        const RatMatrix& m = g.germ("G").algebra.mult_f;
        RatMatrix F = kronecker_sum(m, m);
        RankKernelImage rki = rank_kernel_image(F);
        std::size_t tau_tensor = 144 - rki.rank;
        std::size_t nu1_tensor = lattice_dims(rki.kernel, rki.image).dim_intersection;
        const AnalyzedGerm& aH = g.germ("H"); // four-variable direct route
        double t = secs_since(t0);
        bool pass = tau_tensor == 122 && nu1_tensor == 21 && aH.tau == 122 && aH.nu1 == 21 &&
                    t < 30.0;
        g.line(2, pass, t,
               "H via 144-dim tensor operator: tau=" + std::to_string(tau_tensor) +
                   " nu1=" + std::to_string(nu1_tensor) + ", direct 4-variable route: tau=" +
                   std::to_string(aH.tau) + " nu1=" + std::to_string(aH.nu1) +
                   "  [limit 30s]");
    }

    // 3: the 1728-dim triple join two ways: closed form and modular rank
    {
        auto t0 = Clock::now();
        const AnalyzedGerm& aH = g.germ("H");
        const AnalyzedGerm& aG = g.germ("G");
        std::size_t closed = aH.tau * aG.tau + aH.nu1 * aG.nu1;
        const JoinReport& r = g.pair_report("H", "G");
        bool agree = r.primes_agree && r.primes.size() == 3;
        for (std::size_t pr : r.per_prime_ranks) agree = agree && pr == r.per_prime_ranks[0];
        double t = secs_since(t0);
        bool pass = closed == 1363 && r.tau_join_tensor == 1363 &&
                    r.rank_mode == RankMode::Modular && agree && r.all_ok() && t < 300.0;
        g.line(3, pass, t,
               "triple join: closed form " + std::to_string(aH.tau) + "*" +
                   std::to_string(aG.tau) + " + " + std::to_string(aH.nu1) + "*" +
                   std::to_string(aG.nu1) + " = " + std::to_string(closed) + ", " +
                   r.rank_backend + " on 1728 dims = " + std::to_string(r.tau_join_tensor) +
                   " (3 primes agree)  [limit 300s]");
    }

    // 4: identity residual zero, exact mode, across the category grid
    {
        auto t0 = Clock::now();
        std::size_t exact_zero = 0;
        std::set<std::string> tags;
        bool pass = true;
        const std::size_t exact_cap = JoinOptions{}.exact_dim_cap;
        for (const auto& [a, b] : g.pairs) {
            if (g.germ(a).mu * g.germ(b).mu > exact_cap) continue; // modular route
            const JoinReport& r = g.pair_report(a, b);
            if (r.rank_mode != RankMode::Exact) continue;
            if (r.theorem_residual != 0) pass = false;
            ++exact_zero;
            bool qh1 = r.g1.qh_weights.has_value(), qh2 = r.g2.qh_weights.has_value();
            tags.insert(qh1 && qh2 ? "qh.qh" : (qh1 || qh2 ? "qh.non" : "non.non"));
            std::size_t n1 = r.g1_vars.size(), n2 = r.g2_vars.size();
            if (n1 == 2 && n2 == 2) tags.insert("curve.curve");
            if ((n1 == 2 && n2 == 3) || (n1 == 3 && n2 == 2)) tags.insert("curve.surface");
        }
        for (const char* need : {"qh.qh", "qh.non", "non.non", "curve.curve", "curve.surface"})
            pass = pass && tags.count(need) == 1;
        pass = pass && exact_zero >= 12;
        g.line(4, pass, secs_since(t0),
               "residual 0 in exact mode on " + std::to_string(exact_zero) +
                   " pairs covering " + std::to_string(tags.size()) + "/5 category tags");
    }

    // 5: two-sided bounds on every pair, including the modular-route ones
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::size_t checked = 0;
        for (const auto& [a, b] : g.pairs) {
            const JoinReport& r = g.pair_report(a, b); // (H,H) lands here
            pass = pass && r.bounds_ok && r.primes_agree;
            ++checked;
        }
        const JoinReport& hh = g.pair_report("H", "H");
        pass = pass && hh.tau_join_tensor == 15326;
        g.line(5, pass, secs_since(t0),
               "tau1*tau2 <= tau <= tau1*tau2 + (mu1-tau1)(mu2-tau2) on all " +
                   std::to_string(checked) + " pairs; largest pair (20736 dims, " +
                   hh.rank_backend + ") tau=" + std::to_string(hh.tau_join_tensor));
    }

    // 6: the combined-ring oracle agrees wherever it is within reach
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::size_t checked = 0;
        JoinOptions opts;
        opts.fullring_oracle = true;
        for (const auto& [a, b] : g.pairs) {
            const AnalyzedGerm& g1 = g.germ(a);
            const AnalyzedGerm& g2 = g.germ(b);
            if (g1.germ.arity() + g2.germ.arity() > opts.fullring_arity_cap) continue;
            JoinGerm jg = make_join(g1.germ, g2.germ);
            TensorAlgebra T = tensor_algebra(g1, g2, opts);
            JoinReport r = verify_theorem(T, jg, opts);
            pass = pass && r.tau_fullring && *r.tau_fullring == r.tau_join_tensor &&
                   r.fullring_match;
            ++checked;
        }
        pass = pass && checked > 0;
        g.line(6, pass, secs_since(t0),
               "full-ring oracle = tensor route on all " + std::to_string(checked) +
                   " pairs with combined arity <= 4");
    }

    // 7: b - u stays put under complement re-choice
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::size_t qualifying = 0;
        std::string detail;
        for (const auto& [a, b] : g.pairs) {
            const AnalyzedGerm& g1 = g.germ(a);
            const AnalyzedGerm& g2 = g.germ(b);
            bool bdry1 = g1.mu - g1.tau - g1.nu1 > 0;
            bool bdry2 = g2.mu - g2.tau - g2.nu1 > 0;
            if (!(bdry1 && bdry2)) continue; // B1 (x) B2 is empty
            ++qualifying;
            BU base = compute_b_u_structured(g1, g2, std::nullopt);
            long long bu0 = static_cast<long long>(base.b) - static_cast<long long>(base.u);
            bool stable = true;
            for (std::uint64_t seed = 1; seed <= 20; ++seed) {
                BU s = compute_b_u_structured(g1, g2, seed);
                stable = stable &&
                         static_cast<long long>(s.b) - static_cast<long long>(s.u) == bu0;
            }
            pass = pass && stable;
            detail += (detail.empty() ? "" : "; ") + (a + "*" + b) + ": b=" +
                      std::to_string(base.b) + " u=" + std::to_string(base.u) +
                      " b-u=" + std::to_string(bu0) +
                      (stable ? " across 20 seeds" : " NOT invariant");
        }
        pass = pass && qualifying > 0;
        g.line(7, pass, secs_since(t0), "complement re-choice: " + detail);
    }

    // 8: nilpotency exponent suite over every catalogued germ
    {
        auto t0 = Clock::now();
        bool pass = true;
        for (const auto& [name, entry] : g.entries) {
            const AnalyzedGerm& a = g.germ(name);
            bool ok = a.ebs >= 1 && a.ebs <= a.germ.arity() && (a.ebs == 1) == (a.mu == a.tau);
            if (a.ebs >= 2) {
                Rational q(static_cast<unsigned long>(a.mu), static_cast<unsigned long>(a.tau));
                q.canonicalize();
                ok = ok && q < Rational(static_cast<unsigned long>(a.ebs));
            }
            pass = pass && ok;
        }
        g.line(8, pass, secs_since(t0),
               "all " + std::to_string(g.entries.size()) +
                   " germs: exponent <= arity, =1 iff mu=tau, mu/tau < exponent when >= 2");
    }

    // 9: closed form tau1*tau2 + nu1*nu1' on every pair with an exponent-2 curve factor
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::size_t checked = 0;
        for (const auto& [a, b] : g.pairs) {
            const AnalyzedGerm& g1 = g.germ(a);
            const AnalyzedGerm& g2 = g.germ(b);
            bool curve2 = (g1.germ.arity() == 2 && g1.ebs == 2) ||
                          (g2.germ.arity() == 2 && g2.ebs == 2);
            if (!curve2) continue;
            const JoinReport& r = g.pair_report(a, b);
            pass = pass && r.tau_join_tensor == g1.tau * g2.tau + g1.nu1 * g2.nu1;
            ++checked;
        }
        pass = pass && checked > 0;
        g.line(9, pass, secs_since(t0),
               "closed form exact on all " + std::to_string(checked) +
                   " pairs with an exponent-2 curve factor");
    }

    // 10: the small-gap classifier against directly computed gaps
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::size_t small = 0;
        for (const auto& [a, b] : g.pairs) {
            const JoinReport& r = g.pair_report(a, b);
            if (r.gap > 2) continue;
            pass = pass && r.smallgap_ok;
            ++small;
        }
        // two computed positives per realizable pattern
        const std::vector<std::tuple<std::string, std::string, std::string, long long>> pos = {
            {"A1x", "G", "1", 1},  {"A1", "SG", "1", 1},
            {"A1x", "P5", "2a", 2}, {"A1", "P5", "2a", 2},
            {"P5", "A1x", "2b", 2}, {"P5", "A1", "2b", 2},
            {"A2x", "G", "2d", 2},  {"A2x", "SG", "2d", 2},
            {"G", "A2x", "2e", 2},  {"SG", "A2x", "2e", 2},
        };
        for (const auto& [a, b, want_case, want_gap] : pos) {
            const JoinReport& r = g.pair_report(a, b);
            pass = pass && r.smallgap_case_name == want_case && r.gap == want_gap &&
                   r.smallgap_ok;
        }
        // the remaining pattern needs a factor with mu=2, tau=1; tau=1 forces
        // the maximal ideal into (f)+J_f, hence mu=1, so no germ realizes it.
        // The classifier is checked on the pattern's defining tuple instead.
        bool c2c = small_gap_case(2, 1, 2, 1) == SmallGapCase::C2c &&
                   small_gap_value(SmallGapCase::C2c) == 2;
        pass = pass && c2c;
        g.line(10, pass, secs_since(t0),
               "classifier consistent on " + std::to_string(small) +
                   " gap<=2 pairs, 10 computed positives (2 per realizable pattern), "
                   "pattern 2c on its defining tuple (no germ has tau=1 < mu)");
    }

    // 11: the deformation scan lands on the pivot curve
    {
        auto t0 = Clock::now();
        FamilyScanResult f = family_scan(4, 1);
        double t = secs_since(t0);
        bool attained = false;
        for (const auto& d : f.min_tau_deformations) attained = attained || d == "x^3*y^2";
        bool pass = f.expected_mu == 12 && f.min_tau == 11 && f.tau_min_formula == 11 &&
                    f.formula_attained && attained && t < 60.0;
        g.line(11, pass, t,
               "scan n=4, 1 term: min tau = " + std::to_string(f.min_tau) +
                   " = 3n^2/4 - 1, attained at x^3*y^2  [limit 60s]");
    }

    // 12: strict quotient ceilings by pair profile
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::string detail;
        const std::vector<std::tuple<QuotientProfile, std::string, std::string>> prof = {
            {QuotientProfile::CurveQh, "G", "A2"},      {QuotientProfile::CurveQh, "G", "E6"},
            {QuotientProfile::CurveQh, "P5", "A2"},     {QuotientProfile::CurveQh, "A2", "E6"},
            {QuotientProfile::SurfaceQh, "SG", "A2"},   {QuotientProfile::SurfaceQh, "SG", "E6"},
            {QuotientProfile::SurfaceQh, "S1", "A1x"},  {QuotientProfile::SurfaceCurve, "SG", "G"},
            {QuotientProfile::SurfaceCurve, "FC", "A2"}, {QuotientProfile::SurfaceCurve, "FC", "G"},
        };
        std::map<QuotientProfile, Rational> worst;
        for (const auto& [p, a, b] : prof) {
            QuotientBoundReport r =
                check_quotient_bounds(g.germ(a).germ, g.germ(b).germ, p);
            pass = pass && r.ok;
            auto it = worst.find(p);
            if (it == worst.end() || it->second < r.quotient) worst[p] = r.quotient;
        }
        for (const auto& [p, q] : worst)
            detail += to_string(p) + " worst " + rat_text(q) + "; ";
        g.line(12, pass, secs_since(t0),
               detail + "all strict (10 pairs across the three profiles)");
    }

    // supplement: the scan quotient climbs toward 4/3 with n (the limit claim
    // itself is out of desk reach; this monotone approach is the checkable part)
    {
        auto t0 = Clock::now();
        bool pass = true;
        Rational prev(0);
        std::string seq;
        for (std::size_t n = 4; n <= 8; ++n) {
            FamilyScanResult f = family_scan(n, 1);
            Rational q(static_cast<unsigned long>(f.expected_mu),
                       static_cast<unsigned long>(f.min_tau));
            q.canonicalize();
            pass = pass && prev < q && q < Rational(4, 3);
            prev = q;
            seq += (seq.empty() ? "" : " < ") + rat_text(q);
        }
        g.note_line(pass, secs_since(t0),
                    "scan quotient rises toward 4/3: " + seq + " < 4/3");
    }

    std::printf("RESULT: %s\n", g.all_pass ? "PASS" : "FAIL");
    return g.all_pass ? 0 : 1;
}
