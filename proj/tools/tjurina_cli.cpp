#include "tjurina/catalog.hpp"
#include "tjurina/errors.hpp"
#include "tjurina/family.hpp"
#include "tjurina/reporting.hpp"

#include "CLI11.hpp"

#include <cctype>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace tjurina;

struct GlobalFlags {
    std::string vars_csv;
    std::string mode = "auto";
    std::size_t primes = 3;
    std::optional<std::uint64_t> seed;
    int degree_cap = 128;
    bool json = false, csv = false;
    bool oracle = false;
    std::size_t pair_dim_cap = 1500;
};

JoinOptions join_options(const GlobalFlags& g) {
    JoinOptions o;
    if (g.mode == "exact")
        o.mode = RankMode::Exact;
    else if (g.mode == "modular")
        o.mode = RankMode::Modular;
    else
        o.mode = RankMode::Auto;
    o.prime_count = g.primes;
    if (g.seed) {
        o.prime_seed = *g.seed;
        o.complement_seed = *g.seed;
    }
    o.fullring_oracle = g.oracle;
    o.lq.degree_cap = g.degree_cap;
    return o;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// Inline text when --vars is given, bundled catalog name otherwise.
Germ resolve_germ(const std::string& text, const GlobalFlags& g) {
    if (!g.vars_csv.empty()) return Germ::parse(text, make_vars(split_csv(g.vars_csv)));
    for (const CatalogEntry& e : bundled_catalog())
        if (e.name == text) return e.to_germ();
    throw std::invalid_argument("'" + text +
                                "' is not a bundled catalog name; pass --vars for inline text");
}

int run_invariants(const std::string& germ_text, const GlobalFlags& g) {
    Germ germ = resolve_germ(germ_text, g);
    LocalQuotientOptions lq{g.degree_cap};
    InvariantReport r = invariant_report(germ, lq);
    std::cout << invariant_report_json(r, germ.poly().to_string(), germ.vars()->names());
    return 0;
}

int run_join(const std::string& t1, const std::string& t2, const GlobalFlags& g) {
    Germ a = resolve_germ(t1, g);
    Germ b = resolve_germ(t2, g);
    JoinReport r = verify_theorem(a, b, join_options(g));
    std::cout << join_report_json(r);
    if (!r.all_ok()) {
        std::cerr << "error: join verification failed"
                  << (r.directsum_detail.empty() ? "" : ": " + r.directsum_detail) << "\n";
        return 4;
    }
    return 0;
}

int run_verify_catalog(const std::string& path, const GlobalFlags& g) {
    std::vector<CatalogEntry> entries =
        path.empty() ? bundled_catalog() : load_germ_file(path);
    JoinOptions jo = join_options(g);
    LocalQuotientOptions lq{g.degree_cap};

    bool all_ok = true;
    std::cout << to_csv_line({"kind", "name", "status", "detail", "mu", "tau", "nu1", "ebs",
                              "tau_join", "residual", "rank_mode"});

    std::vector<AnalyzedGerm> analyzed;
    analyzed.reserve(entries.size());
    for (const CatalogEntry& e : entries) {
        AnalyzedGerm a = analyze(e.to_germ(), lq);
        CatalogCheck c = check_entry(e, lq);
        all_ok = all_ok && c.ok;
        std::cout << to_csv_line({"invariant", e.name, c.ok ? "ok" : "fail", c.detail,
                                  std::to_string(c.report.mu), std::to_string(c.report.tau),
                                  std::to_string(c.report.nu1), std::to_string(c.report.ebs),
                                  "", "", ""});
        analyzed.push_back(std::move(a));
    }

    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j2 = i; j2 < entries.size(); ++j2) {
            const std::string pair_name = entries[i].name + "*" + entries[j2].name;
            const std::size_t dim = analyzed[i].mu * analyzed[j2].mu;
            if (dim > g.pair_dim_cap) {
                std::cout << to_csv_line({"join", pair_name, "skipped",
                                          "tensor dimension " + std::to_string(dim) +
                                              " exceeds cap " +
                                              std::to_string(g.pair_dim_cap),
                                          "", "", "", "", "", "", ""});
                continue;
            }
            JoinGerm jg = make_join(analyzed[i].germ, analyzed[j2].germ);
            TensorAlgebra T = tensor_algebra(analyzed[i], analyzed[j2], jo);
            JoinReport r = verify_theorem(T, jg, jo);
            const bool ok = r.all_ok();
            all_ok = all_ok && ok;
            std::cout << to_csv_line({"join", pair_name, ok ? "ok" : "fail",
                                      r.directsum_detail, "", "", "", "",
                                      std::to_string(r.tau_join_tensor),
                                      std::to_string(r.theorem_residual),
                                      to_string(r.rank_mode)});
        }
    }
    return all_ok ? 0 : 4;
}

int run_family_scan(std::size_t n, std::size_t k, const GlobalFlags& g) {
    FamilyScanResult r = family_scan(n, k, LocalQuotientOptions{g.degree_cap});
    std::cout << (g.json ? family_scan_json(r) : family_scan_csv(r));
    return 0;
}

int run_quotient_report(const std::string& path, const GlobalFlags& g) {
    std::vector<CatalogEntry> entries =
        path.empty() ? bundled_catalog() : load_germ_file(path);
    LocalQuotientOptions lq{g.degree_cap};
    std::vector<QuotientRow> rows;
    rows.reserve(entries.size());
    for (const CatalogEntry& e : entries)
        rows.push_back(quotient_row(e.name, invariant_report(e.to_germ(), lq)));
    std::cout << quotient_report_csv(rows);
    return quotient_rows_ok(rows) ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Milnor/Tjurina invariants of isolated hypersurface germs and their joins"};
    app.require_subcommand(1);
    GlobalFlags g;

    app.add_option("--vars", g.vars_csv, "comma-separated variable names for inline germs");
    app.add_option("--mode", g.mode, "rank computation: auto|exact|modular")
        ->check(CLI::IsMember({"auto", "exact", "modular"}));
    app.add_option("--primes", g.primes, "number of primes for modular rank");
    std::uint64_t seed_value = 0;
    CLI::Option* seed_opt =
        app.add_option("--seed", seed_value, "seed for primes and complement re-choice");
    app.add_option("--max-degree-cap", g.degree_cap,
                   "truncation-degree ceiling for quotient computations");
    app.add_flag("--json", g.json, "JSON output where the verb supports both");
    app.add_flag("--csv", g.csv, "CSV output where the verb supports both");
    app.add_flag("--oracle", g.oracle, "also run the full-ring route on joins");
    app.add_option("--pair-dim-cap", g.pair_dim_cap,
                   "verify-catalog: skip pairs with larger tensor dimension");

    std::string inv_germ;
    CLI::App* inv = app.add_subcommand("invariants", "invariants of one germ (JSON)");
    inv->fallthrough();
    inv->add_option("germ", inv_germ, "catalog name or inline polynomial")->required();

    std::string join_a, join_b;
    CLI::App* join = app.add_subcommand("join", "verify the join identity on a pair (JSON)");
    join->fallthrough();
    join->add_option("first", join_a, "catalog name or inline polynomial")->required();
    join->add_option("second", join_b, "catalog name or inline polynomial")->required();

    std::string catalog_path;
    CLI::App* vc = app.add_subcommand("verify-catalog",
                                      "check every invariant and pairwise join (CSV)");
    vc->fallthrough();
    vc->add_option("path", catalog_path, "germ file; bundled catalog when omitted");

    std::size_t fam_n = 0, fam_k = 1;
    CLI::App* fam = app.add_subcommand("family-scan",
                                       "tau across deformations of y^n - x^(n+1) (CSV)");
    fam->fallthrough();
    fam->add_option("--n", fam_n, "principal-part parameter, 3..8")->required();
    fam->add_option("--max-terms", fam_k, "deformation monomial budget, 1 or 2");

    std::string quot_path;
    CLI::App* quot = app.add_subcommand("quotient-report",
                                        "per-germ mu/tau vs Briancon-Skoda check (CSV)");
    quot->fallthrough();
    quot->add_option("path", quot_path, "germ file; bundled catalog when omitted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (*seed_opt) g.seed = seed_value;

    try {
        if (*inv) return run_invariants(inv_germ, g);
        if (*join) return run_join(join_a, join_b, g);
        if (*vc) return run_verify_catalog(catalog_path, g);
        if (*fam) return run_family_scan(fam_n, fam_k, g);
        if (*quot) return run_quotient_report(quot_path, g);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NonIsolatedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalCheckError& e) {
        std::cerr << "internal alarm: " << e.what() << "\n";
        return 3;
    } catch (const CheckFailedError& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 4;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 5;
    } catch (const BadPrimeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
