#include "tjurina/reporting.hpp"

#include "json.hpp"

#include <sstream>

namespace tjurina {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json rat_json(const Rational& r) { return rat_str(r); }

ordered_json rat_list_json(const std::vector<Rational>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& r : v) a.push_back(rat_str(r));
    return a;
}

ordered_json invariant_block(const InvariantReport& r, const std::string& germ_text,
                             const std::vector<std::string>& vars) {
    ordered_json j;
    j["vars"] = vars;
    j["germ"] = germ_text;
    j["mu"] = r.mu;
    j["tau"] = r.tau;
    j["nu1"] = r.nu1;
    j["ebs"] = r.ebs;
    j["mu_minus_tau"] = r.mu_minus_tau;
    j["quotient_mu_tau"] = rat_json(r.quotient_mu_tau);
    j["qh_weights"] = r.qh_weights ? rat_list_json(*r.qh_weights) : ordered_json(nullptr);
    j["spectrum"] = r.spectrum ? rat_list_json(*r.spectrum) : ordered_json(nullptr);
    j["alpha_min"] = r.alpha_min ? rat_json(*r.alpha_min) : ordered_json(nullptr);
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string invariant_report_json(const InvariantReport& r, const std::string& germ_text,
                                  const std::vector<std::string>& vars) {
    return dump(invariant_block(r, germ_text, vars));
}

std::string join_report_json(const JoinReport& r) {
    ordered_json j;
    j["g1"] = invariant_block(r.g1, r.g1_text, r.g1_vars);
    j["g2"] = invariant_block(r.g2, r.g2_text, r.g2_vars);
    j["mu_join"] = r.mu_join;
    j["tau_join"] = r.tau_join_tensor;
    j["tau_join_tensor"] = r.tau_join_tensor;
    j["tau_join_fullring"] =
        r.tau_fullring ? ordered_json(*r.tau_fullring) : ordered_json(nullptr);
    j["fullring_match"] = r.fullring_match;
    j["ebs_join"] = r.ebs_join;
    j["ebs_fullring"] =
        r.ebs_fullring ? ordered_json(*r.ebs_fullring) : ordered_json(nullptr);
    j["dim_U"] = r.dim_U;
    j["dim_U_by_formula"] = r.dim_U_by_formula;
    j["b"] = r.b;
    j["u"] = r.u;
    j["b_minus_u"] = r.b_minus_u;
    j["theorem_residual"] = r.theorem_residual;
    j["bounds_ok"] = r.bounds_ok;
    j["directsum_ok"] = r.directsum_ok;
    j["directsum_subspaces_checked"] = r.directsum_subspaces_checked;
    j["directsum_detail"] = r.directsum_detail;
    j["charqh"] = ordered_json{{"case", r.charqh_case}, {"ok", r.charqh_ok}};
    j["maximaltau"] =
        ordered_json{{"applicable", r.maximaltau_applicable},
                     {"closed_form", r.cor25 ? ordered_json(*r.cor25) : ordered_json(nullptr)},
                     {"ok", r.maximaltau_ok}};
    j["cor25"] = r.cor25 ? ordered_json(*r.cor25) : ordered_json(nullptr);
    j["smallgap"] = ordered_json{
        {"gap", r.gap}, {"case", r.smallgap_case_name}, {"ok", r.smallgap_ok}};
    j["rank_mode"] = to_string(r.rank_mode);
    j["rank_backend"] = r.rank_backend;
    j["primes"] = r.primes;
    j["per_prime_ranks"] = r.per_prime_ranks;
    j["primes_agree"] = r.primes_agree;
    j["complement_seed"] =
        r.complement_seed ? ordered_json(*r.complement_seed) : ordered_json(nullptr);
    j["all_ok"] = r.all_ok();
    return dump(j);
}

std::string family_scan_json(const FamilyScanResult& r) {
    ordered_json j;
    j["n"] = r.n;
    j["max_terms"] = r.max_terms;
    j["expected_mu"] = r.expected_mu;
    ordered_json members = ordered_json::array();
    for (const auto& m : r.members) {
        members.push_back(ordered_json{{"deformation", m.deformation},
                                       {"mu", m.mu},
                                       {"tau", m.tau},
                                       {"quotient", rat_str(m.quotient)}});
    }
    j["members"] = members;
    j["min_tau"] = r.min_tau;
    j["min_tau_deformations"] = r.min_tau_deformations;
    j["tau_min_formula"] = r.tau_min_formula;
    j["formula_attained"] = r.formula_attained;
    return dump(j);
}

std::string family_scan_csv(const FamilyScanResult& r) {
    std::ostringstream out;
    out << to_csv_line({"deformation", "mu", "tau", "quotient"});
    for (const auto& m : r.members)
        out << to_csv_line({m.deformation, std::to_string(m.mu), std::to_string(m.tau),
                            rat_str(m.quotient)});
    out << to_csv_line({"min_tau", std::to_string(r.min_tau),
                        std::to_string(r.tau_min_formula),
                        r.formula_attained ? "attained" : "not-attained"});
    return out.str();
}

QuotientRow quotient_row(const std::string& name, const InvariantReport& r) {
    std::string verdict;
    if (r.ebs == 1)
        verdict = r.mu == r.tau ? "equality-case" : "fail";
    else
        verdict = r.mu < r.ebs * r.tau ? "ok" : "fail";
    return QuotientRow{name, r.mu, r.tau, r.ebs, r.quotient_mu_tau, verdict};
}

std::string quotient_report_csv(const std::vector<QuotientRow>& rows) {
    std::ostringstream out;
    out << to_csv_line({"name", "mu", "tau", "quotient", "ebs", "verdict"});
    for (const auto& r : rows)
        out << to_csv_line({r.name, std::to_string(r.mu), std::to_string(r.tau),
                            rat_str(r.quotient), std::to_string(r.ebs), r.verdict});
    return out.str();
}

bool quotient_rows_ok(const std::vector<QuotientRow>& rows) {
    for (const auto& r : rows)
        if (r.verdict == "fail") return false;
    return true;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string to_csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    out += '\n';
    return out;
}

} // namespace tjurina
