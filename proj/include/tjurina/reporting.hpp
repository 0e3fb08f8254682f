#pragma once

#include "tjurina/catalog.hpp"
#include "tjurina/family.hpp"
#include "tjurina/join.hpp"

#include <string>
#include <vector>

namespace tjurina {

// All emitters produce byte-stable output for identical inputs: JSON with
// 2-space indentation and fixed key order, CSV with a header line. Rationals
// serialize as "p/q" in lowest terms (or "p" for integers).

std::string invariant_report_json(const InvariantReport& r, const std::string& germ_text,
                                  const std::vector<std::string>& vars);

std::string join_report_json(const JoinReport& r);

std::string family_scan_json(const FamilyScanResult& r);
std::string family_scan_csv(const FamilyScanResult& r);

struct QuotientRow {
    std::string name;
    std::size_t mu, tau, ebs;
    Rational quotient;
    std::string verdict; // ok | equality-case | fail
};
QuotientRow quotient_row(const std::string& name, const InvariantReport& r);
std::string quotient_report_csv(const std::vector<QuotientRow>& rows);
bool quotient_rows_ok(const std::vector<QuotientRow>& rows);

std::string csv_escape(const std::string& field);
std::string to_csv_line(const std::vector<std::string>& fields);

} // namespace tjurina
