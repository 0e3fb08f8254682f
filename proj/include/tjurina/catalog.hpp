#pragma once

#include "tjurina/invariants.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tjurina {

// One line of a germ file: "name : vars : polynomial" with optional trailing
// ": mu=.. tau=.. nu1=.. ebs=.." expectations.
struct CatalogEntry {
    std::string name;
    std::vector<std::string> vars;
    std::string poly_text;
    std::optional<std::size_t> mu, tau, nu1, ebs;

    Germ to_germ() const;
    bool has_expectations() const { return mu || tau || nu1 || ebs; }
};

// Parses germ-file text: one entry per line, '#' starts a comment, blank
// lines ignored, names unique. ParseError carries the 1-based line number as
// its position.
std::vector<CatalogEntry> parse_germ_entries(const std::string& content);

std::vector<CatalogEntry> load_germ_file(const std::string& path);

const std::string& bundled_catalog_text();
std::vector<CatalogEntry> bundled_catalog();

struct CatalogCheck {
    std::string name;
    InvariantReport report;
    bool ok;            // expectations (when present) all matched
    std::string detail; // mismatches, empty when ok
};

// Computes the invariants of one entry and compares against its expectations.
CatalogCheck check_entry(const CatalogEntry& entry, const LocalQuotientOptions& opts = {});

} // namespace tjurina
