#include "tjurina/catalog.hpp"

#include "tjurina/errors.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace tjurina {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::size_t parse_count(const std::string& text, std::size_t line_no) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("line " + std::to_string(line_no) + ": bad expectation value '" +
                             text + "'",
                         line_no);
    return static_cast<std::size_t>(std::stoull(text));
}

} // namespace

Germ CatalogEntry::to_germ() const { return Germ::parse(poly_text, make_vars(vars)); }

std::vector<CatalogEntry> parse_germ_entries(const std::string& content) {
    std::vector<CatalogEntry> entries;
    std::unordered_set<std::string> seen;
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::vector<std::string> fields = split(line, ':');
        if (fields.size() < 3 || fields.size() > 4)
            throw ParseError("line " + std::to_string(line_no) +
                                 ": expected 'name : vars : polynomial [: expectations]'",
                             line_no);

        CatalogEntry e;
        e.name = trim(fields[0]);
        if (e.name.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty name", line_no);
        if (!seen.insert(e.name).second)
            throw ParseError("line " + std::to_string(line_no) + ": duplicate name '" +
                                 e.name + "'",
                             line_no);

        for (const std::string& v : split(fields[1], ',')) {
            std::string name = trim(v);
            if (name.empty())
                throw ParseError("line " + std::to_string(line_no) + ": empty variable name",
                                 line_no);
            e.vars.push_back(std::move(name));
        }

        e.poly_text = trim(fields[2]);
        if (e.poly_text.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty polynomial",
                             line_no);

        if (fields.size() == 4) {
            std::istringstream toks(fields[3]);
            std::string tok;
            while (toks >> tok) {
                std::size_t eq = tok.find('=');
                if (eq == std::string::npos)
                    throw ParseError("line " + std::to_string(line_no) +
                                         ": expectation token '" + tok + "' lacks '='",
                                     line_no);
                std::string key = tok.substr(0, eq);
                std::size_t val = parse_count(tok.substr(eq + 1), line_no);
                if (key == "mu")
                    e.mu = val;
                else if (key == "tau")
                    e.tau = val;
                else if (key == "nu1")
                    e.nu1 = val;
                else if (key == "ebs")
                    e.ebs = val;
                else
                    throw ParseError("line " + std::to_string(line_no) +
                                         ": unknown expectation key '" + key + "'",
                                     line_no);
            }
        }

        // surface parse problems here, with the line number attached
        try {
            e.to_germ();
        } catch (const ParseError& pe) {
            throw ParseError("line " + std::to_string(line_no) + ", germ '" + e.name +
                                 "': " + pe.what(),
                             line_no);
        } catch (const std::invalid_argument& ia) {
            throw ParseError("line " + std::to_string(line_no) + ", germ '" + e.name +
                                 "': " + ia.what(),
                             line_no);
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<CatalogEntry> load_germ_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open germ file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_germ_entries(buf.str());
}

const std::string& bundled_catalog_text() {
    static const std::string text = R"(# Curated germ collection. Format per line:
#   name : variables : polynomial [: mu=.. tau=.. nu1=.. ebs=..]
# Expectations, when present, are verified exactly by verify-catalog.

A1x : x     : x^2             : mu=1 tau=1 nu1=0 ebs=1
A2x : x     : x^3             : mu=2 tau=2 nu1=0 ebs=1
A1  : x,y   : x^2+y^2         : mu=1 tau=1 nu1=0 ebs=1
A2  : x,y   : x^2+y^3         : mu=2 tau=2 nu1=0 ebs=1
E6  : x,y   : x^3+y^4         : mu=6 tau=6 nu1=0 ebs=1
E12 : x,y   : x^3+y^7         : mu=12 tau=12 nu1=0 ebs=1
D5  : x,y   : x^2*y+y^4       : mu=5 tau=5 nu1=0 ebs=1
D6  : x,y   : x^2*y+y^5       : mu=6 tau=6 nu1=0 ebs=1
D7  : x,y   : x^2*y+y^6       : mu=7 tau=7 nu1=0 ebs=1
D8  : x,y   : x^2*y+y^7       : mu=8 tau=8 nu1=0 ebs=1
G   : x,y   : y^4-x^5+x^3*y^2 : mu=12 tau=11 nu1=1 ebs=2
S1  : x,y,z : x^2+y^2+z^2     : mu=1 tau=1 nu1=0 ebs=1
FC  : x,y,z : x^3+y^3+z^3     : mu=8 tau=8 nu1=0 ebs=1
SG  : x,y,z : y^4-x^5+x^3*y^2+z^2 : mu=12 tau=11 nu1=1 ebs=2
P5  : x,y : y^5-x^6+x^3*y^3 : mu=20 tau=18 nu1=2 ebs=2
H   : x,y,u,v : y^4-x^5+x^3*y^2+v^4-u^5+u^3*v^2 : mu=144 tau=122 nu1=21 ebs=3
)";
    return text;
}

std::vector<CatalogEntry> bundled_catalog() { return parse_germ_entries(bundled_catalog_text()); }

CatalogCheck check_entry(const CatalogEntry& entry, const LocalQuotientOptions& opts) {
    InvariantReport r = invariant_report(entry.to_germ(), opts);
    std::ostringstream bad;
    auto expect = [&](const char* what, std::optional<std::size_t> want, std::size_t got) {
        if (want && *want != got) bad << what << "=" << got << " expected " << *want << "; ";
    };
    expect("mu", entry.mu, r.mu);
    expect("tau", entry.tau, r.tau);
    expect("nu1", entry.nu1, r.nu1);
    expect("ebs", entry.ebs, r.ebs);
    std::string detail = bad.str();
    return CatalogCheck{entry.name, std::move(r), detail.empty(), std::move(detail)};
}

} // namespace tjurina
