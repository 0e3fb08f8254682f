#include "tjurina/polyring.hpp"

#include "tjurina/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace tjurina {

VariableSet::VariableSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw std::invalid_argument("variable set must be nonempty");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw std::invalid_argument("empty variable name");
        if (!(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
            throw std::invalid_argument("bad variable name: " + n);
        for (char c : n)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                throw std::invalid_argument("bad variable name: " + n);
        if (!seen.insert(n).second)
            throw std::invalid_argument("duplicate variable name: " + n);
    }
}

std::optional<std::size_t> VariableSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

VarsPtr make_vars(std::vector<std::string> names) {
    return std::make_shared<const VariableSet>(std::move(names));
}

Monomial::Monomial(std::vector<int> exponents) : e_(std::move(exponents)) {
    for (int x : e_)
        if (x < 0) throw std::invalid_argument("negative exponent");
}

int Monomial::total_degree() const noexcept {
    int d = 0;
    for (int x : e_) d += x;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    std::vector<int> r(e_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.e_.at(i);
    return Monomial(std::move(r));
}

bool Monomial::divides(const Monomial& o) const {
    if (e_.size() != o.e_.size()) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Monomial Monomial::divided_by(const Monomial& d) const {
    std::vector<int> r(e_);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] -= d.e_.at(i);
        if (r[i] < 0) throw std::invalid_argument("monomial division with remainder");
    }
    return Monomial(std::move(r));
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    std::vector<int> r(a.e_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(r[i], b.e_.at(i));
    return Monomial(std::move(r));
}

bool Monomial::coprime_with(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > 0 && o.e_.at(i) > 0) return false;
    return true;
}

bool DegRevLex::operator()(const Monomial& a, const Monomial& b) const {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    const auto& ea = a.exponents();
    const auto& eb = b.exponents();
    for (std::size_t i = ea.size(); i-- > 0;)
        if (ea[i] != eb[i]) return ea[i] > eb[i];
    return false;
}

Rational weighted_degree(const Monomial& m, const std::vector<Rational>& weights) {
    if (weights.size() != m.arity())
        throw std::invalid_argument("weight vector arity mismatch");
    Rational d = 0;
    for (std::size_t i = 0; i < weights.size(); ++i)
        d += weights[i] * m.exponent(i);
    return d;
}

Polynomial::Polynomial(VarsPtr vars) : vars_(std::move(vars)) {
    if (!vars_) throw std::invalid_argument("null variable set");
}

Polynomial Polynomial::constant(VarsPtr vars, const Rational& c) {
    Polynomial p(std::move(vars));
    if (c != 0) p.terms_.emplace(Monomial::one(p.vars_->arity()), c);
    return p;
}

Polynomial Polynomial::term(VarsPtr vars, const Monomial& m, const Rational& c) {
    Polynomial p(std::move(vars));
    if (m.arity() != p.vars_->arity())
        throw std::invalid_argument("monomial arity does not match ring");
    if (c != 0) p.terms_.emplace(m, c);
    return p;
}

Polynomial Polynomial::variable(VarsPtr vars, std::size_t index) {
    Polynomial p(std::move(vars));
    if (index >= p.vars_->arity()) throw std::invalid_argument("variable index out of range");
    std::vector<int> e(p.vars_->arity(), 0);
    e[index] = 1;
    p.terms_.emplace(Monomial(std::move(e)), Rational(1));
    return p;
}

std::size_t Polynomial::arity() const noexcept { return vars_->arity(); }

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.total_degree();
}

int Polynomial::order_at_origin() const {
    if (terms_.empty()) return -1;
    return terms_.begin()->first.total_degree();
}

const Monomial& Polynomial::leading_monomial() const {
    if (terms_.empty()) throw std::logic_error("leading monomial of zero");
    return terms_.rbegin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
    if (terms_.empty()) throw std::logic_error("leading coefficient of zero");
    return terms_.rbegin()->second;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::check_same_ring(const Polynomial& o) const {
    if (vars_ != o.vars_ && !(*vars_ == *o.vars_))
        throw std::invalid_argument("mixed variable sets");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_same_ring(o);
    Polynomial r(*this);
    for (const auto& [m, c] : o.terms_) {
        auto [it, inserted] = r.terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check_same_ring(o);
    Polynomial r(*this);
    for (const auto& [m, c] : o.terms_) {
        auto [it, inserted] = r.terms_.try_emplace(m, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_same_ring(o);
    Polynomial r(vars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m = ma * mb;
            Rational c = ca * cb;
            auto [it, inserted] = r.terms_.try_emplace(m, c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(vars_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    check_same_ring(o);
    return terms_ == o.terms_;
}

void Polynomial::add_scaled(const Polynomial& p, const Rational& c, const Monomial& shift,
                            std::optional<int> drop_from_degree) {
    check_same_ring(p);
    if (c == 0) return;
    for (const auto& [m, v] : p.terms_) {
        Monomial t = m * shift;
        if (drop_from_degree && t.total_degree() >= *drop_from_degree) continue;
        auto [it, inserted] = terms_.try_emplace(t, c * v);
        if (!inserted) {
            it->second += c * v;
            if (it->second == 0) terms_.erase(it);
        }
    }
}

void Polynomial::set_coefficient(const Monomial& m, const Rational& c) {
    if (m.arity() != vars_->arity())
        throw std::invalid_argument("monomial arity does not match ring");
    if (c == 0)
        terms_.erase(m);
    else
        terms_[m] = c;
}

Polynomial Polynomial::truncated(int bound) const {
    Polynomial r(vars_);
    for (const auto& [m, c] : terms_) {
        if (m.total_degree() >= bound) break; // ascending degree order
        r.terms_.emplace(m, c);
    }
    return r;
}

namespace {

std::string monomial_str(const Monomial& m, const VariableSet& vars) {
    std::string s;
    for (std::size_t i = 0; i < m.arity(); ++i) {
        int e = m.exponent(i);
        if (e == 0) continue;
        if (!s.empty()) s += "*";
        s += vars.name(i);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

} // namespace

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rational& c = it->second;
        bool negative = c < 0;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        Rational a = negative ? Rational(-c) : c;
        std::string ms = monomial_str(it->first, *vars_);
        if (ms.empty()) {
            out += rat_str(a);
        } else if (a == 1) {
            out += ms;
        } else {
            out += rat_str(a) + "*" + ms;
        }
    }
    return out;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var_index) {
    if (var_index >= p.arity()) throw std::invalid_argument("variable index out of range");
    Polynomial r(p.vars());
    for (const auto& [m, c] : p.terms()) {
        int e = m.exponent(var_index);
        if (e == 0) continue;
        std::vector<int> ex = m.exponents();
        ex[var_index] -= 1;
        r.set_coefficient(Monomial(std::move(ex)), c * e);
    }
    return r;
}

std::vector<Polynomial> partial_derivatives(const Polynomial& p) {
    std::vector<Polynomial> out;
    out.reserve(p.arity());
    for (std::size_t i = 0; i < p.arity(); ++i) out.push_back(partial_derivative(p, i));
    return out;
}

DisjointPair rename_into_disjoint(const Polynomial& p, const Polynomial& q) {
    const auto& pn = p.vars()->names();
    const auto& qn = q.vars()->names();
    std::set<std::string> taken(pn.begin(), pn.end());
    taken.insert(qn.begin(), qn.end());

    static const char* pool[] = {"u", "v", "w", "s", "t", "p", "q", "r",
                                 "a", "b", "c", "d"};
    std::vector<std::string> qn_new;
    for (const auto& name : qn) {
        bool collides = std::find(pn.begin(), pn.end(), name) != pn.end();
        if (!collides) {
            qn_new.push_back(name);
            continue;
        }
        std::string fresh;
        for (const char* cand : pool)
            if (!taken.count(cand)) {
                fresh = cand;
                break;
            }
        for (int k = 2; fresh.empty(); ++k) {
            std::string cand = name + "_" + std::to_string(k);
            if (!taken.count(cand)) fresh = cand;
        }
        taken.insert(fresh);
        qn_new.push_back(fresh);
    }

    std::vector<std::string> all(pn);
    all.insert(all.end(), qn_new.begin(), qn_new.end());
    VarsPtr combined = make_vars(std::move(all));

    std::size_t n1 = pn.size(), n2 = qn.size();
    Polynomial p2(combined), q2(combined);
    for (const auto& [m, c] : p.terms()) {
        std::vector<int> e = m.exponents();
        e.resize(n1 + n2, 0);
        p2.set_coefficient(Monomial(std::move(e)), c);
    }
    for (const auto& [m, c] : q.terms()) {
        std::vector<int> e(n1 + n2, 0);
        for (std::size_t i = 0; i < n2; ++i) e[n1 + i] = m.exponent(i);
        q2.set_coefficient(Monomial(std::move(e)), c);
    }
    return DisjointPair{std::move(p2), std::move(q2), std::move(combined), n1};
}

std::vector<Monomial> monomials_of_degree(std::size_t arity, int d) {
    std::vector<Monomial> out;
    std::vector<int> e(arity, 0);
    // lexicographic fill of exponent vectors summing to d
    auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
        if (pos + 1 == arity) {
            e[pos] = remaining;
            out.emplace_back(e);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            e[pos] = k;
            self(self, pos + 1, remaining - k);
        }
        e[pos] = 0;
    };
    if (arity > 0 && d >= 0) rec(rec, 0, d);
    std::sort(out.begin(), out.end(), DegRevLex{});
    return out;
}

} // namespace tjurina
