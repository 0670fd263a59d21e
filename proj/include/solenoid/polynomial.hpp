/*
   Copyright 2026 The solenoid authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef SOLENOID_POLYNOMIAL_HPP
#define SOLENOID_POLYNOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "solenoid/cyclotomic.hpp"

namespace solenoid {

/// Indeterminates live in a fixed global table so that the monomial order is
/// stable across a session. gamma_i, alpha_i, beta house the paper-level
/// parameters; va, vb are the scalar parameters of the gap-p modules.
class VarTable {
public:
    static constexpr std::size_t kMaxRank = 8;

    static const VarTable& instance() {
        static VarTable t;
        return t;
    }
    static std::uint32_t gamma(std::size_t i) { return check(i), static_cast<std::uint32_t>(i); }
    static std::uint32_t alpha(std::size_t i) { return check(i), static_cast<std::uint32_t>(kMaxRank + i); }
    static std::uint32_t beta() { return 2 * kMaxRank; }
    static std::uint32_t virp_a() { return 2 * kMaxRank + 1; }
    static std::uint32_t virp_b() { return 2 * kMaxRank + 2; }
    static std::size_t count() { return 2 * kMaxRank + 3; }

    static std::string name(std::uint32_t id) {
        if (id < kMaxRank) return "g" + std::to_string(id + 1);
        if (id < 2 * kMaxRank) return "a" + std::to_string(id - kMaxRank + 1);
        if (id == beta()) return "b";
        if (id == virp_a()) return "va";
        if (id == virp_b()) return "vb";
        throw std::invalid_argument("unknown variable id");
    }

private:
    static void check(std::size_t i) {
        if (i >= kMaxRank) throw std::invalid_argument("variable index exceeds max rank");
    }
};

/// Sparse exponent vector, sorted by variable id. Compared in graded lex
/// order (total degree first, then lex with lower ids more significant).
class Monomial {
public:
    Monomial() = default;

    static Monomial var(std::uint32_t id, std::uint32_t exp = 1) {
        Monomial m;
        if (exp) m.e_.emplace_back(id, exp);
        return m;
    }

    bool is_one() const { return e_.empty(); }
    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (auto& [v, e] : e_) d += e;
        return d;
    }
    std::uint32_t degree_in(std::uint32_t var) const {
        for (auto& [v, e] : e_)
            if (v == var) return e;
        return 0;
    }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& factors() const { return e_; }
    std::uint32_t max_var() const {
        std::uint32_t m = 0;
        bool any = false;
        for (auto& [v, e] : e_) {
            m = std::max(m, v);
            any = true;
        }
        if (!any) throw std::logic_error("max_var of constant monomial");
        return m;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        std::size_t i = 0, j = 0;
        while (i < a.e_.size() || j < b.e_.size()) {
            if (j == b.e_.size() || (i < a.e_.size() && a.e_[i].first < b.e_[j].first))
                r.e_.push_back(a.e_[i++]);
            else if (i == a.e_.size() || b.e_[j].first < a.e_[i].first)
                r.e_.push_back(b.e_[j++]);
            else {
                r.e_.emplace_back(a.e_[i].first, a.e_[i].second + b.e_[j].second);
                ++i, ++j;
            }
        }
        return r;
    }

    /// Exact quotient a / b, or nullopt when b does not divide a.
    static std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
        Monomial r;
        std::size_t i = 0;
        for (auto& [v, e] : b.e_) {
            while (i < a.e_.size() && a.e_[i].first < v) r.e_.push_back(a.e_[i++]);
            if (i == a.e_.size() || a.e_[i].first != v || a.e_[i].second < e) return std::nullopt;
            if (a.e_[i].second > e) r.e_.emplace_back(v, a.e_[i].second - e);
            ++i;
        }
        while (i < a.e_.size()) r.e_.push_back(a.e_[i++]);
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        std::uint32_t da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        // lex on dense exponents, lower variable id more significant
        std::size_t i = 0, j = 0;
        while (i < a.e_.size() && j < b.e_.size()) {
            if (a.e_[i].first != b.e_[j].first)
                return a.e_[i].first > b.e_[j].first;  // missing var = exponent 0
            if (a.e_[i].second != b.e_[j].second) return a.e_[i].second < b.e_[j].second;
            ++i, ++j;
        }
        return i == a.e_.size() && j < b.e_.size() ? false : (j == b.e_.size() && i < a.e_.size() ? true : false);
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (auto& [v, e] : e_) {
            if (!first) os << '*';
            first = false;
            os << VarTable::name(v);
            if (e > 1) os << '^' << e;
        }
        return os.str();
    }

private:
    std::vector<std::pair<std::uint32_t, std::uint32_t>> e_;
};

/// Sparse multivariate polynomial with Cyclotomic coefficients.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Cyclotomic>;

    Polynomial() = default;
    Polynomial(long n) { set_constant(Cyclotomic(n)); }                 // NOLINT
    Polynomial(const Rational& q) { set_constant(Cyclotomic(q)); }      // NOLINT
    Polynomial(const Cyclotomic& c) { set_constant(c); }                // NOLINT

    static Polynomial variable(std::uint32_t id) {
        Polynomial p;
        p.terms_.emplace(Monomial::var(id), Cyclotomic(1));
        return p;
    }
    static Polynomial term(const Monomial& m, const Cyclotomic& c) {
        Polynomial p;
        if (!c.is_zero()) p.terms_.emplace(m, c);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
    Cyclotomic constant_value() const {
        if (!is_constant()) throw std::domain_error("polynomial is not constant");
        return terms_.empty() ? Cyclotomic(0) : terms_.begin()->second;
    }
    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }
    std::uint32_t degree_in(std::uint32_t var) const {
        std::uint32_t d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m.degree_in(var));
        return d;
    }
    /// Largest variable id present, or nullopt for constants.
    std::optional<std::uint32_t> main_variable() const {
        std::optional<std::uint32_t> v;
        for (auto& [m, c] : terms_)
            if (!m.is_one()) v = v ? std::max(*v, m.max_var()) : m.max_var();
        return v;
    }

    const Monomial& leading_monomial() const {
        if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
        return terms_.rbegin()->first;
    }
    const Cyclotomic& leading_coefficient() const {
        if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
        return terms_.rbegin()->second;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r = a;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const Cyclotomic& c) const {
        Polynomial r;
        if (c.is_zero()) return r;
        for (auto& [m, co] : terms_) r.terms_.emplace(m, co * c);
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
    friend bool operator<(const Polynomial& a, const Polynomial& b) {
        return std::lexicographical_compare(
            a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
            [](const auto& x, const auto& y) {
                if (x.first == y.first) return x.second < y.second;
                return x.first < y.first;
            });
    }

    /// Substitutes an exact value for one variable.
    Polynomial substituted(std::uint32_t var, const Cyclotomic& value) const {
        Polynomial r;
        for (auto& [m, c] : terms_) {
            std::uint32_t e = m.degree_in(var);
            if (e == 0) {
                r.add_term(m, c);
                continue;
            }
            auto rest = Monomial::divide(m, Monomial::var(var, e));
            r.add_term(*rest, c * value.pow(static_cast<long>(e)));
        }
        return r;
    }

    /// Substitutes a polynomial for one variable.
    Polynomial substituted(std::uint32_t var, const Polynomial& value) const {
        Polynomial r;
        for (auto& [m, c] : terms_) {
            std::uint32_t e = m.degree_in(var);
            auto rest = Monomial::divide(m, Monomial::var(var, e));
            Polynomial t = Polynomial::term(*rest, c);
            for (std::uint32_t k = 0; k < e; ++k) t *= value;
            r += t;
        }
        return r;
    }

    /// Exact division; throws when the division leaves a remainder.
    friend Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
        if (g.is_zero()) throw std::domain_error("division by zero polynomial");
        Polynomial q, rem = f;
        while (!rem.is_zero()) {
            auto mq = Monomial::divide(rem.leading_monomial(), g.leading_monomial());
            if (!mq) throw std::domain_error("polynomial division not exact");
            Cyclotomic cq = rem.leading_coefficient() / g.leading_coefficient();
            Polynomial t = Polynomial::term(*mq, cq);
            q += t;
            rem -= t * g;
        }
        return q;
    }

    /// Monic normalization w.r.t. the global monomial order.
    Polynomial monic() const {
        if (is_zero()) return *this;
        return scaled(leading_coefficient().inverse());
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Monomial& m = it->first;
            const Cyclotomic& c = it->second;
            std::string cs = c.str();
            bool negated = false;
            if (c.is_rational() && c.to_rational() < 0) {
                negated = true;
                cs = (-c).str();
            }
            os << (first ? (negated ? "-" : "") : (negated ? " - " : " + "));
            first = false;
            bool unit_coeff = cs == "1";
            bool compound = cs.find(' ') != std::string::npos;
            if (m.is_one()) {
                os << (compound ? "(" + cs + ")" : cs);
            } else {
                if (!unit_coeff) os << (compound ? "(" + cs + ")" : cs) << '*';
                os << m.str();
            }
        }
        return os.str();
    }

private:
    void set_constant(const Cyclotomic& c) {
        terms_.clear();
        if (!c.is_zero()) terms_.emplace(Monomial(), c);
    }
    void add_term(const Monomial& m, const Cyclotomic& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    TermMap terms_;
};

namespace detail {

/// View of a polynomial as univariate in one variable, coefficients polynomial
/// in the remaining variables.
inline std::vector<Polynomial> to_univariate(const Polynomial& p, std::uint32_t var) {
    std::vector<Polynomial> coeffs(p.degree_in(var) + 1);
    for (auto& [m, c] : p.terms()) {
        std::uint32_t e = m.degree_in(var);
        auto rest = Monomial::divide(m, Monomial::var(var, e));
        coeffs[e] += Polynomial::term(*rest, c);
    }
    return coeffs;
}

inline Polynomial from_univariate(const std::vector<Polynomial>& coeffs, std::uint32_t var) {
    Polynomial r;
    for (std::size_t e = 0; e < coeffs.size(); ++e)
        r += coeffs[e] * Polynomial::term(Monomial::var(var, static_cast<std::uint32_t>(e)), Cyclotomic(1));
    return r;
}

inline void utrim(std::vector<Polynomial>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

}  // namespace detail

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

/// Pseudo-remainder of f by g as univariate polynomials (poly coefficients).
inline std::vector<Polynomial> pseudo_rem(std::vector<Polynomial> f, const std::vector<Polynomial>& g) {
    utrim(f);
    if (g.empty()) throw std::domain_error("pseudo-division by zero");
    const Polynomial& lg = g.back();
    while (f.size() >= g.size()) {
        std::size_t shift = f.size() - g.size();
        Polynomial lf = f.back();
        for (auto& c : f) c *= lg;
        for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] -= lf * g[i];
        utrim(f);
    }
    return f;
}

inline Polynomial content(const std::vector<Polynomial>& coeffs) {
    Polynomial g;
    for (const auto& c : coeffs) g = poly_gcd(g, c);
    return g;
}

}  // namespace detail

/// Multivariate gcd over the cyclotomic field, primitive PRS with recursive
/// content extraction. Normalized monic; gcd(0, b) = monic(b).
inline Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Polynomial(1);
    std::uint32_t va = *a.main_variable(), vb = *b.main_variable();
    std::uint32_t v = std::max(va, vb);
    if (va != vb) {
        // the polynomial not involving v is a coefficient-level divisor
        const Polynomial& high = va == v ? a : b;
        const Polynomial& low = va == v ? b : a;
        return poly_gcd(detail::content(detail::to_univariate(high, v)), low);
    }
    auto fa = detail::to_univariate(a, v);
    auto fb = detail::to_univariate(b, v);
    Polynomial ca = detail::content(fa), cb = detail::content(fb);
    for (auto& c : fa) c = divide_exact(c, ca);
    for (auto& c : fb) c = divide_exact(c, cb);
    // primitive PRS
    auto f = std::move(fa), g = std::move(fb);
    if (f.size() < g.size()) std::swap(f, g);
    while (!g.empty()) {
        auto r = detail::pseudo_rem(f, g);
        if (!r.empty()) {
            Polynomial cr = detail::content(r);
            for (auto& c : r) c = divide_exact(c, cr);
        }
        f = std::move(g);
        g = std::move(r);
    }
    Polynomial result = poly_gcd(ca, cb) * detail::from_univariate(f, v);
    return result.monic();
}

}  // namespace solenoid

#endif
