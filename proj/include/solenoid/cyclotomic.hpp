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

#ifndef SOLENOID_CYCLOTOMIC_HPP
#define SOLENOID_CYCLOTOMIC_HPP

#include <gmpxx.h>

#include <complex>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace solenoid {

using Rational = mpq_class;

namespace detail {

/// Univariate polynomials over Q, dense, index = degree.
using UniPoly = std::vector<Rational>;

inline void uni_trim(UniPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    uni_trim(r);
    return r;
}

/// Division with remainder; divisor must be nonzero.
inline std::pair<UniPoly, UniPoly> uni_divmod(UniPoly num, const UniPoly& den) {
    if (den.empty()) throw std::domain_error("division by zero polynomial");
    uni_trim(num);
    UniPoly q;
    if (num.size() >= den.size()) q.assign(num.size() - den.size() + 1, Rational(0));
    Rational lead = den.back();
    while (num.size() >= den.size()) {
        Rational c = num.back() / lead;
        std::size_t shift = num.size() - den.size();
        q[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        uni_trim(num);
        if (!num.empty() && num.size() >= den.size() && num.back() == 0) uni_trim(num);
        if (num.size() < den.size()) break;
    }
    uni_trim(q);
    return {q, num};
}

inline UniPoly uni_mod(UniPoly num, const UniPoly& den) { return uni_divmod(std::move(num), den).second; }

/// K-th cyclotomic polynomial, computed as (x^K - 1) / prod_{d|K, d<K} Phi_d.
inline const UniPoly& cyclotomic_polynomial(unsigned K) {
    static std::map<unsigned, UniPoly> cache;
    auto it = cache.find(K);
    if (it != cache.end()) return it->second;
    UniPoly xk_minus_1(K + 1, Rational(0));
    xk_minus_1[0] = -1;
    xk_minus_1[K] = 1;
    UniPoly num = xk_minus_1;
    for (unsigned d = 1; d < K; ++d) {
        if (K % d != 0) continue;
        auto [q, r] = uni_divmod(num, cyclotomic_polynomial(d));
        if (!r.empty()) throw std::logic_error("cyclotomic division not exact");
        num = std::move(q);
    }
    return cache.emplace(K, std::move(num)).first->second;
}

/// Extended Euclid over Q[x]: returns (g, u, v) with u*a + v*b = g, g monic or zero.
inline std::tuple<UniPoly, UniPoly, UniPoly> uni_xgcd(UniPoly a, UniPoly b) {
    UniPoly u0{Rational(1)}, v0, u1, v1{Rational(1)};
    uni_trim(a);
    uni_trim(b);
    while (!b.empty()) {
        auto [q, r] = uni_divmod(a, b);
        // u,v updates mirror the remainder step
        UniPoly qu = uni_mul(q, u1), qv = uni_mul(q, v1);
        UniPoly u2 = u0, v2 = v0;
        if (u2.size() < qu.size()) u2.resize(qu.size(), Rational(0));
        for (std::size_t i = 0; i < qu.size(); ++i) u2[i] -= qu[i];
        if (v2.size() < qv.size()) v2.resize(qv.size(), Rational(0));
        for (std::size_t i = 0; i < qv.size(); ++i) v2[i] -= qv[i];
        uni_trim(u2);
        uni_trim(v2);
        a = std::move(b);
        b = std::move(r);
        u0 = std::move(u1);
        v0 = std::move(v1);
        u1 = std::move(u2);
        v1 = std::move(v2);
    }
    if (!a.empty() && a.back() != 1) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
        for (auto& c : u0) c /= lead;
        for (auto& c : v0) c /= lead;
    }
    return {a, u0, v0};
}

}  // namespace detail

/// Element of Q(zeta_K), represented by its coordinate vector in the power
/// basis 1, zeta, ..., zeta^{phi(K)-1} reduced modulo the K-th cyclotomic
/// polynomial. Reduced coordinates are canonical: equality of values within
/// one order is coefficient equality, and mixed orders embed into the lcm.
class Cyclotomic {
public:
    Cyclotomic() : order_(1) {}
    Cyclotomic(long n) : order_(1) { set_rational(Rational(n)); }      // NOLINT: implicit by design
    Cyclotomic(const Rational& q) : order_(1) { set_rational(q); }     // NOLINT

    /// zeta_K^power
    static Cyclotomic zeta(unsigned K, long power = 1) {
        if (K == 0) throw std::invalid_argument("zeta order must be positive");
        Cyclotomic c;
        c.order_ = K;
        long e = ((power % static_cast<long>(K)) + K) % K;
        detail::UniPoly p(static_cast<std::size_t>(e) + 1, Rational(0));
        p[static_cast<std::size_t>(e)] = 1;
        c.coeffs_ = detail::uni_mod(std::move(p), detail::cyclotomic_polynomial(K));
        return c;
    }

    unsigned order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_rational() const { return coeffs_.size() <= 1; }
    Rational to_rational() const {
        if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
        return coeffs_.empty() ? Rational(0) : coeffs_[0];
    }

    /// Image in Q(zeta_L); requires order() | L.
    Cyclotomic embedded(unsigned L) const {
        if (L % order_ != 0) throw std::invalid_argument("embedding target order not a multiple");
        if (L == order_) return *this;
        unsigned step = L / order_;
        detail::UniPoly p;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            if (coeffs_[j] == 0) continue;
            std::size_t e = j * step;
            if (p.size() <= e) p.resize(e + 1, Rational(0));
            p[e] += coeffs_[j];
        }
        Cyclotomic r;
        r.order_ = L;
        r.coeffs_ = detail::uni_mod(std::move(p), detail::cyclotomic_polynomial(L));
        return r;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y, L] = align(a, b);
        detail::UniPoly s = x;
        if (s.size() < y.size()) s.resize(y.size(), Rational(0));
        for (std::size_t i = 0; i < y.size(); ++i) s[i] += y[i];
        detail::uni_trim(s);
        return from_reduced(std::move(s), L);
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }
    friend Cyclotomic operator-(const Cyclotomic& a) {
        Cyclotomic r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y, L] = align(a, b);
        return from_reduced(detail::uni_mod(detail::uni_mul(x, y), detail::cyclotomic_polynomial(L)), L);
    }

    Cyclotomic inverse() const {
        if (is_zero()) throw std::domain_error("division by zero");
        auto [g, u, v] = detail::uni_xgcd(coeffs_, detail::cyclotomic_polynomial(order_));
        (void)v;
        if (g.size() != 1) throw std::logic_error("cyclotomic modulus not coprime to element");
        detail::UniPoly inv = u;
        Rational lead = g[0];
        for (auto& c : inv) c /= lead;
        return from_reduced(detail::uni_mod(std::move(inv), detail::cyclotomic_polynomial(order_)), order_);
    }
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    Cyclotomic pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclotomic r(1), base = *this;
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y, L] = align(a, b);
        (void)L;
        return x == y;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
    /// Arbitrary total order (for container keys), comparing aligned coordinates.
    friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y, L] = align(a, b);
        (void)L;
        if (x.size() != y.size()) return x.size() < y.size();
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != y[i]) return x[i] < y[i];
        return false;
    }

    /// Numeric evaluation at zeta_K = exp(2 pi i / K); sanity cross-checks only.
    std::complex<double> to_complex() const {
        std::complex<double> z = 0;
        const double two_pi = 6.283185307179586476925;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            double c = coeffs_[j].get_d();
            double ang = two_pi * static_cast<double>(j) / order_;
            z += c * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return z;
    }

    /// Canonical textual form, e.g. "1", "-2/3", "zeta4", "1 + 2*zeta3".
    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            const Rational& c = coeffs_[j];
            if (c == 0) continue;
            Rational abs = c < 0 ? Rational(-c) : c;
            if (first) {
                if (c < 0) os << '-';
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            if (j == 0) {
                os << abs.get_str();
            } else {
                if (abs != 1) os << abs.get_str() << '*';
                os << "zeta" << order_;
                if (j > 1) os << '^' << j;
            }
        }
        return os.str();
    }

private:
    static Cyclotomic from_reduced(detail::UniPoly p, unsigned L) {
        Cyclotomic r;
        r.order_ = L;
        r.coeffs_ = std::move(p);
        detail::uni_trim(r.coeffs_);
        return r;
    }
    void set_rational(const Rational& q) {
        coeffs_.clear();
        if (q != 0) coeffs_.push_back(q);
    }
    static std::tuple<detail::UniPoly, detail::UniPoly, unsigned> align(const Cyclotomic& a, const Cyclotomic& b) {
        unsigned L = std::lcm(a.order_, b.order_);
        return {a.embedded(L).coeffs_, b.embedded(L).coeffs_, L};
    }

    unsigned order_;
    std::vector<Rational> coeffs_;  // reduced mod Phi_order
};

}  // namespace solenoid

#endif
