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

#ifndef SOLENOID_SYMBOLIC_HPP
#define SOLENOID_SYMBOLIC_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "solenoid/lattice.hpp"
#include "solenoid/polynomial.hpp"

namespace solenoid {

/// Element of the fraction field of the polynomial ring over Q(zeta) in the
/// indeterminates gamma_i, alpha_i, beta (plus the gap-p parameters).
///
/// Kept in canonical form: gcd-reduced, denominator monic. A scalar is
/// invertible iff its numerator is nonzero as a polynomial, which is the
/// exact encoding of "generic" parameters.
///
/// A partial specialization map pins some indeterminates to exact values;
/// it is applied eagerly, so bound variables never occur in num/den.
class SymbolicScalar {
public:
    using SpecMap = std::map<std::uint32_t, Cyclotomic>;

    SymbolicScalar() : num_(0), den_(1) {}
    SymbolicScalar(long n) : num_(n), den_(1) {}                      // NOLINT
    SymbolicScalar(const Rational& q) : num_(q), den_(1) {}           // NOLINT
    SymbolicScalar(const Cyclotomic& c) : num_(c), den_(1) {}         // NOLINT
    SymbolicScalar(const Polynomial& p) : num_(p), den_(1) {}         // NOLINT
    SymbolicScalar(Polynomial num, Polynomial den, SpecMap spec = {})
        : num_(std::move(num)), den_(std::move(den)), spec_(std::move(spec)) {
        apply_spec();
        reduce();
    }

    static SymbolicScalar gamma(std::size_t i) { return SymbolicScalar(Polynomial::variable(VarTable::gamma(i))); }
    static SymbolicScalar alpha(std::size_t i) { return SymbolicScalar(Polynomial::variable(VarTable::alpha(i))); }
    static SymbolicScalar beta() { return SymbolicScalar(Polynomial::variable(VarTable::beta())); }
    static SymbolicScalar virp_a() { return SymbolicScalar(Polynomial::variable(VarTable::virp_a())); }
    static SymbolicScalar virp_b() { return SymbolicScalar(Polynomial::variable(VarTable::virp_b())); }

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    const SpecMap& specialization() const { return spec_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_invertible() const { return !num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Cyclotomic constant_value() const { return num_.constant_value() / den_.constant_value(); }

    /// Binds further indeterminates to exact values (eagerly substituted).
    SymbolicScalar specialized(const SpecMap& more) const {
        SymbolicScalar r = *this;
        for (auto& [v, c] : more) {
            auto it = r.spec_.find(v);
            if (it != r.spec_.end()) {
                if (!(it->second == c)) throw std::invalid_argument("conflicting specializations");
                continue;
            }
            r.spec_.emplace(v, c);
        }
        r.apply_spec();
        if (r.den_.is_zero()) throw std::domain_error("specialization makes denominator zero");
        r.reduce();
        return r;
    }

    friend SymbolicScalar operator+(const SymbolicScalar& a, const SymbolicScalar& b) {
        auto [x, y, spec] = align(a, b);
        return SymbolicScalar(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_, std::move(spec));
    }
    friend SymbolicScalar operator-(const SymbolicScalar& a, const SymbolicScalar& b) { return a + (-b); }
    friend SymbolicScalar operator-(const SymbolicScalar& a) {
        SymbolicScalar r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend SymbolicScalar operator*(const SymbolicScalar& a, const SymbolicScalar& b) {
        auto [x, y, spec] = align(a, b);
        return SymbolicScalar(x.num_ * y.num_, x.den_ * y.den_, std::move(spec));
    }
    friend SymbolicScalar operator/(const SymbolicScalar& a, const SymbolicScalar& b) { return a * b.inverse(); }

    SymbolicScalar inverse() const {
        if (is_zero()) throw std::domain_error("division by zero");
        return SymbolicScalar(den_, num_, spec_);
    }

    SymbolicScalar& operator+=(const SymbolicScalar& o) { return *this = *this + o; }
    SymbolicScalar& operator-=(const SymbolicScalar& o) { return *this = *this - o; }
    SymbolicScalar& operator*=(const SymbolicScalar& o) { return *this = *this * o; }
    SymbolicScalar& operator/=(const SymbolicScalar& o) { return *this = *this / o; }

    friend bool operator==(const SymbolicScalar& a, const SymbolicScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const SymbolicScalar& a, const SymbolicScalar& b) { return !(a == b); }
    friend bool operator<(const SymbolicScalar& a, const SymbolicScalar& b) {
        if (a.num_ == b.num_) return a.den_ < b.den_;
        return a.num_ < b.num_;
    }

    std::string str() const {
        if (den_ == Polynomial(1)) {
            return num_.str();
        }
        std::string n = num_.str(), d = den_.str();
        auto wrap = [](const std::string& s) {
            bool atomic = s.find(' ') == std::string::npos && s.find('*') == std::string::npos;
            return atomic ? s : "(" + s + ")";
        };
        return wrap(n) + "/" + wrap(d);
    }

private:
    void apply_spec() {
        for (auto& [v, c] : spec_) {
            num_ = num_.substituted(v, c);
            den_ = den_.substituted(v, c);
        }
    }
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        if (num_.is_zero()) {
            den_ = Polynomial(1);
            return;
        }
        Polynomial g = poly_gcd(num_, den_);
        if (!(g == Polynomial(1))) {
            num_ = divide_exact(num_, g);
            den_ = divide_exact(den_, g);
        }
        Cyclotomic lc = den_.leading_coefficient();
        if (!(lc == Cyclotomic(1))) {
            Cyclotomic inv = lc.inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }
    static std::tuple<SymbolicScalar, SymbolicScalar, SpecMap> align(const SymbolicScalar& a,
                                                                     const SymbolicScalar& b) {
        SpecMap merged = a.spec_;
        for (auto& [v, c] : b.spec_) {
            auto it = merged.find(v);
            if (it != merged.end()) {
                if (!(it->second == c)) throw std::invalid_argument("conflicting specializations");
            } else {
                merged.emplace(v, c);
            }
        }
        return {a.specialized(merged), b.specialized(merged), merged};
    }

    Polynomial num_, den_;
    SpecMap spec_;
};

/// (v | m) = sum_i v_i m_i as a SymbolicScalar.
inline SymbolicScalar inner_product(const std::vector<SymbolicScalar>& v, const LatticePoint& m) {
    if (v.size() != m.dim()) throw std::invalid_argument("inner product dimension mismatch");
    SymbolicScalar r;
    for (std::size_t i = 0; i < v.size(); ++i) r += SymbolicScalar(Rational(m[i])) * v[i];
    return r;
}

/// The fully symbolic vector (g1, ..., gd).
inline std::vector<SymbolicScalar> gamma_vector(std::size_t d) {
    std::vector<SymbolicScalar> v;
    v.reserve(d);
    for (std::size_t i = 0; i < d; ++i) v.push_back(SymbolicScalar::gamma(i));
    return v;
}

}  // namespace solenoid

#endif
