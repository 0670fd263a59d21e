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

#ifndef SOLENOID_TORUS_HPP
#define SOLENOID_TORUS_HPP

#include <numeric>
#include <stdexcept>
#include <vector>

#include "solenoid/cyclotomic.hpp"
#include "solenoid/lattice.hpp"
#include "solenoid/matrix.hpp"

namespace solenoid {

/// Normal-form presentation of a rational quantum torus C_Q: rank d, z
/// noncommuting pairs with orders k_1, ..., k_z (divisibility chain
/// k_{i+1} | k_i), all other generators central. q_i = zeta_{k_i}.
class TorusPresentation {
public:
    TorusPresentation(std::size_t d, std::size_t z, std::vector<unsigned> orders)
        : d_(d), z_(z), orders_(std::move(orders)) {
        if (2 * z_ > d_) throw std::invalid_argument("presentation requires 2z <= d");
        if (orders_.size() != z_) throw std::invalid_argument("presentation needs one order per pair");
        for (unsigned k : orders_)
            if (k == 0) throw std::invalid_argument("orders must be positive");
        for (std::size_t i = 0; i + 1 < orders_.size(); ++i)
            if (orders_[i] % orders_[i + 1] != 0)
                throw std::invalid_argument("orders must form a divisibility chain k_{i+1} | k_i");
    }

    std::size_t d() const { return d_; }
    std::size_t z() const { return z_; }
    const std::vector<unsigned>& orders() const { return orders_; }

    /// N = prod k_i; the matrix realization targets M_N(C).
    unsigned matrix_size() const {
        unsigned n = 1;
        for (unsigned k : orders_) n *= k;
        return n;
    }
    /// lcm of the orders; all sigma values live in Q(zeta_L).
    unsigned field_order() const {
        unsigned l = 1;
        for (unsigned k : orders_) l = std::lcm(l, k);
        return l;
    }
    /// |Gamma| = |Gamma_0| = prod k_i^2 = N^2.
    unsigned gamma_order() const {
        unsigned n = matrix_size();
        return n * n;
    }

    /// q_{ji} for j > i: nontrivial only on the pairs (2i-1, 2i).
    Cyclotomic q_entry(std::size_t j, std::size_t i) const {  // j > i, 0-based
        if (j != i + 1 || i % 2 != 0 || i / 2 >= z_) return Cyclotomic(1);
        return Cyclotomic::zeta(orders_[i / 2]);
    }

    /// The cocycle sigma(m, n) = prod_{i<j} q_{ji}^{m_j n_i}; always a root of
    /// unity. The exponent orientation is the one validated by the matrix
    /// model identity X^m X^n = sigma(m,n) X^{m+n}.
    Cyclotomic sigma(const LatticePoint& m, const LatticePoint& n) const {
        if (m.dim() != d_ || n.dim() != d_) throw std::invalid_argument("sigma dimension mismatch");
        Cyclotomic r(1);
        for (std::size_t i = 0; i < z_; ++i) {
            long e = m[2 * i + 1] * n[2 * i];
            if (e != 0) r *= Cyclotomic::zeta(orders_[i], e);
        }
        return r;
    }

    /// sigma(m,n) - sigma(n,m), the gl_N structure constant.
    Cyclotomic sigma_skew(const LatticePoint& m, const LatticePoint& n) const {
        return sigma(m, n) - sigma(n, m);
    }

    /// Basis of the radical R: {k_i e_{2i-1}, k_i e_{2i}} plus the central e_l.
    std::vector<LatticePoint> radical_basis() const {
        std::vector<LatticePoint> basis;
        for (std::size_t i = 0; i < z_; ++i) {
            basis.push_back(static_cast<long>(orders_[i]) * LatticePoint::unit(d_, 2 * i));
            basis.push_back(static_cast<long>(orders_[i]) * LatticePoint::unit(d_, 2 * i + 1));
        }
        for (std::size_t l = 2 * z_; l < d_; ++l) basis.push_back(LatticePoint::unit(d_, l));
        return basis;
    }

    /// The diagonal of the radical basis as coordinate scales: coordinate j of
    /// R is a multiple of radical_scale(j).
    long radical_scale(std::size_t j) const {
        return j < 2 * z_ ? static_cast<long>(orders_[j / 2]) : 1;
    }

    bool in_radical(const LatticePoint& m) const {
        if (m.dim() != d_) throw std::invalid_argument("radical test dimension mismatch");
        for (std::size_t j = 0; j < 2 * z_; ++j)
            if (m[j] % radical_scale(j) != 0) return false;
        return true;
    }

    /// Unique decomposition m = s + r with s in Gamma_0 and r in R.
    std::pair<LatticePoint, LatticePoint> gamma_reduce(const LatticePoint& m) const {
        if (m.dim() != d_) throw std::invalid_argument("gamma_reduce dimension mismatch");
        LatticePoint s(d_), r(d_);
        for (std::size_t j = 0; j < d_; ++j) {
            long k = radical_scale(j);
            long rep = ((m[j] % k) + k) % k;
            s[j] = rep;
            r[j] = m[j] - rep;
        }
        return {s, r};
    }

    LatticePoint gamma_class(const LatticePoint& m) const { return gamma_reduce(m).first; }

    /// All of Gamma_0 in a fixed (lex) order.
    std::vector<LatticePoint> gamma_representatives() const {
        std::vector<LatticePoint> reps;
        LatticePoint p(d_);
        for (;;) {
            reps.push_back(p);
            std::size_t j = 0;
            while (j < 2 * z_ && p[j] + 1 == radical_scale(j)) p[j++] = 0;
            if (j == 2 * z_) return reps;
            ++p[j];
        }
    }

    /// X^n = tensor over pairs of X_{2i-1}^{n_{2i-1}} X_{2i}^{n_{2i}}.
    /// Constant on Gamma-classes; identity for n in R.
    Matrix<Cyclotomic> matrix_realization(const LatticePoint& n) const {
        if (n.dim() != d_) throw std::invalid_argument("matrix_realization dimension mismatch");
        Matrix<Cyclotomic> m = Matrix<Cyclotomic>::identity(1);
        for (std::size_t i = 0; i < z_; ++i) {
            unsigned k = orders_[i];
            Matrix<Cyclotomic> diag(k, k), shift(k, k);
            for (unsigned a = 0; a < k; ++a) {
                diag.at(a, a) = Cyclotomic::zeta(k, static_cast<long>(a));
                shift.at(a, (a + 1) % k) = Cyclotomic(1);
            }
            Matrix<Cyclotomic> factor = Matrix<Cyclotomic>::identity(k);
            long e1 = ((n[2 * i] % k) + k) % k, e2 = ((n[2 * i + 1] % k) + k) % k;
            for (long t = 0; t < e1; ++t) factor = factor * diag;
            for (long t = 0; t < e2; ++t) factor = factor * shift;
            m = kron(m, factor);
        }
        return m;
    }

private:
    std::size_t d_, z_;
    std::vector<unsigned> orders_;
};

/// Monomial c * t^m of the quantum torus.
struct TorusMonomial {
    LatticePoint exponent;
    Cyclotomic coefficient;
};

/// t^a * t^b = sigma(a,b) t^{a+b} lifted to coefficients.
inline TorusMonomial torus_mul(const TorusPresentation& p, const TorusMonomial& a, const TorusMonomial& b) {
    return {a.exponent + b.exponent, a.coefficient * b.coefficient * p.sigma(a.exponent, b.exponent)};
}

}  // namespace solenoid

#endif
