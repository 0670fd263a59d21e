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

#ifndef SOLENOID_LATTICE_HPP
#define SOLENOID_LATTICE_HPP

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace solenoid {

/// Point of Z^d. The ambient dimension is fixed per session.
class LatticePoint {
public:
    LatticePoint() = default;
    explicit LatticePoint(std::size_t dim) : e_(dim, 0) {}
    LatticePoint(std::initializer_list<long> xs) : e_(xs) {}
    explicit LatticePoint(std::vector<long> xs) : e_(std::move(xs)) {}

    std::size_t dim() const { return e_.size(); }
    long operator[](std::size_t i) const { return e_[i]; }
    long& operator[](std::size_t i) { return e_[i]; }
    const std::vector<long>& entries() const { return e_; }

    bool is_zero() const {
        for (long x : e_)
            if (x != 0) return false;
        return true;
    }

    long degree() const { return std::accumulate(e_.begin(), e_.end(), 0L); }

    long norm_inf() const {
        long m = 0;
        for (long x : e_) m = std::max(m, x < 0 ? -x : x);
        return m;
    }

    friend LatticePoint operator+(const LatticePoint& a, const LatticePoint& b) {
        check_dims(a, b);
        LatticePoint r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
        check_dims(a, b);
        LatticePoint r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    friend LatticePoint operator-(const LatticePoint& a) {
        LatticePoint r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r.e_[i] = -a.e_[i];
        return r;
    }
    friend LatticePoint operator*(long c, const LatticePoint& a) {
        LatticePoint r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r.e_[i] = c * a.e_[i];
        return r;
    }

    friend bool operator==(const LatticePoint& a, const LatticePoint& b) { return a.e_ == b.e_; }
    friend bool operator!=(const LatticePoint& a, const LatticePoint& b) { return a.e_ != b.e_; }
    friend bool operator<(const LatticePoint& a, const LatticePoint& b) { return a.e_ < b.e_; }

    static LatticePoint unit(std::size_t dim, std::size_t i) {
        LatticePoint r(dim);
        r[i] = 1;
        return r;
    }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) os << ',';
            os << e_[i];
        }
        os << ')';
        return os.str();
    }

private:
    static void check_dims(const LatticePoint& a, const LatticePoint& b) {
        if (a.dim() != b.dim()) throw std::invalid_argument("lattice dimension mismatch");
    }
    std::vector<long> e_;
};

/// Iterates over all points of the box [-bound, bound]^dim, calling fn on each.
inline void for_each_in_box(std::size_t dim, long bound, const std::function<void(const LatticePoint&)>& fn) {
    LatticePoint p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = -bound;
    for (;;) {
        fn(p);
        std::size_t i = 0;
        while (i < dim && p[i] == bound) p[i++] = -bound;
        if (i == dim) return;
        ++p[i];
    }
}

/// Iterates over N^dim points with total degree <= bound.
inline void for_each_nonneg_degree(std::size_t dim, long bound, const std::function<void(const LatticePoint&)>& fn) {
    LatticePoint p(dim);
    for (;;) {
        if (p.degree() <= bound) fn(p);
        std::size_t i = 0;
        while (i < dim && p[i] == bound) p[i++] = 0;
        if (i == dim) return;
        ++p[i];
    }
}

}  // namespace solenoid

#endif
