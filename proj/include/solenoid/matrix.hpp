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

#ifndef SOLENOID_MATRIX_HPP
#define SOLENOID_MATRIX_HPP

#include <map>
#include <stdexcept>
#include <vector>

namespace solenoid {

/// Dense matrix over an exact field F (Cyclotomic or SymbolicScalar).
template <class F>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    F& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const F& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same(a, b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same(a, b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }
    Matrix scaled(const F& c) const {
        Matrix r = *this;
        for (auto& x : r.data_) x *= c;
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    /// Kronecker product.
    friend Matrix kron(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) {
                if (a.at(i, j).is_zero()) continue;
                for (std::size_t k = 0; k < b.rows_; ++k)
                    for (std::size_t l = 0; l < b.cols_; ++l)
                        r.at(i * b.rows_ + k, j * b.cols_ + l) = a.at(i, j) * b.at(k, l);
            }
        return r;
    }

    /// Row reduction in place; returns pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t piv = row;
            while (piv < rows_ && at(piv, col).is_zero()) ++piv;
            if (piv == rows_) continue;
            if (piv != row)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(row, j));
            F inv = F(1) / at(row, col);
            for (std::size_t j = col; j < cols_; ++j) at(row, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row || at(i, col).is_zero()) continue;
                F f = at(i, col);
                for (std::size_t j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    /// Basis of the right nullspace.
    std::vector<std::vector<F>> nullspace() const {
        Matrix m = *this;
        auto pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<F>> basis;
        for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
            if (is_pivot[free_col]) continue;
            std::vector<F> v(cols_, F(0));
            v[free_col] = F(1);
            for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free_col);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    Matrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
        Matrix aug(rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = F(1);
        }
        auto pivots = aug.rref();
        if (pivots.size() != rows_) throw std::domain_error("matrix not invertible");
        Matrix inv(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
        return inv;
    }

private:
    static void check_same(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    }
    std::size_t rows_, cols_;
    std::vector<F> data_;
};

/// Incrementally reduced span of sparse vectors (coordinate -> value maps).
/// Used by reachability closures and invariance checks.
template <class F>
class LinearSpan {
public:
    using Vec = std::map<std::size_t, F>;

    /// Reduces v against the span; inserts the residue. Returns true when the
    /// span grew.
    bool insert(Vec v) {
        reduce(v);
        if (v.empty()) return false;
        const auto& [lead, c] = *v.begin();
        F inv = F(1) / c;
        for (auto& [k, x] : v) x *= inv;
        rows_.emplace(lead, std::move(v));
        return true;
    }

    bool contains(Vec v) const {
        reduce(v);
        return v.empty();
    }

    std::size_t dimension() const { return rows_.size(); }
    const std::map<std::size_t, Vec>& rows() const { return rows_; }

    /// Coordinates appearing in some span vector.
    std::vector<std::size_t> support() const {
        std::map<std::size_t, bool> seen;
        for (auto& [lead, row] : rows_)
            for (auto& [k, x] : row) seen[k] = true;
        std::vector<std::size_t> s;
        for (auto& [k, b] : seen) s.push_back(k);
        return s;
    }

private:
    void reduce(Vec& v) const {
        while (!v.empty()) {
            auto it = rows_.find(v.begin()->first);
            if (it == rows_.end()) return;
            F f = v.begin()->second;
            for (auto& [k, x] : it->second) {
                auto vit = v.find(k);
                F val = (vit == v.end() ? F(0) : vit->second) - f * x;
                if (val.is_zero()) {
                    if (vit != v.end()) v.erase(vit);
                } else {
                    v[k] = val;
                }
            }
        }
    }

    std::map<std::size_t, Vec> rows_;  // keyed by leading coordinate
};

}  // namespace solenoid

#endif
