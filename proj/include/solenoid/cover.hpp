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

#ifndef SOLENOID_COVER_HPP
#define SOLENOID_COVER_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "solenoid/algebras.hpp"
#include "solenoid/matrix.hpp"
#include "solenoid/report.hpp"
#include "solenoid/tensor_modules.hpp"

namespace solenoid {

/// The tensor space (ideal spanned by L_s, s not in R) (x) M, truncated to
/// a window on the s-part. Basis keys: (class of s, radical part of s,
/// index into M's window basis).
class CoverTensorSpace {
public:
    using Key = WeightWindowModule::Key;
    using SparseVec = WeightWindowModule::SparseVec;

    CoverTensorSpace(WeightWindowModule m, long s_bound) : m_(std::move(m)), bound_(s_bound) {
        if (!m_.has_z_action()) throw std::invalid_argument("source module must carry a Z-action");
        const auto& pres = m_.algebra().presentation();
        std::size_t d = pres.d();
        for (std::size_t ci = 0; ci < m_.classes().size(); ++ci) {
            if (m_.classes()[ci].is_zero()) continue;
            LatticePoint c(d);
            for (std::size_t i = 0; i < d; ++i) c[i] = -bound_;
            for (;;) {
                LatticePoint n(d);
                for (std::size_t i = 0; i < d; ++i) n[i] = c[i] * pres.radical_scale(i);
                for (std::size_t w = 0; w < m_.dimension(); ++w) basis_.push_back({ci, n, w});
                std::size_t i = 0;
                while (i < d && c[i] == bound_) c[i++] = -bound_;
                if (i == d) break;
                ++c[i];
            }
        }
        for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
        for (std::size_t i = 0; i < basis_.size(); ++i) weights_[weight_offset(i)].push_back(i);
    }

    const WeightWindowModule& source() const { return m_; }
    long bound() const { return bound_; }
    std::size_t dimension() const { return basis_.size(); }
    const std::vector<Key>& basis() const { return basis_; }
    const std::map<LatticePoint, std::vector<std::size_t>>& weights() const { return weights_; }

    std::optional<std::size_t> find(const Key& k) const {
        auto it = index_.find(k);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Full lattice exponent of the s-part of basis vector i.
    LatticePoint s_part(std::size_t i) const { return m_.classes()[basis_[i].cls] + basis_[i].n; }
    /// weight(L_s (x) v) = s + weight(v): offsets from alpha.
    LatticePoint weight_offset(std::size_t i) const { return s_part(i) + m_.weight_offset(basis_[i].w); }
    bool is_inner(std::size_t i, long margin) const {
        const auto& pres = m_.algebra().presentation();
        for (std::size_t k = 0; k < pres.d(); ++k)
            if (std::abs(basis_[i].n[k] / pres.radical_scale(k)) > bound_ - margin) return false;
        return m_.is_inner(basis_[i].w, margin);
    }

    /// t^n (L_s (x) v) = L_{n+s} (x) v.
    std::optional<SparseVec> z_apply(const LatticePoint& n, std::size_t i) const {
        const auto& pres = m_.algebra().presentation();
        if (!pres.in_radical(n)) throw std::invalid_argument("Z-action index must lie in R");
        Key k = basis_[i];
        LatticePoint n2 = k.n + n;
        for (std::size_t j = 0; j < pres.d(); ++j)
            if (std::abs(n2[j] / pres.radical_scale(j)) > bound_) return std::nullopt;
        SparseVec out;
        auto t = find({k.cls, n2, k.w});
        WeightWindowModule::add_to(out, *t, SymbolicScalar(1));
        return out;
    }

    /// L_m (L_s (x) v) = [L_m, L_s] (x) v + L_s (x) (L_m v).
    std::optional<SparseVec> apply(const BasisSymbol& sym, std::size_t i) const {
        const auto& pres = m_.algebra().presentation();
        Key k = basis_[i];
        LatticePoint s = s_part(i);
        SparseVec out;
        LieElement br = m_.algebra().widened(4).bracket_basis(
            sym, BasisSymbol{BasisSymbol::Kind::L, s, {}, 0});
        for (auto& [bsym, c] : br.terms()) {
            auto [cls, n2] = pres.gamma_reduce(bsym.a);
            if (cls.is_zero()) throw std::logic_error("bracket left the ideal");
            for (std::size_t j = 0; j < pres.d(); ++j)
                if (std::abs(n2[j] / pres.radical_scale(j)) > bound_) return std::nullopt;
            std::size_t ci = 0;
            for (std::size_t c2 = 0; c2 < m_.classes().size(); ++c2)
                if (m_.classes()[c2] == cls) ci = c2;
            auto t = find({ci, n2, k.w});
            WeightWindowModule::add_to(out, *t, c);
        }
        auto mv = m_.apply(sym, k.w);
        if (!mv) return std::nullopt;
        for (auto& [w2, c] : *mv) {
            auto t = find({k.cls, k.n, w2});
            WeightWindowModule::add_to(out, *t, c);
        }
        return out;
    }

    std::optional<SparseVec> apply(const BasisSymbol& sym, const SparseVec& v) const {
        SparseVec out;
        for (auto& [i, c] : v) {
            auto img = apply(sym, i);
            if (!img) return std::nullopt;
            for (auto& [j, x] : *img) WeightWindowModule::add_to(out, j, x * c);
        }
        return out;
    }

    /// pi(L_s (x) v) = L_s v; partial near the source window boundary.
    std::optional<SparseVec> pi(std::size_t i) const {
        Key k = basis_[i];
        return m_.apply(BasisSymbol{BasisSymbol::Kind::L, s_part(i), {}, 0}, k.w);
    }
    std::optional<SparseVec> pi(const SparseVec& v) const {
        SparseVec out;
        for (auto& [i, c] : v) {
            auto img = pi(i);
            if (!img) return std::nullopt;
            for (auto& [j, x] : *img) WeightWindowModule::add_to(out, j, x * c);
        }
        return out;
    }

private:
    WeightWindowModule m_;
    long bound_;
    std::vector<Key> basis_;
    std::map<Key, std::size_t> index_;
    std::map<LatticePoint, std::vector<std::size_t>> weights_;
};

/// Window-J: for each weight, the exact nullspace of the constraints
/// sum_s L_{n+s} v_s = 0 over every n in the R-window for which all terms
/// are evaluable. An over-approximation of the defining condition (which
/// quantifies over all of R), so invariance is re-verified, not assumed.
inline std::map<LatticePoint, std::vector<CoverTensorSpace::SparseVec>> compute_J(const CoverTensorSpace& space) {
    const auto& M = space.source();
    const auto& pres = M.algebra().presentation();
    std::size_t d = pres.d();
    std::map<LatticePoint, std::vector<CoverTensorSpace::SparseVec>> J;

    std::vector<LatticePoint> rwindow;
    {
        long B = M.box_bound();
        LatticePoint c(d);
        for (std::size_t i = 0; i < d; ++i) c[i] = -B;
        for (;;) {
            LatticePoint n(d);
            for (std::size_t i = 0; i < d; ++i) n[i] = c[i] * pres.radical_scale(i);
            rwindow.push_back(n);
            std::size_t i = 0;
            while (i < d && c[i] == B) c[i++] = -B;
            if (i == d) break;
            ++c[i];
        }
    }

    for (auto& [u, idxs] : space.weights()) {
        // rows: (evaluable constraint n, coordinate of M); cols: tensor basis at weight u
        std::size_t total_rows = 0;
        std::vector<std::vector<std::size_t>> coords_per_n;
        std::vector<std::vector<std::map<std::size_t, SymbolicScalar>>> cols_per_n;
        for (const auto& n : rwindow) {
            bool ok = true;
            std::vector<std::map<std::size_t, SymbolicScalar>> cols;
            std::map<std::size_t, bool> support;
            for (std::size_t c = 0; c < idxs.size(); ++c) {
                auto img = M.apply(BasisSymbol{BasisSymbol::Kind::L, n + space.s_part(idxs[c]), {}, 0},
                                   space.basis()[idxs[c]].w);
                if (!img) {
                    ok = false;
                    break;
                }
                for (auto& [j, x] : *img) support[j] = true;
                cols.push_back(*img);
            }
            if (!ok) continue;
            std::vector<std::size_t> coords;
            for (auto& [j, b] : support) coords.push_back(j);
            coords_per_n.push_back(coords);
            cols_per_n.push_back(std::move(cols));
            total_rows += coords.size();
        }
        Matrix<SymbolicScalar> A(total_rows, idxs.size());
        std::size_t row0 = 0;
        for (std::size_t b = 0; b < coords_per_n.size(); ++b) {
            for (std::size_t c = 0; c < idxs.size(); ++c)
                for (auto& [j, x] : cols_per_n[b][c]) {
                    std::size_t r = 0;
                    for (std::size_t q = 0; q < coords_per_n[b].size(); ++q)
                        if (coords_per_n[b][q] == j) r = q;
                    A.at(row0 + r, c) = x;
                }
            row0 += coords_per_n[b].size();
        }
        auto null_basis = A.nullspace();
        std::vector<CoverTensorSpace::SparseVec> vecs;
        for (auto& col : null_basis) {
            CoverTensorSpace::SparseVec v;
            for (std::size_t c = 0; c < idxs.size(); ++c)
                if (!col.at(c, 0).is_zero()) v.emplace(idxs[c], col.at(c, 0));
            vecs.push_back(std::move(v));
        }
        if (!vecs.empty()) J.emplace(u, std::move(vecs));
    }
    return J;
}

/// Assembled cover data with verification results.
struct CoverWindow {
    std::shared_ptr<CoverTensorSpace> space;
    std::map<LatticePoint, std::vector<CoverTensorSpace::SparseVec>> J;
    std::map<LatticePoint, std::size_t> tensor_dims;    // per weight
    std::map<LatticePoint, std::size_t> quotient_dims;  // per weight: dim of the cover
    VerifierReport checks;                              // J in ker pi, homomorphism, surjectivity

    nlohmann::json to_json() const {
        nlohmann::json j;
        nlohmann::json per_weight = nlohmann::json::array();
        for (auto& [u, dim] : tensor_dims) {
            auto itj = J.find(u);
            std::size_t jd = itj == J.end() ? 0 : itj->second.size();
            per_weight.push_back({{"weight", u.str()},
                                  {"tensor_dim", dim},
                                  {"window_J_dim", jd},
                                  {"cover_dim", dim - jd}});
        }
        j["weights"] = per_weight;
        j["checks"] = checks.to_json();
        return j;
    }
};

/// M-hat = (tensor space)/J with pi-hat checks: J in ker pi, pi a module
/// homomorphism on evaluable samples, surjectivity of pi over the inner
/// window, and whether the ideal covers M there.
inline CoverWindow build_cover(std::shared_ptr<CoverTensorSpace> space,
                               std::map<LatticePoint, std::vector<CoverTensorSpace::SparseVec>> J,
                               long inner_margin = 1) {
    CoverWindow cover;
    cover.space = space;
    cover.J = std::move(J);
    cover.checks.subject = "Z-cover";
    const auto& M = space->source();

    for (auto& [u, idxs] : space->weights()) {
        cover.tensor_dims[u] = idxs.size();
        auto it = cover.J.find(u);
        cover.quotient_dims[u] = idxs.size() - (it == cover.J.end() ? 0 : it->second.size());
    }

    // J lies in ker pi wherever pi is evaluable
    for (auto& [u, vecs] : cover.J)
        for (auto& v : vecs) {
            auto img = space->pi(v);
            if (!img) continue;
            if (!img->empty()) cover.checks.violation("window-J vector at weight " + u.str() + " not in ker pi");
            ++cover.checks.checked;
        }

    // pi is a module homomorphism: pi(L_m u) = L_m pi(u)
    for (const auto& g : M.generators())
        for (std::size_t i = 0; i < space->dimension(); ++i) {
            auto lu = space->apply(g, i);
            if (!lu) continue;
            auto lhs = space->pi(*lu);
            if (!lhs) continue;
            auto pu = space->pi(i);
            if (!pu) continue;
            auto rhs = M.apply(g, *pu);
            if (!rhs) continue;
            CoverTensorSpace::SparseVec res = *lhs;
            for (auto& [j, c] : *rhs) WeightWindowModule::add_to(res, j, -c);
            if (!res.empty())
                cover.checks.violation("pi fails to intertwine " + g.str() + " at tensor basis " + std::to_string(i));
            ++cover.checks.checked;
        }

    // surjectivity of pi over the inner window of M
    LinearSpan<SymbolicScalar> image;
    for (std::size_t i = 0; i < space->dimension(); ++i) {
        auto img = space->pi(i);
        if (img && !img->empty()) image.insert(*img);
    }
    bool surjective = true;
    for (std::size_t v = 0; v < M.dimension(); ++v) {
        if (!M.is_inner(v, inner_margin)) continue;
        CoverTensorSpace::SparseVec e{{v, SymbolicScalar(1)}};
        if (!image.contains(e)) surjective = false;
        ++cover.checks.checked;
    }
    cover.checks.details["pi_inner_surjective"] = surjective;
    if (!surjective) cover.checks.violation("pi not surjective on the inner window");
    return cover;
}

/// Invariance of window-J under in-window generator actions, restricted to
/// J vectors supported on the inner region so the window cannot block the
/// action itself.
inline VerifierReport verify_J_invariance(const CoverWindow& cover, long inner_margin = 1,
                                          std::size_t sample_cap = 200) {
    VerifierReport rep;
    rep.subject = "window-J invariance";
    const auto& space = *cover.space;
    std::map<LatticePoint, LinearSpan<SymbolicScalar>> spans;
    for (auto& [u, vecs] : cover.J)
        for (auto& v : vecs) spans[u].insert(v);
    std::size_t tested = 0;
    for (auto& [u, vecs] : cover.J) {
        for (auto& v : vecs) {
            if (tested >= sample_cap) return rep;
            bool inner = true;
            for (auto& [i, c] : v) inner = inner && space.is_inner(i, inner_margin);
            if (!inner) continue;
            ++tested;
            for (const auto& g : space.source().generators()) {
                auto img = space.apply(g, v);
                if (!img || img->empty()) continue;
                LatticePoint u2 = space.weight_offset(img->begin()->first);
                auto it = spans.find(u2);
                bool member = it != spans.end() && it->second.contains(*img);
                if (!member)
                    rep.violation("J not invariant under " + g.str() + " at weight " + u.str());
                ++rep.checked;
            }
        }
    }
    return rep;
}

/// Multiplicity stabilization diagnostic: rebuild the cover at each window
/// size, record the maximal cover multiplicity over a fixed set of central
/// weights, and pass iff the two largest sizes agree.
inline VerifierReport cuspidality_probe(const std::function<WeightWindowModule(long)>& build_source,
                                        const std::vector<long>& sizes, long weight_threshold = 1) {
    VerifierReport rep;
    rep.subject = "cuspidality probe";
    nlohmann::json table = nlohmann::json::array();
    std::vector<std::size_t> maxima;
    for (long B : sizes) {
        WeightWindowModule M = build_source(B);
        auto space = std::make_shared<CoverTensorSpace>(M, B);
        if (space->dimension() == 0) {
            table.push_back({{"B", B}, {"max_inner_multiplicity", 0}, {"note", "empty ideal (z = 0 branch)"}});
            maxima.push_back(0);
            continue;
        }
        auto J = compute_J(*space);
        const auto& pres = M.algebra().presentation();
        std::size_t maxmult = 0;
        for (auto& [u, idxs] : space->weights()) {
            bool central = true;
            auto [cls, n] = pres.gamma_reduce(u);
            for (std::size_t k = 0; k < pres.d(); ++k)
                if (std::abs(n[k] / pres.radical_scale(k)) > weight_threshold) central = false;
            if (!central) continue;
            auto it = J.find(u);
            std::size_t jd = it == J.end() ? 0 : it->second.size();
            maxmult = std::max(maxmult, idxs.size() - jd);
        }
        maxima.push_back(maxmult);
        table.push_back({{"B", B}, {"max_inner_multiplicity", maxmult}});
        ++rep.checked;
    }
    rep.details["multiplicities"] = table;
    if (maxima.size() >= 2 && maxima[maxima.size() - 1] != maxima[maxima.size() - 2])
        rep.violation("inner multiplicities did not stabilize across the two largest window sizes");
    return rep;
}

}  // namespace solenoid

#endif
