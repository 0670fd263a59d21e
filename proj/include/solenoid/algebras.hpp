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

#ifndef SOLENOID_ALGEBRAS_HPP
#define SOLENOID_ALGEBRAS_HPP

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "solenoid/report.hpp"
#include "solenoid/symbolic.hpp"
#include "solenoid/torus.hpp"

namespace solenoid {

enum class AlgebraTag { Solenoidal, Wmu, Virp, LCal, GlN, GlDGamma };

inline std::string tag_name(AlgebraTag t) {
    switch (t) {
        case AlgebraTag::Solenoidal: return "g";
        case AlgebraTag::Wmu: return "W_mu";
        case AlgebraTag::Virp: return "Vir_p";
        case AlgebraTag::LCal: return "L";
        case AlgebraTag::GlN: return "gl_N";
        case AlgebraTag::GlDGamma: return "gl_d_gamma";
    }
    return "?";
}

/// Raised when a bracket result falls outside the truncation policy.
/// Overflow is a hard error, never a silent projection.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& what) : std::runtime_error("out of window: " + what) {}
};

/// One basis symbol of a concrete algebra.
///   L(m)           — solenoidal basis, m in Z^d
///   WField(n)      — x^n sum mu_i x_i d_{x_i} of W_mu
///   VirD(m)        — x^{m+1} d_x of Vir_p, m in pZ
///   VirX(s)        — x^s of Vir_p, s not in pZ
///   VirC(i)        — central symbols of Vir_p (i identified with p-i)
///   XD(p)          — x^p d_gamma of L, p in N^d nonzero
///   XT(l, s)       — x^l tbar^s of L, l in N^d, s in Gamma_0
///   GlnX(n)        — X^n of gl_N, n in Gamma_0
///   EGamma(i)      — e_i gamma^T of gl_{d,gamma}
struct BasisSymbol {
    enum class Kind { L, WField, VirD, VirX, VirC, XD, XT, GlnX, EGamma };

    Kind kind;
    LatticePoint a;  // primary lattice payload
    LatticePoint b;  // Gamma_0 payload of XT
    long idx = 0;    // Vir index / central index / row index

    friend bool operator<(const BasisSymbol& x, const BasisSymbol& y) {
        if (x.kind != y.kind) return x.kind < y.kind;
        if (x.idx != y.idx) return x.idx < y.idx;
        if (!(x.a == y.a)) return x.a < y.a;
        return x.b < y.b;
    }
    friend bool operator==(const BasisSymbol& x, const BasisSymbol& y) {
        return x.kind == y.kind && x.idx == y.idx && x.a == y.a && x.b == y.b;
    }

    std::string str() const {
        switch (kind) {
            case Kind::L: return "L" + a.str();
            case Kind::WField: return "x^" + a.str() + "*d_mu";
            case Kind::VirD: return "x^" + std::to_string(idx + 1) + "*d_x";
            case Kind::VirX: return "x^" + std::to_string(idx);
            case Kind::VirC: return "C" + std::to_string(idx);
            case Kind::XD: return "x^" + a.str() + "*d_g";
            case Kind::XT: return "x^" + a.str() + "*t^" + b.str();
            case Kind::GlnX: return "X^" + a.str();
            case Kind::EGamma: return "e" + std::to_string(idx + 1) + "g^T";
        }
        return "?";
    }
};

/// Finite formal sum of basis symbols with SymbolicScalar coefficients.
class LieElement {
public:
    LieElement() = default;
    explicit LieElement(AlgebraTag tag) : tag_(tag) {}
    LieElement(AlgebraTag tag, const BasisSymbol& s, SymbolicScalar c = SymbolicScalar(1)) : tag_(tag) {
        add(s, c);
    }

    AlgebraTag tag() const { return tag_; }
    const std::map<BasisSymbol, SymbolicScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const BasisSymbol& s, const SymbolicScalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(s);
        if (it == terms_.end()) {
            terms_.emplace(s, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
    void add(const LieElement& o, const SymbolicScalar& c = SymbolicScalar(1)) {
        check_tag(o.tag_);
        for (auto& [s, x] : o.terms_) add(s, x * c);
    }

    friend LieElement operator+(const LieElement& a, const LieElement& b) {
        LieElement r = a;
        r.add(b);
        return r;
    }
    friend LieElement operator-(const LieElement& a, const LieElement& b) {
        LieElement r = a;
        r.add(b, SymbolicScalar(-1));
        return r;
    }
    LieElement scaled(const SymbolicScalar& c) const {
        LieElement r(tag_);
        for (auto& [s, x] : terms_) r.add(s, x * c);
        return r;
    }
    friend bool operator==(const LieElement& a, const LieElement& b) {
        return a.tag_ == b.tag_ && a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [s, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")*" << s.str();
        }
        return os.str();
    }

    void check_tag(AlgebraTag t) const {
        if (t != tag_) throw std::invalid_argument("algebra tag mismatch");
    }

private:
    AlgebraTag tag_ = AlgebraTag::Solenoidal;
    std::map<BasisSymbol, SymbolicScalar> terms_;
};

/// Windows: an exponent box bound for lattice-indexed algebras, a max
/// Z-degree for L, an index bound for Vir_p.
struct TruncationPolicy {
    long bound = 1;
    TruncationPolicy() = default;
    explicit TruncationPolicy(long b) : bound(b) {
        if (b < 1) throw std::invalid_argument("truncation bound must be >= 1");
    }
};

/// Basis-indexed graded Lie algebra with on-demand structure constants.
class LieAlgebra {
public:
    static LieAlgebra solenoidal(TorusPresentation pres, TruncationPolicy policy) {
        LieAlgebra a(AlgebraTag::Solenoidal, policy);
        a.pres_.emplace(std::move(pres));
        a.gamma_ = gamma_vector(a.pres_->d());
        return a;
    }
    /// W_mu over d variables; mu defaults to the fully symbolic gamma.
    static LieAlgebra w_mu(std::size_t d, std::vector<SymbolicScalar> mu, TruncationPolicy policy) {
        if (mu.size() != d) throw std::invalid_argument("mu must have length d");
        LieAlgebra a(AlgebraTag::Wmu, policy);
        a.dim_ = d;
        a.mu_ = std::move(mu);
        return a;
    }
    static LieAlgebra vir_p(long p, TruncationPolicy policy) {
        if (p < 1) throw std::invalid_argument("gap parameter must be positive");
        LieAlgebra a(AlgebraTag::Virp, policy);
        a.p_ = p;
        return a;
    }
    /// Degree-truncated L over d variables; policy.bound = D_max.
    static LieAlgebra l_cal(TorusPresentation pres, TruncationPolicy policy) {
        LieAlgebra a(AlgebraTag::LCal, policy);
        a.pres_.emplace(std::move(pres));
        a.gamma_ = gamma_vector(a.pres_->d());
        return a;
    }
    static LieAlgebra gl_n(TorusPresentation pres) {
        LieAlgebra a(AlgebraTag::GlN, TruncationPolicy(1));
        a.pres_.emplace(std::move(pres));
        return a;
    }
    static LieAlgebra gl_d_gamma(std::size_t d) {
        LieAlgebra a(AlgebraTag::GlDGamma, TruncationPolicy(1));
        a.dim_ = d;
        a.gamma_ = gamma_vector(d);
        return a;
    }

    AlgebraTag tag() const { return tag_; }
    const TruncationPolicy& policy() const { return policy_; }
    const TorusPresentation& presentation() const {
        if (!pres_) throw std::logic_error("algebra has no torus presentation");
        return *pres_;
    }
    long gap() const { return p_; }

    /// Same algebra with a larger window (used by verifiers so that nested
    /// brackets of window symbols stay representable).
    LieAlgebra widened(long factor) const {
        LieAlgebra a = *this;
        a.policy_ = TruncationPolicy(policy_.bound * factor);
        return a;
    }

    LieElement element(const BasisSymbol& s, const SymbolicScalar& c = SymbolicScalar(1)) const {
        require_in_window(s);
        return LieElement(tag_, s, c);
    }

    LieElement bracket(const LieElement& x, const LieElement& y) const {
        x.check_tag(tag_);
        y.check_tag(tag_);
        LieElement r(tag_);
        for (auto& [sx, cx] : x.terms())
            for (auto& [sy, cy] : y.terms()) r.add(bracket_basis(sx, sy), cx * cy);
        return r;
    }

    /// All basis symbols inside the window (for Vir_p: indices |i| <= bound;
    /// for L: Z-degree <= bound; lattice algebras: sup-norm box).
    std::vector<BasisSymbol> window_basis() const {
        std::vector<BasisSymbol> out;
        switch (tag_) {
            case AlgebraTag::Solenoidal:
                for_each_in_box(pres_->d(), policy_.bound, [&](const LatticePoint& m) {
                    out.push_back({BasisSymbol::Kind::L, m, {}, 0});
                });
                break;
            case AlgebraTag::Wmu:
                for_each_in_box(dim_, policy_.bound, [&](const LatticePoint& m) {
                    out.push_back({BasisSymbol::Kind::WField, m, {}, 0});
                });
                break;
            case AlgebraTag::Virp:
                for (long i = -policy_.bound; i <= policy_.bound; ++i) {
                    if (i % p_ == 0)
                        out.push_back({BasisSymbol::Kind::VirD, {}, {}, i});
                    else
                        out.push_back({BasisSymbol::Kind::VirX, {}, {}, i});
                }
                for (long i = 0; i <= p_ / 2; ++i) out.push_back({BasisSymbol::Kind::VirC, {}, {}, i});
                break;
            case AlgebraTag::LCal: {
                std::size_t d = pres_->d();
                for_each_nonneg_degree(d, policy_.bound + 1, [&](const LatticePoint& p) {
                    if (!p.is_zero()) out.push_back({BasisSymbol::Kind::XD, p, {}, 0});
                });
                auto reps = pres_->gamma_representatives();
                for_each_nonneg_degree(d, policy_.bound, [&](const LatticePoint& l) {
                    for (const auto& s : reps) out.push_back({BasisSymbol::Kind::XT, l, s, 0});
                });
                break;
            }
            case AlgebraTag::GlN:
                for (const auto& n : pres_->gamma_representatives())
                    out.push_back({BasisSymbol::Kind::GlnX, n, {}, 0});
                break;
            case AlgebraTag::GlDGamma:
                for (std::size_t i = 0; i < dim_; ++i)
                    out.push_back({BasisSymbol::Kind::EGamma, {}, {}, static_cast<long>(i)});
                break;
        }
        return out;
    }

    /// Z-degree of an L symbol: deg(x_i) = 1, deg(d_gamma) = -1.
    static long z_degree(const BasisSymbol& s) {
        switch (s.kind) {
            case BasisSymbol::Kind::XD: return s.a.degree() - 1;
            case BasisSymbol::Kind::XT: return s.a.degree();
            default: throw std::invalid_argument("Z-degree defined for L symbols only");
        }
    }

    LieElement bracket_basis(const BasisSymbol& x, const BasisSymbol& y) const {
        switch (tag_) {
            case AlgebraTag::Solenoidal: return bracket_solenoidal(x, y);
            case AlgebraTag::Wmu: return bracket_wmu(x, y);
            case AlgebraTag::Virp: return bracket_virp(x, y);
            case AlgebraTag::LCal: return bracket_lcal(x, y);
            case AlgebraTag::GlN: return bracket_gln(x, y);
            case AlgebraTag::GlDGamma: return bracket_gldg(x, y);
        }
        throw std::logic_error("unreachable");
    }

private:
    LieAlgebra(AlgebraTag tag, TruncationPolicy policy) : tag_(tag), policy_(policy) {}

    void require_in_window(const BasisSymbol& s) const {
        switch (tag_) {
            case AlgebraTag::Solenoidal:
            case AlgebraTag::Wmu:
                if (s.a.norm_inf() > policy_.bound) throw TruncationError(s.str());
                break;
            case AlgebraTag::Virp:
                if (s.kind != BasisSymbol::Kind::VirC && std::abs(s.idx) > policy_.bound)
                    throw TruncationError(s.str());
                break;
            case AlgebraTag::LCal:
                if (z_degree(s) > policy_.bound) throw TruncationError(s.str());
                break;
            case AlgebraTag::GlN:
            case AlgebraTag::GlDGamma: break;
        }
    }

    LieElement make(const BasisSymbol& s, const SymbolicScalar& c) const {
        LieElement r(tag_);
        if (c.is_zero()) return r;
        require_in_window(s);
        r.add(s, c);
        return r;
    }

    LieElement bracket_solenoidal(const BasisSymbol& x, const BasisSymbol& y) const {
        const auto& p = *pres_;
        const LatticePoint &m = x.a, &n = y.a;
        bool mr = p.in_radical(m), nr = p.in_radical(n);
        BasisSymbol out{BasisSymbol::Kind::L, m + n, {}, 0};
        if (mr && nr) return make(out, inner_product(gamma_, n - m));
        if (mr) return make(out, inner_product(gamma_, n));
        if (nr) return make(out, -inner_product(gamma_, m));
        return make(out, SymbolicScalar(p.sigma_skew(m, n)));
    }

    LieElement bracket_wmu(const BasisSymbol& x, const BasisSymbol& y) const {
        BasisSymbol out{BasisSymbol::Kind::WField, x.a + y.a, {}, 0};
        return make(out, inner_product(mu_, y.a - x.a));
    }

    LieElement bracket_virp(const BasisSymbol& x, const BasisSymbol& y) const {
        using K = BasisSymbol::Kind;
        if (x.kind == K::VirC || y.kind == K::VirC) return LieElement(tag_);
        long m = x.idx, n = y.idx;
        if (x.kind == K::VirD && y.kind == K::VirD) {
            LieElement r = make({K::VirD, {}, {}, m + n}, SymbolicScalar(Rational(n - m)));
            if (m + n == 0) {
                long q = m / p_;
                Rational c = Rational(q * q * q - q) / 12;
                r.add({K::VirC, {}, {}, 0}, SymbolicScalar(c));
            }
            return r;
        }
        if (x.kind == K::VirD && y.kind == K::VirX)
            return make({K::VirX, {}, {}, m + n}, SymbolicScalar(Rational(n)));
        if (x.kind == K::VirX && y.kind == K::VirD)
            return make({K::VirX, {}, {}, m + n}, SymbolicScalar(Rational(-m)));
        // two x^s symbols: central result, canonical index min(r mod p, p - r mod p)
        if (m + n != 0) return LieElement(tag_);
        long rbar = ((m % p_) + p_) % p_;
        long canonical = std::min(rbar, p_ - rbar);
        return LieElement(tag_, {K::VirC, {}, {}, canonical}, SymbolicScalar(Rational(m)));
    }

    LieElement bracket_lcal(const BasisSymbol& x, const BasisSymbol& y) const {
        using K = BasisSymbol::Kind;
        const auto& p = *pres_;
        std::size_t d = p.d();
        if (x.kind == K::XD && y.kind == K::XD) {
            LieElement r(tag_);
            for (std::size_t i = 0; i < d; ++i) {
                long diff = y.a[i] - x.a[i];
                if (diff == 0) continue;
                LatticePoint e = x.a + y.a - LatticePoint::unit(d, i);
                r.add(make({K::XD, e, {}, 0}, SymbolicScalar::gamma(i) * SymbolicScalar(Rational(diff))));
            }
            return r;
        }
        if (x.kind == K::XD && y.kind == K::XT) return lcal_mixed(x, y, false);
        if (x.kind == K::XT && y.kind == K::XD) return lcal_mixed(y, x, true);
        // XT with XT
        LieElement r(tag_);
        Cyclotomic c = p.sigma_skew(x.b, y.b);
        if (c.is_zero()) return r;
        r.add(make({K::XT, x.a + y.a, p.gamma_class(x.b + y.b), 0}, SymbolicScalar(c)));
        return r;
    }

    LieElement lcal_mixed(const BasisSymbol& xd, const BasisSymbol& xt, bool flipped) const {
        using K = BasisSymbol::Kind;
        std::size_t d = pres_->d();
        LieElement r(tag_);
        SymbolicScalar sign(flipped ? -1 : 1);
        for (std::size_t i = 0; i < d; ++i) {
            if (xt.a[i] == 0) continue;
            LatticePoint e = xd.a + xt.a - LatticePoint::unit(d, i);
            r.add(make({K::XT, e, xt.b, 0},
                       sign * SymbolicScalar::gamma(i) * SymbolicScalar(Rational(xt.a[i]))));
        }
        r.add(make({K::XT, xd.a + xt.a, xt.b, 0}, sign * inner_product(gamma_, xt.b)));
        return r;
    }

    LieElement bracket_gln(const BasisSymbol& x, const BasisSymbol& y) const {
        const auto& p = *pres_;
        Cyclotomic c = p.sigma_skew(x.a, y.a);
        if (c.is_zero()) return LieElement(tag_);
        return LieElement(tag_, {BasisSymbol::Kind::GlnX, p.gamma_class(x.a + y.a), {}, 0}, SymbolicScalar(c));
    }

    LieElement bracket_gldg(const BasisSymbol& x, const BasisSymbol& y) const {
        // [e_i g^T, e_j g^T] = g_j e_i g^T - g_i e_j g^T
        LieElement r(tag_);
        r.add(x, SymbolicScalar::gamma(static_cast<std::size_t>(y.idx)));
        r.add(y, -SymbolicScalar::gamma(static_cast<std::size_t>(x.idx)));
        return r;
    }

    AlgebraTag tag_;
    TruncationPolicy policy_;
    std::optional<TorusPresentation> pres_;
    std::size_t dim_ = 0;
    std::vector<SymbolicScalar> mu_, gamma_;
    long p_ = 1;
};

/// Antisymmetry and Jacobi on window basis pairs/triples, exactly. Nested
/// brackets run in a widened copy so the window never rejects a result the
/// identity needs. Exhaustive below sample_count, seeded sampling above.
inline VerifierReport verify_lie_axioms(const LieAlgebra& algebra, std::size_t sample_count = 200000,
                                        std::uint64_t seed = 0) {
    VerifierReport rep;
    rep.subject = tag_name(algebra.tag()) + " Lie axioms";
    LieAlgebra wide = algebra.widened(4);
    auto basis = algebra.window_basis();
    std::size_t nb = basis.size();

    auto check_pair = [&](std::size_t i, std::size_t j) {
        LieElement xy = wide.bracket_basis(basis[i], basis[j]);
        LieElement yx = wide.bracket_basis(basis[j], basis[i]);
        if (!(xy + yx).is_zero())
            rep.violation("antisymmetry fails at [" + basis[i].str() + "," + basis[j].str() + "]");
        ++rep.checked;
    };
    auto check_triple = [&](std::size_t i, std::size_t j, std::size_t k) {
        LieElement sum(algebra.tag());
        const BasisSymbol &a = basis[i], &b = basis[j], &c = basis[k];
        sum.add(wide.bracket(LieElement(algebra.tag(), a), wide.bracket_basis(b, c)));
        sum.add(wide.bracket(LieElement(algebra.tag(), b), wide.bracket_basis(c, a)));
        sum.add(wide.bracket(LieElement(algebra.tag(), c), wide.bracket_basis(a, b)));
        if (!sum.is_zero())
            rep.violation("Jacobi fails at (" + a.str() + "," + b.str() + "," + c.str() + ")");
        ++rep.checked;
    };

    std::size_t pair_total = nb * nb, triple_total = nb * nb * nb;
    if (pair_total + triple_total <= sample_count) {
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = i; j < nb; ++j) check_pair(i, j);
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = i; j < nb; ++j)
                for (std::size_t k = j; k < nb; ++k) check_triple(i, j, k);
        rep.details["mode"] = "exhaustive";
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, nb - 1);
        std::size_t budget = sample_count;
        for (std::size_t t = 0; t < budget / 4; ++t) check_pair(pick(rng), pick(rng));
        for (std::size_t t = 0; t < budget - budget / 4; ++t) check_triple(pick(rng), pick(rng), pick(rng));
        rep.details["mode"] = "sampled";
        rep.details["seed"] = seed;
    }
    rep.details["basis_size"] = nb;
    return rep;
}

/// Image of L_m (m in R) under the isomorphism g_R -> W_mu, mu = B gamma.
struct WmuImage {
    LatticePoint n;                  // m = B n
    std::vector<SymbolicScalar> mu;  // B gamma
};

inline WmuImage subalgebra_wmu_iso(const TorusPresentation& p, const LatticePoint& m) {
    if (!p.in_radical(m)) throw std::invalid_argument("point not in the radical R");
    WmuImage img;
    img.n = LatticePoint(p.d());
    for (std::size_t j = 0; j < p.d(); ++j) img.n[j] = m[j] / p.radical_scale(j);
    for (std::size_t j = 0; j < p.d(); ++j)
        img.mu.push_back(SymbolicScalar(Rational(p.radical_scale(j))) * SymbolicScalar::gamma(j));
    return img;
}

/// Checks that the iso of subalgebra_wmu_iso is bracket-preserving on all
/// radical pairs of the window.
inline VerifierReport verify_wmu_iso(const TorusPresentation& p, long bound) {
    VerifierReport rep;
    rep.subject = "g_R ~ W_mu isomorphism";
    LieAlgebra g = LieAlgebra::solenoidal(p, TruncationPolicy(bound)).widened(4);
    std::vector<SymbolicScalar> mu;
    for (std::size_t j = 0; j < p.d(); ++j)
        mu.push_back(SymbolicScalar(Rational(p.radical_scale(j))) * SymbolicScalar::gamma(j));
    LieAlgebra w = LieAlgebra::w_mu(p.d(), mu, TruncationPolicy(4 * bound));

    std::vector<LatticePoint> radical_points;
    for_each_in_box(p.d(), bound, [&](const LatticePoint& m) {
        if (p.in_radical(m)) radical_points.push_back(m);
    });
    for (const auto& m1 : radical_points)
        for (const auto& m2 : radical_points) {
            LieElement lhs = g.bracket_basis({BasisSymbol::Kind::L, m1, {}, 0}, {BasisSymbol::Kind::L, m2, {}, 0});
            // push lhs through the iso
            LieElement mapped(AlgebraTag::Wmu);
            for (auto& [s, c] : lhs.terms())
                mapped.add({BasisSymbol::Kind::WField, subalgebra_wmu_iso(p, s.a).n, {}, 0}, c);
            LieElement rhs = w.bracket_basis({BasisSymbol::Kind::WField, subalgebra_wmu_iso(p, m1).n, {}, 0},
                                             {BasisSymbol::Kind::WField, subalgebra_wmu_iso(p, m2).n, {}, 0});
            if (!(mapped == rhs))
                rep.violation("iso not bracket-preserving at " + m1.str() + "," + m2.str());
            ++rep.checked;
        }
    return rep;
}

namespace detail {

/// Index map for LinearSpan coordinates over L symbols.
class SymbolIndexer {
public:
    std::size_t index(const BasisSymbol& s) {
        auto it = map_.find(s);
        if (it != map_.end()) return it->second;
        std::size_t id = map_.size();
        map_.emplace(s, id);
        return id;
    }
    std::map<std::size_t, SymbolicScalar> vectorize(const LieElement& e) {
        std::map<std::size_t, SymbolicScalar> v;
        for (auto& [s, c] : e.terms()) v[index(s)] = c;
        return v;
    }

private:
    std::map<BasisSymbol, std::size_t> map_;
};

}  // namespace detail

/// [L, L_+] subset L_+ on window pairs, plus the degree-0 commutator shape of
/// the x-part: deg-0 span of [L_x, L_x] equals the span of [L_x0, L_x0].
inline VerifierReport l_plus_ideal_check(const LieAlgebra& lcal) {
    if (lcal.tag() != AlgebraTag::LCal) throw std::invalid_argument("expects the algebra L");
    VerifierReport rep;
    rep.subject = "L_+ ideal";
    LieAlgebra wide = lcal.widened(4);
    auto basis = lcal.window_basis();
    for (const auto& x : basis)
        for (const auto& y : basis) {
            if (LieAlgebra::z_degree(y) < 1) continue;
            LieElement br = wide.bracket_basis(x, y);
            for (auto& [s, c] : br.terms())
                if (LieAlgebra::z_degree(s) < 1)
                    rep.violation("[L,L_+] leaves L_+ at [" + x.str() + "," + y.str() + "]");
            ++rep.checked;
        }

    // Theorem-4.1(1)-style window check on the x-part
    detail::SymbolIndexer idx;
    LinearSpan<SymbolicScalar> deg0_of_all, deg0_of_level0;
    std::vector<BasisSymbol> xd;
    for (const auto& s : basis)
        if (s.kind == BasisSymbol::Kind::XD) xd.push_back(s);
    for (const auto& x : xd)
        for (const auto& y : xd) {
            LieElement br = wide.bracket_basis(x, y);
            LieElement deg0(AlgebraTag::LCal);
            for (auto& [s, c] : br.terms())
                if (LieAlgebra::z_degree(s) == 0) deg0.add(s, c);
            if (!deg0.is_zero()) {
                deg0_of_all.insert(idx.vectorize(deg0));
                if (LieAlgebra::z_degree(x) == 0 && LieAlgebra::z_degree(y) == 0)
                    deg0_of_level0.insert(idx.vectorize(deg0));
            }
            ++rep.checked;
        }
    if (deg0_of_all.dimension() != deg0_of_level0.dimension())
        rep.violation("degree-0 part of [L_x,L_x] exceeds [L_x0,L_x0] on the window");
    rep.details["deg0_span_dim"] = deg0_of_all.dimension();
    return rep;
}

/// The quotient map L/L_+ -> gl_{d,gamma} + gl_N on degree-0 pairs, plus
/// solvability of gl_{d,gamma} via its derived series.
inline VerifierReport quotient_iso_check(const LieAlgebra& lcal) {
    if (lcal.tag() != AlgebraTag::LCal) throw std::invalid_argument("expects the algebra L");
    VerifierReport rep;
    rep.subject = "L/L_+ ~ gl_d_gamma + gl_N";
    const TorusPresentation& p = lcal.presentation();
    std::size_t d = p.d();
    LieAlgebra wide = lcal.widened(4);
    LieAlgebra gln = LieAlgebra::gl_n(p);
    LieAlgebra gldg = LieAlgebra::gl_d_gamma(d);

    // degree-0 basis of L: x_i d_gamma and tbar^s
    std::vector<BasisSymbol> deg0;
    for (std::size_t i = 0; i < d; ++i)
        deg0.push_back({BasisSymbol::Kind::XD, LatticePoint::unit(d, i), {}, 0});
    for (const auto& s : p.gamma_representatives())
        deg0.push_back({BasisSymbol::Kind::XT, LatticePoint(d), s, 0});

    auto project = [&](const LieElement& e) {
        // image of (e mod L_+) under the iso, as a gl_{d,gamma} part and a gl_N part
        LieElement hd(AlgebraTag::GlDGamma), hn(AlgebraTag::GlN);
        for (auto& [s, c] : e.terms()) {
            if (LieAlgebra::z_degree(s) >= 1) continue;
            if (s.kind == BasisSymbol::Kind::XD) {
                for (std::size_t i = 0; i < d; ++i)
                    if (s.a[i] == 1) hd.add({BasisSymbol::Kind::EGamma, {}, {}, static_cast<long>(i)}, c);
            } else {
                hn.add({BasisSymbol::Kind::GlnX, s.b, {}, 0}, c);
            }
        }
        return std::make_pair(hd, hn);
    };
    auto image_of_symbol = [&](const BasisSymbol& s) { return project(LieElement(AlgebraTag::LCal, s)); };

    for (const auto& x : deg0)
        for (const auto& y : deg0) {
            auto [bd, bn] = project(wide.bracket_basis(x, y));
            auto [xd, xn] = image_of_symbol(x);
            auto [yd, yn] = image_of_symbol(y);
            LieElement want_d = gldg.bracket(xd, yd);
            LieElement want_n = gln.bracket(xn, yn);
            if (!(bd == want_d) || !(bn == want_n))
                rep.violation("quotient map not a homomorphism at [" + x.str() + "," + y.str() + "]");
            ++rep.checked;
        }

    // derived series of gl_{d,gamma}: brackets of brackets vanish after one step
    std::vector<LieElement> derived1;
    auto egb = gldg.window_basis();
    for (const auto& x : egb)
        for (const auto& y : egb) {
            LieElement b = gldg.bracket_basis(x, y);
            if (!b.is_zero()) derived1.push_back(b);
        }
    std::size_t length = derived1.empty() ? 1 : 2;
    for (const auto& u : derived1)
        for (const auto& v : derived1)
            if (!gldg.bracket(u, v).is_zero()) {
                rep.violation("gl_d_gamma derived algebra is not abelian");
                length = 3;
            }
    rep.details["derived_series_length"] = length;
    return rep;
}

}  // namespace solenoid

#endif
