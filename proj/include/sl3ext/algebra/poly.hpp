#pragma once

#include "sl3ext/algebra/matrix.hpp"
#include "sl3ext/algebra/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sl3ext {

/// Ordered list of indeterminate names. Shared, immutable.
class PolyRing {
public:
    explicit PolyRing(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (!index_.emplace(names_[i], i).second) throw std::invalid_argument("PolyRing: duplicate name " + names_[i]);
    }
    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> find(std::string_view n) const {
        auto it = index_.find(std::string(n));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t index(std::string_view n) const {
        auto i = find(n);
        if (!i) throw std::invalid_argument("PolyRing: unknown indeterminate " + std::string(n));
        return *i;
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(std::vector<std::string> names) {
    return std::make_shared<const PolyRing>(std::move(names));
}

/// Exponent vector; negative entries allowed (Laurent monomials).
using Monomial = std::vector<int>;

/// Graded lexicographic order, largest first: total degree, then lex by declared variable order.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        long da = 0, db = 0;
        for (int x : a) da += x;
        for (int x : b) db += x;
        if (da != db) return da > db;
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return a.size() > b.size();
    }
};

/// Multivariate Laurent polynomial over a field F with named indeterminates.
/// A default-constructed value is a ring-free constant; it adopts the ring of whatever it meets.
template <class F>
class MultiPoly {
public:
    using Terms = std::map<Monomial, F, GrlexGreater>;

    MultiPoly() = default;
    MultiPoly(int c) { set_constant(F(c)); }
    MultiPoly(long c) { set_constant(F(c)); }
    MultiPoly(const F& c) { set_constant(c); }
    MultiPoly(RingPtr ring, const F& c) : ring_(std::move(ring)) { set_constant(c); }

    static MultiPoly var(const RingPtr& ring, std::string_view name) {
        return monomial(ring, unit(ring, ring->index(name)), F(1));
    }
    static MultiPoly monomial(const RingPtr& ring, Monomial e, const F& c) {
        if (e.size() != ring->size()) throw std::invalid_argument("MultiPoly: exponent length mismatch");
        MultiPoly p;
        p.ring_ = ring;
        if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && is_const_key(terms_.begin()->first));
    }
    F constant_term() const {
        for (auto& [m, c] : terms_)
            if (is_const_key(m)) return c;
        return F(0);
    }
    /// Value of a constant polynomial; throws otherwise.
    F constant_value() const {
        if (!is_constant()) throw std::domain_error("MultiPoly: not a constant: " + str());
        return constant_term();
    }

    int total_degree() const {
        if (terms_.empty()) return 0;
        int d = 0;
        for (int x : terms_.begin()->first) d += x;
        return d;
    }
    int degree_in(std::size_t v) const {
        int d = 0;
        bool first = true;
        for (auto& [m, c] : terms_) {
            int e = v < m.size() ? m[v] : 0;
            if (first || e > d) d = e;
            first = false;
        }
        return d;
    }
    int min_degree_in(std::size_t v) const {
        int d = 0;
        bool first = true;
        for (auto& [m, c] : terms_) {
            int e = v < m.size() ? m[v] : 0;
            if (first || e < d) d = e;
            first = false;
        }
        return d;
    }
    bool involves(std::size_t v) const {
        for (auto& [m, c] : terms_)
            if (v < m.size() && m[v] != 0) return true;
        return false;
    }
    std::set<std::size_t> variables() const {
        std::set<std::size_t> s;
        for (auto& [m, c] : terms_)
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) s.insert(i);
        return s;
    }

    /// Coefficient of v^k, as a polynomial not involving v.
    MultiPoly coefficient(std::size_t v, int k) const {
        MultiPoly r;
        r.ring_ = ring_;
        for (auto& [m, c] : terms_) {
            int e = v < m.size() ? m[v] : 0;
            if (e != k) continue;
            Monomial mm = m;
            if (v < mm.size()) mm[v] = 0;
            r.terms_.emplace(std::move(mm), c);
        }
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return add_scaled(o, F(1)); }
    MultiPoly& operator-=(const MultiPoly& o) { return add_scaled(o, F(-1)); }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        RingPtr ring = common_ring(a, b);
        MultiPoly r;
        r.ring_ = ring;
        if (a.is_zero() || b.is_zero()) return r;
        std::size_t n = ring ? ring->size() : 0;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) {
                Monomial m(n, 0);
                for (std::size_t i = 0; i < n; ++i) m[i] = at(ma, i) + at(mb, i);
                F c = ca * cb;
                auto it = r.terms_.find(m);
                if (it == r.terms_.end()) r.terms_.emplace(std::move(m), std::move(c));
                else {
                    it->second += c;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        return r;
    }
    friend MultiPoly operator/(const MultiPoly& a, const F& s) {
        if (s.is_zero()) throw std::domain_error("MultiPoly: division by zero");
        MultiPoly r = a;
        for (auto& [m, c] : r.terms_) c = c / s;
        return r;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return (a - b).is_zero(); }

    /// Non-negative powers always; negative powers only for single-term polynomials.
    MultiPoly pow(int k) const {
        if (k < 0) {
            if (terms_.size() != 1) throw std::domain_error("MultiPoly: negative power of non-monomial " + str());
            auto& [m, c] = *terms_.begin();
            Monomial mm = m;
            for (int& x : mm) x = -x;
            MultiPoly inv;
            inv.ring_ = ring_;
            inv.terms_.emplace(std::move(mm), F(1) / c);
            return inv.pow(-k);
        }
        MultiPoly r(ring_, F(1)), b = *this;
        while (k > 0) {
            if (k & 1) r = r * b;
            k >>= 1;
            if (k) b = b * b;
        }
        return r;
    }

    MultiPoly diff(std::size_t v) const {
        MultiPoly r;
        r.ring_ = ring_;
        for (auto& [m, c] : terms_) {
            int e = at(m, v);
            if (e == 0) continue;
            Monomial mm = m;
            mm[v] -= 1;
            r.terms_.emplace(std::move(mm), c * F(e));
        }
        return r;
    }
    MultiPoly diff(std::string_view name) const { return diff(ring_->index(name)); }

    /// Substitute v := value. Negative powers of v require a single-term value.
    MultiPoly substitute(std::size_t v, const MultiPoly& value) const {
        MultiPoly r;
        r.ring_ = common_ring(*this, value);
        std::map<int, MultiPoly> powers;
        for (auto& [m, c] : terms_) {
            int e = at(m, v);
            if (e == 0) {
                r += monomial_of(m, c);
                continue;
            }
            auto it = powers.find(e);
            if (it == powers.end()) it = powers.emplace(e, value.pow(e)).first;
            Monomial mm = m;
            mm[v] = 0;
            r += monomial_of(mm, c) * it->second;
        }
        return r;
    }
    MultiPoly substitute(std::string_view name, const MultiPoly& value) const {
        return substitute(ring_->index(name), value);
    }
    /// Sequential substitution in map order.
    MultiPoly substitute(const std::map<std::string, MultiPoly>& subs) const {
        MultiPoly r = *this;
        for (auto& [n, val] : subs)
            if (r.ring_ && r.ring_->find(n)) r = r.substitute(r.ring_->index(n), val);
        return r;
    }
    /// Substitute numeric values for some indeterminates (simultaneous).
    MultiPoly evaluate(const std::map<std::string, F>& values) const {
        if (!ring_) return *this;
        std::vector<std::optional<F>> val(ring_->size());
        for (auto& [n, x] : values)
            if (auto i = ring_->find(n)) val[*i] = x;
        MultiPoly r;
        r.ring_ = ring_;
        for (auto& [m, c] : terms_) {
            F cc = c;
            Monomial mm = m;
            for (std::size_t i = 0; i < mm.size(); ++i)
                if (val[i] && mm[i] != 0) {
                    cc = cc * ipow(*val[i], mm[i]);
                    mm[i] = 0;
                }
            r += monomial_of(mm, cc);
        }
        return r;
    }

    /// Re-express over another ring containing all used indeterminates (by name).
    MultiPoly rebase(const RingPtr& target) const {
        MultiPoly r;
        r.ring_ = target;
        for (auto& [m, c] : terms_) {
            Monomial mm(target->size(), 0);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) mm[target->index(ring_->name(i))] = m[i];
            r.terms_.emplace(std::move(mm), c);
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [m, c] : terms_) {
            std::string cs = scalar_str(c);
            bool neg = !cs.empty() && cs[0] == '-' && cs.find_first_of("+ ", 1) == std::string::npos;
            if (neg) cs = cs.substr(1);
            bool compound = cs.find_first_of("+ ") != std::string::npos;
            if (compound) cs = "(" + cs + ")";
            std::string ms;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (!ms.empty()) ms += "*";
                ms += ring_->name(i);
                if (m[i] != 1) ms += "^" + (m[i] < 0 ? "(" + std::to_string(m[i]) + ")" : std::to_string(m[i]));
            }
            std::string term = ms.empty() ? cs : (cs == "1" ? ms : cs + "*" + ms);
            if (first) s += (neg ? "-" : "") + term;
            else s += (neg ? " - " : " + ") + term;
            first = false;
        }
        return s;
    }

private:
    static std::string scalar_str(const F& c) { return c.str(); }
    static int at(const Monomial& m, std::size_t i) { return i < m.size() ? m[i] : 0; }
    static bool is_const_key(const Monomial& m) {
        for (int x : m)
            if (x != 0) return false;
        return true;
    }
    static Monomial unit(const RingPtr& ring, std::size_t i) {
        Monomial m(ring->size(), 0);
        m[i] = 1;
        return m;
    }
    static F ipow(const F& b, int e) {
        F base = e < 0 ? F(1) / b : b;
        F r(1);
        for (int i = 0; i < (e < 0 ? -e : e); ++i) r = r * base;
        return r;
    }
    static RingPtr common_ring(const MultiPoly& a, const MultiPoly& b) {
        if (!a.ring_) return b.ring_;
        if (!b.ring_ || a.ring_ == b.ring_) return a.ring_;
        if (a.ring_->names() != b.ring_->names()) throw std::invalid_argument("MultiPoly: incompatible rings");
        return a.ring_;
    }
    MultiPoly monomial_of(const Monomial& m, const F& c) const {
        MultiPoly r;
        r.ring_ = ring_;
        if (!c.is_zero()) r.terms_.emplace(m, c);
        return r;
    }
    void set_constant(const F& c) {
        terms_.clear();
        if (!c.is_zero()) terms_.emplace(Monomial(ring_ ? ring_->size() : 0, 0), c);
    }
    void adopt(const RingPtr& ring) {
        if (!ring || ring_ == ring) return;
        if (ring_) {
            if (ring_->names() != ring->names()) throw std::invalid_argument("MultiPoly: incompatible rings");
            ring_ = ring;
            return;
        }
        Terms t;
        for (auto& [m, c] : terms_) {
            Monomial mm(ring->size(), 0);
            for (std::size_t i = 0; i < m.size(); ++i) mm[i] = m[i];
            t.emplace(std::move(mm), c);
        }
        terms_ = std::move(t);
        ring_ = ring;
    }
    MultiPoly& add_scaled(const MultiPoly& o, const F& s) {
        RingPtr ring = common_ring(*this, o);
        adopt(ring);
        std::size_t n = ring ? ring->size() : 0;
        for (auto& [m, c] : o.terms_) {
            Monomial mm = m;
            if (mm.size() != n) mm.resize(n, 0);
            F cc = c * s;
            auto it = terms_.find(mm);
            if (it == terms_.end()) terms_.emplace(std::move(mm), std::move(cc));
            else {
                it->second += cc;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        return *this;
    }

    RingPtr ring_;
    Terms terms_;
};

using Poly = MultiPoly<Rational>;

/// det(tI - M) as a polynomial in the single indeterminate t.
template <class F>
MultiPoly<F> char_poly(const Matrix<F>& m);

}  // namespace sl3ext

#include "sl3ext/algebra/linalg.hpp"

namespace sl3ext {

template <class F>
MultiPoly<F> char_poly(const Matrix<F>& m) {
    static const RingPtr ring = make_ring({"t"});
    auto c = char_poly_coeffs(m);
    MultiPoly<F> p(ring, F(0));
    for (std::size_t k = 0; k < c.size(); ++k) p += MultiPoly<F>::monomial(ring, {static_cast<int>(k)}, c[k]);
    return p;
}

/// Evaluate a univariate polynomial at a square matrix (Horner).
template <class F>
Matrix<F> evaluate_at(const MultiPoly<F>& p, const Matrix<F>& m) {
    if (p.ring() && p.ring()->size() != 1) throw std::invalid_argument("evaluate_at: univariate polynomial expected");
    int deg = p.is_zero() ? 0 : p.degree_in(0);
    Matrix<F> r(m.rows(), m.cols());
    for (int k = deg; k >= 0; --k) {
        r = r * m;
        F c = p.ring() ? p.coefficient(0, k).constant_term() : (k == 0 ? p.constant_term() : F(0));
        for (std::size_t i = 0; i < m.rows(); ++i) r(i, i) += c;
    }
    return r;
}

}  // namespace sl3ext
