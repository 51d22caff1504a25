#pragma once

#include "sl3ext/algebra/poly.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace sl3ext {

/// Functions of the form  sum_k P_k(x,y) * (xy+1)^{e_k} * exp(m_k z)  with P_k polynomial.
/// Canonical form: one term per m, with every (xy+1) factor moved out of P into the exponent.
template <class F>
class StructuredFunction {
public:
    using Poly2 = MultiPoly<F>;

    struct Term {
        Poly2 p;
        int e = 0;
    };

    static const RingPtr& ring() {
        static const RingPtr r = make_ring({"x", "y"});
        return r;
    }
    static Poly2 x() { return Poly2::var(ring(), "x"); }
    static Poly2 y() { return Poly2::var(ring(), "y"); }
    static Poly2 u() { return x() * y() + Poly2(ring(), F(1)); }

    StructuredFunction() = default;
    StructuredFunction(int c) { add(Poly2(ring(), F(c)), 0, 0); }
    StructuredFunction(const F& c) { add(Poly2(ring(), F(c)), 0, 0); }
    StructuredFunction(const Poly2& p, int e = 0, int m = 0) { add(p, e, m); }

    /// Keyed by m.
    const std::map<int, Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    StructuredFunction& operator+=(const StructuredFunction& o) {
        for (auto& [m, t] : o.terms_) add(t.p, t.e, m);
        return *this;
    }
    StructuredFunction& operator-=(const StructuredFunction& o) {
        for (auto& [m, t] : o.terms_) add(-t.p, t.e, m);
        return *this;
    }
    StructuredFunction operator-() const {
        StructuredFunction r = *this;
        for (auto& [m, t] : r.terms_) t.p = -t.p;
        return r;
    }
    friend StructuredFunction operator+(StructuredFunction a, const StructuredFunction& b) { return a += b; }
    friend StructuredFunction operator-(StructuredFunction a, const StructuredFunction& b) { return a -= b; }
    friend StructuredFunction operator*(const StructuredFunction& a, const StructuredFunction& b) {
        StructuredFunction r;
        for (auto& [ma, ta] : a.terms_)
            for (auto& [mb, tb] : b.terms_) r.add(ta.p * tb.p, ta.e + tb.e, ma + mb);
        return r;
    }
    StructuredFunction& operator*=(const StructuredFunction& o) { return *this = *this * o; }
    friend bool operator==(const StructuredFunction& a, const StructuredFunction& b) { return (a - b).is_zero(); }

    /// Partial derivative; v = 0,1,2 for x,y,z.
    StructuredFunction diff(std::size_t v) const {
        StructuredFunction r;
        for (auto& [m, t] : terms_) {
            switch (v) {
                case 0:  // d/dx[P u^e] = (P_x u + e y P) u^{e-1}
                    r.add(t.p.diff(0) * u() + Poly2(ring(), F(t.e)) * y() * t.p, t.e - 1, m);
                    break;
                case 1:
                    r.add(t.p.diff(1) * u() + Poly2(ring(), F(t.e)) * x() * t.p, t.e - 1, m);
                    break;
                case 2:
                    if (m != 0) r.add(Poly2(ring(), F(m)) * t.p, t.e, m);
                    break;
                default:
                    throw std::invalid_argument("StructuredFunction: variable index out of range");
            }
        }
        return r;
    }

    /// Value at a point with xy+1 != 0 and z = 0 (exp factors become 1).
    F evaluate_z0(const F& xv, const F& yv) const {
        F uv = xv * yv + F(1);
        if (uv.is_zero()) throw std::domain_error("StructuredFunction: evaluation on xy+1=0");
        F s(0);
        for (auto& [m, t] : terms_) {
            F pv = t.p.evaluate({{"x", xv}, {"y", yv}}).constant_term();
            F f(1);
            F base = t.e < 0 ? F(1) / uv : uv;
            for (int i = 0; i < (t.e < 0 ? -t.e : t.e); ++i) f = f * base;
            s += pv * f;
        }
        return s;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [m, t] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + t.p.str() + ")";
            if (t.e != 0) s += "*(x*y+1)^" + (t.e < 0 ? "(" + std::to_string(t.e) + ")" : std::to_string(t.e));
            if (m != 0) s += "*exp(" + std::to_string(m) + "*z)";
        }
        return s;
    }

private:
    void add(const Poly2& p0, int e, int m) {
        if (p0.is_zero()) return;
        Poly2 p = Poly2(ring(), F(0)) + p0;  // ring-free constants adopt {x, y}
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            reduce(terms_.emplace(m, Term{p, e}).first->second);
            return;
        }
        Term& t = it->second;
        if (e >= t.e) t.p += p * u().pow(e - t.e);
        else {
            t.p = t.p * u().pow(t.e - e) + p;
            t.e = e;
        }
        if (t.p.is_zero()) terms_.erase(it);
        else reduce(t);
    }
    static void reduce(Term& t) {
        while (true) {
            auto q = divide_by_u(t.p);
            if (!q) return;
            t.p = std::move(*q);
            t.e += 1;
        }
    }
    // exact division by xy+1, or nullopt
    static std::optional<Poly2> divide_by_u(Poly2 p) {
        Poly2 q(ring(), F(0));
        const Poly2 uu = u();
        int guard = 0;
        while (!p.is_zero()) {
            // leading term in grlex must be divisible by xy
            auto& [m, c] = *p.terms().begin();
            if (m[0] < 1 || m[1] < 1) return std::nullopt;
            Monomial mm = m;
            mm[0] -= 1;
            mm[1] -= 1;
            Poly2 step = Poly2::monomial(ring(), mm, c);
            q += step;
            p -= step * uu;
            if (++guard > 100000) throw std::logic_error("StructuredFunction: division did not terminate");
        }
        return q;
    }

    std::map<int, Term> terms_;
};

}  // namespace sl3ext
