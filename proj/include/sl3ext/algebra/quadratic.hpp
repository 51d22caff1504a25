#pragma once

#include "sl3ext/algebra/rational.hpp"

#include <ostream>
#include <string>

namespace sl3ext {

namespace detail {
constexpr bool squarefree(long n) {
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}
}  // namespace detail

/// a + b*sqrt(D) in the field Q(sqrt(D)); D must be a positive squarefree integer.
template <long D>
class Quadratic {
    static_assert(D > 1 && detail::squarefree(D), "discriminant must be squarefree and > 1");

public:
    static constexpr long d = D;

    Quadratic() = default;
    Quadratic(int a) : a_(a) {}
    Quadratic(long a) : a_(a) {}
    Quadratic(Rational a) : a_(std::move(a)) {}
    Quadratic(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    static Quadratic sqrt_d() { return Quadratic(Rational(0), Rational(1)); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_one() const { return a_.is_one() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    Rational norm() const { return a_ * a_ - Rational(D) * b_ * b_; }
    Quadratic conjugate() const { return Quadratic(a_, -b_); }
    Quadratic inverse() const {
        Rational n = norm();
        if (n.is_zero()) throw std::domain_error("Quadratic: inverse of zero");
        return Quadratic(a_ / n, -b_ / n);
    }

    std::string str() const {
        if (b_.is_zero()) return a_.str();
        std::string s = a_.is_zero() ? "" : a_.str() + (b_.sign() > 0 ? " + " : " - ");
        Rational bb = a_.is_zero() ? b_ : b_.abs();
        s += (bb.is_one() ? "" : bb == Rational(-1) ? "-" : bb.str() + "*") + "sqrt(" + std::to_string(D) + ")";
        return s;
    }

    Quadratic& operator+=(const Quadratic& o) { a_ += o.a_; b_ += o.b_; return *this; }
    Quadratic& operator-=(const Quadratic& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
    Quadratic& operator*=(const Quadratic& o) {
        Rational a = a_ * o.a_ + Rational(D) * b_ * o.b_;
        b_ = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(a);
        return *this;
    }
    Quadratic& operator/=(const Quadratic& o) { return *this *= o.inverse(); }
    Quadratic operator-() const { return Quadratic(-a_, -b_); }

    friend Quadratic operator+(Quadratic x, const Quadratic& y) { return x += y; }
    friend Quadratic operator-(Quadratic x, const Quadratic& y) { return x -= y; }
    friend Quadratic operator*(Quadratic x, const Quadratic& y) { return x *= y; }
    friend Quadratic operator/(Quadratic x, const Quadratic& y) { return x /= y; }
    friend bool operator==(const Quadratic& x, const Quadratic& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend std::ostream& operator<<(std::ostream& os, const Quadratic& q) { return os << q.str(); }

private:
    Rational a_{0};
    Rational b_{0};
};

using Q10 = Quadratic<10>;

}  // namespace sl3ext
