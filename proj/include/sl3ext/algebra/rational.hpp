#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sl3ext {

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(int v) : q_(static_cast<long>(v)) {}
    Rational(long v) : q_(v) {}
    Rational(long n, long d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        q_ = mpq_class(mpz_class(n), mpz_class(d));
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    Rational(const mpz_class& n, const mpz_class& d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        q_ = mpq_class(n, d);
        q_.canonicalize();
    }

    /// Accepts "n", "-n", "n/d".
    static Rational parse(std::string_view s) {
        std::string t(s);
        auto slash = t.find('/');
        auto valid_int = [](const std::string& x) {
            if (x.empty()) return false;
            std::size_t i = (x[0] == '-' || x[0] == '+') ? 1 : 0;
            if (i == x.size()) return false;
            for (; i < x.size(); ++i)
                if (x[i] < '0' || x[i] > '9') return false;
            return true;
        };
        auto strip = [](std::string x) { return (!x.empty() && x[0] == '+') ? x.substr(1) : x; };
        if (slash == std::string::npos) {
            if (!valid_int(t)) throw std::invalid_argument("not a rational: " + t);
            return Rational(mpz_class(strip(t)), mpz_class(1));
        }
        std::string n = t.substr(0, slash), d = t.substr(slash + 1);
        if (!valid_int(n) || !valid_int(d)) throw std::invalid_argument("not a rational: " + t);
        mpz_class dz(strip(d));
        if (dz == 0) throw std::invalid_argument("zero denominator: " + t);
        return Rational(mpz_class(strip(n)), dz);
    }

    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1) / q_);
    }
    Rational abs() const { return Rational(::abs(q_)); }

    /// "n" for integers, otherwise "n/d".
    std::string str() const {
        return is_integer() ? q_.get_num().get_str() : q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }
    /// Always "n/d"; the serialization form.
    std::string exact() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

inline Rational pow(const Rational& b, int e) {
    Rational base = e < 0 ? b.inverse() : b;
    Rational r(1);
    for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= base;
    return r;
}

}  // namespace sl3ext
