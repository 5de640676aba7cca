#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace entrolab {

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator; all arithmetic is exact (arbitrary precision).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // implicit: integer coefficients read naturally
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }

    /// Parses "p" or "p/q" (arbitrary precision, optional sign).
    static Rational parse(const std::string& text) {
        Rational r;
        try {
            r.v_ = mpq_class(text);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        }
        if (r.v_.get_den() == 0) throw std::invalid_argument("Rational: zero denominator in '" + text + "'");
        r.v_.canonicalize();
        return r;
    }

    /// "p" when the denominator is 1, otherwise "p/q".
    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    double to_double() const { return v_.get_d(); }
    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }

    std::string num_str() const { return v_.get_num().get_str(); }
    std::string den_str() const { return v_.get_den().get_str(); }

    /// Numerator/denominator as machine integers; throws when out of range.
    long num_long() const {
        if (!v_.get_num().fits_slong_p()) throw std::overflow_error("Rational: numerator too large");
        return v_.get_num().get_si();
    }
    long den_long() const {
        if (!v_.get_den().fits_slong_p()) throw std::overflow_error("Rational: denominator too large");
        return v_.get_den().get_si();
    }

    Rational operator-() const {
        Rational r;
        r.v_ = -v_;
        return r;
    }
    Rational& operator+=(const Rational& o) {
        v_ += o.v_;
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        v_ -= o.v_;
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        v_ *= o.v_;
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

private:
    mpq_class v_;
};

}  // namespace entrolab
