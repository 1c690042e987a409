#pragma once

#include <gmpxx.h>

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace bottchern {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string rational_str(const Rational& q) { return q.get_str(); }

/// Exact element of Q(i).  All arithmetic is exact; nothing is ever rounded.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational unit_i() { return GaussianRational(Rational(0), Rational(1)); }

    // (-i)^k, k >= 0; cycles with period 4
    static GaussianRational neg_i_pow(int k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return GaussianRational(1);
            case 1: return GaussianRational(Rational(0), Rational(-1));
            case 2: return GaussianRational(-1);
            default: return GaussianRational(Rational(0), Rational(1));
        }
    }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }

    GaussianRational inverse() const {
        Rational n = re_ * re_ + im_ * im_;
        if (n == 0) throw std::domain_error("GaussianRational: inverse of zero");
        return GaussianRational(re_ / n, -im_ / n);
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        return a * b.inverse();
    }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational times(const GaussianRational& s) const { return *this * s; }

    // serialized as "p/q", "P/Qi" or "p/q+P/Qi"; bit-exact across platforms
    std::string str() const {
        if (im_ == 0) return re_.get_str();
        std::ostringstream os;
        if (re_ != 0) {
            os << re_.get_str();
            if (im_ > 0) os << '+';
        }
        os << im_.get_str() << 'i';
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

private:
    Rational re_, im_;
};

}  // namespace bottchern
