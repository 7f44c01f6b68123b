#pragma once

#include <string>

#include "fc/bigint.hpp"

namespace fc {

// Element of Q or Q(i): (re + im*i)/den with den > 0 and gcd(re, im, den) = 1.
// Purely rational values keep im = 0, so one type serves both ground fields.
class Scalar {
  public:
    Scalar() : re_(0), im_(0), den_(1) {}
    Scalar(std::int64_t v) : re_(v), im_(0), den_(1) {}
    Scalar(BigInt re, BigInt im, BigInt den);

    static Scalar rational(std::int64_t num, std::int64_t den);
    static Scalar i() { return Scalar(BigInt(0), BigInt(1), BigInt(1)); }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return im_.is_zero() && re_ == den_; }
    bool is_real() const { return im_.is_zero(); }

    const BigInt& re_num() const { return re_; }
    const BigInt& im_num() const { return im_; }
    const BigInt& den() const { return den_; }

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const {
        return re_ == o.re_ && im_ == o.im_ && den_ == o.den_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // "a/b", "-a", or "(a/b+c/d*i)" for non-real values.
    std::string to_string() const;

  private:
    void normalize();
    BigInt re_, im_, den_;
};

}  // namespace fc
