#include "fc/scalar.hpp"

#include <stdexcept>

namespace fc {

Scalar::Scalar(BigInt re, BigInt im, BigInt den)
    : re_(std::move(re)), im_(std::move(im)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Scalar: zero denominator");
    normalize();
}

Scalar Scalar::rational(std::int64_t num, std::int64_t den) {
    return Scalar(BigInt(num), BigInt(0), BigInt(den));
}

void Scalar::normalize() {
    if (den_.is_negative()) {
        den_ = -den_;
        re_ = -re_;
        im_ = -im_;
    }
    if (re_.is_zero() && im_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(BigInt::gcd(re_, im_), den_);
    if (!(g == BigInt(1))) {
        re_ = re_ / g;
        im_ = im_ / g;
        den_ = den_ / g;
    }
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.re_ = -r.re_;
    r.im_ = -r.im_;
    return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    return Scalar(a.re_ * b.den_ + b.re_ * a.den_, a.im_ * b.den_ + b.im_ * a.den_,
                  a.den_ * b.den_);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    // (x + yi)(u + vi) = (xu - yv) + (xv + yu)i
    return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_,
                  a.den_ * b.den_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("Scalar: inverse of zero");
    // 1 / ((x + yi)/d) = d(x - yi) / (x^2 + y^2)
    BigInt n2 = re_ * re_ + im_ * im_;
    return Scalar(den_ * re_, -(den_ * im_), n2);
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

std::string Scalar::to_string() const {
    auto frac = [this](const BigInt& n) {
        BigInt g = BigInt::gcd(n, den_);
        if (g.is_zero()) g = BigInt(1);
        BigInt nn = n / g, dd = den_ / g;
        std::string s = nn.to_decimal();
        if (!(dd == BigInt(1))) s += "/" + dd.to_decimal();
        return s;
    };
    if (im_.is_zero()) return frac(re_);
    std::string s = "(" + frac(re_);
    if (!im_.is_negative()) s += "+";
    s += frac(im_) + "*i)";
    return s;
}

}  // namespace fc
