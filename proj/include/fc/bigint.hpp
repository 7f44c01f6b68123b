#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fc {

// Arbitrary-precision signed integer, sign-magnitude with base 2^32 limbs.
// Magnitude has no leading zero limbs; zero is an empty limb vector with
// non-negative sign.
class BigInt {
  public:
    BigInt() = default;
    BigInt(std::int64_t v);
    static BigInt from_decimal(const std::string& s);

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return negative_; }
    int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    // Truncated division (quotient rounds toward zero, remainder has the
    // sign of the dividend). b must be nonzero.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    static BigInt gcd(BigInt a, BigInt b);

    bool operator==(const BigInt& o) const {
        return negative_ == o.negative_ && limbs_ == o.limbs_;
    }
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;
    bool operator<=(const BigInt& o) const { return *this < o || *this == o; }
    bool operator>(const BigInt& o) const { return o < *this; }
    bool operator>=(const BigInt& o) const { return o <= *this; }

    std::string to_decimal() const;

    bool fits_int64() const;
    std::int64_t to_int64() const;  // caller checks fits_int64

  private:
    // |a| vs |b|
    static int cmp_mag(const std::vector<std::uint32_t>& a,
                       const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static void divmod_mag(const std::vector<std::uint32_t>& a,
                           const std::vector<std::uint32_t>& b,
                           std::vector<std::uint32_t>& q,
                           std::vector<std::uint32_t>& r);
    void trim();

    bool negative_ = false;
    std::vector<std::uint32_t> limbs_;
};

}  // namespace fc
