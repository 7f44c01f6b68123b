#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fc/bigint.hpp"
#include "fc/errors.hpp"
#include "fc/poly.hpp"

#include "helpers.hpp"

using namespace fc;

TEST_CASE("bigint arithmetic against native integers") {
    std::uint64_t state = 42;
    auto next = [&] {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<std::int64_t>(state >> 20) - (1ll << 43);
    };
    for (int k = 0; k < 2000; ++k) {
        std::int64_t a = next() % 100000, b = next() % 100000;
        CHECK((BigInt(a) + BigInt(b)).to_decimal() == std::to_string(a + b));
        CHECK((BigInt(a) - BigInt(b)).to_decimal() == std::to_string(a - b));
        CHECK((BigInt(a) * BigInt(b)).to_decimal() == std::to_string(a * b));
        if (b != 0) {
            CHECK((BigInt(a) / BigInt(b)).to_decimal() == std::to_string(a / b));
            CHECK((BigInt(a) % BigInt(b)).to_decimal() == std::to_string(a % b));
        }
    }
}

TEST_CASE("bigint multi-limb division") {
    BigInt a = BigInt::from_decimal("123456789012345678901234567890");
    BigInt b = BigInt::from_decimal("9876543210987654321");
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK((q * b + r) == a);
    CHECK(r.abs() < b.abs());
    CHECK(a.to_decimal() == "123456789012345678901234567890");
    CHECK(BigInt::gcd(BigInt(12 * 35), BigInt(18 * 35)) == BigInt(6 * 35));
}

TEST_CASE("scalar field laws and i^2 = -1") {
    Scalar i = Scalar::i();
    CHECK(i * i == Scalar(-1));
    Scalar half = Scalar::rational(1, 2);
    CHECK(half + half == Scalar(1));
    Scalar z = Scalar(3) + Scalar(4) * i;
    CHECK(z * z.inverse() == Scalar(1));
    CHECK(Scalar::rational(2, -4) == Scalar::rational(-1, 2));
    CHECK(Scalar::rational(-1, 2).to_string() == "-1/2");
    CHECK((half + Scalar::rational(3, 4) * i).to_string() == "(1/2+3/4*i)");
}

TEST_CASE("poly ring identities") {
    std::vector<std::string> names = {"x", "y", "z"};
    Poly x = Poly::variable(3, 0), one = Poly::constant(3, Scalar(1));
    CHECK((x + one) * (x - one) == x * x - one);
    Poly p = Poly::parse("2*x^2*y-1/3*z+1", names);
    CHECK((Poly(3) + p) == p);
    CHECK(p.to_string(names) == "2*x^2*y-1/3*z+1");
    CHECK(Poly::parse(p.to_string(names), names) == p);

    // (i*z)*(i*z) = -z^2 over Q(i)
    Poly iz = Poly::parse("i*z", names);
    CHECK(iz * iz == Poly::parse("-z^2", names));
}

TEST_CASE("poly ring axioms randomized") {
    std::uint64_t state = 7;
    auto rnd_poly = [&] {
        Poly p(3);
        for (int t = 0; t < 3; ++t) {
            state = state * 2862933555777941757ull + 3037000493ull;
            Exponents e(3, 0);
            e[state % 3] = static_cast<std::uint8_t>((state >> 8) % 3);
            e[(state >> 16) % 3] += static_cast<std::uint8_t>((state >> 24) % 2);
            p += Poly::monomial(3, e, Scalar(static_cast<std::int64_t>(state % 7) - 3));
        }
        return p;
    };
    for (int k = 0; k < 200; ++k) {
        Poly a = rnd_poly(), b = rnd_poly(), c = rnd_poly();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("degree cap is a hard error") {
    int old = poly_degree_cap();
    set_poly_degree_cap(4);
    Poly x = Poly::variable(1, 0);
    Poly x2 = x * x;
    Poly x4 = x2 * x2;
    CHECK(x4.total_degree() == 4);
    CHECK_THROWS_AS(x4 * x, DegreeOverflow);
    set_poly_degree_cap(old);
}

TEST_CASE("vector field derivation and bracket") {
    auto s = testing::contact3();
    Poly y = testing::P(s, "y"), z = testing::P(s, "z");
    PolyVectorField dy = testing::VF(s, {"0", "1", "0"});
    PolyVectorField dyxz = testing::VF(s, {"0", "1", "x"});  // d/dy + x d/dz
    PolyVectorField dx = testing::VF(s, {"1", "0", "0"});

    CHECK(vf_derive(dy, y * y) == testing::P(s, "2*y"));
    CHECK(vf_derive(dyxz, z) == testing::P(s, "x"));
    CHECK(vf_derive(dx, y) == Poly(3));

    CHECK(vf_bracket_coords(dy, dx).is_zero());
    CHECK(vf_bracket_coords(dx, dyxz) == testing::VF(s, {"0", "0", "1"}));
    CHECK(vf_bracket_coords(dyxz, dx) == testing::VF(s, {"0", "0", "-1"}));
}

TEST_CASE("vf properties randomized: antisymmetry, jacobi, derivation") {
    auto s = testing::contact3();
    std::uint64_t state = 99;
    auto rnd_poly = [&] {
        state = state * 2862933555777941757ull + 3037000493ull;
        Exponents e(3, 0);
        e[state % 3] = static_cast<std::uint8_t>((state >> 5) % 2);
        return Poly::monomial(3, e, Scalar(static_cast<std::int64_t>((state >> 9) % 5) - 2));
    };
    auto rnd_vf = [&] {
        PolyVectorField v;
        for (int i = 0; i < 3; ++i) v.comps.push_back(rnd_poly());
        return v;
    };
    for (int k = 0; k < 60; ++k) {
        PolyVectorField a = rnd_vf(), b = rnd_vf(), c = rnd_vf();
        CHECK(vf_bracket_coords(a, b) == (PolyVectorField::zero(3) - vf_bracket_coords(b, a)));
        PolyVectorField jac = vf_bracket_coords(a, vf_bracket_coords(b, c)) +
                              vf_bracket_coords(b, vf_bracket_coords(c, a)) +
                              vf_bracket_coords(c, vf_bracket_coords(a, b));
        CHECK(jac.is_zero());
        Poly f = rnd_poly(), g = rnd_poly();
        CHECK(vf_derive(a, f * g) == vf_derive(a, f) * g + f * vf_derive(a, g));
    }
}
