#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fc/form.hpp"

#include "helpers.hpp"

using namespace fc;

namespace {
const std::vector<std::string> names = {"x", "y"};

FormElement xi(int i) { return FormElement::xi(4, 2, i); }
FormElement fp(const std::string& t) { return FormElement::scalar(4, Poly::parse(t, names)); }
}  // namespace

TEST_CASE("wedge basics") {
    CHECK(wedge(xi(0), xi(1)) == FormElement::term(4, 0b11, Poly::constant(2, Scalar(1))));
    CHECK(wedge(xi(1), xi(0)) == -FormElement::term(4, 0b11, Poly::constant(2, Scalar(1))));
    CHECK(wedge(wedge(fp("x"), xi(0)), wedge(fp("y"), xi(0))).is_zero());
}

TEST_CASE("contract_form basics") {
    FormElement w = wedge(xi(0), xi(1));
    CHECK(contract_form(0, w) == xi(1));
    CHECK(contract_form(1, w) == -xi(0));
    CHECK(contract_form(0, fp("x+1")).is_zero());
}

TEST_CASE("pair_dual kronecker") {
    CHECK(pair_dual({0}, {0}) == Scalar(1));
    CHECK(pair_dual({0}, {1}) == Scalar(0));
    CHECK(pair_dual({0, 1}, {0, 1}) == Scalar(1));
}

TEST_CASE("graded commutativity and associativity randomized") {
    std::uint64_t state = 5;
    auto next = [&] {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 33;
    };
    auto rnd = [&](int deg) {
        XiMask m = 0;
        while (mask_popcount(m) < deg) m |= XiMask(1) << (next() % 4);
        Poly p = Poly::monomial(2, {static_cast<std::uint8_t>(next() % 3), 1},
                                Scalar(static_cast<std::int64_t>(next() % 5) - 2));
        return FormElement::term(4, m, p);
    };
    for (int k = 0; k < 100; ++k) {
        int da = static_cast<int>(state % 3);
        FormElement a = rnd(da);
        int db = static_cast<int>((state >> 11) % 3);
        FormElement b = rnd(db), c = rnd(1);
        FormElement ab = wedge(a, b), ba = wedge(b, a);
        if ((da * db) % 2 != 0) ba = -ba;
        CHECK(ab == ba);
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
}

TEST_CASE("interior product is a degree -1 derivation and squares to zero") {
    std::uint64_t state = 12;
    auto next = [&] {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 33;
    };
    auto rnd = [&](int deg) {
        XiMask m = 0;
        while (mask_popcount(m) < deg) m |= XiMask(1) << (next() % 4);
        return FormElement::term(4, m, Poly::monomial(2, {1, 0}, Scalar(1)));
    };
    for (int k = 0; k < 100; ++k) {
        int da = static_cast<int>(next() % 4);
        FormElement a = rnd(da), b = rnd(static_cast<int>(next() % 3));
        for (int v = 0; v < 4; ++v) {
            FormElement lhs = contract_form(v, wedge(a, b));
            FormElement rhs = wedge(contract_form(v, a), b);
            FormElement second = wedge(a, contract_form(v, b));
            if (da % 2 != 0) second = -second;
            rhs += second;
            CHECK(lhs == rhs);
            CHECK(contract_form(v, contract_form(v, a)).is_zero());
        }
    }
}

TEST_CASE("rendering round trip") {
    FormElement w = wedge(fp("x^2-1"), wedge(xi(0), xi(2))) + wedge(fp("1/2*y"), xi(1));
    std::string text = w.to_string(names);
    CHECK(FormElement::parse(text, 4, names) == w);
    CHECK(FormElement(4, 2).to_string(names) == "0");
}
