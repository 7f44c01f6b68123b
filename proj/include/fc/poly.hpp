#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fc/scalar.hpp"

namespace fc {

// Process-wide total-degree cap for polynomial arithmetic. Exceeding it is a
// hard error, not a truncation. Set once at startup (FC_MAX_DEGREE / CLI).
int poly_degree_cap();
void set_poly_degree_cap(int cap);

using Exponents = std::vector<std::uint8_t>;

// Graded-lex: higher total degree first, ties broken lexicographically.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

// Exact multivariate polynomial over Q or Q(i). Variable names live in the
// chart; a Poly only knows its variable count. No zero coefficients stored.
class Poly {
  public:
    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const Scalar& c);
    static Poly variable(int nvars, int index);
    static Poly monomial(int nvars, Exponents e, const Scalar& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Scalar constant_term() const;
    int total_degree() const;  // -1 for the zero polynomial

    const std::map<Exponents, Scalar, GradedLexLess>& terms() const { return terms_; }

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator*(const Scalar& c, const Poly& p);

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    bool operator<(const Poly& o) const;  // for use as map key

    Poly derivative(int var) const;
    Scalar eval(const std::vector<Scalar>& point) const;

    // Canonical grammar: terms joined by +/-, monomials "c*x^2*y" with
    // explicit '*' and '^'; coefficients "a/b" or "(a/b+c/d*i)".
    std::string to_string(const std::vector<std::string>& names) const;
    static Poly parse(const std::string& text, const std::vector<std::string>& names);

  private:
    void add_term(const Exponents& e, const Scalar& c);
    void check_cap() const;

    int nvars_;
    std::map<Exponents, Scalar, GradedLexLess> terms_;
};

// Polynomial vector field: one Poly coefficient per chart coordinate.
struct PolyVectorField {
    std::vector<Poly> comps;

    int nvars() const { return static_cast<int>(comps.size()); }
    bool is_zero() const;

    static PolyVectorField zero(int nvars);
    static PolyVectorField coordinate(int nvars, int index);  // d/dx_index

    friend PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b);
    friend PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b);
    friend PolyVectorField operator*(const Poly& f, const PolyVectorField& x);
    bool operator==(const PolyVectorField& o) const { return comps == o.comps; }
};

// X(f) = sum_mu X^mu df/dx_mu
Poly vf_derive(const PolyVectorField& x, const Poly& f);

// Commutator of derivations, component-wise.
PolyVectorField vf_bracket_coords(const PolyVectorField& x, const PolyVectorField& y);

}  // namespace fc
