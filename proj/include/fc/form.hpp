#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fc/poly.hpp"

namespace fc {

using XiMask = std::uint32_t;

int mask_popcount(XiMask m);

// Sign of merging two strictly increasing index words given as bitmasks:
// +1/-1 by inversion count, 0 if the masks intersect.
int merge_sign(XiMask a, XiMask b);

// Sign (-1)^{#indices of m below bit k}.
int sign_below(XiMask m, int k);

// Element of the exterior algebra on the coframe xi^1..xi^f with Poly
// coefficients. Not necessarily homogeneous; keys are index bitmasks.
class FormElement {
  public:
    FormElement() : rank_f_(0), nvars_(0) {}
    FormElement(int rank_f, int nvars) : rank_f_(rank_f), nvars_(nvars) {}

    static FormElement scalar(int rank_f, const Poly& p);
    static FormElement xi(int rank_f, int nvars, int index);  // xi^index, 0-based
    static FormElement term(int rank_f, XiMask mask, const Poly& p);

    int rank_f() const { return rank_f_; }
    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous() const;
    // Degree of a homogeneous element; -1 if zero. Throws if mixed.
    int degree() const;
    int max_degree() const;

    const std::map<XiMask, Poly>& terms() const { return terms_; }
    Poly coefficient(XiMask mask) const;

    // Homogeneous parts, ascending degree.
    std::vector<FormElement> homogeneous_parts() const;

    FormElement operator-() const;
    friend FormElement operator+(const FormElement& a, const FormElement& b);
    friend FormElement operator-(const FormElement& a, const FormElement& b);
    FormElement& operator+=(const FormElement& o) { return *this = *this + o; }
    FormElement& operator-=(const FormElement& o) { return *this = *this - o; }
    friend FormElement operator*(const Poly& p, const FormElement& w);
    friend FormElement operator*(const Scalar& c, const FormElement& w);

    bool operator==(const FormElement& o) const {
        return rank_f_ == o.rank_f_ && terms_ == o.terms_;
    }
    bool operator!=(const FormElement& o) const { return !(*this == o); }
    bool operator<(const FormElement& o) const;

    void add_term(XiMask mask, const Poly& p);

    // Canonical text rendering; coefficient polynomials parenthesized.
    std::string to_string(const std::vector<std::string>& names) const;
    static FormElement parse(const std::string& text, int rank_f,
                             const std::vector<std::string>& names);

  private:
    int rank_f_;
    int nvars_;
    std::map<XiMask, Poly> terms_;
};

// Graded-commutative product.
FormElement wedge(const FormElement& a, const FormElement& b);

// Interior product against frame vector V_k (0-based): iota_{V_k} xi^l = delta_k^l.
FormElement contract_form(int k, const FormElement& w);

// Duality pairing of basis words, slot by slot (Kronecker deltas).
Scalar pair_dual(const std::vector<int>& dual_word, const std::vector<int>& vec_word);

}  // namespace fc
