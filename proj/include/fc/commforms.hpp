#pragma once

#include "fc/polyvec.hpp"
#include "fc/tensor.hpp"

namespace fc {

// Scalar-valued forms on the graded side in graded-commutative normal form:
// generators are the dual frame covectors. dpsi / dvh are square-zero, the
// vertical duals dio accumulate exponents. Coefficients carry the xi part.
struct CommFormKey {
    XiMask xi = 0;
    std::uint32_t dpsi = 0;
    std::uint32_t dvh = 0;
    std::vector<std::uint8_t> dio;

    bool operator<(const CommFormKey& o) const {
        if (xi != o.xi) return xi < o.xi;
        if (dpsi != o.dpsi) return dpsi < o.dpsi;
        if (dvh != o.dvh) return dvh < o.dvh;
        return dio < o.dio;
    }
    bool operator==(const CommFormKey& o) const {
        return xi == o.xi && dpsi == o.dpsi && dvh == o.dvh && dio == o.dio;
    }
};

struct CommForm {
    int dim = 0;
    int rank_f = 0;
    std::map<CommFormKey, Poly> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const CommForm& o) const { return terms == o.terms; }
    bool operator!=(const CommForm& o) const { return !(*this == o); }
    void add_term(const CommFormKey& k, const Poly& c);

    static int key_parity(const CommFormKey& k) {
        return (mask_popcount(k.xi) + mask_popcount(k.dpsi) + mask_popcount(k.dvh)) % 2;
    }
};

CommForm cf_zero(const SceneContext& ctx);
CommForm cf_one(const SceneContext& ctx);
CommForm cf_scale(const Scalar& s, const CommForm& a);
CommForm cf_add(const CommForm& a, const CommForm& b);
CommForm cf_sub(const CommForm& a, const CommForm& b);
CommForm cf_mul(const CommForm& a, const CommForm& b);
// Quotient map from a graded-side tensor word whose slots are all dual.
CommForm cf_project(const CanonicalFrame& fr, const Tensor& t);
std::string cf_to_string(const SceneContext& ctx, const CommForm& a);

// Quotient side: wedge powers of the B-coframe with form coefficients.
// Shares the (xi mask, index mask) monomial shape with PairPoly; the z mask
// is read as a zeta mask here.
using PairForm = PairPoly;

PairForm pf_db(const SceneContext& ctx, const PairForm& a);
PairForm pf_project(const CanonicalFrame& fr, const Tensor& t);
std::string pf_to_string(const SceneContext& ctx, const PairForm& a);
// Kill lifted and vertical duals, rename psi-duals to zeta.
PairForm cf_to_pair(const SceneContext& ctx, const CommForm& a);
int pf_parity(const PairForm& a);  // homogeneous parity; throws when mixed
int cf_parity(const CommForm& a);

}  // namespace fc
