#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fc/dgvec.hpp"

namespace fc {

// Multivector fields on the graded base, realized as a graded-commutative
// polynomial algebra: generators xi^i (parity 1), th_mu (momentum of x_mu,
// parity 1), et_i (momentum of xi^i, parity 0). A monomial is
// (xi mask, th mask, et multiset) with a Poly coefficient; the Schouten
// bracket is the canonical odd Poisson bracket pairing th with x and et
// with xi.
struct PvKey {
    XiMask xi = 0;
    std::uint32_t th = 0;
    std::vector<std::uint8_t> et;  // sorted exponents by generator? see note

    // et stored as per-generator exponent vector of fixed length rank_f
    bool operator<(const PvKey& o) const {
        if (xi != o.xi) return xi < o.xi;
        if (th != o.th) return th < o.th;
        return et < o.et;
    }
    bool operator==(const PvKey& o) const { return xi == o.xi && th == o.th && et == o.et; }
};

struct PolyVector {
    int dim = 0;
    int rank_f = 0;
    std::map<PvKey, Poly> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const PolyVector& o) const { return terms == o.terms; }
    bool operator!=(const PolyVector& o) const { return !(*this == o); }
    void add_term(const PvKey& k, const Poly& c);

    // Total parity of a monomial: #xi + #th (mod 2); et generators are even.
    static int key_parity(const PvKey& k) {
        return (mask_popcount(k.xi) + mask_popcount(k.th)) % 2;
    }
    // Multivector (wedge) weight of a monomial.
    static int key_weight(const PvKey& k) {
        int w = mask_popcount(k.th);
        for (auto e : k.et) w += e;
        return w;
    }
};

PolyVector pv_zero(const SceneContext& ctx);
PolyVector pv_scalar(const SceneContext& ctx, const Poly& p);
PolyVector pv_from_form(const SceneContext& ctx, const FormElement& w);
PolyVector pv_add(const PolyVector& a, const PolyVector& b);
PolyVector pv_sub(const PolyVector& a, const PolyVector& b);
PolyVector pv_neg(const PolyVector& a);
PolyVector pv_mul(const PolyVector& a, const PolyVector& b);

// Symbol of a vector field: linear in the momenta.
PolyVector pv_symbol(const SceneContext& ctx, const DGVectorField& x);

// Odd Poisson (Schouten) bracket.
PolyVector pv_schouten(const PolyVector& a, const PolyVector& b);

// Lie derivative along the homological field: bracket with its symbol.
PolyVector pv_lq(const SceneContext& ctx, const PolyVector& a);

// Extract the vector-field part (weight 1) back into (S, A) form; zero
// weight-1 part gives the zero field of the requested degree.
DGVectorField pv_to_vf(const SceneContext& ctx, const PolyVector& a, int degree);

std::string pv_to_string(const SceneContext& ctx, const PolyVector& a);

// Quotient-side multivectors: Omega_F-coefficients on wedge powers of the
// B-frame; monomials are (xi mask, Z mask).
struct PairPvKey {
    XiMask xi = 0;
    std::uint32_t z = 0;
    bool operator<(const PairPvKey& o) const {
        if (xi != o.xi) return xi < o.xi;
        return z < o.z;
    }
    bool operator==(const PairPvKey& o) const { return xi == o.xi && z == o.z; }
};

struct PairPoly {
    int dim = 0;
    int rank_f = 0;
    std::map<PairPvKey, Poly> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const PairPoly& o) const { return terms == o.terms; }
    bool operator!=(const PairPoly& o) const { return !(*this == o); }
    void add_term(const PairPvKey& k, const Poly& c);
    static int key_parity(const PairPvKey& k) {
        return (mask_popcount(k.xi) + mask_popcount(k.z)) % 2;
    }
};

PairPoly pp_zero(const SceneContext& ctx);
PairPoly pp_scalar(const SceneContext& ctx, const Poly& p);
PairPoly pp_from_form(const SceneContext& ctx, const FormElement& w);
PairPoly pp_generator_z(const SceneContext& ctx, int a);
PairPoly pp_add(const PairPoly& a, const PairPoly& b);
PairPoly pp_sub(const PairPoly& a, const PairPoly& b);
PairPoly pp_mul(const PairPoly& a, const PairPoly& b);
PairPoly pp_db(const SceneContext& ctx, const PairPoly& a);
std::string pp_to_string(const SceneContext& ctx, const PairPoly& a);

// Contraction maps on multivectors. psi is multiplicative; phi kills the
// vertical and lifted directions after a change of generators; H is the
// one-sided staircase.
class PolyContraction {
  public:
    explicit PolyContraction(const CanonicalFrame& fr);

    const CanonicalFrame& frame() const { return fr_; }

    PolyVector psi(const PairPoly& s) const;
    PairPoly phi(const PolyVector& p) const;
    PolyVector h(const PolyVector& p) const;

  private:
    // Frame-generator monomial algebra: generators psi~ (parity 1),
    // vhat~ (parity 1), iota~ (parity 0), Omega_F coefficients.
    struct FrKey {
        XiMask xi = 0;
        std::uint32_t psi = 0;
        std::uint32_t vhat = 0;
        std::vector<std::uint8_t> iota;
        bool operator<(const FrKey& o) const {
            if (xi != o.xi) return xi < o.xi;
            if (psi != o.psi) return psi < o.psi;
            if (vhat != o.vhat) return vhat < o.vhat;
            return iota < o.iota;
        }
    };
    struct FrPoly {
        std::map<FrKey, Poly> terms;
        void add(const FrKey& k, const Poly& c);
    };
    static int fr_parity(const FrKey& k) {
        return (mask_popcount(k.xi) + mask_popcount(k.psi) + mask_popcount(k.vhat)) % 2;
    }

    FrPoly to_frame(const PolyVector& p) const;
    PolyVector from_frame(const FrPoly& p) const;
    FrPoly fr_mul(const FrPoly& a, const FrPoly& b) const;

    const CanonicalFrame& fr_;
    std::vector<PolyVector> gen_symbols_;  // symbol of each frame generator
    std::vector<FrPoly> th_subst_;         // th_mu rewritten over frame generators
};

}  // namespace fc
