#pragma once

#include "fc/contraction.hpp"
#include "fc/polyvec.hpp"

namespace fc {

// Transferred bracket evaluator over the contraction onto Bott-module
// cochains with wedge coefficients. Inputs are quotient-side multivectors.
class Transfer {
  public:
    explicit Transfer(const CanonicalFrame& fr);

    const PolyContraction& pc() const { return pc_; }

    // lambda_2(a, b) = phi([psi a, psi b])
    PairPoly lambda2(const PairPoly& a, const PairPoly& b) const;
    // shuffle-summed transfer expression, k = inputs.size() up to 6
    PairPoly lambda_k(const std::vector<PairPoly>& inputs) const;

    // Closed forms on generators.
    PairPoly lambda2_closed_zz(int a, int b) const;        // pr_B[jZ_a, jZ_b]
    PairPoly lambda2_closed_zform(int a, const FormElement& w) const;
    PairPoly lambda2_closed_zfun(int a, const Poly& f) const;
    Poly lambda3_closed_zzxi(int a, int b, int k) const;   // <pr_F[jZ_a, jZ_b], xi^k>

  private:
    PolyVector wrap(const std::vector<PairPoly>& block) const;  // psi or H(p_k)
    PolyVector eval_p(const std::vector<PairPoly>& inputs) const;

    const CanonicalFrame& fr_;
    PolyContraction pc_;
};

// Property battery for the transferred structure and the bracket calculus.
std::vector<CheckResult> transfer_checks(const CanonicalFrame& fr, int random_count,
                                         std::uint64_t seed);

// Generator-tuple tables: lambda_2 vs closed forms, lambda_3 values,
// vanishing of lambda_4..lambda_6.
struct BracketTableEntry {
    std::string tuple;
    std::string value;
};
struct BracketTables {
    std::vector<BracketTableEntry> lambda2;
    std::vector<BracketTableEntry> lambda3;
    std::vector<CheckResult> checks;
};
BracketTables transfer_tables(const CanonicalFrame& fr, int max_higher_arity);

}  // namespace fc
