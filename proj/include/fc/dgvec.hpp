#pragma once

#include <string>
#include <vector>

#include "fc/scene.hpp"

namespace fc {

// Degree-homogeneous derivation of the exterior algebra: determined by its
// action on pullback functions (S, stored in the (V, jZ) frame) and on the
// coframe generators xi^k (A). S components have form degree = degree,
// A components degree + 1.
struct DGVectorField {
    int degree = 0;
    std::vector<FormElement> s_f;  // rank_f entries: coefficient of V_i
    std::vector<FormElement> s_b;  // rank_b entries: coefficient of j(Z_a)
    std::vector<FormElement> a;    // rank_f entries: value on xi^k

    bool is_zero() const;
    bool operator==(const DGVectorField& o) const;
    friend DGVectorField operator+(const DGVectorField& x, const DGVectorField& y);
    friend DGVectorField operator-(const DGVectorField& x, const DGVectorField& y);
};

DGVectorField dg_zero(const SceneContext& ctx, int degree);

// X(pi^* f) as a form.
FormElement dg_on_poly(const SceneContext& ctx, const DGVectorField& x, const Poly& f);

// Graded Leibniz extension of (S, A) to the whole exterior algebra.
FormElement vf_apply(const SceneContext& ctx, const DGVectorField& x, const FormElement& w);

// Graded commutator, reconstructed into (S, A) form.
DGVectorField vf_bracket(const SceneContext& ctx, const DGVectorField& x, const DGVectorField& y);

// The Chevalley-Eilenberg differential as a degree +1 vector field.
DGVectorField homological_field(const SceneContext& ctx);

// Canonical frame of the tangent module: Z-lifts, V-lifts, verticals.
// Indices: [0, b) psi(Z_a); [b, b+f) lifted V_i; [b+f, b+2f) iota_{V_i}.
struct CanonicalFrame {
    explicit CanonicalFrame(const SceneContext& ctx);

    const SceneContext& ctx;
    int b, f;

    int size() const { return b + 2 * f; }
    int vec_degree(int alpha) const { return alpha < b + f ? 0 : -1; }
    int dual_degree(int alpha) const { return -vec_degree(alpha); }
    bool is_psi(int alpha) const { return alpha < b; }
    bool is_vhat(int alpha) const { return alpha >= b && alpha < b + f; }
    bool is_iota(int alpha) const { return alpha >= b + f; }
    std::string name(int alpha) const;
    std::string dual_name(int alpha) const;

    const DGVectorField& generator(int alpha) const { return gens_[alpha]; }
    const DGVectorField& q_field() const { return q_; }

    // [Q, e_alpha] = sum_beta lq_vec(alpha, beta) e_beta
    const FormElement& lq_vec(int alpha, int beta) const { return n_[alpha][beta]; }
    // L_Q e^beta = sum_alpha lq_dual(beta, alpha) e^alpha
    const FormElement& lq_dual(int beta, int alpha) const { return ndual_[beta][alpha]; }

    // Decompose a vector field into frame coordinates (size() coefficients).
    std::vector<FormElement> coords(const DGVectorField& x) const;
    // Rebuild sum_alpha coeff[alpha] * e_alpha.
    DGVectorField assemble(const std::vector<FormElement>& coeff, int degree) const;

  private:
    std::vector<DGVectorField> gens_;
    DGVectorField q_;
    std::vector<std::vector<FormElement>> n_;
    std::vector<std::vector<FormElement>> ndual_;
};

}  // namespace fc
