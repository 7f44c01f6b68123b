#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fc/form.hpp"
#include "fc/poly.hpp"

namespace fc {

enum class FieldKind { Rational, GaussianRational };

// One Christoffel entry of a tangent-frame connection on the graded side,
// keyed by canonical frame element names (Z1..Zb, V1..Vf, iV1..iVf).
struct DgChristoffelEntry {
    std::string on;   // direction e_alpha
    std::string of;   // argument e_beta
    std::string out;  // target e_gamma
    std::string value;  // FormElement text
};

struct SceneSpec {
    std::string name;
    FieldKind field = FieldKind::Rational;
    std::vector<std::string> coords;
    std::vector<PolyVectorField> f_frame;  // V_1..V_f
    std::vector<PolyVectorField> b_frame;  // j(Z_1)..j(Z_b)
    // structure[i][k][l]: [V_i, V_k] = sum_l structure[i][k][l] V_l
    std::vector<std::vector<std::vector<Poly>>> structure;
    // theta[a][i]: alternate splitting offset, theta(Z_a) = sum_i theta[a][i] V_i
    std::optional<std::vector<std::vector<Poly>>> theta;
    std::vector<DgChristoffelEntry> dg_connection;
    int max_degree = 16;

    int dim() const { return static_cast<int>(coords.size()); }
    int rank_f() const { return static_cast<int>(f_frame.size()); }
    int rank_b() const { return static_cast<int>(b_frame.size()); }
};

struct Diagnostics {
    bool ok = true;
    std::vector<std::string> errors;
    // First failing class among: "parse", "NotIntegrable", "FrameNotUnimodular", "ShapeError"
    std::string failure_kind;

    void fail(const std::string& kind, const std::string& msg) {
        ok = false;
        if (failure_kind.empty()) failure_kind = kind;
        errors.push_back(kind + ": " + msg);
    }
};

struct FrameDecomposition {
    std::vector<Poly> along_f;  // coefficients a^i on V_i
    std::vector<Poly> along_b;  // coefficients b^a on j(Z_a)
};

// A validated scene with the derived frame data every module consumes.
class SceneContext {
  public:
    static Diagnostics validate(const SceneSpec& spec);
    // Throws SceneInvalid-like errors when validation fails.
    explicit SceneContext(SceneSpec spec);

    const SceneSpec& spec() const { return spec_; }
    int dim() const { return spec_.dim(); }
    int rank_f() const { return spec_.rank_f(); }
    int rank_b() const { return spec_.rank_b(); }
    const std::vector<std::string>& coords() const { return spec_.coords; }

    Poly zero_poly() const { return Poly(dim()); }
    Poly one_poly() const { return Poly::constant(dim(), Scalar(1)); }
    FormElement zero_form() const { return FormElement(rank_f(), dim()); }
    FormElement scalar_form(const Poly& p) const { return FormElement::scalar(rank_f(), p); }
    FormElement xi(int i) const { return FormElement::xi(rank_f(), dim(), i); }

    const PolyVectorField& v_field(int i) const { return spec_.f_frame[i]; }
    const PolyVectorField& jz_field(int a) const { return spec_.b_frame[a]; }
    const Poly& structure_c(int i, int k, int l) const { return spec_.structure[i][k][l]; }

    // Solve W = sum a^i V_i + sum b^a j(Z_a) exactly.
    FrameDecomposition decompose(const PolyVectorField& w) const;

    // Bott connection: pr_B[V_i, j(Z_a)] = sum_c bott(i,a,c) Z_c.
    const Poly& bott(int i, int a, int c) const { return bott_[i][a][c]; }
    // pr_F[V_i, j(Z_a)] = sum_k prf(i,a,k) V_k.
    const Poly& prf_of_bracket(int i, int a, int k) const { return prf_[i][a][k]; }
    // pr_F[j(Z_a), V_i] component used by the coframe action of the lifted frame.
    FormElement psi_xi_action(int a, int k) const;  // psi(Z_a) applied to xi^k

    // Chevalley-Eilenberg differential.
    FormElement d_f(const Poly& p) const;
    FormElement d_f(const FormElement& w) const;
    const FormElement& d_f_xi(int l) const { return dxi_[l]; }

    // Covariant frame action of V_i on B / B^dual indices:
    // nabla_{V_i} Z_a = sum_c bott(i,a,c) Z_c ; nabla_{V_i} zeta^a = -sum bott(i,c,a) zeta^c.
    // Tensor-level d_B lives with the tensor representation.

    bool has_theta() const { return spec_.theta.has_value(); }
    const Poly& theta(int a, int i) const { return (*spec_.theta)[a][i]; }

  private:
    void build();

    SceneSpec spec_;
    // Frame matrix columns: V_1..V_f, j(Z_1)..j(Z_b); inverse has Poly entries.
    std::vector<std::vector<Poly>> minv_;  // minv_[row=frame index][col=coordinate]
    std::vector<std::vector<std::vector<Poly>>> bott_;
    std::vector<std::vector<std::vector<Poly>>> prf_;
    std::vector<FormElement> dxi_;
};

// Determinant of a square Poly matrix by cofactor expansion (small sizes).
Poly poly_matrix_det(const std::vector<std::vector<Poly>>& m);

}  // namespace fc
