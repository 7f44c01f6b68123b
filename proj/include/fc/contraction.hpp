#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fc/tensor.hpp"

namespace fc {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string counterexample;
    double millis = 0.0;
};

// The contraction between vector fields / tensor fields on the graded side
// and Bott-module cochains on the quotient side, realized at frame level,
// plus the tensor extensions and the splitting-comparison homotopies.
class ContractionData {
  public:
    explicit ContractionData(const CanonicalFrame& frame);

    const CanonicalFrame& frame() const { return fr_; }

    // Single vector-field level.
    Tensor phi_vf(const DGVectorField& x) const;          // (0,1) quotient tensor
    DGVectorField psi_vf(const Tensor& sigma) const;      // from (0,1) quotient tensor
    DGVectorField h_vf(const DGVectorField& x) const;

    // Slot factors.
    const SlotOp& op_phi() const { return phi_; }
    const SlotOp& op_psi() const { return psi_; }
    const SlotOp& op_h() const { return h_; }
    const SlotOp& op_phi_dual() const { return phid_; }
    const SlotOp& op_psi_dual() const { return psid_; }
    const SlotOp& op_h_dual() const { return hd_; }

    // Tensor-trick maps for a signature of m dual and n vector slots
    // (slots ordered duals first).
    Tensor big_phi(const Tensor& t) const;
    Tensor big_psi(const Tensor& t) const;
    Tensor big_h(const Tensor& t) const;
    // [L_Q, H] as an anticommutator of odd operators.
    Tensor lq_h_commutator(const Tensor& t) const;

    // Splitting comparison. Requires scene theta.
    bool has_theta() const { return theta_.has_value(); }
    DGVectorField theta_vf(const Tensor& sigma) const;   // Theta on a (0,1) tensor
    DGVectorField psi_hat_vf(const Tensor& sigma) const;
    Tensor big_theta(const Tensor& t) const;   // quotient -> graded, degree -1
    Tensor big_xi(const Tensor& t) const;      // graded -> quotient, degree -1
    Tensor big_psi_hat(const Tensor& t) const;
    Tensor big_phi_hat(const Tensor& t) const;

    static std::vector<bool> signature(int m_dual, int n_vec);

  private:
    SlotOp dualize(const SlotOp& vec_map) const;  // (B -> TM) to (T*M -> B*)

    const CanonicalFrame& fr_;
    SlotOp phi_, psi_, h_, phid_, psid_, hd_, psiphi_, phidpsid_;
    std::optional<SlotOp> theta_op_, theta_dual_, psi_hat_, psi_hat_dual_;
    std::optional<std::vector<std::vector<Poly>>> theta_;
};

// Deterministic generators for randomized property checks.
struct Random {
    std::uint64_t state;
    explicit Random(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    int below(int n);  // uniform in [0, n)
    Scalar scalar(int max_abs = 3);
    Poly poly(const SceneContext& ctx, int max_deg = 2, int terms = 2);
    FormElement form(const SceneContext& ctx, int degree, int terms = 2);
    FormElement form_mixed(const SceneContext& ctx, int terms = 3);
    Tensor tensor(const CanonicalFrame& fr, bool pair_side, const std::vector<bool>& dual,
                  int terms = 3);
    DGVectorField dgvf(const CanonicalFrame& fr, int degree, int terms = 2);
};

// Per-signature identity battery; names are stable report keys.
std::vector<CheckResult> contraction_checks(const ContractionData& cd, int m_dual, int n_vec,
                                            int random_count, std::uint64_t seed);

// Splitting-homotopy battery for signatures (m, n) <= cap.
std::vector<CheckResult> splitting_checks(const ContractionData& cd, int max_m, int max_n,
                                          int random_count, std::uint64_t seed);

// Foundation properties: d_F^2, d_B^2, L_Q^2, graded Jacobi, derivation laws.
std::vector<CheckResult> foundation_checks(const ContractionData& cd, int random_count,
                                           std::uint64_t seed);

}  // namespace fc
