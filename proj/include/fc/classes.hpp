#pragma once

#include "fc/commforms.hpp"
#include "fc/contraction.hpp"
#include "fc/series.hpp"

namespace fc {

// Tangent-frame connection on the graded side: sparse Christoffel table over
// canonical frame triples, absent entries zero (the frame-flat default).
struct DGConnection {
    std::map<std::array<int, 3>, FormElement> gamma;  // (alpha, beta, gamma)

    static DGConnection frame_flat() { return {}; }
    static DGConnection from_scene(const CanonicalFrame& fr);
    FormElement christoffel(const CanonicalFrame& fr, int alpha, int beta, int out) const;
};

// nabla_X Y for the given Christoffels.
DGVectorField conn_nabla(const CanonicalFrame& fr, const DGConnection& conn,
                         const DGVectorField& x, const DGVectorField& y);

// Connection on the quotient bundle extending the canonical flat action in
// the F-direction: gamma[a][b][c] gives nabla_{jZ_a} Z_b.
struct PairConnection {
    std::vector<std::vector<std::vector<Poly>>> gamma;

    static PairConnection zero(const SceneContext& ctx);
};

// Atiyah cocycle of the graded side: component table and the (2,1) tensor
// in layout [dual, dual, vec].
struct AtiyahDg {
    std::vector<std::vector<std::vector<FormElement>>> table;  // [alpha][beta][gamma]
    Tensor tensor21;
};
AtiyahDg atiyah_dg(const CanonicalFrame& fr, const DGConnection& conn);

PairConnection induced_connection(const CanonicalFrame& fr, const ContractionData& cd,
                                  const DGConnection& conn);

// Curvature-style cocycle of the quotient-side pair connection as a (2,1)
// tensor [dual a, dual b, vec c] with coefficient sum_i xi^i R^c_{iab}.
Tensor atiyah_pair(const CanonicalFrame& fr, const PairConnection& pconn);

// End-valued forms: tensor layout [dual x m, vec, dual].
Tensor end_identity(const CanonicalFrame& fr, bool pair_side);
Tensor end_compose(const CanonicalFrame& fr, const Tensor& a, const Tensor& b);
Tensor end_power(const CanonicalFrame& fr, const Tensor& a, int k);
Tensor end_str(const CanonicalFrame& fr, const Tensor& a);   // graded supertrace
Tensor end_tr(const CanonicalFrame& fr, const Tensor& a);    // quotient-side trace
Tensor end_from_tensor21(const CanonicalFrame& fr, const Tensor& t21);
Tensor end_big_phi(const ContractionData& cd, const Tensor& a);
Tensor end_big_h(const ContractionData& cd, const Tensor& a);

// Per-weight Berezinian / determinant data computed along two routes.
struct BerResult {
    // weight r entry at index r-1
    std::vector<CommForm> dg_weights;
    std::vector<PairForm> pair_weights;
    bool routes_agree = true;
    std::string disagreement;
};

// Graded-side Berezinian of P(omega) via m-sequences and via exp-str-log.
std::vector<CommForm> berezinian_series_dg(const CanonicalFrame& fr, const Tensor& omega_end,
                                           const SeriesSpec& p, int s, std::string* mismatch);
std::vector<PairForm> berezinian_series_pair(const CanonicalFrame& fr, const Tensor& omega_end,
                                             const SeriesSpec& p, int s, std::string* mismatch);

struct ClassesOutput {
    std::vector<CheckResult> checks;
    // canonical renderings for the report, keyed by stable names
    std::map<std::string, std::string> rendered;
};

// Full class pipeline: Atiyah cocycles and correspondence, scalar classes
// with the supertrace homotopy certificate, Todd weights with the two-route
// agreement and the per-weight exactness certificate, connection
// independence.
ClassesOutput classes_run(const CanonicalFrame& fr, const ContractionData& cd, int k_max,
                          int random_connections, std::uint64_t seed);

}  // namespace fc
