#include "fc/scene.hpp"

#include "fc/errors.hpp"

namespace fc {

Poly poly_matrix_det(const std::vector<std::vector<Poly>>& m) {
    std::size_t n = m.size();
    if (n == 0) return Poly(0);
    if (n == 1) return m[0][0];
    int nvars = m[0][0].nvars();
    Poly det(nvars);
    std::vector<std::vector<Poly>> minor(n - 1, std::vector<Poly>(n - 1, Poly(nvars)));
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[r - 1][cc++] = m[r][c];
            }
        }
        Poly term = m[0][j] * poly_matrix_det(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

namespace {

// Adjugate / constant determinant: inverse with Poly entries.
std::vector<std::vector<Poly>> invert_unimodular(const std::vector<std::vector<Poly>>& m,
                                                 const Scalar& det) {
    std::size_t n = m.size();
    int nvars = m[0][0].nvars();
    Scalar inv_det = det.inverse();
    std::vector<std::vector<Poly>> out(n, std::vector<Poly>(n, Poly(nvars)));
    std::vector<std::vector<Poly>> minor(n - 1, std::vector<Poly>(n - 1, Poly(nvars)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t rr = 0;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::size_t cc = 0;
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor[rr][cc++] = m[r][c];
                }
                ++rr;
            }
            Poly cof = poly_matrix_det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            out[j][i] = inv_det * cof;  // transpose of cofactors
        }
    }
    return out;
}

std::vector<std::vector<Poly>> frame_matrix(const SceneSpec& s) {
    int d = s.dim();
    std::vector<std::vector<Poly>> m(d, std::vector<Poly>(d, Poly(d)));
    for (int i = 0; i < s.rank_f(); ++i)
        for (int mu = 0; mu < d; ++mu) m[mu][i] = s.f_frame[i].comps[mu];
    for (int a = 0; a < s.rank_b(); ++a)
        for (int mu = 0; mu < d; ++mu) m[mu][s.rank_f() + a] = s.b_frame[a].comps[mu];
    return m;
}

}  // namespace

Diagnostics SceneContext::validate(const SceneSpec& spec) {
    Diagnostics diag;
    int d = spec.dim();
    int f = spec.rank_f();
    int b = spec.rank_b();

    if (f + b != d) {
        diag.fail("ShapeError", "rank(F) + rank(B) = " + std::to_string(f + b) +
                                    " but chart dimension is " + std::to_string(d));
        return diag;
    }
    for (const auto& v : spec.f_frame)
        if (v.nvars() != d) diag.fail("ShapeError", "F-frame field has wrong component count");
    for (const auto& v : spec.b_frame)
        if (v.nvars() != d) diag.fail("ShapeError", "B-frame field has wrong component count");
    if (static_cast<int>(spec.structure.size()) != f)
        diag.fail("ShapeError", "structure table must be rank(F)^3");
    for (const auto& row : spec.structure) {
        if (static_cast<int>(row.size()) != f) diag.fail("ShapeError", "structure table row size");
        for (const auto& cell : row)
            if (static_cast<int>(cell.size()) != f)
                diag.fail("ShapeError", "structure table cell size");
    }
    if (!diag.ok) return diag;

    // Antisymmetry of the structure table.
    for (int i = 0; i < f; ++i)
        for (int k = 0; k < f; ++k)
            for (int l = 0; l < f; ++l)
                if (spec.structure[i][k][l] != -spec.structure[k][i][l])
                    diag.fail("ShapeError", "structure functions not antisymmetric at (V" +
                                                std::to_string(i + 1) + ",V" +
                                                std::to_string(k + 1) + ")");

    // [V_i, V_k] must equal sum_l c_ik^l V_l exactly.
    for (int i = 0; i < f; ++i) {
        for (int k = i + 1; k < f; ++k) {
            PolyVectorField lhs = vf_bracket_coords(spec.f_frame[i], spec.f_frame[k]);
            PolyVectorField rhs = PolyVectorField::zero(d);
            for (int l = 0; l < f; ++l)
                rhs = rhs + spec.structure[i][k][l] * spec.f_frame[l];
            if (!(lhs == rhs))
                diag.fail("NotIntegrable", "[V" + std::to_string(i + 1) + ",V" +
                                               std::to_string(k + 1) +
                                               "] does not match the structure functions");
        }
    }

    auto m = frame_matrix(spec);
    Poly det = poly_matrix_det(m);
    if (!det.is_constant() || det.is_zero()) {
        diag.fail("FrameNotUnimodular",
                  "frame determinant is " + det.to_string(spec.coords) +
                      "; a nonzero constant is required");
    }

    if (spec.theta) {
        if (static_cast<int>(spec.theta->size()) != b)
            diag.fail("ShapeError", "theta must be rank(B) x rank(F)");
        else
            for (const auto& row : *spec.theta)
                if (static_cast<int>(row.size()) != f)
                    diag.fail("ShapeError", "theta row has wrong length");
    }
    return diag;
}

SceneContext::SceneContext(SceneSpec spec) : spec_(std::move(spec)) {
    Diagnostics diag = validate(spec_);
    if (!diag.ok) {
        std::string msg = spec_.name + ": " + diag.errors.front();
        if (diag.failure_kind == "NotIntegrable") throw NotIntegrable(msg);
        if (diag.failure_kind == "FrameNotUnimodular") throw FrameNotUnimodular(msg);
        throw ShapeError(msg);
    }
    build();
}

void SceneContext::build() {
    int d = dim(), f = rank_f(), b = rank_b();
    auto m = frame_matrix(spec_);
    Poly det = poly_matrix_det(m);
    minv_ = invert_unimodular(m, det.constant_term());

    bott_.assign(f, std::vector<std::vector<Poly>>(b, std::vector<Poly>(b, Poly(d))));
    prf_.assign(f, std::vector<std::vector<Poly>>(b, std::vector<Poly>(f, Poly(d))));
    for (int i = 0; i < f; ++i) {
        for (int a = 0; a < b; ++a) {
            PolyVectorField br = vf_bracket_coords(v_field(i), jz_field(a));
            FrameDecomposition dec = decompose(br);
            for (int c = 0; c < b; ++c) bott_[i][a][c] = dec.along_b[c];
            for (int k = 0; k < f; ++k) prf_[i][a][k] = dec.along_f[k];
        }
    }

    dxi_.clear();
    for (int l = 0; l < f; ++l) {
        FormElement w = zero_form();
        for (int i = 0; i < f; ++i)
            for (int k = i + 1; k < f; ++k) {
                XiMask mask = (XiMask(1) << i) | (XiMask(1) << k);
                w.add_term(mask, -structure_c(i, k, l));
            }
        dxi_.push_back(w);
    }
}

FrameDecomposition SceneContext::decompose(const PolyVectorField& w) const {
    if (w.nvars() != dim()) throw FrameMismatch("decompose: wrong chart");
    int f = rank_f(), b = rank_b();
    FrameDecomposition out;
    out.along_f.assign(f, zero_poly());
    out.along_b.assign(b, zero_poly());
    for (int row = 0; row < dim(); ++row) {
        Poly acc = zero_poly();
        for (int mu = 0; mu < dim(); ++mu) acc += minv_[row][mu] * w.comps[mu];
        if (row < f)
            out.along_f[row] = acc;
        else
            out.along_b[row - f] = acc;
    }
    return out;
}

FormElement SceneContext::psi_xi_action(int a, int k) const {
    // iota_{V_i} of it is <pr_F[V_i, j(Z_a)], xi^k>.
    FormElement w = zero_form();
    for (int i = 0; i < rank_f(); ++i) w.add_term(XiMask(1) << i, prf_of_bracket(i, a, k));
    return w;
}

FormElement SceneContext::d_f(const Poly& p) const {
    FormElement w = zero_form();
    for (int i = 0; i < rank_f(); ++i) w.add_term(XiMask(1) << i, vf_derive(v_field(i), p));
    return w;
}

FormElement SceneContext::d_f(const FormElement& w) const {
    FormElement out = zero_form();
    for (const auto& [mask, p] : w.terms()) {
        // d(p) ^ xi_mask
        out += wedge(d_f(p), FormElement::term(rank_f(), mask, one_poly()));
        // p * sum_t +/- xi_.. d(xi^t) xi_..
        for (XiMask rest = mask; rest;) {
            int l = __builtin_ctz(rest);
            rest &= rest - 1;
            XiMask before = mask & ((XiMask(1) << l) - 1);
            XiMask after = mask & ~((XiMask(1) << (l + 1)) - 1);
            FormElement left = FormElement::term(rank_f(), before, p);
            FormElement piece = wedge(wedge(left, dxi_[l]),
                                      FormElement::term(rank_f(), after, one_poly()));
            if (mask_popcount(before) % 2 == 1) piece = -piece;
            out += piece;
        }
    }
    return out;
}

}  // namespace fc
