#include "fc/dgvec.hpp"

#include "fc/errors.hpp"

namespace fc {

bool DGVectorField::is_zero() const {
    for (const auto& w : s_f)
        if (!w.is_zero()) return false;
    for (const auto& w : s_b)
        if (!w.is_zero()) return false;
    for (const auto& w : a)
        if (!w.is_zero()) return false;
    return true;
}

bool DGVectorField::operator==(const DGVectorField& o) const {
    return s_f == o.s_f && s_b == o.s_b && a == o.a;
}

DGVectorField operator+(const DGVectorField& x, const DGVectorField& y) {
    DGVectorField r = x;
    for (std::size_t i = 0; i < r.s_f.size(); ++i) r.s_f[i] += y.s_f[i];
    for (std::size_t i = 0; i < r.s_b.size(); ++i) r.s_b[i] += y.s_b[i];
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

DGVectorField operator-(const DGVectorField& x, const DGVectorField& y) {
    DGVectorField r = x;
    for (std::size_t i = 0; i < r.s_f.size(); ++i) r.s_f[i] -= y.s_f[i];
    for (std::size_t i = 0; i < r.s_b.size(); ++i) r.s_b[i] -= y.s_b[i];
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

DGVectorField dg_zero(const SceneContext& ctx, int degree) {
    DGVectorField x;
    x.degree = degree;
    x.s_f.assign(ctx.rank_f(), ctx.zero_form());
    x.s_b.assign(ctx.rank_b(), ctx.zero_form());
    x.a.assign(ctx.rank_f(), ctx.zero_form());
    return x;
}

FormElement dg_on_poly(const SceneContext& ctx, const DGVectorField& x, const Poly& f) {
    FormElement out = ctx.zero_form();
    for (int i = 0; i < ctx.rank_f(); ++i)
        out += vf_derive(ctx.v_field(i), f) * x.s_f[i];
    for (int a = 0; a < ctx.rank_b(); ++a)
        out += vf_derive(ctx.jz_field(a), f) * x.s_b[a];
    return out;
}

FormElement vf_apply(const SceneContext& ctx, const DGVectorField& x, const FormElement& w) {
    FormElement out = ctx.zero_form();
    int q = x.degree;
    for (const auto& [mask, p] : w.terms()) {
        // action on the coefficient
        out += wedge(dg_on_poly(ctx, x, p), FormElement::term(ctx.rank_f(), mask, ctx.one_poly()));
        // action on each coframe factor
        int t = 0;
        for (XiMask rest = mask; rest; ++t) {
            int l = __builtin_ctz(rest);
            rest &= rest - 1;
            XiMask before = mask & ((XiMask(1) << l) - 1);
            XiMask after = mask & ~((XiMask(1) << (l + 1)) - 1);
            FormElement piece = wedge(FormElement::term(ctx.rank_f(), before, p),
                                      wedge(x.a[l], FormElement::term(ctx.rank_f(), after,
                                                                      ctx.one_poly())));
            if ((q * t) % 2 != 0) piece = -piece;
            out += piece;
        }
    }
    return out;
}

DGVectorField vf_bracket(const SceneContext& ctx, const DGVectorField& x, const DGVectorField& y) {
    int sign = (x.degree * y.degree) % 2 == 0 ? 1 : -1;
    int d = ctx.dim();

    // Action on coordinate pullbacks gives pi_*[X,Y] in the coordinate frame.
    std::vector<FormElement> coord_action(d, ctx.zero_form());
    for (int mu = 0; mu < d; ++mu) {
        Poly xmu = Poly::variable(d, mu);
        FormElement yx = dg_on_poly(ctx, y, xmu);
        FormElement xx = dg_on_poly(ctx, x, xmu);
        FormElement term = vf_apply(ctx, x, yx) - (sign > 0 ? vf_apply(ctx, y, xx)
                                                            : -vf_apply(ctx, y, xx));
        coord_action[mu] = term;
    }

    DGVectorField r = dg_zero(ctx, x.degree + y.degree);
    // Convert the coordinate-frame components to the (V, jZ) frame. The frame
    // change has Poly entries, so it distributes over each form term.
    for (int mu = 0; mu < d; ++mu) {
        PolyVectorField dmu = PolyVectorField::coordinate(d, mu);
        FrameDecomposition dec = ctx.decompose(dmu);
        for (int i = 0; i < ctx.rank_f(); ++i)
            r.s_f[i] += dec.along_f[i] * coord_action[mu];
        for (int a = 0; a < ctx.rank_b(); ++a)
            r.s_b[a] += dec.along_b[a] * coord_action[mu];
    }
    for (int k = 0; k < ctx.rank_f(); ++k) {
        FormElement t1 = vf_apply(ctx, x, y.a[k]);
        FormElement t2 = vf_apply(ctx, y, x.a[k]);
        r.a[k] = sign > 0 ? t1 - t2 : t1 + t2;
    }
    return r;
}

DGVectorField homological_field(const SceneContext& ctx) {
    DGVectorField q = dg_zero(ctx, 1);
    for (int i = 0; i < ctx.rank_f(); ++i) q.s_f[i] = ctx.xi(i);
    for (int k = 0; k < ctx.rank_f(); ++k) q.a[k] = ctx.d_f_xi(k);
    return q;
}

CanonicalFrame::CanonicalFrame(const SceneContext& context)
    : ctx(context), b(context.rank_b()), f(context.rank_f()) {
    for (int a = 0; a < b; ++a) {
        DGVectorField x = dg_zero(ctx, 0);
        x.s_b[a] = ctx.scalar_form(ctx.one_poly());
        for (int k = 0; k < f; ++k) x.a[k] = ctx.psi_xi_action(a, k);
        gens_.push_back(x);
    }
    for (int i = 0; i < f; ++i) {
        DGVectorField x = dg_zero(ctx, 0);
        x.s_f[i] = ctx.scalar_form(ctx.one_poly());
        for (int k = 0; k < f; ++k) {
            FormElement w = ctx.zero_form();
            for (int m = 0; m < f; ++m) w.add_term(XiMask(1) << m, -ctx.structure_c(i, m, k));
            x.a[k] = w;
        }
        gens_.push_back(x);
    }
    for (int i = 0; i < f; ++i) {
        DGVectorField x = dg_zero(ctx, -1);
        x.a[i] = ctx.scalar_form(ctx.one_poly());
        gens_.push_back(x);
    }
    q_ = homological_field(ctx);

    n_.assign(size(), std::vector<FormElement>(size(), ctx.zero_form()));
    for (int alpha = 0; alpha < size(); ++alpha) {
        DGVectorField br = vf_bracket(ctx, q_, gens_[alpha]);
        std::vector<FormElement> c = coords(br);
        for (int beta = 0; beta < size(); ++beta) n_[alpha][beta] = c[beta];
    }
    ndual_.assign(size(), std::vector<FormElement>(size(), ctx.zero_form()));
    for (int beta = 0; beta < size(); ++beta) {
        int ddeg = dual_degree(beta);
        for (int alpha = 0; alpha < size(); ++alpha) {
            FormElement acc = ctx.zero_form();
            for (const auto& part : n_[alpha][beta].homogeneous_parts()) {
                int s = (ddeg * (1 + part.degree())) % 2 == 0 ? -1 : 1;
                acc += s < 0 ? -part : part;
            }
            ndual_[beta][alpha] = acc;
        }
    }
}

std::string CanonicalFrame::name(int alpha) const {
    if (is_psi(alpha)) return "Z" + std::to_string(alpha + 1);
    if (is_vhat(alpha)) return "V" + std::to_string(alpha - b + 1);
    return "iV" + std::to_string(alpha - b - f + 1);
}

std::string CanonicalFrame::dual_name(int alpha) const { return "d" + name(alpha); }

std::vector<FormElement> CanonicalFrame::coords(const DGVectorField& x) const {
    std::vector<FormElement> c(size(), ctx.zero_form());
    for (int a = 0; a < b; ++a) c[a] = x.s_b[a];
    for (int i = 0; i < f; ++i) c[b + i] = x.s_f[i];
    for (int k = 0; k < f; ++k) {
        FormElement u = x.a[k];
        for (int a = 0; a < b; ++a) u -= wedge(c[a], gens_[a].a[k]);
        for (int i = 0; i < f; ++i) u -= wedge(c[b + i], gens_[b + i].a[k]);
        c[b + f + k] = u;
    }
    return c;
}

DGVectorField CanonicalFrame::assemble(const std::vector<FormElement>& coeff, int degree) const {
    DGVectorField x = dg_zero(ctx, degree);
    for (int alpha = 0; alpha < size(); ++alpha) {
        const FormElement& c = coeff[alpha];
        if (c.is_zero()) continue;
        if (is_psi(alpha)) {
            x.s_b[alpha] += c;
            for (int k = 0; k < f; ++k) x.a[k] += wedge(c, gens_[alpha].a[k]);
        } else if (is_vhat(alpha)) {
            x.s_f[alpha - b] += c;
            for (int k = 0; k < f; ++k) x.a[k] += wedge(c, gens_[alpha].a[k]);
        } else {
            x.a[alpha - b - f] += c;
        }
    }
    return x;
}

}  // namespace fc
