#include "fc/polyvec.hpp"

#include "fc/errors.hpp"

namespace fc {

namespace {

// Odd symbols of a monomial in canonical order, as (category, id) pairs.
// Even generators never contribute to reordering signs.
using OddSeq = std::vector<std::pair<int, int>>;

void append_mask(OddSeq& seq, int category, std::uint32_t mask) {
    for (std::uint32_t rest = mask; rest;) {
        int i = __builtin_ctz(rest);
        rest &= rest - 1;
        seq.emplace_back(category, i);
    }
}

// Merge sign of two internally sorted odd-symbol sequences; 0 on collision.
int merge_odd(const OddSeq& a, const OddSeq& b) {
    int inversions = 0;
    std::size_t i = 0;
    for (const auto& sb : b) {
        while (i < a.size() && a[i] < sb) ++i;
        if (i < a.size() && a[i] == sb) return 0;
        inversions += static_cast<int>(a.size() - i);
    }
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

void PolyVector::add_term(const PvKey& k, const Poly& c) {
    if (c.is_zero()) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
        terms.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

PolyVector pv_zero(const SceneContext& ctx) {
    PolyVector p;
    p.dim = ctx.dim();
    p.rank_f = ctx.rank_f();
    return p;
}

PolyVector pv_scalar(const SceneContext& ctx, const Poly& p) {
    PolyVector out = pv_zero(ctx);
    PvKey k;
    k.et.assign(ctx.rank_f(), 0);
    out.add_term(k, p);
    return out;
}

PolyVector pv_from_form(const SceneContext& ctx, const FormElement& w) {
    PolyVector out = pv_zero(ctx);
    for (const auto& [mask, p] : w.terms()) {
        PvKey k;
        k.xi = mask;
        k.et.assign(ctx.rank_f(), 0);
        out.add_term(k, p);
    }
    return out;
}

PolyVector pv_add(const PolyVector& a, const PolyVector& b) {
    PolyVector r = a;
    for (const auto& [k, c] : b.terms) r.add_term(k, c);
    return r;
}

PolyVector pv_neg(const PolyVector& a) {
    PolyVector r = a;
    for (auto& [k, c] : r.terms) c = -c;
    return r;
}

PolyVector pv_sub(const PolyVector& a, const PolyVector& b) { return pv_add(a, pv_neg(b)); }

PolyVector pv_mul(const PolyVector& a, const PolyVector& b) {
    PolyVector r = a;
    r.terms.clear();
    for (const auto& [ka, ca] : a.terms) {
        OddSeq sa;
        append_mask(sa, 0, ka.xi);
        append_mask(sa, 1, ka.th);
        for (const auto& [kb, cb] : b.terms) {
            OddSeq sb;
            append_mask(sb, 0, kb.xi);
            append_mask(sb, 1, kb.th);
            int s = merge_odd(sa, sb);
            if (s == 0) continue;
            PvKey k;
            k.xi = ka.xi | kb.xi;
            k.th = ka.th | kb.th;
            k.et.resize(ka.et.size());
            for (std::size_t i = 0; i < k.et.size(); ++i)
                k.et[i] = static_cast<std::uint8_t>(ka.et[i] + kb.et[i]);
            Poly c = ca * cb;
            r.add_term(k, s < 0 ? -c : c);
        }
    }
    return r;
}

PolyVector pv_symbol(const SceneContext& ctx, const DGVectorField& x) {
    PolyVector out = pv_zero(ctx);
    for (int mu = 0; mu < ctx.dim(); ++mu) {
        FormElement smu = dg_on_poly(ctx, x, Poly::variable(ctx.dim(), mu));
        if (smu.is_zero()) continue;
        PolyVector th = pv_zero(ctx);
        PvKey k;
        k.th = std::uint32_t(1) << mu;
        k.et.assign(ctx.rank_f(), 0);
        th.add_term(k, ctx.one_poly());
        out = pv_add(out, pv_mul(pv_from_form(ctx, smu), th));
    }
    for (int kxi = 0; kxi < ctx.rank_f(); ++kxi) {
        if (x.a[kxi].is_zero()) continue;
        PolyVector et = pv_zero(ctx);
        PvKey k;
        k.et.assign(ctx.rank_f(), 0);
        k.et[kxi] = 1;
        et.add_term(k, ctx.one_poly());
        out = pv_add(out, pv_mul(pv_from_form(ctx, x.a[kxi]), et));
    }
    return out;
}

namespace {

struct Derived {
    PvKey key;
    Poly coeff;
};

// Right derivative with respect to theta_mu.
bool d_right_th(const PvKey& k, const Poly& c, int mu, Derived& out) {
    std::uint32_t bit = std::uint32_t(1) << mu;
    if (!(k.th & bit)) return false;
    int after = mask_popcount(k.th & ~((bit << 1) - 1));
    out.key = k;
    out.key.th &= ~bit;
    out.coeff = (after % 2 != 0) ? -c : c;
    return true;
}

// Left derivative with respect to xi_i.
bool d_left_xi(const PvKey& k, const Poly& c, int i, Derived& out) {
    XiMask bit = XiMask(1) << i;
    if (!(k.xi & bit)) return false;
    int before = mask_popcount(k.xi & (bit - 1));
    out.key = k;
    out.key.xi &= ~bit;
    out.coeff = (before % 2 != 0) ? -c : c;
    return true;
}

// Derivative with respect to eta_k (even generator; sides agree).
bool d_eta(const PvKey& k, const Poly& c, int e, Derived& out) {
    if (k.et[e] == 0) return false;
    out.key = k;
    out.key.et[e] -= 1;
    out.coeff = Scalar(k.et[e]) * c;
    return true;
}

void accumulate_pair(PolyVector& acc, const PvKey& ka, const Poly& ca, const PvKey& kb,
                     const Poly& cb, int dim, int rank_f, int outer_sign) {
    // sum over conjugate pairs: (theta_mu, x_mu) and (eta_k, xi_k)
    Derived da, db;
    for (int mu = 0; mu < dim; ++mu) {
        if (d_right_th(ka, ca, mu, da)) {
            Poly dxb = cb.derivative(mu);
            if (!dxb.is_zero()) {
                PolyVector lhs, rhs;
                lhs.dim = rhs.dim = dim;
                lhs.rank_f = rhs.rank_f = rank_f;
                lhs.add_term(da.key, da.coeff);
                PvKey kb2 = kb;
                rhs.add_term(kb2, dxb);
                PolyVector prod = pv_mul(lhs, rhs);
                for (const auto& [k, c] : prod.terms)
                    acc.add_term(k, outer_sign < 0 ? -c : c);
            }
        }
    }
    for (int e = 0; e < rank_f; ++e) {
        if (d_eta(ka, ca, e, da) && d_left_xi(kb, cb, e, db)) {
            PolyVector lhs, rhs;
            lhs.dim = rhs.dim = dim;
            lhs.rank_f = rhs.rank_f = rank_f;
            lhs.add_term(da.key, da.coeff);
            rhs.add_term(db.key, db.coeff);
            PolyVector prod = pv_mul(lhs, rhs);
            for (const auto& [k, c] : prod.terms) acc.add_term(k, outer_sign < 0 ? -c : c);
        }
    }
}

}  // namespace

PolyVector pv_schouten(const PolyVector& a, const PolyVector& b) {
    PolyVector acc;
    acc.dim = a.dim ? a.dim : b.dim;
    acc.rank_f = a.rank_f ? a.rank_f : b.rank_f;
    for (const auto& [ka, ca] : a.terms) {
        int pa = PolyVector::key_parity(ka);
        for (const auto& [kb, cb] : b.terms) {
            int pb = PolyVector::key_parity(kb);
            accumulate_pair(acc, ka, ca, kb, cb, acc.dim, acc.rank_f, +1);
            int s = ((pa + 1) * (pb + 1)) % 2 != 0 ? -1 : 1;
            accumulate_pair(acc, kb, cb, ka, ca, acc.dim, acc.rank_f, -s);
        }
    }
    return acc;
}

PolyVector pv_lq(const SceneContext& ctx, const PolyVector& a) {
    return pv_schouten(pv_symbol(ctx, homological_field(ctx)), a);
}

DGVectorField pv_to_vf(const SceneContext& ctx, const PolyVector& a, int degree) {
    std::vector<FormElement> coord(ctx.dim(), ctx.zero_form());
    DGVectorField x = dg_zero(ctx, degree);
    for (const auto& [k, c] : a.terms) {
        bool et_zero = true;
        for (auto e : k.et)
            if (e) et_zero = false;
        if (mask_popcount(k.th) == 1 && et_zero) {
            coord[__builtin_ctz(k.th)].add_term(k.xi, c);
        } else if (k.th == 0 && !et_zero) {
            int total = 0, which = -1;
            for (std::size_t e = 0; e < k.et.size(); ++e) {
                total += k.et[e];
                if (k.et[e]) which = static_cast<int>(e);
            }
            if (total == 1) x.a[which].add_term(k.xi, c);
        }
    }
    for (int mu = 0; mu < ctx.dim(); ++mu) {
        if (coord[mu].is_zero()) continue;
        FrameDecomposition dec = ctx.decompose(PolyVectorField::coordinate(ctx.dim(), mu));
        for (int i = 0; i < ctx.rank_f(); ++i) x.s_f[i] += dec.along_f[i] * coord[mu];
        for (int b = 0; b < ctx.rank_b(); ++b) x.s_b[b] += dec.along_b[b] * coord[mu];
    }
    return x;
}

std::string pv_to_string(const SceneContext& ctx, const PolyVector& a) {
    if (a.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : a.terms) {
        if (!first) out += " + ";
        first = false;
        out += "(" + c.to_string(ctx.coords()) + ")";
        for (XiMask rest = k.xi; rest;) {
            int i = __builtin_ctz(rest);
            rest &= rest - 1;
            out += "*xi[" + std::to_string(i + 1) + "]";
        }
        for (std::uint32_t rest = k.th; rest;) {
            int mu = __builtin_ctz(rest);
            rest &= rest - 1;
            out += "*D[" + ctx.coords()[mu] + "]";
        }
        for (std::size_t e = 0; e < k.et.size(); ++e)
            for (int r = 0; r < k.et[e]; ++r) out += "*Dxi[" + std::to_string(e + 1) + "]";
    }
    return out;
}

void PairPoly::add_term(const PairPvKey& k, const Poly& c) {
    if (c.is_zero()) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
        terms.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

PairPoly pp_zero(const SceneContext& ctx) {
    PairPoly p;
    p.dim = ctx.dim();
    p.rank_f = ctx.rank_f();
    return p;
}

PairPoly pp_scalar(const SceneContext& ctx, const Poly& p) {
    PairPoly out = pp_zero(ctx);
    out.add_term(PairPvKey{}, p);
    return out;
}

PairPoly pp_from_form(const SceneContext& ctx, const FormElement& w) {
    PairPoly out = pp_zero(ctx);
    for (const auto& [mask, p] : w.terms()) out.add_term(PairPvKey{mask, 0}, p);
    return out;
}

PairPoly pp_generator_z(const SceneContext& ctx, int a) {
    PairPoly out = pp_zero(ctx);
    out.add_term(PairPvKey{0, std::uint32_t(1) << a}, ctx.one_poly());
    return out;
}

PairPoly pp_add(const PairPoly& a, const PairPoly& b) {
    PairPoly r = a;
    for (const auto& [k, c] : b.terms) r.add_term(k, c);
    return r;
}

PairPoly pp_sub(const PairPoly& a, const PairPoly& b) {
    PairPoly r = a;
    for (const auto& [k, c] : b.terms) r.add_term(k, -c);
    return r;
}

PairPoly pp_mul(const PairPoly& a, const PairPoly& b) {
    PairPoly r = a;
    r.terms.clear();
    for (const auto& [ka, ca] : a.terms) {
        OddSeq sa;
        append_mask(sa, 0, ka.xi);
        append_mask(sa, 1, ka.z);
        for (const auto& [kb, cb] : b.terms) {
            OddSeq sb;
            append_mask(sb, 0, kb.xi);
            append_mask(sb, 1, kb.z);
            int s = merge_odd(sa, sb);
            if (s == 0) continue;
            PairPvKey k{static_cast<XiMask>(ka.xi | kb.xi), ka.z | kb.z};
            Poly c = ca * cb;
            r.add_term(k, s < 0 ? -c : c);
        }
    }
    return r;
}

PairPoly pp_db(const SceneContext& ctx, const PairPoly& a) {
    PairPoly r = pp_zero(ctx);
    for (const auto& [k, c] : a.terms) {
        // differential of the coefficient form
        FormElement w = FormElement::term(ctx.rank_f(), k.xi, c);
        FormElement dfw = ctx.d_f(w);
        for (const auto& [mask, p] : dfw.terms()) r.add_term(PairPvKey{mask, k.z}, p);
        // connection term: xi^i ^ (coefficient) x Bott action on the Z-word
        for (int i = 0; i < ctx.rank_f(); ++i) {
            FormElement xiw = wedge(ctx.xi(i), w);
            if (xiw.is_zero()) continue;
            for (std::uint32_t rest = k.z; rest;) {
                int za = __builtin_ctz(rest);
                rest &= rest - 1;
                std::uint32_t bit = std::uint32_t(1) << za;
                int rm = mask_popcount(k.z & (bit - 1));
                for (int zc = 0; zc < ctx.rank_b(); ++zc) {
                    const Poly& gamma = ctx.bott(i, za, zc);
                    if (gamma.is_zero()) continue;
                    std::uint32_t reduced = k.z & ~bit;
                    std::uint32_t nbit = std::uint32_t(1) << zc;
                    if (reduced & nbit) continue;
                    int ins = mask_popcount(reduced & (nbit - 1));
                    int sgn = ((rm + ins) % 2 != 0) ? -1 : 1;
                    for (const auto& [mask, p] : xiw.terms()) {
                        Poly val = gamma * p;
                        r.add_term(PairPvKey{mask, reduced | nbit}, sgn < 0 ? -val : val);
                    }
                }
            }
        }
    }
    return r;
}

std::string pp_to_string(const SceneContext& ctx, const PairPoly& a) {
    if (a.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : a.terms) {
        if (!first) out += " + ";
        first = false;
        out += "(" + c.to_string(ctx.coords()) + ")";
        for (XiMask rest = k.xi; rest;) {
            int i = __builtin_ctz(rest);
            rest &= rest - 1;
            out += "*xi[" + std::to_string(i + 1) + "]";
        }
        for (std::uint32_t rest = k.z; rest;) {
            int za = __builtin_ctz(rest);
            rest &= rest - 1;
            out += "*Z[" + std::to_string(za + 1) + "]";
        }
    }
    return out;
}

void PolyContraction::FrPoly::add(const FrKey& k, const Poly& c) {
    if (c.is_zero()) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
        terms.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

PolyContraction::FrPoly PolyContraction::fr_mul(const FrPoly& a, const FrPoly& b) const {
    FrPoly r;
    for (const auto& [ka, ca] : a.terms) {
        OddSeq sa;
        append_mask(sa, 0, ka.xi);
        append_mask(sa, 1, ka.psi);
        append_mask(sa, 2, ka.vhat);
        for (const auto& [kb, cb] : b.terms) {
            OddSeq sb;
            append_mask(sb, 0, kb.xi);
            append_mask(sb, 1, kb.psi);
            append_mask(sb, 2, kb.vhat);
            int s = merge_odd(sa, sb);
            if (s == 0) continue;
            FrKey k;
            k.xi = ka.xi | kb.xi;
            k.psi = ka.psi | kb.psi;
            k.vhat = ka.vhat | kb.vhat;
            k.iota.resize(ka.iota.size());
            for (std::size_t i = 0; i < k.iota.size(); ++i)
                k.iota[i] = static_cast<std::uint8_t>(ka.iota[i] + kb.iota[i]);
            Poly c = ca * cb;
            r.add(k, s < 0 ? -c : c);
        }
    }
    return r;
}

PolyContraction::PolyContraction(const CanonicalFrame& fr) : fr_(fr) {
    const SceneContext& ctx = fr_.ctx;
    int f = fr_.f, b = fr_.b, d = ctx.dim();
    for (int alpha = 0; alpha < fr_.size(); ++alpha)
        gen_symbols_.push_back(pv_symbol(ctx, fr_.generator(alpha)));

    // theta_mu = sum_alpha Minv coefficients * (gen symbol minus its eta part)
    for (int mu = 0; mu < d; ++mu) {
        FrPoly acc;
        FrameDecomposition dec = ctx.decompose(PolyVectorField::coordinate(d, mu));
        for (int i = 0; i < f; ++i) {
            const Poly& coef = dec.along_f[i];
            if (coef.is_zero()) continue;
            FrKey k;
            k.iota.assign(f, 0);
            k.vhat = std::uint32_t(1) << i;
            acc.add(k, coef);
            // minus the coframe-action part of the lifted generator
            for (int e = 0; e < f; ++e) {
                for (const auto& [mask, p] : fr_.generator(b + i).a[e].terms()) {
                    FrKey ke;
                    ke.xi = mask;
                    ke.iota.assign(f, 0);
                    ke.iota[e] = 1;
                    acc.add(ke, -(coef * p));
                }
            }
        }
        for (int a = 0; a < b; ++a) {
            const Poly& coef = dec.along_b[a];
            if (coef.is_zero()) continue;
            FrKey k;
            k.iota.assign(f, 0);
            k.psi = std::uint32_t(1) << a;
            acc.add(k, coef);
            for (int e = 0; e < f; ++e) {
                for (const auto& [mask, p] : fr_.generator(a).a[e].terms()) {
                    FrKey ke;
                    ke.xi = mask;
                    ke.iota.assign(f, 0);
                    ke.iota[e] = 1;
                    acc.add(ke, -(coef * p));
                }
            }
        }
        th_subst_.push_back(acc);
    }
}

PolyContraction::FrPoly PolyContraction::to_frame(const PolyVector& p) const {
    int f = fr_.f;
    FrPoly out;
    for (const auto& [k, c] : p.terms) {
        FrPoly acc;
        FrKey k0;
        k0.xi = k.xi;
        k0.iota.assign(f, 0);
        acc.add(k0, c);
        for (std::uint32_t rest = k.th; rest;) {
            int mu = __builtin_ctz(rest);
            rest &= rest - 1;
            acc = fr_mul(acc, th_subst_[mu]);
        }
        bool any_eta = false;
        FrKey keta;
        keta.iota.assign(f, 0);
        for (int e = 0; e < f; ++e) {
            keta.iota[e] = k.et[e];
            if (k.et[e]) any_eta = true;
        }
        if (any_eta) {
            FrPoly eta;
            eta.add(keta, fr_.ctx.one_poly());
            acc = fr_mul(acc, eta);
        }
        for (const auto& [kk, cc] : acc.terms) out.add(kk, cc);
    }
    return out;
}

PolyVector PolyContraction::from_frame(const FrPoly& p) const {
    const SceneContext& ctx = fr_.ctx;
    PolyVector out = pv_zero(ctx);
    for (const auto& [k, c] : p.terms) {
        PolyVector acc = pv_zero(ctx);
        PvKey k0;
        k0.xi = k.xi;
        k0.et.assign(fr_.f, 0);
        acc.add_term(k0, c);
        for (std::uint32_t rest = k.psi; rest;) {
            int a = __builtin_ctz(rest);
            rest &= rest - 1;
            acc = pv_mul(acc, gen_symbols_[a]);
        }
        for (std::uint32_t rest = k.vhat; rest;) {
            int i = __builtin_ctz(rest);
            rest &= rest - 1;
            acc = pv_mul(acc, gen_symbols_[fr_.b + i]);
        }
        bool any = false;
        PvKey keta;
        keta.et.assign(fr_.f, 0);
        for (int e = 0; e < fr_.f; ++e) {
            keta.et[e] = k.iota[e];
            if (k.iota[e]) any = true;
        }
        if (any) {
            PolyVector eta = pv_zero(ctx);
            eta.add_term(keta, ctx.one_poly());
            acc = pv_mul(acc, eta);
        }
        out = pv_add(out, acc);
    }
    return out;
}

PolyVector PolyContraction::psi(const PairPoly& s) const {
    const SceneContext& ctx = fr_.ctx;
    PolyVector out = pv_zero(ctx);
    for (const auto& [k, c] : s.terms) {
        PolyVector acc = pv_zero(ctx);
        PvKey k0;
        k0.xi = k.xi;
        k0.et.assign(fr_.f, 0);
        acc.add_term(k0, c);
        for (std::uint32_t rest = k.z; rest;) {
            int a = __builtin_ctz(rest);
            rest &= rest - 1;
            acc = pv_mul(acc, gen_symbols_[a]);
        }
        out = pv_add(out, acc);
    }
    return out;
}

PairPoly PolyContraction::phi(const PolyVector& p) const {
    const SceneContext& ctx = fr_.ctx;
    FrPoly f = to_frame(p);
    PairPoly out = pp_zero(ctx);
    for (const auto& [k, c] : f.terms) {
        if (k.vhat != 0) continue;
        bool any_iota = false;
        for (auto e : k.iota)
            if (e) any_iota = true;
        if (any_iota) continue;
        out.add_term(PairPvKey{k.xi, k.psi}, c);
    }
    return out;
}

PolyVector PolyContraction::h(const PolyVector& p) const {
    FrPoly f = to_frame(p);
    FrPoly out;
    for (const auto& [k, c] : f.terms) {
        if (k.vhat == 0) continue;
        int first = __builtin_ctz(k.vhat);
        FrKey nk = k;
        nk.vhat &= nk.vhat - 1;
        nk.iota[first] = static_cast<std::uint8_t>(nk.iota[first] + 1);
        // odd map crossing the coefficient form
        Poly val = (mask_popcount(k.xi) % 2 != 0) ? -c : c;
        out.add(nk, val);
    }
    return from_frame(out);
}

}  // namespace fc
