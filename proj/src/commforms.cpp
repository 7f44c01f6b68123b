#include "fc/commforms.hpp"

#include "fc/errors.hpp"

namespace fc {

namespace {

using OddSeq = std::vector<std::pair<int, int>>;

void append_mask(OddSeq& seq, int category, std::uint32_t mask) {
    for (std::uint32_t rest = mask; rest;) {
        int i = __builtin_ctz(rest);
        rest &= rest - 1;
        seq.emplace_back(category, i);
    }
}

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

void CommForm::add_term(const CommFormKey& k, const Poly& c) {
    if (c.is_zero()) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
        terms.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

CommForm cf_zero(const SceneContext& ctx) {
    CommForm a;
    a.dim = ctx.dim();
    a.rank_f = ctx.rank_f();
    return a;
}

CommForm cf_one(const SceneContext& ctx) {
    CommForm a = cf_zero(ctx);
    CommFormKey k;
    k.dio.assign(ctx.rank_f(), 0);
    a.add_term(k, ctx.one_poly());
    return a;
}

CommForm cf_scale(const Scalar& s, const CommForm& a) {
    CommForm r = a;
    if (s.is_zero()) {
        r.terms.clear();
        return r;
    }
    for (auto& [k, c] : r.terms) c = s * c;
    return r;
}

CommForm cf_add(const CommForm& a, const CommForm& b) {
    CommForm r = a;
    for (const auto& [k, c] : b.terms) r.add_term(k, c);
    return r;
}

CommForm cf_sub(const CommForm& a, const CommForm& b) {
    CommForm r = a;
    for (const auto& [k, c] : b.terms) r.add_term(k, -c);
    return r;
}

CommForm cf_mul(const CommForm& a, const CommForm& b) {
    CommForm r = a;
    r.terms.clear();
    for (const auto& [ka, ca] : a.terms) {
        OddSeq sa;
        append_mask(sa, 0, ka.xi);
        append_mask(sa, 1, ka.dpsi);
        append_mask(sa, 2, ka.dvh);
        for (const auto& [kb, cb] : b.terms) {
            OddSeq sb;
            append_mask(sb, 0, kb.xi);
            append_mask(sb, 1, kb.dpsi);
            append_mask(sb, 2, kb.dvh);
            int s = merge_odd(sa, sb);
            if (s == 0) continue;
            CommFormKey k;
            k.xi = ka.xi | kb.xi;
            k.dpsi = ka.dpsi | kb.dpsi;
            k.dvh = ka.dvh | kb.dvh;
            k.dio.resize(ka.dio.size());
            for (std::size_t i = 0; i < k.dio.size(); ++i)
                k.dio[i] = static_cast<std::uint8_t>(ka.dio[i] + kb.dio[i]);
            Poly c = ca * cb;
            r.add_term(k, s < 0 ? -c : c);
        }
    }
    return r;
}

CommForm cf_project(const CanonicalFrame& fr, const Tensor& t) {
    const SceneContext& ctx = fr.ctx;
    if (t.pair_side) throw SignatureError("cf_project: graded side expected");
    CommForm out = cf_zero(ctx);
    for (const auto& [w, c] : t.terms) {
        CommForm acc = cf_zero(ctx);
        for (const auto& [mask, p] : c.terms()) {
            CommFormKey kc;
            kc.dio.assign(ctx.rank_f(), 0);
            kc.xi = mask;
            acc.add_term(kc, p);
        }
        for (int s = 0; s < t.slots(); ++s) {
            if (!t.dual[s]) throw SignatureError("cf_project: dual slots only");
            CommForm gen = cf_zero(ctx);
            CommFormKey kg;
            kg.dio.assign(ctx.rank_f(), 0);
            int alpha = w[s];
            if (fr.is_psi(alpha))
                kg.dpsi = std::uint32_t(1) << alpha;
            else if (fr.is_vhat(alpha))
                kg.dvh = std::uint32_t(1) << (alpha - fr.b);
            else
                kg.dio[alpha - fr.b - fr.f] = 1;
            gen.add_term(kg, ctx.one_poly());
            acc = cf_mul(acc, gen);
        }
        out = cf_add(out, acc);
    }
    return out;
}

std::string cf_to_string(const SceneContext& ctx, const CommForm& a) {
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
        for (std::uint32_t rest = k.dpsi; rest;) {
            int i = __builtin_ctz(rest);
            rest &= rest - 1;
            out += "*dZ[" + std::to_string(i + 1) + "]";
        }
        for (std::uint32_t rest = k.dvh; rest;) {
            int i = __builtin_ctz(rest);
            rest &= rest - 1;
            out += "*dV[" + std::to_string(i + 1) + "]";
        }
        for (std::size_t e = 0; e < k.dio.size(); ++e)
            for (int r = 0; r < k.dio[e]; ++r) out += "*diV[" + std::to_string(e + 1) + "]";
    }
    return out;
}

PairForm pf_db(const SceneContext& ctx, const PairForm& a) {
    PairForm r = pp_zero(ctx);
    for (const auto& [k, c] : a.terms) {
        FormElement w = FormElement::term(ctx.rank_f(), k.xi, c);
        FormElement dfw = ctx.d_f(w);
        for (const auto& [mask, p] : dfw.terms()) r.add_term(PairPvKey{mask, k.z}, p);
        for (int i = 0; i < ctx.rank_f(); ++i) {
            FormElement xiw = wedge(ctx.xi(i), w);
            if (xiw.is_zero()) continue;
            for (std::uint32_t rest = k.z; rest;) {
                int za = __builtin_ctz(rest);
                rest &= rest - 1;
                std::uint32_t bit = std::uint32_t(1) << za;
                int rm = mask_popcount(k.z & (bit - 1));
                for (int zc = 0; zc < ctx.rank_b(); ++zc) {
                    // dual action: nabla_i zeta^a = -Gamma^a_{i c} zeta^c
                    Poly gamma = -ctx.bott(i, zc, za);
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

PairForm pf_project(const CanonicalFrame& fr, const Tensor& t) {
    const SceneContext& ctx = fr.ctx;
    if (!t.pair_side) throw SignatureError("pf_project: quotient side expected");
    PairForm out = pp_zero(ctx);
    for (const auto& [w, c] : t.terms) {
        // plain antisymmetrization sign on the zeta word
        std::uint32_t mask = 0;
        int sign = 1;
        bool dead = false;
        for (int s = 0; s < t.slots(); ++s) {
            if (!t.dual[s]) throw SignatureError("pf_project: dual slots only");
            std::uint32_t bit = std::uint32_t(1) << w[s];
            if (mask & bit) {
                dead = true;
                break;
            }
            int after = mask_popcount(mask & ~((bit << 1) - 1));
            if (after % 2 != 0) sign = -sign;
            mask |= bit;
        }
        if (dead) continue;
        for (const auto& [xm, p] : c.terms())
            out.add_term(PairPvKey{xm, mask}, sign < 0 ? -p : p);
    }
    return out;
}

std::string pf_to_string(const SceneContext& ctx, const PairForm& a) {
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
            out += "*zeta[" + std::to_string(za + 1) + "]";
        }
    }
    return out;
}

PairForm cf_to_pair(const SceneContext& ctx, const CommForm& a) {
    PairForm out = pp_zero(ctx);
    for (const auto& [k, c] : a.terms) {
        if (k.dvh != 0) continue;
        bool any = false;
        for (auto e : k.dio)
            if (e) any = true;
        if (any) continue;
        out.add_term(PairPvKey{k.xi, k.dpsi}, c);
    }
    return out;
}

int pf_parity(const PairForm& a) {
    int p = -1;
    for (const auto& [k, c] : a.terms) {
        int kp = PairPoly::key_parity(k);
        if (p < 0) p = kp;
        if (p != kp) throw SignatureError("pf_parity: mixed parity");
    }
    return p < 0 ? 0 : p;
}

int cf_parity(const CommForm& a) {
    int p = -1;
    for (const auto& [k, c] : a.terms) {
        int kp = CommForm::key_parity(k);
        if (p < 0) p = kp;
        if (p != kp) throw SignatureError("cf_parity: mixed parity");
    }
    return p < 0 ? 0 : p;
}

}  // namespace fc
