#include "fc/classes.hpp"

#include <array>
#include <functional>

#include "fc/errors.hpp"

namespace fc {

namespace {

int frame_index_by_name(const CanonicalFrame& fr, const std::string& name) {
    for (int alpha = 0; alpha < fr.size(); ++alpha)
        if (fr.name(alpha) == name) return alpha;
    throw ParseError("unknown frame element '" + name + "'");
}

int iota_bit(const CanonicalFrame& fr, int alpha) { return fr.vec_degree(alpha) != 0 ? 1 : 0; }

}  // namespace

DGConnection DGConnection::from_scene(const CanonicalFrame& fr) {
    DGConnection conn;
    const SceneContext& ctx = fr.ctx;
    for (const auto& e : ctx.spec().dg_connection) {
        std::array<int, 3> key{frame_index_by_name(fr, e.on), frame_index_by_name(fr, e.of),
                               frame_index_by_name(fr, e.out)};
        FormElement val = FormElement::parse(e.value, ctx.rank_f(), ctx.coords());
        if (!val.is_zero()) {
            int want = fr.vec_degree(key[2]) - fr.vec_degree(key[0]) - fr.vec_degree(key[1]);
            if (val.degree() != want)
                throw ShapeError("christoffel " + e.on + "," + e.of + "->" + e.out +
                                 " must have form degree " + std::to_string(want));
            conn.gamma[key] = val;
        }
    }
    return conn;
}

FormElement DGConnection::christoffel(const CanonicalFrame& fr, int alpha, int beta,
                                      int out) const {
    auto it = gamma.find({alpha, beta, out});
    return it == gamma.end() ? fr.ctx.zero_form() : it->second;
}

DGVectorField conn_nabla(const CanonicalFrame& fr, const DGConnection& conn,
                         const DGVectorField& x, const DGVectorField& y) {
    const SceneContext& ctx = fr.ctx;
    std::vector<FormElement> xc = fr.coords(x);
    std::vector<FormElement> yc = fr.coords(y);
    std::vector<FormElement> out(fr.size(), ctx.zero_form());
    // flat part: X(Y^beta) e_beta
    for (int beta = 0; beta < fr.size(); ++beta)
        if (!yc[beta].is_zero()) out[beta] += vf_apply(ctx, x, yc[beta]);
    // Christoffel part: (-1)^{|X||Y^beta|} Y^beta X^alpha Gamma^out_{alpha beta}
    if (!conn.gamma.empty()) {
        for (const auto& [key, g] : conn.gamma) {
            int alpha = key[0], beta = key[1], target = key[2];
            if (xc[alpha].is_zero() || yc[beta].is_zero()) continue;
            int ybeta_parity = (y.degree - fr.vec_degree(beta)) % 2;
            FormElement coeff = wedge(yc[beta], wedge(xc[alpha], g));
            if ((x.degree % 2 != 0) && (ybeta_parity % 2 != 0)) coeff = -coeff;
            out[target] += coeff;
        }
    }
    return fr.assemble(out, x.degree + y.degree);
}

AtiyahDg atiyah_dg(const CanonicalFrame& fr, const DGConnection& conn) {
    const SceneContext& ctx = fr.ctx;
    int n = fr.size();
    AtiyahDg result;
    result.table.assign(
        n, std::vector<std::vector<FormElement>>(n, std::vector<FormElement>(n, ctx.zero_form())));
    result.tensor21 = tensor_zero(false, {true, true, false});

    std::vector<DGVectorField> lq_gens;
    for (int alpha = 0; alpha < n; ++alpha) {
        std::vector<FormElement> co(n, ctx.zero_form());
        for (int beta = 0; beta < n; ++beta) co[beta] = fr.lq_vec(alpha, beta);
        lq_gens.push_back(fr.assemble(co, fr.vec_degree(alpha) + 1));
    }

    for (int alpha = 0; alpha < n; ++alpha) {
        for (int beta = 0; beta < n; ++beta) {
            DGVectorField nab = conn_nabla(fr, conn, fr.generator(alpha), fr.generator(beta));
            DGVectorField term1 = vf_bracket(ctx, fr.q_field(), nab);
            DGVectorField term2 = conn_nabla(fr, conn, lq_gens[alpha], fr.generator(beta));
            DGVectorField term3 = conn_nabla(fr, conn, fr.generator(alpha), lq_gens[beta]);
            DGVectorField total = term1 - term2;
            if (fr.vec_degree(alpha) % 2 != 0)
                total = total + term3;
            else
                total = total - term3;
            std::vector<FormElement> co = fr.coords(total);
            for (int g = 0; g < n; ++g) result.table[alpha][beta][g] = co[g];
        }
    }

    for (int alpha = 0; alpha < n; ++alpha)
        for (int beta = 0; beta < n; ++beta)
            for (int g = 0; g < n; ++g) {
                const FormElement& c = result.table[alpha][beta][g];
                if (c.is_zero()) continue;
                int e = (iota_bit(fr, beta) + iota_bit(fr, g)) * iota_bit(fr, alpha) +
                        iota_bit(fr, g) * iota_bit(fr, beta);
                Word w{static_cast<std::uint8_t>(alpha), static_cast<std::uint8_t>(beta),
                       static_cast<std::uint8_t>(g)};
                result.tensor21.add_term(w, (e % 2 != 0) ? -c : c);
            }
    return result;
}

PairConnection PairConnection::zero(const SceneContext& ctx) {
    PairConnection p;
    p.gamma.assign(ctx.rank_b(),
                   std::vector<std::vector<Poly>>(
                       ctx.rank_b(), std::vector<Poly>(ctx.rank_b(), Poly(ctx.dim()))));
    return p;
}

PairConnection induced_connection(const CanonicalFrame& fr, const ContractionData& cd,
                                  const DGConnection& conn) {
    const SceneContext& ctx = fr.ctx;
    PairConnection p = PairConnection::zero(ctx);
    for (int a = 0; a < fr.b; ++a)
        for (int b2 = 0; b2 < fr.b; ++b2) {
            DGVectorField nab = conn_nabla(fr, conn, fr.generator(a), fr.generator(b2));
            Tensor img = cd.phi_vf(nab);
            for (const auto& [w, c] : img.terms) {
                if (!c.is_zero() && c.degree() != 0)
                    throw ShapeError("induced connection produced a non-scalar coefficient");
                p.gamma[a][b2][w[0]] = c.coefficient(0);
            }
        }
    return p;
}

namespace {

// Covariant derivative of a quotient-bundle section along V_i / jZ_a.
std::vector<Poly> pair_nabla_v(const SceneContext& ctx, int i, const std::vector<Poly>& sec) {
    std::vector<Poly> out(ctx.rank_b(), Poly(ctx.dim()));
    for (int c = 0; c < ctx.rank_b(); ++c) {
        out[c] = vf_derive(ctx.v_field(i), sec[c]);
        for (int b2 = 0; b2 < ctx.rank_b(); ++b2) out[c] += ctx.bott(i, b2, c) * sec[b2];
    }
    return out;
}

std::vector<Poly> pair_nabla_jz(const SceneContext& ctx, const PairConnection& p, int a,
                                const std::vector<Poly>& sec) {
    std::vector<Poly> out(ctx.rank_b(), Poly(ctx.dim()));
    for (int c = 0; c < ctx.rank_b(); ++c) {
        out[c] = vf_derive(ctx.jz_field(a), sec[c]);
        for (int b2 = 0; b2 < ctx.rank_b(); ++b2) out[c] += p.gamma[a][b2][c] * sec[b2];
    }
    return out;
}

std::vector<Poly> pair_nabla_w(const SceneContext& ctx, const PairConnection& p,
                               const PolyVectorField& w, const std::vector<Poly>& sec) {
    FrameDecomposition dec = ctx.decompose(w);
    std::vector<Poly> out(ctx.rank_b(), Poly(ctx.dim()));
    for (int i = 0; i < ctx.rank_f(); ++i) {
        if (dec.along_f[i].is_zero()) continue;
        std::vector<Poly> t = pair_nabla_v(ctx, i, sec);
        for (int c = 0; c < ctx.rank_b(); ++c) out[c] += dec.along_f[i] * t[c];
    }
    for (int a = 0; a < ctx.rank_b(); ++a) {
        if (dec.along_b[a].is_zero()) continue;
        std::vector<Poly> t = pair_nabla_jz(ctx, p, a, sec);
        for (int c = 0; c < ctx.rank_b(); ++c) out[c] += dec.along_b[a] * t[c];
    }
    return out;
}

}  // namespace

Tensor atiyah_pair(const CanonicalFrame& fr, const PairConnection& pconn) {
    const SceneContext& ctx = fr.ctx;
    Tensor r = tensor_zero(true, {true, true, false});
    for (int i = 0; i < ctx.rank_f(); ++i)
        for (int a = 0; a < ctx.rank_b(); ++a)
            for (int b2 = 0; b2 < ctx.rank_b(); ++b2) {
                std::vector<Poly> e(ctx.rank_b(), Poly(ctx.dim()));
                e[b2] = ctx.one_poly();
                std::vector<Poly> t1 = pair_nabla_v(ctx, i, pair_nabla_jz(ctx, pconn, a, e));
                std::vector<Poly> t2 = pair_nabla_jz(ctx, pconn, a, pair_nabla_v(ctx, i, e));
                std::vector<Poly> t3 = pair_nabla_w(
                    ctx, pconn, vf_bracket_coords(ctx.v_field(i), ctx.jz_field(a)), e);
                for (int c = 0; c < ctx.rank_b(); ++c) {
                    Poly val = t1[c] - t2[c] - t3[c];
                    if (val.is_zero()) continue;
                    Word w{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b2),
                           static_cast<std::uint8_t>(c)};
                    r.add_term(w, FormElement::term(ctx.rank_f(), XiMask(1) << i, val));
                }
            }
    return r;
}

Tensor end_identity(const CanonicalFrame& fr, bool pair_side) {
    Tensor t = tensor_zero(pair_side, {false, true});
    int n = pair_side ? fr.b : fr.size();
    for (int g = 0; g < n; ++g)
        t.add_term({static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(g)},
                   fr.ctx.scalar_form(fr.ctx.one_poly()));
    return t;
}

Tensor end_compose(const CanonicalFrame& fr, const Tensor& a, const Tensor& b) {
    if (a.pair_side != b.pair_side) throw SignatureError("end_compose: mixed sides");
    int ma = a.slots() - 2, mb = b.slots() - 2;
    std::vector<bool> dual(ma + mb, true);
    dual.push_back(false);
    dual.push_back(true);
    Tensor r = tensor_zero(a.pair_side, dual);
    for (const auto& [wa, ca] : a.terms) {
        int prefix_a = 0;
        for (int s = 0; s < ma; ++s)
            prefix_a += symbol_degree(fr, a.pair_side, true, wa[s]);
        int deg_gamma_a = symbol_degree(fr, a.pair_side, false, wa[ma]);
        int deg_delta_a = symbol_degree(fr, a.pair_side, true, wa[ma + 1]);
        for (const auto& [wb, cb] : b.terms) {
            if (wa[ma + 1] != wb[mb]) continue;  // contract delta_A against gamma_B
            int prefix_b = 0;
            for (int s = 0; s < mb; ++s)
                prefix_b += symbol_degree(fr, b.pair_side, true, wb[s]);
            Word w;
            for (int s = 0; s < ma; ++s) w.push_back(wa[s]);
            for (int s = 0; s < mb; ++s) w.push_back(wb[s]);
            w.push_back(wa[ma]);
            w.push_back(wb[mb + 1]);
            int moves = (deg_delta_a * prefix_b + deg_gamma_a * prefix_b) % 2;
            for (const auto& cbp : cb.homogeneous_parts()) {
                int e = moves +
                        cbp.degree() * (prefix_a + deg_gamma_a + deg_delta_a);
                FormElement coeff = wedge(ca, cbp);
                r.add_term(w, (e % 2 != 0) ? -coeff : coeff);
            }
        }
    }
    return r;
}

Tensor end_power(const CanonicalFrame& fr, const Tensor& a, int k) {
    Tensor acc = a;
    for (int i = 1; i < k; ++i) acc = end_compose(fr, acc, a);
    return acc;
}

Tensor end_str(const CanonicalFrame& fr, const Tensor& a) {
    int m = a.slots() - 2;
    Tensor r = tensor_zero(a.pair_side, std::vector<bool>(m, true));
    for (const auto& [w, c] : a.terms) {
        if (w[m] != w[m + 1]) continue;
        int dg = symbol_degree(fr, a.pair_side, false, w[m]);
        Word nw(w.begin(), w.begin() + m);
        r.add_term(nw, (dg % 2 != 0) ? -c : c);
    }
    return r;
}

Tensor end_tr(const CanonicalFrame& fr, const Tensor& a) {
    if (!a.pair_side) throw SignatureError("end_tr: quotient side expected");
    return end_str(fr, a);
}

Tensor end_from_tensor21(const CanonicalFrame& fr, const Tensor& t21) {
    return tensor_reorder(fr, t21, {0, 2, 1});
}

namespace {

std::vector<int> to_canonical_perm(int m) {
    // [duals m, vec, dual] -> [duals m, dual, vec]
    std::vector<int> perm;
    for (int i = 0; i < m; ++i) perm.push_back(i);
    perm.push_back(m + 1);
    perm.push_back(m);
    return perm;
}

}  // namespace

Tensor end_big_phi(const ContractionData& cd, const Tensor& a) {
    const CanonicalFrame& fr = cd.frame();
    int m = a.slots() - 2;
    Tensor canon = tensor_reorder(fr, a, to_canonical_perm(m));
    Tensor img = cd.big_phi(canon);
    return tensor_reorder(fr, img, to_canonical_perm(m));
}

Tensor end_big_h(const ContractionData& cd, const Tensor& a) {
    const CanonicalFrame& fr = cd.frame();
    int m = a.slots() - 2;
    Tensor canon = tensor_reorder(fr, a, to_canonical_perm(m));
    Tensor img = cd.big_h(canon);
    return tensor_reorder(fr, img, to_canonical_perm(m));
}

std::vector<CommForm> berezinian_series_dg(const CanonicalFrame& fr, const Tensor& omega_end,
                                           const SeriesSpec& p, int s, std::string* mismatch) {
    const SceneContext& ctx = fr.ctx;
    std::vector<PowerSumPoly> kr = m_sequence(p, s);
    // route 1: K_r evaluated on p_i = str(omega^i)
    std::vector<CommForm> pvals;
    for (int i = 1; i <= s; ++i)
        pvals.push_back(cf_project(fr, end_str(fr, end_power(fr, omega_end, i))));
    std::vector<CommForm> route1;
    for (int r = 1; r <= s; ++r) {
        CommForm acc = cf_zero(ctx);
        for (const auto& [e, c] : kr[r - 1]) {
            CommForm term = cf_one(ctx);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int rep = 0; rep < e[i]; ++rep) term = cf_mul(term, pvals[i]);
            acc = cf_add(acc, cf_scale(c, term));
        }
        route1.push_back(acc);
    }
    // route 2: exp(str(log(P(omega)))) with weights graded by power count
    std::vector<Tensor> npow_base;  // N[w] = b_w omega^w
    for (int w = 1; w <= s; ++w) {
        Tensor t = end_power(fr, omega_end, w);
        Tensor scaled = tensor_zero(t.pair_side, t.dual);
        for (const auto& [word, c] : t.terms) scaled.add_term(word, p.b[w - 1] * c);
        npow_base.push_back(scaled);
    }
    // log(1+N) = sum_r (-1)^{r+1} N^r / r, weight-convolved
    std::vector<CommForm> logw(s + 1, cf_zero(ctx));
    {
        // N^r contributions: iterate compositions of weight w into r parts
        for (int r = 1; r <= s; ++r) {
            Scalar coeff = Scalar::rational(r % 2 == 1 ? 1 : -1, r);
            // enumerate (w1..wr), wi>=1, sum<=s
            std::vector<int> parts(r, 1);
            while (true) {
                int total = 0;
                for (int x : parts) total += x;
                if (total <= s) {
                    Tensor prod = npow_base[parts[0] - 1];
                    for (int t = 1; t < r; ++t)
                        prod = end_compose(fr, prod, npow_base[parts[t] - 1]);
                    logw[total] =
                        cf_add(logw[total], cf_scale(coeff, cf_project(fr, end_str(fr, prod))));
                }
                int pos = r - 1;
                while (pos >= 0 && parts[pos] + 1 > s) {
                    parts[pos] = 1;
                    --pos;
                }
                if (pos < 0) break;
                parts[pos] += 1;
            }
        }
    }
    // exp of the weight-graded scalar
    std::vector<CommForm> route2(s + 1, cf_zero(ctx));
    route2[0] = cf_one(ctx);
    std::vector<CommForm> cur = logw;
    BigInt fact(1);
    for (int k = 1; k <= s; ++k) {
        fact = fact * BigInt(k);
        Scalar inv(BigInt(1), BigInt(0), fact);
        for (int w = 0; w <= s; ++w) route2[w] = cf_add(route2[w], cf_scale(inv, cur[w]));
        // cur = cur * logw (weight convolution)
        std::vector<CommForm> next(s + 1, cf_zero(ctx));
        for (int w1 = 0; w1 <= s; ++w1)
            for (int w2 = 1; w1 + w2 <= s; ++w2)
                next[w1 + w2] = cf_add(next[w1 + w2], cf_mul(cur[w1], logw[w2]));
        cur = next;
    }
    for (int r = 1; r <= s; ++r) {
        if (!(route1[r - 1] == route2[r])) {
            std::string msg = "graded-side weight " + std::to_string(r) + ": m-sequence " +
                              cf_to_string(ctx, route1[r - 1]) + " vs exp-str-log " +
                              cf_to_string(ctx, route2[r]) + "; ";
            if (!mismatch) throw RoutesDisagree(msg);
            *mismatch += msg;
        }
    }
    return route1;
}

std::vector<PairForm> berezinian_series_pair(const CanonicalFrame& fr, const Tensor& omega_end,
                                             const SeriesSpec& p, int s, std::string* mismatch) {
    const SceneContext& ctx = fr.ctx;
    std::vector<PowerSumPoly> kr = m_sequence(p, s);
    std::vector<PairForm> pvals;
    for (int i = 1; i <= s; ++i)
        pvals.push_back(pf_project(fr, end_tr(fr, end_power(fr, omega_end, i))));
    std::vector<PairForm> route1;
    for (int r = 1; r <= s; ++r) {
        PairForm acc = pp_zero(ctx);
        for (const auto& [e, c] : kr[r - 1]) {
            PairForm term = pp_scalar(ctx, ctx.one_poly());
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int rep = 0; rep < e[i]; ++rep) term = pp_mul(term, pvals[i]);
            for (auto& [k2, c2] : term.terms) c2 = c * c2;
            acc = pp_add(acc, term);
        }
        route1.push_back(acc);
    }
    std::vector<Tensor> npow_base;
    for (int w = 1; w <= s; ++w) {
        Tensor t = end_power(fr, omega_end, w);
        Tensor scaled = tensor_zero(t.pair_side, t.dual);
        for (const auto& [word, c] : t.terms) scaled.add_term(word, p.b[w - 1] * c);
        npow_base.push_back(scaled);
    }
    std::vector<PairForm> logw(s + 1, pp_zero(ctx));
    for (int r = 1; r <= s; ++r) {
        Scalar coeff = Scalar::rational(r % 2 == 1 ? 1 : -1, r);
        std::vector<int> parts(r, 1);
        while (true) {
            int total = 0;
            for (int x : parts) total += x;
            if (total <= s) {
                Tensor prod = npow_base[parts[0] - 1];
                for (int t = 1; t < r; ++t) prod = end_compose(fr, prod, npow_base[parts[t] - 1]);
                PairForm add = pf_project(fr, end_tr(fr, prod));
                for (auto& [k2, c2] : add.terms) c2 = coeff * c2;
                logw[total] = pp_add(logw[total], add);
            }
            int pos = r - 1;
            while (pos >= 0 && parts[pos] + 1 > s) {
                parts[pos] = 1;
                --pos;
            }
            if (pos < 0) break;
            parts[pos] += 1;
        }
    }
    std::vector<PairForm> route2(s + 1, pp_zero(ctx));
    route2[0] = pp_scalar(ctx, ctx.one_poly());
    std::vector<PairForm> cur = logw;
    BigInt fact(1);
    for (int k = 1; k <= s; ++k) {
        fact = fact * BigInt(k);
        Scalar inv(BigInt(1), BigInt(0), fact);
        for (int w = 0; w <= s; ++w) {
            PairForm scaled = cur[w];
            for (auto& [k2, c2] : scaled.terms) c2 = inv * c2;
            route2[w] = pp_add(route2[w], scaled);
        }
        std::vector<PairForm> next(s + 1, pp_zero(ctx));
        for (int w1 = 0; w1 <= s; ++w1)
            for (int w2 = 1; w1 + w2 <= s; ++w2)
                next[w1 + w2] = pp_add(next[w1 + w2], pp_mul(cur[w1], logw[w2]));
        cur = next;
    }
    for (int r = 1; r <= s; ++r) {
        if (!(route1[r - 1] == route2[r])) {
            std::string msg = "quotient-side weight " + std::to_string(r) + ": m-sequence " +
                              pf_to_string(ctx, route1[r - 1]) + " vs exp-tr-log " +
                              pf_to_string(ctx, route2[r]) + "; ";
            if (!mismatch) throw RoutesDisagree(msg);
            *mismatch += msg;
        }
    }
    return route1;
}

namespace {

PairForm pf_pow(const SceneContext& ctx, const PairForm& a, int n) {
    PairForm acc = pp_scalar(ctx, ctx.one_poly());
    for (int i = 0; i < n; ++i) acc = pp_mul(acc, a);
    return acc;
}

Tensor random_end_form(Random& rng, const CanonicalFrame& fr, int m, int min_entry_degree) {
    std::vector<bool> dual(m, true);
    dual.push_back(false);
    dual.push_back(true);
    Tensor t = tensor_zero(false, dual);
    const SceneContext& ctx = fr.ctx;
    for (int k = 0; k < 3; ++k) {
        Word w;
        for (int s = 0; s < m + 2; ++s) w.push_back(static_cast<std::uint8_t>(rng.below(fr.size())));
        int slot_deg = 0;
        for (int s = 0; s < m + 2; ++s)
            slot_deg += symbol_degree(fr, false, t.dual[s], w[s]);
        // keep the total degree at least min_entry_degree + slot-count bias
        int cdeg = rng.below(ctx.rank_f() + 1);
        if (cdeg + slot_deg < min_entry_degree) cdeg = min_entry_degree - slot_deg;
        if (cdeg < 0 || cdeg > ctx.rank_f()) continue;
        t.add_term(w, rng.form(ctx, cdeg, 1));
    }
    return t;
}

DGConnection random_dg_connection(Random& rng, const CanonicalFrame& fr, int entries) {
    DGConnection conn;
    const SceneContext& ctx = fr.ctx;
    for (int k = 0; k < entries; ++k) {
        int alpha = rng.below(fr.size());
        int beta = rng.below(fr.size());
        int g = rng.below(fr.size());
        int want = fr.vec_degree(g) - fr.vec_degree(alpha) - fr.vec_degree(beta);
        if (want < 0 || want > ctx.rank_f()) continue;
        FormElement val = rng.form(ctx, want, 1);
        if (val.is_zero()) continue;
        auto it = conn.gamma.find({alpha, beta, g});
        if (it == conn.gamma.end())
            conn.gamma.emplace(std::array<int, 3>{alpha, beta, g}, val);
        else
            it->second += val;
    }
    return conn;
}

PairConnection random_pair_connection(Random& rng, const SceneContext& ctx) {
    PairConnection p = PairConnection::zero(ctx);
    for (int a = 0; a < ctx.rank_b(); ++a)
        for (int b2 = 0; b2 < ctx.rank_b(); ++b2)
            for (int c = 0; c < ctx.rank_b(); ++c)
                if (rng.below(2) == 0) p.gamma[a][b2][c] = rng.poly(ctx, 2, 1);
    return p;
}

}  // namespace

ClassesOutput classes_run(const CanonicalFrame& fr, const ContractionData& cd, int k_max,
                          int random_connections, std::uint64_t seed) {
    const SceneContext& ctx = fr.ctx;
    ClassesOutput out;
    Random rng(seed);
    int s = std::min(ctx.rank_f(), ctx.rank_b());
    int k_eff = std::min(k_max, s);

    auto run = [&](const std::string& name, const std::function<std::string()>& body) {
        CheckResult r;
        r.name = name;
        r.counterexample = body();
        r.pass = r.counterexample.empty();
        out.checks.push_back(r);
    };

    DGConnection conn = DGConnection::from_scene(fr);
    AtiyahDg at = atiyah_dg(fr, conn);
    PairConnection pconn = induced_connection(fr, cd, conn);
    Tensor rpair = atiyah_pair(fr, pconn);

    out.rendered["atiyah_dg"] = tensor_to_string(fr, at.tensor21);
    out.rendered["atiyah_pair"] = tensor_to_string(fr, rpair);

    run("L_Q(alpha)=0", [&]() -> std::string {
        Tensor lq = tensor_lq(fr, at.tensor21);
        return lq.is_zero() ? "" : tensor_to_string(fr, lq);
    });
    run("d_B(R)=0", [&]() -> std::string {
        Tensor db = tensor_db(fr, rpair);
        return db.is_zero() ? "" : tensor_to_string(fr, db);
    });
    run("phi(alpha) = R for the bundled connection", [&]() -> std::string {
        Tensor img = cd.big_phi(at.tensor21);
        if (img == rpair) return "";
        return "phi(alpha) " + tensor_to_string(fr, img) + " vs R " + tensor_to_string(fr, rpair);
    });
    run("induced-connection contraction identity", [&]() -> std::string {
        // iota_{pr_F[jZ_a, V_i]} = [nabla^B_{Z_a}, iota_{V_i}] on (0,1) sections
        auto nabla_b_op = [&](int a, const Tensor& sigma) {
            DGVectorField up = cd.psi_vf(sigma);
            DGVectorField nab = conn_nabla(fr, conn, fr.generator(a), up);
            return cd.phi_vf(nab);
        };
        auto iota_op = [&](int i, const Tensor& sigma) {
            Tensor r = tensor_zero(true, sigma.dual);
            for (const auto& [w, c] : sigma.terms) r.add_term(w, contract_form(i, c));
            return r;
        };
        for (int t = 0; t < 6; ++t) {
            Tensor sigma = rng.tensor(fr, true, {false});
            for (int a = 0; a < fr.b; ++a)
                for (int i = 0; i < ctx.rank_f(); ++i) {
                    Tensor lhs = tensor_zero(true, {false});
                    FrameDecomposition dec = ctx.decompose(
                        vf_bracket_coords(ctx.jz_field(a), ctx.v_field(i)));
                    for (int k2 = 0; k2 < ctx.rank_f(); ++k2) {
                        Tensor piece = iota_op(k2, sigma);
                        piece = tensor_scale(ctx.scalar_form(dec.along_f[k2]), piece);
                        lhs = tensor_add(lhs, piece);
                    }
                    Tensor rhs = tensor_sub(nabla_b_op(a, iota_op(i, sigma)),
                                            iota_op(i, nabla_b_op(a, sigma)));
                    if (!(lhs == rhs))
                        return "failed at Z" + std::to_string(a + 1) + ", V" +
                               std::to_string(i + 1);
                }
        }
        return "";
    });
    run("phi(alpha) = R for random connections", [&]() -> std::string {
        for (int t = 0; t < random_connections; ++t) {
            DGConnection rc = random_dg_connection(rng, fr, 4);
            AtiyahDg art = atiyah_dg(fr, rc);
            Tensor lq = tensor_lq(fr, art.tensor21);
            if (!lq.is_zero()) return "random connection " + std::to_string(t) + ": not closed";
            PairConnection rp = induced_connection(fr, cd, rc);
            Tensor rr = atiyah_pair(fr, rp);
            if (!(cd.big_phi(art.tensor21) == rr))
                return "random connection " + std::to_string(t) + ": correspondence failed";
        }
        return "";
    });

    // Scalar classes and the supertrace homotopy certificate.
    Tensor alpha_end = end_from_tensor21(fr, at.tensor21);
    Tensor phi_alpha_end = end_big_phi(cd, alpha_end);

    auto str_tr_identity = [&](const Tensor& lambda) -> std::string {
        Tensor lhs =
            tensor_sub(cd.big_phi(end_str(fr, lambda)), end_tr(fr, end_big_phi(cd, lambda)));
        Tensor h_l = end_big_h(cd, lambda);
        Tensor rhs = tensor_add(tensor_db(fr, cd.big_phi(end_str(fr, h_l))),
                                cd.big_phi(end_str(fr, end_big_h(cd, tensor_lq(fr, lambda)))));
        if (lhs == rhs) return "";
        return "lhs " + tensor_to_string(fr, lhs) + " rhs " + tensor_to_string(fr, rhs);
    };

    for (int k = 1; k <= k_eff; ++k) {
        Tensor ak = end_power(fr, alpha_end, k);
        run("str/tr homotopy on alpha^" + std::to_string(k), [&]() { return str_tr_identity(ak); });
        run("phi multiplicative on alpha^" + std::to_string(k), [&]() -> std::string {
            Tensor lhs = end_big_phi(cd, ak);
            Tensor rhs = end_power(fr, phi_alpha_end, k);
            if (lhs == rhs) return "";
            return "phi(alpha^k) != phi(alpha)^k";
        });
        out.rendered["c" + std::to_string(k) + "_dg"] =
            "(1/" + std::to_string([](int n) {
                int f2 = 1;
                for (int i = 2; i <= n; ++i) f2 *= i;
                return f2;
            }(k)) +
            ")*u^" + std::to_string(k) + " * [" +
            tensor_to_string(fr, end_str(fr, ak)) + "]";
        out.rendered["c" + std::to_string(k) + "_pair"] =
            "(1/" + std::to_string([](int n) {
                int f2 = 1;
                for (int i = 2; i <= n; ++i) f2 *= i;
                return f2;
            }(k)) +
            ")*u^" + std::to_string(k) + " * [" +
            tensor_to_string(fr, end_tr(fr, end_power(fr, phi_alpha_end, k))) + "]";
    }
    for (int k = s + 1; k <= k_max; ++k) {
        out.rendered["c" + std::to_string(k) + "_dg"] = "0 (weight above min rank)";
        out.rendered["c" + std::to_string(k) + "_pair"] = "0 (weight above min rank)";
    }
    run("str/tr homotopy on random sections", [&]() -> std::string {
        for (int t = 0; t < 6; ++t) {
            Tensor lambda = random_end_form(rng, fr, rng.below(3), -2);
            std::string res = str_tr_identity(lambda);
            if (!res.empty()) return "sample " + std::to_string(t) + ": " + res;
        }
        return "";
    });
    run("supertrace kills graded commutators", [&]() -> std::string {
        for (int t = 0; t < 8; ++t) {
            Tensor a = random_end_form(rng, fr, 0, -2);
            Tensor b = random_end_form(rng, fr, 0, -2);
            // parities of the End-forms as operators
            auto parity = [&](const Tensor& x) -> int {
                int p = -1;
                for (const auto& [w, c] : x.terms) {
                    int deg = 0;
                    for (int s2 = 0; s2 < x.slots(); ++s2)
                        deg += symbol_degree(fr, false, x.dual[s2], w[s2]);
                    for (const auto& part : c.homogeneous_parts()) {
                        int tp = (deg + part.degree()) % 2;
                        if (tp < 0) tp += 2;
                        if (p < 0) p = tp;
                        if (p != tp) return -2;
                    }
                }
                return p < 0 ? 0 : p;
            };
            int pa = parity(a), pb = parity(b);
            if (pa == -2 || pb == -2) continue;
            Tensor ab = end_compose(fr, a, b);
            Tensor ba = end_compose(fr, b, a);
            Tensor comm = (pa * pb) % 2 != 0 ? tensor_add(ab, ba) : tensor_sub(ab, ba);
            if (!end_str(fr, comm).is_zero()) return "sample " + std::to_string(t);
        }
        return "";
    });
    run("L_Q is a derivation of composition", [&]() -> std::string {
        auto homogenize = [&](const Tensor& x, int want_parity) {
            Tensor out = tensor_zero(x.pair_side, x.dual);
            for (const auto& [w, c] : x.terms) {
                int deg = 0;
                for (int s2 = 0; s2 < x.slots(); ++s2)
                    deg += symbol_degree(fr, false, x.dual[s2], w[s2]);
                for (const auto& part : c.homogeneous_parts()) {
                    int tp = ((deg + part.degree()) % 2 + 2) % 2;
                    if (tp == want_parity) out.add_term(w, part);
                }
            }
            return out;
        };
        for (int t = 0; t < 6; ++t) {
            int pa = rng.below(2);
            Tensor a = homogenize(random_end_form(rng, fr, rng.below(2), -2), pa);
            Tensor b = random_end_form(rng, fr, rng.below(2), -2);
            Tensor lhs = tensor_lq(fr, end_compose(fr, a, b));
            Tensor rhs = end_compose(fr, tensor_lq(fr, a), b);
            Tensor second = end_compose(fr, a, tensor_lq(fr, b));
            if (pa % 2 != 0) second = tensor_neg(second);
            rhs = tensor_add(rhs, second);
            if (!(lhs == rhs)) return "sample " + std::to_string(t);
        }
        return "";
    });

    // Berezinian and Todd, both routes, both sides.
    SeriesSpec todd = todd_series(std::max(s, 1));
    std::string mismatch;
    std::vector<CommForm> td_dg = berezinian_series_dg(fr, alpha_end, todd, s, &mismatch);
    std::vector<PairForm> td_pair = berezinian_series_pair(fr, phi_alpha_end, todd, s, &mismatch);
    run("two-route berezinian agreement", [&]() { return mismatch; });
    run("two-route agreement on random nilpotent inputs", [&]() -> std::string {
        for (int t = 0; t < 4; ++t) {
            Tensor w = random_end_form(rng, fr, 1, 1);
            std::string mm;
            berezinian_series_dg(fr, w, todd, s, &mm);
            if (!mm.empty()) return "sample " + std::to_string(t) + ": " + mm;
        }
        return "";
    });
    for (int r = 1; r <= s; ++r) {
        out.rendered["todd_dg_w" + std::to_string(r)] =
            "u^" + std::to_string(r) + " * [" + cf_to_string(ctx, td_dg[r - 1]) + "]";
        out.rendered["todd_pair_w" + std::to_string(r)] =
            "u^" + std::to_string(r) + " * [" + pf_to_string(ctx, td_pair[r - 1]) + "]";
    }
    out.rendered["todd_weight_cap"] = "weights above " + std::to_string(s) + " vanish";

    run("todd correspondence certificate", [&]() -> std::string {
        // data per power: u_i, v_i, primitives t_i
        std::vector<PairForm> u, v, tprim;
        for (int i = 1; i <= s; ++i) {
            Tensor ai = end_power(fr, alpha_end, i);
            u.push_back(pf_project(fr, cd.big_phi(end_str(fr, ai))));
            v.push_back(pf_project(fr, end_tr(fr, end_power(fr, phi_alpha_end, i))));
            Tensor lterm = end_big_h(cd, tensor_lq(fr, ai));
            if (!lterm.is_zero()) {
                Tensor corr = cd.big_phi(end_str(fr, lterm));
                if (!corr.is_zero()) return "alpha power " + std::to_string(i) + " not closed";
            }
            tprim.push_back(pf_project(fr, cd.big_phi(end_str(fr, end_big_h(cd, ai)))));
        }
        for (int i = 1; i <= s; ++i) {
            PairForm delta = pp_sub(u[i - 1], v[i - 1]);
            if (!(pf_db(ctx, tprim[i - 1]) == delta))
                return "d_B(t_" + std::to_string(i) + ") != phi(str)-tr difference";
            if (!pf_db(ctx, u[i - 1]).is_zero() || !pf_db(ctx, v[i - 1]).is_zero())
                return "power sums not closed at i=" + std::to_string(i);
        }
        std::vector<PowerSumPoly> kr = m_sequence(todd, std::max(s, 1));
        for (int r = 1; r <= s; ++r) {
            // residual via the algebra map applied to the graded-side weight
            PairForm residual = pp_sub(cf_to_pair(ctx, td_dg[r - 1]), td_pair[r - 1]);
            // telescoped primitive
            PairForm prim = pp_zero(ctx);
            for (const auto& [e, c] : kr[r - 1]) {
                for (std::size_t j = 0; j < e.size(); ++j) {
                    if (e[j] == 0) continue;
                    for (int t = 0; t < e[j]; ++t) {
                        // prefix: v_1^{e_1} .. v_{j-1}^{e_{j-1}} v_j^t
                        PairForm prefix = pp_scalar(ctx, ctx.one_poly());
                        int prefix_parity = 0;
                        for (std::size_t j2 = 0; j2 < j; ++j2) {
                            prefix = pp_mul(prefix, pf_pow(ctx, v[j2], e[j2]));
                            prefix_parity += static_cast<int>(j2 + 1) * e[j2];
                        }
                        prefix = pp_mul(prefix, pf_pow(ctx, v[j], t));
                        prefix_parity += static_cast<int>(j + 1) * t;
                        PairForm tail = pf_pow(ctx, u[j], e[j] - 1 - t);
                        for (std::size_t j2 = j + 1; j2 < e.size(); ++j2)
                            tail = pp_mul(tail, pf_pow(ctx, u[j2], e[j2]));
                        PairForm term = pp_mul(pp_mul(prefix, tprim[j]), tail);
                        for (auto& [k2, c2] : term.terms) c2 = c * c2;
                        if (prefix_parity % 2 != 0) term = pp_sub(pp_zero(ctx), term);
                        prim = pp_add(prim, term);
                    }
                }
            }
            if (!(pf_db(ctx, prim) == residual))
                return "weight " + std::to_string(r) + ": certificate residual mismatch";
        }
        return "";
    });

    run("connection independence certificates", [&]() -> std::string {
        auto check_pairs = [&](const PairConnection& p1, const PairConnection& p2,
                               const std::string& tag) -> std::string {
            Tensor r1 = atiyah_pair(fr, p1);
            Tensor r2 = atiyah_pair(fr, p2);
            Tensor tdiff = tensor_zero(true, {true, true, false});
            for (int a = 0; a < fr.b; ++a)
                for (int b2 = 0; b2 < fr.b; ++b2)
                    for (int c = 0; c < fr.b; ++c) {
                        Poly dg = p1.gamma[a][b2][c] - p2.gamma[a][b2][c];
                        if (dg.is_zero()) continue;
                        Word w{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b2),
                               static_cast<std::uint8_t>(c)};
                        tdiff.add_term(w, ctx.scalar_form(dg));
                    }
            Tensor want = tensor_sub(r1, r2);
            if (!(tensor_db(fr, tdiff) == want))
                return tag + ": R difference is not d_B of the Christoffel difference";
            return "";
        };
        std::string res = check_pairs(pconn, PairConnection::zero(ctx), "bundled vs zero");
        if (!res.empty()) return res;
        for (int t = 0; t < random_connections; ++t) {
            PairConnection p1 = random_pair_connection(rng, ctx);
            PairConnection p2 = random_pair_connection(rng, ctx);
            res = check_pairs(p1, p2, "random pair " + std::to_string(t));
            if (!res.empty()) return res;
        }
        return "";
    });

    return out;
}

}  // namespace fc
