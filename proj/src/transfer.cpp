#include "fc/transfer.hpp"

#include <functional>

#include "fc/errors.hpp"

namespace fc {

namespace {

int pp_parity(const PairPoly& a) {
    int p = -1;
    for (const auto& [k, c] : a.terms) {
        int kp = PairPoly::key_parity(k);
        if (p < 0) p = kp;
        if (p != kp) throw SignatureError("transfer input must have homogeneous parity");
    }
    return p < 0 ? 0 : p;
}

}  // namespace

Transfer::Transfer(const CanonicalFrame& fr) : fr_(fr), pc_(fr) {}

PairPoly Transfer::lambda2(const PairPoly& a, const PairPoly& b) const {
    return pc_.phi(pv_schouten(pc_.psi(a), pc_.psi(b)));
}

PolyVector Transfer::wrap(const std::vector<PairPoly>& block) const {
    if (block.size() == 1) return pc_.psi(block[0]);
    return pc_.h(eval_p(block));
}

PolyVector Transfer::eval_p(const std::vector<PairPoly>& inputs) const {
    const SceneContext& ctx = fr_.ctx;
    std::size_t k = inputs.size();
    if (k == 1) return pc_.psi(inputs[0]);
    PolyVector acc = pv_zero(ctx);
    std::vector<int> parity(k);
    for (std::size_t i = 0; i < k; ++i) parity[i] = pp_parity(inputs[i]);

    // all order-preserving splits into two blocks; the larger block carries
    // the homotopy and sits in the first bracket slot
    for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t(1) << k); ++mask) {
        std::size_t k1 = static_cast<std::size_t>(__builtin_popcount(mask));
        std::size_t k2 = k - k1;
        if (k1 < k2) continue;
        if (k1 == k2 && !(mask & 1u)) continue;  // unordered pair: fix first element left
        std::vector<PairPoly> block1, block2;
        std::vector<int> order;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                block1.push_back(inputs[i]);
                order.push_back(static_cast<int>(i));
            }
        for (std::size_t i = 0; i < k; ++i)
            if (!(mask & (1u << i))) {
                block2.push_back(inputs[i]);
                order.push_back(static_cast<int>(i));
            }
        // Koszul sign of the shuffle on arity-shifted parities
        int sign = 1;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (order[i] > order[j] && (parity[order[i]] + 1) % 2 != 0 &&
                    (parity[order[j]] + 1) % 2 != 0)
                    sign = -sign;
        PolyVector term = pv_schouten(wrap(block1), wrap(block2));
        acc = pv_add(acc, sign < 0 ? pv_neg(term) : term);
    }
    return acc;
}

PairPoly Transfer::lambda_k(const std::vector<PairPoly>& inputs) const {
    if (inputs.size() == 2) return lambda2(inputs[0], inputs[1]);
    return pc_.phi(eval_p(inputs));
}

PairPoly Transfer::lambda2_closed_zz(int a, int b) const {
    const SceneContext& ctx = fr_.ctx;
    FrameDecomposition dec =
        ctx.decompose(vf_bracket_coords(ctx.jz_field(a), ctx.jz_field(b)));
    PairPoly out = pp_zero(ctx);
    for (int c = 0; c < ctx.rank_b(); ++c)
        out.add_term(PairPvKey{0, std::uint32_t(1) << c}, dec.along_b[c]);
    return out;
}

PairPoly Transfer::lambda2_closed_zform(int a, const FormElement& w) const {
    return pp_from_form(fr_.ctx, vf_apply(fr_.ctx, fr_.generator(a), w));
}

PairPoly Transfer::lambda2_closed_zfun(int a, const Poly& f) const {
    return pp_scalar(fr_.ctx, vf_derive(fr_.ctx.jz_field(a), f));
}

Poly Transfer::lambda3_closed_zzxi(int a, int b, int k) const {
    const SceneContext& ctx = fr_.ctx;
    FrameDecomposition dec =
        ctx.decompose(vf_bracket_coords(ctx.jz_field(a), ctx.jz_field(b)));
    return dec.along_f[k];
}

std::vector<CheckResult> transfer_checks(const CanonicalFrame& fr, int random_count,
                                         std::uint64_t seed) {
    const SceneContext& ctx = fr.ctx;
    Transfer tr(fr);
    const PolyContraction& pc = tr.pc();
    std::vector<CheckResult> out;
    Random rng(seed);

    auto run = [&](const std::string& name, const std::function<std::string()>& body) {
        CheckResult r;
        r.name = name;
        r.counterexample = body();
        r.pass = r.counterexample.empty();
        out.push_back(r);
    };

    auto rnd_pv = [&](int weight) {
        PolyVector p = pv_zero(ctx);
        for (int t = 0; t < 2; ++t) {
            PvKey k;
            k.et.assign(ctx.rank_f(), 0);
            for (int w = 0; w < weight; ++w) {
                if (rng.below(2) == 0) {
                    k.th |= std::uint32_t(1) << rng.below(ctx.dim());
                } else {
                    k.et[rng.below(ctx.rank_f())] += 1;
                }
            }
            int xd = rng.below(ctx.rank_f() + 1);
            for (int j = 0; j < xd; ++j) k.xi |= XiMask(1) << rng.below(ctx.rank_f());
            p.add_term(k, rng.poly(ctx));
        }
        return p;
    };

    run("schouten: [X,f]=X(f)", [&]() -> std::string {
        for (int t = 0; t < random_count; ++t) {
            DGVectorField x = rng.dgvf(fr, 0);
            Poly f = rng.poly(ctx);
            PolyVector lhs = pv_schouten(pv_symbol(ctx, x), pv_scalar(ctx, f));
            PolyVector rhs = pv_from_form(ctx, dg_on_poly(ctx, x, f));
            if (!(lhs == rhs)) return "sample " + std::to_string(t);
        }
        return "";
    });
    run("schouten: [X,Y] matches the derivation bracket", [&]() -> std::string {
        for (int t = 0; t < random_count; ++t) {
            DGVectorField x = rng.dgvf(fr, rng.below(2));
            DGVectorField y = rng.dgvf(fr, rng.below(3) - 1);
            PolyVector lhs = pv_schouten(pv_symbol(ctx, x), pv_symbol(ctx, y));
            PolyVector rhs = pv_symbol(ctx, vf_bracket(ctx, x, y));
            if (!(lhs == rhs)) return "sample " + std::to_string(t);
        }
        return "";
    });
    run("schouten: graded antisymmetry", [&]() -> std::string {
        for (int t = 0; t < random_count; ++t) {
            PolyVector a = rnd_pv(rng.below(3)), b = rnd_pv(rng.below(3));
            for (const auto& [ka, ca] : a.terms)
                for (const auto& [kb, cb] : b.terms) {
                    PolyVector ta = pv_zero(ctx), tb = pv_zero(ctx);
                    ta.add_term(ka, ca);
                    tb.add_term(kb, cb);
                    int pa = PolyVector::key_parity(ka), pb = PolyVector::key_parity(kb);
                    // [a,b] = -(-1)^{(pa+1)(pb+1)} [b,a]
                    PolyVector lhs = pv_schouten(ta, tb);
                    PolyVector rhs = pv_schouten(tb, ta);
                    if (((pa + 1) * (pb + 1)) % 2 == 0) rhs = pv_neg(rhs);
                    if (!(lhs == rhs)) return "sample " + std::to_string(t);
                }
        }
        return "";
    });
    run("schouten: Leibniz in the second slot", [&]() -> std::string {
        for (int t = 0; t < random_count; ++t) {
            PolyVector a = rnd_pv(1), b = rnd_pv(rng.below(2)), c = rnd_pv(rng.below(2));
            // [a, b c] = [a,b] c + (-1)^{(P(a)+1)P(b)} b [a,c], termwise parities
            for (const auto& [ka, ca] : a.terms)
                for (const auto& [kb, cb] : b.terms) {
                    PolyVector ta = pv_zero(ctx), tb = pv_zero(ctx);
                    ta.add_term(ka, ca);
                    tb.add_term(kb, cb);
                    PolyVector lhs = pv_schouten(ta, pv_mul(tb, c));
                    PolyVector rhs = pv_mul(pv_schouten(ta, tb), c);
                    PolyVector second = pv_mul(tb, pv_schouten(ta, c));
                    int pa = PolyVector::key_parity(ka), pb = PolyVector::key_parity(kb);
                    if (((pa + 1) * pb) % 2 != 0) second = pv_neg(second);
                    rhs = pv_add(rhs, second);
                    if (!(lhs == rhs)) return "sample " + std::to_string(t);
                }
        }
        return "";
    });
    run("schouten: graded Jacobi", [&]() -> std::string {
        for (int t = 0; t < random_count / 2 + 1; ++t) {
            PolyVector a = rnd_pv(1), b = rnd_pv(rng.below(3)), c = rnd_pv(rng.below(2));
            for (const auto& [ka, ca] : a.terms)
                for (const auto& [kb, cb] : b.terms) {
                    PolyVector ta = pv_zero(ctx), tb = pv_zero(ctx);
                    ta.add_term(ka, ca);
                    tb.add_term(kb, cb);
                    int pa = PolyVector::key_parity(ka), pb = PolyVector::key_parity(kb);
                    PolyVector lhs = pv_schouten(ta, pv_schouten(tb, c));
                    PolyVector r1 = pv_schouten(pv_schouten(ta, tb), c);
                    PolyVector r2 = pv_schouten(tb, pv_schouten(ta, c));
                    if (((pa + 1) * (pb + 1)) % 2 != 0) r2 = pv_neg(r2);
                    if (!(lhs == pv_add(r1, r2))) return "sample " + std::to_string(t);
                }
        }
        return "";
    });
    run("L_Q = [Q~, -] squares to zero and matches the field bracket", [&]() -> std::string {
        PolyVector qs = pv_symbol(ctx, homological_field(ctx));
        if (!pv_schouten(qs, qs).is_zero()) return "{Q~,Q~} != 0";
        for (int t = 0; t < random_count; ++t) {
            DGVectorField x = rng.dgvf(fr, rng.below(3) - 1);
            PolyVector lhs = pv_lq(ctx, pv_symbol(ctx, x));
            PolyVector rhs = pv_symbol(ctx, vf_bracket(ctx, homological_field(ctx), x));
            if (!(lhs == rhs)) return "L_Q symbol mismatch at sample " + std::to_string(t);
            PolyVector p = rnd_pv(rng.below(3));
            if (!pv_lq(ctx, pv_lq(ctx, p)).is_zero())
                return "L_Q^2 != 0 at sample " + std::to_string(t);
        }
        return "";
    });
    run("psi, phi are algebra morphisms; phi.psi = id", [&]() -> std::string {
        for (int t = 0; t < random_count; ++t) {
            PairPoly a = pp_zero(ctx), b = pp_zero(ctx);
            for (int j = 0; j < 2; ++j) {
                PairPvKey k;
                for (int w = rng.below(3); w > 0; --w) k.z |= std::uint32_t(1) << rng.below(fr.b);
                for (int w = rng.below(ctx.rank_f() + 1); w > 0; --w)
                    k.xi |= XiMask(1) << rng.below(ctx.rank_f());
                a.add_term(k, rng.poly(ctx));
                PairPvKey k2;
                for (int w = rng.below(2); w > 0; --w) k2.z |= std::uint32_t(1) << rng.below(fr.b);
                b.add_term(k2, rng.poly(ctx));
            }
            if (!(pc.psi(pp_mul(a, b)) == pv_mul(pc.psi(a), pc.psi(b))))
                return "psi not multiplicative at sample " + std::to_string(t);
            if (!(pc.phi(pc.psi(a)) == a)) return "phi.psi != id at sample " + std::to_string(t);
            PolyVector x = rnd_pv(rng.below(2)), y = rnd_pv(rng.below(2));
            if (!(pc.phi(pv_mul(x, y)) == pp_mul(pc.phi(x), pc.phi(y))))
                return "phi not multiplicative at sample " + std::to_string(t);
        }
        return "";
    });
    run("H(X1^X2) = H(X1)^X2 +/- (psi.phi)(X1)^H(X2)", [&]() -> std::string {
        // concatenation form of the staircase split, on multivector words;
        // the odd homotopy crosses X1, so the second term carries (-1)^{|X1|}
        ContractionData cd(fr);
        for (int t = 0; t < random_count; ++t) {
            int n1 = 1 + rng.below(2), n2 = 1 + rng.below(2);
            int p1 = rng.below(2);
            Tensor t1 = tensor_zero(false, std::vector<bool>(n1, false));
            {
                Tensor raw = rng.tensor(fr, false, std::vector<bool>(n1, false));
                for (const auto& [w, c] : raw.terms) {
                    int deg = 0;
                    for (int s = 0; s < n1; ++s) deg += symbol_degree(fr, false, false, w[s]);
                    for (const auto& part : c.homogeneous_parts())
                        if (((deg + part.degree()) % 2 + 2) % 2 == p1) t1.add_term(w, part);
                }
            }
            Tensor t2 = rng.tensor(fr, false, std::vector<bool>(n2, false));
            Tensor lhs = cd.big_h(tensor_product(fr, t1, t2));
            Tensor second = tensor_product(fr, cd.big_psi(cd.big_phi(t1)), cd.big_h(t2));
            if (p1 % 2 != 0) second = tensor_neg(second);
            Tensor rhs = tensor_add(tensor_product(fr, cd.big_h(t1), t2), second);
            if (!(lhs == rhs)) return "sample " + std::to_string(t);
        }
        return "";
    });
    run("field-level homotopy: id - psi.phi = L.h + h.L", [&]() -> std::string {
        for (int t = 0; t < random_count; ++t) {
            PolyVector x = rnd_pv(1);
            PolyVector lhs = pv_sub(x, pc.psi(pc.phi(x)));
            PolyVector rhs = pv_add(pv_lq(ctx, pc.h(x)), pc.h(pv_lq(ctx, x)));
            if (!(lhs == rhs)) return "sample " + std::to_string(t);
        }
        return "";
    });
    run("vertical brackets project to zero", [&]() -> std::string {
        // phi([hX1, hX2]) = 0 and h([hX1, psi Z]) = 0
        for (int t = 0; t < random_count; ++t) {
            PolyVector h1 = pc.h(rnd_pv(1)), h2 = pc.h(rnd_pv(1));
            if (!pc.phi(pv_schouten(h1, h2)).is_zero())
                return "phi([hX,hX']) != 0 at sample " + std::to_string(t);
            PairPoly z = pp_generator_z(ctx, rng.below(fr.b));
            if (!pc.h(pv_schouten(h1, pc.psi(z))).is_zero())
                return "h([hX, psi Z]) != 0 at sample " + std::to_string(t);
        }
        return "";
    });
    run("chain rule: dB.l2 = l2(dB,-) +/- l2(-,dB)", [&]() -> std::string {
        for (int t = 0; t < random_count; ++t) {
            PairPoly a = pp_zero(ctx), b = pp_zero(ctx);
            PairPvKey ka, kb;
            for (int w = rng.below(2); w > 0; --w) ka.z |= std::uint32_t(1) << rng.below(fr.b);
            for (int w = rng.below(2); w > 0; --w)
                ka.xi |= XiMask(1) << rng.below(ctx.rank_f());
            for (int w = rng.below(2); w > 0; --w) kb.z |= std::uint32_t(1) << rng.below(fr.b);
            a.add_term(ka, rng.poly(ctx));
            b.add_term(kb, rng.poly(ctx));
            if (a.is_zero() || b.is_zero()) continue;
            PairPoly lhs = pp_db(ctx, tr.lambda2(a, b));
            PairPoly rhs = tr.lambda2(pp_db(ctx, a), b);
            PairPoly second = tr.lambda2(a, pp_db(ctx, b));
            if ((pp_parity(a) + 1) % 2 != 0) second = pp_sub(pp_zero(ctx), second);
            rhs = pp_add(rhs, second);
            if (!(lhs == rhs)) return "sample " + std::to_string(t);
        }
        return "";
    });
    run("phi intertwines L_Q with d_B", [&]() -> std::string {
        for (int t = 0; t < random_count; ++t) {
            PolyVector x = rnd_pv(rng.below(3));
            if (!(pc.phi(pv_lq(ctx, x)) == pp_db(ctx, pc.phi(x))))
                return "sample " + std::to_string(t);
        }
        return "";
    });
    return out;
}

BracketTables transfer_tables(const CanonicalFrame& fr, int max_higher_arity) {
    const SceneContext& ctx = fr.ctx;
    Transfer tr(fr);
    BracketTables tables;

    auto run = [&](const std::string& name, const std::function<std::string()>& body) {
        CheckResult r;
        r.name = name;
        r.counterexample = body();
        r.pass = r.counterexample.empty();
        tables.checks.push_back(r);
    };

    // generators: Z_a, xi^i, and the chart coordinates as functions
    std::vector<PairPoly> zs, xis, funs;
    std::vector<std::string> z_names, xi_names, fun_names;
    for (int a = 0; a < fr.b; ++a) {
        zs.push_back(pp_generator_z(ctx, a));
        z_names.push_back("Z" + std::to_string(a + 1));
    }
    for (int i = 0; i < ctx.rank_f(); ++i) {
        xis.push_back(pp_from_form(ctx, ctx.xi(i)));
        xi_names.push_back("xi" + std::to_string(i + 1));
    }
    for (int mu = 0; mu < ctx.dim(); ++mu) {
        funs.push_back(pp_scalar(ctx, Poly::variable(ctx.dim(), mu)));
        fun_names.push_back(ctx.coords()[mu]);
    }

    run("lambda2 transfer equals closed forms", [&]() -> std::string {
        for (int a = 0; a < fr.b; ++a) {
            for (int b2 = 0; b2 < fr.b; ++b2) {
                PairPoly got = tr.lambda2(zs[a], zs[b2]);
                if (!(got == tr.lambda2_closed_zz(a, b2)))
                    return "lambda2(" + z_names[a] + "," + z_names[b2] + ")";
                tables.lambda2.push_back(
                    {z_names[a] + "," + z_names[b2], pp_to_string(ctx, got)});
            }
            for (int i = 0; i < ctx.rank_f(); ++i) {
                PairPoly got = tr.lambda2(zs[a], xis[i]);
                if (!(got == tr.lambda2_closed_zform(a, ctx.xi(i))))
                    return "lambda2(" + z_names[a] + "," + xi_names[i] + ")";
                tables.lambda2.push_back(
                    {z_names[a] + "," + xi_names[i], pp_to_string(ctx, got)});
            }
            for (int mu = 0; mu < ctx.dim(); ++mu) {
                PairPoly got = tr.lambda2(zs[a], funs[mu]);
                if (!(got == tr.lambda2_closed_zfun(a, Poly::variable(ctx.dim(), mu))))
                    return "lambda2(" + z_names[a] + "," + fun_names[mu] + ")";
                tables.lambda2.push_back(
                    {z_names[a] + "," + fun_names[mu], pp_to_string(ctx, got)});
            }
        }
        // lambda2 on two coefficient forms vanishes
        for (int i = 0; i < ctx.rank_f(); ++i)
            for (int j = 0; j < ctx.rank_f(); ++j)
                if (!tr.lambda2(xis[i], xis[j]).is_zero())
                    return "lambda2(" + xi_names[i] + "," + xi_names[j] + ") != 0";
        for (int mu = 0; mu < ctx.dim(); ++mu)
            if (!tr.lambda2(funs[mu], funs[mu]).is_zero()) return "lambda2(f,f) != 0";
        return "";
    });

    run("lambda3 values and vanishing", [&]() -> std::string {
        for (int a = 0; a < fr.b; ++a)
            for (int b2 = 0; b2 < fr.b; ++b2) {
                for (int k = 0; k < ctx.rank_f(); ++k) {
                    PairPoly got = tr.lambda_k({zs[a], zs[b2], xis[k]});
                    PairPoly want = pp_scalar(ctx, tr.lambda3_closed_zzxi(a, b2, k));
                    if (!(got == want))
                        return "lambda3(" + z_names[a] + "," + z_names[b2] + "," + xi_names[k] +
                               "): got " + pp_to_string(ctx, got) + " want " +
                               pp_to_string(ctx, want);
                    tables.lambda3.push_back({z_names[a] + "," + z_names[b2] + "," + xi_names[k],
                                              pp_to_string(ctx, got)});
                }
                for (int c = 0; c < fr.b; ++c)
                    if (!tr.lambda_k({zs[a], zs[b2], zs[c]}).is_zero())
                        return "lambda3 on three Z generators != 0";
                for (int i = 0; i < ctx.rank_f(); ++i)
                    for (int j = 0; j < ctx.rank_f(); ++j)
                        if (!tr.lambda_k({zs[a], xis[i], xis[j]}).is_zero())
                            return "lambda3(Z,xi,xi) != 0";
            }
        return "";
    });

    for (int arity = 4; arity <= max_higher_arity; ++arity) {
        run("lambda" + std::to_string(arity) + " vanishes on generator tuples",
            [&]() -> std::string {
                std::vector<PairPoly> gens = zs;
                std::vector<std::string> names = z_names;
                for (std::size_t i = 0; i < xis.size(); ++i) {
                    gens.push_back(xis[i]);
                    names.push_back(xi_names[i]);
                }
                std::vector<int> idx(arity, 0);
                while (true) {
                    std::vector<PairPoly> tuple;
                    for (int t = 0; t < arity; ++t) tuple.push_back(gens[idx[t]]);
                    PairPoly got = tr.lambda_k(tuple);
                    if (!got.is_zero()) {
                        std::string label;
                        for (int t = 0; t < arity; ++t)
                            label += (t ? "," : "") + names[idx[t]];
                        return "lambda" + std::to_string(arity) + "(" + label + ") = " +
                               pp_to_string(ctx, got);
                    }
                    int pos = arity - 1;
                    while (pos >= 0 && idx[pos] + 1 == static_cast<int>(gens.size())) {
                        idx[pos] = 0;
                        --pos;
                    }
                    if (pos < 0) break;
                    idx[pos] += 1;
                }
                return "";
            });
    }
    return tables;
}

}  // namespace fc
