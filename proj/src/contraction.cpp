#include "fc/contraction.hpp"

#include <chrono>

#include "fc/errors.hpp"

namespace fc {

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace

ContractionData::ContractionData(const CanonicalFrame& frame) : fr_(frame) {
    const SceneContext& ctx = fr_.ctx;
    int b = fr_.b, f = fr_.f;
    FormElement one = ctx.scalar_form(ctx.one_poly());

    phi_.identity = false;
    phi_.degree = 0;
    for (int a = 0; a < b; ++a) phi_.entries[a] = {{a, one}};

    psi_.identity = false;
    psi_.degree = 0;
    for (int a = 0; a < b; ++a) psi_.entries[a] = {{a, one}};

    h_.identity = false;
    h_.degree = -1;
    for (int i = 0; i < f; ++i) h_.entries[b + i] = {{b + f + i, one}};

    phid_.identity = false;
    phid_.degree = 0;
    for (int a = 0; a < b; ++a) phid_.entries[a] = {{a, one}};

    psid_.identity = false;
    psid_.degree = 0;
    for (int a = 0; a < b; ++a) psid_.entries[a] = {{a, one}};

    hd_.identity = false;
    hd_.degree = -1;
    for (int i = 0; i < f; ++i) hd_.entries[b + f + i] = {{b + i, -one}};

    psiphi_.identity = false;
    psiphi_.degree = 0;
    for (int a = 0; a < b; ++a) psiphi_.entries[a] = {{a, one}};

    phidpsid_.identity = false;
    phidpsid_.degree = 0;
    for (int a = 0; a < b; ++a) phidpsid_.entries[a] = {{a, one}};

    if (ctx.has_theta()) {
        theta_ = *ctx.spec().theta;
        SlotOp th;
        th.identity = false;
        th.degree = -1;
        for (int a = 0; a < b; ++a) {
            std::vector<std::pair<int, FormElement>> row;
            for (int i = 0; i < f; ++i) {
                const Poly& t = (*theta_)[a][i];
                if (!t.is_zero()) row.emplace_back(b + f + i, ctx.scalar_form(t));
            }
            if (!row.empty()) th.entries[a] = row;
        }
        theta_op_ = th;
        theta_dual_ = dualize(th);

        // psi for the shifted splitting, decomposed in the base frame.
        SlotOp ph;
        ph.identity = false;
        ph.degree = 0;
        for (int a = 0; a < b; ++a) {
            DGVectorField x = dg_zero(ctx, 0);
            x.s_b[a] = one;
            for (int i = 0; i < f; ++i) x.s_f[i] = ctx.scalar_form((*theta_)[a][i]);
            // coframe action from the shifted projection: for each V_i,
            // iota_{V_i}(psi_hat(Z_a)(xi^k)) = -<pr_F_hat[jz_hat(Z_a), V_i], xi^k>.
            PolyVectorField jhat = ctx.jz_field(a);
            for (int i = 0; i < f; ++i)
                jhat = jhat + (*theta_)[a][i] * ctx.v_field(i);
            for (int k = 0; k < f; ++k) {
                FormElement w = ctx.zero_form();
                for (int i = 0; i < f; ++i) {
                    PolyVectorField br = vf_bracket_coords(jhat, ctx.v_field(i));
                    FrameDecomposition dec = ctx.decompose(br);
                    Poly prf_hat_k = dec.along_f[k];
                    for (int c = 0; c < b; ++c) prf_hat_k -= dec.along_b[c] * (*theta_)[c][k];
                    w.add_term(XiMask(1) << i, -prf_hat_k);
                }
                x.a[k] = w;
            }
            std::vector<FormElement> co = fr_.coords(x);
            std::vector<std::pair<int, FormElement>> row;
            for (int beta = 0; beta < fr_.size(); ++beta)
                if (!co[beta].is_zero()) row.emplace_back(beta, co[beta]);
            ph.entries[a] = row;
        }
        psi_hat_ = ph;
        psi_hat_dual_ = dualize(ph);
    }
}

SlotOp ContractionData::dualize(const SlotOp& vec_map) const {
    // <g^dual(alpha), Z> = (-1)^{|g||alpha|} <alpha, g(Z)>, with
    // <e^beta, C e_gamma> = (-1)^{deg e^beta * |C|} C delta.
    SlotOp out;
    out.identity = false;
    out.degree = vec_map.degree;
    for (const auto& [a, row] : vec_map.entries) {
        for (const auto& [beta, coeff] : row) {
            int ddeg = fr_.dual_degree(beta);
            for (const auto& part : coeff.homogeneous_parts()) {
                int e = vec_map.degree * ddeg + ddeg * part.degree();
                FormElement val = (e % 2 != 0) ? -part : part;
                out.entries[beta].emplace_back(a, val);
            }
        }
    }
    return out;
}

Tensor ContractionData::phi_vf(const DGVectorField& x) const {
    Tensor t = tensor_zero(true, {false});
    for (int a = 0; a < fr_.b; ++a) t.add_term({static_cast<std::uint8_t>(a)}, x.s_b[a]);
    return t;
}

DGVectorField ContractionData::psi_vf(const Tensor& sigma) const {
    std::vector<FormElement> co(fr_.size(), fr_.ctx.zero_form());
    int deg = 0;
    for (const auto& [w, c] : sigma.terms) {
        co[w[0]] += c;
        deg = c.max_degree();
    }
    return fr_.assemble(co, deg);
}

DGVectorField ContractionData::h_vf(const DGVectorField& x) const {
    std::vector<FormElement> co(fr_.size(), fr_.ctx.zero_form());
    int s = (x.degree % 2 != 0) ? -1 : 1;
    for (int i = 0; i < fr_.f; ++i) co[fr_.b + fr_.f + i] = s < 0 ? -x.s_f[i] : x.s_f[i];
    return fr_.assemble(co, x.degree - 1);
}

std::vector<bool> ContractionData::signature(int m_dual, int n_vec) {
    std::vector<bool> sig(m_dual, true);
    sig.insert(sig.end(), n_vec, false);
    return sig;
}

Tensor ContractionData::big_phi(const Tensor& t) const {
    std::vector<SlotOp> ops;
    for (int k = 0; k < t.slots(); ++k) ops.push_back(t.dual[k] ? psid_ : phi_);
    return apply_slotwise(fr_, t, true, t.dual, ops);
}

Tensor ContractionData::big_psi(const Tensor& t) const {
    std::vector<SlotOp> ops;
    for (int k = 0; k < t.slots(); ++k) ops.push_back(t.dual[k] ? phid_ : psi_);
    return apply_slotwise(fr_, t, false, t.dual, ops);
}

Tensor ContractionData::big_psi_hat(const Tensor& t) const {
    if (!psi_hat_) throw MissingTheta("big_psi_hat");
    std::vector<SlotOp> ops;
    for (int k = 0; k < t.slots(); ++k) ops.push_back(t.dual[k] ? phid_ : *psi_hat_);
    return apply_slotwise(fr_, t, false, t.dual, ops);
}

Tensor ContractionData::big_phi_hat(const Tensor& t) const {
    if (!psi_hat_dual_) throw MissingTheta("big_phi_hat");
    std::vector<SlotOp> ops;
    for (int k = 0; k < t.slots(); ++k) ops.push_back(t.dual[k] ? *psi_hat_dual_ : phi_);
    return apply_slotwise(fr_, t, true, t.dual, ops);
}

Tensor ContractionData::big_h(const Tensor& t) const {
    Tensor acc = tensor_zero(false, t.dual);
    int n = t.slots();
    for (int pos = 0; pos < n; ++pos) {
        std::vector<SlotOp> ops(n);
        bool valid = true;
        if (t.dual[pos]) {
            // staircase over dual slots: projectors before, h-dual at pos, id after
            for (int k = 0; k < n; ++k) {
                if (k < pos) {
                    if (!t.dual[k]) valid = false;
                    ops[k] = phidpsid_;
                } else if (k == pos) {
                    ops[k] = hd_;
                } else {
                    ops[k] = SlotOp::id();
                }
            }
        } else {
            // vector slot: all dual slots projected, earlier vector slots
            // projected, h at pos, id after
            for (int k = 0; k < n; ++k) {
                if (t.dual[k]) {
                    if (k > pos) valid = false;  // layout must keep duals first
                    ops[k] = phidpsid_;
                } else if (k < pos) {
                    ops[k] = psiphi_;
                } else if (k == pos) {
                    ops[k] = h_;
                } else {
                    ops[k] = SlotOp::id();
                }
            }
        }
        if (!valid) throw SignatureError("big_h: slots must be ordered duals first");
        acc = tensor_add(acc, apply_slotwise(fr_, t, false, t.dual, ops));
    }
    return acc;
}

Tensor ContractionData::lq_h_commutator(const Tensor& t) const {
    return tensor_add(tensor_lq(fr_, big_h(t)), big_h(tensor_lq(fr_, t)));
}

DGVectorField ContractionData::theta_vf(const Tensor& sigma) const {
    if (!theta_op_) throw MissingTheta("theta_vf");
    Tensor img = apply_slotwise(fr_, sigma, false, sigma.dual, {*theta_op_});
    std::vector<FormElement> co(fr_.size(), fr_.ctx.zero_form());
    int deg = -1;
    for (const auto& [w, c] : img.terms) {
        co[w[0]] += c;
        deg = c.max_degree() - 1;
    }
    return fr_.assemble(co, deg);
}

DGVectorField ContractionData::psi_hat_vf(const Tensor& sigma) const {
    if (!psi_hat_) throw MissingTheta("psi_hat_vf");
    Tensor img = apply_slotwise(fr_, sigma, false, sigma.dual, {*psi_hat_});
    std::vector<FormElement> co(fr_.size(), fr_.ctx.zero_form());
    for (const auto& [w, c] : img.terms) co[w[0]] += c;
    int deg = 0;
    for (const auto& [w, c] : sigma.terms) deg = c.max_degree();
    return fr_.assemble(co, deg);
}

Tensor ContractionData::big_theta(const Tensor& t) const {
    if (!theta_op_) throw MissingTheta("big_theta");
    Tensor acc = tensor_zero(false, t.dual);
    int n = t.slots();
    for (int pos = 0; pos < n; ++pos) {
        if (t.dual[pos]) continue;
        std::vector<SlotOp> ops(n);
        for (int k = 0; k < n; ++k) {
            if (t.dual[k])
                ops[k] = phid_;
            else if (k < pos)
                ops[k] = *psi_hat_;
            else if (k == pos)
                ops[k] = *theta_op_;
            else
                ops[k] = psi_;
        }
        acc = tensor_add(acc, apply_slotwise(fr_, t, false, t.dual, ops));
    }
    return acc;
}

Tensor ContractionData::big_xi(const Tensor& t) const {
    if (!theta_dual_) throw MissingTheta("big_xi");
    Tensor acc = tensor_zero(true, t.dual);
    int n = t.slots();
    for (int pos = 0; pos < n; ++pos) {
        if (!t.dual[pos]) continue;
        std::vector<SlotOp> ops(n);
        for (int k = 0; k < n; ++k) {
            if (!t.dual[k])
                ops[k] = phi_;
            else if (k < pos)
                ops[k] = *psi_hat_dual_;
            else if (k == pos)
                ops[k] = *theta_dual_;
            else
                ops[k] = psid_;
        }
        acc = tensor_add(acc, apply_slotwise(fr_, t, true, t.dual, ops));
    }
    return acc;
}

std::uint64_t Random::next() {
    // splitmix64
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

int Random::below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % n); }

Scalar Random::scalar(int max_abs) {
    int v = below(2 * max_abs + 1) - max_abs;
    return Scalar(v);
}

Poly Random::poly(const SceneContext& ctx, int max_deg, int terms) {
    Poly p(ctx.dim());
    for (int t = 0; t < terms; ++t) {
        Exponents e(ctx.dim(), 0);
        int deg = below(max_deg + 1);
        for (int j = 0; j < deg; ++j) e[below(ctx.dim())] += 1;
        p += Poly::monomial(ctx.dim(), e, scalar());
    }
    return p;
}

FormElement Random::form(const SceneContext& ctx, int degree, int terms) {
    FormElement w = ctx.zero_form();
    if (degree < 0 || degree > ctx.rank_f()) return w;
    for (int t = 0; t < terms; ++t) {
        XiMask mask = 0;
        while (mask_popcount(mask) < degree) mask |= XiMask(1) << below(ctx.rank_f());
        w.add_term(mask, poly(ctx));
    }
    return w;
}

FormElement Random::form_mixed(const SceneContext& ctx, int terms) {
    FormElement w = ctx.zero_form();
    for (int t = 0; t < terms; ++t) w += form(ctx, below(ctx.rank_f() + 1), 1);
    return w;
}

Tensor Random::tensor(const CanonicalFrame& fr, bool pair_side, const std::vector<bool>& dual,
                      int terms) {
    Tensor t = tensor_zero(pair_side, dual);
    int syms = symbol_count(fr, pair_side);
    for (int k = 0; k < terms; ++k) {
        Word w;
        for (std::size_t s = 0; s < dual.size(); ++s)
            w.push_back(static_cast<std::uint8_t>(below(syms)));
        // homogeneous coefficient keeps the term degree-definite
        t.add_term(w, form(fr.ctx, below(fr.ctx.rank_f() + 1), 2));
    }
    return t;
}

DGVectorField Random::dgvf(const CanonicalFrame& fr, int degree, int terms) {
    std::vector<FormElement> co(fr.size(), fr.ctx.zero_form());
    for (int t = 0; t < terms; ++t) {
        int alpha = below(fr.size());
        int cdeg = degree - fr.vec_degree(alpha);
        if (cdeg < 0 || cdeg > fr.ctx.rank_f()) continue;
        co[alpha] += form(fr.ctx, cdeg, 1);
    }
    return fr.assemble(co, degree);
}

namespace {

void run_check(std::vector<CheckResult>& out, const std::string& name,
               const std::function<std::string()>& body) {
    double t0 = now_ms();
    CheckResult r;
    r.name = name;
    r.counterexample = body();
    r.pass = r.counterexample.empty();
    r.millis = now_ms() - t0;
    out.push_back(r);
}

}  // namespace

std::vector<CheckResult> contraction_checks(const ContractionData& cd, int m_dual, int n_vec,
                                            int random_count, std::uint64_t seed) {
    const CanonicalFrame& fr = cd.frame();
    std::vector<bool> sig = ContractionData::signature(m_dual, n_vec);
    std::string tag = "(m=" + std::to_string(m_dual) + ",n=" + std::to_string(n_vec) + ")";
    std::vector<CheckResult> out;

    // inputs: all frame-generator words plus seeded random tensors
    std::vector<Tensor> pair_inputs, dg_inputs;
    {
        int b = fr.b;
        std::vector<Word> words{{}};
        for (int k = 0; k < m_dual + n_vec; ++k) {
            std::vector<Word> next;
            for (const auto& w : words)
                for (int s = 0; s < b; ++s) {
                    Word nw = w;
                    nw.push_back(static_cast<std::uint8_t>(s));
                    next.push_back(nw);
                }
            words = next;
        }
        for (const auto& w : words) {
            Tensor t = tensor_zero(true, sig);
            t.add_term(w, fr.ctx.scalar_form(fr.ctx.one_poly()));
            pair_inputs.push_back(t);
        }
    }
    {
        std::vector<Word> words{{}};
        for (int k = 0; k < m_dual + n_vec; ++k) {
            std::vector<Word> next;
            for (const auto& w : words)
                for (int s = 0; s < fr.size(); ++s) {
                    Word nw = w;
                    nw.push_back(static_cast<std::uint8_t>(s));
                    next.push_back(nw);
                }
            words = next;
        }
        for (const auto& w : words) {
            Tensor t = tensor_zero(false, sig);
            t.add_term(w, fr.ctx.scalar_form(fr.ctx.one_poly()));
            dg_inputs.push_back(t);
        }
    }
    Random rng(seed);
    for (int k = 0; k < random_count; ++k) {
        pair_inputs.push_back(rng.tensor(fr, true, sig));
        dg_inputs.push_back(rng.tensor(fr, false, sig));
    }

    auto render = [&](const Tensor& t) { return tensor_to_string(fr, t); };

    run_check(out, "phi.psi=id " + tag, [&]() -> std::string {
        for (const auto& s : pair_inputs) {
            Tensor got = cd.big_phi(cd.big_psi(s));
            if (!(got == s)) return "input " + render(s) + " -> " + render(got);
        }
        return "";
    });
    run_check(out, "id-psi.phi=[L,H] " + tag, [&]() -> std::string {
        for (const auto& t : dg_inputs) {
            Tensor lhs = tensor_sub(t, cd.big_psi(cd.big_phi(t)));
            Tensor rhs = cd.lq_h_commutator(t);
            if (!(lhs == rhs))
                return "input " + render(t) + ": lhs " + render(lhs) + " rhs " + render(rhs);
        }
        return "";
    });
    run_check(out, "H.psi=0 " + tag, [&]() -> std::string {
        for (const auto& s : pair_inputs) {
            Tensor got = cd.big_h(cd.big_psi(s));
            if (!got.is_zero()) return "input " + render(s) + " -> " + render(got);
        }
        return "";
    });
    run_check(out, "phi.H=0 " + tag, [&]() -> std::string {
        for (const auto& t : dg_inputs) {
            Tensor got = cd.big_phi(cd.big_h(t));
            if (!got.is_zero()) return "input " + render(t) + " -> " + render(got);
        }
        return "";
    });
    run_check(out, "H.H=0 " + tag, [&]() -> std::string {
        for (const auto& t : dg_inputs) {
            Tensor got = cd.big_h(cd.big_h(t));
            if (!got.is_zero()) return "input " + render(t) + " -> " + render(got);
        }
        return "";
    });
    run_check(out, "phi.L=dB.phi " + tag, [&]() -> std::string {
        for (const auto& t : dg_inputs) {
            Tensor lhs = cd.big_phi(tensor_lq(fr, t));
            Tensor rhs = tensor_db(fr, cd.big_phi(t));
            if (!(lhs == rhs))
                return "input " + render(t) + ": lhs " + render(lhs) + " rhs " + render(rhs);
        }
        return "";
    });
    run_check(out, "psi.dB=L.psi " + tag, [&]() -> std::string {
        for (const auto& s : pair_inputs) {
            Tensor lhs = cd.big_psi(tensor_db(fr, s));
            Tensor rhs = tensor_lq(fr, cd.big_psi(s));
            if (!(lhs == rhs))
                return "input " + render(s) + ": lhs " + render(lhs) + " rhs " + render(rhs);
        }
        return "";
    });
    return out;
}

std::vector<CheckResult> splitting_checks(const ContractionData& cd, int max_m, int max_n,
                                          int random_count, std::uint64_t seed) {
    const CanonicalFrame& fr = cd.frame();
    std::vector<CheckResult> out;
    if (!cd.has_theta()) {
        CheckResult r;
        r.name = "splitting: no theta bundled";
        r.pass = false;
        r.counterexample = "scene carries no alternate splitting";
        out.push_back(r);
        return out;
    }
    Random rng(seed);
    for (int m = 0; m <= max_m; ++m) {
        for (int n = 0; n <= max_n; ++n) {
            if (m + n == 0) continue;
            std::vector<bool> sig = ContractionData::signature(m, n);
            std::string tag = "(m=" + std::to_string(m) + ",n=" + std::to_string(n) + ")";
            std::vector<Tensor> pair_inputs, dg_inputs;
            // frame-generator words first, then seeded random elements
            {
                std::vector<Word> words{{}};
                for (int k = 0; k < m + n; ++k) {
                    std::vector<Word> next;
                    for (const auto& w : words)
                        for (int s = 0; s < fr.b; ++s) {
                            Word nw = w;
                            nw.push_back(static_cast<std::uint8_t>(s));
                            next.push_back(nw);
                        }
                    words = next;
                }
                for (const auto& w : words) {
                    Tensor t = tensor_zero(true, sig);
                    t.add_term(w, fr.ctx.scalar_form(fr.ctx.one_poly()));
                    pair_inputs.push_back(t);
                }
            }
            for (int k = 0; k < std::max(random_count, 4); ++k) {
                pair_inputs.push_back(rng.tensor(fr, true, sig));
                dg_inputs.push_back(rng.tensor(fr, false, sig));
            }
            run_check(out, "psi_hat-psi=Theta.dB+L.Theta " + tag, [&]() -> std::string {
                for (const auto& s : pair_inputs) {
                    Tensor lhs = tensor_sub(cd.big_psi_hat(s), cd.big_psi(s));
                    Tensor rhs = tensor_add(cd.big_theta(tensor_db(fr, s)),
                                            tensor_lq(fr, cd.big_theta(s)));
                    if (!(lhs == rhs))
                        return "input " + tensor_to_string(fr, s) + ": lhs " +
                               tensor_to_string(fr, lhs) + " rhs " + tensor_to_string(fr, rhs);
                }
                return "";
            });
            run_check(out, "phi_hat-phi=Xi.L+dB.Xi " + tag, [&]() -> std::string {
                for (const auto& t : dg_inputs) {
                    Tensor lhs = tensor_sub(cd.big_phi_hat(t), cd.big_phi(t));
                    Tensor rhs = tensor_add(cd.big_xi(tensor_lq(fr, t)),
                                            tensor_db(fr, cd.big_xi(t)));
                    if (!(lhs == rhs))
                        return "input " + tensor_to_string(fr, t) + ": lhs " +
                               tensor_to_string(fr, lhs) + " rhs " + tensor_to_string(fr, rhs);
                }
                return "";
            });
        }
    }
    return out;
}

std::vector<CheckResult> foundation_checks(const ContractionData& cd, int random_count,
                                           std::uint64_t seed) {
    const CanonicalFrame& fr = cd.frame();
    const SceneContext& ctx = fr.ctx;
    std::vector<CheckResult> out;
    Random rng(seed);

    run_check(out, "d_F^2=0", [&]() -> std::string {
        for (int k = 0; k < random_count; ++k) {
            FormElement w = rng.form_mixed(ctx);
            FormElement got = ctx.d_f(ctx.d_f(w));
            if (!got.is_zero())
                return "d_F^2(" + w.to_string(ctx.coords()) + ") = " +
                       got.to_string(ctx.coords());
        }
        return "";
    });
    run_check(out, "d_B^2=0", [&]() -> std::string {
        for (int m = 0; m <= 1; ++m)
            for (int n = 0; n + m <= 3 && n <= 2; ++n) {
                if (m + n == 0) continue;
                auto sig = ContractionData::signature(m, n);
                for (int k = 0; k < std::max(2, random_count / 4); ++k) {
                    Tensor t = rng.tensor(fr, true, sig);
                    Tensor got = tensor_db(fr, tensor_db(fr, t));
                    if (!got.is_zero()) return "input " + tensor_to_string(fr, t);
                }
            }
        return "";
    });
    run_check(out, "L_Q^2=0", [&]() -> std::string {
        for (int m = 0; m <= 1; ++m)
            for (int n = 0; n + m <= 3 && n <= 2; ++n) {
                if (m + n == 0) continue;
                auto sig = ContractionData::signature(m, n);
                for (int k = 0; k < std::max(2, random_count / 4); ++k) {
                    Tensor t = rng.tensor(fr, false, sig);
                    Tensor got = tensor_lq(fr, tensor_lq(fr, t));
                    if (!got.is_zero()) return "input " + tensor_to_string(fr, t);
                }
            }
        return "";
    });
    run_check(out, "d_B derivation over d_F", [&]() -> std::string {
        for (int k = 0; k < std::max(4, random_count / 8); ++k) {
            int wdeg = rng.below(ctx.rank_f() + 1);
            FormElement w = rng.form(ctx, wdeg, 2);
            Tensor s = rng.tensor(fr, true, ContractionData::signature(rng.below(2), 1));
            Tensor lhs = tensor_db(fr, tensor_scale(w, s));
            Tensor second = tensor_scale(w, tensor_db(fr, s));
            if (wdeg % 2 != 0) second = tensor_neg(second);
            Tensor rhs = tensor_add(tensor_scale(ctx.d_f(w), s), second);
            if (!(lhs == rhs)) return "sample " + std::to_string(k);
        }
        return "";
    });
    run_check(out, "[Q,Q]=0", [&]() -> std::string {
        DGVectorField q = homological_field(ctx);
        DGVectorField qq = vf_bracket(ctx, q, q);
        if (!qq.is_zero()) return "[Q,Q] nonzero";
        return "";
    });
    run_check(out, "graded Jacobi", [&]() -> std::string {
        for (int k = 0; k < std::max(2, random_count / 8); ++k) {
            DGVectorField x = rng.dgvf(fr, rng.below(2));
            DGVectorField y = rng.dgvf(fr, rng.below(3) - 1);
            DGVectorField z = rng.dgvf(fr, rng.below(2));
            // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
            DGVectorField lhs = vf_bracket(ctx, x, vf_bracket(ctx, y, z));
            DGVectorField r1 = vf_bracket(ctx, vf_bracket(ctx, x, y), z);
            DGVectorField r2 = vf_bracket(ctx, y, vf_bracket(ctx, x, z));
            DGVectorField rhs = (x.degree * y.degree) % 2 != 0 ? r1 - r2 : r1 + r2;
            if (!(lhs == rhs)) return "jacobi failed at sample " + std::to_string(k);
        }
        return "";
    });
    run_check(out, "bracket antisymmetry", [&]() -> std::string {
        for (int k = 0; k < std::max(2, random_count / 8); ++k) {
            DGVectorField x = rng.dgvf(fr, rng.below(2));
            DGVectorField y = rng.dgvf(fr, rng.below(3) - 1);
            DGVectorField lhs = vf_bracket(ctx, x, y);
            DGVectorField rhs = vf_bracket(ctx, y, x);
            DGVectorField sum = (x.degree * y.degree) % 2 != 0 ? lhs - rhs : lhs + rhs;
            if (!sum.is_zero()) return "antisymmetry failed at sample " + std::to_string(k);
        }
        return "";
    });
    run_check(out, "derivation: X(ab)=X(a)b+(-1)^{|X||a|}aX(b)", [&]() -> std::string {
        for (int k = 0; k < std::max(2, random_count / 8); ++k) {
            DGVectorField x = rng.dgvf(fr, rng.below(3) - 1);
            FormElement a = rng.form(ctx, rng.below(ctx.rank_f() + 1), 2);
            FormElement b = rng.form_mixed(ctx, 2);
            FormElement lhs = vf_apply(ctx, x, wedge(a, b));
            FormElement rhs = wedge(vf_apply(ctx, x, a), b);
            if (a.is_zero()) continue;
            FormElement xb = vf_apply(ctx, x, b);
            FormElement second = wedge(a, xb);
            if ((x.degree * a.degree()) % 2 != 0) second = -second;
            rhs += second;
            if (!(lhs == rhs)) return "leibniz failed at sample " + std::to_string(k);
        }
        return "";
    });
    return out;
}

}  // namespace fc
