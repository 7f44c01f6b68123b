#include "fc/tensor.hpp"

#include "fc/errors.hpp"

namespace fc {

void Tensor::add_term(const Word& w, const FormElement& c) {
    if (c.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
        terms.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

Tensor tensor_zero(bool pair_side, std::vector<bool> dual) {
    Tensor t;
    t.pair_side = pair_side;
    t.dual = std::move(dual);
    return t;
}

Tensor tensor_add(const Tensor& a, const Tensor& b) {
    if (a.dual != b.dual || a.pair_side != b.pair_side)
        throw SignatureError("tensor_add: signatures differ");
    Tensor r = a;
    for (const auto& [w, c] : b.terms) r.add_term(w, c);
    return r;
}

Tensor tensor_sub(const Tensor& a, const Tensor& b) { return tensor_add(a, tensor_neg(b)); }

Tensor tensor_neg(const Tensor& a) {
    Tensor r = tensor_zero(a.pair_side, a.dual);
    for (const auto& [w, c] : a.terms) r.terms.emplace(w, -c);
    return r;
}

Tensor tensor_scale(const FormElement& w, const Tensor& t) {
    Tensor r = tensor_zero(t.pair_side, t.dual);
    for (const auto& [word, c] : t.terms) r.add_term(word, wedge(w, c));
    return r;
}

int symbol_degree(const CanonicalFrame& fr, bool pair_side, bool dual, int sym) {
    if (pair_side) return 0;
    return dual ? fr.dual_degree(sym) : fr.vec_degree(sym);
}

int symbol_count(const CanonicalFrame& fr, bool pair_side) {
    return pair_side ? fr.b : fr.size();
}

namespace {

int word_degree(const CanonicalFrame& fr, const Tensor& t, const Word& w, int upto) {
    int d = 0;
    for (int k = 0; k < upto; ++k) d += symbol_degree(fr, t.pair_side, t.dual[k], w[k]);
    return d;
}

}  // namespace

Tensor tensor_product(const CanonicalFrame& fr, const Tensor& a, const Tensor& b) {
    if (a.pair_side != b.pair_side) throw SignatureError("tensor_product: mixed sides");
    std::vector<bool> dual = a.dual;
    dual.insert(dual.end(), b.dual.begin(), b.dual.end());
    Tensor r = tensor_zero(a.pair_side, dual);
    for (const auto& [wa, ca] : a.terms) {
        int wa_deg = word_degree(fr, a, wa, a.slots());
        for (const auto& [wb, cb] : b.terms) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            for (const auto& cb_part : cb.homogeneous_parts()) {
                int s = (cb_part.degree() * wa_deg) % 2 == 0 ? 1 : -1;
                FormElement coeff = wedge(ca, cb_part);
                r.add_term(w, s < 0 ? -coeff : coeff);
            }
        }
    }
    return r;
}

Tensor tensor_reorder(const CanonicalFrame& fr, const Tensor& t, const std::vector<int>& perm) {
    std::vector<bool> dual(t.slots());
    for (int i = 0; i < t.slots(); ++i) dual[i] = t.dual[perm[i]];
    Tensor r = tensor_zero(t.pair_side, dual);
    for (const auto& [w, c] : t.terms) {
        // Bubble the permutation, tracking Koszul transposition signs.
        std::vector<int> order(perm);
        Word cur = w;
        std::vector<bool> cur_dual = t.dual;
        // positions in the original word, to be rearranged into perm order
        std::vector<int> idx(t.slots());
        for (int i = 0; i < t.slots(); ++i) idx[i] = i;
        int sign = 1;
        for (int target = 0; target < t.slots(); ++target) {
            int want = perm[target];
            int at = target;
            while (idx[at] != want) ++at;
            for (int j = at; j > target; --j) {
                int da = symbol_degree(fr, t.pair_side, t.dual[idx[j - 1]], cur[idx[j - 1]]);
                int db = symbol_degree(fr, t.pair_side, t.dual[idx[j]], cur[idx[j]]);
                if ((da * db) % 2 != 0) sign = -sign;
                std::swap(idx[j - 1], idx[j]);
            }
        }
        Word nw(t.slots());
        for (int i = 0; i < t.slots(); ++i) nw[i] = w[perm[i]];
        r.add_term(nw, sign < 0 ? -c : c);
    }
    return r;
}

Tensor apply_slotwise(const CanonicalFrame& fr, const Tensor& in, bool out_pair_side,
                      const std::vector<bool>& out_dual, const std::vector<SlotOp>& ops) {
    if (static_cast<int>(ops.size()) != in.slots())
        throw SignatureError("apply_slotwise: op count");
    Tensor r = tensor_zero(out_pair_side, out_dual);
    for (const auto& [w, c] : in.terms) {
        for (const auto& c_part : c.homogeneous_parts()) {
            // walk slots left to right, branching over map entries
            struct State {
                Word out;
                FormElement coeff;
                int out_deg_sum = 0;  // sum of produced symbol degrees so far
            };
            std::vector<State> states{State{{}, c_part, 0}};
            bool dead = false;
            int in_deg_prefix = 0;
            for (int k = 0; k < in.slots() && !dead; ++k) {
                int sym = w[k];
                int in_deg = symbol_degree(fr, in.pair_side, in.dual[k], sym);
                std::vector<State> next;
                const SlotOp& op = ops[k];
                if (op.identity) {
                    for (auto& st : states) {
                        st.out.push_back(static_cast<std::uint8_t>(sym));
                        st.out_deg_sum += in_deg;
                        next.push_back(std::move(st));
                    }
                } else {
                    auto it = op.entries.find(sym);
                    if (it == op.entries.end()) {
                        dead = true;
                        break;
                    }
                    // crossing sign of the (possibly odd) map factor
                    int cross = (op.degree % 2 != 0 && (c_part.degree() + in_deg_prefix) % 2 != 0)
                                    ? -1
                                    : 1;
                    for (const auto& st : states) {
                        for (const auto& [to, coeff] : it->second) {
                            for (const auto& cf : coeff.homogeneous_parts()) {
                                int pull = (cf.degree() % 2 != 0 && st.out_deg_sum % 2 != 0) ? -1 : 1;
                                State ns;
                                ns.out = st.out;
                                ns.out.push_back(static_cast<std::uint8_t>(to));
                                ns.coeff = wedge(st.coeff, cf);
                                if (cross * pull < 0) ns.coeff = -ns.coeff;
                                ns.out_deg_sum =
                                    st.out_deg_sum + symbol_degree(fr, out_pair_side,
                                                                   out_dual[k], to);
                                next.push_back(std::move(ns));
                            }
                        }
                    }
                }
                in_deg_prefix += in_deg;
                states = std::move(next);
                if (states.empty()) dead = true;
            }
            if (dead) continue;
            for (const auto& st : states) r.add_term(st.out, st.coeff);
        }
    }
    return r;
}

Tensor tensor_lq(const CanonicalFrame& fr, const Tensor& t) {
    if (t.pair_side) throw SignatureError("tensor_lq: graded side only");
    const SceneContext& ctx = fr.ctx;
    Tensor r = tensor_zero(false, t.dual);
    for (const auto& [w, c] : t.terms) {
        r.add_term(w, ctx.d_f(c));
        for (const auto& c_part : c.homogeneous_parts()) {
            int prefix = 0;
            for (int k = 0; k < t.slots(); ++k) {
                int sym = w[k];
                int in_deg = symbol_degree(fr, false, t.dual[k], sym);
                int lead = ((c_part.degree() + prefix) % 2 != 0) ? -1 : 1;
                for (int to = 0; to < fr.size(); ++to) {
                    const FormElement& entry = t.dual[k] ? fr.lq_dual(sym, to) : fr.lq_vec(sym, to);
                    if (entry.is_zero()) continue;
                    for (const auto& ef : entry.homogeneous_parts()) {
                        int pull = (ef.degree() % 2 != 0 && prefix % 2 != 0) ? -1 : 1;
                        Word nw = w;
                        nw[k] = static_cast<std::uint8_t>(to);
                        FormElement coeff = wedge(c_part, ef);
                        if (lead * pull < 0) coeff = -coeff;
                        r.add_term(nw, coeff);
                    }
                }
                prefix += in_deg;
            }
        }
    }
    return r;
}

Tensor tensor_db(const CanonicalFrame& fr, const Tensor& t) {
    if (!t.pair_side) throw SignatureError("tensor_db: quotient side only");
    const SceneContext& ctx = fr.ctx;
    Tensor r = tensor_zero(true, t.dual);
    for (const auto& [w, c] : t.terms) {
        r.add_term(w, ctx.d_f(c));
        for (int i = 0; i < ctx.rank_f(); ++i) {
            FormElement xi_c = wedge(ctx.xi(i), c);
            if (xi_c.is_zero()) continue;
            for (int k = 0; k < t.slots(); ++k) {
                int sym = w[k];
                for (int to = 0; to < fr.b; ++to) {
                    Poly gamma = t.dual[k] ? -ctx.bott(i, to, sym) : ctx.bott(i, sym, to);
                    if (gamma.is_zero()) continue;
                    Word nw = w;
                    nw[k] = static_cast<std::uint8_t>(to);
                    r.add_term(nw, gamma * xi_c);
                }
            }
        }
    }
    return r;
}

Tensor tensor_from_string(const CanonicalFrame& fr, bool pair_side, const std::string& text) {
    const SceneContext& ctx = fr.ctx;
    if (text == "0") return tensor_zero(pair_side, {});
    std::vector<std::string> chunks;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = text.find(" + ", pos);
        chunks.push_back(text.substr(pos, next == std::string::npos ? next : next - pos));
        if (next == std::string::npos) break;
        pos = next + 3;
    }
    Tensor out;
    bool first = true;
    for (const auto& chunk : chunks) {
        std::vector<std::string> parts;
        std::size_t p = 0;
        const std::string sep = " \xE2\x8A\x97 ";
        while (true) {
            std::size_t next = chunk.find(sep, p);
            parts.push_back(chunk.substr(p, next == std::string::npos ? next : next - p));
            if (next == std::string::npos) break;
            p = next + sep.size();
        }
        if (parts.empty()) throw ParseError("tensor: empty term");
        FormElement coeff = FormElement::parse(parts[0], ctx.rank_f(), ctx.coords());
        Word w;
        std::vector<bool> dual;
        for (std::size_t k = 1; k < parts.size(); ++k) {
            const std::string& sym = parts[k];
            int idx = -1;
            bool is_dual = false;
            if (pair_side) {
                if (sym.rfind("zeta[", 0) == 0) {
                    is_dual = true;
                    idx = std::stoi(sym.substr(5)) - 1;
                } else if (sym.rfind("Z[", 0) == 0) {
                    idx = std::stoi(sym.substr(2)) - 1;
                } else {
                    throw ParseError("tensor: unknown symbol " + sym);
                }
            } else {
                std::string name = sym;
                if (!name.empty() && name[0] == 'd' && name != "dZ") {
                    // dual names are the vector names prefixed with d
                    for (int alpha = 0; alpha < fr.size(); ++alpha)
                        if (fr.dual_name(alpha) == name) {
                            is_dual = true;
                            idx = alpha;
                            break;
                        }
                }
                if (idx < 0)
                    for (int alpha = 0; alpha < fr.size(); ++alpha)
                        if (fr.name(alpha) == name) {
                            idx = alpha;
                            break;
                        }
                if (idx < 0) throw ParseError("tensor: unknown symbol " + sym);
            }
            w.push_back(static_cast<std::uint8_t>(idx));
            dual.push_back(is_dual);
        }
        if (first) {
            out = tensor_zero(pair_side, dual);
            first = false;
        } else if (dual != out.dual) {
            throw ParseError("tensor: inconsistent slot kinds across terms");
        }
        out.add_term(w, coeff);
    }
    return out;
}

std::string tensor_to_string(const CanonicalFrame& fr, const Tensor& t) {
    if (t.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : t.terms) {
        if (!first) out += " + ";
        first = false;
        out += c.to_string(fr.ctx.coords());
        for (int k = 0; k < t.slots(); ++k) {
            out += " \xE2\x8A\x97 ";
            if (t.pair_side) {
                out += t.dual[k] ? "zeta[" + std::to_string(w[k] + 1) + "]"
                                 : "Z[" + std::to_string(w[k] + 1) + "]";
            } else {
                out += t.dual[k] ? fr.dual_name(w[k]) : fr.name(w[k]);
            }
        }
    }
    return out;
}

}  // namespace fc
