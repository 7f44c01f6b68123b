#include "fc/form.hpp"

#include "fc/errors.hpp"

namespace fc {

int mask_popcount(XiMask m) { return __builtin_popcount(m); }

int merge_sign(XiMask a, XiMask b) {
    if (a & b) return 0;
    // Count pairs (i in a, j in b) with j < i.
    int inversions = 0;
    for (XiMask rest = a; rest;) {
        int i = __builtin_ctz(rest);
        rest &= rest - 1;
        inversions += __builtin_popcount(b & ((1u << i) - 1));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

int sign_below(XiMask m, int k) {
    int c = __builtin_popcount(m & ((1u << k) - 1));
    return (c % 2 == 0) ? 1 : -1;
}

FormElement FormElement::scalar(int rank_f, const Poly& p) {
    FormElement w(rank_f, p.nvars());
    if (!p.is_zero()) w.terms_.emplace(0u, p);
    return w;
}

FormElement FormElement::xi(int rank_f, int nvars, int index) {
    FormElement w(rank_f, nvars);
    w.terms_.emplace(XiMask(1) << index, Poly::constant(nvars, Scalar(1)));
    return w;
}

FormElement FormElement::term(int rank_f, XiMask mask, const Poly& p) {
    FormElement w(rank_f, p.nvars());
    if (!p.is_zero()) w.terms_.emplace(mask, p);
    return w;
}

bool FormElement::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = mask_popcount(terms_.begin()->first);
    for (const auto& [m, p] : terms_)
        if (mask_popcount(m) != d) return false;
    return true;
}

int FormElement::degree() const {
    if (terms_.empty()) return -1;
    int d = mask_popcount(terms_.begin()->first);
    for (const auto& [m, p] : terms_)
        if (mask_popcount(m) != d) throw ShapeError("degree of inhomogeneous form");
    return d;
}

int FormElement::max_degree() const {
    int d = -1;
    for (const auto& [m, p] : terms_) d = std::max(d, mask_popcount(m));
    return d;
}

Poly FormElement::coefficient(XiMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? Poly(nvars_) : it->second;
}

std::vector<FormElement> FormElement::homogeneous_parts() const {
    std::map<int, FormElement> by_deg;
    for (const auto& [m, p] : terms_) {
        auto [it, inserted] = by_deg.try_emplace(mask_popcount(m), FormElement(rank_f_, nvars_));
        it->second.terms_.emplace(m, p);
    }
    std::vector<FormElement> out;
    for (auto& [d, w] : by_deg) out.push_back(std::move(w));
    return out;
}

void FormElement::add_term(XiMask mask, const Poly& p) {
    if (p.is_zero()) return;
    if (nvars_ == 0) nvars_ = p.nvars();
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
        terms_.emplace(mask, p);
    } else {
        it->second += p;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FormElement FormElement::operator-() const {
    FormElement r(rank_f_, nvars_);
    for (const auto& [m, p] : terms_) r.terms_.emplace(m, -p);
    return r;
}

FormElement operator+(const FormElement& a, const FormElement& b) {
    if (a.rank_f_ != b.rank_f_ && !a.terms_.empty() && !b.terms_.empty())
        throw FrameMismatch("form add: rank");
    FormElement r = a.terms_.empty() ? FormElement(b.rank_f_, b.nvars_) : a;
    for (const auto& [m, p] : b.terms_) r.add_term(m, p);
    return r;
}

FormElement operator-(const FormElement& a, const FormElement& b) { return a + (-b); }

FormElement operator*(const Poly& p, const FormElement& w) {
    FormElement r(w.rank_f_, w.nvars_);
    for (const auto& [m, q] : w.terms_) r.add_term(m, p * q);
    return r;
}

FormElement operator*(const Scalar& c, const FormElement& w) {
    FormElement r(w.rank_f_, w.nvars_);
    if (c.is_zero()) return r;
    for (const auto& [m, q] : w.terms_) r.add_term(m, c * q);
    return r;
}

bool FormElement::operator<(const FormElement& o) const {
    if (rank_f_ != o.rank_f_) return rank_f_ < o.rank_f_;
    auto it = terms_.begin(), jt = o.terms_.begin();
    for (; it != terms_.end() && jt != o.terms_.end(); ++it, ++jt) {
        if (it->first != jt->first) return it->first < jt->first;
        if (it->second != jt->second) return it->second < jt->second;
    }
    return jt != o.terms_.end();
}

FormElement wedge(const FormElement& a, const FormElement& b) {
    if (a.rank_f() != b.rank_f() && !a.is_zero() && !b.is_zero())
        throw FrameMismatch("wedge: rank");
    FormElement r(a.is_zero() ? b.rank_f() : a.rank_f(), std::max(a.nvars(), b.nvars()));
    for (const auto& [ma, pa] : a.terms()) {
        for (const auto& [mb, pb] : b.terms()) {
            int s = merge_sign(ma, mb);
            if (s == 0) continue;
            Poly prod = pa * pb;
            if (s < 0) prod = -prod;
            r.add_term(ma | mb, prod);
        }
    }
    return r;
}

FormElement contract_form(int k, const FormElement& w) {
    FormElement r(w.rank_f(), w.nvars());
    XiMask bit = XiMask(1) << k;
    for (const auto& [m, p] : w.terms()) {
        if (!(m & bit)) continue;
        int s = sign_below(m, k);
        r.add_term(m & ~bit, s < 0 ? -p : p);
    }
    return r;
}

Scalar pair_dual(const std::vector<int>& dual_word, const std::vector<int>& vec_word) {
    if (dual_word.size() != vec_word.size())
        throw LengthMismatch("pair_dual: word lengths differ");
    for (std::size_t i = 0; i < dual_word.size(); ++i)
        if (dual_word[i] != vec_word[i]) return Scalar(0);
    return Scalar(1);
}

std::string FormElement::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, p] : terms_) {
        if (!first) out += "+";
        first = false;
        out += "(" + p.to_string(names) + ")";
        for (XiMask rest = m; rest;) {
            int i = __builtin_ctz(rest);
            rest &= rest - 1;
            out += "*xi[" + std::to_string(i + 1) + "]";
        }
    }
    return out;
}

FormElement FormElement::parse(const std::string& text, int rank_f,
                               const std::vector<std::string>& names) {
    FormElement r(rank_f, static_cast<int>(names.size()));
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (text.compare(pos, 1, "0") == 0 && pos + 1 == text.size()) return r;
    bool negate = false;
    while (pos < text.size()) {
        skip();
        if (text[pos] == '+') {
            negate = false;
            ++pos;
            skip();
        } else if (text[pos] == '-') {
            negate = true;
            ++pos;
            skip();
        }
        if (pos >= text.size() || text[pos] != '(')
            throw ParseError("form: expected '(' at offset " + std::to_string(pos));
        int depth = 0;
        std::size_t start = pos;
        for (; pos < text.size(); ++pos) {
            if (text[pos] == '(') ++depth;
            if (text[pos] == ')') {
                --depth;
                if (depth == 0) break;
            }
        }
        if (depth != 0) throw ParseError("form: unbalanced parentheses");
        std::string inner = text.substr(start + 1, pos - start - 1);
        ++pos;
        Poly coeff = Poly::parse(inner, names);
        if (negate) coeff = -coeff;
        XiMask mask = 0;
        int sign = 1;
        std::vector<int> letters;
        skip();
        while (pos < text.size() && text[pos] == '*') {
            ++pos;
            skip();
            if (text.compare(pos, 3, "xi[") != 0) throw ParseError("form: expected xi[");
            pos += 3;
            std::size_t end = text.find(']', pos);
            if (end == std::string::npos) throw ParseError("form: expected ]");
            int idx = std::stoi(text.substr(pos, end - pos)) - 1;
            pos = end + 1;
            letters.push_back(idx);
            skip();
        }
        for (int idx : letters) {
            XiMask bit = XiMask(1) << idx;
            int s = merge_sign(mask, bit);
            if (s == 0) {
                sign = 0;
                break;
            }
            sign *= s;
            mask |= bit;
        }
        if (sign != 0) r.add_term(mask, sign < 0 ? -coeff : coeff);
        skip();
    }
    return r;
}

}  // namespace fc
