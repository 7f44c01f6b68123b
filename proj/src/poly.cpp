#include "fc/poly.hpp"

#include <atomic>
#include <cctype>
#include <numeric>

#include "fc/errors.hpp"

namespace fc {

namespace {
std::atomic<int> g_degree_cap{16};

int total(const Exponents& e) {
    int t = 0;
    for (auto v : e) t += v;
    return t;
}
}  // namespace

int poly_degree_cap() { return g_degree_cap.load(); }
void set_poly_degree_cap(int cap) { g_degree_cap.store(cap); }

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
    int ta = total(a), tb = total(b);
    if (ta != tb) return ta > tb;
    return a > b;  // lexicographic on exponent vectors, higher first
}

Poly Poly::constant(int nvars, const Scalar& c) {
    Poly p(nvars);
    if (!c.is_zero()) p.terms_.emplace(Exponents(nvars, 0), c);
    return p;
}

Poly Poly::variable(int nvars, int index) {
    Exponents e(nvars, 0);
    e[index] = 1;
    return monomial(nvars, e, Scalar(1));
}

Poly Poly::monomial(int nvars, Exponents e, const Scalar& c) {
    Poly p(nvars);
    if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
    p.check_cap();
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

Scalar Poly::constant_term() const {
    Exponents zero(nvars_, 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? Scalar(0) : it->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    return total(terms_.begin()->first);  // graded order puts max degree first
}

void Poly::check_cap() const {
    if (total_degree() > poly_degree_cap())
        throw DegreeOverflow("polynomial degree " + std::to_string(total_degree()) +
                             " exceeds cap " + std::to_string(poly_degree_cap()));
}

void Poly::add_term(const Exponents& e, const Scalar& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw FrameMismatch("poly_add: variable count");
    Poly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw FrameMismatch("poly_mul: variable count");
    Poly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e(a.nvars_);
            for (int i = 0; i < a.nvars_; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
            r.add_term(e, ca * cb);
        }
    }
    r.check_cap();
    return r;
}

Poly operator*(const Scalar& c, const Poly& p) {
    Poly r(p.nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, pc] : p.terms_) r.terms_.emplace(e, c * pc);
    return r;
}

bool Poly::operator<(const Poly& o) const {
    if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    GradedLexLess less;
    for (; it != terms_.end() && jt != o.terms_.end(); ++it, ++jt) {
        if (less(it->first, jt->first)) return true;
        if (less(jt->first, it->first)) return false;
        const Scalar &x = it->second, &y = jt->second;
        if (x != y) {
            if (x.re_num() != y.re_num()) return x.re_num() < y.re_num();
            if (x.im_num() != y.im_num()) return x.im_num() < y.im_num();
            return x.den() < y.den();
        }
    }
    return jt != o.terms_.end();
}

Poly Poly::derivative(int var) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        r.add_term(d, Scalar(e[var]) * c);
    }
    return r;
}

Scalar Poly::eval(const std::vector<Scalar>& point) const {
    Scalar acc(0);
    for (const auto& [e, c] : terms_) {
        Scalar m = c;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) m *= point[i];
        acc += m;
    }
    return acc;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Scalar coeff = c;
        bool neg = coeff.is_real() && coeff.re_num().is_negative();
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        first = false;
        if (neg) coeff = -coeff;

        std::string mono;
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (e[i] > 1) mono += "^" + std::to_string(static_cast<int>(e[i]));
        }
        if (mono.empty()) {
            out += coeff.to_string();
        } else if (coeff.is_one()) {
            out += mono;
        } else {
            out += coeff.to_string() + "*" + mono;
        }
    }
    return out;
}

namespace {

struct PolyParser {
    const std::string& s;
    std::size_t pos = 0;
    const std::vector<std::string>& names;
    int nvars;

    explicit PolyParser(const std::string& text, const std::vector<std::string>& n)
        : s(text), names(n), nvars(static_cast<int>(n.size())) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    BigInt parse_integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer at offset " + std::to_string(pos));
        return BigInt::from_decimal(s.substr(start, pos - start));
    }

    // a/b, possibly followed by *i inside a complex group
    Scalar parse_simple_fraction(bool negated) {
        BigInt num = parse_integer();
        BigInt den(1);
        if (eat('/')) den = parse_integer();
        Scalar v{negated ? -num : num, BigInt(0), den};
        return v;
    }

    // "(a/b+c/d*i)" | "(c/d*i)" — the parenthesized complex coefficient form
    Scalar parse_complex_group() {
        // assumes '(' consumed
        bool neg1 = eat('-');
        if (!neg1) eat('+');
        BigInt n1 = parse_integer();
        BigInt d1(1);
        if (eat('/')) d1 = parse_integer();
        if (eat('*')) {
            if (!eat('i')) throw ParseError("expected i in complex coefficient");
            if (!eat(')')) throw ParseError("expected ) in complex coefficient");
            return Scalar(BigInt(0), neg1 ? -n1 : n1, d1);
        }
        if (eat('i')) {
            if (!eat(')')) throw ParseError("expected )");
            return Scalar(BigInt(0), neg1 ? -n1 : n1, d1);
        }
        bool neg2 = eat('-');
        if (!neg2 && !eat('+')) throw ParseError("expected +/- in complex coefficient");
        BigInt n2 = parse_integer();
        BigInt d2(1);
        if (eat('/')) d2 = parse_integer();
        if (eat('*')) {
            if (!eat('i')) throw ParseError("expected i");
        } else if (!eat('i')) {
            throw ParseError("expected i");
        }
        if (!eat(')')) throw ParseError("expected )");
        Scalar re(neg1 ? -n1 : n1, BigInt(0), d1);
        Scalar im(BigInt(0), neg2 ? -n2 : n2, d2);
        return re + im;
    }

    int find_var() {
        skip_ws();
        // longest-match over variable names
        int best = -1;
        std::size_t best_len = 0;
        for (int i = 0; i < nvars; ++i) {
            const std::string& nm = names[i];
            if (nm.size() > best_len && s.compare(pos, nm.size(), nm) == 0) {
                best = i;
                best_len = nm.size();
            }
        }
        if (best >= 0) pos += best_len;
        return best;
    }

    Poly parse_term(bool negated) {
        Scalar coeff(1);
        Exponents e(nvars, 0);
        bool saw_anything = false;
        bool want_factor = true;
        while (want_factor) {
            skip_ws();
            char c = peek();
            if (c == '(') {
                eat('(');
                coeff *= parse_complex_group();
                saw_anything = true;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= parse_simple_fraction(false);
                saw_anything = true;
            } else if (c == 'i' && find_var_would_fail_at_i()) {
                ++pos;
                coeff *= Scalar::i();
                saw_anything = true;
            } else {
                int v = find_var();
                if (v < 0) {
                    if (!saw_anything) throw ParseError("expected term at offset " + std::to_string(pos));
                    break;
                }
                int exp = 1;
                if (eat('^')) {
                    BigInt b = parse_integer();
                    exp = static_cast<int>(b.to_int64());
                }
                e[v] = static_cast<std::uint8_t>(e[v] + exp);
                saw_anything = true;
            }
            want_factor = eat('*');
        }
        if (negated) coeff = -coeff;
        return Poly::monomial(nvars, e, coeff);
    }

    // 'i' is the imaginary unit only when no variable name matches here.
    bool find_var_would_fail_at_i() {
        for (int i = 0; i < nvars; ++i)
            if (s.compare(pos, names[i].size(), names[i]) == 0) return false;
        return true;
    }

    Poly parse() {
        Poly acc(nvars);
        bool neg = eat('-');
        if (!neg) eat('+');
        acc += parse_term(neg);
        while (true) {
            skip_ws();
            if (pos >= s.size()) break;
            if (eat('+')) {
                acc += parse_term(false);
            } else if (eat('-')) {
                acc += parse_term(true);
            } else {
                throw ParseError("unexpected character '" + std::string(1, s[pos]) +
                                 "' at offset " + std::to_string(pos));
            }
        }
        return acc;
    }
};

}  // namespace

Poly Poly::parse(const std::string& text, const std::vector<std::string>& names) {
    PolyParser p(text, names);
    return p.parse();
}

bool PolyVectorField::is_zero() const {
    for (const auto& c : comps)
        if (!c.is_zero()) return false;
    return true;
}

PolyVectorField PolyVectorField::zero(int nvars) {
    PolyVectorField v;
    v.comps.assign(nvars, Poly(nvars));
    return v;
}

PolyVectorField PolyVectorField::coordinate(int nvars, int index) {
    PolyVectorField v = zero(nvars);
    v.comps[index] = Poly::constant(nvars, Scalar(1));
    return v;
}

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
    PolyVectorField r = a;
    for (std::size_t i = 0; i < r.comps.size(); ++i) r.comps[i] += b.comps[i];
    return r;
}

PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b) {
    PolyVectorField r = a;
    for (std::size_t i = 0; i < r.comps.size(); ++i) r.comps[i] -= b.comps[i];
    return r;
}

PolyVectorField operator*(const Poly& f, const PolyVectorField& x) {
    PolyVectorField r = x;
    for (auto& c : r.comps) c = f * c;
    return r;
}

Poly vf_derive(const PolyVectorField& x, const Poly& f) {
    if (x.nvars() != f.nvars()) throw FrameMismatch("vf_derive: variable count");
    Poly r(f.nvars());
    for (int mu = 0; mu < f.nvars(); ++mu) r += x.comps[mu] * f.derivative(mu);
    return r;
}

PolyVectorField vf_bracket_coords(const PolyVectorField& x, const PolyVectorField& y) {
    if (x.nvars() != y.nvars()) throw FrameMismatch("vf_bracket_coords: variable count");
    PolyVectorField r = PolyVectorField::zero(x.nvars());
    for (int mu = 0; mu < x.nvars(); ++mu)
        r.comps[mu] = vf_derive(x, y.comps[mu]) - vf_derive(y, x.comps[mu]);
    return r;
}

}  // namespace fc
