#include "fc/series.hpp"

#include <stdexcept>

namespace fc {

namespace {

Scalar factorial_inv(int n) {
    BigInt f(1);
    for (int i = 2; i <= n; ++i) f = f * BigInt(i);
    return Scalar(BigInt(1), BigInt(0), f);
}

}  // namespace

SeriesSpec todd_series(int order) {
    // x / (1 - e^{-x}): invert (1 - e^{-x})/x = sum_{k>=0} (-1)^k x^k/(k+1)!
    std::vector<Scalar> g(order + 1);
    for (int k = 0; k <= order; ++k) {
        Scalar v = factorial_inv(k + 1);
        g[k] = (k % 2 == 0) ? v : -v;
    }
    // series inverse: h with h*g = 1
    std::vector<Scalar> h(order + 1);
    h[0] = Scalar(1);
    for (int n = 1; n <= order; ++n) {
        Scalar acc(0);
        for (int k = 1; k <= n; ++k) acc += g[k] * h[n - k];
        h[n] = -acc;  // g[0] = 1
    }
    SeriesSpec p;
    for (int n = 1; n <= order; ++n) p.b.push_back(h[n]);
    return p;
}

SeriesSpec one_plus_x_series(int order) {
    SeriesSpec p;
    p.b.assign(order, Scalar(0));
    if (order >= 1) p.b[0] = Scalar(1);
    return p;
}

std::vector<Scalar> log_of_series(const SeriesSpec& p, int order) {
    // log(1 + u) with u = sum b_i x^i, truncated
    std::vector<Scalar> u(order + 1, Scalar(0));
    for (int i = 1; i <= order && i <= p.order(); ++i) u[i] = p.b[i - 1];
    std::vector<Scalar> acc(order + 1, Scalar(0));
    std::vector<Scalar> upow(order + 1, Scalar(0));
    upow[0] = Scalar(1);
    for (int r = 1; r <= order; ++r) {
        // upow = upow * u
        std::vector<Scalar> next(order + 1, Scalar(0));
        for (int i = 0; i <= order; ++i)
            for (int j = 1; i + j <= order; ++j) next[i + j] += upow[i] * u[j];
        upow = next;
        Scalar coeff = Scalar::rational(r % 2 == 1 ? 1 : -1, r);
        for (int i = 0; i <= order; ++i) acc[i] += coeff * upow[i];
    }
    std::vector<Scalar> out(order, Scalar(0));
    for (int j = 1; j <= order; ++j) out[j - 1] = acc[j];
    return out;
}

std::vector<PowerSumPoly> m_sequence(const SeriesSpec& p, int r_max) {
    std::vector<Scalar> c = log_of_series(p, r_max);
    // exp(sum_j c_j p_j), graded by weight(p_j) = j
    std::vector<PowerSumPoly> acc(r_max + 1);  // acc[w] = weight-w part
    acc[0][std::vector<std::uint8_t>(r_max, 0)] = Scalar(1);
    // multiply successively by exp(c_j p_j) = sum_n c_j^n p_j^n / n!
    for (int j = 1; j <= r_max; ++j) {
        std::vector<PowerSumPoly> next(r_max + 1);
        for (int w = 0; w <= r_max; ++w) {
            for (const auto& [e, coeff] : acc[w]) {
                Scalar cpow(1);
                BigInt fact(1);
                for (int n = 0; w + n * j <= r_max; ++n) {
                    if (n > 0) {
                        cpow *= c[j - 1];
                        fact = fact * BigInt(n);
                    }
                    Scalar scale = cpow * Scalar(BigInt(1), BigInt(0), fact);
                    if (scale.is_zero()) continue;
                    std::vector<std::uint8_t> e2 = e;
                    e2[j - 1] = static_cast<std::uint8_t>(e2[j - 1] + n);
                    auto it = next[w + n * j].find(e2);
                    if (it == next[w + n * j].end())
                        next[w + n * j].emplace(e2, coeff * scale);
                    else {
                        it->second += coeff * scale;
                        if (it->second.is_zero()) next[w + n * j].erase(it);
                    }
                }
            }
        }
        acc = next;
    }
    std::vector<PowerSumPoly> out;
    for (int r = 1; r <= r_max; ++r) out.push_back(acc[r]);
    return out;
}

std::string power_sum_poly_to_string(const PowerSumPoly& k) {
    if (k.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : k) {
        if (!first) out += " + ";
        first = false;
        out += c.to_string();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            out += "*p" + std::to_string(i + 1);
            if (e[i] > 1) out += "^" + std::to_string(static_cast<int>(e[i]));
        }
    }
    return out;
}

}  // namespace fc
