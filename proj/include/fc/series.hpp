#pragma once

#include <map>
#include <string>
#include <vector>

#include "fc/scalar.hpp"

namespace fc {

// P(x) = 1 + sum b_i x^i, held to a finite truncation order.
struct SeriesSpec {
    std::vector<Scalar> b;  // b[0] = b_1, ...
    int order() const { return static_cast<int>(b.size()); }
};

// Taylor coefficients of x / (1 - e^{-x}) past the constant 1.
SeriesSpec todd_series(int order);
SeriesSpec one_plus_x_series(int order);

// Weight-homogeneous polynomial in the power-sum symbols p_1..p_r:
// exponent vector e (e[i] = exponent of p_{i+1}) with sum (i+1)*e[i] = weight.
using PowerSumPoly = std::map<std::vector<std::uint8_t>, Scalar>;

// K_1..K_{r_max} with det(P(A)) = 1 + sum_r K_r(tr A, ..., tr A^r),
// computed by formal exp-tr-log over the weight-graded coefficient ring.
std::vector<PowerSumPoly> m_sequence(const SeriesSpec& p, int r_max);

std::string power_sum_poly_to_string(const PowerSumPoly& k);

// log(P(x)) - style composed series: coefficients c_j of log P = sum c_j x^j.
std::vector<Scalar> log_of_series(const SeriesSpec& p, int order);

// Evaluate a PowerSumPoly on supplied graded-commutative values. The algebra
// is supplied through callbacks so both sides of the correspondence reuse it.
template <typename T>
T eval_power_sum_poly(const PowerSumPoly& k, const std::vector<T>& p_values, const T& one,
                      T (*mul)(const T&, const T&), T (*add)(const T&, const T&),
                      T (*scale)(const Scalar&, const T&)) {
    T acc = scale(Scalar(0), one);
    for (const auto& [e, c] : k) {
        T term = one;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int rep = 0; rep < e[i]; ++rep) term = mul(term, p_values[i]);
        acc = add(acc, scale(c, term));
    }
    return acc;
}

}  // namespace fc
