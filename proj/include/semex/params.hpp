// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace semex {

// Slowly varying factor attached to the integrand of the log-tail.
// constant:  L(u) = c
// log_power: L(u) = (1 + log u)^p, |p| <= 1 so that L'(u) = o(L(u)/u)
//            keeps the auxiliary function h eventually monotone.
struct slowly_varying {
    enum class kind { constant, log_power };
    kind k = kind::constant;
    double value = 1.0; // c for constant, p for log_power

    double operator()(double u) const {
        if (k == kind::constant) return value;
        return std::pow(1.0 + std::log(u), value);
    }

    bool is_unit() const { return k == kind::constant && value == 1.0; }

    static slowly_varying constant(double c) { return {kind::constant, c}; }
    static slowly_varying log_power(double p) { return {kind::log_power, p}; }

    std::string describe() const {
        return (k == kind::constant ? "constant:" : "logpower:") + std::to_string(value);
    }
};

// The model tuple (alpha, beta, gamma, L_alpha, L, x0).  alpha is the
// semi-exponential tail index, beta the memory index of the return
// times, gamma the tail multiplier, x0 the truncation point below
// which the big-jump Levy measure is cut off.
struct model_params {
    double alpha = 0.5;
    double beta = 0.25;
    double gamma = 1.0;
    double x0 = 1.0;
    slowly_varying L_alpha = slowly_varying::constant(1.0);
    slowly_varying L = slowly_varying::constant(1.0);

    void validate() const {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("model_params: alpha must lie in (0,1)");
        if (!(beta > 0.0 && beta < 0.5))
            throw std::invalid_argument("model_params: beta must lie in (0,1/2)");
        if (!(gamma > 0.0))
            throw std::invalid_argument("model_params: gamma must be positive");
        if (!(x0 >= 1.0))
            throw std::invalid_argument("model_params: x0 must be >= 1");
        if (L_alpha.k == slowly_varying::kind::log_power &&
            std::fabs(L_alpha.value) > 1.0)
            throw std::invalid_argument("model_params: log_power exponent must have |p| <= 1");
        if (L.k != slowly_varying::kind::constant)
            throw std::invalid_argument("model_params: step-law factor L must be constant");
        if (!(L.value > 0.0 && L.value <= 1.0))
            throw std::invalid_argument("model_params: constant L must lie in (0,1]");
        // h(x) = x^{1-alpha} L_alpha(x) must be increasing from x0 on.
        if (L_alpha.k == slowly_varying::kind::log_power && L_alpha.value < 0.0) {
            double need = std::exp(-L_alpha.value / (1.0 - alpha) - 1.0);
            if (x0 < need)
                throw std::invalid_argument(
                    "model_params: x0 too small for negative log_power exponent");
        }
    }

    static model_params defaults() { return {}; }
};

} // namespace semex
