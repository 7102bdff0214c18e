#pragma once

#include <string>
#include <vector>

#include "vhawkes/hawkes.hpp"

namespace vhawkes {

// Partial derivatives of a test function f(l, n, b) at the canonical start
// state (v, 0, 0) of the triplet (lambda_t, N_t, B(N_t)).
struct GeneratorInput {
    double f_l = 0.0, f_n = 0.0, f_b = 0.0;
    double f_ll = 0.0, f_ln = 0.0, f_lb = 0.0;
    double f_nb = 0.0, f_nn = 0.0, f_bb = 0.0;
    HawkesParams params{1.0, 1.0, 2.0};
};

// Coefficients of the published generator, closed forms of (v, alpha, beta).
struct GeneratorCoefficients {
    double c_l;   // alpha v
    double c_n;   // v
    double c_ll;  // (-2 v^2 (alpha - beta) + v (alpha^2 + 2 beta v) - 2 v^2) / 2
    double c_ln;  // -v^2
    double c_bb;  // v / 2

    static GeneratorCoefficients from(const HawkesParams& p);
};

// A f = f_l c_l + f_n c_n + f_ll c_ll + f_ln c_ln + f_bb c_bb, the published
// linear combination evaluated as printed. Throws on non-finite partials.
double apply_generator(const GeneratorInput& in);

// One small-t limit of a moment ratio, estimated from the ODE oracle over a
// decreasing t sequence with Richardson (Neville) extrapolation to t = 0,
// reported against the published value. Disagreements are findings, never
// exceptions.
struct LimitReport {
    std::string name;
    double printed = 0.0;
    double estimated = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;  // abs_err / |printed|, infinity when printed == 0
    std::vector<double> t_sequence;
    std::vector<double> raw;  // ratio at each t before extrapolation
};

std::vector<LimitReport> verify_limits(
    const HawkesParams& p,
    std::vector<double> t_values = {1e-2, 1e-3, 1e-4, 1e-5});

std::string limits_report_json(const std::vector<LimitReport>& reports);

}  // namespace vhawkes
