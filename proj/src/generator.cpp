#include "vhawkes/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "vhawkes/moments.hpp"

namespace vhawkes {

GeneratorCoefficients GeneratorCoefficients::from(const HawkesParams& p) {
    validate(p);
    const double v = p.v, a = p.alpha, b = p.beta;
    return GeneratorCoefficients{
        a * v,
        v,
        0.5 * (-2.0 * v * v * (a - b) + v * (a * a + 2.0 * b * v) - 2.0 * v * v),
        -v * v,
        0.5 * v,
    };
}

double apply_generator(const GeneratorInput& in) {
    const double parts[] = {in.f_l, in.f_n, in.f_b,  in.f_ll, in.f_ln,
                            in.f_lb, in.f_nb, in.f_nn, in.f_bb};
    for (double x : parts)
        if (!std::isfinite(x))
            throw std::invalid_argument("apply_generator: non-finite partial derivative");
    const auto c = GeneratorCoefficients::from(in.params);
    return in.f_l * c.c_l + in.f_n * c.c_n + in.f_ll * c.c_ll + in.f_ln * c.c_ln +
           in.f_bb * c.c_bb;
}

namespace {

// Neville extrapolation of (t_i, f_i) to t = 0.
double extrapolate_to_zero(const std::vector<double>& ts, std::vector<double> f) {
    const std::size_t n = ts.size();
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i)
            f[i] = ((0.0 - ts[i + m]) * f[i] + (ts[i] - 0.0) * f[i + m]) /
                   (ts[i] - ts[i + m]);
    return f[0];
}

}  // namespace

std::vector<LimitReport> verify_limits(const HawkesParams& p, std::vector<double> t_values) {
    validate(p);
    if (t_values.empty()) throw std::invalid_argument("verify_limits: empty t sequence");
    std::sort(t_values.begin(), t_values.end(), std::greater<>());
    for (double t : t_values)
        if (!(t > 0.0)) throw std::invalid_argument("verify_limits: t values must be > 0");

    // Limits are defined at the canonical start state (v, 0, 0), so the
    // transient-free parameterization v0 = v is used regardless of p.v0.
    const HawkesParams canon(p.v, p.alpha, p.beta);
    const double v = p.v, a = p.alpha, b = p.beta;

    struct Spec {
        const char* name;
        double printed;
        double (*ratio)(const MomentSet&, double, double);
    };
    const Spec specs[] = {
        {"E[lambda_t - v]/t", a * v,
         [](const MomentSet& m, double v_, double t) { return (m.e_L - v_) / t; }},
        {"E[N_t]/t", v,
         [](const MomentSet& m, double, double t) { return m.e_N / t; }},
        {"E[lambda_t N_t]/t", 0.0,
         [](const MomentSet& m, double, double t) { return m.e_NL / t; }},
        {"E[N_t^2]/t", 0.0,
         [](const MomentSet& m, double, double t) { return m.e_N2 / t; }},
        {"E[(lambda_t - v)^2]/t",
         -2.0 * v * v * (a - b) + v * (a * a + 2.0 * b * v) - 2.0 * v * v,
         [](const MomentSet& m, double v_, double t) {
             return (m.e_L2 - 2.0 * v_ * m.e_L + v_ * v_) / t;
         }},
    };

    std::vector<LimitReport> out;
    for (const auto& spec : specs) {
        LimitReport r;
        r.name = spec.name;
        r.printed = spec.printed;
        r.t_sequence = t_values;
        for (double t : t_values) {
            const MomentSet m = ode_moments(canon, t, std::min(1e-5, t / 50.0));
            r.raw.push_back(spec.ratio(m, v, t));
        }
        r.estimated = extrapolate_to_zero(r.t_sequence, r.raw);
        r.abs_err = std::abs(r.estimated - r.printed);
        r.rel_err = r.printed != 0.0 ? r.abs_err / std::abs(r.printed)
                                     : std::numeric_limits<double>::infinity();
        out.push_back(std::move(r));
    }
    return out;
}

std::string limits_report_json(const std::vector<LimitReport>& reports) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json e;
        e["name"] = r.name;
        e["printed"] = r.printed;
        e["estimated"] = r.estimated;
        e["abs_err"] = r.abs_err;
        if (std::isfinite(r.rel_err))
            e["rel_err"] = r.rel_err;
        else
            e["rel_err"] = nullptr;
        e["t_sequence"] = r.t_sequence;
        e["raw"] = r.raw;
        j.push_back(std::move(e));
    }
    return j.dump(2);
}

}  // namespace vhawkes
