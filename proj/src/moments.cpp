#include "vhawkes/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace vhawkes {

namespace {

void require_nonsingular(const HawkesParams& p) {
    if (p.alpha == p.beta)
        throw std::invalid_argument("moments: closed forms are singular at alpha == beta");
}

void require_time(double t) {
    if (t < 0.0) throw std::invalid_argument("moments: t must be >= 0");
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace

double mean_N(const HawkesParams& p, double t) {
    validate(p);
    require_nonsingular(p);
    require_time(t);
    const double r = p.alpha / p.beta;
    const double one_minus = 1.0 - r;
    return p.v * t / one_minus -
           (r / (one_minus * one_minus)) * (p.v / p.beta) *
               (1.0 - std::exp(-p.beta * one_minus * t));
}

double mean_lambda(const HawkesParams& p, double t) {
    validate(p);
    require_nonsingular(p);
    require_time(t);
    const double d = p.beta - p.alpha;
    return p.v / d * (p.beta - p.alpha * std::exp(-d * t));
}

MomentSet closed_form_moments(const HawkesParams& p, double t) {
    validate(p);
    require_nonsingular(p);
    require_time(t);
    const double a = p.alpha, b = p.beta, v = p.v;
    const double amb = a - b;

    MomentSet m;
    m.t = t;
    m.provenance = MomentProvenance::ClosedForm;
    m.e_N = mean_N(p, t);
    m.e_L = mean_lambda(p, t);

    // Second moment of lambda, verbatim published form.
    {
        const double term_a = v * (a * a + 2.0 * b * v) *
                              (a / (-3.0 * b + 3.0 * a) - b / (-2.0 * b + 2.0 * a)) / amb;
        const double term_b =
            v * (a * a + 2.0 * b * v) *
            (a * std::exp(t * (-3.0 * b + 3.0 * a)) / (-3.0 * b + 3.0 * a) -
             b * std::exp(t * (-2.0 * b + 2.0 * a)) / (-2.0 * b + 2.0 * a)) /
            amb;
        m.e_L2 = std::exp(-t * (-2.0 * b + 2.0 * a)) * (v * v - term_a + term_b);
    }

    // Cross moment and second moment of N share the same bracketed pair in
    // the published expressions.
    const double e2 = std::exp(2.0 * t * amb);
    const double e3 = std::exp(3.0 * t * amb);
    const double c_t = 9.0 * a * a * b + 12.0 * a * a * t + 24.0 * b * b * t -
                       6.0 * a * a * a + 18.0 * a * a * e3 + 6.0 * a * a * a * e3 +
                       18.0 * b * b * e2 - 9.0 * a * a * b * e2 - 12.0 * b * b * t * e2;
    const double d_t = 32.0 * a * b * t + 12.0 * b * b * b * t * t * e2 -
                       18.0 * a * b * e2 - 18.0 * a * b * e3 -
                       12.0 * a * b * b * t * t * e2 - 12.0 * a * b * t * e2 +
                       20.0 * a * b * t * e3;

    m.e_NL = t * t * std::exp(-t * amb) * (c_t - d_t) / (36.0 * amb * amb);
    m.e_N2 = t * t * t * std::exp(-t * amb) * (c_t - d_t) / (18.0 * amb * amb) -
             t * t * (b / (2.0 * amb) - a * std::exp(t * amb) / (2.0 * amb));
    return m;
}

std::vector<MomentTerm> moment_ode_rhs(int m, int n, const HawkesParams& p) {
    validate(p);
    if (m < 0 || n < 0 || m + n < 1)
        throw std::invalid_argument("moment_ode_rhs: require m, n >= 0 and m + n >= 1");

    std::map<std::pair<int, int>, double> acc;
    const double a = p.alpha, b = p.beta, v = p.v;
    if (n >= 1) {
        acc[{m, n - 1}] += static_cast<double>(n) * b * v;
        acc[{m, n}] -= static_cast<double>(n) * b;
    }
    for (int j = 0; j < m; ++j) acc[{j, n + 1}] += binom(m, j);
    for (int j = 0; j <= m; ++j)
        for (int i = 0; i < n; ++i)
            acc[{j, i + 1}] += binom(m, j) * binom(n, i) * std::pow(a, n - i);

    std::vector<MomentTerm> out;
    for (const auto& [key, coeff] : acc)
        if (coeff != 0.0) out.push_back({key.first, key.second, coeff});
    return out;
}

namespace {

// State layout for the coupled first/second-moment system.
constexpr int kL = 0;   // E[lambda]
constexpr int kL2 = 1;  // E[lambda^2]
constexpr int kN = 2;   // E[N]
constexpr int kNL = 3;  // E[N lambda]
constexpr int kN2 = 4;  // E[N^2]
constexpr int kDim = 5;

struct LinearSystem {
    std::array<std::array<double, kDim>, kDim> mat{};
    std::array<double, kDim> constant{};
};

int state_index(int n_pow, int lambda_pow) {
    if (n_pow == 0 && lambda_pow == 1) return kL;
    if (n_pow == 0 && lambda_pow == 2) return kL2;
    if (n_pow == 1 && lambda_pow == 0) return kN;
    if (n_pow == 1 && lambda_pow == 1) return kNL;
    if (n_pow == 2 && lambda_pow == 0) return kN2;
    return -1;
}

LinearSystem build_system(const HawkesParams& p) {
    LinearSystem sys;
    const std::array<std::pair<int, int>, kDim> rows = {
        std::pair{0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}};
    for (int r = 0; r < kDim; ++r) {
        for (const auto& term : moment_ode_rhs(rows[r].first, rows[r].second, p)) {
            if (term.n_pow == 0 && term.lambda_pow == 0) {
                sys.constant[r] += term.coeff;
                continue;
            }
            const int c = state_index(term.n_pow, term.lambda_pow);
            if (c < 0)
                throw std::logic_error("moment system: term outside second-order basis");
            sys.mat[r][c] += term.coeff;
        }
    }
    return sys;
}

std::array<double, kDim> rhs(const LinearSystem& sys, const std::array<double, kDim>& y) {
    std::array<double, kDim> d{};
    for (int r = 0; r < kDim; ++r) {
        double s = sys.constant[r];
        for (int c = 0; c < kDim; ++c) s += sys.mat[r][c] * y[c];
        d[r] = s;
    }
    return d;
}

}  // namespace

MomentSet ode_moments(const HawkesParams& p, double t, double step) {
    validate(p);
    require_time(t);
    if (!(step > 0.0)) throw std::invalid_argument("ode_moments: step must be > 0");

    const LinearSystem sys = build_system(p);
    std::array<double, kDim> y{};
    y[kL] = p.v0;
    y[kL2] = p.v0 * p.v0;

    if (t > 0.0) {
        const auto n_steps = static_cast<std::size_t>(std::ceil(t / step));
        const double h = t / static_cast<double>(n_steps);
        for (std::size_t s = 0; s < n_steps; ++s) {
            const auto k1 = rhs(sys, y);
            std::array<double, kDim> tmp{};
            for (int i = 0; i < kDim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
            const auto k2 = rhs(sys, tmp);
            for (int i = 0; i < kDim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
            const auto k3 = rhs(sys, tmp);
            for (int i = 0; i < kDim; ++i) tmp[i] = y[i] + h * k3[i];
            const auto k4 = rhs(sys, tmp);
            for (int i = 0; i < kDim; ++i)
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }

    MomentSet m;
    m.t = t;
    m.provenance = MomentProvenance::OdeOracle;
    m.e_L = y[kL];
    m.e_L2 = y[kL2];
    m.e_N = y[kN];
    m.e_NL = y[kNL];
    m.e_N2 = y[kN2];
    return m;
}

}  // namespace vhawkes
