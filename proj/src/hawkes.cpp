#include "vhawkes/hawkes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "vhawkes/rng.hpp"

namespace vhawkes {

void validate(const HawkesParams& p) {
    if (!(p.v > 0.0)) throw std::invalid_argument("HawkesParams: v must be > 0");
    if (!(p.alpha > 0.0)) throw std::invalid_argument("HawkesParams: alpha must be > 0");
    if (!(p.beta > 0.0)) throw std::invalid_argument("HawkesParams: beta must be > 0");
    if (p.alpha == p.beta)
        throw std::invalid_argument("HawkesParams: alpha == beta is not supported");
    if (p.v0 < p.v) throw std::invalid_argument("HawkesParams: v0 must be >= v");
}

std::size_t JumpPath::count(double t) const {
    return static_cast<std::size_t>(
        std::upper_bound(arrivals.begin(), arrivals.end(), t) - arrivals.begin());
}

namespace {

void check_horizon(double horizon) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
}

}  // namespace

JumpPath simulate_thinning(const HawkesParams& p, double horizon, std::uint64_t seed) {
    validate(p);
    check_horizon(horizon);
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    JumpPath path;
    path.horizon = horizon;
    // Excess intensity above baseline decays monotonically between events,
    // so lambda at the left endpoint dominates the whole interval.
    double excess = p.v0 - p.v;  // lambda(s+) - v
    double s = 0.0;
    while (true) {
        const double bound = p.v + excess;
        const double w = -std::log(unif(rng)) / bound;
        const double t = s + w;
        if (t > horizon) break;
        const double decayed = excess * std::exp(-p.beta * w);
        const double lambda_t = p.v + decayed;
        s = t;
        excess = decayed;
        if (unif(rng) * bound <= lambda_t) {
            path.arrivals.push_back(t);
            excess += p.alpha;
        }
    }
    return path;
}

JumpPath simulate_exact(const HawkesParams& p, double horizon, std::uint64_t seed) {
    validate(p);
    check_horizon(horizon);
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    JumpPath path;
    path.horizon = horizon;
    double excess = p.v0 - p.v;
    double s = 0.0;
    while (true) {
        // Baseline clock.
        const double s2 = -std::log(unif(rng)) / p.v;
        // Excitation clock: survival prob over w is exp(-excess (1 - e^{-beta w}) / beta),
        // which has an atom at infinity of mass exp(-excess / beta).
        double s1 = std::numeric_limits<double>::infinity();
        if (excess > 0.0) {
            const double d = 1.0 + p.beta * std::log(unif(rng)) / excess;
            if (d > 0.0) s1 = -std::log(d) / p.beta;
        }
        const double w = std::min(s1, s2);
        const double t = s + w;
        if (t > horizon) break;
        excess = excess * std::exp(-p.beta * w) + p.alpha;
        s = t;
        path.arrivals.push_back(t);
    }
    return path;
}

double intensity_at(const JumpPath& path, const HawkesParams& p, double t) {
    if (t < 0.0 || t > path.horizon)
        throw std::invalid_argument("intensity_at: t outside [0, horizon]");
    double acc = p.v + (p.v0 - p.v) * std::exp(-p.beta * t);
    for (double a : path.arrivals) {
        if (a >= t) break;  // strict sum: left limit at jump times
        acc += p.alpha * std::exp(-p.beta * (t - a));
    }
    return acc;
}

std::vector<double> intensity_on_grid(const JumpPath& path, const HawkesParams& p,
                                      std::size_t res) {
    if (res == 0) throw std::invalid_argument("intensity_on_grid: res must be >= 1");
    const double dt = path.horizon / static_cast<double>(res);
    std::vector<double> out(res + 1);
    double excess = p.v0 - p.v;
    double prev = 0.0;
    std::size_t next = 0;
    out[0] = p.v + excess;
    for (std::size_t k = 1; k <= res; ++k) {
        const double t = dt * static_cast<double>(k);
        // Decay up to each arrival strictly before t, then add its jump.
        while (next < path.arrivals.size() && path.arrivals[next] < t) {
            excess *= std::exp(-p.beta * (path.arrivals[next] - prev));
            excess += p.alpha;
            prev = path.arrivals[next];
            ++next;
        }
        out[k] = p.v + excess * std::exp(-p.beta * (t - prev));
    }
    return out;
}

std::vector<std::size_t> discretize(const JumpPath& path, std::size_t res) {
    if (res == 0) throw std::invalid_argument("discretize: res must be >= 1");
    std::vector<std::size_t> counts(res + 1, 0);
    const double scale = static_cast<double>(res) / path.horizon;
    for (double a : path.arrivals) {
        auto cell = static_cast<std::size_t>(std::ceil(a * scale));
        if (cell < 1) cell = 1;
        if (cell > res) cell = res;
        ++counts[cell];
    }
    for (std::size_t k = 1; k <= res; ++k) counts[k] += counts[k - 1];
    return counts;
}

void write_jump_path_csv(std::ostream& os, const JumpPath& path) {
    os << "arrival_time\n";
    char buf[64];
    for (double a : path.arrivals) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", a);
        os << buf;
    }
}

JumpPath read_jump_path_csv(std::istream& is, double horizon) {
    check_horizon(horizon);
    JumpPath path;
    path.horizon = horizon;
    std::string line;
    if (!std::getline(is, line) || line.find("arrival_time") == std::string::npos)
        throw std::runtime_error("jump path CSV: missing arrival_time header");
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        std::size_t pos = 0;
        const double a = std::stod(line, &pos);
        if (!(a > 0.0) || a > horizon)
            throw std::runtime_error("jump path CSV: arrival out of (0, T] at row " +
                                     std::to_string(row));
        if (!path.arrivals.empty() && a <= path.arrivals.back())
            throw std::runtime_error("jump path CSV: arrivals not strictly increasing at row " +
                                     std::to_string(row));
        path.arrivals.push_back(a);
    }
    return path;
}

}  // namespace vhawkes
