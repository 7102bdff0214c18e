#include "vhawkes/variance_hawkes.hpp"

#include <cmath>
#include <stdexcept>

#include "vhawkes/rng.hpp"

namespace vhawkes {

namespace {

// Stream layout shared by the subordinated simulators so that the pure-jump
// SDE special case reproduces simulate_variance_hawkes on the same seed.
constexpr std::uint64_t kJumpStream = 0;
constexpr std::uint64_t kJumpNoiseStream = 1;
constexpr std::uint64_t kDiffusionStream = 2;

}  // namespace

double VarianceHawkesPath::value_after_jump(std::size_t j) const {
    if (j > brownian_increments.size())
        throw std::invalid_argument("value_after_jump: index past last jump");
    double s = 0.0;
    for (std::size_t i = 0; i < j; ++i) s += brownian_increments[i];
    return s;
}

VarianceHawkesPath simulate_variance_hawkes(const HawkesParams& p, double horizon,
                                            std::size_t res, std::uint64_t seed) {
    if (res == 0) throw std::invalid_argument("simulate_variance_hawkes: res must be >= 1");
    VarianceHawkesPath path;
    path.jumps = simulate_exact(p, horizon, derive_seed(seed, kJumpStream));
    auto rng = make_stream(seed, kJumpNoiseStream);
    std::normal_distribution<double> normal(0.0, 1.0);
    path.brownian_increments.resize(path.jumps.total());
    for (auto& z : path.brownian_increments) z = normal(rng);

    path.counts = discretize(path.jumps, res);
    path.values.resize(res + 1);
    double b = 0.0;
    std::size_t done = 0;
    for (std::size_t k = 0; k <= res; ++k) {
        while (done < path.counts[k]) b += path.brownian_increments[done++];
        path.values[k] = b;
    }
    return path;
}

void validate(const ClusteredGaussianModel& m) {
    validate(m.params);
    if (!(m.b > 0.0)) throw std::invalid_argument("ClusteredGaussianModel: b must be > 0");
    if (!(m.sigma_hat > 0.0))
        throw std::invalid_argument("ClusteredGaussianModel: sigma_hat must be > 0");
    if (!(m.horizon > 0.0))
        throw std::invalid_argument("ClusteredGaussianModel: horizon must be > 0");
    if (m.steps_per_path == 0)
        throw std::invalid_argument("ClusteredGaussianModel: steps_per_path must be >= 1");
}

std::vector<double> simulate_clustered_gaussian(const ClusteredGaussianModel& m,
                                                std::size_t n_samples,
                                                std::uint64_t seed) {
    validate(m);
    if (n_samples == 0)
        throw std::invalid_argument("simulate_clustered_gaussian: n_samples must be >= 1");
    std::vector<double> out;
    out.reserve(n_samples);
    std::uint64_t path_idx = 0;
    while (out.size() < n_samples) {
        const auto path = simulate_variance_hawkes(m.params, m.horizon, m.steps_per_path,
                                                   derive_seed(seed, path_idx++));
        for (std::size_t k = 1; k <= m.steps_per_path && out.size() < n_samples; ++k)
            out.push_back(m.a + m.b * m.sigma_hat * path.values[k]);
    }
    return out;
}

void validate(const ClusteredSdeSpec& spec) {
    validate(spec.params);
    if (!(spec.kappa >= 0.0))
        throw std::invalid_argument("ClusteredSdeSpec: kappa must be >= 0");
    if (!(spec.sigma >= 0.0))
        throw std::invalid_argument("ClusteredSdeSpec: sigma must be >= 0");
}

std::vector<double> simulate_clustered_sde(const ClusteredSdeSpec& spec, double horizon,
                                           std::size_t res, std::uint64_t seed, double s0) {
    validate(spec);
    if (res == 0) throw std::invalid_argument("simulate_clustered_sde: res must be >= 1");

    const JumpPath jumps = simulate_exact(spec.params, horizon, derive_seed(seed, kJumpStream));
    auto jump_rng = make_stream(seed, kJumpNoiseStream);
    auto diff_rng = make_stream(seed, kDiffusionStream);
    std::normal_distribution<double> normal(0.0, 1.0);

    auto draw_jump = [&](std::mt19937_64& rng) {
        return spec.levy_jump ? spec.levy_jump(rng) : normal(rng);
    };

    const auto counts = discretize(jumps, res);
    const double dt = horizon / static_cast<double>(res);
    const double sqrt_dt = std::sqrt(dt);

    std::vector<double> path(res + 1);
    path[0] = s0;
    double s = s0;
    double levy = 0.0;  // L(N_t) running value, for the stochastic-mean variant
    for (std::size_t k = 1; k <= res; ++k) {
        double drift = 0.0;
        switch (spec.variant) {
            case SdeVariant::ClusteredOu:
                drift = spec.kappa * (spec.theta - s);
                break;
            case SdeVariant::StochasticMeanOu:
                drift = spec.kappa * (levy - s);
                break;
        }
        double next = s + drift * dt;
        if (spec.sigma > 0.0) next += spec.sigma * sqrt_dt * normal(diff_rng);

        double d_levy = 0.0;
        for (std::size_t j = counts[k - 1]; j < counts[k]; ++j)
            d_levy += draw_jump(jump_rng);
        levy += d_levy;
        if (spec.variant == SdeVariant::ClusteredOu) next += d_levy;

        s = next;
        path[k] = s;
    }
    return path;
}

}  // namespace vhawkes
