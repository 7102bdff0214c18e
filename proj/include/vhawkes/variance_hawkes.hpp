#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "vhawkes/hawkes.hpp"

namespace vhawkes {

// Brownian motion evaluated at the jump count. The count is integer-valued,
// so the Brownian path is only ever needed at integer arguments: a cumulative
// sum of i.i.d. standard normals, one increment per arrival.
struct VarianceHawkesPath {
    JumpPath jumps;
    std::vector<double> brownian_increments;  // one per arrival
    std::vector<std::size_t> counts;          // grid-binned N, length res + 1
    std::vector<double> values;               // B(N_{t_k}), length res + 1

    std::size_t res() const { return counts.empty() ? 0 : counts.size() - 1; }
    double dt() const { return jumps.horizon / static_cast<double>(res()); }
    double terminal() const { return values.back(); }

    // Exact (per-arrival) value after the j-th jump, j in [0, total()].
    double value_after_jump(std::size_t j) const;
};

VarianceHawkesPath simulate_variance_hawkes(const HawkesParams& p, double horizon,
                                            std::size_t res, std::uint64_t seed);

// Log-return model: r = a + b * sigma_hat * B(N_t), sampled at
// steps_per_path equally spaced grid times per simulated path.
struct ClusteredGaussianModel {
    double a = 0.0;
    double b = 0.0;
    double sigma_hat = 0.0;
    HawkesParams params{1.0, 1.0, 2.0};
    double horizon = 1.0;
    std::size_t steps_per_path = 250;
};

void validate(const ClusteredGaussianModel& m);

// Pooled path values across as many simulated paths as needed to collect
// n_samples draws.
std::vector<double> simulate_clustered_gaussian(const ClusteredGaussianModel& m,
                                                std::size_t n_samples,
                                                std::uint64_t seed);

enum class SdeVariant {
    ClusteredOu,       // dS = kappa (theta - S) dt + sigma dW + d L(N_t)
    StochasticMeanOu,  // dS = kappa (L(N_t) - S) dt + sigma dW
};

struct ClusteredSdeSpec {
    SdeVariant variant = SdeVariant::ClusteredOu;
    double kappa = 1.0;
    double theta = 0.0;  // ClusteredOu only
    double sigma = 0.0;
    HawkesParams params{1.0, 1.0, 2.0};
    // Law of one L increment per subordinator jump; standard normal recovers
    // the subordinated Brownian motion.
    std::function<double(std::mt19937_64&)> levy_jump;
};

void validate(const ClusteredSdeSpec& spec);

// Euler-Maruyama on a uniform grid of res cells; returns S at the res + 1
// grid points. Jump increments are summed within the cell they land in.
std::vector<double> simulate_clustered_sde(const ClusteredSdeSpec& spec, double horizon,
                                           std::size_t res, std::uint64_t seed, double s0);

}  // namespace vhawkes
