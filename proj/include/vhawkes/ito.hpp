#pragma once

#include <cstdint>
#include <vector>

#include "vhawkes/hawkes.hpp"
#include "vhawkes/stats.hpp"

namespace vhawkes {

struct ItoExperimentConfig {
    HawkesParams params{5000.0, 600.0, 800.0};
    double horizon = 1.0;
    std::size_t res = 1u << 20;
    std::size_t n_paths = 1;
    std::uint64_t seed = 0;
};

void validate(const ItoExperimentConfig& cfg);

// Both sides of d B^2(N_t) = 2 B(N_t) dB(N_t) + dN_t on one shared source of
// randomness, discretized on a uniform grid.
//   actual:      B^2(N_{t_k})
//   conjectured: sum of 2 B(N_{t_{j-1}}) dB_j + dN_j, left-point evaluation
//   telescoped:  sum of 2 B(N_{t_{j-1}}) dB_j + (dB_j)^2, which telescopes to
//                the actual path exactly; kept for diagnosing the dN gap
// pct_error: 100 (conjectured - actual) / actual; 0/0 is 0; x/0 with x != 0
// is an infinity sentinel.
struct ItoComparison {
    std::vector<double> t;
    std::vector<double> actual;
    std::vector<double> conjectured;
    std::vector<double> telescoped;
    std::vector<double> pct_error;
    Histogram actual_hist;
    Histogram conjectured_hist;
};

ItoComparison run_ito_experiment(const ItoExperimentConfig& cfg);

struct ErrorSummary {
    double fraction_within_20pct = 0.0;  // over grid points with finite error
    double max_abs_error = 0.0;          // over finite errors
    double terminal_error = 0.0;
    std::size_t n_infinite = 0;          // sentinel count, reported not filtered
};

ErrorSummary percentage_error_summary(const ItoComparison& cmp);

// Terminal-distribution check of B(N_T) against sqrt(N_T) Z with independent
// count draws and independent standard normals.
struct ConjectureResult {
    double ks_distance = 0.0;
    std::vector<double> subordinated;   // draws of B(N_T)
    std::vector<double> scaled_normal;  // draws of sqrt(N_T) Z
    Histogram subordinated_hist;
    Histogram scaled_normal_hist;
};

ConjectureResult conjecture_check(const HawkesParams& p, double horizon,
                                  std::size_t n_samples, std::uint64_t seed);

}  // namespace vhawkes
