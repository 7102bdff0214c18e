#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace vhawkes {

// Exponential-kernel self-exciting process parameters.
// Intensity: lambda(t) = v + (v0 - v) e^{-beta t} + alpha * sum_{T_r < t} e^{-beta (t - T_r)}.
struct HawkesParams {
    double v;      // baseline intensity, > 0
    double v0;     // initial intensity, >= v
    double alpha;  // excitation jump size, > 0
    double beta;   // decay rate, > 0

    HawkesParams(double v_, double alpha_, double beta_)
        : v(v_), v0(v_), alpha(alpha_), beta(beta_) {}
    HawkesParams(double v_, double v0_, double alpha_, double beta_)
        : v(v_), v0(v0_), alpha(alpha_), beta(beta_) {}

    // alpha < beta keeps the feedback loop subcritical. Supercritical
    // parameter sets are allowed, just flagged.
    bool stable() const { return alpha < beta; }
};

// Throws std::invalid_argument on v <= 0, alpha <= 0, beta <= 0,
// alpha == beta, or v0 < v.
void validate(const HawkesParams& p);

// Ordered arrival times of the counting process on (0, T].
struct JumpPath {
    double horizon = 0.0;
    std::vector<double> arrivals;

    // N_t: number of arrivals in (0, t] (right-continuous).
    std::size_t count(double t) const;
    std::size_t total() const { return arrivals.size(); }
};

// Ogata thinning. Deterministic given seed.
JumpPath simulate_thinning(const HawkesParams& p, double horizon, std::uint64_t seed);

// Exact inter-arrival sampler using the Markov property of (N_t, lambda_t):
// the next event is the minimum of an exponential baseline clock and an
// inverse-transform draw from the decaying excitation mass. Same law as
// thinning, independent algorithm.
JumpPath simulate_exact(const HawkesParams& p, double horizon, std::uint64_t seed);

// lambda(t) with the strict sum over T_r < t (left limit at jump times).
double intensity_at(const JumpPath& path, const HawkesParams& p, double t);

// lambda evaluated at every grid point k * T / res, k = 0..res, using the
// exponential-decay recursion (left limits at cell boundaries that carry jumps).
std::vector<double> intensity_on_grid(const JumpPath& path, const HawkesParams& p,
                                      std::size_t res);

// Bin arrivals onto a uniform grid of `res` cells: entry k is the number of
// arrivals in (0, k*dt]. An arrival inside a cell is counted at the cell's
// right endpoint. Length res + 1, nondecreasing, last entry = total().
std::vector<std::size_t> discretize(const JumpPath& path, std::size_t res);

// One arrival time per line, header `arrival_time`, full decimal precision.
void write_jump_path_csv(std::ostream& os, const JumpPath& path);
JumpPath read_jump_path_csv(std::istream& is, double horizon);

}  // namespace vhawkes
