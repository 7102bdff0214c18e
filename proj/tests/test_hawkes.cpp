#include <doctest.h>

#include <cmath>
#include <sstream>

#include "vhawkes/hawkes.hpp"
#include "vhawkes/moments.hpp"
#include "vhawkes/stats.hpp"

using namespace vhawkes;

namespace {

const HawkesParams kRef(1.0, 1.0, 2.0);

// E[N_1] at (v=1, alpha=1, beta=2): 2 - (1 - e^{-1}) = 1 + e^{-1}.
const double kMeanN1 = 1.0 + std::exp(-1.0);

std::vector<double> terminal_counts(const HawkesParams& p, double horizon, std::size_t n,
                                    std::uint64_t seed, bool thinning) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto path = thinning ? simulate_thinning(p, horizon, seed + i)
                                   : simulate_exact(p, horizon, seed + i);
        out[i] = static_cast<double>(path.count(horizon));
    }
    return out;
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate(HawkesParams(0.0, 1.0, 2.0)), std::invalid_argument);
    CHECK_THROWS_AS(validate(HawkesParams(1.0, -1.0, 2.0)), std::invalid_argument);
    CHECK_THROWS_AS(validate(HawkesParams(1.0, 1.0, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(validate(HawkesParams(1.0, 2.0, 2.0)), std::invalid_argument);
    CHECK_THROWS_AS(validate(HawkesParams(1.0, 0.5, 1.0, 2.0)), std::invalid_argument);
    CHECK_NOTHROW(validate(HawkesParams(1.0, 3.0, 2.0)));  // supercritical, allowed
    CHECK_FALSE(HawkesParams(1.0, 3.0, 2.0).stable());
    CHECK(kRef.stable());
    CHECK_THROWS_AS(simulate_thinning(kRef, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_exact(kRef, -1.0, 1), std::invalid_argument);
}

TEST_CASE("paths are well formed") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (bool thinning : {true, false}) {
            const auto path = thinning ? simulate_thinning(kRef, 2.0, seed)
                                       : simulate_exact(kRef, 2.0, seed);
            CHECK(path.count(0.0) == 0);
            for (std::size_t i = 0; i < path.arrivals.size(); ++i) {
                CHECK(path.arrivals[i] > 0.0);
                CHECK(path.arrivals[i] <= 2.0);
                if (i > 0) CHECK(path.arrivals[i] > path.arrivals[i - 1]);
            }
            // Intensity floor on a grid.
            for (double lam : intensity_on_grid(path, kRef, 64)) CHECK(lam >= kRef.v);
        }
    }
}

TEST_CASE("same seed reproduces the same path") {
    const auto a = simulate_thinning(kRef, 1.0, 99);
    const auto b = simulate_thinning(kRef, 1.0, 99);
    CHECK(a.arrivals == b.arrivals);
    const auto c = simulate_exact(kRef, 1.0, 99);
    const auto d = simulate_exact(kRef, 1.0, 99);
    CHECK(c.arrivals == d.arrivals);
}

TEST_CASE("thinning mean matches the closed form at t in {0.25, 0.5, 1}") {
    const std::size_t n = 20000;
    for (double t : {0.25, 0.5, 1.0}) {
        const auto counts = terminal_counts(kRef, t, n, 1000, true);
        const double expected = mean_N(kRef, t);
        CHECK(std::abs(mean(counts) - expected) < 3.0 * standard_error(counts));
    }
}

TEST_CASE("exact sampler mean matches the closed form at t = 1") {
    const auto counts = terminal_counts(kRef, 1.0, 20000, 2000, false);
    CHECK(std::abs(mean(counts) - kMeanN1) < 3.0 * standard_error(counts));
}

TEST_CASE("initial-intensity transient: mean count matches the ODE oracle") {
    const HawkesParams p(400.0, 401.0, 700.0, 800.0);
    const std::size_t n = 3000;
    const auto counts = terminal_counts(p, 1.0, n, 7000, false);
    const double expected = ode_moments(p, 1.0, 1e-4).e_N;
    CHECK(std::abs(mean(counts) - expected) < 3.0 * standard_error(counts));
}

TEST_CASE("thinning and exact samplers draw from the same law") {
    const std::size_t n = 4000;
    const auto a = terminal_counts(kRef, 1.0, n, 31, true);
    const auto b = terminal_counts(kRef, 1.0, n, 7100031, false);
    CHECK(ks_distance(a, b) < ks_critical_value(0.01, n, n));
}

TEST_CASE("vanishing excitation degenerates to Poisson") {
    const HawkesParams p(5.0, 1e-9, 2.0);
    const std::size_t n = 20000;
    const auto counts = terminal_counts(p, 2.0, n, 5, false);
    const double target = 10.0;  // v T
    CHECK(std::abs(mean(counts) - target) < 3.0 * standard_error(counts));
    // Poisson variance equals the mean; SE of the sample variance via the
    // fourth central moment.
    const double var = sample_variance(counts);
    const double m = mean(counts);
    double m4 = 0.0;
    for (double c : counts) m4 += std::pow(c - m, 4);
    m4 /= static_cast<double>(n);
    const double se_var = std::sqrt((m4 - var * var) / static_cast<double>(n));
    CHECK(std::abs(var - target) < 3.0 * se_var);
}

TEST_CASE("two or more events in a tiny window are o(delta)") {
    const double delta = 0.001;
    const std::size_t n = 1000000;
    std::size_t multi = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (simulate_exact(kRef, delta, 40 + i).total() >= 2) ++multi;
    const double freq = static_cast<double>(multi) / static_cast<double>(n);
    CHECK(freq < 10.0 * (kRef.v * delta) * (kRef.v * delta));
}

TEST_CASE("intensity evaluation") {
    JumpPath empty;
    empty.horizon = 2.0;
    CHECK(intensity_at(empty, kRef, 0.7) == doctest::Approx(1.0));

    JumpPath one;
    one.horizon = 2.0;
    one.arrivals = {0.5};
    // Left limit at the jump: the strict sum excludes T_r = t.
    CHECK(intensity_at(one, kRef, 0.5) == doctest::Approx(1.0));
    CHECK(intensity_at(one, kRef, 1.0) == doctest::Approx(1.0 + std::exp(-1.0)));
    CHECK_THROWS_AS(intensity_at(one, kRef, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(intensity_at(one, kRef, -0.1), std::invalid_argument);

    // Grid evaluation agrees with the direct sum.
    const auto path = simulate_exact(kRef, 1.0, 8);
    const auto grid = intensity_on_grid(path, kRef, 16);
    for (std::size_t k = 0; k <= 16; ++k) {
        const double t = static_cast<double>(k) / 16.0;
        CHECK(grid[k] == doctest::Approx(intensity_at(path, kRef, t)).epsilon(1e-10));
    }

    // v0 transient decays from v0 at t = 0.
    const HawkesParams pv0(1.0, 3.0, 1.0, 2.0);
    CHECK(intensity_at(empty, pv0, 0.0) == doctest::Approx(3.0));
    CHECK(intensity_at(empty, pv0, 1.0) == doctest::Approx(1.0 + 2.0 * std::exp(-2.0)));
}

TEST_CASE("discretize bins arrivals at cell right endpoints") {
    JumpPath empty;
    empty.horizon = 1.0;
    CHECK(discretize(empty, 4) == std::vector<std::size_t>{0, 0, 0, 0, 0});

    JumpPath two;
    two.horizon = 1.0;
    two.arrivals = {0.3, 0.31};
    CHECK(discretize(two, 2) == std::vector<std::size_t>{0, 2, 2});

    // An arrival exactly on a boundary belongs to the cell it closes.
    JumpPath edge;
    edge.horizon = 1.0;
    edge.arrivals = {0.5};
    CHECK(discretize(edge, 2) == std::vector<std::size_t>{0, 1, 1});

    CHECK_THROWS_AS(discretize(two, 0), std::invalid_argument);

    // Conservation at high resolution.
    const auto path = simulate_exact(kRef, 1.0, 12345);
    const auto counts = discretize(path, 1u << 20);
    CHECK(counts.back() == path.total());
    for (std::size_t k = 1; k < counts.size(); ++k) CHECK(counts[k] >= counts[k - 1]);
}

TEST_CASE("jump path CSV round trip") {
    const auto path = simulate_exact(kRef, 1.0, 77);
    std::stringstream ss;
    write_jump_path_csv(ss, path);
    const auto back = read_jump_path_csv(ss, 1.0);
    REQUIRE(back.arrivals.size() == path.arrivals.size());
    for (std::size_t i = 0; i < path.arrivals.size(); ++i)
        CHECK(back.arrivals[i] == path.arrivals[i]);

    std::stringstream bad("not_a_header\n0.5\n");
    CHECK_THROWS(read_jump_path_csv(bad, 1.0));
}
