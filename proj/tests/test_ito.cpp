#include <doctest.h>

#include <cmath>
#include <limits>

#include "vhawkes/ito.hpp"
#include "vhawkes/moments.hpp"
#include "vhawkes/stats.hpp"

using namespace vhawkes;

namespace {

const HawkesParams kRef(1.0, 1.0, 2.0);

}  // namespace

TEST_CASE("config validation") {
    ItoExperimentConfig bad;
    bad.res = 1;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad.res = 16;
    bad.n_paths = 0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("zero-jump path: both sides identically zero") {
    ItoExperimentConfig cfg;
    cfg.params = HawkesParams(1e-12, 1.0, 2.0);
    cfg.res = 64;
    cfg.seed = 1;
    const auto cmp = run_ito_experiment(cfg);
    for (std::size_t k = 0; k < cmp.actual.size(); ++k) {
        CHECK(cmp.actual[k] == 0.0);
        CHECK(cmp.conjectured[k] == 0.0);
        CHECK(cmp.pct_error[k] == 0.0);
    }
    const auto s = percentage_error_summary(cmp);
    CHECK(s.fraction_within_20pct == 1.0);
    CHECK(s.max_abs_error == 0.0);
    CHECK(s.terminal_error == 0.0);
    CHECK(s.n_infinite == 0);
}

TEST_CASE("telescoped right-hand side reproduces the actual path") {
    ItoExperimentConfig cfg;
    cfg.params = kRef;
    cfg.res = 1u << 12;
    cfg.seed = 33;
    const auto cmp = run_ito_experiment(cfg);
    for (std::size_t k = 0; k < cmp.actual.size(); ++k)
        CHECK(cmp.telescoped[k] == doctest::Approx(cmp.actual[k]).epsilon(1e-9));
}

TEST_CASE("same seed gives the same comparison") {
    ItoExperimentConfig cfg;
    cfg.params = kRef;
    cfg.res = 256;
    cfg.seed = 5;
    const auto a = run_ito_experiment(cfg);
    const auto b = run_ito_experiment(cfg);
    CHECK(a.actual == b.actual);
    CHECK(a.conjectured == b.conjectured);
}

TEST_CASE("ensemble terminal gap is mean zero") {
    ItoExperimentConfig cfg;
    cfg.params = HawkesParams(50.0, 1.0, 2.0);
    cfg.res = 1024;
    const std::size_t n = 400;
    std::vector<double> gap(n);
    for (std::size_t i = 0; i < n; ++i) {
        cfg.seed = 9000 + i;
        const auto cmp = run_ito_experiment(cfg);
        gap[i] = cmp.actual.back() - cmp.conjectured.back();
    }
    CHECK(std::abs(mean(gap)) < 3.0 * standard_error(gap));
}

TEST_CASE("error summary counts infinities without filtering") {
    ItoComparison cmp;
    cmp.t = {0.0, 1.0, 2.0, 3.0};
    cmp.actual = {0.0, 0.0, 1.0, 4.0};
    cmp.conjectured = {0.0, 1.0, 1.1, 3.0};
    cmp.pct_error = {0.0, std::numeric_limits<double>::infinity(), 10.0, -25.0};
    const auto s = percentage_error_summary(cmp);
    CHECK(s.n_infinite == 1);
    CHECK(s.fraction_within_20pct == doctest::Approx(2.0 / 3.0));
    CHECK(s.max_abs_error == doctest::Approx(25.0));
    CHECK(s.terminal_error == doctest::Approx(-25.0));
}

TEST_CASE("conjectured terminal distribution matches B(N_T)^0.5 scaling") {
    const std::size_t n = 1u << 12;
    const auto res = conjecture_check(kRef, 1.0, n, 77);
    CHECK(res.subordinated.size() == n);
    CHECK(res.scaled_normal.size() == n);
    CHECK(res.ks_distance < 0.05);
}

TEST_CASE("conjecture check degenerate and tiny inputs") {
    const auto degen = conjecture_check(HawkesParams(1e-12, 1.0, 2.0), 1.0, 256, 3);
    CHECK(degen.ks_distance == 0.0);
    const auto tiny = conjecture_check(kRef, 1.0, 2, 4);
    CHECK(tiny.subordinated.size() == 2);
    CHECK_THROWS_AS(conjecture_check(kRef, 1.0, 1, 4), std::invalid_argument);
}
