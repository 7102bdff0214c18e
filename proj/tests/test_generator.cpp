#include <doctest.h>

#include <cmath>
#include <random>

#include <json.hpp>

#include "vhawkes/generator.hpp"
#include "vhawkes/rng.hpp"

using namespace vhawkes;

namespace {

const HawkesParams kRef(1.0, 1.0, 2.0);

}  // namespace

TEST_CASE("generator annihilates constants") {
    GeneratorInput in;  // all partials zero
    in.params = kRef;
    CHECK(apply_generator(in) == 0.0);
}

TEST_CASE("generator on coordinate functions") {
    // f(l, n, b) = n
    GeneratorInput fn;
    fn.params = kRef;
    fn.f_n = 1.0;
    CHECK(apply_generator(fn) == doctest::Approx(kRef.v));

    // f(l, n, b) = b^2 at v = 3: half * 2 * v = v.
    GeneratorInput fb2;
    fb2.params = HawkesParams(3.0, 1.0, 2.0);
    fb2.f_bb = 2.0;
    CHECK(apply_generator(fb2) == doctest::Approx(3.0));

    // f(l, n, b) = l
    GeneratorInput fl;
    fl.params = kRef;
    fl.f_l = 1.0;
    CHECK(apply_generator(fl) == doctest::Approx(kRef.alpha * kRef.v));

    GeneratorInput bad;
    bad.params = kRef;
    bad.f_ll = std::nan("");
    CHECK_THROWS_AS(apply_generator(bad), std::invalid_argument);
}

TEST_CASE("generator is linear in the partials") {
    auto rng = make_rng(19);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        GeneratorInput x, y, z;
        x.params = y.params = z.params = kRef;
        const double c1 = unif(rng), c2 = unif(rng);
        auto fill = [&](GeneratorInput& g) {
            g.f_l = unif(rng);
            g.f_n = unif(rng);
            g.f_b = unif(rng);
            g.f_ll = unif(rng);
            g.f_ln = unif(rng);
            g.f_lb = unif(rng);
            g.f_nb = unif(rng);
            g.f_nn = unif(rng);
            g.f_bb = unif(rng);
        };
        fill(x);
        fill(y);
        z.f_l = c1 * x.f_l + c2 * y.f_l;
        z.f_n = c1 * x.f_n + c2 * y.f_n;
        z.f_b = c1 * x.f_b + c2 * y.f_b;
        z.f_ll = c1 * x.f_ll + c2 * y.f_ll;
        z.f_ln = c1 * x.f_ln + c2 * y.f_ln;
        z.f_lb = c1 * x.f_lb + c2 * y.f_lb;
        z.f_nb = c1 * x.f_nb + c2 * y.f_nb;
        z.f_nn = c1 * x.f_nn + c2 * y.f_nn;
        z.f_bb = c1 * x.f_bb + c2 * y.f_bb;
        CHECK(apply_generator(z) ==
              doctest::Approx(c1 * apply_generator(x) + c2 * apply_generator(y))
                  .epsilon(1e-10));
    }
}

TEST_CASE("published generator coefficients") {
    const auto c = GeneratorCoefficients::from(kRef);
    CHECK(c.c_l == doctest::Approx(1.0));
    CHECK(c.c_n == doctest::Approx(1.0));
    // -2 v^2 (a - b) + v (a^2 + 2 b v) - 2 v^2, halved: (2 + 5 - 2) / 2.
    CHECK(c.c_ll == doctest::Approx(2.5));
    CHECK(c.c_ln == doctest::Approx(-1.0));
    CHECK(c.c_bb == doctest::Approx(0.5));
}

TEST_CASE("limit estimates from the oracle") {
    const auto reports = verify_limits(kRef);
    REQUIRE(reports.size() == 5);

    // The first two published limits hold.
    CHECK(reports[0].printed == doctest::Approx(1.0));  // alpha v
    CHECK(std::abs(reports[0].estimated - reports[0].printed) < 0.01);
    CHECK(reports[1].printed == doctest::Approx(1.0));  // v
    CHECK(std::abs(reports[1].estimated - reports[1].printed) < 0.01);

    // The oracle's small-t slopes for the cross and second count moments are
    // v^2 + alpha v and v; the published values are 0. The reports must carry
    // both sides rather than reconcile them.
    CHECK(reports[2].printed == 0.0);
    CHECK(reports[2].estimated ==
          doctest::Approx(kRef.v * kRef.v + kRef.alpha * kRef.v).epsilon(1e-3));
    CHECK(reports[3].printed == 0.0);
    CHECK(reports[3].estimated == doctest::Approx(kRef.v).epsilon(1e-3));

    // Fifth limit: stable, finite report; no adjudication.
    CHECK(reports[4].printed == doctest::Approx(5.0));
    CHECK(std::isfinite(reports[4].estimated));
    REQUIRE(reports[4].raw.size() >= 2);
    const auto& raw = reports[4].raw;
    // Raw ratios settle as t decreases.
    CHECK(std::abs(raw[raw.size() - 1] - raw[raw.size() - 2]) <
          std::abs(raw[1] - raw[0]) + 1e-9);

    CHECK_THROWS_AS(verify_limits(kRef, {}), std::invalid_argument);
    CHECK_THROWS_AS(verify_limits(kRef, {0.1, -0.1}), std::invalid_argument);
}

TEST_CASE("limit report serializes to JSON") {
    const auto reports = verify_limits(kRef, {1e-2, 1e-3});
    const auto parsed = nlohmann::json::parse(limits_report_json(reports));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 5);
    for (const auto& e : parsed) {
        CHECK(e.contains("printed"));
        CHECK(e.contains("estimated"));
        CHECK(e.contains("abs_err"));
        CHECK(e.contains("t_sequence"));
    }
    // Zero printed value serializes rel_err as null.
    CHECK(parsed[2]["rel_err"].is_null());
}
