#include "vhawkes/ito.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "vhawkes/parallel.hpp"
#include "vhawkes/rng.hpp"
#include "vhawkes/variance_hawkes.hpp"

namespace vhawkes {

void validate(const ItoExperimentConfig& cfg) {
    validate(cfg.params);
    if (!(cfg.horizon > 0.0))
        throw std::invalid_argument("ItoExperimentConfig: horizon must be > 0");
    if (cfg.res < 2) throw std::invalid_argument("ItoExperimentConfig: res must be >= 2");
    if (cfg.n_paths < 1)
        throw std::invalid_argument("ItoExperimentConfig: n_paths must be >= 1");
}

ItoComparison run_ito_experiment(const ItoExperimentConfig& cfg) {
    validate(cfg);
    const auto path =
        simulate_variance_hawkes(cfg.params, cfg.horizon, cfg.res, cfg.seed);
    const std::size_t res = cfg.res;
    const double dt = cfg.horizon / static_cast<double>(res);

    ItoComparison cmp;
    cmp.t.resize(res + 1);
    cmp.actual.resize(res + 1);
    cmp.conjectured.resize(res + 1);
    cmp.telescoped.resize(res + 1);
    cmp.pct_error.resize(res + 1);

    cmp.t[0] = 0.0;
    cmp.actual[0] = cmp.conjectured[0] = cmp.telescoped[0] = 0.0;
    cmp.pct_error[0] = 0.0;
    double conj = 0.0, tele = 0.0;
    for (std::size_t k = 1; k <= res; ++k) {
        const double b_prev = path.values[k - 1];
        const double b_cur = path.values[k];
        const double db = b_cur - b_prev;
        const double dn = static_cast<double>(path.counts[k] - path.counts[k - 1]);
        conj += 2.0 * b_prev * db + dn;
        tele += 2.0 * b_prev * db + db * db;
        const double actual = b_cur * b_cur;
        cmp.t[k] = dt * static_cast<double>(k);
        cmp.actual[k] = actual;
        cmp.conjectured[k] = conj;
        cmp.telescoped[k] = tele;
        if (actual == 0.0) {
            cmp.pct_error[k] =
                conj == 0.0 ? 0.0
                            : std::copysign(std::numeric_limits<double>::infinity(), conj);
        } else {
            cmp.pct_error[k] = 100.0 * (conj - actual) / actual;
        }
    }
    cmp.actual_hist = make_histogram(cmp.actual, 64);
    cmp.conjectured_hist = make_histogram(cmp.conjectured, 64);
    return cmp;
}

ErrorSummary percentage_error_summary(const ItoComparison& cmp) {
    if (cmp.pct_error.empty())
        throw std::invalid_argument("percentage_error_summary: empty comparison");
    ErrorSummary s;
    std::size_t finite = 0, within = 0;
    for (double e : cmp.pct_error) {
        if (!std::isfinite(e)) {
            ++s.n_infinite;
            continue;
        }
        ++finite;
        if (std::abs(e) <= 20.0) ++within;
        s.max_abs_error = std::max(s.max_abs_error, std::abs(e));
    }
    s.fraction_within_20pct =
        finite == 0 ? 1.0 : static_cast<double>(within) / static_cast<double>(finite);
    s.terminal_error = cmp.pct_error.back();
    return s;
}

ConjectureResult conjecture_check(const HawkesParams& p, double horizon,
                                  std::size_t n_samples, std::uint64_t seed) {
    validate(p);
    if (!(horizon > 0.0)) throw std::invalid_argument("conjecture_check: horizon must be > 0");
    if (n_samples < 2) throw std::invalid_argument("conjecture_check: n_samples must be >= 2");

    ConjectureResult res;
    res.subordinated.resize(n_samples);
    res.scaled_normal.resize(n_samples);

    parallel_for(n_samples, [&](std::size_t i) {
        // Subordinated draw: count path plus one normal per jump.
        {
            const auto jumps = simulate_exact(p, horizon, derive_seed(seed, 2 * i));
            auto rng = make_stream(seed, 2 * i + 1);
            std::normal_distribution<double> normal(0.0, 1.0);
            double b = 0.0;
            for (std::size_t j = 0; j < jumps.total(); ++j) b += normal(rng);
            res.subordinated[i] = b;
        }
        // Independent comparison draw: fresh count, single scaled normal.
        {
            const auto jumps =
                simulate_exact(p, horizon, derive_seed(seed, 2 * n_samples + 2 * i));
            auto rng = make_stream(seed, 2 * n_samples + 2 * i + 1);
            std::normal_distribution<double> normal(0.0, 1.0);
            res.scaled_normal[i] =
                std::sqrt(static_cast<double>(jumps.total())) * normal(rng);
        }
    });

    res.ks_distance = ks_distance(res.subordinated, res.scaled_normal);
    res.subordinated_hist = make_histogram(res.subordinated, 64);
    res.scaled_normal_hist = make_histogram(res.scaled_normal, 64);
    return res;
}

}  // namespace vhawkes
