#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vhawkes/variance_hawkes.hpp"

namespace vhawkes {

struct PriceSeries {
    std::vector<std::string> dates;  // ISO YYYY-MM-DD, strictly increasing
    std::vector<double> closes;      // strictly positive
};

struct IngestOptions {
    std::string date_column = "date";
    std::string close_column = "close";
    // Rows with an empty close are rejected by default; with this flag they
    // carry the previous close forward instead.
    bool forward_fill = false;
};

// Throws std::runtime_error naming the offending row on nonpositive or
// unparseable closes, bad dates, duplicates, or out-of-order dates.
PriceSeries ingest_prices(std::istream& is, const IngestOptions& opts = {});
void write_prices(std::ostream& os, const PriceSeries& series);

struct ReturnsSeries {
    std::vector<double> returns;  // ln(S_{t+1} / S_t)
    double sigma_hat = 0.0;       // sample standard deviation, n-1 denominator
    std::size_t n = 0;
};

ReturnsSeries log_returns(const PriceSeries& prices);

struct VolumeSeries {
    std::vector<long> minutes;            // ordered per-minute timestamps
    std::vector<double> volumes;          // nonnegative
    std::vector<std::size_t> day_boundaries;  // index one past the last minute of each day
};

struct FitGridPoint {
    double v, v0, alpha, beta, a;
};

struct FitResult {
    ClusteredGaussianModel best;
    double score = 0.0;  // mean two-sample KS distance at the best point
    struct Row {
        FitGridPoint point;
        double score;
    };
    std::vector<Row> table;  // one row per grid point, grid order
};

// Grid search minimizing the mean KS distance between the target returns and
// n_sim simulated pooled model samples per grid point. Ties break toward the
// smallest alpha, then smallest v. Each grid point owns an RNG stream derived
// from (seed, point index), so the result is deterministic and order-free.
FitResult fit_clustered_gaussian(const ReturnsSeries& target,
                                 const std::vector<FitGridPoint>& grid, double b,
                                 double horizon, std::size_t n_sim, std::uint64_t seed);

struct QqTable {
    std::vector<double> levels;
    std::vector<double> empirical;
    std::vector<double> exponential;  // rate fitted as 1 / sample mean
};

// Paired empirical vs fitted-exponential quantiles at n_quantiles evenly
// spaced probability levels i / (n_quantiles + 1). Throws on all-zero data.
QqTable qq_exponential(std::span<const double> data, std::size_t n_quantiles);
void write_qq_csv(std::ostream& os, const QqTable& table);

// Mean volume per minute-of-day across days; entry m averages over the days
// that have at least m + 1 minutes.
std::vector<double> daily_volume_profile(const VolumeSeries& volumes);

}  // namespace vhawkes
