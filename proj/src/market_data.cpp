#include "vhawkes/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "vhawkes/rng.hpp"
#include "vhawkes/stats.hpp"

namespace vhawkes {

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // Trim surrounding whitespace and CR.
        auto b = cell.find_first_not_of(" \t\r");
        auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool valid_iso_date(const std::string& d) {
    if (d.size() != 10 || d[4] != '-' || d[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(d[i]))) return false;
    const int month = std::stoi(d.substr(5, 2));
    const int day = std::stoi(d.substr(8, 2));
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

[[noreturn]] void reject(std::size_t row, const std::string& what) {
    throw std::runtime_error("ingest_prices: row " + std::to_string(row) + ": " + what);
}

}  // namespace

PriceSeries ingest_prices(std::istream& is, const IngestOptions& opts) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("ingest_prices: empty input");
    const auto header = split_csv_row(line);
    std::size_t date_idx = header.size(), close_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == opts.date_column) date_idx = i;
        if (header[i] == opts.close_column) close_idx = i;
    }
    if (date_idx == header.size())
        throw std::runtime_error("ingest_prices: missing column '" + opts.date_column + "'");
    if (close_idx == header.size())
        throw std::runtime_error("ingest_prices: missing column '" + opts.close_column + "'");

    PriceSeries out;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv_row(line);
        if (cells.size() <= std::max(date_idx, close_idx)) reject(row, "too few columns");

        const std::string& date = cells[date_idx];
        if (!valid_iso_date(date)) reject(row, "unparseable date '" + date + "'");
        if (!out.dates.empty()) {
            if (date == out.dates.back()) reject(row, "duplicate date " + date);
            if (date < out.dates.back()) reject(row, "dates not increasing at " + date);
        }

        double close;
        const std::string& cell = cells[close_idx];
        if (cell.empty()) {
            if (!opts.forward_fill || out.closes.empty())
                reject(row, "missing close value");
            close = out.closes.back();
        } else {
            try {
                std::size_t pos = 0;
                close = std::stod(cell, &pos);
                if (pos != cell.size()) reject(row, "unparseable close '" + cell + "'");
            } catch (const std::invalid_argument&) {
                reject(row, "unparseable close '" + cell + "'");
            }
            if (!(close > 0.0)) reject(row, "nonpositive close " + cell);
        }
        out.dates.push_back(date);
        out.closes.push_back(close);
    }
    return out;
}

void write_prices(std::ostream& os, const PriceSeries& series) {
    os << "date,close\n";
    char buf[64];
    for (std::size_t i = 0; i < series.dates.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", series.closes[i]);
        os << series.dates[i] << ',' << buf << '\n';
    }
}

ReturnsSeries log_returns(const PriceSeries& prices) {
    if (prices.closes.size() < 2)
        throw std::invalid_argument("log_returns: need at least 2 prices");
    ReturnsSeries out;
    out.returns.reserve(prices.closes.size() - 1);
    for (std::size_t i = 0; i + 1 < prices.closes.size(); ++i)
        out.returns.push_back(std::log(prices.closes[i + 1] / prices.closes[i]));
    out.n = out.returns.size();
    out.sigma_hat = out.n >= 2 ? sample_stddev(out.returns) : 0.0;
    return out;
}

FitResult fit_clustered_gaussian(const ReturnsSeries& target,
                                 const std::vector<FitGridPoint>& grid, double b,
                                 double horizon, std::size_t n_sim, std::uint64_t seed) {
    if (grid.empty()) throw std::invalid_argument("fit_clustered_gaussian: empty grid");
    if (n_sim < 1) throw std::invalid_argument("fit_clustered_gaussian: n_sim must be >= 1");
    if (!(target.sigma_hat > 0.0))
        throw std::invalid_argument("fit_clustered_gaussian: degenerate target (sigma_hat = 0)");

    FitResult result;
    result.table.reserve(grid.size());
    std::size_t best_idx = 0;
    double best_score = std::numeric_limits<double>::infinity();

    for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto& pt = grid[g];
        ClusteredGaussianModel model;
        model.a = pt.a;
        model.b = b;
        model.sigma_hat = target.sigma_hat;
        model.params = HawkesParams(pt.v, pt.v0, pt.alpha, pt.beta);
        model.horizon = horizon;
        model.steps_per_path = target.n;

        double total = 0.0;
        for (std::size_t s = 0; s < n_sim; ++s) {
            const auto sim = simulate_clustered_gaussian(
                model, target.n, derive_seed(seed, g * n_sim + s));
            total += ks_distance(sim, target.returns);
        }
        const double score = total / static_cast<double>(n_sim);
        result.table.push_back({pt, score});

        const auto& cur_best = grid[best_idx];
        const bool better =
            score < best_score ||
            (score == best_score &&
             (pt.alpha < cur_best.alpha ||
              (pt.alpha == cur_best.alpha && pt.v < cur_best.v)));
        if (result.table.size() == 1 || better) {
            best_idx = g;
            best_score = score;
        }
    }

    const auto& bp = grid[best_idx];
    result.best.a = bp.a;
    result.best.b = b;
    result.best.sigma_hat = target.sigma_hat;
    result.best.params = HawkesParams(bp.v, bp.v0, bp.alpha, bp.beta);
    result.best.horizon = horizon;
    result.best.steps_per_path = target.n;
    result.score = best_score;
    return result;
}

QqTable qq_exponential(std::span<const double> data, std::size_t n_quantiles) {
    if (data.size() < 2) throw std::invalid_argument("qq_exponential: need >= 2 observations");
    if (n_quantiles < 1) throw std::invalid_argument("qq_exponential: n_quantiles must be >= 1");
    double total = 0.0;
    for (double x : data) {
        if (x < 0.0) throw std::invalid_argument("qq_exponential: negative observation");
        total += x;
    }
    if (total == 0.0)
        throw std::invalid_argument("qq_exponential: all-zero data, exponential rate undefined");
    const double mean_x = total / static_cast<double>(data.size());

    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());

    QqTable t;
    for (std::size_t i = 1; i <= n_quantiles; ++i) {
        const double p = static_cast<double>(i) / static_cast<double>(n_quantiles + 1);
        t.levels.push_back(p);
        t.empirical.push_back(empirical_quantile_sorted(sorted, p));
        t.exponential.push_back(-mean_x * std::log1p(-p));
    }
    return t;
}

void write_qq_csv(std::ostream& os, const QqTable& table) {
    os << "level,empirical,exponential\n";
    char buf[128];
    for (std::size_t i = 0; i < table.levels.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", table.levels[i],
                      table.empirical[i], table.exponential[i]);
        os << buf;
    }
}

std::vector<double> daily_volume_profile(const VolumeSeries& volumes) {
    if (volumes.volumes.empty())
        throw std::invalid_argument("daily_volume_profile: empty series");
    if (volumes.minutes.size() != volumes.volumes.size())
        throw std::invalid_argument("daily_volume_profile: minutes/volumes length mismatch");
    for (double v : volumes.volumes)
        if (v < 0.0) throw std::invalid_argument("daily_volume_profile: negative volume");

    std::vector<std::size_t> bounds = volumes.day_boundaries;
    if (bounds.empty() || bounds.back() != volumes.volumes.size())
        bounds.push_back(volumes.volumes.size());

    std::vector<double> sums;
    std::vector<std::size_t> counts;
    std::size_t start = 0;
    for (std::size_t end : bounds) {
        if (end < start || end > volumes.volumes.size())
            throw std::invalid_argument("daily_volume_profile: bad day boundary");
        for (std::size_t i = start; i < end; ++i) {
            const std::size_t offset = i - start;
            if (offset >= sums.size()) {
                sums.resize(offset + 1, 0.0);
                counts.resize(offset + 1, 0);
            }
            sums[offset] += volumes.volumes[i];
            ++counts[offset];
        }
        start = end;
    }
    std::vector<double> profile(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i)
        profile[i] = sums[i] / static_cast<double>(counts[i]);
    return profile;
}

}  // namespace vhawkes
