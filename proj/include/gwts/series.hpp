#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gwts/calendar.hpp"
#include "gwts/error.hpp"

namespace gwts {

/// One daily-contiguous column of observations: element i is the value on
/// day t0 + i. Values must be finite; missing values are rejected at
/// ingestion and never stored.
struct TimeSeries {
    std::string name;
    Date t0;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    Date date_at(std::size_t i) const { return add_days(t0, static_cast<std::int64_t>(i)); }
    int day_of_year_at(std::size_t i) const { return day_of_year(date_at(i)); }
};

/// Validates the TimeSeries invariants (nonempty, all finite). Throws InputError.
void check_series(const TimeSeries& s);

/// Named collection of TimeSeries sharing t0 and length.
struct Dataset {
    std::vector<TimeSeries> columns;

    std::size_t n() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
    Date t0() const { return columns.empty() ? Date{} : columns.front().t0; }
    const TimeSeries* find(const std::string& name) const;
    const TimeSeries& at(const std::string& name) const;
    bool has(const std::string& name) const { return find(name) != nullptr; }
};

/// Validates shared t0/length plus per-column invariants.
void check_dataset(const Dataset& d);

/// Target vector aligned with a matrix of lagged predictor columns.
///
/// Column order is deterministic: predictors in the given order, each with its
/// lags ascending (lag 0 first when included, then lag 1, lag 2, ...). Row i
/// predicts the target at original time index first_usable_index + i, and
/// never contains a value from a later time.
struct LaggedDesign {
    Eigen::VectorXd target;
    Eigen::MatrixXd matrix;
    int lag_count = 0;            // k: deepest lag present
    bool include_lag0 = false;
    std::size_t first_usable_index = 0;  // == k
    std::vector<std::string> column_names;

    std::size_t rows() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(matrix.cols()); }
};

/// Builds a lag-embedded design. With include_lag0 the columns for each
/// predictor are lags 0..k; without it, lags 1..k. Either way the first k
/// rows of the source are dropped, so the design has n - k rows.
LaggedDesign embed_lags(const Dataset& data, const std::string& target_name,
                        const std::vector<std::string>& predictor_names, int k,
                        bool include_lag0);

/// Chronological train/validation/test fractions. Blocks are contiguous and
/// ordered train, validation, test.
struct SplitSpec {
    double train_frac = 0.6;
    double val_frac = 0.2;
    double test_frac = 0.2;

    static SplitSpec neural() { return {0.60, 0.20, 0.20}; }
    static SplitSpec arima() { return {0.80, 0.00, 0.20}; }
};

struct SplitSizes {
    std::size_t train = 0;
    std::size_t val = 0;
    std::size_t test = 0;
};

/// Block sizes for m rows: floor(frac * m) for train and validation, with the
/// remainder assigned to the test block. Throws InputError on negative
/// fractions, fractions not summing to 1, or an empty block whose fraction is
/// positive.
SplitSizes split_sizes(std::size_t m, const SplitSpec& spec);

/// Per-column min/max computed on the training block only. Values outside the
/// training range map outside [0, 1], which is allowed. A constant column
/// maps to 0.
struct ScalerParams {
    Eigen::VectorXd min;
    Eigen::VectorXd max;
};

ScalerParams fit_scaler(const Eigen::Ref<const Eigen::MatrixXd>& train_block);
Eigen::MatrixXd apply_scaler(const ScalerParams& s, const Eigen::Ref<const Eigen::MatrixXd>& x);
Eigen::MatrixXd inverse_scaler(const ScalerParams& s, const Eigen::Ref<const Eigen::MatrixXd>& x);

double mse(std::span<const double> y, std::span<const double> yhat);
double mae(std::span<const double> y, std::span<const double> yhat);
double mse(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat);
double mae(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat);

/// Reads a dataset from CSV with header `date,rain,evap,level` (level and
/// evap optional, any subset of data columns accepted). Dates must be
/// ISO-8601 and daily-contiguous; gaps and non-numeric cells are rejected
/// with row-numbered errors.
Dataset read_dataset_csv(const std::string& path);

/// Writes the same CSV schema. Numbers use shortest round-trip formatting so
/// identical datasets serialize byte-identically.
void write_dataset_csv(const Dataset& d, const std::string& path);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace gwts
