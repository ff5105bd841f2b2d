#include "gwts/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gwts {

void check_series(const TimeSeries& s) {
    if (s.values.empty()) throw InputError("series '" + s.name + "' is empty");
    for (double v : s.values) {
        if (!std::isfinite(v)) throw InputError("series '" + s.name + "' contains a non-finite value");
    }
}

const TimeSeries* Dataset::find(const std::string& name) const {
    for (const auto& c : columns) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

const TimeSeries& Dataset::at(const std::string& name) const {
    const TimeSeries* s = find(name);
    if (!s) throw InputError("unknown column name '" + name + "'");
    return *s;
}

void check_dataset(const Dataset& d) {
    if (d.columns.empty()) throw InputError("dataset has no columns");
    const Date t0 = d.columns.front().t0;
    const std::size_t n = d.columns.front().size();
    for (const auto& c : d.columns) {
        check_series(c);
        if (!(c.t0 == t0) || c.size() != n) {
            throw InputError("dataset columns do not share t0 and length");
        }
    }
}

LaggedDesign embed_lags(const Dataset& data, const std::string& target_name,
                        const std::vector<std::string>& predictor_names, int k,
                        bool include_lag0) {
    if (k < 0 || (k < 1 && !include_lag0)) {
        throw InputError("lag count must be >= 1, or >= 0 when lag 0 is included");
    }
    const TimeSeries& target = data.at(target_name);
    const std::size_t n = data.n();
    if (static_cast<std::size_t>(k) >= n) throw InputError("lag count must be smaller than the series length");

    std::vector<const TimeSeries*> preds;
    preds.reserve(predictor_names.size());
    for (const auto& name : predictor_names) preds.push_back(&data.at(name));

    const int lags_per_pred = include_lag0 ? k + 1 : k;
    const std::size_t m = n - static_cast<std::size_t>(k);

    LaggedDesign design;
    design.lag_count = k;
    design.include_lag0 = include_lag0;
    design.first_usable_index = static_cast<std::size_t>(k);
    design.target.resize(static_cast<Eigen::Index>(m));
    design.matrix.resize(static_cast<Eigen::Index>(m),
                         static_cast<Eigen::Index>(preds.size() * static_cast<std::size_t>(lags_per_pred)));

    for (std::size_t i = 0; i < m; ++i) {
        design.target(static_cast<Eigen::Index>(i)) = target.values[i + static_cast<std::size_t>(k)];
    }
    Eigen::Index col = 0;
    const int first_lag = include_lag0 ? 0 : 1;
    for (const TimeSeries* p : preds) {
        for (int lag = first_lag; lag <= k; ++lag, ++col) {
            for (std::size_t i = 0; i < m; ++i) {
                design.matrix(static_cast<Eigen::Index>(i), col) =
                    p->values[i + static_cast<std::size_t>(k - lag)];
            }
            design.column_names.push_back(p->name + "_lag" + std::to_string(lag));
        }
    }
    return design;
}

SplitSizes split_sizes(std::size_t m, const SplitSpec& spec) {
    if (spec.train_frac < 0 || spec.val_frac < 0 || spec.test_frac < 0) {
        throw InputError("split fractions must be nonnegative");
    }
    const double sum = spec.train_frac + spec.val_frac + spec.test_frac;
    if (std::abs(sum - 1.0) > 1e-9) throw InputError("split fractions must sum to 1");

    SplitSizes s;
    s.train = static_cast<std::size_t>(std::floor(spec.train_frac * static_cast<double>(m)));
    s.val = static_cast<std::size_t>(std::floor(spec.val_frac * static_cast<double>(m)));
    s.test = m - s.train - s.val;  // remainder goes to the test block

    const auto check_block = [&](double frac, std::size_t size, const char* which) {
        if (frac > 0 && size == 0) {
            throw InputError(std::string("split produced an empty ") + which + " block");
        }
    };
    check_block(spec.train_frac, s.train, "train");
    check_block(spec.val_frac, s.val, "validation");
    check_block(spec.test_frac, s.test, "test");
    return s;
}

ScalerParams fit_scaler(const Eigen::Ref<const Eigen::MatrixXd>& train_block) {
    if (train_block.rows() == 0) throw InputError("cannot fit a scaler on an empty block");
    ScalerParams s;
    s.min = train_block.colwise().minCoeff();
    s.max = train_block.colwise().maxCoeff();
    return s;
}

Eigen::MatrixXd apply_scaler(const ScalerParams& s, const Eigen::Ref<const Eigen::MatrixXd>& x) {
    if (x.cols() != s.min.size()) throw InputError("scaler/input column count mismatch");
    Eigen::MatrixXd out(x.rows(), x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double range = s.max(j) - s.min(j);
        if (range == 0.0) {
            out.col(j).setZero();  // constant training column
        } else {
            out.col(j) = (x.col(j).array() - s.min(j)) / range;
        }
    }
    return out;
}

Eigen::MatrixXd inverse_scaler(const ScalerParams& s, const Eigen::Ref<const Eigen::MatrixXd>& x) {
    if (x.cols() != s.min.size()) throw InputError("scaler/input column count mismatch");
    Eigen::MatrixXd out(x.rows(), x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double range = s.max(j) - s.min(j);
        if (range == 0.0) {
            out.col(j).setConstant(s.min(j));
        } else {
            out.col(j) = x.col(j).array() * range + s.min(j);
        }
    }
    return out;
}

double mse(std::span<const double> y, std::span<const double> yhat) {
    if (y.empty()) throw InputError("mse of empty input");
    if (y.size() != yhat.size()) throw InputError("mse length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double e = y[i] - yhat[i];
        acc += e * e;
    }
    return acc / static_cast<double>(y.size());
}

double mae(std::span<const double> y, std::span<const double> yhat) {
    if (y.empty()) throw InputError("mae of empty input");
    if (y.size() != yhat.size()) throw InputError("mae length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += std::abs(y[i] - yhat[i]);
    return acc / static_cast<double>(y.size());
}

double mse(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat) {
    return mse(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())),
               std::span<const double>(yhat.data(), static_cast<std::size_t>(yhat.size())));
}

double mae(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat) {
    return mae(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())),
               std::span<const double>(yhat.data(), static_cast<std::size_t>(yhat.size())));
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& col) {
    if (cell.empty()) throw CsvError(row, "missing value in column '" + col + "'");
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw CsvError(row, "non-numeric value '" + cell + "' in column '" + col + "'");
    }
    if (!std::isfinite(v)) throw CsvError(row, "non-finite value in column '" + col + "'");
    return v;
}

}  // namespace

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw CsvError(1, "missing header; expected 'date,rain,evap,level'");
    const auto header = split_csv_line(line);
    if (header.empty() || header[0] != "date") {
        throw CsvError(1, "first header column must be 'date' (contract: date,rain,evap,level)");
    }
    if (header.size() < 2) throw CsvError(1, "expected at least one data column after 'date'");

    Dataset out;
    out.columns.resize(header.size() - 1);
    for (std::size_t j = 1; j < header.size(); ++j) out.columns[j - 1].name = header[j];

    std::size_t row = 1;
    bool have_t0 = false;
    Date prev{};
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw CsvError(row, "expected " + std::to_string(header.size()) + " cells, found " +
                                    std::to_string(cells.size()));
        }
        Date d;
        try {
            d = parse_iso_date(cells[0]);
        } catch (const InputError& e) {
            throw CsvError(row, e.what());
        }
        if (!have_t0) {
            for (auto& c : out.columns) c.t0 = d;
            have_t0 = true;
        } else {
            const std::int64_t gap = to_day_number(d) - to_day_number(prev);
            if (gap != 1) {
                throw CsvError(row, "dates must be daily-contiguous; '" + cells[0] +
                                        "' does not follow '" + format_iso_date(prev) + "'");
            }
        }
        prev = d;
        for (std::size_t j = 1; j < cells.size(); ++j) {
            out.columns[j - 1].values.push_back(parse_cell(cells[j], row, header[j]));
        }
    }
    if (!have_t0) throw CsvError(1, "no data rows");
    check_dataset(out);
    return out;
}

void write_dataset_csv(const Dataset& d, const std::string& path) {
    check_dataset(d);
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << "date";
    for (const auto& c : d.columns) out << ',' << c.name;
    out << '\n';
    const std::size_t n = d.n();
    for (std::size_t i = 0; i < n; ++i) {
        out << format_iso_date(d.columns.front().date_at(i));
        for (const auto& c : d.columns) out << ',' << format_double(c.values[i]);
        out << '\n';
    }
}

}  // namespace gwts
