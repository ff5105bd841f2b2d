#pragma once

#include <stdexcept>
#include <string>

namespace gwts {

/// Base class for all library failures.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid input: bad file, bad config, violated precondition.
class InputError : public Error {
public:
    using Error::Error;
};

/// Numerical failure: divergent training, failed estimation.
class NumericError : public Error {
public:
    using Error::Error;
};

/// CSV parse failure carrying the 1-based row number of the offending line.
class CsvError : public InputError {
public:
    CsvError(std::size_t row, const std::string& what)
        : InputError("row " + std::to_string(row) + ": " + what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

}  // namespace gwts
