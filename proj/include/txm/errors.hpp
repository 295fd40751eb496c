#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace txm {

// Error hierarchy mirrors the CLI exit-code contract:
//   ConfigError -> 1 (usage/config), DataError -> 2 (data), anything else -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

// A required column is absent from an input file header.
class SchemaError : public DataError {
public:
    explicit SchemaError(const std::string& column)
        : DataError("missing column: " + column), column_(column) {}
    const std::string& column() const { return column_; }

private:
    std::string column_;
};

// A data row failed to parse; carries the 1-based line number.
class RowError : public DataError {
public:
    RowError(std::size_t line, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A record carries a label outside the active category set.
class LabelError : public DataError {
public:
    using DataError::DataError;
};

class IoError : public DataError {
public:
    using DataError::DataError;
};

class CorruptBundleError : public DataError {
public:
    using DataError::DataError;
};

class VersionError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace txm
