#pragma once

#include <stdexcept>
#include <string>

namespace etdmine {

/// Bad invocation or parameters. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data that cannot be used as given. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable corpus sources, duplicate ids, malformed metadata records.
class IngestError : public DataError {
public:
    using DataError::DataError;
};

/// Malformed term query pattern.
class QueryError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

}  // namespace etdmine
