#pragma once

#include <stdexcept>
#include <string>

namespace discourse {

/// Invalid configuration: missing files, bad parameters, malformed config JSON.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid input data: duplicate ids, inconsistent records, dimension mismatches.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace discourse
