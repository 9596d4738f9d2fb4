#pragma once

#include <stdexcept>
#include <string>

namespace stratcat {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input (bad word, bad partition, mismatched sizes...).
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// Input exceeds a documented size guard.
struct SizeLimitError : Error {
    explicit SizeLimitError(const std::string& what) : Error(what) {}
};

}  // namespace stratcat
