#pragma once

#include <stdexcept>
#include <string>

namespace acpol {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LookupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(std::string msg, int line, int column)
        : std::runtime_error(std::move(msg)), line(line), column(column) {}
    int line;
    int column;
};

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace acpol
