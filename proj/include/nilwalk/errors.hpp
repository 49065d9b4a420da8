#ifndef NILWALK_ERRORS_HPP
#define NILWALK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nilwalk {

// configuration rejected before any computation ran (CLI exit code 2)
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& m) : std::runtime_error(m) {}
};

// a requested operation is not available on the chosen backend (exit code 3)
struct UnsupportedBackend : std::runtime_error {
    explicit UnsupportedBackend(const std::string& m) : std::runtime_error(m) {}
};

// enumeration / time budget exhausted (exit code 4)
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace nilwalk

#endif
