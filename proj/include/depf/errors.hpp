#pragma once

#include <stdexcept>
#include <string>

namespace depf {

struct AllZeroWeights : std::runtime_error {
    AllZeroWeights() : std::runtime_error("all weights are zero") {}
};

struct NonFiniteWeight : std::runtime_error {
    explicit NonFiniteWeight(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct RejectionBudgetExceeded : std::runtime_error {
    explicit RejectionBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct NotPositiveDefinite : std::runtime_error {
    explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

struct NonPositiveReading : std::runtime_error {
    explicit NonPositiveReading(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyTrialSet : std::runtime_error {
    EmptyTrialSet() : std::runtime_error("cannot aggregate an empty trial set") {}
};

struct InvalidConfig : std::runtime_error {
    InvalidConfig(const std::string& field, const std::string& why)
        : std::runtime_error(field + ": " + why), field_name(field) {}
    std::string field_name;
};

}  // namespace depf
