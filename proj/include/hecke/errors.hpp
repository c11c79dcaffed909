#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// complex power requested on the negative real axis
struct BranchError : std::domain_error {
    using std::domain_error::domain_error;
};

// point within tolerance of a partition boundary
struct BoundaryError : std::domain_error {
    using std::domain_error::domain_error;
};

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ModeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hecke
