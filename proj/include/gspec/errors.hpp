#pragma once

#include <stdexcept>
#include <string>

namespace gspec {

/// Malformed or inconsistent graph/partition input.
class graph_error : public std::invalid_argument {
public:
    explicit graph_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Failure inside a numerical kernel (factorization, eigensolve, integration).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

class not_positive_definite : public numerical_error {
public:
    explicit not_positive_definite(const std::string& what) : numerical_error(what) {}
};

class convergence_failure : public numerical_error {
public:
    explicit convergence_failure(const std::string& what) : numerical_error(what) {}
};

} // namespace gspec
