#pragma once

#include <stdexcept>
#include <string>

namespace noneqcp {

// Evaluation requested at a point where the model is singular or undefined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An iterative or adaptive routine stopped before reaching its target.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial, double achieved)
        : std::runtime_error(what), partial_(partial), achieved_(achieved) {}

    double partial_value() const { return partial_; }
    double achieved_tolerance() const { return achieved_; }

private:
    double partial_;
    double achieved_;
};

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace noneqcp
