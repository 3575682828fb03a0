#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chlab {

/// Bad argument or inconsistent configuration.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A sample or state entry is NaN or infinite.
class NonFiniteError : public std::runtime_error {
public:
    NonFiniteError(const std::string& what, std::size_t index);
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// The flow map stopped being a diffeomorphism: y lost strict monotonicity
/// or y_xi dropped below the configured floor.
class BreakdownError : public std::runtime_error {
public:
    BreakdownError(const std::string& what, double t, double xi, double min_y_xi);
    double time() const noexcept { return t_; }
    double location() const noexcept { return xi_; }
    double min_y_xi() const noexcept { return min_y_xi_; }

private:
    double t_;
    double xi_;
    double min_y_xi_;
};

/// Two peakon positions met (or were given equal).
class CollisionError : public std::runtime_error {
public:
    CollisionError(const std::string& what, double t, std::size_t index);
    double time() const noexcept { return t_; }
    std::size_t index() const noexcept { return index_; }

private:
    double t_;
    std::size_t index_;
};

}  // namespace chlab
