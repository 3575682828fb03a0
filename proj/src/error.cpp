#include "chlab/error.hpp"

namespace chlab {

NonFiniteError::NonFiniteError(const std::string& what, std::size_t index)
    : std::runtime_error(what + " (index " + std::to_string(index) + ")"), index_(index) {}

BreakdownError::BreakdownError(const std::string& what, double t, double xi, double min_y_xi)
    : std::runtime_error(what), t_(t), xi_(xi), min_y_xi_(min_y_xi) {}

CollisionError::CollisionError(const std::string& what, double t, std::size_t index)
    : std::runtime_error(what), t_(t), index_(index) {}

}  // namespace chlab
