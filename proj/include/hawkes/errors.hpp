#pragma once

#include <stdexcept>
#include <string>

namespace hawkes {

// Runtime aborts shared by both engines; the CLI maps these to exit code 3.
class SimulationError : public std::runtime_error {
  public:
    enum class Kind { envelope_violation, event_cap_exceeded, non_finite_state };

    SimulationError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

}  // namespace hawkes
