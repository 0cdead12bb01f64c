#pragma once

#include <stdexcept>
#include <string>

namespace mpdet {

/// A real number constrained to [0, 1]. Construction validates the range;
/// the value participates in arithmetic through the implicit double conversion.
class Probability {
  public:
    Probability() = default;

    explicit Probability(double value) : value_(value) {
        if (!(value >= 0.0 && value <= 1.0)) {
            throw std::domain_error("Probability out of [0,1]: " + std::to_string(value));
        }
    }

    /// Clamps floating-point excursions just outside [0,1] instead of throwing.
    static Probability clamped(double value) {
        if (value < 0.0) value = 0.0;
        if (value > 1.0) value = 1.0;
        return Probability(value);
    }

    double value() const { return value_; }
    operator double() const { return value_; }

  private:
    double value_ = 0.0;
};

}  // namespace mpdet
