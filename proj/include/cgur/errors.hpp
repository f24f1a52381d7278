#pragma once

#include <stdexcept>
#include <string>

namespace cgur {

// Closed interval [lo, hi] on the real line.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double z) const { return z >= lo && z <= hi; }
};

// A tolerance-driven computation ran out of budget; carries the best estimate
// it had when it gave up.
class ToleranceNotMet : public std::runtime_error {
public:
    ToleranceNotMet(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_(best_estimate), err_(error_estimate) {}

    double best_estimate() const { return best_; }
    double error_estimate() const { return err_; }

private:
    double best_;
    double err_;
};

// Two routes that must agree (an identity cross-check) disagreed beyond
// tolerance. Signals a bug in this library, not bad input.
class InternalInconsistency : public std::logic_error {
    using std::logic_error::logic_error;
};

// The state kind does not define a momentum-side distribution.
class MomentumUndefined : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A capped search ran past its cap.
class SearchExhausted : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cgur
