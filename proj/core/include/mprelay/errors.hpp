#pragma once

#include <stdexcept>

namespace mprelay {

// A Gram matrix turned out numerically singular during inversion; carries
// the offending pivot magnitude for diagnostics.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(double pivot_magnitude);
    double pivot_magnitude() const noexcept { return pivot_; }

private:
    double pivot_;
};

// Zero-forcing requires N >= K and invertible Grams; violations end here.
class ZfInfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mprelay
