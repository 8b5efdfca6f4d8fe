#include "qrep/bell_state.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qrep {

namespace {
constexpr double kNegativeTolerance = 1e-9;
constexpr double kRejectTolerance = 1e-6;
}  // namespace

BellCoefficients bell_checked(double a, double b, double c, double d) {
    for (double w : {a, b, c, d}) {
        if (!(w >= -kNegativeTolerance)) {
            throw std::invalid_argument("bell_checked: negative coefficient " + std::to_string(w));
        }
    }
    a = a < 0.0 ? 0.0 : a;
    b = b < 0.0 ? 0.0 : b;
    c = c < 0.0 ? 0.0 : c;
    d = d < 0.0 ? 0.0 : d;
    const double sum = a + b + c + d;
    if (std::abs(sum - 1.0) > kRejectTolerance) {
        throw std::invalid_argument("bell_checked: coefficients sum to " + std::to_string(sum));
    }
    // Renormalizing even sub-1e-12 drift keeps repeated map applications from
    // compounding it; exact inputs pass through untouched.
    if (sum != 1.0) {
        a /= sum;
        b /= sum;
        c /= sum;
        d /= sum;
    }
    return BellCoefficients{a, b, c, d};
}

BellCoefficients depolarized(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw std::invalid_argument("depolarized: fidelity must lie in [0,1]");
    }
    const double rest = (1.0 - fidelity) / 3.0;
    return BellCoefficients{fidelity, rest, rest, rest};
}

BellCoefficients binary(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw std::invalid_argument("binary: fidelity must lie in [0,1]");
    }
    return BellCoefficients{fidelity, 1.0 - fidelity, 0.0, 0.0};
}

double fidelity(const BellCoefficients& s) {
    return s.a;
}

PauliErrorRates error_rates(const BellCoefficients& s) {
    return PauliErrorRates{s.b + s.d, s.b + s.c, s.c + s.d};
}

std::string to_string(const BellCoefficients& s) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "(%.12g, %.12g, %.12g, %.12g)", s.a, s.b, s.c, s.d);
    return buf;
}

}  // namespace qrep
