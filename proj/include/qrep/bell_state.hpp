// Bell-diagonal two-qubit states and the canonical input families.
//
// A Bell-diagonal state is fully described by the four weights (a, b, c, d)
// of |phi+>, |phi->, |psi+>, |psi->. All repeater-chain states in this
// library stay in this family.
#pragma once

#include <string>

namespace qrep {

struct BellCoefficients {
    double a = 1.0;  // weight of |phi+>
    double b = 0.0;  // weight of |phi->
    double c = 0.0;  // weight of |psi+>
    double d = 0.0;  // weight of |psi->

    bool operator==(const BellCoefficients&) const = default;
};

// Validates (non-negative, sum == 1 within 1e-6) and renormalizes small
// drift (|sum - 1| > 1e-12). Larger deviations signal an upstream bug and
// throw std::invalid_argument.
BellCoefficients bell_checked(double a, double b, double c, double d);

// Depolarized input: (F, (1-F)/3, (1-F)/3, (1-F)/3).
BellCoefficients depolarized(double fidelity);

// Binary input: (F, 1-F, 0, 0).
BellCoefficients binary(double fidelity);

// Overlap with |phi+>, i.e. the first coefficient.
double fidelity(const BellCoefficients& s);

// QBER per measurement basis, relative to the correlation pattern of |phi+>:
// e_z = c + d, e_x = b + d, e_y = b + c.
struct PauliErrorRates {
    double ex = 0.0;
    double ey = 0.0;
    double ez = 0.0;
};

PauliErrorRates error_rates(const BellCoefficients& s);

std::string to_string(const BellCoefficients& s);

}  // namespace qrep
