// Six-state secret fraction, memory accounting, and the composite secret key
// rate per memory per second.
#pragma once

#include <cstdint>

#include "qrep/chain_trace.hpp"
#include "qrep/repeater_config.hpp"

namespace qrep {

// Binary Shannon entropy; arguments are clamped into [0,1] with a 1e-15 guard.
double binary_entropy(double p);

// Asymptotic six-state one-way secret fraction from the basis error rates.
// The raw value may be negative; key rates clamp it at zero.
double secret_fraction(double ex, double ey, double ez);

// Memories per half-node: 2^(sum k_n) for the recurrence protocol.
std::int64_t memories_deutsch(const DistillationVector& k);

// N + 2 - #{k_i = 0} for the pumping protocol.
std::int64_t memories_duer(const DistillationVector& k, int levels);

std::int64_t memory_count(Protocol protocol, const DistillationVector& k, int levels);

// Relative change (a - b) / max(a, b); 0 when both vanish.
double rel_change(double a, double b);

struct EvalResult {
    double repeater_rate = 0.0;    // pairs per second
    double secret_fraction = 0.0;  // raw value, may be negative
    std::int64_t memories = 1;
    double key_rate = 0.0;  // secret bits per second per memory, clamped at 0
    ProbabilityTrace trace;
};

EvalResult evaluate(const RepeaterConfig& cfg);
EvalResult evaluate(const ChainEvaluator& evaluator, const RepeaterConfig& cfg);

}  // namespace qrep
