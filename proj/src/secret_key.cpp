#include "qrep/secret_key.hpp"

#include <cmath>
#include <stdexcept>

#include "qrep/repeater_rate.hpp"

namespace qrep {

double binary_entropy(double p) {
    if (p < -1e-15 || p > 1.0 + 1e-15) {
        throw std::invalid_argument("binary_entropy: argument outside [0,1]");
    }
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double secret_fraction(double ex, double ey, double ez) {
    for (double e : {ex, ey, ez}) {
        if (!(e >= 0.0 && e <= 1.0)) {
            throw std::invalid_argument("secret_fraction: error rate outside [0,1]");
        }
    }
    // For rates coming from a Bell-diagonal state both entropy arguments lie
    // in [0,1] exactly ((1+(ex-ey)/ez)/2 = d/(c+d), the other a/(a+b));
    // clamping only absorbs cancellation noise near a vanishing denominator.
    auto clamp01 = [](double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); };
    // Terms with vanishing weight are dropped before their (then ill-defined)
    // entropy arguments are formed.
    double value = 1.0 - binary_entropy(ez);
    if (ez > 0.0) {
        value -= ez * binary_entropy(clamp01(0.5 * (1.0 + (ex - ey) / ez)));
    }
    if (ez < 1.0) {
        value -= (1.0 - ez) * binary_entropy(clamp01((1.0 - 0.5 * (ex + ey + ez)) / (1.0 - ez)));
    }
    return value;
}

std::int64_t memories_deutsch(const DistillationVector& k) {
    validate(k);
    const int total = k.total_rounds();
    if (total > 62) throw std::overflow_error("memories_deutsch: 2^k overflows");
    return std::int64_t{1} << total;
}

std::int64_t memories_duer(const DistillationVector& k, int levels) {
    validate(k);
    if (k.levels() != levels) {
        throw std::invalid_argument("memories_duer: vector length must be N+1");
    }
    return levels + 2 - k.zero_entries();
}

std::int64_t memory_count(Protocol protocol, const DistillationVector& k, int levels) {
    switch (protocol) {
        case Protocol::kDeutsch: return memories_deutsch(k);
        case Protocol::kDuer: return memories_duer(k, levels);
        case Protocol::kNone: return 1;
    }
    return 1;
}

double rel_change(double a, double b) {
    const double denom = std::max(a, b);
    if (denom == 0.0) return 0.0;
    return (a - b) / denom;
}

EvalResult evaluate(const ChainEvaluator& evaluator, const RepeaterConfig& cfg) {
    validate(cfg);
    EvalResult out;
    out.trace = evaluator.trace(cfg);
    out.memories = memory_count(cfg.protocol, cfg.rounds, cfg.link.nesting_levels);

    const Protocol rate_protocol =
        cfg.protocol == Protocol::kNone ? Protocol::kDeutsch : cfg.protocol;
    const double tau =
        tau_recurrence(rate_protocol, out.trace, cfg.rounds, cfg.link.nesting_levels, cfg.cc_mode);
    out.repeater_rate = repeater_rate(tau, cfg.link);

    const PauliErrorRates e = error_rates(out.trace.final_state);
    out.secret_fraction = secret_fraction(e.ex, e.ey, e.ez);

    const double eta_sq = cfg.noise.eta_detector * cfg.noise.eta_detector;
    const double fraction = out.secret_fraction > 0.0 ? out.secret_fraction : 0.0;
    const double key = out.repeater_rate * fraction * eta_sq / static_cast<double>(out.memories);
    out.key_rate = key < kRateUnderflow ? 0.0 : key;
    return out;
}

EvalResult evaluate(const RepeaterConfig& cfg) {
    return evaluate(ChainEvaluator(cfg.noise), cfg);
}

}  // namespace qrep
