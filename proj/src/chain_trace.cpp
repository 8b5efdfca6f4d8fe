#include "qrep/chain_trace.hpp"

#include <algorithm>
#include <stdexcept>

namespace qrep {

double ProbabilityTrace::min_probability() const {
    double lo = p0;
    for (size_t n = 1; n < swap_success.size(); ++n) lo = std::min(lo, swap_success[n]);
    for (const auto& level : distill_success) {
        for (double p : level) lo = std::min(lo, p);
    }
    return lo;
}

bool ProbabilityTrace::feasible() const {
    return min_probability() >= kMinSuccessProbability;
}

DistillationVector ProbabilityTrace::rounds_shape() const {
    DistillationVector k;
    for (const auto& level : distill_success) k.rounds.push_back(static_cast<int>(level.size()));
    return k;
}

void validate_against(const ProbabilityTrace& trace, const DistillationVector& k, int levels) {
    if (k.levels() != levels) {
        throw std::invalid_argument("trace: distillation vector length must be N+1");
    }
    if (static_cast<int>(trace.swap_success.size()) != levels + 1 ||
        static_cast<int>(trace.distill_success.size()) != levels + 1) {
        throw std::invalid_argument("trace: level count mismatch");
    }
    // Zero probabilities are tolerated here; the rate layer maps them to an
    // infinite waiting time rather than an error.
    for (int n = 0; n <= levels; ++n) {
        if (static_cast<int>(trace.distill_success[n].size()) != k.rounds[n]) {
            throw std::invalid_argument("trace: distillation round count mismatch");
        }
        for (double p : trace.distill_success[n]) {
            if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("trace: P_D outside [0,1]");
        }
        if (!(trace.swap_success[n] >= 0.0 && trace.swap_success[n] <= 1.0)) {
            throw std::invalid_argument("trace: P_ES outside [0,1]");
        }
    }
    if (!(trace.p0 >= 0.0 && trace.p0 <= 1.0)) {
        throw std::invalid_argument("trace: P0 outside [0,1]");
    }
}

ChainEvaluator::ChainEvaluator(const NoiseParams& noise)
    : noise_(noise),
      distill_kernel_(PairMapKernel::Kind::kDistill, noise.p_gate),
      swap_kernel_(PairMapKernel::Kind::kSwap, noise.p_gate) {
    validate(noise);
}

MapOutcome ChainEvaluator::distill(const BellCoefficients& pair1,
                                   const BellCoefficients& pair2) const {
    return distill_kernel_.apply(pair1, pair2);
}

MapOutcome ChainEvaluator::swap(const BellCoefficients& left,
                                const BellCoefficients& right) const {
    return swap_kernel_.apply(left, right);
}

ProbabilityTrace ChainEvaluator::trace(const RepeaterConfig& cfg) const {
    validate(cfg);
    if (cfg.noise != noise_) {
        throw std::invalid_argument("ChainEvaluator: config noise differs from evaluator noise");
    }
    const int levels = cfg.link.nesting_levels;
    const double eta_sq = noise_.eta_detector * noise_.eta_detector;

    ProbabilityTrace trace;
    trace.p0 = cfg.link.p0();
    trace.swap_success.assign(static_cast<size_t>(levels) + 1, 1.0);
    trace.distill_success.resize(static_cast<size_t>(levels) + 1);
    trace.round_state.resize(static_cast<size_t>(levels) + 1);
    trace.entry_state.resize(static_cast<size_t>(levels) + 1);

    BellCoefficients state = cfg.input_state();
    for (int n = 0; n <= levels; ++n) {
        if (n > 0) {
            const MapOutcome swapped = swap(state, state);
            trace.swap_success[n] = eta_sq * swapped.success_prob;
            state = swapped.state;
        }
        trace.entry_state[n] = state;
        const BellCoefficients pump_source = state;  // rho(0, n): fresh pair for pumping
        for (int i = 1; i <= cfg.rounds.rounds[n]; ++i) {
            const MapOutcome round = cfg.protocol == Protocol::kDuer
                                         ? distill(state, pump_source)
                                         : distill(state, state);
            trace.distill_success[n].push_back(eta_sq * round.success_prob);
            trace.round_state[n].push_back(round.state);
            state = round.state;
        }
    }
    trace.final_state = state;
    return trace;
}

ProbabilityTrace chain_trace(const RepeaterConfig& cfg) {
    return ChainEvaluator(cfg.noise).trace(cfg);
}

}  // namespace qrep
