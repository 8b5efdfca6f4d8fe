// Per-level state and success-probability trace of a repeater chain.
//
// chain_trace composes the noisy maps along the nesting hierarchy: distill
// k_0 rounds on the elementary pairs, swap, distill k_1 rounds, and so on.
// All segments are identical, so one pass up the hierarchy captures the whole
// chain. Detector efficiency multiplies every swap and distillation success
// by eta^2; it never touches the post-selected states.
#pragma once

#include <vector>

#include "qrep/repeater_config.hpp"

namespace qrep {

struct ProbabilityTrace {
    double p0 = 1.0;  // elementary-pair generation success

    // swap_success[n] is P_ES(n) for n >= 1; index 0 is fixed to 1.
    std::vector<double> swap_success;

    // distill_success[n][i-1] is P_D(i, n) for round i = 1..k_n.
    std::vector<std::vector<double>> distill_success;

    // State entering level n before any distillation there (rho(0, n));
    // entry_state[0] is the elementary input state.
    std::vector<BellCoefficients> entry_state;

    // round_state[n][i-1] is the state after round i at level n.
    std::vector<std::vector<BellCoefficients>> round_state;

    BellCoefficients final_state;

    int levels() const { return static_cast<int>(swap_success.size()) - 1; }
    double min_probability() const;
    bool feasible() const;

    // Distillation vector implied by the trace shape.
    DistillationVector rounds_shape() const;
};

// Checks that the trace dimensions match (k, N) and all probabilities lie in
// (0, 1]; throws std::invalid_argument otherwise.
void validate_against(const ProbabilityTrace& trace, const DistillationVector& k, int levels);

// Reusable evaluator holding the probed map kernels for one gate quality.
class ChainEvaluator {
  public:
    explicit ChainEvaluator(const NoiseParams& noise);

    const NoiseParams& noise() const { return noise_; }

    MapOutcome distill(const BellCoefficients& pair1, const BellCoefficients& pair2) const;
    MapOutcome swap(const BellCoefficients& left, const BellCoefficients& right) const;

    ProbabilityTrace trace(const RepeaterConfig& cfg) const;

  private:
    NoiseParams noise_;
    PairMapKernel distill_kernel_;
    PairMapKernel swap_kernel_;
};

// Convenience wrapper building a one-shot evaluator.
ProbabilityTrace chain_trace(const RepeaterConfig& cfg);

}  // namespace qrep
