// Exhaustive configuration search for the best secret key rate per memory
// per second, fixed-memory parallel-setup partitioning, parameter-grid
// scans, and the classical-communication impact comparison.
//
// The search is brute-force enumeration over (protocol, N, distillation
// vector); ties are broken deterministically: fewer memories, then fewer
// nesting levels, then lexicographically smaller vector, then
// none < deutsch < duer.
#pragma once

#include <optional>
#include <vector>

#include "qrep/secret_key.hpp"

namespace qrep {

struct SearchSpace {
    int min_level = 0;
    int max_level = 6;
    int max_rounds = 5;  // per-level cap on distillation rounds
    std::vector<Strategy> strategies = {Strategy::kGamma};
    std::vector<Protocol> protocols = {Protocol::kDeutsch, Protocol::kDuer, Protocol::kNone};
    CcMode cc_mode = CcMode::kWithCc;
};

void validate(const SearchSpace& space);

struct Candidate {
    Protocol protocol = Protocol::kNone;
    int levels = 0;
    DistillationVector rounds;
    Strategy strategy = Strategy::kAlpha;
    EvalResult result;

    bool has_key() const { return result.key_rate > 0.0; }
};

// True when lhs wins over rhs under the deterministic ordering above.
bool candidate_better(const Candidate& lhs, const Candidate& rhs);

struct OptimizeInputs {
    double initial_fidelity = 1.0;
    InputStateKind input_kind = InputStateKind::kDepolarized;
    NoiseParams noise;
    LinkParams link;  // nesting_levels is overridden by the search
};

Candidate optimize(const OptimizeInputs& inputs, const SearchSpace& space);

// Parallel setups with a fixed memory budget M: multiplicities s_m solve
// sum_m s_m m = M and the total rate is sum_m s_m m K_m / M.
struct SetupPartition {
    std::vector<int> multiplicity;  // s_m at index m-1, m = 1..M
    double key_rate = 0.0;          // per memory per second for the whole setup
};

struct PartitionResult {
    int total_memories = 0;
    SetupPartition best;
    std::vector<std::optional<Candidate>> best_per_size;  // index m-1
};

PartitionResult optimize_fixed_memory(int total_memories, const OptimizeInputs& inputs,
                                      const SearchSpace& space);

struct GridCell {
    double initial_fidelity = 0.0;
    double p_gate = 0.0;
    Candidate best;
    bool below_cutoff = false;
};

inline constexpr double kGridKeyRateCutoff = 1e-10;

std::vector<GridCell> grid_scan(const std::vector<double>& f0_values,
                                const std::vector<double>& p_gate_values,
                                const OptimizeInputs& base_inputs, const SearchSpace& space,
                                double cutoff = kGridKeyRateCutoff, int threads = 0);

struct CcImpactResult {
    Candidate with_cc;
    Candidate no_cc;
    double rel_change = 0.0;  // of the optimized key rates, no-CC vs with-CC
};

CcImpactResult cc_impact(const OptimizeInputs& inputs, const SearchSpace& space);

}  // namespace qrep
