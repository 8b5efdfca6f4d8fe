// Discrete-event Monte Carlo oracle for the waiting-time recurrences.
//
// Event semantics: elementary pairs take a geometric number of attempts at
// success P0, each attempt costing 2 time units (distribute + acknowledge);
// swaps and recurrence-protocol distillation need both child pairs (max of
// the two waiting times) plus an acknowledgment of 2^{n-1} or 2^n units; the
// pumping protocol produces its fresh pair only after the held pair exists
// (times add). A failed swap or distillation discards everything involved
// and regenerates from scratch. Time is discrete in units of T0.
//
// Trials are seeded per index from a counter-based generator, so results are
// byte-identical for any worker count.
#pragma once

#include <cstdint>

#include "qrep/chain_trace.hpp"

namespace qrep {

// splitmix64 stream; cheap, seedable, and good enough for waiting times.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in (0, 1]; never returns 0 so log() stays finite.
    double uniform_open() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Geometric number of attempts until first success (support 1, 2, ...).
std::int64_t geometric_attempts(double success_prob, SplitMix64& rng);

struct SimConfig {
    ProbabilityTrace trace;
    DistillationVector rounds;
    int levels = 0;
    Protocol protocol = Protocol::kDeutsch;
    CcMode cc_mode = CcMode::kWithCc;
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
    int threads = 1;
};

struct SimResult {
    double mean_tau = 0.0;  // units of T0
    double std_error = 0.0;
    std::int64_t trials = 0;
};

SimResult simulate_tau(const SimConfig& cfg);

}  // namespace qrep
