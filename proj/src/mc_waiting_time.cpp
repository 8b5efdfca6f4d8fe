#include "qrep/mc_waiting_time.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qrep/parallel.hpp"

namespace qrep {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // One splitmix step over the XOR keeps distinct (seed, stream) pairs from
    // producing overlapping trial streams.
    SplitMix64 mixer(seed ^ (0x632be59bd9b4e019ULL * (stream + 1)));
    return mixer.next();
}

std::int64_t geometric_attempts(double success_prob, SplitMix64& rng) {
    if (!(success_prob > 0.0 && success_prob <= 1.0)) {
        throw std::invalid_argument("geometric_attempts: probability outside (0,1]");
    }
    if (success_prob >= 1.0) return 1;
    const double u = rng.uniform_open();
    const std::int64_t n = 1 + static_cast<std::int64_t>(std::log(u) / std::log1p(-success_prob));
    return n < 1 ? 1 : n;
}

namespace {

struct TrialContext {
    const ProbabilityTrace& trace;
    const DistillationVector& rounds;
    Protocol protocol;
    double cc;  // 1 with classical communication, 0 without
    SplitMix64& rng;

    double pair_time(int level, int round) const {
        if (level == 0 && round == 0) {
            return 2.0 * static_cast<double>(geometric_attempts(trace.p0, rng));
        }
        if (round == 0) {
            // Swap: both children, acknowledgment 2^{n-1}, retry from scratch.
            const int child_rounds = rounds.rounds[level - 1];
            double total = 0.0;
            while (true) {
                const double lhs = pair_time(level - 1, child_rounds);
                const double rhs = pair_time(level - 1, child_rounds);
                total += std::max(lhs, rhs) + cc * static_cast<double>(1LL << (level - 1));
                if (rng.uniform_open() <= trace.swap_success[level]) return total;
            }
        }
        const double p = trace.distill_success[level][round - 1];
        double total = 0.0;
        while (true) {
            // Child draws are sequenced explicitly; evaluation order inside a
            // single expression would be compiler-dependent.
            double attempt;
            if (protocol == Protocol::kDuer) {
                // Fresh pair production starts once the held pair exists.
                const double held = pair_time(level, round - 1);
                const double fresh = pair_time(level, 0);
                attempt = held + fresh;
            } else {
                const double lhs = pair_time(level, round - 1);
                const double rhs = pair_time(level, round - 1);
                attempt = std::max(lhs, rhs);
            }
            total += attempt + cc * static_cast<double>(1LL << level);
            if (rng.uniform_open() <= p) return total;
        }
    }
};

}  // namespace

SimResult simulate_tau(const SimConfig& cfg) {
    validate_against(cfg.trace, cfg.rounds, cfg.levels);
    if (cfg.trials < 1) throw std::invalid_argument("simulate_tau: trials must be >= 1");
    if (!cfg.trace.feasible()) {
        throw std::invalid_argument("simulate_tau: trace contains (near-)zero probabilities");
    }

    constexpr std::int64_t kChunk = 4096;
    const std::int64_t chunks = (cfg.trials + kChunk - 1) / kChunk;
    std::vector<double> chunk_sum(static_cast<size_t>(chunks), 0.0);
    std::vector<double> chunk_sq(static_cast<size_t>(chunks), 0.0);

    parallel_for_static(chunks, cfg.threads, [&](std::int64_t chunk) {
        const std::int64_t begin = chunk * kChunk;
        const std::int64_t end = std::min(begin + kChunk, cfg.trials);
        double sum = 0.0;
        double sq = 0.0;
        for (std::int64_t trial = begin; trial < end; ++trial) {
            SplitMix64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
            TrialContext ctx{cfg.trace, cfg.rounds, cfg.protocol,
                             cfg.cc_mode == CcMode::kWithCc ? 1.0 : 0.0, rng};
            const double tau = ctx.pair_time(cfg.levels, cfg.rounds.rounds[cfg.levels]);
            sum += tau;
            sq += tau * tau;
        }
        chunk_sum[static_cast<size_t>(chunk)] = sum;
        chunk_sq[static_cast<size_t>(chunk)] = sq;
    });

    double sum = 0.0;
    double sq = 0.0;
    for (std::int64_t chunk = 0; chunk < chunks; ++chunk) {
        sum += chunk_sum[static_cast<size_t>(chunk)];
        sq += chunk_sq[static_cast<size_t>(chunk)];
    }
    const double n = static_cast<double>(cfg.trials);
    const double mean = sum / n;
    double variance = (sq - n * mean * mean) / (n > 1.0 ? n - 1.0 : 1.0);
    if (variance < 0.0) variance = 0.0;

    SimResult out;
    out.mean_tau = mean;
    out.std_error = std::sqrt(variance / n);
    out.trials = cfg.trials;
    return out;
}

}  // namespace qrep
