#include "qrep/optimizer.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "qrep/parallel.hpp"

namespace qrep {

namespace {

int protocol_rank(Protocol p) {
    switch (p) {
        case Protocol::kNone: return 0;
        case Protocol::kDeutsch: return 1;
        case Protocol::kDuer: return 2;
    }
    return 3;
}

bool contains(const std::vector<Protocol>& set, Protocol p) {
    return std::find(set.begin(), set.end(), p) != set.end();
}

bool contains(const std::vector<Strategy>& set, Strategy s) {
    return std::find(set.begin(), set.end(), s) != set.end();
}

// Vectors to try at a given nesting level, in lexicographic order.
std::vector<DistillationVector> level_vectors(const SearchSpace& space, int levels) {
    if (contains(space.strategies, Strategy::kGamma)) {
        std::vector<DistillationVector> out;
        DistillationVector v = DistillationVector::zeros(levels);
        while (true) {
            out.push_back(v);
            int pos = levels;
            while (pos >= 0 && v.rounds[pos] == space.max_rounds) v.rounds[pos--] = 0;
            if (pos < 0) break;
            ++v.rounds[pos];
        }
        return out;
    }
    std::set<DistillationVector> dedup;
    if (contains(space.strategies, Strategy::kAlpha)) {
        for (int k = 0; k <= space.max_rounds; ++k) {
            dedup.insert(DistillationVector::uniform(levels, k));
        }
    }
    if (contains(space.strategies, Strategy::kBeta)) {
        for (int k = 0; k <= space.max_rounds; ++k) {
            dedup.insert(DistillationVector::initial_only(levels, k));
        }
    }
    return {dedup.begin(), dedup.end()};
}

// Walks every (protocol, N, vector) combination of the space in a fixed
// order. All-zero vectors are emitted once per N, labelled `none` when the
// space admits it.
void for_each_candidate(const OptimizeInputs& inputs, const SearchSpace& space,
                        const std::function<void(const Candidate&)>& visit) {
    validate(space);
    validate(inputs.noise);
    const bool want_none = contains(space.protocols, Protocol::kNone);
    std::vector<Protocol> chain_protocols;
    for (Protocol p : {Protocol::kDeutsch, Protocol::kDuer}) {
        if (contains(space.protocols, p)) chain_protocols.push_back(p);
    }

    const ChainEvaluator evaluator(inputs.noise);
    for (int levels = space.min_level; levels <= space.max_level; ++levels) {
        const LinkParams link = inputs.link.with_nesting(levels);
        bool zero_vector_done = false;
        std::vector<Protocol> protocols = chain_protocols;
        if (protocols.empty() && want_none) protocols.push_back(Protocol::kDeutsch);

        for (Protocol protocol : protocols) {
            for (const DistillationVector& rounds : level_vectors(space, levels)) {
                const bool zero = rounds.all_zero();
                if (zero && zero_vector_done) continue;
                if (!zero && !contains(space.protocols, protocol)) continue;

                Candidate cand;
                cand.protocol = zero && want_none ? Protocol::kNone : protocol;
                cand.levels = levels;
                cand.rounds = rounds;
                cand.strategy = classify_strategy(rounds);

                RepeaterConfig cfg;
                cfg.protocol = cand.protocol == Protocol::kNone ? Protocol::kDeutsch : cand.protocol;
                cfg.link = link;
                cfg.rounds = rounds;
                cfg.noise = inputs.noise;
                cfg.input_kind = inputs.input_kind;
                cfg.initial_fidelity = inputs.initial_fidelity;
                cfg.cc_mode = space.cc_mode;
                cand.result = evaluate(evaluator, cfg);
                if (cand.protocol == Protocol::kNone) cand.result.memories = 1;

                visit(cand);
                if (zero) zero_vector_done = true;
            }
        }
    }
}

}  // namespace

void validate(const SearchSpace& space) {
    if (space.min_level < 0 || space.max_level < space.min_level) {
        throw std::invalid_argument("SearchSpace: bad nesting-level range");
    }
    if (space.max_level > 12) throw std::invalid_argument("SearchSpace: N above 12 is not sensible");
    if (space.max_rounds < 0) throw std::invalid_argument("SearchSpace: max_rounds must be >= 0");
    if (space.strategies.empty()) throw std::invalid_argument("SearchSpace: no strategies");
    if (space.protocols.empty()) throw std::invalid_argument("SearchSpace: no protocols");
}

bool candidate_better(const Candidate& lhs, const Candidate& rhs) {
    if (lhs.result.key_rate != rhs.result.key_rate) {
        return lhs.result.key_rate > rhs.result.key_rate;
    }
    if (lhs.result.memories != rhs.result.memories) return lhs.result.memories < rhs.result.memories;
    if (lhs.levels != rhs.levels) return lhs.levels < rhs.levels;
    if (lhs.rounds != rhs.rounds) return lhs.rounds < rhs.rounds;
    return protocol_rank(lhs.protocol) < protocol_rank(rhs.protocol);
}

Candidate optimize(const OptimizeInputs& inputs, const SearchSpace& space) {
    std::optional<Candidate> best;
    for_each_candidate(inputs, space, [&](const Candidate& cand) {
        if (!best || candidate_better(cand, *best)) best = cand;
    });
    if (!best) throw std::logic_error("optimize: empty search space");
    return *best;
}

PartitionResult optimize_fixed_memory(int total_memories, const OptimizeInputs& inputs,
                                      const SearchSpace& space) {
    if (total_memories < 1 || total_memories > 32) {
        throw std::invalid_argument("optimize_fixed_memory: M must lie in [1,32]");
    }
    PartitionResult out;
    out.total_memories = total_memories;
    out.best_per_size.assign(static_cast<size_t>(total_memories), std::nullopt);

    for_each_candidate(inputs, space, [&](const Candidate& cand) {
        const std::int64_t m = cand.result.memories;
        if (m < 1 || m > total_memories) return;
        auto& slot = out.best_per_size[static_cast<size_t>(m - 1)];
        if (!slot || candidate_better(cand, *slot)) slot = cand;
    });

    // Per-setup rates m*K_m; sizes without a feasible configuration give 0.
    std::vector<double> setup_rate(static_cast<size_t>(total_memories), 0.0);
    for (int m = 1; m <= total_memories; ++m) {
        const auto& slot = out.best_per_size[static_cast<size_t>(m - 1)];
        if (slot) setup_rate[static_cast<size_t>(m - 1)] = m * slot->result.key_rate;
    }

    // Enumerate solutions of sum s_m m = M, larger parts first, so the first
    // maximum found prefers fewer, bigger setups.
    std::vector<int> multiplicity(static_cast<size_t>(total_memories), 0);
    std::optional<SetupPartition> best;
    std::function<void(int, int, double)> recurse = [&](int part, int remaining, double rate_sum) {
        if (remaining == 0) {
            const double key = rate_sum / total_memories;
            if (!best || key > best->key_rate) best = SetupPartition{multiplicity, key};
            return;
        }
        if (part < 1) return;
        const int max_count = remaining / part;
        for (int count = max_count; count >= 0; --count) {
            multiplicity[static_cast<size_t>(part - 1)] = count;
            recurse(part - 1, remaining - count * part,
                    rate_sum + count * setup_rate[static_cast<size_t>(part - 1)]);
        }
        multiplicity[static_cast<size_t>(part - 1)] = 0;
    };
    recurse(total_memories, total_memories, 0.0);
    out.best = *best;
    return out;
}

std::vector<GridCell> grid_scan(const std::vector<double>& f0_values,
                                const std::vector<double>& p_gate_values,
                                const OptimizeInputs& base_inputs, const SearchSpace& space,
                                double cutoff, int threads) {
    if (f0_values.empty() || p_gate_values.empty()) {
        throw std::invalid_argument("grid_scan: empty axis");
    }
    const std::int64_t cells = static_cast<std::int64_t>(f0_values.size()) *
                               static_cast<std::int64_t>(p_gate_values.size());
    std::vector<GridCell> grid(static_cast<size_t>(cells));
    parallel_for_static(cells, threads, [&](std::int64_t index) {
        const size_t fi = static_cast<size_t>(index) / p_gate_values.size();
        const size_t pi = static_cast<size_t>(index) % p_gate_values.size();
        OptimizeInputs inputs = base_inputs;
        inputs.initial_fidelity = f0_values[fi];
        inputs.noise.p_gate = p_gate_values[pi];
        GridCell& cell = grid[static_cast<size_t>(index)];
        cell.initial_fidelity = inputs.initial_fidelity;
        cell.p_gate = inputs.noise.p_gate;
        cell.best = optimize(inputs, space);
        cell.below_cutoff = cell.best.result.key_rate < cutoff;
    });
    return grid;
}

CcImpactResult cc_impact(const OptimizeInputs& inputs, const SearchSpace& space) {
    SearchSpace with_cc = space;
    with_cc.cc_mode = CcMode::kWithCc;
    SearchSpace no_cc = space;
    no_cc.cc_mode = CcMode::kNoCc;

    CcImpactResult out;
    out.with_cc = optimize(inputs, with_cc);
    out.no_cc = optimize(inputs, no_cc);
    out.rel_change = rel_change(out.no_cc.result.key_rate, out.with_cc.result.key_rate);
    return out;
}

}  // namespace qrep
