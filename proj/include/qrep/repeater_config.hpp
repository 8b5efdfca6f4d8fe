// Repeater chain configuration: link geometry, protocol choice, distillation
// vector, noise, and the classical-communication toggle.
#pragma once

#include <string>
#include <vector>

#include "qrep/bell_state.hpp"
#include "qrep/noisy_ops.hpp"

namespace qrep {

enum class Protocol { kDeutsch, kDuer, kNone };
enum class InputStateKind { kDepolarized, kBinary };
enum class CcMode { kWithCc, kNoCc };
enum class Strategy { kAlpha, kBeta, kGamma };

std::string to_string(Protocol p);
std::string to_string(InputStateKind k);
std::string to_string(Strategy s);
Protocol protocol_from_string(const std::string& name);
InputStateKind input_kind_from_string(const std::string& name);
Strategy strategy_from_string(const std::string& name);

// Chain geometry. The chain spans `total_length_km` split into 2^N segments;
// T0 is the one-way communication time per segment and P0 the transmission
// success of an elementary pair.
struct LinkParams {
    double total_length_km = 600.0;
    int nesting_levels = 0;  // N
    double attenuation_db_per_km = 0.17;
    double fiber_speed_km_s = 2e5;

    double segment_length_km() const;  // L0 = L / 2^N
    double time_unit_s() const;        // T0 = L0 / c
    double p0() const;                 // 10^(-alpha L0 / 10)

    LinkParams with_nesting(int levels) const;

    bool operator==(const LinkParams&) const = default;
};

void validate(const LinkParams& link);

// Distillation rounds per nesting level, (k_0, ..., k_N).
struct DistillationVector {
    std::vector<int> rounds;

    static DistillationVector zeros(int levels);
    static DistillationVector uniform(int levels, int k);       // strategy alpha
    static DistillationVector initial_only(int levels, int k);  // strategy beta

    int levels() const { return static_cast<int>(rounds.size()) - 1; }
    int total_rounds() const;
    int zero_entries() const;
    bool all_zero() const;

    std::string to_string(char separator = ',') const;
    static DistillationVector parse(const std::string& text);

    bool operator==(const DistillationVector&) const = default;
    auto operator<=>(const DistillationVector&) const = default;
};

void validate(const DistillationVector& k);

// Classifies a vector into the strategy family it belongs to; the all-zero
// vector counts as alpha with k = 0.
Strategy classify_strategy(const DistillationVector& k);

struct RepeaterConfig {
    Protocol protocol = Protocol::kDeutsch;
    LinkParams link;
    DistillationVector rounds;
    NoiseParams noise;
    InputStateKind input_kind = InputStateKind::kDepolarized;
    double initial_fidelity = 1.0;
    CcMode cc_mode = CcMode::kWithCc;

    BellCoefficients input_state() const;
};

void validate(const RepeaterConfig& cfg);

}  // namespace qrep
