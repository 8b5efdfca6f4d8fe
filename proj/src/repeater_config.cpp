#include "qrep/repeater_config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qrep {

std::string to_string(Protocol p) {
    switch (p) {
        case Protocol::kDeutsch: return "deutsch";
        case Protocol::kDuer: return "duer";
        case Protocol::kNone: return "none";
    }
    return "?";
}

std::string to_string(InputStateKind k) {
    return k == InputStateKind::kDepolarized ? "depolarized" : "binary";
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::kAlpha: return "alpha";
        case Strategy::kBeta: return "beta";
        case Strategy::kGamma: return "gamma";
    }
    return "?";
}

Protocol protocol_from_string(const std::string& name) {
    if (name == "deutsch") return Protocol::kDeutsch;
    if (name == "duer") return Protocol::kDuer;
    if (name == "none") return Protocol::kNone;
    throw std::invalid_argument("unknown protocol: " + name);
}

InputStateKind input_kind_from_string(const std::string& name) {
    if (name == "depolarized") return InputStateKind::kDepolarized;
    if (name == "binary") return InputStateKind::kBinary;
    throw std::invalid_argument("unknown input state: " + name);
}

Strategy strategy_from_string(const std::string& name) {
    if (name == "alpha") return Strategy::kAlpha;
    if (name == "beta") return Strategy::kBeta;
    if (name == "gamma") return Strategy::kGamma;
    throw std::invalid_argument("unknown strategy: " + name);
}

double LinkParams::segment_length_km() const {
    return total_length_km / static_cast<double>(1LL << nesting_levels);
}

double LinkParams::time_unit_s() const {
    return segment_length_km() / fiber_speed_km_s;
}

double LinkParams::p0() const {
    return std::pow(10.0, -attenuation_db_per_km * segment_length_km() / 10.0);
}

LinkParams LinkParams::with_nesting(int levels) const {
    LinkParams out = *this;
    out.nesting_levels = levels;
    return out;
}

void validate(const LinkParams& link) {
    if (!(link.total_length_km > 0.0)) throw std::invalid_argument("LinkParams: L must be positive");
    if (link.nesting_levels < 0 || link.nesting_levels > 30) {
        throw std::invalid_argument("LinkParams: N must lie in [0,30]");
    }
    if (!(link.attenuation_db_per_km >= 0.0)) {
        throw std::invalid_argument("LinkParams: attenuation must be non-negative");
    }
    if (!(link.fiber_speed_km_s > 0.0)) {
        throw std::invalid_argument("LinkParams: fiber speed must be positive");
    }
    if (!(link.p0() > 0.0 && link.p0() <= 1.0)) {
        throw std::invalid_argument("LinkParams: derived P0 left (0,1]");
    }
}

DistillationVector DistillationVector::zeros(int levels) {
    return DistillationVector{std::vector<int>(static_cast<size_t>(levels) + 1, 0)};
}

DistillationVector DistillationVector::uniform(int levels, int k) {
    return DistillationVector{std::vector<int>(static_cast<size_t>(levels) + 1, k)};
}

DistillationVector DistillationVector::initial_only(int levels, int k) {
    auto v = zeros(levels);
    v.rounds[0] = k;
    return v;
}

int DistillationVector::total_rounds() const {
    int sum = 0;
    for (int k : rounds) sum += k;
    return sum;
}

int DistillationVector::zero_entries() const {
    return static_cast<int>(std::count(rounds.begin(), rounds.end(), 0));
}

bool DistillationVector::all_zero() const {
    return zero_entries() == static_cast<int>(rounds.size());
}

std::string DistillationVector::to_string(char separator) const {
    std::ostringstream out;
    for (size_t i = 0; i < rounds.size(); ++i) {
        if (i) out << separator;
        out << rounds[i];
    }
    return out.str();
}

DistillationVector DistillationVector::parse(const std::string& text) {
    DistillationVector v;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        size_t used = 0;
        const int value = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument("bad distillation vector: " + text);
        v.rounds.push_back(value);
    }
    if (v.rounds.empty()) throw std::invalid_argument("empty distillation vector");
    validate(v);
    return v;
}

void validate(const DistillationVector& k) {
    if (k.rounds.empty()) throw std::invalid_argument("DistillationVector: needs at least one level");
    for (int r : k.rounds) {
        if (r < 0) throw std::invalid_argument("DistillationVector: rounds must be non-negative");
    }
}

Strategy classify_strategy(const DistillationVector& k) {
    const bool uniform = std::all_of(k.rounds.begin(), k.rounds.end(),
                                     [&](int r) { return r == k.rounds.front(); });
    if (uniform) return Strategy::kAlpha;
    const bool tail_zero = std::all_of(k.rounds.begin() + 1, k.rounds.end(),
                                       [](int r) { return r == 0; });
    if (tail_zero) return Strategy::kBeta;
    return Strategy::kGamma;
}

BellCoefficients RepeaterConfig::input_state() const {
    return input_kind == InputStateKind::kDepolarized ? depolarized(initial_fidelity)
                                                      : binary(initial_fidelity);
}

void validate(const RepeaterConfig& cfg) {
    validate(cfg.link);
    validate(cfg.rounds);
    validate(cfg.noise);
    if (cfg.rounds.levels() != cfg.link.nesting_levels) {
        throw std::invalid_argument("RepeaterConfig: distillation vector length must be N+1");
    }
    if (!(cfg.initial_fidelity >= 0.0 && cfg.initial_fidelity <= 1.0)) {
        throw std::invalid_argument("RepeaterConfig: F0 must lie in [0,1]");
    }
    if (cfg.protocol == Protocol::kNone && !cfg.rounds.all_zero()) {
        throw std::invalid_argument("RepeaterConfig: protocol none requires an all-zero vector");
    }
}

}  // namespace qrep
