#include "qrep/repeater_rate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qrep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool too_small(double p) {
    return p < kMinSuccessProbability;
}

double pow2(int n) {
    return static_cast<double>(1LL << n);
}

// Per-level accumulators from the closed-form solutions. For the recurrence
// protocol:
//   A(n) = (3/2)^{k_n} prod_{i=1}^{k_n} 1/P_D(i,n)
//   B(n) = 2^n sum_{i=0}^{k_n-1} (3/2)^i prod_{j=0}^{i} 1/P_D(k_n - j, n)
// For the pumping protocol:
//   A(n) = prod_{i=1}^{k_n} 1/P_D(i,n) + sum_{i=0}^{k_n-1} prod_{j=0}^{i} 1/P_D(k_n - j, n)
//   B(n) = 2^n sum_{i=0}^{k_n-1} prod_{j=0}^{i} 1/P_D(k_n - j, n)
// with empty sums 0 and empty products 1.
struct LevelFactors {
    double a = 1.0;
    double b = 0.0;
};

LevelFactors level_factors(Protocol protocol, const ProbabilityTrace& trace, int level,
                           int rounds_at_level) {
    LevelFactors f;
    const auto& pd = trace.distill_success[level];
    if (rounds_at_level == 0) return f;

    if (protocol == Protocol::kDuer) {
        double descending = 1.0;  // prod over the top i+1 rounds
        double sum = 0.0;
        for (int i = 0; i < rounds_at_level; ++i) {
            const double p = pd[rounds_at_level - 1 - i];
            if (too_small(p)) return LevelFactors{kInf, kInf};
            descending /= p;
            sum += descending;
        }
        f.a = descending + sum;
        f.b = pow2(level) * sum;
    } else {
        double all = 1.0;
        for (int i = 0; i < rounds_at_level; ++i) {
            const double p = pd[i];
            if (too_small(p)) return LevelFactors{kInf, kInf};
            all *= 1.5 / p;
        }
        f.a = all;
        double descending = 1.0;
        double weight = 1.0;  // (3/2)^i
        double sum = 0.0;
        for (int i = 0; i < rounds_at_level; ++i) {
            descending /= pd[rounds_at_level - 1 - i];
            sum += weight * descending;
            weight *= 1.5;
        }
        f.b = pow2(level) * sum;
    }
    return f;
}

double tau_closed_form(Protocol protocol, const ProbabilityTrace& trace,
                       const DistillationVector& k, int levels, CcMode cc) {
    validate_against(trace, k, levels);
    if (too_small(trace.p0)) return kInf;
    const bool with_cc = cc == CcMode::kWithCc;

    std::vector<LevelFactors> f(static_cast<size_t>(levels) + 1);
    for (int n = 0; n <= levels; ++n) {
        f[n] = level_factors(protocol, trace, n, k.rounds[n]);
        if (std::isinf(f[n].a)) return kInf;
    }

    const double tau_level0 = (2.0 / trace.p0) * f[0].a + (with_cc ? f[0].b : 0.0);

    // prod_{m=i}^{levels} A(m) / P_ES(m), with P_ES(0) treated as 1.
    auto chain_product = [&](int from) {
        double prod = 1.0;
        for (int m = from; m <= levels; ++m) {
            const double pes = m == 0 ? 1.0 : trace.swap_success[m];
            if (too_small(pes)) return kInf;
            prod *= f[m].a / pes;
        }
        return prod;
    };

    double tau = tau_level0 * std::pow(1.5, levels) * chain_product(1);
    if (with_cc) {
        for (int i = 1; i <= levels; ++i) {
            const double scale = std::pow(1.5, levels - i);
            tau += scale * pow2(i - 1) * chain_product(i);
            tau += scale * f[i].b * chain_product(i + 1);
        }
    }
    return tau;
}

}  // namespace

double tau_recurrence(Protocol protocol, const ProbabilityTrace& trace,
                      const DistillationVector& k, int levels, CcMode cc) {
    validate_against(trace, k, levels);
    if (protocol == Protocol::kNone && !k.all_zero()) {
        throw std::invalid_argument("tau: protocol none requires an all-zero vector");
    }
    if (too_small(trace.p0)) return kInf;
    const double cc_factor = cc == CcMode::kWithCc ? 1.0 : 0.0;

    double tau = 2.0 / trace.p0;
    double tau_entry = tau;  // tau(0, n): generation time of a fresh pair at this level
    for (int n = 0; n <= levels; ++n) {
        if (n > 0) {
            const double pes = trace.swap_success[n];
            if (too_small(pes)) return kInf;
            tau = (1.5 * tau + cc_factor * pow2(n - 1)) / pes;
            tau_entry = tau;
        }
        for (int i = 1; i <= k.rounds[n]; ++i) {
            const double pd = trace.distill_success[n][i - 1];
            if (too_small(pd)) return kInf;
            if (protocol == Protocol::kDuer) {
                tau = (tau + tau_entry + cc_factor * pow2(n)) / pd;
            } else {
                tau = (1.5 * tau + cc_factor * pow2(n)) / pd;
            }
        }
    }
    return tau;
}

double tau_deutsch(const ProbabilityTrace& trace, const DistillationVector& k, int levels,
                   CcMode cc) {
    return tau_recurrence(Protocol::kDeutsch, trace, k, levels, cc);
}

double tau_duer(const ProbabilityTrace& trace, const DistillationVector& k, int levels,
                CcMode cc) {
    return tau_recurrence(Protocol::kDuer, trace, k, levels, cc);
}

double tau_deutsch_closed_form(const ProbabilityTrace& trace, const DistillationVector& k,
                               int levels, CcMode cc) {
    return tau_closed_form(Protocol::kDeutsch, trace, k, levels, cc);
}

double tau_duer_closed_form(const ProbabilityTrace& trace, const DistillationVector& k,
                            int levels, CcMode cc) {
    return tau_closed_form(Protocol::kDuer, trace, k, levels, cc);
}

double repeater_rate(double tau_t0_units, const LinkParams& link) {
    validate(link);
    if (!(tau_t0_units > 0.0) || std::isinf(tau_t0_units)) return 0.0;
    const double rate = 1.0 / (link.time_unit_s() * tau_t0_units);
    return rate < kRateUnderflow ? 0.0 : rate;
}

double repeater_rate_nc_deutsch(const ProbabilityTrace& trace, const DistillationVector& k,
                                int levels, const LinkParams& link) {
    validate_against(trace, k, levels);
    validate(link);
    double rate = trace.p0 / (2.0 * link.time_unit_s());
    rate *= std::pow(2.0 / 3.0, levels + k.total_rounds());
    for (int n = 1; n <= levels; ++n) rate *= trace.swap_success[n];
    for (int n = 0; n <= levels; ++n) {
        for (double pd : trace.distill_success[n]) rate *= pd;
    }
    return rate < kRateUnderflow ? 0.0 : rate;
}

double repeater_rate_nc_duer(const ProbabilityTrace& trace, const DistillationVector& k,
                             int levels, const LinkParams& link) {
    validate_against(trace, k, levels);
    validate(link);
    double rate = trace.p0 / (2.0 * link.time_unit_s());
    rate *= std::pow(2.0 / 3.0, levels);
    for (int n = 0; n <= levels; ++n) {
        const double pes = n == 0 ? 1.0 : trace.swap_success[n];
        const auto f = level_factors(Protocol::kDuer, trace, n, k.rounds[n]);
        if (std::isinf(f.a)) return 0.0;
        rate *= pes / f.a;
    }
    return rate < kRateUnderflow ? 0.0 : rate;
}

}  // namespace qrep
