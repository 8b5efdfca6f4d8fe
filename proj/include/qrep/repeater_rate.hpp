// Waiting-time recurrences, their closed-form solutions, and repeater rates.
//
// Times tau are kept in units of the fundamental communication time T0.
// The recurrences are the authoritative route:
//
//   tau(0, 0)     = 2 / P0
//   tau(0, n>0)   = [ 3/2 tau(k_{n-1}, n-1) + 2^{n-1} ] / P_ES(n)
//   tau(i>0, n)   = [ 3/2 tau(i-1, n)       + 2^n     ] / P_D(i, n)       (recurrence protocol)
//   tau(i>0, n)   = [ tau(i-1, n) + tau(0, n) + 2^n   ] / P_D(i, n)       (pumping protocol)
//
// The no-classical-communication variants drop the 2^{n-1} and 2^n
// acknowledgment terms. The closed forms reproduce the recurrences to
// numerical precision and are kept as an independent validation route.
#pragma once

#include "qrep/chain_trace.hpp"
#include "qrep/repeater_config.hpp"

namespace qrep {

// Rates smaller than this are flushed to exactly zero.
inline constexpr double kRateUnderflow = 1e-300;

double tau_deutsch(const ProbabilityTrace& trace, const DistillationVector& k, int levels,
                   CcMode cc = CcMode::kWithCc);
double tau_duer(const ProbabilityTrace& trace, const DistillationVector& k, int levels,
                CcMode cc = CcMode::kWithCc);

double tau_recurrence(Protocol protocol, const ProbabilityTrace& trace,
                      const DistillationVector& k, int levels, CcMode cc);

// Appendix-style closed forms (independent of the recurrence evaluation).
double tau_deutsch_closed_form(const ProbabilityTrace& trace, const DistillationVector& k,
                               int levels, CcMode cc = CcMode::kWithCc);
double tau_duer_closed_form(const ProbabilityTrace& trace, const DistillationVector& k,
                            int levels, CcMode cc = CcMode::kWithCc);

// R = 1 / (T0 tau); infinite tau maps to 0.
double repeater_rate(double tau_t0_units, const LinkParams& link);

// Product-form no-classical-communication rates. The printed product for the
// recurrence protocol starts at level 1, but consistency with the recurrence
// requires the level-0 distillation factors as well; they are included here.
double repeater_rate_nc_deutsch(const ProbabilityTrace& trace, const DistillationVector& k,
                                int levels, const LinkParams& link);
double repeater_rate_nc_duer(const ProbabilityTrace& trace, const DistillationVector& k,
                             int levels, const LinkParams& link);

}  // namespace qrep
