// Noisy distillation and swapping maps.
//
// Every map is evaluated by explicit circuit simulation on the density-matrix
// engine: single-qubit operations are perfect, each two-qubit gate acts
// ideally with probability p_gate and otherwise fully depolarizes the two
// qubits it touches. Outputs are projected back onto the Bell-diagonal form;
// the discarded off-diagonal weight is checked to be numerical noise.
//
// PairMapKernel exploits that the unnormalized output of each circuit is
// bilinear in the two input coefficient vectors: probing the circuit on the
// sixteen Bell-basis input pairs yields an exact 5x16 tensor that replays the
// map in a few dozen flops. Chain sweeps use the kernels; the circuit path
// stays the reference.
#pragma once

#include <array>

#include "qrep/bell_state.hpp"
#include "qrep/density_matrix.hpp"

namespace qrep {

struct NoiseParams {
    double p_gate = 1.0;        // probability the two-qubit gate acts ideally
    double eta_detector = 1.0;  // per-click detector efficiency

    bool operator==(const NoiseParams&) const = default;
};

void validate(const NoiseParams& noise);

struct MapOutcome {
    BellCoefficients state;
    double success_prob = 0.0;
};

// Below this success probability a distillation round is reported as
// impossible; downstream rates collapse to zero.
inline constexpr double kMinSuccessProbability = 1e-15;

// p_gate * U rho U^dag + (1 - p_gate) * (I/4 on the two acted qubits (x) rest).
DensityMatrix noisy_two_qubit_gate(const DensityMatrix& rho, const Mat4& ideal_unitary,
                                   int qubit_hi, int qubit_lo, double p_gate);

// One recurrence-protocol round on two identical-role pairs: bilateral X
// rotations, one noisy CNOT per party, coincidence Z measurement on the
// second pair.
MapOutcome deutsch_round(const BellCoefficients& pair1, const BellCoefficients& pair2,
                         const NoiseParams& noise);

// Entanglement pumping round: same circuit, held pair distilled against a
// fresh elementary pair.
MapOutcome pump_round(const BellCoefficients& current, const BellCoefficients& elementary,
                      const NoiseParams& noise);

// Entanglement swapping via a Bell measurement at the middle station (one
// noisy CNOT, perfect measurements, Pauli-frame correction). Success
// probability is 1 before any detector-efficiency factor.
MapOutcome entanglement_swap(const BellCoefficients& left, const BellCoefficients& right,
                             const NoiseParams& noise);

// Two-fold detector click: p -> eta^2 p.
double apply_detector_efficiency(double success_prob, const NoiseParams& noise);

class PairMapKernel {
  public:
    enum class Kind { kDistill, kSwap };

    PairMapKernel(Kind kind, double p_gate);

    // Unnormalized output weights (summing to the success probability).
    struct Raw {
        std::array<double, 4> weights{};
        double success = 0.0;
    };
    Raw apply_raw(const BellCoefficients& pair1, const BellCoefficients& pair2) const;

    MapOutcome apply(const BellCoefficients& pair1, const BellCoefficients& pair2) const;

    double p_gate() const { return p_gate_; }

  private:
    double p_gate_;
    std::array<std::array<double, 16>, 5> tensor_{};  // rows a,b,c,d,success
};

}  // namespace qrep
