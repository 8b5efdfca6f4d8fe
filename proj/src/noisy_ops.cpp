#include "qrep/noisy_ops.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qrep {

namespace {

constexpr double kOffDiagonalTolerance = 1e-10;

// Success probabilities accumulate ~1e-16 of rounding; anything further
// outside [0,1] is a real bug.
double clamp_probability(double p) {
    if (p < -1e-12 || p > 1.0 + 1e-12) {
        throw std::logic_error("noisy_ops: success probability left [0,1]");
    }
    return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

struct RawOutcome {
    std::array<double, 4> weights{};
    double success = 0.0;
};

BellCoefficients normalized_state(const RawOutcome& raw) {
    const double p = raw.success;
    return bell_checked(raw.weights[0] / p, raw.weights[1] / p, raw.weights[2] / p,
                        raw.weights[3] / p);
}

RawOutcome readout_unnormalized(const DensityMatrix& rho) {
    const BellReadout r = bell_readout(rho);
    if (r.max_off_diagonal > kOffDiagonalTolerance) {
        throw std::logic_error("noisy_ops: output left the Bell-diagonal family");
    }
    RawOutcome out;
    out.weights = r.weights;
    out.success = clamp_probability(r.total());
    return out;
}

// Qubits: 0 = Alice/pair1, 1 = Bob/pair1, 2 = Alice/pair2, 3 = Bob/pair2.
// Pair 2 is measured; coinciding outcomes are kept.
RawOutcome distill_circuit(const BellCoefficients& pair1, const BellCoefficients& pair2,
                           double p_gate) {
    DensityMatrix rho = DensityMatrix::tensor(DensityMatrix::from_bell_mixture(pair1),
                                              DensityMatrix::from_bell_mixture(pair2));
    const Mat2 rot_alice = rotation_x(std::numbers::pi / 2.0);
    const Mat2 rot_bob = rotation_x(-std::numbers::pi / 2.0);
    rho.apply_single_qubit(rot_alice, 0);
    rho.apply_single_qubit(rot_alice, 2);
    rho.apply_single_qubit(rot_bob, 1);
    rho.apply_single_qubit(rot_bob, 3);
    rho = noisy_two_qubit_gate(rho, cnot(), 0, 2, p_gate);
    rho = noisy_two_qubit_gate(rho, cnot(), 1, 3, p_gate);

    DensityMatrix kept(2);
    for (int outcome : {0, 1}) {
        DensityMatrix branch = rho;
        branch.project_z(2, outcome);
        branch.project_z(3, outcome);
        kept.accumulate(branch.trace_out({2, 3}));
    }
    return readout_unnormalized(kept);
}

// Qubits: 0 = Alice, 1 and 2 at the middle station, 3 = Bob. The station
// measures qubit 1 in X and qubit 2 in Z; Bob's Pauli frame absorbs the
// outcome, so all four branches are kept.
RawOutcome swap_circuit(const BellCoefficients& left, const BellCoefficients& right,
                        double p_gate) {
    DensityMatrix rho = DensityMatrix::tensor(DensityMatrix::from_bell_mixture(left),
                                              DensityMatrix::from_bell_mixture(right));
    rho = noisy_two_qubit_gate(rho, cnot(), 1, 2, p_gate);
    rho.apply_single_qubit(hadamard(), 1);

    DensityMatrix kept(2);
    for (int x = 0; x < 2; ++x) {
        for (int z = 0; z < 2; ++z) {
            DensityMatrix branch = rho;
            branch.project_z(1, x);
            branch.project_z(2, z);
            DensityMatrix pair = branch.trace_out({1, 2});  // qubits: 0 = Alice, 1 = Bob
            if (z == 1) pair.apply_single_qubit(pauli_x(), 1);
            if (x == 1) pair.apply_single_qubit(pauli_z(), 1);
            kept.accumulate(pair);
        }
    }
    return readout_unnormalized(kept);
}

MapOutcome finish_distill(const RawOutcome& raw) {
    if (raw.success < kMinSuccessProbability) {
        throw std::domain_error("distillation impossible: success probability below 1e-15");
    }
    return MapOutcome{normalized_state(raw), raw.success};
}

}  // namespace

void validate(const NoiseParams& noise) {
    if (!(noise.p_gate >= 0.0 && noise.p_gate <= 1.0)) {
        throw std::invalid_argument("NoiseParams: p_gate must lie in [0,1]");
    }
    if (!(noise.eta_detector >= 0.0 && noise.eta_detector <= 1.0)) {
        throw std::invalid_argument("NoiseParams: eta_detector must lie in [0,1]");
    }
}

DensityMatrix noisy_two_qubit_gate(const DensityMatrix& rho, const Mat4& ideal_unitary,
                                   int qubit_hi, int qubit_lo, double p_gate) {
    rho.check_valid(1e-9);
    DensityMatrix ideal = rho;
    ideal.apply_two_qubit(ideal_unitary, qubit_hi, qubit_lo);
    if (p_gate >= 1.0) return ideal;

    // (1-p): the acted pair becomes I/4, tensored with the untouched rest.
    DensityMatrix rest = rho.trace_out({qubit_hi, qubit_lo});
    DensityMatrix mixed(rho.num_qubits());
    const int n = rho.num_qubits();
    const int sh = 1 << (n - 1 - qubit_hi);
    const int sl = 1 << (n - 1 - qubit_lo);

    auto rest_index = [&](int full) {
        int compact = 0;
        for (int q = 0; q < n; ++q) {
            if (q == qubit_hi || q == qubit_lo) continue;
            compact = (compact << 1) | ((full >> (n - 1 - q)) & 1);
        }
        return compact;
    };

    for (int r = 0; r < rho.dim(); ++r) {
        for (int c = 0; c < rho.dim(); ++c) {
            if ((r & (sh | sl)) != (c & (sh | sl))) continue;
            mixed(r, c) = 0.25 * rest(rest_index(r), rest_index(c));
        }
    }

    ideal.scale(p_gate);
    ideal.accumulate(mixed, 1.0 - p_gate);
    return ideal;
}

MapOutcome deutsch_round(const BellCoefficients& pair1, const BellCoefficients& pair2,
                         const NoiseParams& noise) {
    validate(noise);
    return finish_distill(distill_circuit(pair1, pair2, noise.p_gate));
}

MapOutcome pump_round(const BellCoefficients& current, const BellCoefficients& elementary,
                      const NoiseParams& noise) {
    return deutsch_round(current, elementary, noise);
}

MapOutcome entanglement_swap(const BellCoefficients& left, const BellCoefficients& right,
                             const NoiseParams& noise) {
    validate(noise);
    const RawOutcome raw = swap_circuit(left, right, noise.p_gate);
    return MapOutcome{normalized_state(raw), raw.success};
}

double apply_detector_efficiency(double success_prob, const NoiseParams& noise) {
    if (!(success_prob >= 0.0 && success_prob <= 1.0)) {
        throw std::invalid_argument("apply_detector_efficiency: probability outside [0,1]");
    }
    return noise.eta_detector * noise.eta_detector * success_prob;
}

PairMapKernel::PairMapKernel(Kind kind, double p_gate) : p_gate_(p_gate) {
    for (int i = 0; i < 4; ++i) {
        BellCoefficients lhs{};
        lhs.a = i == 0;
        lhs.b = i == 1;
        lhs.c = i == 2;
        lhs.d = i == 3;
        for (int j = 0; j < 4; ++j) {
            BellCoefficients rhs{};
            rhs.a = j == 0;
            rhs.b = j == 1;
            rhs.c = j == 2;
            rhs.d = j == 3;
            const RawOutcome raw = kind == Kind::kDistill ? distill_circuit(lhs, rhs, p_gate)
                                                          : swap_circuit(lhs, rhs, p_gate);
            for (int m = 0; m < 4; ++m) tensor_[m][i * 4 + j] = raw.weights[m];
            tensor_[4][i * 4 + j] = raw.success;
        }
    }
}

PairMapKernel::Raw PairMapKernel::apply_raw(const BellCoefficients& pair1,
                                            const BellCoefficients& pair2) const {
    const std::array<double, 4> u = {pair1.a, pair1.b, pair1.c, pair1.d};
    const std::array<double, 4> v = {pair2.a, pair2.b, pair2.c, pair2.d};
    Raw out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double w = u[i] * v[j];
            if (w == 0.0) continue;
            for (int m = 0; m < 4; ++m) out.weights[m] += tensor_[m][i * 4 + j] * w;
            out.success += tensor_[4][i * 4 + j] * w;
        }
    }
    out.success = clamp_probability(out.success);
    return out;
}

MapOutcome PairMapKernel::apply(const BellCoefficients& pair1,
                                const BellCoefficients& pair2) const {
    const Raw raw = apply_raw(pair1, pair2);
    if (raw.success < kMinSuccessProbability) {
        throw std::domain_error("distillation impossible: success probability below 1e-15");
    }
    const double p = raw.success;
    return MapOutcome{
        bell_checked(raw.weights[0] / p, raw.weights[1] / p, raw.weights[2] / p, raw.weights[3] / p),
        p};
}

}  // namespace qrep
