// Dense density-matrix engine for two- and four-qubit systems.
//
// Small and exact on purpose: the distillation and swapping circuits act on
// at most 16x16 matrices, so everything is done with full dense algebra.
// Qubit 0 is the most significant bit of the computational basis index.
#pragma once

#include <array>
#include <complex>
#include <vector>

#include "qrep/bell_state.hpp"

namespace qrep {

using Complex = std::complex<double>;
using Mat2 = std::array<Complex, 4>;    // row-major 2x2
using Mat4 = std::array<Complex, 16>;   // row-major 4x4

class DensityMatrix {
  public:
    explicit DensityMatrix(int num_qubits);

    // rho = a P|phi+> + b P|phi-> + c P|psi+> + d P|psi->  (two qubits)
    static DensityMatrix from_bell_mixture(const BellCoefficients& s);
    static DensityMatrix tensor(const DensityMatrix& lhs, const DensityMatrix& rhs);

    int num_qubits() const { return num_qubits_; }
    int dim() const { return dim_; }

    Complex operator()(int row, int col) const { return m_[row * dim_ + col]; }
    Complex& operator()(int row, int col) { return m_[row * dim_ + col]; }

    double trace() const;
    void scale(double factor);
    void accumulate(const DensityMatrix& other, double weight = 1.0);

    void apply_single_qubit(const Mat2& u, int qubit);
    void apply_two_qubit(const Mat4& u, int qubit_hi, int qubit_lo);

    // Zeroes every component where `qubit` is not in computational state
    // `outcome`; the trace afterwards is the branch probability.
    void project_z(int qubit, int outcome);

    // Partial trace over the listed qubits; the survivors keep their order.
    DensityMatrix trace_out(const std::vector<int>& qubits) const;

    // Throws std::invalid_argument unless Hermitian and unit trace within
    // `tol` and the diagonal is non-negative within 1e-10.
    void check_valid(double tol = 1e-12) const;

    double max_hermiticity_defect() const;

  private:
    int num_qubits_;
    int dim_;
    std::vector<Complex> m_;
};

// Diagonal Bell-basis weights of a two-qubit matrix plus the largest
// off-diagonal magnitude in that basis (unnormalized; weights sum to the
// trace of rho).
struct BellReadout {
    std::array<double, 4> weights{};
    double max_off_diagonal = 0.0;
    double total() const { return weights[0] + weights[1] + weights[2] + weights[3]; }
};

BellReadout bell_readout(const DensityMatrix& rho);

// Common gate matrices.
Mat2 pauli_x();
Mat2 pauli_z();
Mat2 hadamard();
Mat2 rotation_x(double angle);  // exp(-i angle X / 2)
Mat4 cnot();
Mat4 identity4();

}  // namespace qrep
