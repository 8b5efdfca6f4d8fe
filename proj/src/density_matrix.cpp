#include "qrep/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrep {

namespace {

constexpr Complex kI{0.0, 1.0};

int bit_of(int index, int qubit, int num_qubits) {
    return (index >> (num_qubits - 1 - qubit)) & 1;
}

// Bell basis vectors as amplitude arrays over |00>,|01>,|10>,|11>.
constexpr double kInvSqrt2 = 0.70710678118654752440;

const std::array<std::array<double, 4>, 4> kBellBasis = {{
    {kInvSqrt2, 0.0, 0.0, kInvSqrt2},    // |phi+>
    {kInvSqrt2, 0.0, 0.0, -kInvSqrt2},   // |phi->
    {0.0, kInvSqrt2, kInvSqrt2, 0.0},    // |psi+>
    {0.0, kInvSqrt2, -kInvSqrt2, 0.0},   // |psi->
}};

}  // namespace

DensityMatrix::DensityMatrix(int num_qubits)
    : num_qubits_(num_qubits), dim_(1 << num_qubits), m_(static_cast<size_t>(dim_) * dim_) {
    if (num_qubits < 0 || num_qubits > 4) {
        throw std::invalid_argument("DensityMatrix: supported sizes are 0..4 qubits");
    }
}

DensityMatrix DensityMatrix::from_bell_mixture(const BellCoefficients& s) {
    DensityMatrix rho(2);
    const std::array<double, 4> w = {s.a, s.b, s.c, s.d};
    for (int k = 0; k < 4; ++k) {
        const auto& v = kBellBasis[k];
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                rho(r, c) += w[k] * v[r] * v[c];
            }
        }
    }
    return rho;
}

DensityMatrix DensityMatrix::tensor(const DensityMatrix& lhs, const DensityMatrix& rhs) {
    DensityMatrix out(lhs.num_qubits_ + rhs.num_qubits_);
    const int rd = rhs.dim_;
    for (int r1 = 0; r1 < lhs.dim_; ++r1) {
        for (int c1 = 0; c1 < lhs.dim_; ++c1) {
            const Complex v1 = lhs(r1, c1);
            if (v1 == Complex{}) continue;
            for (int r2 = 0; r2 < rd; ++r2) {
                for (int c2 = 0; c2 < rd; ++c2) {
                    out(r1 * rd + r2, c1 * rd + c2) = v1 * rhs(r2, c2);
                }
            }
        }
    }
    return out;
}

double DensityMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += m_[static_cast<size_t>(i) * dim_ + i].real();
    return t;
}

void DensityMatrix::scale(double factor) {
    for (auto& v : m_) v *= factor;
}

void DensityMatrix::accumulate(const DensityMatrix& other, double weight) {
    if (other.dim_ != dim_) throw std::invalid_argument("accumulate: dimension mismatch");
    for (size_t i = 0; i < m_.size(); ++i) m_[i] += weight * other.m_[i];
}

void DensityMatrix::apply_single_qubit(const Mat2& u, int qubit) {
    // rho <- U rho U^dagger, applied as row then column transform.
    const int stride = 1 << (num_qubits_ - 1 - qubit);
    std::vector<Complex> next(m_.size());
    for (int r = 0; r < dim_; ++r) {
        const int rb = bit_of(r, qubit, num_qubits_);
        const int r0 = r & ~stride;
        for (int c = 0; c < dim_; ++c) {
            next[static_cast<size_t>(r) * dim_ + c] =
                u[rb * 2 + 0] * m_[static_cast<size_t>(r0) * dim_ + c] +
                u[rb * 2 + 1] * m_[static_cast<size_t>(r0 | stride) * dim_ + c];
        }
    }
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) {
            const int cb = bit_of(c, qubit, num_qubits_);
            const int c0 = c & ~stride;
            m_[static_cast<size_t>(r) * dim_ + c] =
                next[static_cast<size_t>(r) * dim_ + c0] * std::conj(u[cb * 2 + 0]) +
                next[static_cast<size_t>(r) * dim_ + (c0 | stride)] * std::conj(u[cb * 2 + 1]);
        }
    }
}

void DensityMatrix::apply_two_qubit(const Mat4& u, int qubit_hi, int qubit_lo) {
    if (qubit_hi == qubit_lo) throw std::invalid_argument("apply_two_qubit: qubits must differ");
    const int sh = 1 << (num_qubits_ - 1 - qubit_hi);
    const int sl = 1 << (num_qubits_ - 1 - qubit_lo);
    std::vector<Complex> next(m_.size());
    auto sub = [&](int index) { return bit_of(index, qubit_hi, num_qubits_) * 2 + bit_of(index, qubit_lo, num_qubits_); };
    for (int r = 0; r < dim_; ++r) {
        const int base = r & ~(sh | sl);
        const int ur = sub(r);
        for (int c = 0; c < dim_; ++c) {
            Complex acc{};
            for (int k = 0; k < 4; ++k) {
                const int src = base | ((k >> 1) ? sh : 0) | ((k & 1) ? sl : 0);
                acc += u[ur * 4 + k] * m_[static_cast<size_t>(src) * dim_ + c];
            }
            next[static_cast<size_t>(r) * dim_ + c] = acc;
        }
    }
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) {
            const int base = c & ~(sh | sl);
            const int uc = sub(c);
            Complex acc{};
            for (int k = 0; k < 4; ++k) {
                const int src = base | ((k >> 1) ? sh : 0) | ((k & 1) ? sl : 0);
                acc += next[static_cast<size_t>(r) * dim_ + src] * std::conj(u[uc * 4 + k]);
            }
            m_[static_cast<size_t>(r) * dim_ + c] = acc;
        }
    }
}

void DensityMatrix::project_z(int qubit, int outcome) {
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) {
            if (bit_of(r, qubit, num_qubits_) != outcome || bit_of(c, qubit, num_qubits_) != outcome) {
                m_[static_cast<size_t>(r) * dim_ + c] = Complex{};
            }
        }
    }
}

DensityMatrix DensityMatrix::trace_out(const std::vector<int>& qubits) const {
    std::vector<int> keep;
    for (int q = 0; q < num_qubits_; ++q) {
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) keep.push_back(q);
    }
    DensityMatrix out(static_cast<int>(keep.size()));
    const int kept = static_cast<int>(keep.size());

    auto expand = [&](int compact, int traced_bits) {
        // Rebuild a full index from kept-qubit bits plus traced-qubit bits.
        int full = 0;
        for (int i = 0; i < kept; ++i) {
            if ((compact >> (kept - 1 - i)) & 1) full |= 1 << (num_qubits_ - 1 - keep[i]);
        }
        int t = 0;
        for (int q : qubits) {
            if ((traced_bits >> t) & 1) full |= 1 << (num_qubits_ - 1 - q);
            ++t;
        }
        return full;
    };

    const int traced_dim = 1 << qubits.size();
    for (int r = 0; r < out.dim_; ++r) {
        for (int c = 0; c < out.dim_; ++c) {
            Complex acc{};
            for (int t = 0; t < traced_dim; ++t) {
                acc += (*this)(expand(r, t), expand(c, t));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

double DensityMatrix::max_hermiticity_defect() const {
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r) {
        for (int c = r; c < dim_; ++c) {
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return worst;
}

void DensityMatrix::check_valid(double tol) const {
    if (max_hermiticity_defect() > tol) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(trace() - 1.0) > tol) {
        throw std::invalid_argument("DensityMatrix: trace != 1");
    }
    for (int i = 0; i < dim_; ++i) {
        if ((*this)(i, i).real() < -1e-10) {
            throw std::invalid_argument("DensityMatrix: negative diagonal entry");
        }
    }
}

BellReadout bell_readout(const DensityMatrix& rho) {
    if (rho.num_qubits() != 2) throw std::invalid_argument("bell_readout: needs a two-qubit state");
    BellReadout out;
    for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) {
            Complex elem{};
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) {
                    elem += kBellBasis[j][r] * rho(r, c) * kBellBasis[k][c];
                }
            }
            if (j == k) {
                out.weights[j] = elem.real();
            } else {
                out.max_off_diagonal = std::max(out.max_off_diagonal, std::abs(elem));
            }
        }
    }
    return out;
}

Mat2 pauli_x() {
    return {Complex{0}, Complex{1}, Complex{1}, Complex{0}};
}

Mat2 pauli_z() {
    return {Complex{1}, Complex{0}, Complex{0}, Complex{-1}};
}

Mat2 hadamard() {
    const double s = kInvSqrt2;
    return {Complex{s}, Complex{s}, Complex{s}, Complex{-s}};
}

Mat2 rotation_x(double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    return {Complex{c}, -kI * s, -kI * s, Complex{c}};
}

Mat4 cnot() {
    Mat4 u{};
    u[0 * 4 + 0] = 1.0;
    u[1 * 4 + 1] = 1.0;
    u[2 * 4 + 3] = 1.0;
    u[3 * 4 + 2] = 1.0;
    return u;
}

Mat4 identity4() {
    Mat4 u{};
    for (int i = 0; i < 4; ++i) u[i * 4 + i] = 1.0;
    return u;
}

}  // namespace qrep
