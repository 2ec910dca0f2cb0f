#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qgaa {

using cx = std::complex<double>;

/// Dense complex matrix, row-major. Sized for Hilbert spaces up to 8 qubits
/// (256x256); everything is kept simple and deterministic.
class CMatrix {
public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), d_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cx& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  const cx& operator()(std::size_t i, std::size_t j) const {
    return d_[i * cols_ + j];
  }

  CMatrix adjoint() const;
  cx trace() const;
  double frobenius_norm() const;

  CMatrix operator*(const CMatrix& o) const;
  CMatrix operator+(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix operator*(cx s) const;

  std::vector<cx> apply(const std::vector<cx>& v) const;

  bool is_hermitian(double tol) const;

  const std::vector<cx>& data() const { return d_; }
  std::vector<cx>& data() { return d_; }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cx> d_;
};

/// n-qubit pure state. Qubit 0 is the most significant bit of the basis
/// index; this convention is shared by every module.
struct StateVector {
  int n_qubits = 0;
  std::vector<cx> amplitudes;

  StateVector() = default;
  StateVector(int n, std::vector<cx> amp);

  static StateVector basis(int n_qubits, std::size_t index);

  std::size_t dim() const { return amplitudes.size(); }
  double norm() const;
  void validate() const;  // throws if L2 norm != 1 within 1e-10
};

struct DensityMatrix {
  int n_qubits = 0;
  CMatrix matrix;

  DensityMatrix() = default;
  DensityMatrix(int n, CMatrix m);

  static DensityMatrix from_state(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  std::size_t dim() const { return matrix.rows(); }
  void validate() const;  // Hermitian, unit trace, PSD up to -1e-9 slack
};

struct UnitaryMatrix {
  std::size_t dim = 0;
  CMatrix matrix;

  UnitaryMatrix() = default;
  explicit UnitaryMatrix(CMatrix m);

  void validate() const;  // U^dag U = I within 1e-9 Frobenius
};

struct EigResult {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // columns, orthonormal
};

StateVector tensor_product(const StateVector& a, const StateVector& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
UnitaryMatrix tensor_product(const UnitaryMatrix& a, const UnitaryMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Trace out every qubit not in `keep`. Kept qubits retain their relative
/// order. Throws on empty or out-of-range keep sets.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

/// Cyclic-Jacobi eigendecomposition of a Hermitian matrix. Self-contained
/// and deterministic: eigenvalues ascending, eigenvector phases fixed so the
/// largest-magnitude component is real positive.
EigResult eig_hermitian(const CMatrix& m);

double purity(const DensityMatrix& rho);

}  // namespace qgaa
