#include "qgaa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qgaa {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

cx CMatrix::trace() const {
  cx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cx& v : d_) s += std::norm(v);
  return std::sqrt(s);
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matmul shape mismatch");
  CMatrix m(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const cx a = (*this)(i, k);
      if (a == cx{}) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) m(i, j) += a * o(k, j);
    }
  }
  return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
  CMatrix m = *this;
  for (std::size_t i = 0; i < d_.size(); ++i) m.d_[i] += o.d_[i];
  return m;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  CMatrix m = *this;
  for (std::size_t i = 0; i < d_.size(); ++i) m.d_[i] -= o.d_[i];
  return m;
}

CMatrix CMatrix::operator*(cx s) const {
  CMatrix m = *this;
  for (cx& v : m.d_) v *= s;
  return m;
}

std::vector<cx> CMatrix::apply(const std::vector<cx>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matvec shape mismatch");
  std::vector<cx> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    cx s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

bool CMatrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol)
        return false;
  return true;
}

namespace {

std::size_t dim_of(int n_qubits) { return std::size_t{1} << n_qubits; }

int qubits_of_dim(std::size_t dim) {
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim)
    throw std::invalid_argument("dimension is not a power of 2");
  return n;
}

}  // namespace

StateVector::StateVector(int n, std::vector<cx> amp)
    : n_qubits(n), amplitudes(std::move(amp)) {
  if (amplitudes.size() != dim_of(n))
    throw std::invalid_argument("state vector length != 2^n");
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  std::vector<cx> amp(dim_of(n_qubits));
  amp.at(index) = 1.0;
  return StateVector(n_qubits, std::move(amp));
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cx& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::validate() const {
  if (std::abs(norm() - 1.0) > 1e-10)
    throw std::invalid_argument("state vector is not normalized");
}

DensityMatrix::DensityMatrix(int n, CMatrix m)
    : n_qubits(n), matrix(std::move(m)) {
  if (matrix.rows() != dim_of(n) || matrix.cols() != dim_of(n))
    throw std::invalid_argument("density matrix shape != 2^n x 2^n");
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  const std::size_t d = psi.dim();
  CMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
  return DensityMatrix(psi.n_qubits, std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const std::size_t d = dim_of(n_qubits);
  CMatrix m = CMatrix::identity(d) * cx{1.0 / static_cast<double>(d)};
  return DensityMatrix(n_qubits, std::move(m));
}

void DensityMatrix::validate() const {
  if (!matrix.is_hermitian(1e-10))
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(matrix.trace() - cx{1.0}) > 1e-10)
    throw std::invalid_argument("density matrix trace != 1");
  EigResult e = eig_hermitian(matrix);
  if (e.eigenvalues.front() < -1e-9)
    throw std::invalid_argument("density matrix is not PSD");
}

UnitaryMatrix::UnitaryMatrix(CMatrix m) : dim(m.rows()), matrix(std::move(m)) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("unitary must be square");
  qubits_of_dim(dim);  // power-of-2 check
}

void UnitaryMatrix::validate() const {
  CMatrix r = matrix.adjoint() * matrix - CMatrix::identity(dim);
  if (r.frobenius_norm() > 1e-9)
    throw std::invalid_argument("matrix is not unitary");
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cx av = a(i, j);
      if (av == cx{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = av * b(k, l);
    }
  return m;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  std::vector<cx> amp(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      amp[i * b.dim() + j] = a.amplitudes[i] * b.amplitudes[j];
  return StateVector(a.n_qubits + b.n_qubits, std::move(amp));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(a.n_qubits + b.n_qubits, kron(a.matrix, b.matrix));
}

UnitaryMatrix tensor_product(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  return UnitaryMatrix(kron(a.matrix, b.matrix));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  const int n = rho.n_qubits;
  if (keep.empty()) throw std::invalid_argument("empty keep set");
  std::vector<bool> kept(n, false);
  for (int q : keep) {
    if (q < 0 || q >= n) throw std::invalid_argument("qubit index out of range");
    if (kept[q]) throw std::invalid_argument("duplicate qubit index");
    kept[q] = true;
  }
  // kept qubits in original order; qubit 0 = MSB
  std::vector<int> kq, tq;
  for (int q = 0; q < n; ++q) (kept[q] ? kq : tq).push_back(q);
  const int nk = static_cast<int>(kq.size());
  const int nt = static_cast<int>(tq.size());
  const std::size_t dk = dim_of(nk), dt = dim_of(nt);

  auto full_index = [&](std::size_t ki, std::size_t ti) {
    std::size_t idx = 0;
    for (int b = 0; b < nk; ++b)
      if (ki >> (nk - 1 - b) & 1) idx |= std::size_t{1} << (n - 1 - kq[b]);
    for (int b = 0; b < nt; ++b)
      if (ti >> (nt - 1 - b) & 1) idx |= std::size_t{1} << (n - 1 - tq[b]);
    return idx;
  };

  CMatrix out(dk, dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      cx s = 0.0;
      for (std::size_t t = 0; t < dt; ++t)
        s += rho.matrix(full_index(i, t), full_index(j, t));
      out(i, j) = s;
    }
  return DensityMatrix(nk, std::move(out));
}

EigResult eig_hermitian(const CMatrix& m) {
  const std::size_t n = m.rows();
  if (!m.is_hermitian(1e-8))
    throw std::invalid_argument("eig_hermitian: input is not Hermitian");

  CMatrix a = m;
  // symmetrize exactly so rounding in the input cannot bias sweeps
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      cx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  CMatrix v = CMatrix::identity(n);
  const double scale = std::max(a.frobenius_norm(), 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) < 1e-14 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cx apq = a(p, q);
        const double aa = std::abs(apq);
        if (aa < 1e-300) continue;
        const cx phase = apq / aa;
        const double d = (a(q, q).real() - a(p, p).real()) / 2.0;
        const double theta = d / aa;
        double t;
        if (theta >= 0)
          t = 1.0 / (theta + std::sqrt(theta * theta + 1.0));
        else
          t = 1.0 / (theta - std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const cx s = t * c * phase;

        // columns: u_p = c e_p - conj(s) e_q ; u_q = s e_p + c e_q
        for (std::size_t i = 0; i < n; ++i) {
          const cx aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - std::conj(s) * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const cx apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - s * aqj;
          a(q, j) = std::conj(s) * apj + c * aqj;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const cx vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - std::conj(s) * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigResult res;
  res.eigenvalues.resize(n);
  res.eigenvectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    res.eigenvalues[k] = a(order[k], order[k]).real();
    // fix phase: largest-magnitude component real positive
    std::size_t imax = 0;
    double amax = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double av = std::abs(v(i, order[k]));
      if (av > amax + 1e-15) {
        amax = av;
        imax = i;
      }
    }
    cx ph = v(imax, order[k]);
    ph = (std::abs(ph) > 0) ? std::conj(ph) / std::abs(ph) : cx{1.0};
    for (std::size_t i = 0; i < n; ++i)
      res.eigenvectors(i, k) = v(i, order[k]) * ph;
  }
  return res;
}

double purity(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      s += (rho.matrix(i, j) * rho.matrix(j, i)).real();
  return s;
}

}  // namespace qgaa
