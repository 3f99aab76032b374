#pragma once
// Independent reference computations for the unit and acceptance tests.
// Nothing here reuses the library's stride kernels, union-find or convolution.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "braidform/braid.hpp"
#include "braidform/rmatrix.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Explicit Kronecker product by index loops.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Matrix identity(std::int64_t n) { return Matrix::Identity(n, n); }

/// π(b_i) = I_{2^{i−1}} ⊗ C ⊗ I_{2^{N−i−1}} formed explicitly.
inline Matrix generator(const Eigen::Matrix4cd& c, int sites, int i) {
  const Matrix local = c;
  return kron(kron(identity(std::int64_t{1} << (i - 1)), local),
              identity(std::int64_t{1} << (sites - i - 1)));
}

/// π(w) as an ordered product of explicit generator matrices.
inline Matrix word_matrix(const braidform::BraidWord& w, const Eigen::Matrix4cd& c) {
  const int n = w.strands();
  Matrix out = identity(std::int64_t{1} << n);
  for (const auto& l : w.letters()) {
    Matrix g = generator(c, n, l.generator);
    if (l.exponent < 0) g = g.inverse().eval();
    out = out * g;
  }
  return out;
}

/// Braid residual from explicit 8×8 Kronecker lifts.
inline double braid_residual(const Eigen::Matrix4cd& c) {
  const Matrix l = kron(Matrix(c), identity(2));
  const Matrix r = kron(identity(2), Matrix(c));
  return (l * r * l - r * l * r).norm();
}

/// Σ_{m₁+…+m_N=m} β_{m₁}⋯β_{m_N} by enumerating every tuple.
inline std::vector<double> compositions(const std::vector<double>& beta, int n) {
  const std::size_t d = beta.size();
  std::vector<double> out((d - 1) * static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    double prod = 1.0;
    std::size_t m = 0;
    for (auto k : idx) {
      prod *= beta[k];
      m += k;
    }
    out[m] += prod;
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == d) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return out;
}

inline double binomial(int n, int k) {
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

inline double factorial(int n) {
  double out = 1.0;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

/// Random braid word of the given length (before free reduction).
inline braidform::BraidWord random_word(std::mt19937_64& gen, int strands, int length) {
  std::uniform_int_distribution<int> g(1, strands - 1);
  std::uniform_int_distribution<int> s(0, 1);
  std::vector<braidform::Letter> letters;
  for (int k = 0; k < length; ++k) letters.push_back({g(gen), s(gen) ? 1 : -1});
  return braidform::BraidWord(strands, std::move(letters));
}

inline Eigen::VectorXcd random_state(std::mt19937_64& gen, int sites) {
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(std::int64_t{1} << sites);
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Complex(nd(gen), nd(gen));
  return v;
}

}  // namespace oracle
