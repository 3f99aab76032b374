#include "braidform/projection.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "braidform/errors.hpp"

namespace braidform {

namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int k = 0; k < exp; ++k) out *= base;
  return out;
}

// Index of the multi-index obtained by moving the factor at position k to
// position σ(k), for every basis index of H₀^⊗N.
std::vector<std::uint64_t> permuted_indices(int h0_dim, const Permutation& sigma) {
  const int n = sigma.size();
  const std::uint64_t dim = ipow(static_cast<std::uint64_t>(h0_dim), n);
  std::vector<std::uint64_t> out(dim);
  std::vector<int> digits(static_cast<std::size_t>(n));
  std::vector<int> moved(static_cast<std::size_t>(n));
  for (std::uint64_t k = 0; k < dim; ++k) {
    std::uint64_t rest = k;
    for (int pos = n - 1; pos >= 0; --pos) {
      digits[static_cast<std::size_t>(pos)] = static_cast<int>(rest % static_cast<std::uint64_t>(h0_dim));
      rest /= static_cast<std::uint64_t>(h0_dim);
    }
    for (int pos = 0; pos < n; ++pos) {
      moved[static_cast<std::size_t>(sigma(pos + 1) - 1)] = digits[static_cast<std::size_t>(pos)];
    }
    std::uint64_t m = 0;
    for (int pos = 0; pos < n; ++pos) {
      m = m * static_cast<std::uint64_t>(h0_dim) + static_cast<std::uint64_t>(moved[static_cast<std::size_t>(pos)]);
    }
    out[k] = m;
  }
  return out;
}

MatrixXc product_of(const std::vector<MatrixXc>& generators, const std::vector<int>& word,
                    Eigen::Index dim) {
  MatrixXc out = MatrixXc::Identity(dim, dim);
  for (int a : word) out = out * generators[static_cast<std::size_t>(a - 1)];
  return out;
}

MatrixXc null_space_projector(const MatrixXc& gram, double threshold) {
  const MatrixXc herm = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXc> eig(herm);
  if (eig.info() != Eigen::Success) throw VerificationFailure("Hermitian eigensolver failed");
  Eigen::Index d = 0;
  while (d < herm.rows() && eig.eigenvalues()(d) < threshold) ++d;
  const MatrixXc v = eig.eigenvectors().leftCols(d);
  return v * v.adjoint();
}

}  // namespace

std::uint64_t ProductSpaceSpec::h_dim() const {
  return ipow(static_cast<std::uint64_t>(h0_dim), sites);
}

std::uint64_t ProductSpaceSpec::total_dim() const { return h_dim() << sites; }

void ProductSpaceSpec::validate() const {
  if (h0_dim < 1) throw InvalidArgument("h0_dim must be at least 1");
  if (sites < 1) throw InvalidArgument("N must be at least 1");
  if (sites > 16 || total_dim() > max_dim) {
    throw GuardExceeded("product space dimension h0^N * 2^N exceeds guard " + std::to_string(max_dim));
  }
}

MatrixXc kron(const MatrixXc& a, const MatrixXc& b) {
  MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

MatrixXc permutation_operator(int h0_dim, const Permutation& sigma) {
  if (h0_dim < 1) throw InvalidArgument("h0_dim must be at least 1");
  const auto idx = permuted_indices(h0_dim, sigma);
  const auto dim = static_cast<Eigen::Index>(idx.size());
  MatrixXc out = MatrixXc::Zero(dim, dim);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out(static_cast<Eigen::Index>(idx[k]), static_cast<Eigen::Index>(k)) = 1.0;
  }
  return out;
}

MatrixXc build_U_generator(const ProductSpaceSpec& spec, int i) {
  spec.validate();
  if (i < 1 || i > spec.sites - 1) throw InvalidArgument("generator index out of range");
  const auto swap = permutation_operator(spec.h0_dim, Permutation::transposition(spec.sites, i));
  return kron(swap, materialize(BraidWord::generator(spec.sites, i), spec.local_matrix));
}

MatrixXc p_u_formula(const ProductSpaceSpec& spec, double* factorization_discrepancy) {
  spec.validate();
  if (spec.sites > kFormulaMaxSites) {
    throw GuardExceeded("projection formula enumerates N! terms; N = " + std::to_string(spec.sites) +
                        " exceeds " + std::to_string(kFormulaMaxSites));
  }
  const int n = spec.sites;
  const auto subspace = invariant_subspace(spec.local_matrix, n);
  const MatrixXc basis = subspace.dense_basis();
  const auto rep = induced_sym_rep(spec.local_matrix, subspace);
  const auto d = static_cast<Eigen::Index>(subspace.dimension);
  const auto a_dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  const auto h_dim = static_cast<Eigen::Index>(spec.h_dim());

  MatrixXc sum = MatrixXc::Zero(h_dim * a_dim, h_dim * a_dim);
  double discrepancy = 0.0;
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  double count = 0.0;
  do {
    const auto sigma = Permutation::from_images(images);
    const MatrixXc t = product_of(rep.generator_matrices, factor_by_position_swaps(sigma), d);
    const MatrixXc t_alt = product_of(rep.generator_matrices, factor_by_value_swaps(sigma), d);
    if (d > 0) discrepancy = std::max(discrepancy, (t - t_alt).norm());
    const MatrixXc lifted = basis * t * basis.adjoint();
    // 𝔖(σ) ⊗ lifted: block (σ·k, k) receives `lifted`.
    const auto idx = permuted_indices(spec.h0_dim, sigma);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      sum.block(static_cast<Eigen::Index>(idx[k]) * a_dim, static_cast<Eigen::Index>(k) * a_dim,
                a_dim, a_dim) += lifted;
    }
    count += 1.0;
  } while (std::next_permutation(images.begin(), images.end()));

  if (factorization_discrepancy) *factorization_discrepancy = discrepancy;
  if (discrepancy > 1e-8) {
    throw VerificationFailure("induced representation depends on the factorization of sigma: " +
                              std::to_string(discrepancy));
  }

  // (1 ⊗ p_π) applied block by block.
  const MatrixXc p = basis * basis.adjoint();
  for (Eigen::Index r = 0; r < h_dim; ++r) {
    for (Eigen::Index c = 0; c < h_dim; ++c) {
      auto blk = sum.block(r * a_dim, c * a_dim, a_dim, a_dim);
      blk = (p * blk).eval();
    }
  }
  return sum / count;
}

MatrixXc p_u_bruteforce(const ProductSpaceSpec& spec) {
  spec.validate();
  if (!unitarity_residual(spec.local_matrix).passes) {
    throw InvalidArgument("U is only a unitary action for unitary C");
  }
  const auto dim = static_cast<Eigen::Index>(spec.total_dim());
  // For unitary U, (U − I)*(U − I) = 2I − U − U*.
  MatrixXc gram = MatrixXc::Zero(dim, dim);
  for (int i = 1; i <= spec.sites - 1; ++i) {
    const MatrixXc u = build_U_generator(spec, i);
    gram -= u;
    gram -= u.adjoint();
    gram.diagonal().array() += 2.0;
  }
  return null_space_projector(gram, kNullEigenThreshold);
}

std::size_t projector_rank(const MatrixXc& p) {
  if (p.rows() == 0) return 0;
  const MatrixXc herm = 0.5 * (p + p.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXc> eig(herm, Eigen::EigenvaluesOnly);
  return static_cast<std::size_t>((eig.eigenvalues().array() > 0.5).count());
}

ProjectionComparison compare_projections(const ProductSpaceSpec& spec) {
  ProjectionComparison out;
  const MatrixXc formula = p_u_formula(spec, &out.factorization_discrepancy);
  const MatrixXc brute = p_u_bruteforce(spec);
  out.formula_rank = projector_rank(formula);
  out.bruteforce_rank = projector_rank(brute);
  out.frobenius_distance = (formula - brute).norm();
  out.idempotency_residual = (formula * formula - formula).norm();
  out.hermiticity_residual = (formula - formula.adjoint()).norm();
  return out;
}

}  // namespace braidform
