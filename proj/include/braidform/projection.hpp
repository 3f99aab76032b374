#pragma once

#include <cstdint>

#include "braidform/braid.hpp"
#include "braidform/invariant.hpp"
#include "braidform/rep_engine.hpp"
#include "braidform/rmatrix.hpp"

namespace braidform {

/// Dense product-space computations refuse total dimensions above this.
inline constexpr std::uint64_t kProductSpaceMaxDim = 4096;
/// N! enumeration in the projection formula is limited to N <= 6.
inline constexpr int kFormulaMaxSites = 6;

/// H₀^⊗N ⊗ (ℂ²)^⊗N with a finite-dimensional single-particle space H₀.
/// Index order: (h₁…h_N) major, (i₁…i_N) minor.
struct ProductSpaceSpec {
  int h0_dim = 1;
  int sites = 1;
  RMatrix local_matrix;
  std::uint64_t max_dim = kProductSpaceMaxDim;

  std::uint64_t h_dim() const;
  std::uint64_t total_dim() const;
  void validate() const;
};

struct ProjectionComparison {
  std::size_t formula_rank = 0;
  std::size_t bruteforce_rank = 0;
  double frobenius_distance = 0.0;
  double idempotency_residual = 0.0;   // of the formula projector
  double hermiticity_residual = 0.0;   // of the formula projector
  double factorization_discrepancy = 0.0;
};

/// 𝔖(σ) on H₀^⊗N: the factor in position k moves to position σ(k).
MatrixXc permutation_operator(int h0_dim, const Permutation& sigma);

/// U(b_i) = 𝔖(φ(b_i)) ⊗ π(b_i).
MatrixXc build_U_generator(const ProductSpaceSpec& spec, int i);

/// (1⊗p_π)/N! Σ_σ 𝔖(σ)⊗π̃(σ), with π̃ lifted to (ℂ²)^⊗N through the
/// invariant basis. `factorization_discrepancy`, when given, receives the
/// largest disagreement between two adjacent-transposition factorizations
/// of π̃(σ); discrepancies above 1e−8 throw VerificationFailure.
MatrixXc p_u_formula(const ProductSpaceSpec& spec, double* factorization_discrepancy = nullptr);

/// Orthogonal projector onto the common fixed space of the U(b_i).
MatrixXc p_u_bruteforce(const ProductSpaceSpec& spec);

ProjectionComparison compare_projections(const ProductSpaceSpec& spec);

/// Number of eigenvalues of the Hermitian part above 1/2.
std::size_t projector_rank(const MatrixXc& p);

/// Kronecker product a ⊗ b.
MatrixXc kron(const MatrixXc& a, const MatrixXc& b);

}  // namespace braidform
