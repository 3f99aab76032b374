#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "braidform/rep_engine.hpp"
#include "braidform/rmatrix.hpp"

namespace braidform {

using SparseMatrixXc = Eigen::SparseMatrix<Complex, Eigen::ColMajor, std::int64_t>;

enum class SolverMethod { dense, phased };

std::string_view to_string(SolverMethod m);

inline constexpr int kDenseMaxSites = 10;
inline constexpr int kPhasedMaxSites = 22;
/// Eigenvalues of the Gram accumulator below this count as null directions.
inline constexpr double kNullEigenThreshold = 1e-8;
/// Allowed |cycle product − 1| in the phased union-find.
inline constexpr double kPhaseTolerance = 1e-9;

/// Spectral certificate of the dense path: largest retained and smallest
/// rejected eigenvalue of G = Σ (M − I)*(M − I).
struct SpectralGap {
  double largest_retained = 0.0;
  std::optional<double> smallest_rejected;
};

/// Orthonormal basis of A_N^π stored as the columns of a 2^N × d sparse matrix.
struct InvariantSubspace {
  int sites = 0;
  std::size_t dimension = 0;
  SparseMatrixXc basis;
  SolverMethod method = SolverMethod::dense;
  double tolerance = 0.0;
  /// max over basis vectors v and pure generators x_{i,j} of ‖π(x_{i,j})v − v‖₂.
  double residual_max = 0.0;
  std::optional<SpectralGap> gap;

  StateVector basis_vector(std::size_t k) const;
  /// Dense 2^N × d copy of the basis; guarded by kMaterializeMaxSites.
  MatrixXc dense_basis() const;
};

/// π̃(φ(b_i)) in the basis of an InvariantSubspace, i = 1..N−1.
struct InducedSymRep {
  int sites = 0;
  std::vector<MatrixXc> generator_matrices;
  /// max_i ‖(I − p_π) π(b_i) p_π‖_F.
  double compression_error = 0.0;
};

/// Null space of Σ (M_{ij} − I)*(M_{ij} − I) over the dense pure generators.
InvariantSubspace invariant_subspace_dense(const RMatrix& c, int sites,
                                           double threshold = kNullEigenThreshold,
                                           int max_sites = kDenseMaxSites);

/// Union-find over basis indices with phase-weighted edges.
InvariantSubspace invariant_subspace_phased(const RMatrix& c, int sites,
                                            double phase_tolerance = kPhaseTolerance,
                                            int max_sites = kPhasedMaxSites);

/// Phased path for generalized permutations, dense path otherwise.
InvariantSubspace invariant_subspace(const RMatrix& c, int sites);

/// (a_{N−1}, a_N) with a₁ = 2 and a_N = 2^N − a_{N−1} + 1, one-based.
std::pair<std::uint64_t, std::uint64_t> example2_support_indices(int sites);

/// p_π = Σ_k v_k v_k* as a dense 2^N × 2^N matrix.
MatrixXc projector_p_pi(const InvariantSubspace& s);

/// Compresses each π(b_i) onto the subspace. Throws VerificationFailure when
/// the subspace is not π-invariant within `tolerance`.
InducedSymRep induced_sym_rep(const RMatrix& c, const InvariantSubspace& s,
                              double tolerance = 1e-8);

/// Coordinatewise products of basis pairs stay in the span.
bool subalgebra_check(const InvariantSubspace& s, double tolerance = 1e-8);

/// Largest principal angle between two subspaces of equal ambient dimension.
/// Returns π/2 when the dimensions differ.
double max_principal_angle(const MatrixXc& a, const MatrixXc& b);

}  // namespace braidform
