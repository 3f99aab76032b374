#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "braidform/braid.hpp"
#include "braidform/rmatrix.hpp"

namespace braidform {

using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

/// Dense materialization is refused above this many sites unless the caller
/// raises the guard.
inline constexpr int kMaterializeMaxSites = 12;

/// A vector in (ℂ²)^⊗N. Index bits read i₁…i_N with site 1 the most
/// significant bit, so e_{i₁…i_N} sits at index Σ i_k 2^{N−k}.
struct StateVector {
  int sites = 0;
  VectorXc amplitudes;

  static StateVector zero(int sites);
  static StateVector basis(int sites, std::uint64_t index);

  std::uint64_t dimension() const { return std::uint64_t{1} << sites; }
};

/// Bit position (counted from the least significant bit) of one-based site k.
inline int site_bit(int sites, int site) { return sites - site; }

/// π(b_i)^{±1} restricted to the two sites it touches. Stores only the
/// nonzero entries of the 4×4 factor, row by row.
class LocalGate {
 public:
  explicit LocalGate(const Matrix4c& m);

  static LocalGate forward(const RMatrix& c) { return LocalGate(c.entries); }
  static LocalGate backward(const RMatrix& c);

  const Matrix4c& matrix() const { return m_; }

  /// Left-multiplies every column of `block` (2^N rows) by the gate acting
  /// on sites (i, i+1).
  void apply_left(MatrixXc& block, int sites, int i) const;

  /// Right-multiplies `block` (2^N columns) by the gate acting on (i, i+1).
  void apply_right(MatrixXc& block, int sites, int i) const;

 private:
  struct Term {
    int col;
    Complex value;
  };
  Matrix4c m_;
  std::vector<Term> rows_[4];
};

/// Phased permutation T e_k = phase[k] · e_{target[k]}.
struct PhasedPermutation {
  int sites = 0;
  std::vector<std::uint32_t> target;
  std::vector<Complex> phase;

  static PhasedPermutation identity(int sites);

  std::size_t size() const { return target.size(); }
  StateVector apply(const StateVector& v) const;
  MatrixXc to_dense() const;
};

/// (a ∘ b) e_k = a(b e_k).
PhasedPermutation compose(const PhasedPermutation& a, const PhasedPermutation& b);

/// (1⊗…⊗C^{±1}⊗…⊗1) v with C on sites (i, i+1).
StateVector apply_generator(const StateVector& v, int i, const RMatrix& c, bool inverse = false);

/// π(w) v. Letters act right to left, so π(ab) = π(a)π(b).
StateVector apply_word(const StateVector& v, const BraidWord& w, const RMatrix& c);

/// π(w) applied to every column of `block`.
void apply_word_block(MatrixXc& block, const BraidWord& w, const RMatrix& c);

/// The 2^N × 2^N matrix of π(w).
MatrixXc materialize(const BraidWord& w, const RMatrix& c, int max_sites = kMaterializeMaxSites);

/// π(b_i)^{±1} as a phased permutation. Requires a generalized permutation C.
PhasedPermutation generator_phased(int sites, int i, const RMatrix& c, bool inverse = false);

/// π(w) as a phased permutation, composed letter by letter.
PhasedPermutation as_phased_permutation(const BraidWord& w, const RMatrix& c);

}  // namespace braidform
