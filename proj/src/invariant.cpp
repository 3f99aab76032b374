#include "braidform/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "braidform/braid.hpp"
#include "braidform/errors.hpp"

namespace braidform {

std::string_view to_string(SolverMethod m) {
  return m == SolverMethod::dense ? "dense" : "phased";
}

namespace {

void require_braid_solution(const RMatrix& c) {
  const auto u = unitarity_residual(c);
  if (!u.passes) {
    throw InvalidArgument("matrix " + c.label() + " is not unitary (residual " +
                          std::to_string(u.frobenius_residual) + ")");
  }
  const auto b = braid_residual(c);
  if (!b.passes) {
    throw InvalidArgument("matrix " + c.label() + " does not solve the braid equation (residual " +
                          std::to_string(b.frobenius_residual) + ")");
  }
}

std::uint64_t dimension_of(int sites) { return std::uint64_t{1} << sites; }

SparseMatrixXc sparse_from_dense(const MatrixXc& dense) {
  std::vector<Eigen::Triplet<Complex, std::int64_t>> triplets;
  for (Eigen::Index col = 0; col < dense.cols(); ++col) {
    for (Eigen::Index row = 0; row < dense.rows(); ++row) {
      if (dense(row, col) != Complex{}) triplets.emplace_back(row, col, dense(row, col));
    }
  }
  SparseMatrixXc out(dense.rows(), dense.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

InvariantSubspace whole_space(int sites, SolverMethod method, double tolerance) {
  const auto dim = static_cast<Eigen::Index>(dimension_of(sites));
  SparseMatrixXc basis(dim, dim);
  basis.setIdentity();
  return {sites, static_cast<std::size_t>(dim), std::move(basis), method, tolerance, 0.0, std::nullopt};
}

// Calls f(M) for M = π(x_{i,j}) in lexicographic (i, j) order, using
// x_{i,i} = b_i² and x_{i,j} = b_j x_{i,j−1} b_j^{−1}.
template <class F>
void for_each_dense_generator(const RMatrix& c, int sites, F&& f) {
  const LocalGate fwd = LocalGate::forward(c);
  const LocalGate bwd = LocalGate::backward(c);
  const auto dim = static_cast<Eigen::Index>(dimension_of(sites));
  MatrixXc m(dim, dim);
  for (int i = 1; i <= sites - 1; ++i) {
    m.setIdentity();
    fwd.apply_left(m, sites, i);
    fwd.apply_left(m, sites, i);
    f(m);
    for (int j = i + 1; j <= sites - 1; ++j) {
      fwd.apply_left(m, sites, j);
      bwd.apply_right(m, sites, j);
      f(m);
    }
  }
}

template <class F>
void for_each_phased_generator(const RMatrix& c, int sites, F&& f) {
  for (int i = 1; i <= sites - 1; ++i) {
    const auto bi = generator_phased(sites, i, c);
    auto t = compose(bi, bi);
    f(t);
    for (int j = i + 1; j <= sites - 1; ++j) {
      t = compose(generator_phased(sites, j, c), compose(t, generator_phased(sites, j, c, true)));
      f(t);
    }
  }
}

// Union-find over basis indices. Each node stores rel with
// v[node] = rel[node] · v[parent[node]].
class PhaseUnionFind {
 public:
  explicit PhaseUnionFind(std::size_t n)
      : parent_(n), rel_(n, Complex{1.0}), size_(n, 1), dead_(n, false) {
    for (std::size_t k = 0; k < n; ++k) parent_[k] = static_cast<std::uint32_t>(k);
  }

  // Returns the root of k and the factor w with v[k] = w · v[root].
  std::pair<std::uint32_t, Complex> find(std::uint32_t k) {
    std::uint32_t root = k;
    Complex w{1.0};
    while (parent_[root] != root) {
      w *= rel_[root];
      root = parent_[root];
    }
    // Second pass: point every node on the path straight at the root.
    Complex remaining = w;
    std::uint32_t node = k;
    while (parent_[node] != root && node != root) {
      const std::uint32_t next = parent_[node];
      const Complex step = rel_[node];
      rel_[node] = remaining;
      parent_[node] = root;
      remaining /= step;
      node = next;
    }
    return {root, w};
  }

  // Imposes v[b] = phase · v[a].
  void constrain(std::uint32_t a, std::uint32_t b, Complex phase, double tolerance) {
    const auto [ra, wa] = find(a);
    const auto [rb, wb] = find(b);
    if (ra == rb) {
      if (std::abs(wb - phase * wa) > tolerance) dead_[ra] = true;
      return;
    }
    // wb · v[rb] = phase · wa · v[ra]
    if (size_[rb] <= size_[ra]) {
      parent_[rb] = ra;
      rel_[rb] = phase * wa / wb;
      size_[ra] += size_[rb];
      dead_[ra] = dead_[ra] || dead_[rb];
    } else {
      parent_[ra] = rb;
      rel_[ra] = wb / (phase * wa);
      size_[rb] += size_[ra];
      dead_[rb] = dead_[rb] || dead_[ra];
    }
  }

  bool dead(std::uint32_t root) const { return dead_[root]; }
  std::uint32_t size(std::uint32_t root) const { return size_[root]; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<Complex> rel_;
  std::vector<std::uint32_t> size_;
  std::vector<bool> dead_;
};

}  // namespace

StateVector InvariantSubspace::basis_vector(std::size_t k) const {
  if (k >= dimension) throw InvalidArgument("basis vector index out of range");
  auto v = StateVector::zero(sites);
  for (SparseMatrixXc::InnerIterator it(basis, static_cast<Eigen::Index>(k)); it; ++it) {
    v.amplitudes(it.row()) = it.value();
  }
  return v;
}

MatrixXc InvariantSubspace::dense_basis() const {
  if (sites > kMaterializeMaxSites) {
    throw GuardExceeded("dense basis refused for N = " + std::to_string(sites));
  }
  return MatrixXc(basis);
}

InvariantSubspace invariant_subspace_dense(const RMatrix& c, int sites, double threshold,
                                           int max_sites) {
  if (sites < 1) throw InvalidArgument("N must be at least 1");
  if (sites > max_sites) {
    throw GuardExceeded("dense invariant solver refused for N = " + std::to_string(sites) +
                        " (guard " + std::to_string(max_sites) + ")");
  }
  require_braid_solution(c);
  if (sites == 1) return whole_space(sites, SolverMethod::dense, threshold);

  const auto dim = static_cast<Eigen::Index>(dimension_of(sites));
  // For unitary M, (M − I)*(M − I) = 2I − M − M*.
  MatrixXc gram = MatrixXc::Zero(dim, dim);
  for_each_dense_generator(c, sites, [&](const MatrixXc& m) {
    gram -= m;
    gram -= m.adjoint();
    gram.diagonal().array() += 2.0;
  });
  gram = (0.5 * (gram + gram.adjoint())).eval();

  Eigen::SelfAdjointEigenSolver<MatrixXc> eig(gram);
  if (eig.info() != Eigen::Success) throw VerificationFailure("Hermitian eigensolver failed");
  const auto& values = eig.eigenvalues();
  Eigen::Index d = 0;
  while (d < dim && values(d) < threshold) ++d;

  SpectralGap gap;
  gap.largest_retained = d > 0 ? values(d - 1) : 0.0;
  if (d < dim) gap.smallest_rejected = values(d);

  MatrixXc basis = eig.eigenvectors().leftCols(d);
  double residual = 0.0;
  if (d > 0) {
    for (const auto& w : pure_generators(sites)) {
      MatrixXc moved = basis;
      apply_word_block(moved, w, c);
      moved -= basis;
      residual = std::max(residual, moved.colwise().norm().maxCoeff());
    }
  }
  return {sites, static_cast<std::size_t>(d), sparse_from_dense(basis), SolverMethod::dense,
          threshold, residual, gap};
}

InvariantSubspace invariant_subspace_phased(const RMatrix& c, int sites, double phase_tolerance,
                                            int max_sites) {
  if (sites < 1) throw InvalidArgument("N must be at least 1");
  if (!is_generalized_permutation(c)) {
    throw InvalidArgument("phased solver needs a generalized permutation matrix, got " + c.label());
  }
  if (sites > max_sites) {
    throw GuardExceeded("phased invariant solver refused for N = " + std::to_string(sites) +
                        " (guard " + std::to_string(max_sites) + ")");
  }
  require_braid_solution(c);
  if (sites == 1) return whole_space(sites, SolverMethod::phased, phase_tolerance);

  const std::size_t dim = dimension_of(sites);
  PhaseUnionFind uf(dim);
  for_each_phased_generator(c, sites, [&](const PhasedPermutation& t) {
    // T v = v  ⇔  v[target[k]] = phase[k] · v[k] for every k.
    for (std::size_t k = 0; k < dim; ++k) {
      uf.constrain(static_cast<std::uint32_t>(k), t.target[k], t.phase[k], phase_tolerance);
    }
  });

  // Surviving classes, ordered by their smallest member index.
  constexpr std::int64_t kNone = -1;
  std::vector<std::int64_t> class_of_root(dim, kNone);
  std::vector<std::int64_t> class_of(dim, kNone);
  std::vector<Complex> amplitude(dim);
  std::vector<Complex> anchor;
  std::vector<double> norm;
  for (std::size_t k = 0; k < dim; ++k) {
    const auto [root, w] = uf.find(static_cast<std::uint32_t>(k));
    if (uf.dead(root)) continue;
    if (class_of_root[root] == kNone) {
      class_of_root[root] = static_cast<std::int64_t>(anchor.size());
      // Rotate so the smallest-index entry is real and positive.
      anchor.push_back(std::conj(w));
      norm.push_back(std::sqrt(static_cast<double>(uf.size(root))));
    }
    const auto cls = class_of_root[root];
    class_of[k] = cls;
    amplitude[k] = w * anchor[static_cast<std::size_t>(cls)] / norm[static_cast<std::size_t>(cls)];
  }
  const std::size_t d = anchor.size();

  std::vector<Eigen::Triplet<Complex, std::int64_t>> triplets;
  for (std::size_t k = 0; k < dim; ++k) {
    if (class_of[k] != kNone) {
      triplets.emplace_back(static_cast<std::int64_t>(k), class_of[k], amplitude[k]);
    }
  }
  SparseMatrixXc basis(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(d));
  basis.setFromTriplets(triplets.begin(), triplets.end());

  // ‖T v − v‖² per class; T maps each surviving class onto itself.
  double residual = 0.0;
  if (d > 0) {
    std::vector<double> err(d);
    for_each_phased_generator(c, sites, [&](const PhasedPermutation& t) {
      std::fill(err.begin(), err.end(), 0.0);
      for (std::size_t k = 0; k < dim; ++k) {
        const auto cls = class_of[k];
        if (cls == kNone) continue;
        const auto tk = t.target[k];
        const Complex image = t.phase[k] * amplitude[k];
        const Complex here = class_of[tk] == cls ? amplitude[tk] : Complex{};
        err[static_cast<std::size_t>(cls)] += std::norm(image - here);
        if (class_of[tk] != cls) err[static_cast<std::size_t>(cls)] += std::norm(amplitude[tk]);
      }
      for (double e : err) residual = std::max(residual, std::sqrt(e));
    });
  }
  return {sites, d, std::move(basis), SolverMethod::phased, phase_tolerance, residual, std::nullopt};
}

InvariantSubspace invariant_subspace(const RMatrix& c, int sites) {
  if (is_generalized_permutation(c)) return invariant_subspace_phased(c, sites);
  return invariant_subspace_dense(c, sites);
}

std::pair<std::uint64_t, std::uint64_t> example2_support_indices(int sites) {
  if (sites < 2) throw InvalidArgument("support indices need N >= 2");
  if (sites > 62) throw InvalidArgument("support indices overflow for N > 62");
  std::uint64_t prev = 0;
  std::uint64_t a = 2;
  for (int n = 2; n <= sites; ++n) {
    prev = a;
    a = (std::uint64_t{1} << n) - prev + 1;
  }
  return {prev, a};
}

MatrixXc projector_p_pi(const InvariantSubspace& s) {
  const MatrixXc b = s.dense_basis();
  return b * b.adjoint();
}

InducedSymRep induced_sym_rep(const RMatrix& c, const InvariantSubspace& s, double tolerance) {
  const MatrixXc b = s.dense_basis();
  const LocalGate gate = LocalGate::forward(c);
  InducedSymRep rep;
  rep.sites = s.sites;
  for (int i = 1; i <= s.sites - 1; ++i) {
    MatrixXc moved = b;
    gate.apply_left(moved, s.sites, i);
    MatrixXc compressed = b.adjoint() * moved;
    const double err = (moved - b * compressed).norm();
    rep.compression_error = std::max(rep.compression_error, err);
    rep.generator_matrices.push_back(std::move(compressed));
  }
  if (rep.compression_error > tolerance) {
    throw VerificationFailure("invariant subspace is not preserved by pi(b_i): compression error " +
                              std::to_string(rep.compression_error));
  }
  return rep;
}

bool subalgebra_check(const InvariantSubspace& s, double tolerance) {
  if (s.dimension == 0 || s.dimension == dimension_of(s.sites)) return true;
  const MatrixXc b = s.dense_basis();
  for (Eigen::Index u = 0; u < b.cols(); ++u) {
    for (Eigen::Index v = u; v < b.cols(); ++v) {
      const VectorXc w = b.col(u).cwiseProduct(b.col(v));
      if ((w - b * (b.adjoint() * w)).norm() > tolerance) return false;
    }
  }
  return true;
}

double max_principal_angle(const MatrixXc& a, const MatrixXc& b) {
  if (a.rows() != b.rows()) throw InvalidArgument("ambient dimensions differ");
  if (a.cols() != b.cols()) return std::numbers::pi / 2;
  if (a.cols() == 0) return 0.0;
  // Sines of the principal angles are the singular values of (I − AA*)B.
  const MatrixXc residual = b - a * (a.adjoint() * b);
  Eigen::JacobiSVD<MatrixXc> svd(residual);
  const double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return std::asin(std::min(1.0, s));
}

}  // namespace braidform
