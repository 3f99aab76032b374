#include "braidform/rep_engine.hpp"

#include <array>
#include <cmath>
#include <string>

#include "braidform/errors.hpp"

namespace braidform {

namespace {

void check_sites(int sites) {
  if (sites < 1 || sites > 30) throw InvalidArgument("site count out of range: " + std::to_string(sites));
}

void check_generator(int sites, int i) {
  if (i < 1 || i > sites - 1) {
    throw InvalidArgument("generator index " + std::to_string(i) + " out of range for N = " +
                          std::to_string(sites));
  }
}

// Offsets of the four local states (00, 01, 10, 11) of sites (i, i+1).
std::array<std::uint64_t, 4> local_offsets(int sites, int i) {
  const std::uint64_t hi = std::uint64_t{1} << site_bit(sites, i);
  const std::uint64_t lo = std::uint64_t{1} << site_bit(sites, i + 1);
  return {0, lo, hi, hi | lo};
}

// Calls f(base) for every index whose bits at sites (i, i+1) are both zero.
template <class F>
void for_each_context(int sites, int i, F&& f) {
  const int lo_bit = site_bit(sites, i + 1);
  const std::uint64_t inner = std::uint64_t{1} << lo_bit;
  const std::uint64_t outer = std::uint64_t{1} << (sites - lo_bit - 2);
  for (std::uint64_t x = 0; x < outer; ++x) {
    const std::uint64_t hi = x << (lo_bit + 2);
    for (std::uint64_t y = 0; y < inner; ++y) f(hi | y);
  }
}

Matrix4c inverse_of(const Matrix4c& m) {
  if ((m.adjoint() * m - Matrix4c::Identity()).norm() <= kDefaultTolerance) return m.adjoint();
  return m.inverse();
}

// Column s of a generalized permutation matrix has its single entry at row
// target[s] with value phase[s].
struct LocalPhasedMap {
  std::array<int, 4> target{};
  std::array<Complex, 4> phase{};
};

LocalPhasedMap local_phased_map(const RMatrix& c, bool inverse) {
  if (!is_generalized_permutation(c)) {
    throw InvalidArgument("matrix " + c.label() + " is not a generalized permutation");
  }
  LocalPhasedMap fwd;
  for (int s = 0; s < 4; ++s) {
    int best = 0;
    for (int r = 1; r < 4; ++r) {
      if (std::abs(c.entries(r, s)) > std::abs(c.entries(best, s))) best = r;
    }
    fwd.target[static_cast<std::size_t>(s)] = best;
    fwd.phase[static_cast<std::size_t>(s)] = c.entries(best, s);
  }
  if (!inverse) return fwd;
  LocalPhasedMap inv;
  for (int s = 0; s < 4; ++s) {
    const auto r = static_cast<std::size_t>(fwd.target[static_cast<std::size_t>(s)]);
    inv.target[r] = s;
    inv.phase[r] = 1.0 / fwd.phase[static_cast<std::size_t>(s)];
  }
  return inv;
}

Complex unit(Complex z) { return z / std::abs(z); }

}  // namespace

StateVector StateVector::zero(int sites) {
  check_sites(sites);
  return {sites, VectorXc::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << sites))};
}

StateVector StateVector::basis(int sites, std::uint64_t index) {
  auto v = zero(sites);
  if (index >= v.dimension()) throw InvalidArgument("basis index out of range");
  v.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

LocalGate::LocalGate(const Matrix4c& m) : m_(m) {
  for (int r = 0; r < 4; ++r) {
    for (int k = 0; k < 4; ++k) {
      if (m(r, k) != Complex{}) rows_[r].push_back({k, m(r, k)});
    }
  }
}

LocalGate LocalGate::backward(const RMatrix& c) { return LocalGate(inverse_of(c.entries)); }

void LocalGate::apply_left(MatrixXc& block, int sites, int i) const {
  check_generator(sites, i);
  if (block.rows() != static_cast<Eigen::Index>(std::uint64_t{1} << sites)) {
    throw InvalidArgument("block row count does not match 2^N");
  }
  const auto off = local_offsets(sites, i);
  for (Eigen::Index col = 0; col < block.cols(); ++col) {
    Complex* data = block.col(col).data();
    for_each_context(sites, i, [&](std::uint64_t base) {
      const Complex in[4] = {data[base + off[0]], data[base + off[1]], data[base + off[2]],
                             data[base + off[3]]};
      for (int r = 0; r < 4; ++r) {
        Complex acc{};
        for (const auto& t : rows_[r]) acc += t.value * in[t.col];
        data[base + off[static_cast<std::size_t>(r)]] = acc;
      }
    });
  }
}

void LocalGate::apply_right(MatrixXc& block, int sites, int i) const {
  check_generator(sites, i);
  if (block.cols() != static_cast<Eigen::Index>(std::uint64_t{1} << sites)) {
    throw InvalidArgument("block column count does not match 2^N");
  }
  const auto off = local_offsets(sites, i);
  MatrixXc in(block.rows(), 4);
  for_each_context(sites, i, [&](std::uint64_t base) {
    for (int s = 0; s < 4; ++s) {
      in.col(s) = block.col(static_cast<Eigen::Index>(base + off[static_cast<std::size_t>(s)]));
    }
    // (M K)[:, j] = Σ_k M[:, k] K(k, j)
    for (int j = 0; j < 4; ++j) {
      auto out = block.col(static_cast<Eigen::Index>(base + off[static_cast<std::size_t>(j)]));
      out.setZero();
      for (int k = 0; k < 4; ++k) {
        if (m_(k, j) != Complex{}) out += m_(k, j) * in.col(k);
      }
    }
  });
}

PhasedPermutation PhasedPermutation::identity(int sites) {
  check_sites(sites);
  const std::size_t dim = std::size_t{1} << sites;
  PhasedPermutation p{sites, std::vector<std::uint32_t>(dim), std::vector<Complex>(dim, 1.0)};
  for (std::size_t k = 0; k < dim; ++k) p.target[k] = static_cast<std::uint32_t>(k);
  return p;
}

StateVector PhasedPermutation::apply(const StateVector& v) const {
  if (v.sites != sites) throw InvalidArgument("state and operator site counts differ");
  auto out = StateVector::zero(sites);
  for (std::size_t k = 0; k < target.size(); ++k) {
    out.amplitudes(static_cast<Eigen::Index>(target[k])) +=
        phase[k] * v.amplitudes(static_cast<Eigen::Index>(k));
  }
  return out;
}

MatrixXc PhasedPermutation::to_dense() const {
  const auto n = static_cast<Eigen::Index>(target.size());
  MatrixXc m = MatrixXc::Zero(n, n);
  for (std::size_t k = 0; k < target.size(); ++k) {
    m(static_cast<Eigen::Index>(target[k]), static_cast<Eigen::Index>(k)) = phase[k];
  }
  return m;
}

PhasedPermutation compose(const PhasedPermutation& a, const PhasedPermutation& b) {
  if (a.sites != b.sites) throw InvalidArgument("phased permutation site counts differ");
  PhasedPermutation out{a.sites, std::vector<std::uint32_t>(b.size()), std::vector<Complex>(b.size())};
  for (std::size_t k = 0; k < b.size(); ++k) {
    const auto mid = b.target[k];
    out.target[k] = a.target[mid];
    out.phase[k] = unit(b.phase[k] * a.phase[mid]);
  }
  return out;
}

StateVector apply_generator(const StateVector& v, int i, const RMatrix& c, bool inverse) {
  check_generator(v.sites, i);
  const LocalGate gate = inverse ? LocalGate::backward(c) : LocalGate::forward(c);
  MatrixXc block = v.amplitudes;
  gate.apply_left(block, v.sites, i);
  return {v.sites, block.col(0)};
}

void apply_word_block(MatrixXc& block, const BraidWord& w, const RMatrix& c) {
  if (block.rows() != static_cast<Eigen::Index>(std::uint64_t{1} << w.strands())) {
    throw InvalidArgument("word acts on " + std::to_string(w.strands()) +
                          " strands but the state has a different size");
  }
  const LocalGate fwd = LocalGate::forward(c);
  const LocalGate bwd = LocalGate::backward(c);
  const auto& letters = w.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    (it->exponent > 0 ? fwd : bwd).apply_left(block, w.strands(), it->generator);
  }
}

StateVector apply_word(const StateVector& v, const BraidWord& w, const RMatrix& c) {
  if (w.strands() != v.sites) {
    throw InvalidArgument("word has " + std::to_string(w.strands()) + " strands, state has " +
                          std::to_string(v.sites) + " sites");
  }
  MatrixXc block = v.amplitudes;
  apply_word_block(block, w, c);
  return {v.sites, block.col(0)};
}

MatrixXc materialize(const BraidWord& w, const RMatrix& c, int max_sites) {
  if (w.strands() > max_sites) {
    throw GuardExceeded("materialize refused for N = " + std::to_string(w.strands()) +
                        " (guard " + std::to_string(max_sites) + ")");
  }
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << w.strands());
  MatrixXc m = MatrixXc::Identity(dim, dim);
  apply_word_block(m, w, c);
  return m;
}

PhasedPermutation generator_phased(int sites, int i, const RMatrix& c, bool inverse) {
  check_sites(sites);
  check_generator(sites, i);
  const auto map = local_phased_map(c, inverse);
  const int hb = site_bit(sites, i);
  const int lb = site_bit(sites, i + 1);
  const std::uint64_t mask = (std::uint64_t{1} << hb) | (std::uint64_t{1} << lb);
  auto p = PhasedPermutation::identity(sites);
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto s = static_cast<std::size_t>((((k >> hb) & 1U) << 1) | ((k >> lb) & 1U));
    const auto r = static_cast<std::uint64_t>(map.target[s]);
    const std::uint64_t moved = (k & ~mask) | ((r >> 1) << hb) | ((r & 1U) << lb);
    p.target[k] = static_cast<std::uint32_t>(moved);
    p.phase[k] = map.phase[s];
  }
  return p;
}

PhasedPermutation as_phased_permutation(const BraidWord& w, const RMatrix& c) {
  const int sites = w.strands();
  const LocalPhasedMap maps[2] = {local_phased_map(c, true), local_phased_map(c, false)};
  auto p = PhasedPermutation::identity(sites);
  const auto& letters = w.letters();
  constexpr std::size_t kRenormEvery = 32;
  for (std::size_t k = 0; k < p.size(); ++k) {
    std::uint64_t idx = k;
    Complex ph = 1.0;
    std::size_t step = 0;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      const auto& map = maps[it->exponent > 0 ? 1 : 0];
      const int hb = site_bit(sites, it->generator);
      const int lb = hb - 1;
      const auto s = static_cast<std::size_t>((((idx >> hb) & 1U) << 1) | ((idx >> lb) & 1U));
      const auto r = static_cast<std::uint64_t>(map.target[s]);
      idx = (idx & ~((std::uint64_t{3}) << lb)) | (r << lb);
      ph *= map.phase[s];
      if (++step % kRenormEvery == 0) ph = unit(ph);
    }
    p.target[k] = static_cast<std::uint32_t>(idx);
    p.phase[k] = unit(ph);
  }
  return p;
}

}  // namespace braidform
