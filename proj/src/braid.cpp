#include "braidform/braid.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "braidform/errors.hpp"

namespace braidform {

Permutation Permutation::identity(int size) {
  if (size < 0) throw InvalidArgument("permutation size must be nonnegative");
  std::vector<int> images(static_cast<std::size_t>(size));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::transposition(int size, int i) {
  if (i < 1 || i >= size) throw InvalidArgument("transposition index out of range");
  auto p = identity(size);
  std::swap(p.images_[static_cast<std::size_t>(i - 1)], p.images_[static_cast<std::size_t>(i)]);
  return p;
}

Permutation Permutation::from_images(std::vector<int> images) {
  std::vector<bool> seen(images.size(), false);
  for (int v : images) {
    if (v < 1 || v > static_cast<int>(images.size()) || seen[static_cast<std::size_t>(v - 1)]) {
      throw InvalidArgument("images do not form a bijection of {1..N}");
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (std::size_t k = 0; k < images_.size(); ++k) {
    if (images_[k] != static_cast<int>(k) + 1) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t k = 0; k < images_.size(); ++k) {
    inv[static_cast<std::size_t>(images_[k] - 1)] = static_cast<int>(k) + 1;
  }
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw InvalidArgument("permutation size mismatch");
  std::vector<int> out(b.images_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a(b.images_[k]);
  return Permutation(std::move(out));
}

namespace {

void push_reduced(std::vector<Letter>& stack, const Letter& l) {
  if (!stack.empty() && stack.back().generator == l.generator &&
      stack.back().exponent == -l.exponent) {
    stack.pop_back();
  } else {
    stack.push_back(l);
  }
}

}  // namespace

BraidWord::BraidWord(int strands, std::vector<Letter> letters) : strands_(strands) {
  if (strands < 1) throw InvalidArgument("braid word needs at least one strand");
  letters_.reserve(letters.size());
  for (const auto& l : letters) {
    if (l.generator < 1 || l.generator > strands - 1) {
      throw InvalidArgument("generator index " + std::to_string(l.generator) +
                            " out of range for " + std::to_string(strands) + " strands");
    }
    if (l.exponent != 1 && l.exponent != -1) {
      throw InvalidArgument("letter exponent must be +1 or -1");
    }
    push_reduced(letters_, l);
  }
}

BraidWord BraidWord::generator(int strands, int i, int exponent) {
  return BraidWord(strands, {Letter{i, exponent}});
}

std::string BraidWord::to_string() const {
  if (letters_.empty()) return "e";
  std::ostringstream os;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (k) os << ' ';
    os << 'b' << letters_[k].generator;
    if (letters_[k].exponent < 0) os << "^-1";
  }
  return os.str();
}

BraidWord compose(const BraidWord& a, const BraidWord& b) {
  if (a.strands() != b.strands()) {
    throw InvalidArgument("cannot compose braid words on " + std::to_string(a.strands()) +
                          " and " + std::to_string(b.strands()) + " strands");
  }
  std::vector<Letter> letters = a.letters();
  letters.insert(letters.end(), b.letters().begin(), b.letters().end());
  return BraidWord(a.strands(), std::move(letters));
}

BraidWord invert(const BraidWord& a) {
  std::vector<Letter> letters;
  letters.reserve(a.length());
  for (auto it = a.letters().rbegin(); it != a.letters().rend(); ++it) {
    letters.push_back({it->generator, -it->exponent});
  }
  return BraidWord(a.strands(), std::move(letters));
}

Permutation to_permutation(const BraidWord& a) {
  // φ(l_1 ... l_k) = s_{l_1} ∘ ... ∘ s_{l_k}; right-multiplying by s_i swaps
  // positions i and i+1 of the one-line form.
  std::vector<int> images(static_cast<std::size_t>(a.strands()));
  std::iota(images.begin(), images.end(), 1);
  for (const auto& l : a.letters()) {
    std::swap(images[static_cast<std::size_t>(l.generator - 1)],
              images[static_cast<std::size_t>(l.generator)]);
  }
  return Permutation::from_images(std::move(images));
}

BraidWord pure_braid_generator(int i, int j, int strands) {
  if (strands < 2 || i < 1 || i > j || j > strands - 1) {
    throw InvalidArgument("pure braid generator x_{" + std::to_string(i) + "," +
                          std::to_string(j) + "} requires 1 <= i <= j <= N-1 with N = " +
                          std::to_string(strands));
  }
  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(2 * (j - i) + 2));
  for (int k = j; k > i; --k) letters.push_back({k, 1});
  letters.push_back({i, 1});
  letters.push_back({i, 1});
  for (int k = i + 1; k <= j; ++k) letters.push_back({k, -1});
  return BraidWord(strands, std::move(letters));
}

std::vector<BraidWord> pure_generators(int strands) {
  if (strands < 2) throw InvalidArgument("pure generators need N >= 2");
  std::vector<BraidWord> out;
  out.reserve(static_cast<std::size_t>(strands * (strands - 1) / 2));
  for (int i = 1; i <= strands - 1; ++i) {
    for (int j = i; j <= strands - 1; ++j) out.push_back(pure_braid_generator(i, j, strands));
  }
  return out;
}

std::vector<int> factor_by_position_swaps(const Permutation& sigma) {
  // Bubble sort on positions: σ s_{a_1} ... s_{a_k} = e, hence σ = s_{a_k} ... s_{a_1}.
  std::vector<int> p = sigma.images();
  std::vector<int> swaps;
  const int n = sigma.size();
  for (int pass = 0; pass < n; ++pass) {
    bool changed = false;
    for (int k = 0; k + 1 < n; ++k) {
      if (p[static_cast<std::size_t>(k)] > p[static_cast<std::size_t>(k + 1)]) {
        std::swap(p[static_cast<std::size_t>(k)], p[static_cast<std::size_t>(k + 1)]);
        swaps.push_back(k + 1);
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

std::vector<int> factor_by_value_swaps(const Permutation& sigma) {
  // Left multiplication s_i σ exchanges the values i and i+1; apply it while
  // value i+1 sits left of value i. Then s_{b_k} ... s_{b_1} σ = e and
  // σ = s_{b_1} ... s_{b_k}.
  const int n = sigma.size();
  std::vector<int> pos(static_cast<std::size_t>(n + 1));
  for (int k = 1; k <= n; ++k) pos[static_cast<std::size_t>(sigma(k))] = k;
  std::vector<int> swaps;
  for (;;) {
    int found = 0;
    for (int v = n - 1; v >= 1; --v) {
      if (pos[static_cast<std::size_t>(v + 1)] < pos[static_cast<std::size_t>(v)]) {
        found = v;
        break;
      }
    }
    if (!found) break;
    std::swap(pos[static_cast<std::size_t>(found)], pos[static_cast<std::size_t>(found + 1)]);
    swaps.push_back(found);
  }
  return swaps;
}

}  // namespace braidform
