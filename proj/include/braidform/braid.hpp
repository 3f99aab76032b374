#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace braidform {

/// One letter b_i^{±1} of a braid word. Generator indices are one-based.
struct Letter {
  int generator = 1;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A permutation of {1..N} in one-line notation: image(k) = σ(k).
/// Composition follows function composition, (a * b)(k) = a(b(k)).
class Permutation {
 public:
  static Permutation identity(int size);
  static Permutation transposition(int size, int i);  // swaps i and i+1
  static Permutation from_images(std::vector<int> images);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int k) const { return images_.at(static_cast<std::size_t>(k - 1)); }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {}
  std::vector<int> images_;
};

/// A freely reduced word in the braid generators on `strands` strands.
///
/// Words are reduced on construction, so adjacent cancelling pairs never
/// appear in `letters()`. No braid relations are applied.
class BraidWord {
 public:
  explicit BraidWord(int strands, std::vector<Letter> letters = {});

  /// The single-letter word b_i^{exponent}.
  static BraidWord generator(int strands, int i, int exponent = 1);

  int strands() const { return strands_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  std::string to_string() const;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  int strands_;
  std::vector<Letter> letters_;
};

/// Concatenation followed by free reduction.
BraidWord compose(const BraidWord& a, const BraidWord& b);

/// Reversed word with flipped exponents.
BraidWord invert(const BraidWord& a);

/// The canonical homomorphism B_N -> S_N, b_i -> (i i+1).
Permutation to_permutation(const BraidWord& a);

/// x_{i,j} = b_j b_{j-1} ... b_{i+1} b_i^2 b_{i+1}^{-1} ... b_j^{-1}.
/// Requires 1 <= i <= j <= N-1.
BraidWord pure_braid_generator(int i, int j, int strands);

/// All x_{i,j} with 1 <= i <= j <= N-1 in lexicographic (i, j) order.
std::vector<BraidWord> pure_generators(int strands);

/// Adjacent-transposition factorizations of a permutation. Each returns
/// generator indices a_1..a_k with σ = s_{a_1} s_{a_2} ... s_{a_k}.
/// The two routines use different sorting strategies and generally produce
/// different words for the same σ.
std::vector<int> factor_by_position_swaps(const Permutation& sigma);
std::vector<int> factor_by_value_swaps(const Permutation& sigma);

}  // namespace braidform
