#include <doctest.h>

#include <random>

#include "braidform/braid.hpp"
#include "braidform/errors.hpp"
#include "braidform/json_io.hpp"
#include "oracles.hpp"

using namespace braidform;

namespace {
BraidWord word(int n, std::vector<Letter> letters) { return BraidWord(n, std::move(letters)); }
}  // namespace

TEST_CASE("compose reduces freely") {
  CHECK(compose(word(2, {{1, 1}}), word(2, {{1, -1}})).empty());
  CHECK(compose(word(3, {{1, 1}, {2, 1}}), word(3, {{2, -1}})) == word(3, {{1, 1}}));

  const auto w = compose(word(3, {{2, 1}, {1, 1}}), word(3, {{1, 1}, {2, -1}}));
  CHECK(w.length() == 4);
  CHECK(w.letters() == std::vector<Letter>{{2, 1}, {1, 1}, {1, 1}, {2, -1}});

  CHECK_THROWS_AS(compose(word(2, {}), word(3, {})), InvalidArgument);
}

TEST_CASE("words are reduced on construction") {
  const auto w = word(4, {{1, 1}, {2, 1}, {2, -1}, {1, -1}, {3, 1}});
  CHECK(w.letters() == std::vector<Letter>{{3, 1}});
  CHECK_THROWS_AS(word(3, {{3, 1}}), InvalidArgument);
  CHECK_THROWS_AS(word(3, {{0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(word(3, {{1, 2}}), InvalidArgument);
  CHECK_THROWS_AS(BraidWord(0), InvalidArgument);
}

TEST_CASE("invert") {
  CHECK(invert(word(3, {})).empty());
  CHECK(invert(word(3, {{1, 1}, {2, 1}})) == word(3, {{2, -1}, {1, -1}}));
  const auto x = pure_braid_generator(1, 2, 3);
  CHECK(compose(invert(x), x).empty());
}

TEST_CASE("to_permutation") {
  CHECK(to_permutation(word(2, {{1, 1}})) == Permutation::transposition(2, 1));
  CHECK(to_permutation(word(2, {{1, -1}})) == Permutation::transposition(2, 1));
  CHECK(to_permutation(pure_braid_generator(1, 2, 3)).is_identity());
  // b1 b2 = s1 ∘ s2 : 1 → 2 → 3 → 1
  const auto p = to_permutation(word(3, {{1, 1}, {2, 1}}));
  CHECK(p.images() == std::vector<int>{2, 3, 1});
}

TEST_CASE("pure braid generators") {
  CHECK(pure_braid_generator(1, 1, 2) == word(2, {{1, 1}, {1, 1}}));
  CHECK(pure_braid_generator(1, 2, 3) == word(3, {{2, 1}, {1, 1}, {1, 1}, {2, -1}}));
  CHECK(to_permutation(pure_braid_generator(2, 3, 5)).is_identity());
  CHECK_THROWS_AS(pure_braid_generator(2, 1, 4), InvalidArgument);
  CHECK_THROWS_AS(pure_braid_generator(1, 3, 3), InvalidArgument);

  CHECK(pure_generators(2).size() == 1);
  const auto g3 = pure_generators(3);
  REQUIRE(g3.size() == 3);
  CHECK(g3[0] == pure_braid_generator(1, 1, 3));
  CHECK(g3[1] == pure_braid_generator(1, 2, 3));
  CHECK(g3[2] == pure_braid_generator(2, 2, 3));
  // Count pairs 1 <= i <= j <= 4 by enumeration.
  int pairs = 0;
  for (int i = 1; i <= 4; ++i)
    for (int j = i; j <= 4; ++j) ++pairs;
  CHECK(pure_generators(5).size() == static_cast<std::size_t>(pairs));
  CHECK(pairs == 10);
  CHECK_THROWS_AS(pure_generators(1), InvalidArgument);
}

TEST_CASE("pure generator lengths and kernel membership") {
  for (int n = 2; n <= 8; ++n) {
    for (int i = 1; i <= n - 1; ++i) {
      for (int j = i; j <= n - 1; ++j) {
        const auto x = pure_braid_generator(i, j, n);
        CHECK(x.length() == static_cast<std::size_t>(i < j ? 2 * (j - i) + 2 : 2));
        CHECK(to_permutation(x).is_identity());
      }
    }
  }
}

TEST_CASE("property: inverse cancels and phi is a homomorphism") {
  std::mt19937_64 gen(20261015);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 6);
    const auto a = oracle::random_word(gen, n, static_cast<int>(gen() % 12));
    const auto b = oracle::random_word(gen, n, static_cast<int>(gen() % 12));
    CHECK(compose(a, invert(a)).empty());
    CHECK(to_permutation(compose(a, invert(a))).is_identity());
    CHECK(to_permutation(compose(a, b)) == to_permutation(a) * to_permutation(b));
  }
}

TEST_CASE("transposition factorizations reproduce the permutation") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> images(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) images[static_cast<std::size_t>(k)] = k + 1;
    do {
      const auto sigma = Permutation::from_images(images);
      for (const auto& factors : {factor_by_position_swaps(sigma), factor_by_value_swaps(sigma)}) {
        std::vector<Letter> letters;
        for (int a : factors) letters.push_back({a, 1});
        CHECK(to_permutation(BraidWord(n, letters)) == sigma);
      }
    } while (std::next_permutation(images.begin(), images.end()));
  }
  // The two strategies produce different words in general.
  const auto sigma = Permutation::from_images({3, 1, 2});
  CHECK(factor_by_position_swaps(sigma).size() == factor_by_value_swaps(sigma).size());
}

TEST_CASE("permutation validation") {
  CHECK_THROWS_AS(Permutation::from_images({1, 1}), InvalidArgument);
  CHECK_THROWS_AS(Permutation::from_images({0, 1}), InvalidArgument);
  const auto p = Permutation::from_images({2, 3, 1});
  CHECK((p * p.inverse()).is_identity());
}

TEST_CASE("braid word JSON") {
  const auto x = pure_braid_generator(1, 2, 3);
  const auto j = braid_word_to_json(x);
  CHECK(j.dump() == R"({"strands":3,"letters":[[2,1],[1,1],[1,1],[2,-1]]})");
  CHECK(braid_word_from_json(nlohmann::json::parse(j.dump())) == x);
  CHECK_THROWS_AS(braid_word_from_json(nlohmann::json::parse(R"({"strands":3,"letters":[[4,1]]})")),
                  InvalidArgument);
  CHECK_THROWS_AS(braid_word_from_json(nlohmann::json::parse(R"({"letters":[]})")), InvalidArgument);
}
