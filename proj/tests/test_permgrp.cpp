#include <doctest.h>

#include <random>
#include <set>

#include "xfg/error.hpp"
#include "xfg/permgrp.hpp"

using namespace xfg;

namespace {

// Every element of <gens> by breadth-first products.
std::set<std::vector<std::uint32_t>> elements(
    const std::vector<Permutation>& gens) {
  auto n = gens.front().degree();
  std::set<std::vector<std::uint32_t>> seen{Permutation::identity(n).images()};
  std::vector<Permutation> todo{Permutation::identity(n)};
  while (!todo.empty()) {
    auto x = todo.back();
    todo.pop_back();
    for (auto const& g : gens) {
      auto y = g * x;
      if (seen.insert(y.images()).second) todo.push_back(y);
    }
  }
  return seen;
}

Permutation random_perm(std::mt19937_64& rng, std::uint32_t n) {
  std::vector<std::uint32_t> v(n);
  for (std::uint32_t i = 0; i < n; ++i) v[i] = i;
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(v);
}

Permutation cycle(std::uint32_t n, std::vector<std::uint32_t> c) {
  return Permutation::from_cycles(n, {c});
}

Permutation long_cycle(std::uint32_t n) {
  std::vector<std::uint32_t> c(n);
  for (std::uint32_t i = 0; i < n; ++i) c[i] = i;
  return cycle(n, c);
}

}  // namespace

TEST_CASE("permutation basics") {
  auto t = cycle(4, {0, 1});
  auto c = cycle(4, {0, 1, 2});
  CHECK(parity(t) == Parity::Odd);
  CHECK(parity(c) == Parity::Even);
  CHECK((c * inverse(c)).is_identity());
  // apply the right factor first
  CHECK((t * c)[0] == 0);
  CHECK((c * t)[0] == 2);
  CHECK(cycle_type(Permutation::from_cycles(6, {{0, 1}, {2, 3, 4}})) ==
        std::vector<std::uint32_t>{3, 2});
  CHECK_THROWS_AS(Permutation({0, 0, 1}), Error);
  CHECK_THROWS_AS(t * Permutation::identity(5), Error);
  CHECK(factorial(5) == 120);
}

TEST_CASE("group orders") {
  CHECK(group_order(std::vector{cycle(3, {0, 1}), cycle(3, {0, 1, 2})}) == 6);
  CHECK(group_order(std::vector{long_cycle(5), cycle(5, {0, 1})}) == 120);
  CHECK(group_order(std::vector{cycle(5, {0, 1, 2}), cycle(5, {2, 3, 4})}) ==
        60);
  CHECK_THROWS_AS(group_order(std::vector<Permutation>{}), Error);
  CHECK_THROWS_AS(group_order(std::vector{cycle(3, {0, 1}), cycle(4, {0, 1})}),
                  Error);
  // M_11 on 11 points
  auto a = cycle(11, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  auto b = Permutation::from_cycles(11, {{2, 6, 10, 7}, {3, 9, 4, 5}});
  CHECK(group_order(std::vector{a, b}) == 7920);

  std::mt19937_64 rng(1);
  for (int k = 0; k < 40; ++k) {
    std::uint32_t n = 3 + k % 6;
    std::vector<Permutation> gens;
    // sparse generators give proper subgroups often enough
    for (int i = 0; i < 2; ++i) {
      auto x = random_perm(rng, n);
      gens.push_back(k % 3 == 0 ? x * x : x);
    }
    PermGroup g(n, gens);
    auto all = elements(gens);
    REQUIRE(g.order() == all.size());
    for (int j = 0; j < 30; ++j) {
      auto y = random_perm(rng, n);
      REQUIRE(g.contains(y) == all.count(y.images()) > 0);
    }
  }
}

TEST_CASE("membership") {
  std::mt19937_64 rng(2);
  std::vector<Permutation> gens{random_perm(rng, 30), random_perm(rng, 30)};
  PermGroup g(30, gens);
  for (int k = 0; k < 100; ++k) {
    std::vector<std::uint32_t> word;
    for (int i = 0; i < 20; ++i) word.push_back(rng() % 2);
    REQUIRE(g.contains(evaluate_word(gens, word, 30)));
  }
  CHECK(g.contains(Permutation::identity(30)));
  PermGroup alt(5, {cycle(5, {0, 1, 2}), cycle(5, {1, 2, 3}),
                    cycle(5, {2, 3, 4})});
  CHECK_FALSE(alt.contains(cycle(5, {0, 1})));
  CHECK_THROWS_AS(alt.contains(Permutation::identity(4)), Error);
}

TEST_CASE("transitivity and primitivity") {
  CHECK(is_transitive(std::vector{long_cycle(6)}, 6));
  CHECK_FALSE(is_transitive(std::vector{cycle(6, {0, 1, 2})}, 6));
  // the cycle preserves {even}, {odd}
  CHECK_FALSE(is_primitive(std::vector{long_cycle(6)}, 6));
  CHECK(is_primitive(std::vector{long_cycle(7)}, 7));
  CHECK(is_primitive(std::vector{long_cycle(6), cycle(6, {0, 1})}, 6));
  // S_3 wr S_2 on 6 points
  auto w = Permutation::from_cycles(6, {{0, 3}, {1, 4}, {2, 5}});
  CHECK_FALSE(is_primitive(std::vector{w, cycle(6, {0, 1}), cycle(6, {0, 1, 2})},
                           6));
}

TEST_CASE("symmetric and alternating recognition") {
  auto sym5 = recognize_sym_alt(std::vector{cycle(5, {0, 1}), long_cycle(5)}, 5);
  CHECK(sym5.result == Recognition::Symmetric);
  CHECK(sym5.path == "exact");
  std::vector<Permutation> threes;
  for (std::uint32_t a = 0; a < 5; ++a)
    for (std::uint32_t b = 0; b < 5; ++b)
      for (std::uint32_t c = 0; c < 5; ++c)
        if (a != b && b != c && a != c) threes.push_back(cycle(5, {a, b, c}));
  auto alt5 = recognize_sym_alt(threes, 5);
  CHECK(alt5.result == Recognition::Alternating);
  CHECK(*alt5.order == 60);
  CHECK(recognize_sym_alt(std::vector{Permutation::identity(5)}, 5).result ==
        Recognition::Other);
  CHECK(recognize_sym_alt(std::vector<Permutation>{}, 0).result ==
        Recognition::Other);
  CHECK_THROWS_AS(recognize_sym_alt(std::vector{long_cycle(4)}, 5), Error);
}

TEST_CASE("giant path agrees with the exact path") {
  std::mt19937_64 rng(4);
  RecognitionOptions giant;
  giant.force_giant = true;
  for (std::uint32_t n = 8; n <= 60; n += 4) {
    CAPTURE(n);
    std::vector<std::vector<Permutation>> cases;
    cases.push_back({cycle(n, {0, 1}), long_cycle(n)});
    cases.push_back({random_perm(rng, n), random_perm(rng, n)});
    auto x = random_perm(rng, n);
    auto y = random_perm(rng, n);
    cases.push_back({x * x, y * y});  // even generators
    // imprimitive: preserves the halves {0..n/2-1}, {n/2..n-1}
    std::vector<std::uint32_t> swap(n);
    for (std::uint32_t i = 0; i < n; ++i) swap[i] = (i + n / 2) % n;
    cases.push_back({Permutation(swap), cycle(n, {0, 1})});
    for (auto const& gens : cases) {
      auto exact = recognize_sym_alt(gens, n);
      auto fast = recognize_sym_alt(gens, n, giant);
      REQUIRE(exact.path == "exact");
      REQUIRE(fast.path == "giant");
      if (!fast.inconclusive) REQUIRE(exact.result == fast.result);
      if (exact.result != Recognition::Other) {
        REQUIRE_FALSE(fast.inconclusive);
        REQUIRE(is_jordan_prime(fast.witness_prime, n));
        auto w = evaluate_word(gens, fast.witness_word, n);
        REQUIRE(cycle_type(w) == fast.witness_cycle_type);
      }
    }
  }
}

TEST_CASE("giant path at large degree") {
  std::uint32_t n = 401;
  std::mt19937_64 rng(9);
  auto x = random_perm(rng, n);
  auto y = random_perm(rng, n);
  auto s = recognize_sym_alt(std::vector{cycle(n, {0, 1}), long_cycle(n)}, n);
  CHECK(s.result == Recognition::Symmetric);
  CHECK(s.path == "giant");
  CHECK(s.odd_generator);
  auto a = recognize_sym_alt(std::vector{x * x, y * y}, n);
  CHECK(a.result == Recognition::Alternating);
  CHECK(a.transitive);
  CHECK(a.primitive);
  auto o = recognize_sym_alt(std::vector{cycle(n, {0, 1, 2})}, n);
  CHECK(o.result == Recognition::Other);
  CHECK_FALSE(o.transitive);
  CHECK_FALSE(o.inconclusive);
}

TEST_CASE("jordan primes") {
  CHECK(is_jordan_prime(5, 8));
  CHECK_FALSE(is_jordan_prime(7, 8));
  CHECK_FALSE(is_jordan_prime(3, 8));
  CHECK(is_jordan_prime(11, 19));
}
