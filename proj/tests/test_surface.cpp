#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "xfg/error.hpp"
#include "xfg/surface.hpp"

using namespace xfg;

namespace {

// Frozen from the first run of the pipeline.
constexpr std::uint32_t kTheorem1Prime = 5;
constexpr std::uint32_t kTheorem1Classes = 1668;

const ClassTable& table35() {
  static const ClassTable t = enumerate_classes(3, Prime(5));
  return t;
}

FreeWord random_word(std::mt19937_64& rng, std::uint32_t rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, rank);
  std::vector<Letter> w;
  for (int i = len(rng); i > 0; --i) w.push_back(rng() & 1 ? gen(rng) : -gen(rng));
  return FreeWord(rank, w);
}

bool nontrivial_in_quotients(const FreeWord& w,
                             const std::vector<std::array<oracle::Mat, 4>>& reps) {
  for (auto const& r : reps) {
    if (oracle::evaluate(w.letters(), r, 5) != oracle::canon({1, 0, 0, 1}, 5)) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("surface group and handlebody map") {
  SurfaceGroup s(2);
  CHECK(s.alphabet().format(s.relator()) == "a1.b1.A1.B1.a2.b2.A2.B2");
  CHECK_THROWS_AS(SurfaceGroup(1), Error);
  HandlebodyEpi phi(2);
  CHECK(phi.apply(s.alphabet().parse("a1.b1.a2")) == FreeWord(2, {1, 2}));
  CHECK(phi.in_kernel(s.relator()));
  CHECK_FALSE(phi.in_kernel(s.a(1)));
  CHECK(phi.in_kernel(s.b(2)));
}

TEST_CASE("dehn algorithm") {
  SurfaceGroup s(2);
  auto const& al = s.alphabet();
  CHECK(s.is_trivial(s.relator()));
  CHECK(s.is_trivial(s.relator().inverse()));
  CHECK_FALSE(s.is_trivial(s.a(1)));
  CHECK(s.is_trivial(FreeWord(4)));
  auto comm = al.parse("a1.b1.A1.B1");
  CHECK_FALSE(s.is_trivial(comm));

  std::mt19937_64 rng(21);
  auto reps = oracle::surface_reps(5, 40, rng);
  for (auto const& r : reps) {
    REQUIRE(oracle::evaluate(s.relator().letters(), r, 5) ==
            oracle::canon({1, 0, 0, 1}, 5));
  }
  CHECK(nontrivial_in_quotients(comm, reps));

  for (int k = 0; k < 100; ++k) {
    FreeWord w(4);
    for (int c = rng() % 3 + 1; c > 0; --c) {
      auto u = random_word(rng, 4, 6);
      w *= u * (rng() & 1 ? s.relator() : s.relator().inverse()) * u.inverse();
    }
    REQUIRE(s.is_trivial(w));
  }
  int nontrivial = 0;
  while (nontrivial < 100) {
    auto w = random_word(rng, 4, 20);
    if (!nontrivial_in_quotients(w, reps)) continue;
    ++nontrivial;
    REQUIRE_FALSE(s.is_trivial(w));
  }
  // conjugates of a nontrivial word stay nontrivial
  CHECK_FALSE(s.is_trivial(al.parse("b2.a1.B2")));
}

TEST_CASE("builtin twists") {
  CHECK(builtin_twists(2).size() == 5);
  CHECK(builtin_twists(3).size() == 7);
  CHECK_THROWS_AS(builtin_twists(1), Error);
  CHECK(builtin_twist_data().find("a{i}=a{i}.b{i}") != std::string_view::npos);
  for (std::uint32_t g : {2u, 3u}) {
    SurfaceGroup s(g);
    for (auto const& t : builtin_twists(g)) {
      CAPTURE(t.label());
      CHECK(s.is_relator_rotation(t.apply(s.relator())));
      CHECK(s.is_relator_rotation(t.apply_inverse(s.relator())));
      for (std::uint32_t i = 1; i <= 2 * g; ++i) {
        auto x = FreeWord::generator(2 * g, i);
        CHECK(s.is_trivial(t.apply(t.apply_inverse(x)) * x.inverse()));
      }
    }
  }
  auto m1 = builtin_twists(2)[0];
  CHECK(m1.label() == "m1");
  SurfaceGroup s(2);
  CHECK(m1.apply(s.relator()) == s.relator());

  // a table with a wrong inverse, or one that breaks R, is rejected
  auto images = m1.images();
  CHECK_THROWS_AS(SurfaceAutomorphism(2, images, images), Error);
  auto broken = m1.images();
  broken[0] = s.alphabet().parse("a1.a1");
  CHECK_THROWS_AS(SurfaceAutomorphism(2, broken, m1.inverse_images()), Error);
}

TEST_CASE("induced free automorphisms") {
  HandlebodyEpi phi(2);
  auto twists = builtin_twists(2);
  auto m1 = std::get<FreeAutomorphism>(induced_free_automorphism(phi, twists[0]));
  CHECK(m1.is_identity());
  CHECK(std::get<FreeAutomorphism>(
            induced_free_automorphism(phi, SurfaceAutomorphism::identity(2)))
            .is_identity());
  auto l1 = std::get<NotStabilizing>(induced_free_automorphism(phi, twists[2]));
  CHECK(l1.generator == 1);
  CHECK(l1.image == FreeWord(2, {1}));
  CHECK_THROWS_AS(
      induced_free_automorphism(HandlebodyEpi(3), twists[0]), Error);

  // descent: phi o f = F o phi on random surface words
  std::mt19937_64 rng(31);
  HandlebodyEpi phi3(3);
  for (auto const& sw : stabilizing_twist_words(3, 4)) {
    auto f = twist_word_map(3, sw.word);
    for (int k = 0; k < 20; ++k) {
      auto w = random_word(rng, 6, 10);
      REQUIRE(phi3.apply(f.apply(w)) == sw.induced.apply(phi3.apply(w)));
    }
  }
}

TEST_CASE("stabilizing twist words") {
  auto ta = twist_alphabet(3);
  auto words = stabilizing_twist_words(3, 4);
  CHECK(words.size() == 18);
  CHECK(ta.format(words[0].word) == "l1.m1.C1.L1");
  auto inversion = stabilizing_twist_words(3, 6, std::vector<std::uint32_t>{1, 3});
  REQUIRE(inversion.size() == 1);
  CHECK(inversion[0].induced.images()[0] == FreeWord(3, {-1}));
}

TEST_CASE("action on X^phi") {
  HandlebodyEpi phi(3);
  auto const& tab = table35();
  for (auto const& t : builtin_twists(3)) {
    auto fast = action_on_Xphi(phi, t, tab);
    auto direct = action_on_Xphi(phi, t, tab, ActionMode::Direct);
    CAPTURE(t.label());
    REQUIRE(fast.index() == direct.index());
    if (auto* p = std::get_if<Permutation>(&fast)) {
      CHECK(p->is_identity());
      CHECK(*p == std::get<Permutation>(direct));
    } else {
      CHECK(t.label()[0] == 'l');
    }
  }
  for (auto const& sw : stabilizing_twist_words(3, 4)) {
    auto f = twist_word_map(3, sw.word);
    auto fast = std::get<Permutation>(action_on_Xphi(phi, f, tab));
    auto direct =
        std::get<Permutation>(action_on_Xphi(phi, f, tab, ActionMode::Direct));
    REQUIRE(fast == direct);
    REQUIRE(fast == out_action(tab, sw.induced));
  }
  CHECK_THROWS_AS(action_on_Xphi(HandlebodyEpi(2), builtin_twists(2)[0], tab),
                  Error);
}

TEST_CASE("separability witnesses") {
  auto twists = builtin_twists(2);
  auto w = std::get<SeparabilityWitness>(separability_witness(2, twists[2]));
  CHECK(w.gamma == FreeWord(4, {2}));
  CHECK(w.image == FreeWord(2, {1}));
  CHECK(w.quotient.p == 5);
  CHECK(replay(w));
  auto bad = w;
  bad.gamma = FreeWord(4, {1});
  CHECK_FALSE(replay(bad));

  auto m = std::get<StabilizesInstead>(separability_witness(2, twists[0]));
  CHECK(m.induced.is_identity());
  auto id = std::get<StabilizesInstead>(
      separability_witness(2, SurfaceAutomorphism::identity(2)));
  CHECK(id.induced.is_identity());
  CHECK_THROWS_AS(separability_witness(3, twists[0]), Error);
}

TEST_CASE("symmetric quotient and involvement certificates") {
  CHECK_THROWS_AS(theorem1_certificate(2, 2, 7), Error);
  CHECK_THROWS_AS(theorem1_certificate(3, 0, 7), Error);
  auto cert = theorem1_certificate(3, 2, 7);
  REQUIRE(cert.outcome == Theorem1Outcome::Symmetric);
  REQUIRE(cert.table);
  CHECK(cert.table->prime().value() == kTheorem1Prime);
  CHECK(cert.table->size() == kTheorem1Classes);
  CHECK(*cert.table == table35());
  auto again = recognize_sym_alt(cert.permutations, cert.table->size());
  CHECK(again.result == Recognition::Symmetric);
  CHECK(again.witness_word == cert.evidence.witness_word);

  // a demand beyond every table in range
  auto none = theorem1_certificate(3, 100000, 5);
  CHECK(none.outcome == Theorem1Outcome::NotFound);
  CHECK(none.scanned.size() == 1);

  CHECK_THROWS_AS(involve_certificate(0, 7), Error);
  auto inv = involve_certificate(6, 7);
  CHECK(inv.theorem1.r == 6);
  CHECK(inv.theorem1.outcome == Theorem1Outcome::Symmetric);
  CHECK(involve_certificate(1, 7).theorem1.outcome == Theorem1Outcome::Symmetric);
}

TEST_CASE("twist word actions lie in the Nielsen image") {
  auto const& tab = table35();
  std::vector<Permutation> nielsen;
  for (auto const& s : nielsen_generators(3)) nielsen.push_back(out_action(tab, s));
  auto evidence = recognize_sym_alt(nielsen, tab.size());
  HandlebodyEpi phi(3);
  std::vector<Permutation> twists;
  for (auto const& sw : stabilizing_twist_words(3, 4)) {
    twists.push_back(std::get<Permutation>(
        action_on_Xphi(phi, twist_word_map(3, sw.word), tab)));
  }
  for (bool b : contains_recognized(nielsen, evidence, twists)) CHECK(b);

  // exact path on a small instance
  auto small = enumerate_classes(2, Prime(5));
  std::vector<Permutation> gens;
  for (auto const& s : nielsen_generators(2)) gens.push_back(out_action(small, s));
  auto ev = recognize_sym_alt(gens, small.size());
  CHECK(ev.path == "exact");
  auto member = contains_recognized(gens, ev, std::vector{gens[0] * gens[1]});
  CHECK(member[0]);
}
