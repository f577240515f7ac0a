#include "xfg/verify.hpp"

#include <algorithm>
#include <map>

#include "xfg/error.hpp"
#include "xfg/freegrp.hpp"
#include "xfg/permgrp.hpp"
#include "xfg/psl2.hpp"

namespace xfg {

using nlohmann::json;

namespace {

struct Failure {
  std::string message;
};

struct Malformed {
  std::string message;
};

class Checker {
 public:
  explicit Checker(VerifyReport& report) : report_(report) {}

  void require(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
    report_.passed.push_back(what);
  }

 private:
  VerifyReport& report_;
};

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Malformed{std::string("missing field '") + key + "'"};
  }
  return j.at(key).get<T>();
}

const json& node(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Malformed{std::string("missing field '") + key + "'"};
  }
  return j.at(key);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  for (; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r;
}

// Conjugation of every element by every element of PGL(2,p), realized as
// GL(2,p) matrices normalized so the first nonzero entry is 1.
class PglTable {
 public:
  explicit PglTable(const Psl2Group& group) : group_(group) {
    std::int64_t p = group.prime().value();
    auto order = group.order();
    for (std::int64_t a = 0; a < p; ++a)
      for (std::int64_t b = 0; b < p; ++b)
        for (std::int64_t c = 0; c < p; ++c)
          for (std::int64_t d = 0; d < p; ++d) {
            std::int64_t lead = a ? a : (b ? b : (c ? c : d));
            if (lead != 1) continue;
            std::int64_t det = ((a * d - b * c) % p + p) % p;
            if (det == 0) continue;
            auto dinv = static_cast<std::int64_t>(pow_mod(det, p - 2, p));
            std::vector<ElementIndex> row(order);
            for (ElementIndex i = 0; i < order; ++i) {
              auto x = group.element(i).entries();
              // M x adj(M) / det
              std::int64_t t0 = a * x[0] + b * x[2], t1 = a * x[1] + b * x[3];
              std::int64_t t2 = c * x[0] + d * x[2], t3 = c * x[1] + d * x[3];
              std::int64_t y0 = t0 * d - t1 * c, y1 = -t0 * b + t1 * a;
              std::int64_t y2 = t2 * d - t3 * c, y3 = -t2 * b + t3 * a;
              row[i] = group.index_of(ProjectiveMatrix::make(
                  group.prime(), (y0 % p) * dinv, (y1 % p) * dinv,
                  (y2 % p) * dinv, (y3 % p) * dinv));
            }
            rows_.push_back(std::move(row));
          }
  }

  std::size_t size() const { return rows_.size(); }

  std::vector<ElementIndex> canonical(const std::vector<ElementIndex>& t) const {
    std::vector<ElementIndex> best;
    std::vector<ElementIndex> cur(t.size());
    for (auto const& row : rows_) {
      for (std::size_t i = 0; i < t.size(); ++i) cur[i] = row[t[i]];
      if (best.empty() || cur < best) best = cur;
    }
    return best;
  }

 private:
  const Psl2Group& group_;
  std::vector<std::vector<ElementIndex>> rows_;
};

FreeAutomorphism read_automorphism(const json& j, std::uint32_t rank) {
  auto al = WordAlphabet::free(rank);
  std::vector<FreeWord> images;
  std::vector<FreeWord> inverse;
  for (auto const& w : node(j, "images")) images.push_back(al.parse(w.get<std::string>()));
  for (auto const& w : node(j, "inverse")) inverse.push_back(al.parse(w.get<std::string>()));
  if (images.size() != rank) throw Malformed{"automorphism rank"};
  return FreeAutomorphism(std::move(images), std::move(inverse),
                          j.value("label", std::string()));
}

std::vector<FreeWord> read_words(const json& j, const WordAlphabet& al) {
  std::vector<FreeWord> out;
  for (auto const& w : j) out.push_back(al.parse(w.get<std::string>()));
  return out;
}

// ---------------------------------------------------------------------------

void check_rf(const json& j, Checker& check, const FreeWord* expected_alpha) {
  auto n = field<std::uint32_t>(j, "n");
  if (n < 2) throw Malformed{"rank below 2"};
  auto alpha = WordAlphabet::free(n).parse(field<std::string>(j, "alpha"));
  if (expected_alpha) {
    check.require(alpha == *expected_alpha, "quotient word matches phi(f(gamma))");
  }
  auto q = field<std::uint32_t>(j, "p");
  check.require(q >= 5 && is_prime(q), "p is a prime >= 5");
  Prime p(q);
  auto group = Psl2Group::of(p);
  auto idx = field<std::vector<ElementIndex>>(j, "tuple");
  check.require(idx.size() == n, "tuple has n entries");
  for (auto i : idx) check.require(i < group->order(), "tuple index in range");
  auto res = field<std::vector<std::int64_t>>(j, "alphaImage");
  if (res.size() != 4) throw Malformed{"alphaImage needs four residues"};
  auto image = ProjectiveMatrix::make(p, res[0], res[1], res[2], res[3]);
  check.require(field<bool>(j, "surjective"), "surjective flag set");
  check.require(group->generates(idx), "tuple generates PSL(2,p) by closure");
  std::vector<ProjectiveMatrix> tuple;
  for (auto i : idx) tuple.push_back(group->element(i));
  auto value = word_evaluate(alpha, GroupTuple(p, tuple));
  check.require(value == image, "alpha evaluates to alphaImage");
  check.require(!value.is_identity(), "alpha image is not the identity");
  if (j.contains("embedding")) {
    // Each tuple entry is the reduction of the matrix image of its word.
    auto words = read_words(j.at("embedding"), WordAlphabet::f2());
    check.require(words.size() == n, "embedding has n words");
    GroupTuple ab(p, {ProjectiveMatrix::make(p, 1, 2, 0, 1),
                      ProjectiveMatrix::make(p, 1, 0, 2, 1)});
    for (std::uint32_t i = 0; i < n; ++i) {
      check.require(word_evaluate(words[i], ab) == tuple[i],
                    "tuple entry is the reduced matrix of its embedding word");
    }
  }
}

void check_theorem1(const json& j, Checker& check) {
  auto outcome = field<std::string>(j, "outcome");
  auto g = field<std::uint32_t>(j, "genus");
  auto r = field<std::uint32_t>(j, "r");
  if (outcome != "symmetric") {
    if (outcome != "alternating-only" && outcome != "not-found") {
      throw Malformed{"unknown outcome " + outcome};
    }
    check.require(true, "no symmetric claim to replay");
    return;
  }
  check.require(g >= 3, "genus >= 3");
  auto q = field<std::uint32_t>(j, "p");
  check.require(q >= 5 && is_prime(q), "p is a prime >= 5");
  auto group = Psl2Group::of(Prime(q));
  auto classes = field<std::vector<std::vector<ElementIndex>>>(j, "classes");
  auto big_r = field<std::uint32_t>(j, "R");
  check.require(classes.size() == big_r, "R equals the number of classes");
  check.require(big_r >= r, "R >= r");
  for (auto const& t : classes) {
    if (t.size() != g) throw Malformed{"class tuple length"};
    for (auto i : t) {
      if (i >= group->order()) throw Malformed{"class tuple index"};
    }
  }
  check.require(std::adjacent_find(classes.begin(), classes.end(),
                                   [](auto& x, auto& y) { return !(x < y); }) ==
                    classes.end(),
                "classes strictly increasing");
  bool all_generate = true;
  for (auto const& t : classes) all_generate = all_generate && group->generates(t);
  check.require(all_generate, "every class tuple generates PSL(2,p)");
  PglTable pgl(*group);
  check.require(pgl.size() == pgl2_order(Prime(q)), "PGL(2,p) table size");
  bool canonical = true;
  for (auto const& t : classes) canonical = canonical && pgl.canonical(t) == t;
  check.require(canonical, "every class tuple is least in its PGL(2,p) orbit");

  std::vector<FreeAutomorphism> gens;
  for (auto const& s : node(j, "generators")) gens.push_back(read_automorphism(s, g));
  auto raw = field<std::vector<std::vector<std::uint32_t>>>(j, "permutations");
  check.require(raw.size() == gens.size() && !gens.empty(),
                "one permutation per generator");
  std::vector<Permutation> perms;
  for (auto const& images : raw) {
    check.require(images.size() == big_r, "permutation degree R");
    perms.emplace_back(images);  // throws unless bijective
  }
  for (std::size_t s = 0; s < gens.size(); ++s) {
    bool ok = true;
    for (std::uint32_t k = 0; k < big_r && ok; ++k) {
      auto moved = pgl.canonical(apply_automorphism(gens[s], classes[k], *group));
      auto it = std::lower_bound(classes.begin(), classes.end(), moved);
      ok = it != classes.end() && *it == moved &&
           static_cast<std::uint32_t>(it - classes.begin()) == perms[s][k];
    }
    check.require(ok, "permutation " + std::to_string(s) +
                          " is the action of its automorphism");
  }

  auto const& ev = node(j, "evidence");
  check.require(field<std::string>(ev, "result") == "Symmetric",
                "evidence claims Symmetric");
  auto path = field<std::string>(ev, "path");
  if (path == "exact") {
    check.require(group_order(perms) == factorial(big_r), "group order is R!");
    check.require(field<std::string>(ev, "order") == factorial(big_r).str(),
                  "recorded order is R!");
  } else if (path == "giant") {
    check.require(is_transitive(perms, big_r), "transitive");
    check.require(is_primitive(perms, big_r), "primitive");
    auto word = field<std::vector<std::uint32_t>>(ev, "witnessWord");
    for (auto w : word) {
      if (w >= perms.size()) throw Malformed{"witness word letter"};
    }
    auto q_cycle = field<std::uint32_t>(ev, "witnessPrime");
    auto type = cycle_type(evaluate_word(perms, word, big_r));
    check.require(std::count(type.begin(), type.end(), q_cycle) == 1 &&
                      is_jordan_prime(q_cycle, big_r),
                  "witness has a single cycle of prime length q, R/2 < q < R-2");
    check.require(std::any_of(perms.begin(), perms.end(),
                              [](auto& x) { return parity(x) == Parity::Odd; }),
                  "some generator is odd");
  } else {
    throw Malformed{"unknown evidence path " + path};
  }
}

// ---------------------------------------------------------------------------

std::vector<Letter> cyclic_core(const std::vector<Letter>& w) {
  auto v = freely_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = v.size();
  while (hi - lo >= 2 && v[lo] == -v[hi - 1]) {
    ++lo;
    --hi;
  }
  return {v.begin() + lo, v.begin() + hi};
}

bool preserves_relator(std::uint32_t g, const std::vector<FreeWord>& images) {
  std::vector<Letter> rel;
  for (Letter i = 1; i <= Letter(g); ++i) {
    rel.insert(rel.end(), {2 * i - 1, 2 * i, -(2 * i - 1), -2 * i});
  }
  auto image = cyclic_core(substitute(FreeWord(2 * g, rel), images).letters());
  std::vector<Letter> inv(rel.rbegin(), rel.rend());
  for (auto& l : inv) l = -l;
  for (auto const& r : {rel, inv}) {
    auto doubled = r;
    doubled.insert(doubled.end(), r.begin(), r.end());
    if (image.size() == r.size() &&
        std::search(doubled.begin(), doubled.end(), image.begin(),
                    image.end()) != doubled.end()) {
      return true;
    }
  }
  return false;
}

FreeWord phi(std::uint32_t g, const FreeWord& w) {
  std::vector<FreeWord> images;
  for (std::uint32_t i = 1; i <= g; ++i) {
    images.push_back(FreeWord::generator(g, i));
    images.push_back(FreeWord(g));
  }
  return substitute(w, images);
}

std::vector<FreeWord> read_map(const json& j, std::uint32_t g, Checker& check) {
  auto al = WordAlphabet::surface(g);
  auto images = read_words(node(j, "images"), al);
  auto inverse = read_words(node(j, "inverse"), al);
  if (images.size() != 2 * g || inverse.size() != 2 * g) {
    throw Malformed{"surface map needs 2g images"};
  }
  check.require(preserves_relator(g, images), "map preserves the surface relator");
  check.require(preserves_relator(g, inverse),
                "inverse table preserves the surface relator");
  return images;
}

void check_separability(const json& j, Checker& check) {
  auto g = field<std::uint32_t>(j, "genus");
  if (g < 2) throw Malformed{"genus below 2"};
  auto images = read_map(node(j, "map"), g, check);
  auto gamma = WordAlphabet::surface(g).parse(field<std::string>(j, "gamma"));
  auto stated = WordAlphabet::free(g).parse(field<std::string>(j, "image"));
  check.require(phi(g, gamma).empty(), "gamma lies in ker phi");
  auto image = phi(g, substitute(gamma, images));
  check.require(!image.empty(), "phi(f(gamma)) is nontrivial");
  check.require(image == stated, "phi(f(gamma)) matches the stated image");
  check_rf(node(j, "quotient"), check, &image);
}

void check_stabilizes(const json& j, Checker& check) {
  auto g = field<std::uint32_t>(j, "genus");
  if (g < 2) throw Malformed{"genus below 2"};
  auto images = read_map(node(j, "map"), g, check);
  auto induced = read_automorphism(node(j, "induced"), g);
  bool ok = true;
  for (std::uint32_t i = 1; i <= g; ++i) {
    ok = ok && phi(g, images[2 * i - 1]).empty() &&
         phi(g, images[2 * i - 2]) == induced.images()[i - 1];
  }
  check.require(ok, "map descends through phi to the stated automorphism");
}

}  // namespace

VerifyReport verify_certificate(const json& doc) {
  VerifyReport report;
  Checker check(report);
  try {
    if (field<std::string>(doc, "format") != "xfg-certificate") {
      throw Malformed{"not an xfg certificate"};
    }
    if (field<int>(doc, "version") != 1) {
      throw Malformed{"unsupported certificate version"};
    }
    field<std::uint64_t>(doc, "seed");
    auto kind = field<std::string>(doc, "kind");
    if (kind == "rf-witness") {
      check_rf(doc, check, nullptr);
    } else if (kind == "theorem1") {
      check_theorem1(doc, check);
    } else if (kind == "involve") {
      auto k = field<std::uint64_t>(doc, "order");
      check.require(k >= 1, "order >= 1");
      check.require(field<std::uint64_t>(doc, "r") == k, "r equals the order");
      auto const& inner = node(doc, "theorem1");
      check.require(field<std::uint64_t>(inner, "r") == k,
                    "embedded certificate uses r = order");
      check.require(field<std::uint32_t>(inner, "genus") == 3,
                    "embedded certificate has genus 3");
      check_theorem1(inner, check);
    } else if (kind == "separability") {
      check_separability(doc, check);
    } else if (kind == "stabilizes") {
      check_stabilizes(doc, check);
    } else {
      throw Malformed{"unknown kind " + kind};
    }
  } catch (const Malformed& m) {
    report.status = VerifyStatus::Malformed;
    report.message = m.message;
  } catch (const json::exception& e) {
    report.status = VerifyStatus::Malformed;
    report.message = e.what();
  } catch (const Failure& f) {
    report.status = VerifyStatus::Failed;
    report.message = f.message;
  } catch (const Error& e) {
    report.status = e.kind() == ErrorKind::ParseError ? VerifyStatus::Malformed
                                                      : VerifyStatus::Failed;
    report.message = e.what();
  }
  return report;
}

}  // namespace xfg
