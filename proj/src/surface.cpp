#include "xfg/surface.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "xfg/error.hpp"

namespace xfg {

namespace {

std::vector<Letter> cyclic_core(std::vector<Letter> w) {
  w = freely_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  return {w.begin() + lo, w.begin() + hi};
}

std::vector<Letter> inverse_letters(std::span<const Letter> w) {
  std::vector<Letter> out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

void check_genus(std::uint32_t genus) {
  if (genus < 2) {
    throw Error(ErrorKind::InvalidGenus,
                "genus must be >= 2, got " + std::to_string(genus));
  }
}

}  // namespace

SurfaceGroup::SurfaceGroup(std::uint32_t genus)
    : genus_((check_genus(genus), genus)),
      alphabet_(WordAlphabet::surface(genus)) {
  std::vector<Letter> r;
  for (Letter i = 1; i <= Letter(genus); ++i) {
    r.insert(r.end(), {2 * i - 1, 2 * i, -(2 * i - 1), -2 * i});
  }
  relator_ = FreeWord(rank(), r);
}

FreeWord SurfaceGroup::a(std::uint32_t i) const {
  return FreeWord(rank(), {Letter(2 * i - 1)});
}

FreeWord SurfaceGroup::b(std::uint32_t i) const {
  return FreeWord(rank(), {Letter(2 * i)});
}

FreeWord SurfaceGroup::dehn_reduce(const FreeWord& w) const {
  if (w.rank() != rank()) {
    throw Error(ErrorKind::RankMismatch, "surface word rank");
  }
  std::size_t n = 4 * genus_;
  std::array<std::vector<Letter>, 2> rel{relator_.letters(),
                                         inverse_letters(relator_.letters())};
  // Each signed letter occurs exactly once in R and once in R^-1.
  auto slot = [](Letter l) {
    return static_cast<std::size_t>(l > 0 ? 2 * l - 2 : -2 * l - 1);
  };
  std::array<std::vector<std::size_t>, 2> where;
  for (int k = 0; k < 2; ++k) {
    where[k].resize(n);
    for (std::size_t j = 0; j < n; ++j) where[k][slot(rel[k][j])] = j;
  }

  auto cur = cyclic_core(w.letters());
  while (!cur.empty()) {
    std::size_t m = cur.size();
    bool replaced = false;
    for (std::size_t start = 0; start < m && !replaced; ++start) {
      for (int k = 0; k < 2 && !replaced; ++k) {
        auto j = where[k][slot(cur[start])];
        std::size_t len = 0;
        while (len < m && len < n &&
               cur[(start + len) % m] == rel[k][(j + len) % n]) {
          ++len;
        }
        if (2 * len <= n) continue;
        // piece * rest = relator, so piece = rest^-1 with |rest| < |piece|.
        std::vector<Letter> next;
        for (std::size_t t = n - len; t > 0; --t) {
          next.push_back(-rel[k][(j + len + t - 1) % n]);
        }
        for (std::size_t t = len; t < m; ++t) {
          next.push_back(cur[(start + t) % m]);
        }
        cur = cyclic_core(std::move(next));
        replaced = true;
      }
    }
    if (!replaced) break;
  }
  return FreeWord(rank(), cur);
}

bool SurfaceGroup::is_relator_rotation(const FreeWord& w) const {
  auto c = cyclic_core(w.letters());
  std::size_t n = 4 * genus_;
  if (c.size() != n) return false;
  for (auto const& r : {relator_.letters(), inverse_letters(relator_.letters())}) {
    for (std::size_t s = 0; s < n; ++s) {
      if (std::equal(c.begin(), c.end() - s, r.begin() + s) &&
          std::equal(c.end() - s, c.end(), r.begin())) {
        return true;
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

HandlebodyEpi::HandlebodyEpi(std::uint32_t genus)
    : genus_((check_genus(genus), genus)) {
  for (std::uint32_t i = 1; i <= genus; ++i) {
    images_.push_back(FreeWord::generator(genus, i));
    images_.push_back(FreeWord(genus));
  }
  if (!apply(SurfaceGroup(genus).relator()).empty()) {
    throw Error(ErrorKind::InvalidAutomorphism, "phi does not kill R");
  }
}

FreeWord HandlebodyEpi::apply(const FreeWord& w) const {
  if (w.rank() != 2 * genus_) {
    throw Error(ErrorKind::RankMismatch, "surface word rank");
  }
  return substitute(w, images_);
}

// ---------------------------------------------------------------------------

namespace {

// h(s_i) = c s_i c^-1 for all i, with c = 1 or read off h(s_1).
bool is_inner_on_generators(const SurfaceGroup& group,
                            const std::vector<FreeWord>& h) {
  auto rank = group.rank();
  std::vector<FreeWord> candidates{FreeWord(rank)};
  auto const& w = h[0].letters();
  if (w.size() % 2 == 1) {
    auto k = w.size() / 2;
    FreeWord c(rank, std::span(w).first(k));
    if (w[k] == 1 && c * FreeWord(rank, {1}) * c.inverse() == h[0]) {
      candidates.push_back(c);
    }
  }
  for (auto const& c : candidates) {
    bool all = true;
    for (std::uint32_t i = 0; i < rank && all; ++i) {
      auto s = FreeWord::generator(rank, i + 1);
      all = group.is_trivial(c.inverse() * h[i] * c * s.inverse());
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

SurfaceAutomorphism::SurfaceAutomorphism(std::uint32_t genus,
                                         std::vector<FreeWord> images,
                                         std::vector<FreeWord> inverse_images,
                                         std::string label)
    : genus_(genus),
      images_(std::move(images)),
      inverse_(std::move(inverse_images)),
      label_(std::move(label)) {
  SurfaceGroup group(genus);
  auto rank = group.rank();
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::InvalidAutomorphism,
                (label_.empty() ? "surface map" : label_) + ": " + why);
  };
  if (images_.size() != rank || inverse_.size() != rank) {
    fail("needs " + std::to_string(rank) + " images");
  }
  for (auto const& w : images_) {
    if (w.rank() != rank) fail("image rank");
  }
  for (auto const& w : inverse_) {
    if (w.rank() != rank) fail("inverse image rank");
  }
  if (!group.is_relator_rotation(apply(group.relator()))) {
    fail("image of R is not a rotation of R^(+-1)");
  }
  if (!group.is_relator_rotation(apply_inverse(group.relator()))) {
    fail("inverse image of R is not a rotation of R^(+-1)");
  }
  std::vector<FreeWord> fg;
  std::vector<FreeWord> gf;
  for (std::uint32_t i = 1; i <= rank; ++i) {
    auto s = FreeWord::generator(rank, i);
    fg.push_back(apply(apply_inverse(s)));
    gf.push_back(apply_inverse(apply(s)));
  }
  if (!is_inner_on_generators(group, fg) ||
      !is_inner_on_generators(group, gf)) {
    fail("inverse table does not invert the map");
  }
}

SurfaceAutomorphism SurfaceAutomorphism::identity(std::uint32_t genus) {
  check_genus(genus);
  std::vector<FreeWord> id;
  for (std::uint32_t i = 1; i <= 2 * genus; ++i) {
    id.push_back(FreeWord::generator(2 * genus, i));
  }
  return SurfaceAutomorphism(genus, id, id, "id", Trusted{});
}

SurfaceAutomorphism SurfaceAutomorphism::inverse() const {
  return SurfaceAutomorphism(genus_, inverse_, images_,
                             label_.empty() ? "" : "(" + label_ + ")^-1",
                             Trusted{});
}

SurfaceAutomorphism operator*(const SurfaceAutomorphism& f,
                              const SurfaceAutomorphism& h) {
  if (f.genus_ != h.genus_) {
    throw Error(ErrorKind::GenusMismatch, "composing surface maps");
  }
  std::vector<FreeWord> images;
  std::vector<FreeWord> inverse;
  for (std::size_t i = 0; i < f.images_.size(); ++i) {
    images.push_back(f.apply(h.images_[i]));
    inverse.push_back(h.apply_inverse(f.inverse_[i]));
  }
  return SurfaceAutomorphism(f.genus_, std::move(images), std::move(inverse),
                             f.label_ + "." + h.label_,
                             SurfaceAutomorphism::Trusted{});
}

// ---------------------------------------------------------------------------

std::string_view builtin_twist_data() {
  // family  indices  images | inverse images   ({j} stands for i+1)
  return R"(m 1..2 a{i}=a{i}.b{i} | a{i}=a{i}.B{i}
l 1..g b{i}=b{i}.a{i} | b{i}=b{i}.A{i}
c 1..g-1 a{i}=a{i}.b{i}.A{i}.B{i}.a{j}.b{j}.A{j}.b{i}.a{i} a{j}=b{i}.a{i}.b{i}.A{i}.B{i}.a{j}.b{j} | a{i}=B{i}.a{j}.B{j}.A{j}.b{i}.a{i}.B{i} a{j}=a{j}.B{j}.A{j}.b{i}.a{i}.B{i}.A{i}.B{i}.a{j}
)";
}

namespace {

std::string fill(std::string s, std::uint32_t i) {
  for (auto [key, value] : {std::pair{std::string("{i}"), i},
                            std::pair{std::string("{j}"), i + 1}}) {
    for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key)) {
      s.replace(pos, key.size(), std::to_string(value));
    }
  }
  return s;
}

std::uint32_t range_end(const std::string& text, std::uint32_t genus) {
  if (text == "g") return genus;
  if (text == "g-1") return genus - 1;
  return static_cast<std::uint32_t>(std::stoul(text));
}

}  // namespace

std::vector<SurfaceAutomorphism> builtin_twists(std::uint32_t genus) {
  check_genus(genus);
  SurfaceGroup group(genus);
  auto const& alphabet = group.alphabet();
  std::vector<SurfaceAutomorphism> out;
  std::istringstream lines{std::string(builtin_twist_data())};
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream tokens(line);
    std::string family;
    std::string range;
    tokens >> family >> range;
    auto dots = range.find("..");
    auto lo = range_end(range.substr(0, dots), genus);
    auto hi = range_end(range.substr(dots + 2), genus);
    std::vector<std::string> forward;
    std::vector<std::string> backward;
    bool after_bar = false;
    for (std::string t; tokens >> t;) {
      if (t == "|") {
        after_bar = true;
      } else {
        (after_bar ? backward : forward).push_back(t);
      }
    }
    for (std::uint32_t i = lo; i <= hi; ++i) {
      std::vector<FreeWord> images;
      for (std::uint32_t k = 1; k <= group.rank(); ++k) {
        images.push_back(FreeWord::generator(group.rank(), k));
      }
      auto inverse = images;
      for (auto [rules, table] :
           {std::pair{&forward, &images}, std::pair{&backward, &inverse}}) {
        for (auto const& rule : *rules) {
          auto eq = rule.find('=');
          auto lhs = alphabet.parse(fill(rule.substr(0, eq), i));
          auto rhs = alphabet.parse(fill(rule.substr(eq + 1), i));
          (*table)[lhs.letters().at(0) - 1] = rhs;
        }
      }
      out.emplace_back(genus, std::move(images), std::move(inverse),
                       family + std::to_string(i));
    }
  }
  return out;
}

WordAlphabet twist_alphabet(std::uint32_t genus) {
  std::vector<std::string> names;
  for (auto const& t : builtin_twists(genus)) names.push_back(t.label());
  return WordAlphabet(names);
}

SurfaceAutomorphism twist_word_map(std::uint32_t genus, const FreeWord& word) {
  auto twists = builtin_twists(genus);
  if (word.rank() != twists.size()) {
    throw Error(ErrorKind::RankMismatch, "twist word rank");
  }
  auto letter = [&](Letter l) {
    auto const& t = twists[std::abs(l) - 1];
    return l > 0 ? t : t.inverse();
  };
  auto const& ls = word.letters();
  if (ls.empty()) return SurfaceAutomorphism::identity(genus);
  auto acc = letter(ls[0]);
  for (std::size_t i = 1; i < ls.size(); ++i) acc = acc * letter(ls[i]);
  return acc;
}

// ---------------------------------------------------------------------------

std::variant<FreeAutomorphism, NotStabilizing> induced_free_automorphism(
    const HandlebodyEpi& phi, const SurfaceAutomorphism& f) {
  if (phi.genus() != f.genus()) {
    throw Error(ErrorKind::GenusMismatch, "handlebody vs map genus");
  }
  auto g = phi.genus();
  std::vector<FreeWord> images;
  std::vector<FreeWord> inverse;
  for (std::uint32_t i = 1; i <= g; ++i) {
    auto b = FreeWord(2 * g, {Letter(2 * i)});
    auto image = phi.apply(f.apply(b));
    if (!image.empty()) return NotStabilizing{i, image};
    if (!phi.in_kernel(f.apply_inverse(b))) {
      throw Error(ErrorKind::InvalidAutomorphism,
                  "map preserves ker phi but its inverse does not");
    }
    auto a = FreeWord(2 * g, {Letter(2 * i - 1)});
    images.push_back(phi.apply(f.apply(a)));
    inverse.push_back(phi.apply(f.apply_inverse(a)));
  }
  return FreeAutomorphism(std::move(images), std::move(inverse), f.label());
}

std::variant<Permutation, NotStabilizing> action_on_Xphi(
    const HandlebodyEpi& phi, const SurfaceAutomorphism& f,
    const ClassTable& table, ActionMode mode) {
  if (table.rank() != phi.genus()) {
    throw Error(ErrorKind::RankMismatch, "table rank vs genus");
  }
  auto induced = induced_free_automorphism(phi, f);
  if (auto* ns = std::get_if<NotStabilizing>(&induced)) return *ns;
  if (mode == ActionMode::Fast) {
    return out_action(table, std::get<FreeAutomorphism>(induced));
  }

  auto g = phi.genus();
  auto group = Psl2Group::of(table.prime());
  std::vector<std::uint32_t> images(table.size());
  std::vector<ElementIndex> surface_tuple(2 * g);
  std::vector<ElementIndex> moved(g);
  for (std::uint32_t k = 0; k < table.size(); ++k) {
    auto t = table.tuple(k);
    // rho o phi on the surface generators
    for (std::uint32_t i = 0; i < g; ++i) {
      surface_tuple[2 * i] = t[i];
      surface_tuple[2 * i + 1] = group->identity();
    }
    for (std::uint32_t s = 0; s < 2 * g; ++s) {
      auto v = word_evaluate(f.apply_inverse(FreeWord::generator(2 * g, s + 1)),
                             surface_tuple, *group);
      if (s % 2 == 0) {
        moved[s / 2] = v;
      } else if (v != group->identity()) {
        throw Error(ErrorKind::InvalidAutomorphism,
                    "pulled-back kernel does not contain ker phi");
      }
    }
    images[k] = class_of(table, moved);
  }
  return Permutation(std::move(images));
}

std::vector<StabilizingWord> stabilizing_twist_words(
    std::uint32_t genus, std::uint32_t max_length,
    std::span<const std::uint32_t> letters) {
  auto twists = builtin_twists(genus);
  auto rank = static_cast<std::uint32_t>(twists.size());
  std::vector<Letter> alphabet;
  if (letters.empty()) {
    for (std::uint32_t i = 1; i <= rank; ++i) alphabet.push_back(Letter(i));
  } else {
    for (auto i : letters) {
      if (i < 1 || i > rank) {
        throw Error(ErrorKind::IndexOutOfRange, "twist index");
      }
      alphabet.push_back(Letter(i));
    }
  }
  std::vector<Letter> signed_letters;
  for (auto l : alphabet) signed_letters.insert(signed_letters.end(), {l, -l});

  HandlebodyEpi phi(genus);
  std::vector<StabilizingWord> out;
  std::set<std::vector<std::vector<Letter>>> seen;
  std::vector<std::pair<FreeWord, SurfaceAutomorphism>> layer{
      {FreeWord(rank), SurfaceAutomorphism::identity(genus)}};
  for (std::uint32_t len = 1; len <= max_length; ++len) {
    std::vector<std::pair<FreeWord, SurfaceAutomorphism>> next;
    for (auto const& [word, map] : layer) {
      for (auto l : signed_letters) {
        if (!word.empty() && word.letters().back() == -l) continue;
        auto w = word * FreeWord(rank, {l});
        auto const& t = twists[std::abs(l) - 1];
        auto m = map * (l > 0 ? t : t.inverse());
        auto induced = induced_free_automorphism(phi, m);
        if (auto* F = std::get_if<FreeAutomorphism>(&induced)) {
          if (!F->is_identity()) {
            std::vector<std::vector<Letter>> key;
            for (auto const& x : F->images()) key.push_back(x.letters());
            if (seen.insert(key).second) out.push_back({w, *F});
          }
        }
        next.emplace_back(std::move(w), std::move(m));
      }
    }
    layer = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(Theorem1Outcome o) noexcept {
  switch (o) {
    case Theorem1Outcome::Symmetric: return "symmetric";
    case Theorem1Outcome::AlternatingOnly: return "alternating-only";
    case Theorem1Outcome::NotFound: return "not-found";
  }
  return "unknown";
}

Theorem1Certificate theorem1_certificate(std::uint32_t genus, std::uint32_t r,
                                         std::uint32_t pmax,
                                         const Theorem1Options& options) {
  if (genus < 3) {
    throw Error(ErrorKind::InvalidGenus,
                "symmetric quotient certificates need genus >= 3, got " + std::to_string(genus));
  }
  if (r < 1) throw Error(ErrorKind::InvalidOrder, "r must be >= 1");
  Theorem1Certificate cert;
  cert.genus = genus;
  cert.r = r;
  cert.pmax = pmax;
  bool alternating = false;
  for (std::uint32_t q = 5; q <= pmax; q = next_prime(q)) {
    auto table = enumerate_classes(genus, Prime(q), options.enumeration);
    PrimeReport report{q, table.size(), Recognition::Other};
    if (table.size() < r) {
      cert.scanned.push_back(report);
      continue;
    }
    auto gens = nielsen_generators(genus);
    std::vector<Permutation> perms;
    for (auto const& s : gens) perms.push_back(out_action(table, s));
    auto evidence = recognize_sym_alt(perms, table.size(), options.recognition);
    report.result = evidence.result;
    cert.scanned.push_back(report);
    if (evidence.result == Recognition::Alternating) alternating = true;
    if (evidence.result == Recognition::Symmetric) {
      cert.outcome = Theorem1Outcome::Symmetric;
      cert.table = std::move(table);
      cert.generators = std::move(gens);
      cert.permutations = std::move(perms);
      cert.evidence = std::move(evidence);
      return cert;
    }
  }
  cert.outcome = alternating ? Theorem1Outcome::AlternatingOnly
                             : Theorem1Outcome::NotFound;
  return cert;
}

InvolveCertificate involve_certificate(std::uint64_t k, std::uint32_t pmax,
                                       const Theorem1Options& options) {
  if (k == 0) throw Error(ErrorKind::InvalidOrder, "group order must be >= 1");
  if (k > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorKind::ResourceLimit, "group order too large");
  }
  return {k, theorem1_certificate(3, static_cast<std::uint32_t>(k), pmax,
                                  options)};
}

// ---------------------------------------------------------------------------

std::variant<SeparabilityWitness, StabilizesInstead> separability_witness(
    std::uint32_t genus, const SurfaceAutomorphism& f,
    const SeparabilityOptions& options) {
  if (f.genus() != genus) {
    throw Error(ErrorKind::GenusMismatch, "map genus vs requested genus");
  }
  HandlebodyEpi phi(genus);
  auto rank = 2 * genus;
  // Conjugators in shortlex order.
  std::vector<FreeWord> layer{FreeWord(rank)};
  for (std::uint32_t len = 0; len <= options.conjugator_length; ++len) {
    for (auto const& c : layer) {
      for (std::uint32_t i = 1; i <= genus; ++i) {
        auto gamma = c * FreeWord(rank, {Letter(2 * i)}) * c.inverse();
        auto image = phi.apply(f.apply(gamma));
        if (image.empty()) continue;
        auto quotient = rf_witness(genus, image, options.rf);
        return SeparabilityWitness{genus, f, gamma, image, std::move(quotient)};
      }
    }
    std::vector<FreeWord> next;
    for (auto const& c : layer) {
      for (Letter l = 1; l <= Letter(rank); ++l) {
        for (Letter s : {l, -l}) {
          if (!c.empty() && c.letters().back() == -s) continue;
          next.push_back(c * FreeWord(rank, {s}));
        }
      }
    }
    layer = std::move(next);
  }
  auto induced = induced_free_automorphism(phi, f);
  if (auto* F = std::get_if<FreeAutomorphism>(&induced)) {
    return StabilizesInstead{*F};
  }
  // Unreachable: a non-stabilizing map moves some b_i out of ker phi.
  throw Error(ErrorKind::InvalidAutomorphism, "no witness and no descent");
}

bool replay(const SeparabilityWitness& w) {
  if (w.map.genus() != w.genus || w.gamma.rank() != 2 * w.genus) return false;
  HandlebodyEpi phi(w.genus);
  if (!phi.in_kernel(w.gamma)) return false;
  auto image = phi.apply(w.map.apply(w.gamma));
  if (image.empty() || image != w.image) return false;
  if (w.quotient.rank != w.genus || w.quotient.alpha != image) return false;
  return replay(w.quotient);
}

std::vector<bool> contains_recognized(std::span<const Permutation> gens,
                                      const RecognitionEvidence& evidence,
                                      std::span<const Permutation> candidates) {
  std::vector<bool> out;
  for (auto const& a : candidates) {
    if (a.degree() != evidence.degree) {
      throw Error(ErrorKind::DegreeMismatch, "candidate degree");
    }
  }
  if (evidence.path == "exact") {
    PermGroup g(evidence.degree,
                std::vector<Permutation>(gens.begin(), gens.end()));
    for (auto const& a : candidates) out.push_back(g.contains(a));
    return out;
  }
  if (evidence.path == "degenerate" ||
      evidence.result == Recognition::Symmetric) {
    out.assign(candidates.size(), true);
    return out;
  }
  if (evidence.result == Recognition::Alternating) {
    for (auto const& a : candidates) out.push_back(parity(a) == Parity::Even);
    return out;
  }
  throw Error(ErrorKind::ResourceLimit,
              "membership undecided: group not recognized on the giant path");
}

}  // namespace xfg
