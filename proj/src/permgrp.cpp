#include "xfg/permgrp.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "xfg/error.hpp"
#include "xfg/psl2.hpp"

namespace xfg {

Permutation::Permutation(std::vector<std::uint32_t> images)
    : images_(std::move(images)) {
  std::vector<char> hit(images_.size(), 0);
  for (auto y : images_) {
    if (y >= images_.size() || hit[y]) {
      throw Error(ErrorKind::IndexOutOfRange, "image list is not a bijection");
    }
    hit[y] = 1;
  }
}

Permutation Permutation::identity(std::uint32_t degree) {
  std::vector<std::uint32_t> v(degree);
  std::iota(v.begin(), v.end(), 0u);
  return Permutation(std::move(v), Unchecked{});
}

Permutation Permutation::from_cycles(
    std::uint32_t degree, const std::vector<std::vector<std::uint32_t>>& cycles) {
  std::vector<std::uint32_t> v(degree);
  std::iota(v.begin(), v.end(), 0u);
  for (auto const& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree) {
        throw Error(ErrorKind::IndexOutOfRange, "cycle point out of range");
      }
      v[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(v));
}

bool Permutation::is_identity() const noexcept {
  for (std::uint32_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return false;
  }
  return true;
}

std::optional<std::uint32_t> Permutation::first_moved() const noexcept {
  for (std::uint32_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return x;
  }
  return std::nullopt;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) {
    throw Error(ErrorKind::DegreeMismatch, std::to_string(a.degree()) +
                                               " vs " +
                                               std::to_string(b.degree()));
  }
  std::vector<std::uint32_t> v(a.degree());
  for (std::uint32_t x = 0; x < v.size(); ++x) v[x] = a.images_[b.images_[x]];
  return Permutation(std::move(v), Permutation::Unchecked{});
}

Permutation inverse(const Permutation& a) {
  std::vector<std::uint32_t> v(a.degree());
  for (std::uint32_t x = 0; x < v.size(); ++x) v[a.images_[x]] = x;
  return Permutation(std::move(v), Permutation::Unchecked{});
}

Parity parity(const Permutation& a) {
  std::size_t transpositions = 0;
  for (auto len : cycle_type(a)) transpositions += len - 1;
  return transpositions % 2 ? Parity::Odd : Parity::Even;
}

std::vector<std::uint32_t> cycle_type(const Permutation& a) {
  std::vector<std::uint32_t> out;
  std::vector<char> seen(a.degree(), 0);
  for (std::uint32_t x = 0; x < a.degree(); ++x) {
    if (seen[x]) continue;
    std::uint32_t len = 0;
    for (auto y = x; !seen[y]; y = a[y]) {
      seen[y] = 1;
      ++len;
    }
    if (len > 1) out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

Permutation evaluate_word(std::span<const Permutation> gens,
                          std::span<const std::uint32_t> word,
                          std::uint32_t degree) {
  auto acc = Permutation::identity(degree);
  for (auto i : word) {
    if (i >= gens.size()) {
      throw Error(ErrorKind::IndexOutOfRange, "generator index in word");
    }
    acc = acc * gens[i];
  }
  return acc;
}

BigInt factorial(std::uint32_t n) {
  BigInt f = 1;
  for (std::uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// ---------------------------------------------------------------------------

PermGroup::PermGroup(std::uint32_t degree, std::vector<Permutation> generators)
    : degree_(degree), gens_(std::move(generators)) {
  for (auto const& g : gens_) {
    if (g.degree() != degree_) {
      throw Error(ErrorKind::DegreeMismatch, "generator degree " +
                                                 std::to_string(g.degree()) +
                                                 " in group of degree " +
                                                 std::to_string(degree_));
    }
  }
  schreier_sims();
  for (auto const& level : levels_) order_ *= level.orbit.size();
}

// Extends the orbit of the base under the current generators. Existing
// transversal entries are kept, so Schreier generators already checked at
// this level stay valid.
void PermGroup::extend_orbit(Level& level) const {
  if (level.orbit.empty()) {
    level.position.assign(degree_, -1);
    level.orbit.push_back(level.base);
    level.transversal.push_back(Permutation::identity(degree_));
    level.inverse_transversal.push_back(Permutation::identity(degree_));
    level.checked.emplace_back();
    level.position[level.base] = 0;
  }
  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    auto y = level.orbit[i];
    for (auto const& s : level.gens) {
      auto z = s[y];
      if (level.position[z] >= 0) continue;
      level.position[z] = static_cast<std::int32_t>(level.orbit.size());
      level.orbit.push_back(z);
      level.transversal.push_back(s * level.transversal[i]);
      level.inverse_transversal.push_back(inverse(level.transversal.back()));
      level.checked.emplace_back();
    }
  }
}

std::pair<Permutation, std::size_t> PermGroup::sift_from(
    Permutation h, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const auto& level = levels_[l];
    auto pos = level.position[h[level.base]];
    if (pos < 0) return {std::move(h), l};
    h = level.inverse_transversal[pos] * h;
  }
  return {std::move(h), levels_.size()};
}

void PermGroup::schreier_sims() {
  auto new_level = [&](std::uint32_t base) {
    Level level;
    level.base = base;
    levels_.push_back(std::move(level));
  };
  for (auto const& g : gens_) {
    if (g.is_identity()) continue;
    bool fixes_base = true;
    for (auto const& level : levels_) {
      if (g[level.base] != level.base) {
        fixes_base = false;
        break;
      }
    }
    if (fixes_base) new_level(*g.first_moved());
  }
  // Level l holds the generators fixing base points 0..l-1.
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    for (auto const& g : gens_) {
      if (g.is_identity()) continue;
      bool fixes = true;
      for (std::size_t m = 0; m < l; ++m) {
        if (g[levels_[m].base] != levels_[m].base) {
          fixes = false;
          break;
        }
      }
      if (fixes) levels_[l].gens.push_back(g);
    }
    extend_orbit(levels_[l]);
  }

  auto i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool added = false;
    for (std::size_t k = 0; !added && k < levels_[i].orbit.size(); ++k) {
      auto& done = levels_[i].checked[k];
      auto ngens = levels_[i].gens.size();
      for (std::size_t s = done.size(); s < ngens; ++s) {
        const auto& level = levels_[i];
        const auto& gen = level.gens[s];
        auto z = gen[level.orbit[k]];
        auto h = level.inverse_transversal[level.position[z]] * gen *
                 level.transversal[k];
        auto [residue, j] = sift_from(std::move(h), i + 1);
        if (residue.is_identity()) {
          levels_[i].checked[k].push_back(1);
          continue;
        }
        if (j == levels_.size()) new_level(*residue.first_moved());
        for (std::size_t l = i + 1; l <= j; ++l) {
          levels_[l].gens.push_back(residue);
          extend_orbit(levels_[l]);
        }
        i = static_cast<std::ptrdiff_t>(j);
        added = true;
        break;
      }
    }
    if (!added) --i;
  }
}

std::vector<std::uint32_t> PermGroup::base() const {
  std::vector<std::uint32_t> b;
  for (auto const& level : levels_) b.push_back(level.base);
  return b;
}

std::vector<std::uint32_t> PermGroup::basic_orbit_lengths() const {
  std::vector<std::uint32_t> b;
  for (auto const& level : levels_) {
    b.push_back(static_cast<std::uint32_t>(level.orbit.size()));
  }
  return b;
}

Permutation PermGroup::sift(const Permutation& a) const {
  if (a.degree() != degree_) {
    throw Error(ErrorKind::DegreeMismatch, "sifting a permutation of degree " +
                                               std::to_string(a.degree()));
  }
  return sift_from(a, 0).first;
}

bool PermGroup::contains(const Permutation& a) const {
  return sift(a).is_identity();
}

BigInt group_order(std::span<const Permutation> gens) {
  if (gens.empty()) {
    throw Error(ErrorKind::DegreeMismatch, "empty generator list");
  }
  return PermGroup(gens[0].degree(),
                   std::vector<Permutation>(gens.begin(), gens.end()))
      .order();
}

// ---------------------------------------------------------------------------

bool is_transitive(std::span<const Permutation> gens, std::uint32_t degree) {
  if (degree <= 1) return true;
  std::vector<char> seen(degree, 0);
  std::vector<std::uint32_t> queue{0};
  seen[0] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (auto const& g : gens) {
      auto z = g[queue[h]];
      if (!seen[z]) {
        seen[z] = 1;
        queue.push_back(z);
      }
    }
  }
  return queue.size() == degree;
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::uint32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::uint32_t x, std::uint32_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent[std::max(x, y)] = std::min(x, y);
    return true;
  }
};

// Size of the smallest block containing 0 and b.
std::uint32_t minimal_block_size(std::span<const Permutation> gens,
                                 std::uint32_t degree, std::uint32_t b) {
  UnionFind uf(degree);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> queue{{0, b}};
  uf.unite(0, b);
  for (std::size_t h = 0; h < queue.size(); ++h) {
    auto [x, y] = queue[h];
    for (auto const& g : gens) {
      if (uf.unite(g[x], g[y])) queue.emplace_back(g[x], g[y]);
    }
  }
  std::uint32_t size = 0;
  for (std::uint32_t x = 0; x < degree; ++x) size += uf.find(x) == 0;
  return size;
}

}  // namespace

bool is_primitive(std::span<const Permutation> gens, std::uint32_t degree) {
  for (std::uint32_t b = 1; b < degree; ++b) {
    if (minimal_block_size(gens, degree, b) != degree) return false;
  }
  return true;
}

bool is_jordan_prime(std::uint32_t q, std::uint32_t degree) noexcept {
  return 2 * q > degree && q + 2 < degree && is_prime(q);
}

const char* to_string(Recognition r) noexcept {
  switch (r) {
    case Recognition::Symmetric: return "Symmetric";
    case Recognition::Alternating: return "Alternating";
    case Recognition::Other: return "Other";
  }
  return "Other";
}

RecognitionEvidence recognize_sym_alt(std::span<const Permutation> gens,
                                      std::uint32_t degree,
                                      const RecognitionOptions& options) {
  for (auto const& g : gens) {
    if (g.degree() != degree) {
      throw Error(ErrorKind::DegreeMismatch, "generator degree " +
                                                 std::to_string(g.degree()) +
                                                 " vs " + std::to_string(degree));
    }
  }
  RecognitionEvidence ev;
  ev.degree = degree;
  if (degree == 0) {
    ev.path = "degenerate";
    ev.diagnostic = "empty domain";
    return ev;
  }
  for (auto const& g : gens) {
    if (parity(g) == Parity::Odd) ev.odd_generator = true;
  }

  if (degree <= options.exact_limit && !options.force_giant) {
    ev.path = "exact";
    PermGroup group(degree, std::vector<Permutation>(gens.begin(), gens.end()));
    ev.order = group.order();
    auto full = factorial(degree);
    if (group.order() == full) {
      ev.result = Recognition::Symmetric;
    } else if (degree >= 2 && group.order() * 2 == full) {
      ev.result = Recognition::Alternating;
    } else {
      ev.diagnostic = "order differs from N! and N!/2";
    }
    return ev;
  }

  ev.path = "giant";
  ev.transitive = is_transitive(gens, degree);
  if (!ev.transitive) {
    ev.diagnostic = "intransitive";
    return ev;
  }
  ev.primitive = is_primitive(gens, degree);
  if (!ev.primitive) {
    ev.diagnostic = "imprimitive";
    return ev;
  }
  if (gens.empty()) {
    ev.inconclusive = true;
    ev.diagnostic = "no generators";
    return ev;
  }
  std::mt19937_64 rng(options.seed);
  for (std::uint32_t attempt = 0; attempt < options.random_words; ++attempt) {
    auto length = 1 + static_cast<std::uint32_t>(rng() % options.max_word_length);
    std::vector<std::uint32_t> word(length);
    for (auto& w : word) w = static_cast<std::uint32_t>(rng() % gens.size());
    auto element = evaluate_word(gens, word, degree);
    auto type = cycle_type(element);
    for (auto len : type) {
      if (is_jordan_prime(len, degree)) {
        ev.witness_word = std::move(word);
        ev.witness_cycle_type = std::move(type);
        ev.witness_prime = len;
        ev.result = ev.odd_generator ? Recognition::Symmetric
                                     : Recognition::Alternating;
        return ev;
      }
    }
  }
  ev.inconclusive = true;
  ev.diagnostic = "no element with a Jordan prime cycle within the word budget";
  return ev;
}

}  // namespace xfg
