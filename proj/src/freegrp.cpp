#include "xfg/freegrp.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>

#include "xfg/error.hpp"

namespace xfg {

std::vector<Letter> freely_reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (auto x : letters) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

FreeWord::FreeWord(std::uint32_t rank, std::span<const Letter> letters)
    : rank_(rank) {
  for (auto x : letters) {
    if (x == 0 || static_cast<std::uint32_t>(std::abs(x)) > rank) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "letter " + std::to_string(x) + " in rank " +
                      std::to_string(rank));
    }
  }
  letters_ = freely_reduce(letters);
}

FreeWord FreeWord::generator(std::uint32_t rank, std::uint32_t i) {
  Letter x = static_cast<Letter>(i);
  return FreeWord(rank, std::span<const Letter>(&x, 1));
}

FreeWord FreeWord::inverse() const {
  FreeWord w(rank_);
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.letters_.push_back(-*it);
  }
  return w;
}

FreeWord FreeWord::cyclically_reduced() const {
  std::size_t lo = 0;
  std::size_t hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == -letters_[hi - 1]) {
    ++lo;
    --hi;
  }
  FreeWord w(rank_);
  w.letters_.assign(letters_.begin() + lo, letters_.begin() + hi);
  return w;
}

FreeWord& FreeWord::operator*=(const FreeWord& v) {
  if (rank_ != v.rank_) {
    throw Error(ErrorKind::RankMismatch, std::to_string(rank_) + " vs " +
                                             std::to_string(v.rank_));
  }
  for (auto x : v.letters_) {
    if (!letters_.empty() && letters_.back() == -x) {
      letters_.pop_back();
    } else {
      letters_.push_back(x);
    }
  }
  return *this;
}

FreeWord operator*(const FreeWord& u, const FreeWord& v) {
  FreeWord w = u;
  w *= v;
  return w;
}

FreeWord substitute(const FreeWord& w, std::span<const FreeWord> images) {
  if (images.size() != w.rank()) {
    throw Error(ErrorKind::RankMismatch,
                "substitution needs " + std::to_string(w.rank()) + " images");
  }
  std::uint32_t target = images.empty() ? 0 : images[0].rank();
  FreeWord out(target);
  for (auto x : w.letters()) {
    const auto& img = images[std::abs(x) - 1];
    out *= x > 0 ? img : img.inverse();
  }
  return out;
}

// ---------------------------------------------------------------------------

WordAlphabet::WordAlphabet(std::vector<std::string> names)
    : names_(std::move(names)) {}

WordAlphabet WordAlphabet::free(std::uint32_t rank) {
  std::vector<std::string> names;
  for (std::uint32_t i = 1; i <= rank; ++i) {
    names.push_back("x" + std::to_string(i));
  }
  return WordAlphabet(std::move(names));
}

WordAlphabet WordAlphabet::f2() { return WordAlphabet({"a", "b"}); }

WordAlphabet WordAlphabet::surface(std::uint32_t genus) {
  std::vector<std::string> names;
  for (std::uint32_t i = 1; i <= genus; ++i) {
    names.push_back("a" + std::to_string(i));
    names.push_back("b" + std::to_string(i));
  }
  return WordAlphabet(std::move(names));
}

std::string WordAlphabet::format(const FreeWord& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (auto x : w.letters()) {
    if (!out.empty()) out += '.';
    std::string name = names_.at(std::abs(x) - 1);
    if (x < 0) name[0] = static_cast<char>(std::toupper(name[0]));
    out += name;
  }
  return out;
}

FreeWord WordAlphabet::parse(std::string_view text) const {
  std::vector<Letter> letters;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError,
                "word '" + std::string(text) + "': " + why);
  };
  if (text == "1") return FreeWord(rank());
  while (i < text.size()) {
    char c = text[i];
    if (c == '.' || std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected character");
    std::string token(1, static_cast<char>(std::tolower(c)));
    bool inverse = std::isupper(static_cast<unsigned char>(c));
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      token += text[i++];
    }
    auto it = std::find(names_.begin(), names_.end(), token);
    if (it == names_.end()) fail("unknown generator " + token);
    auto g = static_cast<Letter>(it - names_.begin() + 1);
    letters.push_back(inverse ? -g : g);
  }
  return FreeWord(rank(), letters);
}

// ---------------------------------------------------------------------------

FreeAutomorphism::FreeAutomorphism(std::vector<FreeWord> images,
                                   std::vector<FreeWord> inverse_images,
                                   std::string label)
    : images_(std::move(images)),
      inverse_(std::move(inverse_images)),
      label_(std::move(label)) {
  auto n = rank();
  if (inverse_.size() != n) {
    throw Error(ErrorKind::RankMismatch, "inverse table size");
  }
  for (auto const& w : images_) {
    if (w.rank() != n) throw Error(ErrorKind::RankMismatch, "image rank");
  }
  for (auto const& w : inverse_) {
    if (w.rank() != n) throw Error(ErrorKind::RankMismatch, "image rank");
  }
  for (std::uint32_t i = 1; i <= n; ++i) {
    auto x = FreeWord::generator(n, i);
    if (substitute(inverse_[i - 1], images_) != x ||
        substitute(images_[i - 1], inverse_) != x) {
      throw Error(ErrorKind::InvalidAutomorphism,
                  "inverse table does not invert generator " +
                      std::to_string(i) + (label_.empty() ? "" : " of " + label_));
    }
  }
}

FreeAutomorphism FreeAutomorphism::identity(std::uint32_t rank) {
  std::vector<FreeWord> g;
  for (std::uint32_t i = 1; i <= rank; ++i) {
    g.push_back(FreeWord::generator(rank, i));
  }
  return FreeAutomorphism(g, g, "id");
}

FreeAutomorphism FreeAutomorphism::inner(const FreeWord& w) {
  auto n = w.rank();
  std::vector<FreeWord> img, inv;
  for (std::uint32_t i = 1; i <= n; ++i) {
    auto x = FreeWord::generator(n, i);
    img.push_back(w * x * w.inverse());
    inv.push_back(w.inverse() * x * w);
  }
  return FreeAutomorphism(std::move(img), std::move(inv), "inner");
}

FreeWord FreeAutomorphism::apply(const FreeWord& w) const {
  return substitute(w, images_);
}

FreeWord FreeAutomorphism::apply_inverse(const FreeWord& w) const {
  return substitute(w, inverse_);
}

FreeAutomorphism FreeAutomorphism::inverse() const {
  return FreeAutomorphism(inverse_, images_,
                          label_.empty() ? std::string() : label_ + "^-1");
}

bool FreeAutomorphism::is_identity() const {
  for (std::uint32_t i = 1; i <= rank(); ++i) {
    if (images_[i - 1] != FreeWord::generator(rank(), i)) return false;
  }
  return true;
}

FreeAutomorphism operator*(const FreeAutomorphism& s,
                           const FreeAutomorphism& t) {
  if (s.rank() != t.rank()) {
    throw Error(ErrorKind::RankMismatch, "composing automorphisms");
  }
  std::vector<FreeWord> img, inv;
  for (std::uint32_t i = 0; i < s.rank(); ++i) {
    img.push_back(substitute(t.images_[i], s.images_));
    inv.push_back(substitute(s.inverse_[i], t.inverse_));
  }
  std::string label;
  if (!s.label_.empty() || !t.label_.empty()) label = s.label_ + "*" + t.label_;
  return FreeAutomorphism(std::move(img), std::move(inv), std::move(label));
}

std::vector<FreeAutomorphism> nielsen_generators(std::uint32_t n) {
  if (n < 2) {
    throw Error(ErrorKind::InvalidRank, "Nielsen generators need rank >= 2");
  }
  auto x = [n](std::uint32_t i) { return FreeWord::generator(n, i); };
  std::vector<FreeAutomorphism> out;
  auto add = [&out](FreeAutomorphism a) {
    for (auto const& b : out) {
      if (b.images() == a.images()) return;
    }
    out.push_back(std::move(a));
  };

  std::vector<FreeWord> cyc, cyc_inv;
  for (std::uint32_t i = 1; i <= n; ++i) {
    cyc.push_back(x(i % n + 1));
    cyc_inv.push_back(x((i + n - 2) % n + 1));
  }
  add(FreeAutomorphism(cyc, cyc_inv, "cycle"));

  std::vector<FreeWord> swap;
  for (std::uint32_t i = 1; i <= n; ++i) swap.push_back(x(i));
  std::swap(swap[0], swap[1]);
  add(FreeAutomorphism(swap, swap, "swap"));

  std::vector<FreeWord> invert;
  for (std::uint32_t i = 1; i <= n; ++i) invert.push_back(x(i));
  invert[0] = x(1).inverse();
  add(FreeAutomorphism(invert, invert, "invert"));

  std::vector<FreeWord> tv, tv_inv;
  for (std::uint32_t i = 1; i <= n; ++i) {
    tv.push_back(x(i));
    tv_inv.push_back(x(i));
  }
  tv[0] = x(1) * x(2);
  tv_inv[0] = x(1) * x(2).inverse();
  add(FreeAutomorphism(tv, tv_inv, "transvect"));
  return out;
}

// ---------------------------------------------------------------------------

GroupTuple::GroupTuple(Prime p, std::vector<ProjectiveMatrix> entries)
    : p_(p), entries_(std::move(entries)) {
  for (auto const& e : entries_) {
    if (e.prime() != p_) {
      throw Error(ErrorKind::PrimeMismatch, "tuple entry over wrong prime");
    }
  }
}

ProjectiveMatrix word_evaluate(const FreeWord& w, const GroupTuple& t) {
  if (w.rank() != t.rank()) {
    throw Error(ErrorKind::RankMismatch, "word rank " +
                                             std::to_string(w.rank()) +
                                             ", tuple rank " +
                                             std::to_string(t.rank()));
  }
  auto acc = ProjectiveMatrix::identity(t.prime());
  for (auto x : w.letters()) {
    const auto& g = t[std::abs(x) - 1];
    acc = acc * (x > 0 ? g : inverse(g));
  }
  return acc;
}

ElementIndex word_evaluate(const FreeWord& w,
                           std::span<const ElementIndex> tuple,
                           const Psl2Group& group) {
  if (w.rank() != tuple.size()) {
    throw Error(ErrorKind::RankMismatch, "word and tuple rank differ");
  }
  auto acc = group.identity();
  for (auto x : w.letters()) {
    auto g = tuple[std::abs(x) - 1];
    acc = group.mul(acc, x > 0 ? g : group.inv(g));
  }
  return acc;
}

GroupTuple apply_automorphism(const FreeAutomorphism& s, const GroupTuple& t) {
  if (s.rank() != t.rank()) {
    throw Error(ErrorKind::RankMismatch, "automorphism and tuple rank differ");
  }
  std::vector<ProjectiveMatrix> out;
  out.reserve(t.rank());
  for (auto const& w : s.inverse_images()) out.push_back(word_evaluate(w, t));
  return GroupTuple(t.prime(), std::move(out));
}

std::vector<ElementIndex> apply_automorphism(
    const FreeAutomorphism& s, std::span<const ElementIndex> tuple,
    const Psl2Group& group) {
  if (s.rank() != tuple.size()) {
    throw Error(ErrorKind::RankMismatch, "automorphism and tuple rank differ");
  }
  std::vector<ElementIndex> out;
  out.reserve(tuple.size());
  for (auto const& w : s.inverse_images()) {
    out.push_back(word_evaluate(w, tuple, group));
  }
  return out;
}

}  // namespace xfg
