#pragma once

// Free groups F_n: reduced words, automorphisms given by generator images,
// and the action of Aut(F_n) on homomorphisms F_n -> PSL(2,p).
//
// Letters are signed 1-based generator indices: i stands for x_i and -i for
// its inverse.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xfg/psl2.hpp"

namespace xfg {

using Letter = std::int32_t;

class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(std::uint32_t rank) : rank_(rank) {}

  // Validates every letter against the rank, then freely reduces.
  FreeWord(std::uint32_t rank, std::span<const Letter> letters);
  FreeWord(std::uint32_t rank, std::initializer_list<Letter> letters)
      : FreeWord(rank, std::span<const Letter>(letters.begin(), letters.size())) {}

  static FreeWord generator(std::uint32_t rank, std::uint32_t i);

  std::uint32_t rank() const noexcept { return rank_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  FreeWord inverse() const;

  // Conjugate-free core: strips matching first/last letters.
  FreeWord cyclically_reduced() const;

  friend FreeWord operator*(const FreeWord& u, const FreeWord& v);
  FreeWord& operator*=(const FreeWord& v);

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord&, const FreeWord&) = default;

 private:
  std::uint32_t rank_ = 0;
  std::vector<Letter> letters_;
};

// Free reduction of a raw letter sequence (no rank check).
std::vector<Letter> freely_reduce(std::span<const Letter> letters);

// Replaces each letter x_i of w by images[i-1] (and x_i^-1 by its inverse).
// The result has the rank of the images.
FreeWord substitute(const FreeWord& w, std::span<const FreeWord> images);

// Text codec. Each generator has a lowercase name such as "x3", "a" or "b2";
// its inverse is the same name with the leading letter uppercased. Words are
// written with '.' separators; the empty word is "1". Parsing also accepts
// juxtaposition without separators.
class WordAlphabet {
 public:
  explicit WordAlphabet(std::vector<std::string> names);

  static WordAlphabet free(std::uint32_t rank);     // x1..xn
  static WordAlphabet f2();                         // a, b
  static WordAlphabet surface(std::uint32_t genus);  // a1, b1, ..., ag, bg

  std::uint32_t rank() const noexcept {
    return static_cast<std::uint32_t>(names_.size());
  }
  std::string format(const FreeWord& w) const;
  FreeWord parse(std::string_view text) const;

 private:
  std::vector<std::string> names_;
};

class FreeAutomorphism {
 public:
  // Throws InvalidAutomorphism unless both composites reduce to the
  // identity map on generators.
  FreeAutomorphism(std::vector<FreeWord> images,
                   std::vector<FreeWord> inverse_images,
                   std::string label = {});

  static FreeAutomorphism identity(std::uint32_t rank);
  // x -> w x w^-1
  static FreeAutomorphism inner(const FreeWord& w);

  std::uint32_t rank() const noexcept {
    return static_cast<std::uint32_t>(images_.size());
  }
  const std::vector<FreeWord>& images() const noexcept { return images_; }
  const std::vector<FreeWord>& inverse_images() const noexcept {
    return inverse_;
  }
  const std::string& label() const noexcept { return label_; }

  FreeWord apply(const FreeWord& w) const;
  FreeWord apply_inverse(const FreeWord& w) const;
  FreeAutomorphism inverse() const;
  bool is_identity() const;

  // (s * t)(w) = s(t(w))
  friend FreeAutomorphism operator*(const FreeAutomorphism& s,
                                    const FreeAutomorphism& t);

 private:
  std::vector<FreeWord> images_;
  std::vector<FreeWord> inverse_;
  std::string label_;
};

// Cyclic shift, transposition x1 <-> x2, inversion of x1 and the
// transvection x1 -> x1 x2, with duplicates removed (n = 2 gives three maps).
std::vector<FreeAutomorphism> nielsen_generators(std::uint32_t n);

// The homomorphism F_n -> PSL(2,p) sending x_i to entries[i-1].
class GroupTuple {
 public:
  GroupTuple(Prime p, std::vector<ProjectiveMatrix> entries);

  Prime prime() const noexcept { return p_; }
  std::uint32_t rank() const noexcept {
    return static_cast<std::uint32_t>(entries_.size());
  }
  const std::vector<ProjectiveMatrix>& entries() const noexcept {
    return entries_;
  }
  const ProjectiveMatrix& operator[](std::size_t i) const {
    return entries_[i];
  }

  friend bool operator==(const GroupTuple&, const GroupTuple&) = default;

 private:
  Prime p_;
  std::vector<ProjectiveMatrix> entries_;
};

ProjectiveMatrix word_evaluate(const FreeWord& w, const GroupTuple& t);
ElementIndex word_evaluate(const FreeWord& w,
                           std::span<const ElementIndex> tuple,
                           const Psl2Group& group);

// Tuple of rho o s^-1, where rho is the homomorphism of t. This is a left
// action whose effect on kernels is N -> s(N).
GroupTuple apply_automorphism(const FreeAutomorphism& s, const GroupTuple& t);
std::vector<ElementIndex> apply_automorphism(
    const FreeAutomorphism& s, std::span<const ElementIndex> tuple,
    const Psl2Group& group);

}  // namespace xfg
