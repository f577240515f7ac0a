#pragma once

// Permutations of {0, ..., N-1}, stabilizer chains and recognition of
// symmetric and alternating groups.
//
// Composition convention: (a * b)(x) = a(b(x)), i.e. apply b first.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace xfg {

using BigInt = boost::multiprecision::cpp_int;

class Permutation {
 public:
  Permutation() = default;
  // Throws IndexOutOfRange unless images is a bijection of 0..N-1.
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::uint32_t degree);
  static Permutation from_cycles(
      std::uint32_t degree, const std::vector<std::vector<std::uint32_t>>& cycles);

  std::uint32_t degree() const noexcept {
    return static_cast<std::uint32_t>(images_.size());
  }
  std::uint32_t operator[](std::uint32_t x) const noexcept { return images_[x]; }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  // Smallest moved point, if any.
  std::optional<std::uint32_t> first_moved() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<std::uint32_t> images, Unchecked) noexcept
      : images_(std::move(images)) {}
  friend Permutation operator*(const Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);

  std::vector<std::uint32_t> images_;
};

Permutation operator*(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);

enum class Parity { Even, Odd };
Parity parity(const Permutation& a);

// Lengths of the nontrivial cycles, descending.
std::vector<std::uint32_t> cycle_type(const Permutation& a);

// Product gens[word[0]] * gens[word[1]] * ... (identity for an empty word).
Permutation evaluate_word(std::span<const Permutation> gens,
                          std::span<const std::uint32_t> word,
                          std::uint32_t degree);

BigInt factorial(std::uint32_t n);

// Deterministic Schreier-Sims. Base points are the smallest points moved by
// the generator that first needs them; transversals are stored explicitly.
class PermGroup {
 public:
  PermGroup(std::uint32_t degree, std::vector<Permutation> generators);

  std::uint32_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }
  std::vector<std::uint32_t> base() const;
  std::vector<std::uint32_t> basic_orbit_lengths() const;
  const BigInt& order() const noexcept { return order_; }

  // Residue after sifting through the chain; identity iff a is a member.
  Permutation sift(const Permutation& a) const;
  bool contains(const Permutation& a) const;

 private:
  struct Level {
    std::uint32_t base;
    std::vector<Permutation> gens;
    std::vector<std::int32_t> position;  // point -> index in orbit, or -1
    std::vector<std::uint32_t> orbit;
    std::vector<Permutation> transversal;  // maps base to orbit[i]
    std::vector<Permutation> inverse_transversal;
    // checked[i].size() = number of generators whose Schreier generator at
    // orbit[i] is known to sift through the levels below.
    std::vector<std::vector<char>> checked;
  };

  void extend_orbit(Level& level) const;
  // Sifts starting at level `from`; returns the residue and the level at
  // which sifting stopped (levels_.size() if it went through).
  std::pair<Permutation, std::size_t> sift_from(Permutation h,
                                                std::size_t from) const;
  void schreier_sims();

  std::uint32_t degree_;
  std::vector<Permutation> gens_;
  std::vector<Level> levels_;
  BigInt order_ = 1;
};

// Throws DegreeMismatch on an empty or inconsistent generator list.
BigInt group_order(std::span<const Permutation> gens);

bool is_transitive(std::span<const Permutation> gens, std::uint32_t degree);
// Assumes transitivity. No nontrivial block system exists.
bool is_primitive(std::span<const Permutation> gens, std::uint32_t degree);

enum class Recognition { Symmetric, Alternating, Other };
const char* to_string(Recognition r) noexcept;

struct RecognitionOptions {
  std::uint32_t exact_limit = 200;
  std::uint32_t random_words = 512;
  std::uint32_t max_word_length = 40;
  std::uint64_t seed = 20240601;
  // Skip the stabilizer chain even when the degree is small.
  bool force_giant = false;
};

struct RecognitionEvidence {
  Recognition result = Recognition::Other;
  std::string path;  // "exact", "giant" or "degenerate"
  std::uint32_t degree = 0;
  bool inconclusive = false;
  std::string diagnostic;

  // exact path
  std::optional<BigInt> order;

  // giant path
  bool transitive = false;
  bool primitive = false;
  std::vector<std::uint32_t> witness_word;
  std::vector<std::uint32_t> witness_cycle_type;
  std::uint32_t witness_prime = 0;
  bool odd_generator = false;
};

RecognitionEvidence recognize_sym_alt(std::span<const Permutation> gens,
                                      std::uint32_t degree,
                                      const RecognitionOptions& options = {});

// Jordan bound: a prime q with N/2 < q < N-2.
bool is_jordan_prime(std::uint32_t q, std::uint32_t degree) noexcept;

}  // namespace xfg
