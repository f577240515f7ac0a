#pragma once

// Closed surface groups pi_1(S_g) = <a1, b1, ..., ag, bg | [a1,b1]...[ag,bg]>,
// the standard handlebody map phi: a_i -> x_i, b_i -> 1 onto F_g, and
// mapping classes given by generator-image tables.
//
// Surface words are FreeWords of rank 2g: letter 2i-1 is a_i, letter 2i is
// b_i. The kernel of phi is normally generated by b_1, ..., b_g.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "xfg/defsub.hpp"
#include "xfg/freegrp.hpp"
#include "xfg/permgrp.hpp"
#include "xfg/rfwitness.hpp"

namespace xfg {

class SurfaceGroup {
 public:
  // Throws InvalidGenus for g < 2.
  explicit SurfaceGroup(std::uint32_t genus);

  std::uint32_t genus() const noexcept { return genus_; }
  std::uint32_t rank() const noexcept { return 2 * genus_; }
  FreeWord a(std::uint32_t i) const;
  FreeWord b(std::uint32_t i) const;
  const FreeWord& relator() const noexcept { return relator_; }
  const WordAlphabet& alphabet() const noexcept { return alphabet_; }

  // Dehn's algorithm on the cyclic word: repeatedly replace a piece of a
  // cyclic rotation of R or R^-1 longer than 2g by the inverse of the rest.
  // The result is empty iff w = 1; in general it is conjugate to w.
  FreeWord dehn_reduce(const FreeWord& w) const;
  bool is_trivial(const FreeWord& w) const { return dehn_reduce(w).empty(); }

  // Free then cyclic reduction of w is a rotation of R or of R^-1.
  bool is_relator_rotation(const FreeWord& w) const;

 private:
  std::uint32_t genus_;
  FreeWord relator_;
  WordAlphabet alphabet_;
};

class HandlebodyEpi {
 public:
  explicit HandlebodyEpi(std::uint32_t genus);

  std::uint32_t genus() const noexcept { return genus_; }
  // Rank-g word.
  FreeWord apply(const FreeWord& w) const;
  bool in_kernel(const FreeWord& w) const { return apply(w).empty(); }

 private:
  std::uint32_t genus_;
  std::vector<FreeWord> images_;
};

class SurfaceAutomorphism {
 public:
  // Validates relator preservation for both tables and that both
  // composites fix every generator up to one common conjugator.
  // Throws InvalidAutomorphism.
  SurfaceAutomorphism(std::uint32_t genus, std::vector<FreeWord> images,
                      std::vector<FreeWord> inverse_images,
                      std::string label = {});

  static SurfaceAutomorphism identity(std::uint32_t genus);

  std::uint32_t genus() const noexcept { return genus_; }
  const std::vector<FreeWord>& images() const noexcept { return images_; }
  const std::vector<FreeWord>& inverse_images() const noexcept {
    return inverse_;
  }
  const std::string& label() const noexcept { return label_; }

  FreeWord apply(const FreeWord& w) const { return substitute(w, images_); }
  FreeWord apply_inverse(const FreeWord& w) const {
    return substitute(w, inverse_);
  }
  SurfaceAutomorphism inverse() const;

  // (f * h)(w) = f(h(w)). No revalidation: composites of valid maps are
  // valid.
  friend SurfaceAutomorphism operator*(const SurfaceAutomorphism& f,
                                       const SurfaceAutomorphism& h);

 private:
  struct Trusted {};
  SurfaceAutomorphism(std::uint32_t genus, std::vector<FreeWord> images,
                      std::vector<FreeWord> inverse_images, std::string label,
                      Trusted)
      : genus_(genus),
        images_(std::move(images)),
        inverse_(std::move(inverse_images)),
        label_(std::move(label)) {}

  std::uint32_t genus_;
  std::vector<FreeWord> images_;
  std::vector<FreeWord> inverse_;
  std::string label_;
};

// Twist tables shipped with the library, one line per family. Exposed so
// tests can check that the data, not the code, carries the formulas.
std::string_view builtin_twist_data();

// 2g+1 Humphries-type twists, validated on construction: m1, m2 (about the
// meridians b1, b2), l1..lg (about a_i) and c1..c(g-1) (about the curves
// joining consecutive handles). Throws InvalidGenus.
std::vector<SurfaceAutomorphism> builtin_twists(std::uint32_t genus);

// Names m1, m2, l1, ..., c1, ... in builtin order; uppercase is inverse.
WordAlphabet twist_alphabet(std::uint32_t genus);

// Composite t_{w1} * t_{w2} * ... (the last letter acts first).
SurfaceAutomorphism twist_word_map(std::uint32_t genus, const FreeWord& word);

struct NotStabilizing {
  std::uint32_t generator = 0;  // i such that phi(f(b_i)) != 1, 1-based
  FreeWord image;               // phi(f(b_i))
};

// x_i -> phi(f(a_i)) when f preserves ker phi; checks the descent identity
// phi o f = F o phi on all generators. Throws GenusMismatch.
std::variant<FreeAutomorphism, NotStabilizing> induced_free_automorphism(
    const HandlebodyEpi& phi, const SurfaceAutomorphism& f);

// Permutation of X^phi = X(F_g, PSL(2,p)) induced by f. The fast mode goes
// through the induced free automorphism and out_action; the direct mode
// pulls each class back to pi_1(S_g), precomposes with f^-1 and classifies.
enum class ActionMode { Fast, Direct };
std::variant<Permutation, NotStabilizing> action_on_Xphi(
    const HandlebodyEpi& phi, const SurfaceAutomorphism& f,
    const ClassTable& table, ActionMode mode = ActionMode::Fast);

struct StabilizingWord {
  FreeWord word;  // in twist_alphabet(g)
  FreeAutomorphism induced;
};

// Reduced twist words of length 1..max_length over the given letters
// (1-based builtin indices; empty means all) that preserve ker phi and
// induce a non-identity map on F_g. One word per distinct induced map, in
// breadth-first (shortlex) order.
std::vector<StabilizingWord> stabilizing_twist_words(
    std::uint32_t genus, std::uint32_t max_length,
    std::span<const std::uint32_t> letters = {});

// ---------------------------------------------------------------------------

enum class Theorem1Outcome { Symmetric, AlternatingOnly, NotFound };
const char* to_string(Theorem1Outcome o) noexcept;

struct Theorem1Options {
  EnumerationOptions enumeration;
  RecognitionOptions recognition;
};

struct PrimeReport {
  std::uint32_t p = 0;
  std::uint32_t classes = 0;
  Recognition result = Recognition::Other;
};

struct Theorem1Certificate {
  Theorem1Outcome outcome = Theorem1Outcome::NotFound;
  std::uint32_t genus = 0;
  std::uint32_t r = 0;
  std::uint32_t pmax = 0;
  std::vector<PrimeReport> scanned;  // every prime tried, in order
  // Filled for the Symmetric outcome.
  std::optional<ClassTable> table;
  std::vector<FreeAutomorphism> generators;
  std::vector<Permutation> permutations;
  RecognitionEvidence evidence;
};

// Throws InvalidGenus (g < 3), InvalidOrder (r < 1), ResourceLimit.
Theorem1Certificate theorem1_certificate(std::uint32_t genus, std::uint32_t r,
                                         std::uint32_t pmax,
                                         const Theorem1Options& options = {});

struct InvolveCertificate {
  std::uint64_t order = 0;
  Theorem1Certificate theorem1;
};

// r = k via the regular representation of a group of order k. Throws
// InvalidOrder for k = 0.
InvolveCertificate involve_certificate(std::uint64_t k, std::uint32_t pmax,
                                       const Theorem1Options& options = {});

struct SeparabilityWitness {
  std::uint32_t genus = 0;
  SurfaceAutomorphism map = SurfaceAutomorphism::identity(2);
  FreeWord gamma;  // in ker phi
  FreeWord image;  // phi(f(gamma)), nontrivial in F_g
  RFCertificate quotient;
};

struct StabilizesInstead {
  FreeAutomorphism induced;
};

struct SeparabilityOptions {
  std::uint32_t conjugator_length = 4;
  RFOptions rf;
};

// Throws GenusMismatch.
std::variant<SeparabilityWitness, StabilizesInstead> separability_witness(
    std::uint32_t genus, const SurfaceAutomorphism& f,
    const SeparabilityOptions& options = {});

// The three field checks, recomputed from the map table.
bool replay(const SeparabilityWitness& w);

// Membership of each candidate in the group generated by `gens`: by the
// stabilizer chain when the recognition ran exactly, by the recognized
// Sym/Alt (parity) otherwise. Throws ResourceLimit when the evidence is
// Other on the giant path, where membership would need a full chain.
std::vector<bool> contains_recognized(std::span<const Permutation> gens,
                                      const RecognitionEvidence& evidence,
                                      std::span<const Permutation> candidates);

}  // namespace xfg
