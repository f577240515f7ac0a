#pragma once

// Residual finiteness witnesses for F_n.
//
// F_n is realized as a finite-index subgroup of F_2 = <a, b>, and F_2 maps
// injectively into SL(2,Z) by a -> (1 2; 0 1), b -> (1 0; 2 1). A nontrivial
// word therefore has a matrix image other than +-I, and that survives
// reduction mod every prime not dividing a chosen nonzero entry. For such p
// whose reduction is onto PSL(2,p), the kernel is a PSL(2,p)-defining
// subgroup avoiding the word.

#include <cstdint>
#include <optional>
#include <vector>

#include "xfg/defsub.hpp"
#include "xfg/freegrp.hpp"
#include "xfg/permgrp.hpp"
#include "xfg/psl2.hpp"

namespace xfg {

class IntegerMatrix {
 public:
  IntegerMatrix() : IntegerMatrix(1, 0, 0, 1) {}
  IntegerMatrix(BigInt a, BigInt b, BigInt c, BigInt d)
      : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

  const BigInt& operator[](std::size_t i) const { return e_[i]; }
  BigInt determinant() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
  bool is_plus_minus_identity() const;

  // Image in PSL(2,p); requires determinant 1.
  ProjectiveMatrix reduce(Prime p) const;

  friend IntegerMatrix operator*(const IntegerMatrix& x,
                                 const IntegerMatrix& y);
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::array<BigInt, 4> e_;
};

// Product of the generator matrices over Z. Throws RankMismatch unless w is
// a word in F_2.
IntegerMatrix matrix_of_word(const FreeWord& w);

// F_n as the kernel of F_2 -> Z/(n-1), a -> 1, b -> 0, with transversal
// 1, a, ..., a^(n-2). Its free basis is a^(n-1), b, aBA, a^2 b A^2, ...;
// for n = 2 the map is the identity.
struct SchreierEmbedding {
  std::uint32_t rank = 0;
  std::vector<FreeWord> words;  // rank-2 words, one per generator of F_n

  FreeWord embed(const FreeWord& w) const;
};

// Throws InvalidRank for n < 2. The basis is recomputed by
// Reidemeister-Schreier from the coset table and compared with the closed
// form before returning.
SchreierEmbedding schreier_embedding(std::uint32_t n);

// Primes p for which M mod p may be +-I. Off-diagonal case: the primes
// dividing the first nonzero off-diagonal entry. Diagonal case: the primes
// dividing d - 1 and d + 1 for a diagonal entry d with |d| > 1.
// Factors up to kTrialBound are listed; anything left is kept as a cofactor
// free of small primes.
struct ExcludedPrimes {
  static constexpr std::uint32_t kTrialBound = 1'000'000;

  bool off_diagonal = true;
  BigInt entry;
  std::vector<std::uint32_t> small;
  std::vector<BigInt> cofactors;

  bool excludes(std::uint64_t p) const;
};

// Throws MatrixIsIdentity on +-I.
ExcludedPrimes excluded_primes(const IntegerMatrix& m);

struct RFCertificate {
  std::uint32_t rank = 0;
  FreeWord alpha;
  std::uint32_t p = 0;
  std::vector<ProjectiveMatrix> tuple;
  ProjectiveMatrix alpha_image = ProjectiveMatrix::identity(Prime(3));
  bool surjective = false;
};

struct RFOptions {
  std::uint32_t prime_ceiling = 10'000;
};

// Smallest p >= 5 whose reduction of the embedding is onto PSL(2,p) and
// keeps alpha nontrivial. Throws TrivialWord, InvalidRank, RankMismatch or
// PrimeCeilingExceeded.
RFCertificate rf_witness(std::uint32_t n, const FreeWord& alpha,
                         const RFOptions& options = {});

// Recomputes surjectivity by closure and alpha's image from the tuple.
bool replay(const RFCertificate& cert);

struct OutRFEvidence {
  std::uint32_t p = 0;
  std::uint32_t classes = 0;
  std::uint32_t moved = 0;  // a class index with image != itself
  std::uint32_t image = 0;
};

// Smallest p <= pmax at which s acts nontrivially on X(F_n, PSL(2,p)).
// std::nullopt when no such p exists in range (in particular for inner s).
std::optional<OutRFEvidence> out_rf_witness(
    std::uint32_t n, const FreeAutomorphism& s, std::uint32_t pmax,
    const EnumerationOptions& options = {});

}  // namespace xfg
