#pragma once

// Exact arithmetic in PSL(2,p), p an odd prime.
//
// Elements are stored as sign-canonical 2x2 matrices: of the two lifts M and
// -M the one whose first nonzero entry (row-major) lies in [1, (p-1)/2] is
// kept. Psl2Group holds the dense element table for a fixed p; the element
// order of that table (lexicographic on canonical entries) defines the
// ElementIndex encoding used throughout the library.

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace xfg {

using ElementIndex = std::uint32_t;

bool is_prime(std::uint64_t n) noexcept;

// Odd prime >= 3.
class Prime {
 public:
  explicit Prime(std::uint64_t value);

  std::uint32_t value() const noexcept { return value_; }

  friend bool operator==(Prime, Prime) = default;
  friend auto operator<=>(Prime, Prime) = default;

 private:
  struct Trusted {};
  Prime(std::uint32_t value, Trusted) noexcept : value_(value) {}
  friend class ProjectiveMatrix;

  std::uint32_t value_;
};

// Next prime strictly greater than n.
std::uint32_t next_prime(std::uint32_t n);

class ProjectiveMatrix {
 public:
  // Reduces mod p and canonicalizes. Throws NonUnitDeterminant unless
  // ad - bc == 1 (mod p).
  static ProjectiveMatrix make(Prime p, std::int64_t a, std::int64_t b,
                               std::int64_t c, std::int64_t d);
  static ProjectiveMatrix identity(Prime p);

  Prime prime() const noexcept { return Prime(p_, Prime::Trusted{}); }
  std::uint32_t p() const noexcept { return p_; }
  const std::array<std::uint32_t, 4>& entries() const noexcept { return e_; }
  std::uint32_t operator[](std::size_t i) const noexcept { return e_[i]; }

  bool is_identity() const noexcept;

  // Packs the canonical entries into ((a*p+b)*p+c)*p+d. Ordering of keys is
  // the lexicographic ordering of entries.
  std::uint64_t key() const noexcept;

  friend bool operator==(const ProjectiveMatrix&, const ProjectiveMatrix&) =
      default;
  friend std::strong_ordering operator<=>(const ProjectiveMatrix& x,
                                          const ProjectiveMatrix& y) noexcept {
    if (auto c = x.p_ <=> y.p_; c != 0) return c;
    return x.e_ <=> y.e_;
  }

  friend ProjectiveMatrix operator*(const ProjectiveMatrix& x,
                                    const ProjectiveMatrix& y);

 private:
  ProjectiveMatrix(std::uint32_t p, std::array<std::uint32_t, 4> e) noexcept
      : p_(p), e_(e) {}
  friend class Psl2Group;
  friend std::vector<ProjectiveMatrix> psl2_enumerate(Prime p);

  std::uint32_t p_;
  std::array<std::uint32_t, 4> e_;
};

// Adjugate.
ProjectiveMatrix inverse(const ProjectiveMatrix& x);
// Least k >= 1 with x^k = 1.
std::uint64_t order(const ProjectiveMatrix& x);

// |PSL(2,p)| = p(p^2-1)/2.
std::uint64_t psl2_order(Prime p) noexcept;
// |PGL(2,p)| = p(p^2-1).
std::uint64_t pgl2_order(Prime p) noexcept;

// All elements, lexicographically ordered by canonical entries.
std::vector<ProjectiveMatrix> psl2_enumerate(Prime p);

// Dense element table for a fixed prime. Immutable after construction.
class Psl2Group {
 public:
  // Multiplication tables are precomputed below this group order.
  static constexpr std::uint64_t kTableLimit = 2500;

  explicit Psl2Group(Prime p);

  // Shared, lazily built instance for p. Safe to call concurrently.
  static std::shared_ptr<const Psl2Group> of(Prime p);

  Prime prime() const noexcept { return p_; }
  std::uint32_t order() const noexcept {
    return static_cast<std::uint32_t>(keys_.size());
  }
  bool has_table() const noexcept { return !table_.empty(); }

  ProjectiveMatrix element(ElementIndex i) const;
  ElementIndex index_of(const ProjectiveMatrix& x) const;
  ElementIndex identity() const noexcept { return identity_; }

  ElementIndex mul(ElementIndex x, ElementIndex y) const {
    if (!table_.empty()) return table_[std::size_t(x) * order() + y];
    return index_of(element(x) * element(y));
  }
  ElementIndex inv(ElementIndex x) const noexcept { return inverse_[x]; }

  // Subgroup closure by breadth-first products.
  bool generates(std::span<const ElementIndex> gens) const;
  std::uint32_t closure_size(std::span<const ElementIndex> gens) const;

  // Bit j set iff x fixes point j of the projective line P^1(F_p); points are
  // [1:0], [t:1] for t = 0..p-1. Only available for p + 1 <= 64.
  bool has_fixed_point_masks() const noexcept { return !fixed_.empty(); }
  std::uint64_t fixed_point_mask(ElementIndex x) const { return fixed_[x]; }

 private:
  Prime p_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::int32_t> dense_;  // key -> index when p^4 is small
  std::vector<ElementIndex> table_;
  std::vector<ElementIndex> inverse_;
  std::vector<std::uint64_t> fixed_;
  ElementIndex identity_ = 0;
};

// Closure test on matrices; throws PrimeMismatch on mixed primes.
bool generates(Prime p, std::span<const ProjectiveMatrix> gens);

}  // namespace xfg
