#pragma once

// PSL(2,p)-defining subgroups of F_n.
//
// A defining subgroup is the kernel of an epimorphism F_n -> PSL(2,p), and
// two epimorphisms have the same kernel iff they differ by an automorphism of
// PSL(2,p). Aut(PSL(2,p)) = PGL(2,p) for prime p, so a defining subgroup is
// stored as the lexicographically least generating n-tuple (by ElementIndex)
// in its PGL(2,p) conjugation orbit. PGL(2,p) acts freely on generating
// tuples, hence |X(F_n, PSL(2,p))| * |PGL(2,p)| counts generating tuples.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "xfg/freegrp.hpp"
#include "xfg/permgrp.hpp"
#include "xfg/psl2.hpp"

namespace xfg {

// Conjugation action of PGL(2,p) on element indices. PGL element k < |G| is
// the class of the SL lift of element k; k >= |G| is D * (element k - |G|)
// with D = diag(v, 1), v the least quadratic nonresidue.
class PglAction {
 public:
  explicit PglAction(std::shared_ptr<const Psl2Group> group);

  static std::shared_ptr<const PglAction> of(Prime p);

  const Psl2Group& group() const noexcept { return *group_; }
  std::uint32_t size() const noexcept { return 2 * group_->order(); }
  std::uint32_t nonresidue() const noexcept { return nonresidue_; }

  ElementIndex conjugate(std::uint32_t k, ElementIndex x) const;

  // Least element of the conjugacy class of x.
  ElementIndex class_rep(ElementIndex x) const { return rep_[x]; }
  // All k with conjugate(k, x) == class_rep(x).
  std::span<const std::uint32_t> transporters(ElementIndex x) const;
  // Class representatives in increasing order.
  const std::vector<ElementIndex>& class_reps() const noexcept {
    return reps_;
  }

  std::vector<ElementIndex> canonical(std::span<const ElementIndex> t) const;
  bool is_canonical(std::span<const ElementIndex> t) const;

 private:
  std::shared_ptr<const Psl2Group> group_;
  std::uint32_t nonresidue_ = 0;
  std::vector<ElementIndex> conj_d_;
  std::vector<ElementIndex> rep_;
  std::vector<ElementIndex> reps_;
  std::vector<std::uint32_t> transporter_start_;
  std::vector<std::uint32_t> transporters_;
};

// Least tuple in the PGL(2,p) orbit of t. Throws NotGenerating.
GroupTuple aut_orbit_canonical(const GroupTuple& t);

enum class Strategy { Full, Pruned };

struct EnumerationOptions {
  Strategy strategy = Strategy::Pruned;
  unsigned workers = 1;
  std::uint64_t budget = 500'000'000;  // tuple visits
  bool borel_prefilter = true;
};

class ClassTable {
 public:
  // `flat` holds count * n canonical tuples in strictly increasing order.
  ClassTable(Prime p, std::uint32_t n, std::vector<ElementIndex> flat);

  Prime prime() const noexcept { return p_; }
  std::uint32_t rank() const noexcept { return n_; }
  std::uint32_t size() const noexcept {
    return n_ == 0 ? 0 : static_cast<std::uint32_t>(flat_.size() / n_);
  }
  std::span<const ElementIndex> tuple(std::uint32_t k) const {
    return {flat_.data() + std::size_t(k) * n_, n_};
  }
  GroupTuple canon(std::uint32_t k) const;
  const std::vector<ElementIndex>& flat() const noexcept { return flat_; }

  // Index of an already-canonical tuple.
  std::optional<std::uint32_t> find(std::span<const ElementIndex> t) const;

  friend bool operator==(const ClassTable&, const ClassTable&) = default;

 private:
  Prime p_;
  std::uint32_t n_;
  std::vector<ElementIndex> flat_;
};

ClassTable enumerate_classes(std::uint32_t n, Prime p,
                             const EnumerationOptions& options = {});

// Throws NotGenerating, or NotInTable on an internal inconsistency.
std::uint32_t class_of(const ClassTable& table,
                       std::span<const ElementIndex> t);
std::uint32_t class_of(const ClassTable& table, const GroupTuple& t);

// k -> class_of(s . canon_k). Verified bijective.
Permutation out_action(const ClassTable& table, const FreeAutomorphism& s);

// Direct scan with closure tests only; shares no orbit logic with
// enumerate_classes.
std::uint64_t count_generating_tuples(std::uint32_t n, Prime p,
                                      unsigned workers = 1,
                                      std::uint64_t budget = 500'000'000);

// Cache file: "XFGC", then little-endian u32 format version, n, p, count,
// then count * n element indices.
inline constexpr std::uint32_t kCacheVersion = 1;
void write_cache(const ClassTable& table, std::ostream& out);
ClassTable read_cache(std::istream& in);

}  // namespace xfg
