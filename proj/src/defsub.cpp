#include "xfg/defsub.hpp"

#include <algorithm>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include "xfg/error.hpp"

namespace xfg {

namespace {

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// |G|^(n-1) * firsts, saturating at UINT64_MAX.
std::uint64_t visit_count(std::uint64_t firsts, std::uint64_t order,
                          std::uint32_t n) {
  long double v = static_cast<long double>(firsts);
  for (std::uint32_t i = 1; i < n; ++i) v *= static_cast<long double>(order);
  if (v >= 1.8e19L) return UINT64_MAX;
  return static_cast<std::uint64_t>(v);
}

void check_budget(std::uint64_t visits, std::uint64_t budget) {
  if (visits > budget) {
    throw Error(ErrorKind::ResourceLimit,
                "estimated " + std::to_string(visits) +
                    " tuple visits exceed the budget of " +
                    std::to_string(budget));
  }
}

// Runs body(w) for w in [0, workers) and rethrows the first failure.
template <typename Body>
void run_workers(unsigned workers, Body body) {
  if (workers <= 1) {
    body(0u);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        body(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Iterates all tuples (first, *, ..., *) in lexicographic order.
template <typename Visit>
void for_each_tail(ElementIndex first, std::uint32_t n, std::uint32_t order,
                   Visit visit) {
  std::vector<ElementIndex> t(n, 0);
  t[0] = first;
  if (n == 1) {
    visit(std::span<const ElementIndex>(t));
    return;
  }
  while (true) {
    visit(std::span<const ElementIndex>(t));
    std::uint32_t i = n - 1;
    while (i >= 1 && ++t[i] == order) {
      t[i] = 0;
      --i;
    }
    if (i == 0) return;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

PglAction::PglAction(std::shared_ptr<const Psl2Group> group)
    : group_(std::move(group)) {
  auto p = group_->prime().value();
  for (std::uint32_t v = 2; v < p; ++v) {
    if (pow_mod(v, (p - 1) / 2, p) == p - 1) {
      nonresidue_ = v;
      break;
    }
  }
  auto vinv = pow_mod(nonresidue_, p - 2, p);
  auto order = group_->order();
  conj_d_.resize(order);
  for (ElementIndex x = 0; x < order; ++x) {
    auto e = group_->element(x).entries();
    conj_d_[x] = group_->index_of(ProjectiveMatrix::make(
        group_->prime(), e[0], std::int64_t(nonresidue_) * e[1],
        std::int64_t(vinv) * e[2], e[3]));
  }

  rep_.resize(order);
  transporter_start_.resize(order + 1);
  std::vector<ElementIndex> images(size());
  for (ElementIndex x = 0; x < order; ++x) {
    for (std::uint32_t k = 0; k < size(); ++k) images[k] = conjugate(k, x);
    auto r = *std::min_element(images.begin(), images.end());
    rep_[x] = r;
    transporter_start_[x] = static_cast<std::uint32_t>(transporters_.size());
    for (std::uint32_t k = 0; k < size(); ++k) {
      if (images[k] == r) transporters_.push_back(k);
    }
    if (r == x) reps_.push_back(x);
  }
  transporter_start_[order] = static_cast<std::uint32_t>(transporters_.size());
}

std::shared_ptr<const PglAction> PglAction::of(Prime p) {
  static std::mutex mutex;
  static std::map<std::uint32_t, std::shared_ptr<const PglAction>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[p.value()];
  if (!slot) slot = std::make_shared<const PglAction>(Psl2Group::of(p));
  return slot;
}

ElementIndex PglAction::conjugate(std::uint32_t k, ElementIndex x) const {
  auto order = group_->order();
  auto g = k < order ? k : k - order;
  auto y = group_->mul(group_->mul(g, x), group_->inv(g));
  return k < order ? y : conj_d_[y];
}

std::span<const std::uint32_t> PglAction::transporters(ElementIndex x) const {
  return {transporters_.data() + transporter_start_[x],
          transporter_start_[x + 1] - transporter_start_[x]};
}

std::vector<ElementIndex> PglAction::canonical(
    std::span<const ElementIndex> t) const {
  std::vector<ElementIndex> best(t.begin(), t.end());
  if (t.empty()) return best;
  std::vector<ElementIndex> scratch(t.size());
  bool have = false;
  best[0] = scratch[0] = rep_[t[0]];
  for (auto k : transporters(t[0])) {
    bool better = !have;
    bool worse = false;
    for (std::size_t i = 1; i < t.size(); ++i) {
      auto y = conjugate(k, t[i]);
      scratch[i] = y;
      if (!better) {
        if (y < best[i]) {
          better = true;
        } else if (y > best[i]) {
          worse = true;
          break;
        }
      }
    }
    if (better && !worse) {
      best = scratch;
      have = true;
    }
  }
  return best;
}

bool PglAction::is_canonical(std::span<const ElementIndex> t) const {
  if (t.empty()) return true;
  if (rep_[t[0]] != t[0]) return false;
  for (auto k : transporters(t[0])) {
    for (std::size_t i = 1; i < t.size(); ++i) {
      auto y = conjugate(k, t[i]);
      if (y < t[i]) return false;
      if (y > t[i]) break;
    }
  }
  return true;
}

GroupTuple aut_orbit_canonical(const GroupTuple& t) {
  auto action = PglAction::of(t.prime());
  const auto& group = action->group();
  std::vector<ElementIndex> idx;
  for (auto const& e : t.entries()) idx.push_back(group.index_of(e));
  if (!group.generates(idx)) {
    throw Error(ErrorKind::NotGenerating, "tuple does not generate PSL(2,p)");
  }
  std::vector<ProjectiveMatrix> out;
  for (auto i : action->canonical(idx)) out.push_back(group.element(i));
  return GroupTuple(t.prime(), std::move(out));
}

// ---------------------------------------------------------------------------

ClassTable::ClassTable(Prime p, std::uint32_t n, std::vector<ElementIndex> flat)
    : p_(p), n_(n), flat_(std::move(flat)) {
  if (n_ == 0) throw Error(ErrorKind::InvalidRank, "rank 0 class table");
  if (flat_.size() % n_ != 0) {
    throw Error(ErrorKind::CacheFormat, "tuple data not a multiple of rank");
  }
  for (std::uint32_t k = 1; k < size(); ++k) {
    auto a = tuple(k - 1);
    auto b = tuple(k);
    if (!std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) {
      throw Error(ErrorKind::CacheFormat, "class tuples not strictly sorted");
    }
  }
}

GroupTuple ClassTable::canon(std::uint32_t k) const {
  auto group = Psl2Group::of(p_);
  std::vector<ProjectiveMatrix> e;
  for (auto i : tuple(k)) e.push_back(group->element(i));
  return GroupTuple(p_, std::move(e));
}

std::optional<std::uint32_t> ClassTable::find(
    std::span<const ElementIndex> t) const {
  if (t.size() != n_) return std::nullopt;
  std::uint32_t lo = 0;
  std::uint32_t hi = size();
  while (lo < hi) {
    auto mid = lo + (hi - lo) / 2;
    auto m = tuple(mid);
    if (std::lexicographical_compare(m.begin(), m.end(), t.begin(), t.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size() && std::equal(t.begin(), t.end(), tuple(lo).begin())) {
    return lo;
  }
  return std::nullopt;
}

ClassTable enumerate_classes(std::uint32_t n, Prime p,
                             const EnumerationOptions& options) {
  if (p.value() < 5) {
    throw Error(ErrorKind::InvalidPrime,
                "enumeration requires p >= 5, got " + std::to_string(p.value()));
  }
  if (n == 0) throw Error(ErrorKind::InvalidRank, "rank must be >= 1");

  auto group = Psl2Group::of(p);
  auto order = group->order();
  std::vector<ElementIndex> firsts;
  if (options.strategy == Strategy::Full) {
    firsts.resize(order);
    std::iota(firsts.begin(), firsts.end(), 0u);
  }
  // Pruned firsts need the conjugacy classes, so the budget check for the
  // full scan happens before the action is built.
  check_budget(visit_count(options.strategy == Strategy::Full ? order : 1,
                           order, n),
               options.budget);
  auto action = PglAction::of(p);
  if (options.strategy == Strategy::Pruned) firsts = action->class_reps();
  check_budget(visit_count(firsts.size(), order, n), options.budget);

  bool prefilter = options.borel_prefilter && group->has_fixed_point_masks();
  unsigned workers = std::max(1u, options.workers);
  std::vector<std::vector<ElementIndex>> found(workers);
  run_workers(workers, [&](unsigned w) {
    auto& out = found[w];
    for (std::size_t i = w; i < firsts.size(); i += workers) {
      for_each_tail(firsts[i], n, order, [&](std::span<const ElementIndex> t) {
        if (prefilter) {
          // A common fixed point on P^1 means a common Borel subgroup.
          std::uint64_t common = ~std::uint64_t(0);
          for (auto x : t) common &= group->fixed_point_mask(x);
          if (common) return;
        }
        if (!action->is_canonical(t)) return;
        if (!group->generates(t)) return;
        out.insert(out.end(), t.begin(), t.end());
      });
    }
  });

  std::vector<ElementIndex> all;
  for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
  std::vector<std::uint32_t> perm(all.size() / n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(all.begin() + std::size_t(a) * n,
                                        all.begin() + std::size_t(a + 1) * n,
                                        all.begin() + std::size_t(b) * n,
                                        all.begin() + std::size_t(b + 1) * n);
  });
  std::vector<ElementIndex> flat;
  flat.reserve(all.size());
  for (auto k : perm) {
    flat.insert(flat.end(), all.begin() + std::size_t(k) * n,
                all.begin() + std::size_t(k + 1) * n);
  }
  return ClassTable(p, n, std::move(flat));
}

std::uint32_t class_of(const ClassTable& table,
                       std::span<const ElementIndex> t) {
  if (t.size() != table.rank()) {
    throw Error(ErrorKind::RankMismatch, "tuple rank vs table rank");
  }
  auto action = PglAction::of(table.prime());
  if (!action->group().generates(t)) {
    throw Error(ErrorKind::NotGenerating, "tuple does not generate PSL(2,p)");
  }
  auto k = table.find(action->canonical(t));
  if (!k) {
    throw Error(ErrorKind::NotInTable,
                "canonical tuple missing from the class table");
  }
  return *k;
}

std::uint32_t class_of(const ClassTable& table, const GroupTuple& t) {
  if (t.prime() != table.prime()) {
    throw Error(ErrorKind::PrimeMismatch, "tuple prime vs table prime");
  }
  auto group = Psl2Group::of(t.prime());
  std::vector<ElementIndex> idx;
  for (auto const& e : t.entries()) idx.push_back(group->index_of(e));
  return class_of(table, idx);
}

Permutation out_action(const ClassTable& table, const FreeAutomorphism& s) {
  if (s.rank() != table.rank()) {
    throw Error(ErrorKind::RankMismatch, "automorphism rank vs table rank");
  }
  auto group = Psl2Group::of(table.prime());
  std::vector<std::uint32_t> images(table.size());
  for (std::uint32_t k = 0; k < table.size(); ++k) {
    images[k] = class_of(table, apply_automorphism(s, table.tuple(k), *group));
  }
  // The Permutation constructor rejects non-bijective image lists.
  return Permutation(std::move(images));
}

std::uint64_t count_generating_tuples(std::uint32_t n, Prime p,
                                      unsigned workers, std::uint64_t budget) {
  if (p.value() < 5) {
    throw Error(ErrorKind::InvalidPrime, "enumeration requires p >= 5");
  }
  if (n == 0) throw Error(ErrorKind::InvalidRank, "rank must be >= 1");
  auto group = Psl2Group::of(p);
  auto order = group->order();
  check_budget(visit_count(order, order, n), budget);
  workers = std::max(1u, workers);
  std::vector<std::uint64_t> counts(workers, 0);
  run_workers(workers, [&](unsigned w) {
    for (ElementIndex f = w; f < order; f += workers) {
      for_each_tail(f, n, order, [&](std::span<const ElementIndex> t) {
        if (group->closure_size(t) == order) ++counts[w];
      });
    }
  });
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t(0));
}

// ---------------------------------------------------------------------------

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff),
               static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw Error(ErrorKind::CacheFormat, "truncated cache file");
  }
  return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 |
         std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24;
}

constexpr char kMagic[4] = {'X', 'F', 'G', 'C'};

}  // namespace

void write_cache(const ClassTable& table, std::ostream& out) {
  out.write(kMagic, 4);
  put_u32(out, kCacheVersion);
  put_u32(out, table.rank());
  put_u32(out, table.prime().value());
  put_u32(out, table.size());
  for (auto x : table.flat()) put_u32(out, x);
}

ClassTable read_cache(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic)) {
    throw Error(ErrorKind::CacheFormat, "bad magic");
  }
  auto version = get_u32(in);
  if (version != kCacheVersion) {
    throw Error(ErrorKind::CacheFormat,
                "unsupported cache version " + std::to_string(version));
  }
  auto n = get_u32(in);
  Prime p(get_u32(in));
  auto count = get_u32(in);
  auto order = psl2_order(p);
  std::vector<ElementIndex> flat(std::size_t(count) * n);
  for (auto& x : flat) {
    x = get_u32(in);
    if (x >= order) throw Error(ErrorKind::CacheFormat, "element index range");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorKind::CacheFormat, "trailing bytes");
  }
  return ClassTable(p, n, std::move(flat));
}

}  // namespace xfg
