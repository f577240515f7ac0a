#include "xfg/psl2.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "xfg/error.hpp"

namespace xfg {

namespace {

std::uint32_t reduce(std::int64_t x, std::uint32_t p) noexcept {
  auto r = x % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

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

std::uint32_t inv_mod(std::uint32_t x, std::uint32_t p) {
  return pow_mod(x, p - 2, p);
}

// Flips the sign unless the first nonzero entry is in [1, (p-1)/2].
std::array<std::uint32_t, 4> canonical(std::array<std::uint32_t, 4> e,
                                       std::uint32_t p) noexcept {
  for (auto x : e) {
    if (x == 0) continue;
    if (x > (p - 1) / 2) {
      for (auto& y : e) y = y == 0 ? 0 : p - y;
    }
    break;
  }
  return e;
}

bool is_canonical(const std::array<std::uint32_t, 4>& e,
                  std::uint32_t p) noexcept {
  for (auto x : e) {
    if (x != 0) return x <= (p - 1) / 2;
  }
  return false;
}

std::array<std::uint32_t, 4> unpack(std::uint64_t key, std::uint32_t p) {
  std::array<std::uint32_t, 4> e{};
  for (int i = 3; i >= 0; --i) {
    e[i] = static_cast<std::uint32_t>(key % p);
    key /= p;
  }
  return e;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::uint64_t value) : value_(0) {
  if (value < 3 || value > 65521 || !is_prime(value)) {
    throw Error(ErrorKind::InvalidPrime,
                std::to_string(value) + " is not an odd prime below 2^16");
  }
  value_ = static_cast<std::uint32_t>(value);
}

std::uint32_t next_prime(std::uint32_t n) {
  do {
    ++n;
  } while (!is_prime(n));
  return n;
}

ProjectiveMatrix ProjectiveMatrix::make(Prime prime, std::int64_t a,
                                        std::int64_t b, std::int64_t c,
                                        std::int64_t d) {
  auto p = prime.value();
  std::array<std::uint32_t, 4> e{reduce(a, p), reduce(b, p), reduce(c, p),
                                 reduce(d, p)};
  std::uint64_t det = (std::uint64_t(e[0]) * e[3] + p -
                       std::uint64_t(e[1]) * e[2] % p) %
                      p;
  if (det != 1) {
    throw Error(ErrorKind::NonUnitDeterminant,
                "determinant " + std::to_string(det) + " mod " +
                    std::to_string(p));
  }
  return ProjectiveMatrix(p, canonical(e, p));
}

ProjectiveMatrix ProjectiveMatrix::identity(Prime p) {
  return ProjectiveMatrix(p.value(), {1, 0, 0, 1});
}

bool ProjectiveMatrix::is_identity() const noexcept {
  return e_[0] == 1 && e_[1] == 0 && e_[2] == 0 && e_[3] == 1;
}

std::uint64_t ProjectiveMatrix::key() const noexcept {
  std::uint64_t k = 0;
  for (auto x : e_) k = k * p_ + x;
  return k;
}

ProjectiveMatrix operator*(const ProjectiveMatrix& x,
                           const ProjectiveMatrix& y) {
  if (x.p_ != y.p_) {
    throw Error(ErrorKind::PrimeMismatch, std::to_string(x.p_) + " vs " +
                                              std::to_string(y.p_));
  }
  std::uint64_t p = x.p_;
  const auto& a = x.e_;
  const auto& b = y.e_;
  std::array<std::uint32_t, 4> e{
      static_cast<std::uint32_t>((std::uint64_t(a[0]) * b[0] +
                                  std::uint64_t(a[1]) * b[2]) % p),
      static_cast<std::uint32_t>((std::uint64_t(a[0]) * b[1] +
                                  std::uint64_t(a[1]) * b[3]) % p),
      static_cast<std::uint32_t>((std::uint64_t(a[2]) * b[0] +
                                  std::uint64_t(a[3]) * b[2]) % p),
      static_cast<std::uint32_t>((std::uint64_t(a[2]) * b[1] +
                                  std::uint64_t(a[3]) * b[3]) % p)};
  return ProjectiveMatrix(x.p_, canonical(e, x.p_));
}

ProjectiveMatrix inverse(const ProjectiveMatrix& x) {
  auto p = static_cast<std::int64_t>(x.p());
  const auto& e = x.entries();
  return ProjectiveMatrix::make(x.prime(), e[3], p - e[1], p - e[2], e[0]);
}

std::uint64_t order(const ProjectiveMatrix& x) {
  std::uint64_t k = 1;
  auto y = x;
  while (!y.is_identity()) {
    y = y * x;
    ++k;
  }
  return k;
}

std::uint64_t psl2_order(Prime p) noexcept {
  std::uint64_t q = p.value();
  return q * (q * q - 1) / 2;
}

std::uint64_t pgl2_order(Prime p) noexcept { return 2 * psl2_order(p); }

std::vector<ProjectiveMatrix> psl2_enumerate(Prime prime) {
  auto p = prime.value();
  std::vector<ProjectiveMatrix> out;
  out.reserve(psl2_order(prime));
  for (std::uint32_t a = 0; a < p; ++a) {
    for (std::uint32_t b = 0; b < p; ++b) {
      if (a != 0) {
        auto ainv = inv_mod(a, p);
        for (std::uint32_t c = 0; c < p; ++c) {
          auto d = static_cast<std::uint32_t>(
              (1 + std::uint64_t(b) * c) % p * ainv % p);
          std::array<std::uint32_t, 4> e{a, b, c, d};
          if (is_canonical(e, p)) out.push_back(ProjectiveMatrix(p, e));
        }
      } else if (b != 0) {
        // -bc = 1
        auto c = (p - inv_mod(b, p)) % p;
        for (std::uint32_t d = 0; d < p; ++d) {
          std::array<std::uint32_t, 4> e{a, b, c, d};
          if (is_canonical(e, p)) out.push_back(ProjectiveMatrix(p, e));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Psl2Group::Psl2Group(Prime p) : p_(p) {
  auto q = p.value();
  auto elements = psl2_enumerate(p);
  keys_.reserve(elements.size());
  for (auto const& x : elements) keys_.push_back(x.key());

  std::uint64_t q4 = std::uint64_t(q) * q * q * q;
  if (q4 <= (std::uint64_t(1) << 22)) {
    dense_.assign(q4, -1);
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      dense_[keys_[i]] = static_cast<std::int32_t>(i);
    }
  }
  identity_ = index_of(ProjectiveMatrix::identity(p));

  auto n = order();
  inverse_.resize(n);
  for (ElementIndex i = 0; i < n; ++i) {
    inverse_[i] = index_of(xfg::inverse(elements[i]));
  }
  if (n <= kTableLimit) {
    table_.resize(std::size_t(n) * n);
    for (ElementIndex i = 0; i < n; ++i) {
      for (ElementIndex j = 0; j < n; ++j) {
        table_[std::size_t(i) * n + j] = index_of(elements[i] * elements[j]);
      }
    }
  }
  if (q + 1 <= 64) {
    fixed_.resize(n);
    for (ElementIndex i = 0; i < n; ++i) {
      const auto& e = elements[i].entries();
      std::uint64_t mask = e[2] == 0 ? 1 : 0;  // [1:0]
      for (std::uint32_t t = 0; t < q; ++t) {
        // c t^2 + (d - a) t - b == 0
        std::uint64_t v = (std::uint64_t(e[2]) * t % q * t +
                           std::uint64_t(e[3] + q - e[0]) * t + (q - e[1])) %
                          q;
        if (v == 0) mask |= std::uint64_t(1) << (t + 1);
      }
      fixed_[i] = mask;
    }
  }
}

std::shared_ptr<const Psl2Group> Psl2Group::of(Prime p) {
  static std::mutex mutex;
  static std::map<std::uint32_t, std::shared_ptr<const Psl2Group>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[p.value()];
  if (!slot) slot = std::make_shared<const Psl2Group>(p);
  return slot;
}

ProjectiveMatrix Psl2Group::element(ElementIndex i) const {
  if (i >= keys_.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "element index " + std::to_string(i));
  }
  return ProjectiveMatrix(p_.value(), unpack(keys_[i], p_.value()));
}

ElementIndex Psl2Group::index_of(const ProjectiveMatrix& x) const {
  if (x.p() != p_.value()) {
    throw Error(ErrorKind::PrimeMismatch, "element over wrong prime");
  }
  auto key = x.key();
  if (!dense_.empty()) return static_cast<ElementIndex>(dense_[key]);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  return static_cast<ElementIndex>(it - keys_.begin());
}

std::uint32_t Psl2Group::closure_size(
    std::span<const ElementIndex> gens) const {
  std::vector<char> seen(order(), 0);
  std::vector<ElementIndex> queue{identity_};
  seen[identity_] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto x = queue[head];
    for (auto s : gens) {
      auto y = mul(x, s);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return static_cast<std::uint32_t>(queue.size());
}

bool Psl2Group::generates(std::span<const ElementIndex> gens) const {
  // A subgroup with more than half the elements is the whole group.
  std::uint32_t half = order() / 2;
  std::vector<char> seen(order(), 0);
  std::vector<ElementIndex> queue;
  queue.reserve(order());
  queue.push_back(identity_);
  seen[identity_] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto x = queue[head];
    for (auto s : gens) {
      auto y = mul(x, s);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
        if (queue.size() > half) return true;
      }
    }
  }
  return false;
}

bool generates(Prime p, std::span<const ProjectiveMatrix> gens) {
  if (gens.empty()) return false;
  for (auto const& g : gens) {
    if (g.prime() != p) {
      throw Error(ErrorKind::PrimeMismatch, "generator over wrong prime");
    }
  }
  auto group = Psl2Group::of(p);
  std::vector<ElementIndex> idx;
  for (auto const& g : gens) idx.push_back(group->index_of(g));
  return group->generates(idx);
}

}  // namespace xfg
