#pragma once

// Brute-force reference computations for the tests. Nothing here uses the
// library: matrices are raw integer 4-tuples and groups are std::sets.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Mat = std::array<std::int64_t, 4>;

inline std::int64_t mod(std::int64_t x, std::int64_t p) {
  x %= p;
  return x < 0 ? x + p : x;
}

// Of M and -M, the one whose first nonzero entry is at most (p-1)/2.
inline Mat canon(Mat m, std::int64_t p) {
  for (auto& x : m) x = mod(x, p);
  for (auto x : m) {
    if (x == 0) continue;
    if (x <= (p - 1) / 2) return m;
    break;
  }
  for (auto& x : m) x = mod(-x, p);
  return m;
}

inline Mat mul(const Mat& x, const Mat& y, std::int64_t p) {
  return canon({x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]},
               p);
}

// Every (a,b,c,d) with ad - bc = 1, modulo sign, sorted.
inline std::vector<Mat> psl2(std::int64_t p) {
  std::set<Mat> s;
  for (std::int64_t a = 0; a < p; ++a)
    for (std::int64_t b = 0; b < p; ++b)
      for (std::int64_t c = 0; c < p; ++c)
        for (std::int64_t d = 0; d < p; ++d)
          if (mod(a * d - b * c, p) == 1) s.insert(canon({a, b, c, d}, p));
  return {s.begin(), s.end()};
}

inline std::size_t closure(const std::vector<Mat>& gens, std::int64_t p) {
  std::set<Mat> seen{canon({1, 0, 0, 1}, p)};
  std::vector<Mat> todo{canon({1, 0, 0, 1}, p)};
  while (!todo.empty()) {
    auto x = todo.back();
    todo.pop_back();
    for (auto const& g : gens) {
      auto y = mul(x, g, p);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen.size();
}

// GL(2,p) modulo scalars, as (matrix, inverse) pairs.
inline std::vector<std::pair<Mat, Mat>> pgl2(std::int64_t p) {
  std::vector<std::pair<Mat, Mat>> out;
  std::set<Mat> seen;
  for (std::int64_t a = 0; a < p; ++a)
    for (std::int64_t b = 0; b < p; ++b)
      for (std::int64_t c = 0; c < p; ++c)
        for (std::int64_t d = 0; d < p; ++d) {
          auto det = mod(a * d - b * c, p);
          if (det == 0) continue;
          // Normalize the scalar class by the first nonzero entry.
          Mat m{a, b, c, d};
          std::int64_t lead = 0;
          for (auto x : m)
            if (x) {
              lead = x;
              break;
            }
          std::int64_t li = 1;
          while (mod(li * lead, p) != 1) ++li;
          Mat n;
          for (int i = 0; i < 4; ++i) n[i] = mod(m[i] * li, p);
          if (!seen.insert(n).second) continue;
          std::int64_t di = 1;
          while (mod(di * det, p) != 1) ++di;
          Mat inv{mod(d * di, p), mod(-b * di, p), mod(-c * di, p),
                  mod(a * di, p)};
          out.push_back({m, inv});
        }
  return out;
}

// g x g^-1 for g in GL(2,p); the result has determinant 1 again.
inline Mat conj(const std::pair<Mat, Mat>& g, const Mat& x, std::int64_t p) {
  auto const& m = g.first;
  auto const& n = g.second;
  Mat t{m[0] * x[0] + m[1] * x[2], m[0] * x[1] + m[1] * x[3],
        m[2] * x[0] + m[3] * x[2], m[2] * x[1] + m[3] * x[3]};
  for (auto& v : t) v = mod(v, p);
  return canon({t[0] * n[0] + t[1] * n[2], t[0] * n[1] + t[1] * n[3],
                t[2] * n[0] + t[3] * n[2], t[2] * n[1] + t[3] * n[3]},
               p);
}

struct Census {
  std::uint64_t generating = 0;
  std::uint64_t orbits = 0;
};

// Scans all n-tuples; partitions the generating ones into PGL orbits when
// `partition` is set.
inline Census census(int n, std::int64_t p, bool partition) {
  auto elements = psl2(p);
  auto pgl = partition ? pgl2(p) : std::vector<std::pair<Mat, Mat>>{};
  std::size_t order = elements.size();
  std::map<Mat, std::size_t> index;
  for (std::size_t i = 0; i < order; ++i) index[elements[i]] = i;
  Census c;
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> t(n, 0);
  while (true) {
    std::vector<Mat> gens;
    for (auto i : t) gens.push_back(elements[i]);
    if (closure(gens, p) == order) {
      ++c.generating;
      if (partition && !seen.count(t)) {
        ++c.orbits;
        for (auto const& g : pgl) {
          std::vector<std::size_t> u;
          for (auto const& x : gens) u.push_back(index[conj(g, x, p)]);
          seen.insert(u);
        }
      }
    }
    int i = n - 1;
    while (i >= 0 && ++t[i] == order) t[i--] = 0;
    if (i < 0) break;
  }
  return c;
}

// Least tuple (by position in the sorted element list) over the PGL orbit.
inline std::vector<std::size_t> orbit_min(const std::vector<Mat>& gens,
                                          std::int64_t p) {
  auto elements = psl2(p);
  std::vector<std::size_t> best;
  for (auto const& g : pgl2(p)) {
    std::vector<std::size_t> u;
    for (auto const& x : gens) {
      auto y = conj(g, x, p);
      u.push_back(std::lower_bound(elements.begin(), elements.end(), y) -
                  elements.begin());
    }
    if (best.empty() || u < best) best = u;
  }
  return best;
}

inline Mat inv(const Mat& x, std::int64_t p) {
  return canon({x[3], -x[1], -x[2], x[0]}, p);
}

inline Mat commutator(const Mat& x, const Mat& y, std::int64_t p) {
  return mul(mul(mul(x, y, p), inv(x, p), p), inv(y, p), p);
}

// Homomorphisms from the genus-2 surface group to PSL(2,p): images
// (x1, y1, x2, y2) of (a1, b1, a2, b2) with [x1,y1][x2,y2] = 1.
template <typename Rng>
std::vector<std::array<Mat, 4>> surface_reps(std::int64_t p, int count,
                                             Rng& rng) {
  auto e = psl2(p);
  std::map<Mat, std::vector<std::pair<Mat, Mat>>> by_commutator;
  for (auto const& x : e)
    for (auto const& y : e) by_commutator[commutator(x, y, p)].push_back({x, y});
  std::vector<std::array<Mat, 4>> out;
  while (static_cast<int>(out.size()) < count) {
    auto const& x1 = e[rng() % e.size()];
    auto const& y1 = e[rng() % e.size()];
    auto const& pairs = by_commutator[inv(commutator(x1, y1, p), p)];
    auto const& [x2, y2] = pairs[rng() % pairs.size()];
    out.push_back({x1, y1, x2, y2});
  }
  return out;
}

// Image of a surface word (letters +-1..+-4) under a representation.
inline Mat evaluate(const std::vector<std::int32_t>& w,
                    const std::array<Mat, 4>& rep, std::int64_t p) {
  Mat m = canon({1, 0, 0, 1}, p);
  for (auto l : w) {
    auto const& x = rep[std::abs(l) - 1];
    m = mul(m, l > 0 ? x : inv(x, p), p);
  }
  return m;
}

}  // namespace oracle
