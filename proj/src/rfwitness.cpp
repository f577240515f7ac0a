#include "xfg/rfwitness.hpp"

#include <map>
#include <mutex>

#include "xfg/error.hpp"

namespace xfg {

namespace {

std::int64_t residue(const BigInt& x, std::uint32_t p) {
  BigInt r = x % p;
  if (r < 0) r += p;
  return r.convert_to<std::int64_t>();
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<char> composite(ExcludedPrimes::kTrialBound + 1, 0);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= ExcludedPrimes::kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i;
           j <= ExcludedPrimes::kTrialBound; j += i) {
        composite[j] = 1;
      }
    }
    return out;
  }();
  return primes;
}

void factor_into(BigInt x, ExcludedPrimes& out) {
  if (x < 0) x = -x;
  for (auto q : small_primes()) {
    if (x == 1) return;
    if (BigInt(q) * q > x) break;
    if (x % q != 0) continue;
    if (out.small.empty() || out.small.back() != q) out.small.push_back(q);
    while (x % q == 0) x /= q;
  }
  if (x == 1) return;
  BigInt bound = ExcludedPrimes::kTrialBound;
  if (x <= bound * bound) {
    // no factor up to sqrt(x): prime
    if (x <= std::numeric_limits<std::uint32_t>::max()) {
      out.small.push_back(x.convert_to<std::uint32_t>());
      return;
    }
  }
  out.cofactors.push_back(x);
}

IntegerMatrix generator_matrix(Letter l) {
  switch (l) {
    case 1: return {1, 2, 0, 1};
    case -1: return {1, -2, 0, 1};
    case 2: return {1, 0, 2, 1};
    default: return {1, 0, -2, 1};
  }
}

}  // namespace

bool IntegerMatrix::is_plus_minus_identity() const {
  return e_[1] == 0 && e_[2] == 0 && e_[0] == e_[3] &&
         (e_[0] == 1 || e_[0] == -1);
}

ProjectiveMatrix IntegerMatrix::reduce(Prime p) const {
  auto q = p.value();
  return ProjectiveMatrix::make(p, residue(e_[0], q), residue(e_[1], q),
                                residue(e_[2], q), residue(e_[3], q));
}

IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

IntegerMatrix matrix_of_word(const FreeWord& w) {
  if (w.rank() != 2) {
    throw Error(ErrorKind::RankMismatch,
                "matrix images are defined on F_2, got rank " +
                    std::to_string(w.rank()));
  }
  IntegerMatrix m;
  for (auto l : w.letters()) m = m * generator_matrix(l);
  return m;
}

// ---------------------------------------------------------------------------

FreeWord SchreierEmbedding::embed(const FreeWord& w) const {
  if (w.rank() != rank) {
    throw Error(ErrorKind::RankMismatch, "word rank vs embedding rank");
  }
  return substitute(w, words);
}

SchreierEmbedding schreier_embedding(std::uint32_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidRank, "embedding needs rank >= 2");
  std::uint32_t m = n - 1;
  FreeWord a = FreeWord::generator(2, 1);
  FreeWord b = FreeWord::generator(2, 2);

  SchreierEmbedding e{n, {}};
  if (n == 2) {
    e.words = {a, b};
  } else {
    FreeWord power(2);
    for (std::uint32_t i = 0; i < m; ++i) power *= a;
    e.words.push_back(power);
    FreeWord t(2);
    for (std::uint32_t i = 0; i < m; ++i) {
      e.words.push_back(t * b * t.inverse());
      t *= a;
    }
  }

  // Coset table of the kernel of a -> 1 (mod m), b -> 0.
  auto act = [m](std::uint32_t coset, Letter l) -> std::uint32_t {
    if (l == 1) return (coset + 1) % m;
    if (l == -1) return (coset + m - 1) % m;
    return coset;
  };
  // Schreier transversal by breadth-first search on positive letters.
  std::vector<std::optional<FreeWord>> transversal(m);
  transversal[0] = FreeWord(2);
  std::vector<std::uint32_t> queue{0};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (Letter l : {1, 2}) {
      auto c = act(queue[h], l);
      if (transversal[c]) continue;
      transversal[c] = *transversal[queue[h]] * FreeWord(2, {l});
      queue.push_back(c);
    }
  }
  std::vector<FreeWord> basis;
  for (Letter l : {1, 2}) {
    for (std::uint32_t c = 0; c < m; ++c) {
      auto s = *transversal[c] * FreeWord(2, {l}) *
               transversal[act(c, l)]->inverse();
      if (!s.empty()) basis.push_back(s);
    }
  }
  bool ok = queue.size() == m && basis == e.words && basis.size() == n;
  for (auto const& w : e.words) {
    std::uint32_t c = 0;
    for (auto l : w.letters()) c = act(c, l);
    ok = ok && c == 0;
  }
  if (!ok) {
    throw Error(ErrorKind::InvalidRank,
                "Schreier basis disagrees with the coset table");
  }
  return e;
}

// ---------------------------------------------------------------------------

bool ExcludedPrimes::excludes(std::uint64_t p) const {
  for (auto q : small) {
    if (q == p) return true;
  }
  for (auto const& c : cofactors) {
    if (c % p == 0) return true;
  }
  return false;
}

ExcludedPrimes excluded_primes(const IntegerMatrix& m) {
  if (m.is_plus_minus_identity()) {
    throw Error(ErrorKind::MatrixIsIdentity, "matrix is +-I");
  }
  ExcludedPrimes out;
  if (m[1] != 0 || m[2] != 0) {
    out.entry = m[1] != 0 ? m[1] : m[2];
    factor_into(out.entry, out);
  } else {
    out.off_diagonal = false;
    out.entry = abs(m[0]) > 1 ? m[0] : m[3];
    factor_into(out.entry - 1, out);
    factor_into(out.entry + 1, out);
    std::sort(out.small.begin(), out.small.end());
    out.small.erase(std::unique(out.small.begin(), out.small.end()),
                    out.small.end());
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<ProjectiveMatrix> embedding_tuple(const SchreierEmbedding& e,
                                              Prime p) {
  std::vector<ProjectiveMatrix> t;
  for (auto const& w : e.words) t.push_back(matrix_of_word(w).reduce(p));
  return t;
}

bool surjective_cached(std::uint32_t n, Prime p,
                       const std::vector<ProjectiveMatrix>& tuple) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, bool> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({n, p.value()});
    if (it != cache.end()) return it->second;
  }
  bool s = generates(p, tuple);
  std::lock_guard lock(mutex);
  cache[{n, p.value()}] = s;
  return s;
}

}  // namespace

RFCertificate rf_witness(std::uint32_t n, const FreeWord& alpha,
                         const RFOptions& options) {
  if (n < 2) throw Error(ErrorKind::InvalidRank, "rank must be >= 2");
  if (alpha.rank() != n) {
    throw Error(ErrorKind::RankMismatch, "word rank vs requested rank");
  }
  if (alpha.empty()) throw Error(ErrorKind::TrivialWord, "alpha is trivial");

  auto embedding = schreier_embedding(n);
  auto image = matrix_of_word(embedding.embed(alpha));
  if (image.is_plus_minus_identity()) {
    // Impossible for a faithful embedding; signals a bug.
    throw Error(ErrorKind::MatrixIsIdentity,
                "nontrivial word with matrix image +-I");
  }
  for (std::uint32_t q = 5; q <= options.prime_ceiling; q = next_prime(q)) {
    Prime p(q);
    auto tuple = embedding_tuple(embedding, p);
    if (!surjective_cached(n, p, tuple)) continue;
    GroupTuple t(p, tuple);
    auto alpha_image = word_evaluate(alpha, t);
    if (alpha_image != image.reduce(p)) {
      throw Error(ErrorKind::InvalidAutomorphism,
                  "word evaluation disagrees with the matrix image");
    }
    if (alpha_image.is_identity()) continue;
    return RFCertificate{n, alpha, q, std::move(tuple), alpha_image, true};
  }
  throw Error(ErrorKind::PrimeCeilingExceeded,
              "no witness prime up to " + std::to_string(options.prime_ceiling));
}

bool replay(const RFCertificate& cert) {
  if (cert.tuple.size() != cert.rank || cert.alpha.rank() != cert.rank ||
      !cert.surjective || !is_prime(cert.p) || cert.p < 5) {
    return false;
  }
  Prime p(cert.p);
  for (auto const& e : cert.tuple) {
    if (e.prime() != p) return false;
  }
  if (!generates(p, cert.tuple)) return false;
  auto image = word_evaluate(cert.alpha, GroupTuple(p, cert.tuple));
  return image == cert.alpha_image && !image.is_identity();
}

std::optional<OutRFEvidence> out_rf_witness(std::uint32_t n,
                                            const FreeAutomorphism& s,
                                            std::uint32_t pmax,
                                            const EnumerationOptions& options) {
  if (n < 3) throw Error(ErrorKind::InvalidRank, "rank must be >= 3");
  if (s.rank() != n) {
    throw Error(ErrorKind::RankMismatch, "automorphism rank vs rank");
  }
  for (std::uint32_t q = 5; q <= pmax; q = next_prime(q)) {
    auto table = enumerate_classes(n, Prime(q), options);
    auto perm = out_action(table, s);
    if (auto k = perm.first_moved()) {
      return OutRFEvidence{q, table.size(), *k, perm[*k]};
    }
  }
  return std::nullopt;
}

}  // namespace xfg
