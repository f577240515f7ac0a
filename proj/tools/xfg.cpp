#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "xfg/certificate.hpp"
#include "xfg/defsub.hpp"
#include "xfg/error.hpp"
#include "xfg/rfwitness.hpp"
#include "xfg/surface.hpp"
#include "xfg/verify.hpp"

using namespace xfg;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitResource = 2;
constexpr int kExitVerify = 3;

struct RunConfig {
  std::uint64_t budget = EnumerationOptions{}.budget;
  std::uint32_t prime_ceiling = RFOptions{}.prime_ceiling;
  std::uint64_t seed = RecognitionOptions{}.seed;
  unsigned workers = 1;
  std::string cache_dir;
  std::string output;

  EnumerationOptions enumeration(Strategy s = Strategy::Pruned) const {
    EnumerationOptions o;
    o.strategy = s;
    o.workers = workers;
    o.budget = budget;
    return o;
  }

  Theorem1Options theorem1() const {
    Theorem1Options o;
    o.enumeration = enumeration();
    o.recognition.seed = seed;
    return o;
  }

  fs::path cache_path(std::uint32_t n, std::uint32_t p) const {
    fs::path dir = cache_dir;
    if (dir.empty()) {
      const char* env = std::getenv("XFG_CACHE_DIR");
      dir = env && *env ? env : "xfg-cache";
    }
    return dir / ("classes-n" + std::to_string(n) + "-p" + std::to_string(p) +
                  ".xfgc");
  }
};

struct UsageError {
  std::string message;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out || !(out << text << '\n')) {
    throw UsageError{"cannot write " + cfg.output};
  }
}

void emit(const RunConfig& cfg, const json& doc) { emit(cfg, doc.dump(2)); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError{"cannot read " + path};
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError{path + ": " + e.what()};
  }
}

void write_cache_file(const fs::path& path, const ClassTable& table) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (out) write_cache(table, out);
  if (!out) std::cerr << "warning: cache not written to " << path << '\n';
}

ClassTable load_or_enumerate(const RunConfig& cfg, std::uint32_t n, Prime p) {
  auto path = cfg.cache_path(n, p.value());
  if (std::ifstream in{path, std::ios::binary}) {
    try {
      auto table = read_cache(in);
      if (table.rank() == n && table.prime() == p) return table;
    } catch (const Error&) {
    }
    std::cerr << "warning: ignoring unusable cache " << path << '\n';
  }
  auto table = enumerate_classes(n, p, cfg.enumeration());
  write_cache_file(path, table);
  return table;
}

int cmd_enumerate(const RunConfig& cfg, std::uint32_t n, std::uint32_t q,
                  const std::string& strategy) {
  Prime p(q);
  auto table = enumerate_classes(
      n, p, cfg.enumeration(strategy == "full" ? Strategy::Full : Strategy::Pruned));
  write_cache_file(cfg.cache_path(n, q), table);
  emit(cfg, std::to_string(table.size()));
  return kExitOk;
}

int cmd_action(const RunConfig& cfg, std::uint32_t n, std::uint32_t q) {
  Prime p(q);
  auto table = load_or_enumerate(cfg, n, p);
  std::vector<Permutation> perms;
  if (n >= 2) {
    for (auto const& s : nielsen_generators(n)) perms.push_back(out_action(table, s));
  }
  RecognitionOptions ro;
  ro.seed = cfg.seed;
  auto ev = recognize_sym_alt(perms, table.size(), ro);
  json doc{{"rank", n},          {"p", q},
           {"N", table.size()},  {"result", to_string(ev.result)},
           {"evidence", evidence_json(ev)}, {"seed", cfg.seed}};
  if (ev.order) {
    doc["order"] = ev.order->str();
    doc["orderSource"] = "stabilizer chain";
  } else if (ev.result == Recognition::Symmetric) {
    doc["order"] = factorial(table.size()).str();
    doc["orderSource"] = "recognized";
  } else if (ev.result == Recognition::Alternating) {
    doc["order"] = BigInt(factorial(table.size()) / 2).str();
    doc["orderSource"] = "recognized";
  }
  emit(cfg, doc);
  return kExitOk;
}

int cmd_rf_witness(const RunConfig& cfg, std::uint32_t n, const std::string& word) {
  if (n == 0) throw Error(ErrorKind::InvalidRank, "rank must be >= 2");
  auto alpha = WordAlphabet::free(n).parse(word);
  RFOptions o;
  o.prime_ceiling = cfg.prime_ceiling;
  emit(cfg, to_json(rf_witness(n, alpha, o), cfg.seed));
  return kExitOk;
}

int cmd_theorem1(const RunConfig& cfg, std::uint32_t g, std::uint32_t r,
                 std::uint32_t pmax) {
  emit(cfg, to_json(theorem1_certificate(g, r, pmax, cfg.theorem1()), cfg.seed));
  return kExitOk;
}

int cmd_involve(const RunConfig& cfg, std::uint64_t k, std::uint32_t pmax) {
  emit(cfg, to_json(involve_certificate(k, pmax, cfg.theorem1()), cfg.seed));
  return kExitOk;
}

int cmd_separate(const RunConfig& cfg, std::uint32_t g, const std::string& file) {
  auto f = surface_map_from_json(read_json_file(file), g);
  SeparabilityOptions o;
  o.rf.prime_ceiling = cfg.prime_ceiling;
  auto result = separability_witness(g, f, o);
  if (auto* w = std::get_if<SeparabilityWitness>(&result)) {
    emit(cfg, to_json(*w, cfg.seed));
  } else {
    emit(cfg, to_json(std::get<StabilizesInstead>(result), f, cfg.seed));
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& file) {
  VerifyReport report;
  try {
    report = verify_certificate(read_json_file(file));
  } catch (const UsageError& e) {
    report.status = VerifyStatus::Malformed;
    report.message = e.message;
  }
  const char* status = report.status == VerifyStatus::Ok          ? "ok"
                       : report.status == VerifyStatus::Malformed ? "malformed"
                                                                  : "failed";
  json doc{{"status", status}, {"checks", report.passed.size()}};
  if (!report.message.empty()) doc["message"] = report.message;
  emit(cfg, doc);
  switch (report.status) {
    case VerifyStatus::Ok: return kExitOk;
    case VerifyStatus::Malformed: return kExitInput;
    case VerifyStatus::Failed: return kExitVerify;
  }
  return kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PSL(2,p)-defining subgroups, mapping class actions and certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--workers", cfg.workers, "worker threads")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--budget", cfg.budget, "tuple visit ceiling")
      ->check(CLI::PositiveNumber);
  app.add_option("--prime-ceiling", cfg.prime_ceiling, "largest prime tried")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "recognition seed");
  app.add_option("--cache-dir", cfg.cache_dir,
                 "enumeration cache directory (default $XFG_CACHE_DIR or ./xfg-cache)");
  app.add_option("--output,-o", cfg.output, "write the result here instead of stdout");

  std::uint32_t rank = 0;
  std::uint32_t prime = 0;
  std::string strategy = "pruned";
  auto* enumerate = app.add_subcommand("enumerate", "count X(F_n, PSL(2,p))");
  enumerate->add_option("--rank", rank)->required();
  enumerate->add_option("--prime", prime)->required();
  enumerate->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"full", "pruned"}));

  auto* action = app.add_subcommand("action", "recognize the Out(F_n) action");
  action->add_option("--rank", rank)->required();
  action->add_option("--prime", prime)->required();

  std::string word;
  auto* rf = app.add_subcommand("rf-witness", "finite quotient detecting a word");
  rf->add_option("--rank", rank)->required();
  rf->add_option("--word", word)->required();

  std::uint32_t genus = 3;
  std::uint32_t r = 2;
  std::uint32_t pmax = 7;
  std::uint64_t order = 0;
  auto* cert = app.add_subcommand("certificate", "symmetric quotient certificates");
  cert->require_subcommand(1);
  cert->fallthrough();
  auto* theorem1 = cert->add_subcommand("theorem1", "Sym(R) image of the mapping class group");
  theorem1->add_option("--genus", genus)->required();
  theorem1->add_option("--r", r)->required();
  theorem1->add_option("--pmax", pmax);
  auto* involve = cert->add_subcommand("involve", "involvement of a group of order k");
  involve->add_option("--order", order)->required();
  involve->add_option("--pmax", pmax);

  std::string file;
  auto* separate = app.add_subcommand("separate", "separability witness for a surface map");
  separate->add_option("--genus", genus)->required();
  separate->add_option("--map", file, "JSON map file")->required();

  auto* verify = app.add_subcommand("verify", "replay a certificate");
  verify->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*enumerate) return cmd_enumerate(cfg, rank, prime, strategy);
    if (*action) return cmd_action(cfg, rank, prime);
    if (*rf) return cmd_rf_witness(cfg, rank, word);
    if (*theorem1) return cmd_theorem1(cfg, genus, r, pmax);
    if (*involve) return cmd_involve(cfg, order, pmax);
    if (*separate) return cmd_separate(cfg, genus, file);
    if (*verify) return cmd_verify(cfg, file);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    bool resource = e.kind() == ErrorKind::ResourceLimit ||
                    e.kind() == ErrorKind::PrimeCeilingExceeded;
    return resource ? kExitResource : kExitInput;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kExitInput;
  }
  return kExitInput;
}
