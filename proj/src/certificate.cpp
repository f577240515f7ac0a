#include "xfg/certificate.hpp"

#include "xfg/error.hpp"

namespace xfg {

using nlohmann::json;

namespace {

json header(const char* kind, std::uint64_t seed) {
  return {{"format", "xfg-certificate"},
          {"version", kCertificateVersion},
          {"kind", kind},
          {"seed", seed}};
}

json residues(const ProjectiveMatrix& x) {
  auto const& e = x.entries();
  return json::array({e[0], e[1], e[2], e[3]});
}

json rf_body(const RFCertificate& c) {
  auto group = Psl2Group::of(Prime(c.p));
  json tuple = json::array();
  for (auto const& e : c.tuple) tuple.push_back(group->index_of(e));
  json embedding = json::array();
  auto f2 = WordAlphabet::f2();
  for (auto const& w : schreier_embedding(c.rank).words) {
    embedding.push_back(f2.format(w));
  }
  return {{"n", c.rank},
          {"alpha", WordAlphabet::free(c.rank).format(c.alpha)},
          {"p", c.p},
          {"tuple", tuple},
          {"alphaImage", residues(c.alpha_image)},
          {"surjective", c.surjective},
          {"embedding", embedding}};
}

}  // namespace

json evidence_json(const RecognitionEvidence& ev) {
  json j{{"result", to_string(ev.result)},
         {"path", ev.path},
         {"degree", ev.degree},
         {"inconclusive", ev.inconclusive},
         {"diagnostic", ev.diagnostic}};
  if (ev.order) j["order"] = ev.order->str();
  if (ev.path == "giant") {
    j["transitive"] = ev.transitive;
    j["primitive"] = ev.primitive;
    j["witnessWord"] = ev.witness_word;
    j["witnessCycleType"] = ev.witness_cycle_type;
    j["witnessPrime"] = ev.witness_prime;
    j["oddGenerator"] = ev.odd_generator;
  }
  return j;
}

json automorphism_json(const FreeAutomorphism& s) {
  auto al = WordAlphabet::free(s.rank());
  json images = json::array();
  json inverse = json::array();
  for (auto const& w : s.images()) images.push_back(al.format(w));
  for (auto const& w : s.inverse_images()) inverse.push_back(al.format(w));
  return {{"label", s.label()}, {"images", images}, {"inverse", inverse}};
}

json surface_map_json(const SurfaceAutomorphism& f) {
  auto al = WordAlphabet::surface(f.genus());
  json images = json::array();
  json inverse = json::array();
  for (auto const& w : f.images()) images.push_back(al.format(w));
  for (auto const& w : f.inverse_images()) inverse.push_back(al.format(w));
  return {{"genus", f.genus()},
          {"label", f.label()},
          {"images", images},
          {"inverse", inverse}};
}

json to_json(const RFCertificate& cert, std::uint64_t seed) {
  auto j = header("rf-witness", seed);
  j.update(rf_body(cert));
  return j;
}

json to_json(const Theorem1Certificate& cert, std::uint64_t seed) {
  auto j = header("theorem1", seed);
  j["genus"] = cert.genus;
  j["r"] = cert.r;
  j["pmax"] = cert.pmax;
  j["outcome"] = to_string(cert.outcome);
  json scanned = json::array();
  for (auto const& s : cert.scanned) {
    scanned.push_back(
        {{"p", s.p}, {"classes", s.classes}, {"result", to_string(s.result)}});
  }
  j["scanned"] = scanned;
  if (cert.outcome != Theorem1Outcome::Symmetric) {
    j["statement"] = cert.outcome == Theorem1Outcome::AlternatingOnly
                         ? "alternating only up to pmax"
                         : "no prime up to pmax with at least r classes";
    return j;
  }
  auto const& table = *cert.table;
  j["p"] = table.prime().value();
  j["R"] = table.size();
  json classes = json::array();
  for (std::uint32_t k = 0; k < table.size(); ++k) {
    auto t = table.tuple(k);
    classes.push_back(std::vector<ElementIndex>(t.begin(), t.end()));
  }
  j["classes"] = classes;
  json gens = json::array();
  for (auto const& s : cert.generators) gens.push_back(automorphism_json(s));
  j["generators"] = gens;
  json perms = json::array();
  for (auto const& p : cert.permutations) perms.push_back(p.images());
  j["permutations"] = perms;
  j["evidence"] = evidence_json(cert.evidence);
  j["statement"] =
      "Out(F_" + std::to_string(cert.genus) + ") acts as the full symmetric "
      "group on the R = " + std::to_string(table.size()) +
      " >= r = " + std::to_string(cert.r) + " listed PSL(2," +
      std::to_string(table.prime().value()) +
      ")-defining subgroups; via the handlebody map the stabilizer of ker phi "
      "in the mapping class group acts on them through this image";
  return j;
}

json to_json(const InvolveCertificate& cert, std::uint64_t seed) {
  auto j = header("involve", seed);
  j["order"] = cert.order;
  j["r"] = cert.theorem1.r;
  j["theorem1"] = to_json(cert.theorem1, seed);
  j["statement"] =
      "a group of order " + std::to_string(cert.order) +
      " embeds in S_r by its regular representation; the finite-index "
      "stabilizer surjects onto S_R, which contains S_r";
  return j;
}

json to_json(const SeparabilityWitness& w, std::uint64_t seed) {
  auto j = header("separability", seed);
  j["genus"] = w.genus;
  j["map"] = surface_map_json(w.map);
  j["gamma"] = WordAlphabet::surface(w.genus).format(w.gamma);
  j["image"] = WordAlphabet::free(w.genus).format(w.image);
  j["quotient"] = rf_body(w.quotient);
  return j;
}

json to_json(const StabilizesInstead& s, const SurfaceAutomorphism& f,
             std::uint64_t seed) {
  auto j = header("stabilizes", seed);
  j["genus"] = f.genus();
  j["map"] = surface_map_json(f);
  j["induced"] = automorphism_json(s.induced);
  return j;
}

SurfaceAutomorphism surface_map_from_json(const json& j, std::uint32_t genus) {
  try {
    if (j.contains("genus") && j.at("genus").get<std::uint32_t>() != genus) {
      throw Error(ErrorKind::GenusMismatch,
                  "map file genus " + j.at("genus").dump() + " vs " +
                      std::to_string(genus));
    }
    if (j.contains("twists")) {
      auto word = twist_alphabet(genus).parse(j.at("twists").get<std::string>());
      return twist_word_map(genus, word);
    }
    auto al = WordAlphabet::surface(genus);
    std::vector<FreeWord> images;
    std::vector<FreeWord> inverse;
    for (auto const& w : j.at("images")) images.push_back(al.parse(w.get<std::string>()));
    for (auto const& w : j.at("inverse")) inverse.push_back(al.parse(w.get<std::string>()));
    return SurfaceAutomorphism(genus, std::move(images), std::move(inverse),
                               j.value("label", std::string()));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("map file: ") + e.what());
  }
}

}  // namespace xfg
