#include <doctest.h>

#include "xfg/certificate.hpp"
#include "xfg/error.hpp"
#include "xfg/verify.hpp"

using namespace xfg;
using nlohmann::json;

namespace {

VerifyStatus status(const json& j) { return verify_certificate(j).status; }

}  // namespace

TEST_CASE("rf-witness certificate round trip") {
  auto alpha = WordAlphabet::free(3).parse("x1.x2.X1.X2");
  auto doc = to_json(rf_witness(3, alpha), 7);
  CHECK(doc["kind"] == "rf-witness");
  auto report = verify_certificate(doc);
  CHECK(report.status == VerifyStatus::Ok);
  CHECK(report.message.empty());

  auto bad = doc;
  bad["alphaImage"][1] = (bad["alphaImage"][1].get<int>() + 1) % int(doc["p"]);
  CHECK(status(bad) == VerifyStatus::Failed);

  bad = doc;
  bad["tuple"][0] = 0;  // identity
  CHECK(status(bad) == VerifyStatus::Failed);

  bad = doc;
  bad["p"] = 9;
  CHECK(status(bad) == VerifyStatus::Failed);

  bad = doc;
  bad.erase("tuple");
  CHECK(status(bad) == VerifyStatus::Malformed);

  bad = doc;
  bad["alpha"] = "x7";
  CHECK(status(bad) == VerifyStatus::Malformed);

  bad = doc;
  bad["version"] = 2;
  CHECK(status(bad) == VerifyStatus::Malformed);

  CHECK(status(json::parse("[1,2]")) == VerifyStatus::Malformed);
}

TEST_CASE("symmetric quotient and involve certificates round trip") {
  auto cert = theorem1_certificate(3, 2, 7);
  auto doc = to_json(cert, cert.evidence.path == "giant" ? 20240601 : 0);
  auto report = verify_certificate(doc);
  INFO(report.message);
  REQUIRE(report.status == VerifyStatus::Ok);

  auto bad = doc;
  auto& perm = bad["permutations"][0];
  std::swap(perm[0], perm[1]);
  CHECK(status(bad) == VerifyStatus::Failed);

  bad = doc;
  bad["R"] = 5000;
  bad["r"] = 5000;
  CHECK(status(bad) == VerifyStatus::Failed);

  bad = doc;
  bad["classes"].erase(bad["classes"].size() - 1);
  bad["R"] = bad["classes"].size();
  CHECK(status(bad) == VerifyStatus::Failed);

  bad = doc;
  bad["evidence"]["witnessPrime"] = 3;
  CHECK(status(bad) == VerifyStatus::Failed);

  auto none = to_json(theorem1_certificate(3, 100000, 5), 0);
  CHECK(none["outcome"] == "not-found");
  CHECK(status(none) == VerifyStatus::Ok);

  auto inv = to_json(involve_certificate(12, 7), 0);
  report = verify_certificate(inv);
  INFO(report.message);
  CHECK(report.status == VerifyStatus::Ok);
  inv["r"] = 11;
  CHECK(status(inv) == VerifyStatus::Failed);
}

TEST_CASE("separability certificates round trip") {
  auto twists = builtin_twists(2);
  auto sep = separability_witness(2, twists[2]);
  auto w = std::get<SeparabilityWitness>(sep);
  auto doc = to_json(w, 0);
  auto report = verify_certificate(doc);
  INFO(report.message);
  CHECK(report.status == VerifyStatus::Ok);

  auto bad = doc;
  bad["gamma"] = "a1";
  CHECK(status(bad) == VerifyStatus::Failed);

  bad = doc;
  bad["map"]["images"][0] = "a1.a1";
  CHECK(status(bad) == VerifyStatus::Failed);

  auto stab = separability_witness(2, twists[0]);
  auto sdoc = to_json(std::get<StabilizesInstead>(stab), twists[0], 0);
  CHECK(status(sdoc) == VerifyStatus::Ok);
  sdoc["induced"]["images"][0] = "x2";
  sdoc["induced"]["inverse"][0] = "x2";
  sdoc["induced"]["images"][1] = "x1";
  sdoc["induced"]["inverse"][1] = "x1";
  CHECK(status(sdoc) == VerifyStatus::Failed);
}

TEST_CASE("surface maps from json") {
  auto f = surface_map_from_json(json{{"twists", "l1.M1"}}, 2);
  CHECK(f.genus() == 2);
  auto table = surface_map_json(f);
  auto g = surface_map_from_json(table, 2);
  CHECK(g.images() == f.images());
  CHECK_THROWS_AS(surface_map_from_json(table, 3), Error);
  CHECK_THROWS_AS(surface_map_from_json(json{{"twists", "q9"}}, 2), Error);
  CHECK_THROWS_AS(surface_map_from_json(json::object(), 2), Error);
}
