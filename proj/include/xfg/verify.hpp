#pragma once

// Standalone certificate verification. This code path uses only the psl2,
// freegrp and permgrp primitives: PGL(2,p) orbits, the handlebody map and
// the relator checks are recomputed here from scratch, so a bug in the
// enumeration or certificate builders cannot vouch for itself.

#include <json.hpp>

#include <string>
#include <vector>

namespace xfg {

enum class VerifyStatus { Ok, Malformed, Failed };

struct VerifyReport {
  VerifyStatus status = VerifyStatus::Ok;
  std::vector<std::string> passed;  // checks that succeeded, in order
  std::string message;              // first failure, if any
};

VerifyReport verify_certificate(const nlohmann::json& doc);

}  // namespace xfg
