#pragma once

// JSON forms of the certificates. Every document carries
//   "format": "xfg-certificate", "version": kCertificateVersion,
//   "kind": one of rf-witness | theorem1 | involve | separability |
//           stabilizes,
//   "seed": the recognition seed of the run.
// Words use the text codec of WordAlphabet, permutations are image arrays
// and group elements are ElementIndex values (or four residues).

#include <json.hpp>

#include <cstdint>

#include "xfg/permgrp.hpp"
#include "xfg/rfwitness.hpp"
#include "xfg/surface.hpp"

namespace xfg {

inline constexpr int kCertificateVersion = 1;

nlohmann::json to_json(const RFCertificate& cert, std::uint64_t seed);
nlohmann::json to_json(const Theorem1Certificate& cert, std::uint64_t seed);
nlohmann::json to_json(const InvolveCertificate& cert, std::uint64_t seed);
nlohmann::json to_json(const SeparabilityWitness& w, std::uint64_t seed);
nlohmann::json to_json(const StabilizesInstead& s, const SurfaceAutomorphism& f,
                       std::uint64_t seed);

nlohmann::json evidence_json(const RecognitionEvidence& ev);
nlohmann::json automorphism_json(const FreeAutomorphism& s);
nlohmann::json surface_map_json(const SurfaceAutomorphism& f);

// Reads {"images": [...], "inverse": [...], "label": ...} or
// {"twists": "l1.M2"}; "genus" must match when present. Throws ParseError
// or GenusMismatch.
SurfaceAutomorphism surface_map_from_json(const nlohmann::json& j,
                                          std::uint32_t genus);

}  // namespace xfg
