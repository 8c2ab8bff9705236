#pragma once

#include <json.hpp>

#include "capdisc/admissibility.hpp"
#include "capdisc/oracle.hpp"
#include "capdisc/spectral.hpp"
#include "capdisc/studies.hpp"

namespace capdisc {

/// Canonical JSON bodies. These carry no timestamps; run metadata lives in
/// the manifest the CLI wraps around them, so the bodies are byte-identical
/// across reruns and thread counts.
nlohmann::json to_json(const RadiusSpec& radius);
nlohmann::json to_json(const DiscrepancyReport& report);
nlohmann::json to_json(const McEstimate& estimate);
nlohmann::json to_json(const RateStudyResult& result);
nlohmann::json to_json(const ScanResult& result);
nlohmann::json to_json(const Classification& classification);

}  // namespace capdisc
