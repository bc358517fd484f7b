#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lne/verify.hpp"

namespace lne {

using Json = nlohmann::ordered_json;

/// Finite numbers as JSON numbers; infinities and NaN as the strings
/// "inf", "-inf" and "nan".
Json number_json(double x);

/// Keys as accepted by the configuration file (delta_bin in degrees).
Json to_json(const AnalysisConfig& cfg);
Json to_json(const Provenance& p);
Json to_json(const WitnessPair& w);
Json to_json(const LneReport& r);
Json to_json(const EquivalenceReport& e);
Json to_json(const LinkReport& l);
Json to_json(const std::vector<CorpusResult>& results);

/// Top-level document: tool, version, command, config echo and result.
Json document(const std::string& command, const AnalysisConfig& cfg, Json result);

/// `label,scale,K,points,pairs` rows for the report and its stages, scales
/// increasing within each ladder.
std::string ladder_csv(const LneReport& r);
/// `radius,K,components,points` rows.
std::string links_csv(const LinkReport& l);

/// Fixed-width pass/fail table.
std::string corpus_table(const std::vector<CorpusResult>& results);
/// Short multi-line summary of a report and its stages.
std::string summary(const LneReport& r, int indent = 0);

}  // namespace lne
