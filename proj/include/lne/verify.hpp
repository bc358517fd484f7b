#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lne/analysis.hpp"

namespace lne {

/// Verdicts of a set and of its transform.
struct EquivalenceReport {
    LneReport left;
    LneReport right;
    /// false when either side is INCONCLUSIVE; `agree` is then meaningless
    bool defined = false;
    bool agree = false;
};

EquivalenceReport compare(LneReport left, LneReport right);

/// Analysis of sigma(X), with the north pole adjoined when X is unbounded,
/// under the chordal metric of the sphere: the whole sample plus local
/// ladders at the singular and limit nodes (the pole included).
LneReport sphere_analysis(const SetDescriptor& d, const AnalysisConfig& cfg);

/// X in R^q against sigma(X) u {N} in S^q.
EquivalenceReport verify_compactification(const SetDescriptor& d, const AnalysisConfig& cfg);

/// X at the origin against the inverted set at infinity (ladder from 1/r0).
EquivalenceReport verify_inversion(const SetDescriptor& d, const AnalysisConfig& cfg);

struct LinkRung {
    double radius = 0.0;
    /// largest K over the components of the band
    double K = 0.0;
    std::size_t components = 0;
    std::size_t points = 0;
};

struct LinkReport {
    /// relative half-width of the band around each radius
    double band = 0.0;
    std::vector<LinkRung> rungs;
    /// ladder rule applied to the link constants
    LneReport links;
    LneReport at_infinity;
    /// links bounded exactly when the set is LNE at infinity, or the links
    /// are bounded but split into several components (different branches)
    bool consistent = false;
    std::string note;
};

/// Link constants of the bands ||x| - R| <= band R along the ladder, one
/// per component of the band.
LinkReport verify_link_criterion(const SetDescriptor& d, const AnalysisConfig& cfg, double band);

struct CorpusCase {
    std::string name;
    SetDescriptor descriptor;
    Locus locus = Locus::Global;
    std::optional<Point> point;
    Verdict expected = Verdict::Lne;
    /// upper bound for the estimated constant, when one is known
    std::optional<double> bound;
    std::string note;
};

struct CorpusResult {
    std::string name;
    Locus locus = Locus::Global;
    Verdict expected = Verdict::Lne;
    Verdict got = Verdict::Inconclusive;
    double constant = 0.0;
    std::optional<double> bound;
    bool pass = false;
    std::string note;
    LneReport report;
};

/// Analysis of one case according to its locus.
LneReport analyse_case(const CorpusCase& c, const AnalysisConfig& cfg);

/// Runs every case; failures are recorded, not thrown.
std::vector<CorpusResult> run_corpus(const std::vector<CorpusCase>& cases, const AnalysisConfig& cfg);

}  // namespace lne
