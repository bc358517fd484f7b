#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lne/inner_metric.hpp"
#include "lne/set_model.hpp"

namespace lne {

inline constexpr const char* kVersion = "1.0.0";

enum class Verdict { Lne, NotLne, Inconclusive };
enum class Locus { Global, AtPoint, AtInfinity, Projective };

std::string to_string(Verdict v);
std::string to_string(Locus l);
Verdict verdict_from_string(const std::string& s);
Locus locus_from_string(const std::string& s);

/// Two sample points and their distortion.
struct WitnessPair {
    std::size_t i = 0, j = 0;
    Point a, b;
    Provenance pa, pb;
    double outer = 0.0;
    double inner = 0.0;
    /// inner / outer; infinite when the points are in different components
    double ratio = 0.0;
    bool infinite() const { return std::isinf(inner); }
};

struct RatioResult {
    double K = 0.0;
    std::optional<WitnessPair> witness;
    std::size_t pairs = 0;
};

struct AnalysisConfig {
    std::size_t budget = 5000;
    /// proximity graph scale; <= 0 means 3 x median nearest-neighbour spacing
    double eps = 0.0;
    /// ladder at infinity: R0, 2 R0, ..., 2^rungs R0
    double R0 = 10.0;
    int rungs = 4;
    /// ladder at a point: r0, r0/2, ..., r0/2^rungs
    double r0 = 0.5;
    double delta_bin = kDefaultDeltaBin;
    double pair_budget = 1e8;
    double tol = kDefaultQuadratureTol;
    unsigned threads = 0;
    std::uint64_t seed = 0;
    /// K(next)/K(current) at or above this on `divergence_run` consecutive
    /// rungs means divergence
    double divergence_ratio = 1.2;
    int divergence_run = 3;
    /// the last three rungs within this relative spread means stability
    double stability = 0.10;
    /// glue_certify: split radius and sampling range (0 = automatic)
    double glue_radius = 10.0;
    double r_min = 0.0;
    double r_max = 0.0;
};

struct LadderRung {
    double scale = 0.0;
    double K = 0.0;
    std::size_t points = 0;
    std::size_t pairs = 0;
    std::optional<WitnessPair> witness;
};

struct LneReport {
    std::string label;
    Verdict verdict = Verdict::Inconclusive;
    /// estimated constant (a lower estimate of the true one)
    double constant = 0.0;
    std::string reason;
    Locus locus = Locus::Global;
    std::optional<Point> point;
    /// scales strictly increasing
    std::vector<LadderRung> ladder;
    std::optional<WitnessPair> witness;
    AnalysisConfig config;
    std::vector<LneReport> stages;
};

using PairFilter = std::function<bool(std::size_t, std::size_t)>;

/// Largest inner/outer ratio over pairs of `members` accepted by `accept`
/// (all pairs when none is given). All pairs are visited if
/// |members|^2 <= pair_budget, otherwise farthest-point sources against all
/// members. Ties go to the lexicographically smallest index pair, so the
/// result does not depend on the number of threads.
RatioResult ratio_sup(const Sample& s, const InnerMetric& m, const std::vector<std::size_t>& members,
                      const PairFilter& accept = {}, double pair_budget = 1e8, unsigned threads = 0);
RatioResult ratio_sup(const Sample& s, const ProximityGraph& g, double pair_budget = 1e8, unsigned threads = 0);

/// Three-valued ladder rule over K values in order of approach (towards
/// infinity or towards the point).
struct LadderDecision {
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;
};
LadderDecision decide_ladder(const std::vector<double>& K, bool infinite_pair, const AnalysisConfig& cfg);

/// Dyadic shells at infinity: K(R) over pairs with both radii in [R, 4R) and
/// at least one in [R, 2R). `radius` gives the radius used for each sample
/// point (defaults to the radial tag).
LneReport ladder_at_infinity(const Sample& s, const InnerMetric& m, const std::vector<std::size_t>& members,
                             const std::vector<double>& radii, const AnalysisConfig& cfg,
                             const std::vector<double>* radius = nullptr);

/// Dyadic shells at x0: distances to x0 in (r/4, r], at least one in (r/2, r].
LneReport ladder_at_point(const Sample& s, const InnerMetric& m, const Point& x0, const std::vector<double>& radii,
                          const AnalysisConfig& cfg);

/// Ladder R0 2^k, k = 0..rungs.
std::vector<double> ladder_radii(double R0, int rungs);

LneReport lne_at_infinity(const SetDescriptor& d, const AnalysisConfig& cfg);
LneReport lne_at_point(const SetDescriptor& d, const Point& x0, const AnalysisConfig& cfg);

struct Obstruction {
    bool obstructed = false;
    std::optional<UnitDirection> direction;
    std::size_t part_i = 0, part_j = 0;
    /// smallest angle between directions of different parts
    double gap = 0.0;
};

/// Two parts sharing an asymptotic direction (within delta_bin).
Obstruction shared_direction_obstruction(const ComponentSplit& cs, double delta_bin = kDefaultDeltaBin);

/// Verdict of a staged report: the first NOT_LNE stage, else the first
/// INCONCLUSIVE one, else LNE with the largest stage constant.
void combine_stages(LneReport& rep);

/// Global certification: local checks at the network's singular nodes,
/// per-component ladders at infinity past the glue radius, and the shared
/// direction test.
LneReport glue_certify(const SetDescriptor& d, const AnalysisConfig& cfg);

/// Sup of d_in(x, 0) / |x| over the sample.
double cone_constant(const SetDescriptor& d, const AnalysisConfig& cfg);

/// d_in(y1(t), y2(t)) / |y1(t) - y2(t)| along a parameter ladder; y1 and y2
/// must lie on d (an arc network).
std::vector<double> arc_pair_ratio(const ParamArc& y1, const ParamArc& y2, const SetDescriptor& d,
                                   const std::vector<double>& t_ladder, double tol = kDefaultQuadratureTol);

/// Analysis of the closure of an affine network in the projective plane:
/// global K of the lifted sample plus a ladder over affine-radius shells,
/// with projective outer distance and the lifted arc length as inner distance.
LneReport lne_projective(const SetDescriptor& d, const AnalysisConfig& cfg);

/// Sample of a network's image in the projective plane (lifted points with
/// chart radii, plus the points at infinity its ends converge to).
Sample projective_sample(const ArcNetwork& affine, const ArcNetwork& lifted, const SamplingPlan& plan);

/// Sampling plan spreading points evenly in log-distance from the anchor
/// between r_min and r_max (in arc length below distance 1 when r_min = 0).
SamplingPlan relative_plan(std::size_t budget, double r_min, double r_max, std::optional<Point> anchor = std::nullopt);

/// Number of worker threads; 0 asks for one per hardware thread.
unsigned worker_count(unsigned requested);

}  // namespace lne
