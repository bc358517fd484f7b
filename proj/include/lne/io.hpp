#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lne/verify.hpp"

namespace lne {

/// Malformed or unreadable input. The message starts with "source:line:"
/// when a line can be named.
class InputError : public Error {
public:
    using Error::Error;
};

/// Parse a descriptor file. Relative `points = file.csv` references are
/// resolved against `base_dir`.
///
///     name = spiral
///     kind = arcs            # arcs | implicit | cloud
///     dim = 2
///     metric = euclidean     # euclidean | sphere | projective
///
///     [arc s]
///     coords = exp(t)*cos(2*pi*t), exp(t)*sin(2*pi*t)
///     range = -inf, inf
///     lo = limit 0, 0        # closed | open | unbounded | limit <point>
///     hi = unbounded
///     mono = 0               # |gamma| monotone beyond this parameter
///
///     [junction]
///     at = 0, 0
///
/// Implicit sets take `box = B` and one or more `equation = F(x, y, ...)`
/// or `polynomial = c e1 e2 ...; ...` (coefficient then one exponent per
/// variable). Clouds take `point = x, y` lines or `points = file.csv`.
SetDescriptor parse_descriptor(std::istream& in, const std::string& source,
                               const std::filesystem::path& base_dir = {});
SetDescriptor load_descriptor(const std::filesystem::path& path);

/// One point per row, q columns, optional header `# dim=q metric=...`.
PointCloud read_points_csv(std::istream& in, const std::string& source);
PointCloud load_points_csv(const std::filesystem::path& path);
void write_points_csv(const Sample& s, std::ostream& out);

/// Corpus file: one `[case name]` section per case with keys descriptor,
/// locus, point, expected, bound and note.
std::vector<CorpusCase> parse_corpus(std::istream& in, const std::string& source,
                                     const std::filesystem::path& base_dir = {});
std::vector<CorpusCase> load_corpus(const std::filesystem::path& path);

/// Flat `key = value` file over the AnalysisConfig fields (delta_bin in
/// degrees). Unknown keys are errors.
void apply_config_entry(AnalysisConfig& cfg, const std::string& key, const std::string& value);
AnalysisConfig parse_config(std::istream& in, const std::string& source, AnalysisConfig base = {});
AnalysisConfig load_config(const std::filesystem::path& path, AnalysisConfig base = {});

/// A number written as a constant expression ("1.05*sqrt(1+4*pi^2)"),
/// or inf / -inf.
double parse_number(const std::string& text);
/// Comma separated constant expressions.
Point parse_point(const std::string& text);

}  // namespace lne
