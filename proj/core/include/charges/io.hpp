#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "charges/convergence.hpp"
#include "charges/measure.hpp"
#include "charges/metric.hpp"

namespace charges::io {

nlohmann::json load_json(const std::string& path);

// {"points": [[..],..] | null, "dist": [[..],..] | null, "bound": number}
// When both are present dist wins unless from_coords forces the Euclidean
// derivation; one of the two must be usable.
std::shared_ptr<const FiniteMetricSpace> parse_space(const nlohmann::json& j,
                                                     bool from_coords = false);
std::shared_ptr<const FiniteMetricSpace> load_space(const std::string& path,
                                                    bool from_coords = false);

// {"space": "path" | {..inline space..}, "weights": [..]}
DiscreteMeasure load_measure(const std::string& path, bool from_coords = false);

// Family descriptors:
//   {"kind": "point_at", "loc": "1/(2N)" | "1/N" | number}
//   {"kind": "uniform_grid"}
//   {"kind": "constant", "coords": [[..],..], "weights": [..]}
//   {"kind": "alternating", "points": [[..],..]}   (atom cycles through points)
MeasureFamily parse_family(const nlohmann::json& j);
MeasureFamily load_family(const std::string& path);

// Countable-support view for the oscillation workflow; supported kinds:
//   "alternating" (index cycles through the point list) and
//   "moving_atom" (index n sits at support index n-1).
DiscreteSeq parse_discrete_seq(const nlohmann::json& j);
DiscreteSeq load_discrete_seq(const std::string& path);

// 12 significant digits, '.' decimal, no locale.
std::string format_double(double v);

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);

// Temp file in the target directory, then rename.
void atomic_write(const std::string& path, const std::string& content);

} // namespace charges::io
