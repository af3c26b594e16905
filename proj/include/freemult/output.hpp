#pragma once

#include <string>
#include <vector>

#include "freemult/density.hpp"

namespace freemult {

/// Shortest decimal string that reads back to the same double; "inf", "-inf", "nan" otherwise.
[[nodiscard]] std::string format_number(double x);

/// Writes to a sibling temp file and renames it over path.
void write_file_atomic(const std::string& path, const std::string& content);

/// CSV with a leading "# config: ..." line, then the header and one row per index.
[[nodiscard]] std::string density_csv(const DensityTable& table, const std::string& abscissa_name, const std::string& config);

/// Rows "level,polyline,vertex,r,theta".
[[nodiscard]] std::string level_curves_csv(const LevelCurveSet& set, const std::string& config);

/// r horizontal, theta vertical (increasing upward), viewBox from the window.
[[nodiscard]] std::string level_curves_svg(const LevelCurveSet& set, const std::string& config);

}  // namespace freemult
