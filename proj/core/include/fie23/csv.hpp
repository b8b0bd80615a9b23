#pragma once

// Trajectory CSV files: header "t,y0,...,y{d-1},est,k", one row per
// accepted point, every number printed with 17 significant digits so a
// parse of an emitted file reproduces the trajectory bit for bit.

#include "fie23/ode.hpp"

#include <filesystem>
#include <iosfwd>

namespace fie23 {

void write_csv(const Trajectory& traj, std::ostream& os);

/// Throws IoError when the file cannot be written.
void emit_csv(const Trajectory& traj, const std::filesystem::path& path);

/// Throws ParseError on a malformed header or row.
[[nodiscard]] Trajectory parse_csv(std::istream& is);

/// Throws IoError or ParseError.
[[nodiscard]] Trajectory read_csv(const std::filesystem::path& path);

}  // namespace fie23
