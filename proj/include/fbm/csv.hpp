#pragma once

#include <filesystem>
#include <iosfwd>

#include "fbm/types.hpp"

namespace fbm {

/// Write a path as CSV with header "index,time,value"; full double precision.
void write_path_csv(std::ostream& out, const ObservationPath& path);
void write_path_csv(const std::filesystem::path& file, const ObservationPath& path);

/// Read a path written by write_path_csv. Values are taken in row order; the
/// grid is rebuilt from step_h, so a file recorded on one grid can be
/// re-interpreted on another. Throws std::runtime_error on malformed input.
ObservationPath read_path_csv(std::istream& in, double step_h);
ObservationPath read_path_csv(const std::filesystem::path& file, double step_h);

}  // namespace fbm
