#pragma once

#include <string>

#include "heisenlab/grid.hpp"
#include "heisenlab/measures.hpp"

#include <json.hpp>

namespace heisenlab::io {

using json = nlohmann::json;

// Row-major nested arrays.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

// {"description": ..., "n": ..., "atoms": [[y..., s, w], ...]}
json measure_to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(const json& j);

// Raw little-endian complex array + JSON sidecar (shape and extents).
// precision is "complex128" (default) or "complex64".
void write_grid_function(const GridFunction& f, const std::string& path_prefix,
                         const std::string& precision = "complex128");
GridFunction read_grid_function(const std::string& path_prefix);

}  // namespace heisenlab::io
