#pragma once

// JSON file formats shared by the command-line tool:
//   system:   {"n": int, "a": [[real,...],...], "w": optional [[...]], "seed": optional int}
//   balls:    [{"center": [real,...], "radius_sq": real}, ...]
//   instance: {"m": int, "sets": [[int,...],...]}   (1-based elements)

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "minreach/hitting_set.hpp"
#include "minreach/reachcore.hpp"
#include "minreach/selector.hpp"

namespace minreach::io {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);
Matrix matrix_from_json(const Json& j, const std::string& what);
Vector vector_from_json(const Json& j, const std::string& what);

Json system_to_json(const LtiSystem& sys,
                    std::optional<std::uint64_t> seed = std::nullopt);
LtiSystem system_from_json(const Json& j);

std::vector<Ball> balls_from_json(const Json& j);

Json instance_to_json(const HittingSetInstance& instance);
HittingSetInstance instance_from_json(const Json& j);

// All parse failures surface as InputError.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Stable rendering used for every file and report: sorted keys, two-space
// indent, trailing newline.
std::string dump(const Json& j);

// Command-line vector: "1,0,-2.5" or "@path". A referenced file may hold a
// JSON array, a JSON object with a "chi" array, or comma/space separated
// numbers.
Vector parse_vector_arg(const std::string& arg);

}  // namespace minreach::io
