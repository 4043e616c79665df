#pragma once

// JSON formats shared by the library and the command line tool.
//
//   dual matrix  {"rows": r, "cols": c, "std": [[[re, im], ...], ...], "inf": ...}
//                ("inf" optional; entries may also be plain real numbers)
//   dual vector  {"std": [[re, im], ...], "inf": [...]}
//   dual scalar  {"std": [re, im], "inf": [re, im]} or a real number
//   block inst.  {"theorem": "ABCO_RIGHT", "blocks": {"A": <matrix>, ...}}
//   graph spec   {"family": "double_star" | "dlinked_stars" | "windmill", ...}
//
// Every parse failure throws SchemaError.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "ddz/blocks.hpp"
#include "ddz/digraphs.hpp"

namespace ddz {

using json = nlohmann::json;

json to_json(const ComplexMatrix& m);
json to_json(const DualMatrix& x);
json dual_vector_to_json(const DualMatrix& v);
json to_json(const DualScalar& s);
json to_json(const BlockInstance& inst);
json to_json(const GraphSpec& spec);

DualMatrix dual_matrix_from_json(const json& j);
DualMatrix dual_vector_from_json(const json& j);
DualScalar dual_scalar_from_json(const json& j);
BlockInstance block_instance_from_json(const json& j);
GraphSpec graph_spec_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

/// Compact single-line dump used for JSON-lines reports.
std::string dump_line(const json& j);

}  // namespace ddz
