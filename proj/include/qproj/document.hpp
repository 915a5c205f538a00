#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qproj/oracle.hpp"

namespace qproj {

// On-disk document: UTF-8 JSON, "format_version": 1, matrices row-major,
// all vectors rows, vertex indices 1-based. Output key order is canonical
// (alphabetical) and carries no timestamps, so bytes are stable.
struct FrameDoc {
    IntMatrix delta;
    IntMatrix c;
    std::optional<std::size_t> eps_row; // 0-based internally
    std::optional<int> sign;
};

struct SeedDocument {
    Seed seed;
    std::map<std::string, DeltaVector> deltas;
    std::optional<std::vector<std::size_t>> sequence; // 0-based internally
    std::optional<Quiver> arrows;
    std::optional<FrameDoc> frame;
};

nlohmann::json int_to_json(const Int& x);
Int json_to_int(const nlohmann::json& j);

nlohmann::json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const std::vector<Int>& v);
std::vector<Int> vector_from_json(const nlohmann::json& j);

SeedDocument parse_document(const nlohmann::json& j);
SeedDocument load_document(const std::string& path);
nlohmann::json document_to_json(const SeedDocument& doc);

nlohmann::json projection_to_json(const ProjectionResult& r);
nlohmann::json report_to_json(const VerifyReport& rep);

std::string dump_canonical(const nlohmann::json& j);

} // namespace qproj
