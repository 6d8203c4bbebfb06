#pragma once

// JSON form of diagrams. Keys are emitted in sorted order and matrices in
// canonical entry order, so equal diagrams serialize to equal bytes.

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

#include "catalog.hpp"

namespace stratacode {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

struct DiagramDocument {
  Diagram diagram;
  std::optional<Annotations> annotations;

  friend bool operator==(const DiagramDocument&, const DiagramDocument&) = default;
};

Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j);

Json matrix_to_json(const SparseMatrix& m);
SparseMatrix matrix_from_json(const Json& j, Ring ring);

Json document_to_json(const DiagramDocument& doc);
DiagramDocument document_from_json(const Json& j);

std::string serialize(const DiagramDocument& doc);
DiagramDocument parse_document(std::string_view text);

DiagramDocument read_document(const std::string& path);
void write_text(const std::string& path, const std::string& text);

DiagramDocument to_document(const CatalogEntry& entry);

}  // namespace stratacode
