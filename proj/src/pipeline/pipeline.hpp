#pragma once

// End-to-end commands. Each returns a JSON report; `ok` is false for domain
// failures that still produce a report (invalid diagrams, unmet expectations).

#include <optional>
#include <string>
#include <vector>

#include "colimit.hpp"
#include "document.hpp"

namespace stratacode {

struct CommandResult {
  Json report;
  bool ok = true;
};

struct HomologyOptions {
  std::optional<Ring> ring_override;
  std::optional<int> degree;
  bool force = false;
};

struct CodeOptions {
  std::optional<int> degree;
  std::size_t distance_budget = 1u << 24;
};

Json diagram_summary(const Diagram& d);
Json homology_table(const ColimitComplex& c);

CommandResult run_validate(const DiagramDocument& doc, bool force);
CommandResult run_homology(const DiagramDocument& doc, const HomologyOptions& opts);
CommandResult run_code(const DiagramDocument& doc, const CodeOptions& opts);
/// Claims against measured values; with_oracle adds the independent column.
CommandResult run_example_report(const DiagramDocument& doc, bool with_oracle);

struct SurgeryOutcome {
  DiagramDocument merged;
  CommandResult result;
};

SurgeryOutcome run_surgery(const DiagramDocument& left, const DiagramDocument& right,
                           const std::vector<SharedStratum>& shared);

}  // namespace stratacode
