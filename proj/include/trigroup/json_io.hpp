#pragma once

#include "trigroup/billiards.hpp"
#include "trigroup/diagram.hpp"
#include "trigroup/group.hpp"
#include "trigroup/tits.hpp"
#include "trigroup/witness.hpp"

#include <json.hpp>

#include <string>

namespace trigroup {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses a JSON file; throws ParseError with 1-based line/column on
/// malformed input.
nlohmann::json parse_json_file(const std::string& path);

/// Sorted keys, two-space indent, trailing newline; byte-identical for
/// equal values.
std::string dump_deterministic(const nlohmann::json& j);

nlohmann::json group_to_json(const FiniteGroup& g);
/// Requires a finite Cayley table; anything else (e.g. a presentation
/// of an infinite group) is rejected.
FiniteGroup group_from_json(const nlohmann::json& j);

nlohmann::json diagram_to_json(const CorsonDiagram& d);
CorsonDiagram diagram_from_json(const nlohmann::json& j);
CorsonDiagram load_diagram_file(const std::string& path);

nlohmann::json validation_to_json(const ValidationReport& r);
nlohmann::json angles_to_json(const std::map<std::pair<Label, Label>, AngleResult>& angles);
nlohmann::json curvature_to_json(const CurvatureClass& c);
nlohmann::json certificate_to_json(const Certificate& c);
nlohmann::json branching_to_json(const BranchingReport& r);
nlohmann::json free_pair_to_json(const FreePair& p);
nlohmann::json verdict_to_json(const Verdict& v);

} // namespace trigroup
