#include "trigroup/json_io.hpp"

#include <fstream>
#include <sstream>

namespace trigroup {

using nlohmann::json;

nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return json::parse(content);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < content.size(); ++i) {
      if (content[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col,
                     "parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what());
  }
}

std::string dump_deterministic(const nlohmann::json& j) {
  return j.dump(2) + "\n";
}

json group_to_json(const FiniteGroup& g) {
  json j;
  j["order"] = g.order;
  json mul = json::array();
  for (std::uint32_t x = 0; x < g.order; ++x) {
    json row = json::array();
    for (std::uint32_t y = 0; y < g.order; ++y) row.push_back(g.op(x, y));
    mul.push_back(row);
  }
  j["mul"] = mul;
  if (!g.names.empty()) j["names"] = g.names;
  return j;
}

FiniteGroup group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("mul"))
    throw std::invalid_argument(
        "a group must be {\"order\": n, \"mul\": [[...]]}; only finite groups given by "
        "full Cayley tables are supported (infinite groups, e.g. given by presentations, "
        "are rejected at ingestion)");
  if (!j["order"].is_number_unsigned() || j["order"].get<std::uint64_t>() == 0)
    throw std::invalid_argument(
        "group \"order\" must be a positive integer; infinite or non-tabular groups are "
        "not representable");
  std::uint64_t order = j["order"].get<std::uint64_t>();
  if (!j["mul"].is_array() || j["mul"].size() != order)
    throw std::invalid_argument("\"mul\" must be an order x order table");
  std::vector<std::vector<std::uint32_t>> table;
  for (const auto& row : j["mul"]) {
    if (!row.is_array() || row.size() != order)
      throw std::invalid_argument("\"mul\" must be an order x order table");
    std::vector<std::uint32_t> r;
    for (const auto& v : row) {
      if (!v.is_number_unsigned())
        throw std::invalid_argument("\"mul\" entries must be nonnegative element indices");
      r.push_back(v.get<std::uint32_t>());
    }
    table.push_back(std::move(r));
  }
  std::vector<std::string> names;
  if (j.contains("names")) {
    if (!j["names"].is_array() || j["names"].size() != order)
      throw std::invalid_argument("\"names\" must list one name per element");
    for (const auto& n : j["names"]) names.push_back(n.get<std::string>());
  }
  return load_group(table, std::move(names));
}

json diagram_to_json(const CorsonDiagram& d) {
  json j;
  j["index_set"] = d.index_set;
  json groups = json::object();
  for (const auto& [k, g] : d.groups) groups[subset_string(k)] = group_to_json(g);
  j["groups"] = groups;
  json homs = json::object();
  for (const auto& [k, h] : d.homs)
    homs[subset_string(k.first) + "->" + subset_string(k.second)] = h;
  j["homs"] = homs;
  return j;
}

CorsonDiagram diagram_from_json(const json& j) {
  if (!j.is_object() || !j.contains("index_set") || !j.contains("groups") ||
      !j.contains("homs"))
    throw std::invalid_argument(
        "a diagram must be {\"index_set\": [...], \"groups\": {...}, \"homs\": {...}}");
  CorsonDiagram d;
  for (const auto& v : j["index_set"]) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() < 1 || v.get<std::uint64_t>() > 9)
      throw std::invalid_argument("index labels must be digits 1..9");
    d.index_set.push_back(v.get<int>());
  }
  std::sort(d.index_set.begin(), d.index_set.end());
  if (std::adjacent_find(d.index_set.begin(), d.index_set.end()) != d.index_set.end())
    throw std::invalid_argument("index labels must be distinct");
  for (auto it = j["groups"].begin(); it != j["groups"].end(); ++it) {
    auto key = subset_from_string(it.key());
    if (!key)
      throw std::invalid_argument("bad subset key '" + it.key() +
                                  "' (sorted digits, \"\" for the empty set)");
    d.groups.emplace(*key, group_from_json(it.value()));
  }
  for (auto it = j["homs"].begin(); it != j["homs"].end(); ++it) {
    const std::string& k = it.key();
    auto arrow = k.find("->");
    if (arrow == std::string::npos)
      throw std::invalid_argument("hom keys look like \"1->12\" (\"\" for the empty set)");
    auto from = subset_from_string(k.substr(0, arrow));
    auto to = subset_from_string(k.substr(arrow + 2));
    if (!from || !to) throw std::invalid_argument("bad hom key '" + k + "'");
    std::vector<std::uint32_t> map;
    for (const auto& v : it.value()) {
      if (!v.is_number_unsigned())
        throw std::invalid_argument("hom entries must be element indices");
      map.push_back(v.get<std::uint32_t>());
    }
    d.homs.emplace(std::make_pair(*from, *to), std::move(map));
  }
  return d;
}

CorsonDiagram load_diagram_file(const std::string& path) {
  return diagram_from_json(parse_json_file(path));
}

json validation_to_json(const ValidationReport& r) {
  json issues = json::array();
  for (const auto& is : r.issues) {
    json e;
    switch (is.kind) {
      case IssueKind::MissingGroup: e["kind"] = "MissingGroup"; break;
      case IssueKind::MissingHom: e["kind"] = "MissingHom"; break;
      case IssueKind::HomWrongSize: e["kind"] = "HomWrongSize"; break;
      case IssueKind::HomNotHomomorphism: e["kind"] = "HomNotHomomorphism"; break;
      case IssueKind::NonInjectiveHom: e["kind"] = "NonInjectiveHom"; break;
      case IssueKind::NotCommutative: e["kind"] = "NotCommutative"; break;
      case IssueKind::AnglePi: e["kind"] = "AnglePi"; break;
    }
    e["from"] = subset_string(is.j1);
    e["to"] = subset_string(is.j2);
    e["x"] = is.x;
    e["y"] = is.y;
    e["detail"] = is.detail;
    issues.push_back(e);
  }
  return json{{"ok", r.ok()}, {"issues", issues}};
}

namespace {

std::string pair_key(Label i, Label j) {
  return std::to_string(i) + std::to_string(j);
}

} // namespace

json angles_to_json(const std::map<std::pair<Label, Label>, AngleResult>& angles) {
  json pairs = json::object();
  for (const auto& [pr, ar] : angles) {
    json e;
    if (ar.angle.is_zero()) {
      e["m_hat"] = nullptr;
    } else {
      e["m_hat"] = ar.angle.m_hat;
    }
    json w = json::array();
    for (const auto& l : ar.witness) w.push_back(json::array({l.side, l.elem}));
    e["witness"] = w;
    pairs[pair_key(pr.first, pr.second)] = e;
  }
  return json{{"pairs", pairs}};
}

json curvature_to_json(const CurvatureClass& c) {
  const char* kind = c.kind == Curvature::Spherical    ? "spherical"
                     : c.kind == Curvature::Euclidean ? "euclidean"
                                                       : "hyperbolic";
  return json{{"kind", kind}, {"degenerate", c.degenerate}};
}

json certificate_to_json(const Certificate& c) {
  json j;
  json word = json::array();
  for (const auto& l : c.word) word.push_back(json::array({l.type, l.elem}));
  j["word"] = word;
  json points = json::array();
  for (const auto& p : c.sequence.points)
    points.push_back(json::array({rat_to_string(p.x.rational_part()),
                                  rat_to_string(p.x.root_part()),
                                  rat_to_string(p.y.rational_part()),
                                  rat_to_string(p.y.root_part())}));
  j["points"] = points;
  j["labels"] = c.sequence.labels;
  j["mode"] = c.mode == ArithmeticMode::Exact ? "exact" : "float";
  j["conclusion"] = c.conclusion == Conclusion::Nontrivial ? "nontrivial" : "infinite-order";
  if (c.period) j["period"] = *c.period;
  return j;
}

json branching_to_json(const BranchingReport& r) {
  json causes = json::array();
  for (const auto& c : r.causes) {
    json e;
    if (c.kind == BranchCause::Kind::IndexAtLeast3) {
      e["kind"] = "IndexAtLeast3";
      e["a"] = c.a;
      e["index"] = c.value;
    } else {
      e["kind"] = "NotGenerated";
      e["a"] = c.a;
      e["b"] = c.b;
      e["missing_cosets"] = c.value;
    }
    causes.push_back(e);
  }
  return json{{"branches", r.branches}, {"causes", causes}};
}

json free_pair_to_json(const FreePair& p) {
  json j;
  auto word = [](const TypedWord& w) {
    json a = json::array();
    for (const auto& l : w) a.push_back(json::array({l.type, l.elem}));
    return a;
  };
  if (p.provenance == FreePair::Case::Index3) {
    j["case"] = "index3";
    j["x"] = word(p.x);
    j["y"] = word(p.y);
    j["ingredients"] = json{{"a", p.edge_a},
                            {"g_a", p.g_a},
                            {"g_tilde", p.g_tilde},
                            {"h", word(p.h)},
                            {"fixture", p.fixture_id}};
  } else {
    j["case"] = "not-generated";
    j["ingredients"] = json{{"a", p.ng_a}, {"b", p.ng_b}, {"missing_cosets", p.missing_cosets}};
  }
  return j;
}

json verdict_to_json(const Verdict& v) {
  json j;
  j["verdict"] = verdict_kind_name(v.kind);
  json trace = json::array();
  for (const auto& t : v.trace) {
    json values = json::object();
    for (const auto& [k, val] : t.values) values[k] = val;
    trace.push_back(json{{"rule", t.rule}, {"ref", t.ref}, {"values", values}});
  }
  j["trace"] = trace;
  if (v.witness_pair) j["witness"] = free_pair_to_json(*v.witness_pair);
  if (!v.undecided_predicate.empty()) j["undecided_predicate"] = v.undecided_predicate;
  return j;
}

} // namespace trigroup
