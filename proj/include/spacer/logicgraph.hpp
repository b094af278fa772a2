#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "spacer/error.hpp"

namespace spacer {

enum class VertexKind { Rationale, Intermediate, Concept };

inline std::string to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Rationale: return "rationale";
    case VertexKind::Intermediate: return "intermediate";
    case VertexKind::Concept: return "concept";
  }
  return "concept";
}

inline VertexKind parse_vertex_kind(std::string_view s) {
  std::string t;
  for (char c : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "rationale") return VertexKind::Rationale;
  if (t == "intermediate") return VertexKind::Intermediate;
  if (t == "concept") return VertexKind::Concept;
  throw Error(ErrorCode::InvalidGraph, "unknown vertex kind '" + std::string(s) + "'");
}

/// DOI syntax: "10." + 4-9 digit registrant + "/" + non-empty suffix without whitespace.
inline bool is_valid_doi(std::string_view doi) {
  if (doi.substr(0, 3) != "10.") return false;
  std::size_t i = 3;
  while (i < doi.size() && std::isdigit(static_cast<unsigned char>(doi[i]))) ++i;
  const std::size_t digits = i - 3;
  if (digits < 4 || digits > 9 || i >= doi.size() || doi[i] != '/') return false;
  if (i + 1 >= doi.size()) return false;
  return std::none_of(doi.begin() + static_cast<std::ptrdiff_t>(i) + 1, doi.end(),
                      [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

struct LogicVertex {
  std::string id;
  VertexKind kind = VertexKind::Rationale;
  std::string text;
  std::vector<std::string> supporting_dois;

  bool operator==(const LogicVertex&) const = default;
};

/// Edges (from, to) mean "from supports to".
struct LogicGraph {
  std::vector<LogicVertex> vertices;
  std::vector<std::pair<std::string, std::string>> edges;

  bool operator==(const LogicGraph&) const = default;
};

enum class ViolationKind {
  DuplicateId,
  DanglingEdge,
  DuplicateEdge,
  EmptyText,
  MisplacedDois,
  InvalidDoi,
  Cycle,
  ConceptCount,
  ConceptOutDegree,
  RationaleInDegree,
  RationaleOutDegree,
  IntermediateInDegree,
  IntermediateOutDegree,
  Unreachable,
  NoRationale,
};

inline std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::DuplicateId: return "duplicate_id";
    case ViolationKind::DanglingEdge: return "dangling_edge";
    case ViolationKind::DuplicateEdge: return "duplicate_edge";
    case ViolationKind::EmptyText: return "empty_text";
    case ViolationKind::MisplacedDois: return "misplaced_dois";
    case ViolationKind::InvalidDoi: return "invalid_doi";
    case ViolationKind::Cycle: return "cycle";
    case ViolationKind::ConceptCount: return "concept_count";
    case ViolationKind::ConceptOutDegree: return "concept_out_degree";
    case ViolationKind::RationaleInDegree: return "rationale_in_degree";
    case ViolationKind::RationaleOutDegree: return "rationale_out_degree";
    case ViolationKind::IntermediateInDegree: return "intermediate_in_degree";
    case ViolationKind::IntermediateOutDegree: return "intermediate_out_degree";
    case ViolationKind::Unreachable: return "unreachable";
    case ViolationKind::NoRationale: return "no_rationale";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::vector<std::string> ids;  // offending vertex ids, or {from, to} for edges
  std::string message;
};

struct GraphValidation {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const {
    return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
  }
  std::set<ViolationKind> kinds() const {
    std::set<ViolationKind> out;
    for (const auto& v : violations) out.insert(v.kind);
    return out;
  }
  std::string summary() const {
    std::string s;
    for (const auto& v : violations) {
      if (!s.empty()) s += "; ";
      s += to_string(v.kind) + ": " + v.message;
    }
    return s;
  }
};

/// Checks every structural rule and reports all violations. Degrees and
/// reachability only count edges whose endpoints both exist; duplicate edges
/// are counted once. A vertex is reachable if a directed path leads from it to
/// some Concept vertex.
inline GraphValidation validate_logic_graph(const LogicGraph& g) {
  GraphValidation res;
  auto add = [&](ViolationKind k, std::vector<std::string> ids, std::string msg) {
    res.violations.push_back({k, std::move(ids), std::move(msg)});
  };

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& v = g.vertices[i];
    if (!index.emplace(v.id, i).second) add(ViolationKind::DuplicateId, {v.id}, "vertex id '" + v.id + "' repeated");
    if (v.text.empty()) add(ViolationKind::EmptyText, {v.id}, "vertex '" + v.id + "' has no text");
    if (v.kind != VertexKind::Rationale && !v.supporting_dois.empty()) {
      add(ViolationKind::MisplacedDois, {v.id}, "only rationales carry DOIs ('" + v.id + "')");
    }
    for (const auto& doi : v.supporting_dois) {
      if (!is_valid_doi(doi)) add(ViolationKind::InvalidDoi, {v.id}, "'" + doi + "' is not a DOI");
    }
  }

  const std::size_t n = g.vertices.size();
  std::vector<std::set<std::size_t>> out(n);
  std::vector<std::set<std::size_t>> in(n);
  for (const auto& [from, to] : g.edges) {
    auto a = index.find(from);
    auto b = index.find(to);
    if (a == index.end() || b == index.end()) {
      add(ViolationKind::DanglingEdge, {from, to}, "edge " + from + " -> " + to + " references a missing vertex");
      continue;
    }
    if (!out[a->second].insert(b->second).second) {
      add(ViolationKind::DuplicateEdge, {from, to}, "edge " + from + " -> " + to + " repeated");
    }
    in[b->second].insert(a->second);
  }

  // Kahn's algorithm; whatever cannot be peeled off lies on or behind a cycle.
  {
    std::vector<std::size_t> indeg(n);
    for (std::size_t i = 0; i < n; ++i) indeg[i] = in[i].size();
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i) {
      if (indeg[i] == 0) stack.push_back(i);
    }
    std::size_t removed = 0;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      ++removed;
      for (auto w : out[v]) {
        if (--indeg[w] == 0) stack.push_back(w);
      }
    }
    if (removed < n) {
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < n; ++i) {
        if (indeg[i] > 0) ids.push_back(g.vertices[i].id);
      }
      add(ViolationKind::Cycle, ids, "graph contains a directed cycle");
    }
  }

  std::vector<std::size_t> concepts;
  std::size_t rationales = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = g.vertices[i];
    switch (v.kind) {
      case VertexKind::Concept:
        concepts.push_back(i);
        if (!out[i].empty()) add(ViolationKind::ConceptOutDegree, {v.id}, "concept '" + v.id + "' has outgoing edges");
        break;
      case VertexKind::Rationale:
        ++rationales;
        if (!in[i].empty()) add(ViolationKind::RationaleInDegree, {v.id}, "rationale '" + v.id + "' has incoming edges");
        if (out[i].empty()) add(ViolationKind::RationaleOutDegree, {v.id}, "rationale '" + v.id + "' supports nothing");
        break;
      case VertexKind::Intermediate:
        if (in[i].empty()) add(ViolationKind::IntermediateInDegree, {v.id}, "intermediate '" + v.id + "' has no support");
        if (out[i].empty()) {
          add(ViolationKind::IntermediateOutDegree, {v.id}, "intermediate '" + v.id + "' supports nothing");
        }
        break;
    }
  }
  if (concepts.size() != 1) {
    add(ViolationKind::ConceptCount, {}, "expected exactly one concept, found " + std::to_string(concepts.size()));
  }
  if (rationales == 0) add(ViolationKind::NoRationale, {}, "graph has no rationale");

  std::vector<bool> reach(n, false);
  std::vector<std::size_t> stack = concepts;
  for (auto c : concepts) reach[c] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto u : in[v]) {
      if (!reach[u]) {
        reach[u] = true;
        stack.push_back(u);
      }
    }
  }
  std::vector<std::string> unreachable;
  for (std::size_t i = 0; i < n; ++i) {
    if (!reach[i]) unreachable.push_back(g.vertices[i].id);
  }
  if (!unreachable.empty()) add(ViolationKind::Unreachable, unreachable, "vertices with no path to the concept");
  return res;
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

struct Statement {
  std::string concept_text;
  std::vector<std::string> rationale;
  std::vector<std::string> supporting_dois;

  bool operator==(const Statement&) const = default;

  void validate() const {
    if (concept_text.empty()) throw Error(ErrorCode::InvalidArgument, "statement concept is empty");
    if (rationale.empty()) throw Error(ErrorCode::InvalidArgument, "statement has no rationale");
    for (const auto& r : rationale) {
      if (r.empty()) throw Error(ErrorCode::InvalidArgument, "statement has an empty rationale");
    }
    for (const auto& d : supporting_dois) {
      if (!is_valid_doi(d)) throw Error(ErrorCode::InvalidArgument, "invalid DOI '" + d + "'");
    }
  }
};

/// Results format: exactly concept, supporting_dois, rationale, in that order.
inline nlohmann::ordered_json to_json(const Statement& s) {
  nlohmann::ordered_json j;
  j["concept"] = s.concept_text;
  j["supporting_dois"] = s.supporting_dois;
  j["rationale"] = s.rationale;
  return j;
}

inline Statement statement_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "statement must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "concept" && key != "supporting_dois" && key != "rationale") {
      throw Error(ErrorCode::InvalidArgument, "unexpected statement field '" + key + "'");
    }
  }
  Statement s;
  try {
    s.concept_text = j.at("concept").get<std::string>();
    s.supporting_dois = j.at("supporting_dois").get<std::vector<std::string>>();
    s.rationale = j.at("rationale").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed statement: ") + e.what());
  }
  return s;
}

/// Longest path length (in edges) from each vertex to the Concept. Requires a
/// valid graph.
inline std::map<std::string, std::size_t> concept_distance(const LogicGraph& g) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [from, to] : g.edges) out[from].push_back(to);
  std::map<std::string, std::size_t> memo;
  // Recursion depth is bounded by the vertex count of an acyclic graph.
  auto dist = [&](auto&& self, const std::string& id) -> std::size_t {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    std::size_t best = 0;
    if (auto it = out.find(id); it != out.end()) {
      for (const auto& next : it->second) best = std::max(best, 1 + self(self, next));
    }
    memo[id] = best;
    return best;
  };
  for (const auto& v : g.vertices) dist(dist, v.id);
  return memo;
}

/// Concept text, rationale texts ordered by topological layer (longest path to
/// the Concept, farthest first) then id, and the sorted union of their DOIs.
inline Statement graph_to_statement(const LogicGraph& g) {
  const auto check = validate_logic_graph(g);
  if (!check.ok()) throw Error(ErrorCode::InvalidGraph, check.summary());
  const auto layer = concept_distance(g);
  Statement s;
  std::vector<const LogicVertex*> rationales;
  std::set<std::string> dois;
  for (const auto& v : g.vertices) {
    if (v.kind == VertexKind::Concept) s.concept_text = v.text;
    if (v.kind == VertexKind::Rationale) {
      rationales.push_back(&v);
      dois.insert(v.supporting_dois.begin(), v.supporting_dois.end());
    }
  }
  std::sort(rationales.begin(), rationales.end(), [&](const LogicVertex* a, const LogicVertex* b) {
    const auto la = layer.at(a->id);
    const auto lb = layer.at(b->id);
    if (la != lb) return la > lb;
    return a->id < b->id;
  });
  for (const auto* r : rationales) s.rationale.push_back(r->text);
  s.supporting_dois.assign(dois.begin(), dois.end());
  return s;
}

/// Star graph: every rationale supports the single Concept. Ids are "c0" and
/// zero-padded "r000", "r001", ... so id order equals rationale order. All
/// statement DOIs are attached to the first rationale.
inline LogicGraph statement_to_seed_graph(const Statement& s) {
  s.validate();
  LogicGraph g;
  g.vertices.push_back({"c0", VertexKind::Concept, s.concept_text, {}});
  const std::size_t width = std::max<std::size_t>(3, std::to_string(s.rationale.size() - 1).size());
  std::set<std::string> dois(s.supporting_dois.begin(), s.supporting_dois.end());
  for (std::size_t i = 0; i < s.rationale.size(); ++i) {
    std::string num = std::to_string(i);
    std::string id = "r" + std::string(width - num.size(), '0') + num;
    LogicVertex v{id, VertexKind::Rationale, s.rationale[i], {}};
    if (i == 0) v.supporting_dois.assign(dois.begin(), dois.end());
    g.vertices.push_back(std::move(v));
    g.edges.emplace_back(id, "c0");
  }
  return g;
}

inline nlohmann::ordered_json to_json(const LogicGraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : g.vertices) {
    j["vertices"].push_back(
        {{"id", v.id}, {"kind", to_string(v.kind)}, {"text", v.text}, {"supporting_dois", v.supporting_dois}});
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [from, to] : g.edges) j["edges"].push_back({from, to});
  return j;
}

/// Parses {"vertices":[{id,kind,text,supporting_dois?}], "edges":[[from,to]]}.
/// Structural problems are left to validate_logic_graph.
inline LogicGraph logic_graph_from_json(const nlohmann::json& j) {
  LogicGraph g;
  try {
    for (const auto& v : j.at("vertices")) {
      LogicVertex lv;
      lv.id = v.at("id").get<std::string>();
      lv.kind = parse_vertex_kind(v.at("kind").get<std::string>());
      lv.text = v.at("text").get<std::string>();
      if (auto it = v.find("supporting_dois"); it != v.end() && !it->is_null()) {
        lv.supporting_dois = it->get<std::vector<std::string>>();
      }
      g.vertices.push_back(std::move(lv));
    }
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::InvalidGraph, "edge must be [from, to]");
      g.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::InvalidGraph, std::string("malformed logic graph: ") + ex.what());
  }
  return g;
}

}  // namespace spacer
