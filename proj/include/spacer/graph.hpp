#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "spacer/corpus.hpp"
#include "spacer/error.hpp"

namespace spacer {

/// Undirected weighted keyword co-occurrence graph. An edge {u,v} accumulates
/// log2(FWCI(p)+1) / (|K(p)|-1) over every paper p whose keyword set holds both.
/// Only strictly positive weights are stored; an absent pair has weight 0.
class KeywordGraph {
 public:
  using VertexId = std::uint32_t;

  struct Edge {
    std::string u;
    std::string v;
    double weight;
    bool operator==(const Edge&) const = default;
  };

  VertexId add_vertex(const std::string& keyword) {
    auto [it, inserted] = ids_.emplace(keyword, static_cast<VertexId>(names_.size()));
    if (inserted) {
      names_.push_back(keyword);
      adjacency_.emplace_back();
    }
    return it->second;
  }

  std::optional<VertexId> vertex_id(const std::string& keyword) const {
    auto it = ids_.find(keyword);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name(VertexId v) const { return names_.at(v); }
  bool has_vertex(const std::string& keyword) const { return ids_.contains(keyword); }
  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return weights_.size(); }
  std::size_t paper_count() const { return paper_count_; }
  bool empty() const { return names_.empty(); }

  double weight(VertexId a, VertexId b) const {
    if (a == b) return 0.0;
    auto it = weights_.find(key(a, b));
    return it == weights_.end() ? 0.0 : it->second;
  }

  /// Adds `amount` to the pair weight. Non-positive amounts and self pairs are ignored.
  void add_weight(VertexId a, VertexId b, double amount) {
    if (a == b || !(amount > 0.0)) return;
    auto [it, inserted] = weights_.emplace(key(a, b), amount);
    if (inserted) {
      adjacency_[a].push_back(b);
      adjacency_[b].push_back(a);
    } else {
      it->second += amount;
    }
  }

  /// Accumulates one paper's contribution. Pairs are visited in lexicographic
  /// keyword order so the floating-point sum is independent of keyword order.
  void add_paper(const PaperRecord& paper) { add_paper_with_impact(paper, std::log2(paper.fwci + 1.0)); }

  /// As add_paper, with `impact` standing in for log2(FWCI+1).
  void add_paper_with_impact(const PaperRecord& paper, double impact) {
    std::vector<std::string> kws = paper.keywords;
    std::sort(kws.begin(), kws.end());
    kws.erase(std::unique(kws.begin(), kws.end()), kws.end());
    std::vector<VertexId> ids;
    ids.reserve(kws.size());
    for (const auto& k : kws) ids.push_back(add_vertex(k));
    ++paper_count_;
    if (ids.size() < 2) return;
    const double contribution = impact / static_cast<double>(ids.size() - 1);
    if (!(contribution > 0.0)) return;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) add_weight(ids[i], ids[j], contribution);
    }
  }

  /// Neighbors with positive edge weight, in insertion order.
  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_.at(v); }

  std::vector<std::string> sorted_vertices() const {
    std::vector<std::string> out = names_;
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Edges with u < v, sorted by (u, v).
  std::vector<Edge> sorted_edges() const {
    std::vector<Edge> out;
    out.reserve(weights_.size());
    for (const auto& [k, w] : weights_) {
      const auto a = static_cast<VertexId>(k >> 32);
      const auto b = static_cast<VertexId>(k & 0xffffffffULL);
      const auto& na = names_[a];
      const auto& nb = names_[b];
      if (na < nb) {
        out.push_back({na, nb, w});
      } else {
        out.push_back({nb, na, w});
      }
    }
    std::sort(out.begin(), out.end(), [](const Edge& x, const Edge& y) {
      return x.u != y.u ? x.u < y.u : x.v < y.v;
    });
    return out;
  }

  void set_paper_count(std::size_t n) { paper_count_ = n; }

 private:
  static std::uint64_t key(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  std::unordered_map<std::string, VertexId> ids_;
  std::vector<std::string> names_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::unordered_map<std::uint64_t, double> weights_;
  std::size_t paper_count_ = 0;
};

/// Builds G(P) by accumulating papers in the given (date) order.
inline KeywordGraph build_graph(CorpusView papers) {
  KeywordGraph g;
  for (const auto& p : papers) g.add_paper(p);
  return g;
}

/// 0 for unknown vertices, absent pairs and u == v.
inline double edge_weight(const KeywordGraph& g, const std::string& u, const std::string& v) {
  auto a = g.vertex_id(u);
  auto b = g.vertex_id(v);
  if (!a || !b) return 0.0;
  return g.weight(*a, *b);
}

/// Vertex union with pairwise weight addition. g2's contents are folded into a
/// copy of g1 in canonical (sorted) order.
inline KeywordGraph merge(const KeywordGraph& g1, const KeywordGraph& g2) {
  KeywordGraph out = g1;
  for (const auto& v : g2.sorted_vertices()) out.add_vertex(v);
  for (const auto& e : g2.sorted_edges()) {
    out.add_weight(out.add_vertex(e.u), out.add_vertex(e.v), e.weight);
  }
  out.set_paper_count(g1.paper_count() + g2.paper_count());
  return out;
}

/// Text dump: isolated vertices in a header section, then `u<TAB>v<TAB>weight`
/// lines with u < v and weights at 12 significant digits.
inline void write_graph_dump(const KeywordGraph& g, std::ostream& out) {
  const auto edges = g.sorted_edges();
  std::vector<std::string> isolated;
  for (const auto& v : g.sorted_vertices()) {
    if (g.neighbors(*g.vertex_id(v)).empty()) isolated.push_back(v);
  }
  out << "# papers " << g.paper_count() << '\n';
  out << "# vertices " << isolated.size() << '\n';
  for (const auto& v : isolated) out << v << '\n';
  out << "# edges " << edges.size() << '\n';
  char buf[64];
  for (const auto& e : edges) {
    std::snprintf(buf, sizeof buf, "%.12g", e.weight);
    out << e.u << '\t' << e.v << '\t' << buf << '\n';
  }
}

inline KeywordGraph read_graph_dump(std::istream& in) {
  KeywordGraph g;
  std::string line;
  std::size_t line_no = 0;
  auto expect_header = [&](const std::string& prefix) -> std::size_t {
    ++line_no;
    if (!std::getline(in, line) || line.rfind(prefix, 0) != 0) {
      throw ParseError(line_no, "expected '" + prefix + "'");
    }
    try {
      return std::stoul(line.substr(prefix.size()));
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad count in '" + line + "'");
    }
  };
  const std::size_t papers = expect_header("# papers ");
  const std::size_t n_isolated = expect_header("# vertices ");
  for (std::size_t i = 0; i < n_isolated; ++i) {
    ++line_no;
    if (!std::getline(in, line) || line.empty()) throw ParseError(line_no, "expected a vertex line");
    g.add_vertex(line);
  }
  const std::size_t n_edges = expect_header("# edges ");
  for (std::size_t i = 0; i < n_edges; ++i) {
    ++line_no;
    if (!std::getline(in, line)) throw ParseError(line_no, "expected an edge line");
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw ParseError(line_no, "edge line needs three tab-separated fields");
    double w = 0.0;
    try {
      w = std::stod(line.substr(t2 + 1));
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad weight");
    }
    if (!(w > 0.0) || !std::isfinite(w)) throw ParseError(line_no, "weight must be positive and finite");
    g.add_weight(g.add_vertex(line.substr(0, t1)), g.add_vertex(line.substr(t1 + 1, t2 - t1 - 1)), w);
  }
  g.set_paper_count(papers);
  return g;
}

}  // namespace spacer
