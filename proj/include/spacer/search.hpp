#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "spacer/corpus.hpp"
#include "spacer/error.hpp"
#include "spacer/graph.hpp"
#include "spacer/rng.hpp"
#include "spacer/scoring.hpp"

namespace spacer {

struct SearchConfig {
  std::size_t set_size_min = 3;
  std::size_t set_size_max = 5;
  std::size_t beam_width = 16;
  std::size_t iterations = 20;
  std::uint64_t rng_seed = 0;
  double min_score = 0.0;
  bool require_novelty = false;
  std::size_t max_results = 20;

  void validate() const {
    if (set_size_min < 2) throw Error(ErrorCode::InvalidArgument, "set_size_min must be at least 2");
    if (set_size_min > set_size_max) throw Error(ErrorCode::InvalidArgument, "set_size_min exceeds set_size_max");
    if (beam_width < 1 || iterations < 1 || max_results < 1) {
      throw Error(ErrorCode::InvalidArgument, "beam_width, iterations and max_results must be at least 1");
    }
    if (!(min_score >= 0.0 && min_score <= 1.0)) throw Error(ErrorCode::InvalidArgument, "min_score must be in [0,1]");
  }
};

struct CandidateSet {
  std::vector<std::string> keywords;  // sorted
  ImpactScore score;
  bool novel = false;

  bool operator==(const CandidateSet&) const = default;
};

/// True iff no single paper's keyword set contains every keyword of K.
inline bool is_novel(const Corpus& corpus, std::span<const std::string> keywords) {
  std::vector<std::string> ks(keywords.begin(), keywords.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.empty()) return corpus.empty();

  auto first = corpus.papers_with(ks.front());
  std::vector<RecordId> common(first.begin(), first.end());
  for (std::size_t i = 1; i < ks.size() && !common.empty(); ++i) {
    auto posting = corpus.papers_with(ks[i]);
    std::vector<RecordId> next;
    std::set_intersection(common.begin(), common.end(), posting.begin(), posting.end(), std::back_inserter(next));
    common = std::move(next);
  }
  return common.empty();
}

namespace detail {

/// Search state over local vertex indices; local order equals lexicographic
/// keyword order, so a sorted index vector is also the canonical keyword tuple.
class SetSearch {
 public:
  using Local = std::uint32_t;
  using Members = std::vector<Local>;

  SetSearch(const KeywordGraph& g, const Corpus& corpus, const Calibration& cal, const SearchConfig& cfg)
      : g_(g), corpus_(corpus), cal_(cal), cfg_(cfg) {
    names_ = g.sorted_vertices();
    gid_.reserve(names_.size());
    for (const auto& n : names_) gid_.push_back(*g.vertex_id(n));
    std::vector<Local> to_local(names_.size());
    for (Local i = 0; i < gid_.size(); ++i) to_local[gid_[i]] = i;
    neighbors_.resize(names_.size());
    for (Local i = 0; i < gid_.size(); ++i) {
      for (auto nb : g.neighbors(gid_[i])) neighbors_[i].push_back(to_local[nb]);
      std::sort(neighbors_[i].begin(), neighbors_[i].end());
    }
  }

  std::vector<CandidateSet> run() {
    beam_search();
    refine();

    std::vector<CandidateSet> out;
    for (const auto& entry : pool_) {
      CandidateSet c;
      for (Local m : entry.first) c.keywords.push_back(names_[m]);
      c.score = score_set(g_, c.keywords, cal_);
      if (c.score.s < cfg_.min_score) continue;
      c.novel = is_novel(corpus_, c.keywords);
      if (cfg_.require_novelty && !c.novel) continue;
      out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const CandidateSet& a, const CandidateSet& b) {
      if (a.score.s != b.score.s) return a.score.s > b.score.s;
      return a.keywords < b.keywords;
    });
    if (out.size() > cfg_.max_results) out.resize(cfg_.max_results);
    return out;
  }

 private:
  struct State {
    Members members;  // sorted
    double sum = 0.0; // sum of pair weights
  };

  double w(Local a, Local b) const { return g_.weight(gid_[a], gid_[b]); }

  double gain(const Members& members, Local v) const {
    double s = 0.0;
    for (Local m : members) s += w(m, v);
    return s;
  }

  // Pools every in-range set the search touches; with require_novelty only
  // novel sets are pooled, although the beam may still pass through others.
  void remember(const Members& members, double sum) {
    if (members.size() < cfg_.set_size_min || members.size() > cfg_.set_size_max) return;
    if (pool_.count(members)) return;
    if (cfg_.require_novelty) {
      std::vector<std::string> names;
      for (Local m : members) names.push_back(names_[m]);
      if (!is_novel(corpus_, names)) return;
    }
    pool_.emplace(members, sum);
  }
  void remember(const State& st) { remember(st.members, st.sum); }

  // Higher mean weight first, then lexicographic members.
  static bool better(const State& a, const State& b) {
    if (a.sum != b.sum) return a.sum > b.sum;
    return a.members < b.members;
  }

  // Candidate additions: neighbors of any member; all other vertices when the
  // set has no outside neighbor.
  std::vector<Local> frontier(const Members& members) const {
    std::vector<Local> out;
    for (Local m : members) out.insert(out.end(), neighbors_[m].begin(), neighbors_[m].end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::vector<Local> filtered;
    std::set_difference(out.begin(), out.end(), members.begin(), members.end(), std::back_inserter(filtered));
    if (filtered.empty()) {
      for (Local v = 0; v < names_.size(); ++v) {
        if (!std::binary_search(members.begin(), members.end(), v)) filtered.push_back(v);
      }
    }
    return filtered;
  }

  std::vector<State> seeds() const {
    std::vector<State> edges;
    for (Local a = 0; a < names_.size(); ++a) {
      for (Local b : neighbors_[a]) {
        if (b > a) edges.push_back({{a, b}, w(a, b)});
      }
    }
    if (edges.empty()) {
      for (Local a = 0; a < names_.size() && edges.size() < cfg_.beam_width; ++a) {
        for (Local b = a + 1; b < names_.size() && edges.size() < cfg_.beam_width; ++b) edges.push_back({{a, b}, 0.0});
      }
    }
    std::sort(edges.begin(), edges.end(), better);
    if (edges.size() > cfg_.beam_width) edges.resize(cfg_.beam_width);
    return edges;
  }

  void beam_search() {
    if (names_.size() < cfg_.set_size_min) return;
    std::vector<State> beam = seeds();
    for (const auto& st : beam) remember(st);
    const std::size_t target = std::min<std::size_t>(cfg_.set_size_max, names_.size());
    for (std::size_t size = 3; size <= target && !beam.empty(); ++size) {
      std::map<Members, double> next;
      for (const auto& st : beam) {
        for (Local v : frontier(st.members)) {
          Members m = st.members;
          m.insert(std::upper_bound(m.begin(), m.end(), v), v);
          next.emplace(std::move(m), st.sum + gain(st.members, v));
        }
      }
      std::vector<State> grown;
      grown.reserve(next.size());
      for (auto& [m, s] : next) {
        remember(m, s);
        grown.push_back({m, s});
      }
      std::sort(grown.begin(), grown.end(), better);
      if (grown.size() > cfg_.beam_width) grown.resize(cfg_.beam_width);
      beam = std::move(grown);
    }
  }

  // Single-keyword swap hill-climbing from the best pooled sets of every size.
  void refine() {
    for (std::size_t size = cfg_.set_size_min; size <= cfg_.set_size_max; ++size) {
      std::vector<State> starts;
      for (const auto& [m, s] : pool_) {
        if (m.size() == size) starts.push_back({m, s});
      }
      std::sort(starts.begin(), starts.end(), better);
      if (starts.size() > cfg_.beam_width) starts.resize(cfg_.beam_width);
      for (std::size_t rank = 0; rank < starts.size(); ++rank) {
        Rng rng = Rng::stream(cfg_.rng_seed, size * 1000003ULL + rank);
        climb(starts[rank], rng);
      }
    }
  }

  void climb(State st, Rng& rng) {
    for (std::size_t round = 0; round < cfg_.iterations; ++round) {
      std::vector<std::size_t> positions(st.members.size());
      for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
      rng.shuffle(positions);
      bool improved = false;
      for (std::size_t pos : positions) {
        const Local out = st.members[pos];
        Members rest = st.members;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
        const double base = st.sum - gain(rest, out);
        std::vector<Local> candidates = frontier(rest);
        rng.shuffle(candidates);
        for (Local v : candidates) {
          if (v == out) continue;
          const double sum = base + gain(rest, v);
          if (sum > st.sum + 1e-12 * std::max(1.0, st.sum)) {
            rest.insert(std::upper_bound(rest.begin(), rest.end(), v), v);
            st = State{std::move(rest), sum};
            remember(st);
            improved = true;
            break;
          }
        }
        if (improved) break;
      }
      if (!improved) return;
    }
  }

  const KeywordGraph& g_;
  const Corpus& corpus_;
  const Calibration& cal_;
  const SearchConfig& cfg_;
  std::vector<std::string> names_;
  std::vector<KeywordGraph::VertexId> gid_;
  std::vector<std::vector<Local>> neighbors_;
  std::map<Members, double> pool_;
};

}  // namespace detail

/// Ranked novel, high-scoring keyword sets: beam search seeded from the
/// heaviest edges and grown by neighbor addition, then single-keyword swap
/// hill-climbing. Deterministic for a fixed configuration and seed.
inline std::vector<CandidateSet> search_sets(const KeywordGraph& g, const Corpus& corpus, const Calibration& cal,
                                             const SearchConfig& cfg) {
  cfg.validate();
  if (g.empty()) throw Error(ErrorCode::EmptyGraph, "cannot search an empty graph");
  return detail::SetSearch(g, corpus, cal, cfg).run();
}

}  // namespace spacer
