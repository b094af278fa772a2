#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spacer/corpus.hpp"
#include "spacer/error.hpp"
#include "spacer/graph.hpp"

namespace spacer {

/// Saturation constant of the score transform s = raw / (raw + c).
struct Calibration {
  double c = 1.0;

  static Calibration with(double c) {
    if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "calibration constant must be positive");
    return Calibration{c};
  }
};

struct ImpactScore {
  double s = 0.0;
  double raw = 0.0;
  std::size_t set_size = 0;

  bool operator==(const ImpactScore&) const = default;
};

/// Sorted, deduplicated copy of a keyword set. Throws SetTooSmall below two keywords.
inline std::vector<std::string> canonical_set(std::span<const std::string> keywords) {
  std::vector<std::string> out(keywords.begin(), keywords.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() < 2) throw Error(ErrorCode::SetTooSmall, "keyword set needs at least 2 distinct keywords");
  return out;
}

/// Mean edge weight over all unordered pairs of K. Unknown keywords and
/// absent pairs contribute 0.
inline double raw_set_weight(const KeywordGraph& g, std::span<const std::string> keywords) {
  const auto ks = canonical_set(keywords);
  std::vector<std::optional<KeywordGraph::VertexId>> ids;
  ids.reserve(ks.size());
  for (const auto& k : ks) ids.push_back(g.vertex_id(k));
  double sum = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!ids[i]) continue;
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (ids[j]) sum += g.weight(*ids[i], *ids[j]);
    }
  }
  const double pairs = static_cast<double>(ks.size()) * static_cast<double>(ks.size() - 1) / 2.0;
  return sum / pairs;
}

namespace detail {

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline Calibration calibration_from_raw(const std::vector<double>& raws) {
  const double med = median_of(raws);
  if (med > 0.0) return Calibration{med};
  double smallest = 0.0;
  for (double r : raws) {
    if (r > 0.0 && (smallest == 0.0 || r < smallest)) smallest = r;
  }
  return Calibration{smallest > 0.0 ? smallest : 1.0};
}

}  // namespace detail

/// c = median raw weight of the papers' own keyword sets (papers with at least
/// two keywords). Falls back to the smallest positive raw value, then to 1.
inline Calibration calibrate(const KeywordGraph& g, CorpusView papers) {
  std::vector<double> raws;
  for (const auto& p : papers) {
    if (p.keywords.size() >= 2) raws.push_back(raw_set_weight(g, p.keywords));
  }
  if (raws.empty()) throw Error(ErrorCode::NoScorableSets, "no paper with at least two keywords");
  return detail::calibration_from_raw(raws);
}

/// s = raw / (raw + c), evaluated as 1 - c / (raw + c): every step of that form
/// is monotone under IEEE rounding, so s never decreases when raw grows.
inline ImpactScore score_from_raw(double raw, std::size_t set_size, const Calibration& cal) {
  return ImpactScore{1.0 - cal.c / (raw + cal.c), raw, set_size};
}

inline ImpactScore score_set(const KeywordGraph& g, std::span<const std::string> keywords, const Calibration& cal) {
  const auto ks = canonical_set(keywords);
  return score_from_raw(raw_set_weight(g, ks), ks.size(), cal);
}

/// Unit-impact graph: every paper weighted as if log2(FWCI+1) = 1 (FWCI = 1,
/// the field average). Captures co-occurrence structure with no impact signal.
inline KeywordGraph build_structure_graph(CorpusView papers) {
  KeywordGraph g;
  for (const auto& p : papers) g.add_paper_with_impact(p, 1.0);
  return g;
}

/// c = median raw weight of the papers' own keyword sets on the unit-impact
/// graph, with the same fallbacks as calibrate(). The constant does not depend
/// on any FWCI value, so a set's score can only rise when a prior paper's
/// impact rises. s = 0.5 means the set is as strongly connected, impact-weighted,
/// as a median paper would be if every paper had average impact.
inline Calibration calibrate_structural(CorpusView papers) {
  return calibrate(build_structure_graph(papers), papers);
}

/// Computes EVAL(p) = f over the papers strictly before p, for many papers at
/// once. The prior graphs are advanced incrementally in date order, which adds
/// papers in exactly the order build_graph(slice_before(p)) would, so results
/// are bit-identical to a from-scratch rebuild. Calibration is structural
/// (calibrate_structural over the same prior papers).
class CausalEvaluator {
 public:
  explicit CausalEvaluator(const Corpus& corpus) : corpus_(&corpus) {}

  /// Scores for `ids`, aligned with the input order.
  std::vector<ImpactScore> evaluate(std::span<const RecordId> ids) {
    std::vector<std::size_t> order(ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = i;
      const auto& r = corpus_->at(ids[i]);
      if (r.keywords.size() < 2) throw Error(ErrorCode::SetTooSmall, "paper " + r.doi + " has fewer than 2 keywords");
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });

    std::vector<ImpactScore> out(ids.size());
    for (std::size_t idx : order) {
      const RecordId target = ids[idx];
      if (target < advanced_) reset();
      advance_to(target);
      const auto& paper = corpus_->at(target);
      out[idx] = score_set(graph_, paper.keywords, prior_calibration());
    }
    return out;
  }

  ImpactScore evaluate(RecordId id) {
    const RecordId ids[] = {id};
    return evaluate(ids).front();
  }

  /// Graph over the records advanced so far (a date-order prefix).
  const KeywordGraph& graph() const { return graph_; }

 private:
  void reset() {
    graph_ = KeywordGraph{};
    structure_ = KeywordGraph{};
    advanced_ = 0;
  }

  void advance_to(RecordId target) {
    const auto records = corpus_->records();
    for (; advanced_ < target; ++advanced_) {
      graph_.add_paper(records[advanced_]);
      structure_.add_paper_with_impact(records[advanced_], 1.0);
    }
  }

  // An empty prior (no scorable paper) uses c = 1, where every raw value is 0 anyway.
  Calibration prior_calibration() const {
    const auto prior = corpus_->records().first(advanced_);
    std::vector<double> raws;
    for (const auto& p : prior) {
      if (p.keywords.size() >= 2) raws.push_back(raw_set_weight(structure_, p.keywords));
    }
    if (raws.empty()) return Calibration{1.0};
    return detail::calibration_from_raw(raws);
  }

  const Corpus* corpus_;
  KeywordGraph graph_;
  KeywordGraph structure_;
  RecordId advanced_ = 0;
};

/// EVAL(p) for a single paper.
inline ImpactScore eval_paper(const Corpus& corpus, RecordId id) { return CausalEvaluator(corpus).evaluate(id); }

inline ImpactScore eval_paper(const Corpus& corpus, std::string_view doi) { return eval_paper(corpus, corpus.id_of(doi)); }

}  // namespace spacer
