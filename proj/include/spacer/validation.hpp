#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "spacer/corpus.hpp"
#include "spacer/error.hpp"
#include "spacer/generator.hpp"
#include "spacer/graph.hpp"
#include "spacer/parallel.hpp"
#include "spacer/prompts.hpp"
#include "spacer/rng.hpp"
#include "spacer/scoring.hpp"

namespace spacer {

// ---------------------------------------------------------------------------
// ROC / AUC
// ---------------------------------------------------------------------------

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

/// Points run from (0,0) to (1,1); thresholds[i] is the score cutoff (score >=
/// cutoff counts as positive) producing points[i], +inf for the origin.
/// tp/fp hold the exact counts behind each point.
struct RocCurve {
  std::vector<RocPoint> points;
  std::vector<double> thresholds;
  std::vector<std::uint64_t> tp;
  std::vector<std::uint64_t> fp;
  std::uint64_t n_pos = 0;
  std::uint64_t n_neg = 0;
};

struct RocResult {
  RocCurve curve;
  double auc = 0.0;
  /// 2 * trapezoid area * n_pos * n_neg as an exact integer; equals
  /// 2 * (concordant pairs) + (tied pairs).
  std::uint64_t twice_area_count = 0;
};

/// Trapezoidal ROC AUC with equal scores grouped into one threshold step,
/// which makes it identical to the Mann-Whitney statistic. Label 1 is positive.
inline RocResult roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw Error(ErrorCode::InvalidArgument, "scores and labels differ in length");
  std::uint64_t n_pos = 0;
  std::uint64_t n_neg = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::isnan(scores[i])) throw Error(ErrorCode::InvalidArgument, "NaN score");
    if (labels[i] == 1) {
      ++n_pos;
    } else if (labels[i] == 0) {
      ++n_neg;
    } else {
      throw Error(ErrorCode::InvalidArgument, "labels must be 0 or 1");
    }
  }
  if (n_pos == 0 || n_neg == 0) throw Error(ErrorCode::DegenerateLabels, "both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocResult res;
  auto& c = res.curve;
  c.n_pos = n_pos;
  c.n_neg = n_neg;
  c.points.push_back({0.0, 0.0});
  c.thresholds.push_back(std::numeric_limits<double>::infinity());
  c.tp.push_back(0);
  c.fp.push_back(0);

  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    std::uint64_t dtp = 0;
    std::uint64_t dfp = 0;
    for (; i < order.size() && scores[order[i]] == s; ++i) {
      if (labels[order[i]] == 1) {
        ++dtp;
      } else {
        ++dfp;
      }
    }
    res.twice_area_count += dfp * (2 * tp + dtp);
    tp += dtp;
    fp += dfp;
    c.points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                        static_cast<double>(tp) / static_cast<double>(n_pos)});
    c.thresholds.push_back(s);
    c.tp.push_back(tp);
    c.fp.push_back(fp);
  }
  res.auc = static_cast<double>(res.twice_area_count) / (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
  return res;
}

/// Linear-interpolation quantile of sorted data (the common "type 7" rule).
inline double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error(ErrorCode::InvalidArgument, "quantile of empty data");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

/// Percentile interval of AUC over stratified bootstrap resamples: each
/// resample draws n_pos positives and n_neg negatives with replacement from
/// their own class. Resample b uses Rng::stream(seed, b), drawing positives
/// first, so the interval is independent of `jobs`.
inline std::pair<double, double> bootstrap_ci(std::span<const double> scores, std::span<const int> labels,
                                              std::size_t resamples, double level, std::uint64_t seed,
                                              std::size_t jobs = 1) {
  if (resamples < 100) throw Error(ErrorCode::InvalidArgument, "at least 100 resamples required");
  if (!(level > 0.0 && level < 1.0)) throw Error(ErrorCode::InvalidArgument, "level must be in (0,1)");
  roc_auc(scores, labels);  // validates input and class presence

  std::vector<double> pos;
  std::vector<double> neg;
  for (std::size_t i = 0; i < scores.size(); ++i) (labels[i] == 1 ? pos : neg).push_back(scores[i]);

  std::vector<double> aucs(resamples);
  parallel_for(resamples, jobs, [&](std::size_t b) {
    Rng rng = Rng::stream(seed, b);
    std::vector<double> s;
    std::vector<int> l;
    s.reserve(scores.size());
    l.reserve(scores.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
      s.push_back(pos[rng.index(pos.size())]);
      l.push_back(1);
    }
    for (std::size_t i = 0; i < neg.size(); ++i) {
      s.push_back(neg[rng.index(neg.size())]);
      l.push_back(0);
    }
    aucs[b] = roc_auc(s, l).auc;
  });
  std::sort(aucs.begin(), aucs.end());
  const double tail = (1.0 - level) / 2.0;
  return {quantile_sorted(aucs, tail), quantile_sorted(aucs, 1.0 - tail)};
}

// ---------------------------------------------------------------------------
// Classification experiments
// ---------------------------------------------------------------------------

struct ClassificationReport {
  double auc = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  std::uint64_t seed = 0;
  RocCurve curve;
  // Per-item detail, positives first.
  std::vector<double> scores;
  std::vector<int> labels;
  std::vector<std::string> items;
};

struct BootstrapConfig {
  std::size_t resamples = 1000;
  double level = 0.95;
};

/// Seed for a named sub-experiment, so sampling and bootstrap never share a stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) { return Rng::stream(seed, tag).next(); }

namespace detail {

inline ClassificationReport make_report(std::vector<double> scores, std::vector<int> labels,
                                        std::vector<std::string> items, std::uint64_t seed,
                                        const BootstrapConfig& boot, std::size_t jobs) {
  ClassificationReport r;
  auto roc = roc_auc(scores, labels);
  r.auc = roc.auc;
  r.curve = std::move(roc.curve);
  r.n_pos = r.curve.n_pos;
  r.n_neg = r.curve.n_neg;
  r.seed = seed;
  auto [lo, hi] = bootstrap_ci(scores, labels, boot.resamples, boot.level, derive_seed(seed, 2), jobs);
  // A percentile interval need not contain the point estimate; widen it so it does.
  r.ci_low = std::min(lo, r.auc);
  r.ci_high = std::max(hi, r.auc);
  r.scores = std::move(scores);
  r.labels = std::move(labels);
  r.items = std::move(items);
  return r;
}

}  // namespace detail

struct ImpactClassificationConfig {
  double high_cut = 15.0;
  double low_cut = 1.0;
  std::size_t n_per_class = 200;
  std::uint64_t seed = 0;
  BootstrapConfig bootstrap;
  std::size_t jobs = 1;
};

/// EVAL-based high- vs low-impact classification. Samples n_per_class papers
/// (with at least two keywords) from FWCI >= high_cut and FWCI < low_cut
/// without replacement; label 1 = high impact.
inline ClassificationReport impact_classification(const Corpus& corpus, const ImpactClassificationConfig& cfg) {
  std::vector<RecordId> high;
  std::vector<RecordId> low;
  for (RecordId id = 0; id < corpus.size(); ++id) {
    const auto& r = corpus.at(id);
    if (r.keywords.size() < 2) continue;
    if (r.fwci >= cfg.high_cut) high.push_back(id);
    if (r.fwci < cfg.low_cut) low.push_back(id);
  }
  if (high.size() < cfg.n_per_class || low.size() < cfg.n_per_class || cfg.n_per_class == 0) {
    throw Error(ErrorCode::InsufficientStratum, "need " + std::to_string(cfg.n_per_class) +
                                                    " papers per stratum; have " + std::to_string(high.size()) +
                                                    " high and " + std::to_string(low.size()) + " low");
  }
  Rng rng = Rng::stream(cfg.seed, 1);
  std::vector<RecordId> chosen;
  for (auto i : rng.sample_without_replacement(high.size(), cfg.n_per_class)) chosen.push_back(high[i]);
  for (auto i : rng.sample_without_replacement(low.size(), cfg.n_per_class)) chosen.push_back(low[i]);

  const auto evals = CausalEvaluator(corpus).evaluate(chosen);
  std::vector<double> scores;
  std::vector<int> labels;
  std::vector<std::string> items;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    scores.push_back(evals[i].s);
    labels.push_back(i < cfg.n_per_class ? 1 : 0);
    items.push_back(corpus.at(chosen[i]).doi);
  }
  return detail::make_report(std::move(scores), std::move(labels), std::move(items), cfg.seed, cfg.bootstrap, cfg.jobs);
}

struct RandomSetConfig {
  std::size_t n = 200;
  std::uint64_t seed = 0;
  BootstrapConfig bootstrap;
  std::size_t jobs = 1;
};

/// Paper keyword sets (label 1) vs. size-matched uniformly random vertex sets
/// (label 0), both scored with f on the given graph.
inline ClassificationReport random_set_experiment(const Corpus& corpus, const KeywordGraph& g, const Calibration& cal,
                                                  const RandomSetConfig& cfg) {
  if (cfg.n < 10) throw Error(ErrorCode::InsufficientStratum, "random-set experiment needs n >= 10");
  std::vector<RecordId> eligible;
  for (RecordId id = 0; id < corpus.size(); ++id) {
    if (corpus.at(id).keywords.size() >= 2) eligible.push_back(id);
  }
  if (eligible.size() < cfg.n) {
    throw Error(ErrorCode::InsufficientStratum,
                "need " + std::to_string(cfg.n) + " papers with >= 2 keywords; have " + std::to_string(eligible.size()));
  }
  const auto vertices = g.sorted_vertices();
  Rng rng = Rng::stream(cfg.seed, 1);
  std::vector<double> pos_scores;
  std::vector<double> neg_scores;
  std::vector<std::string> pos_items;
  std::vector<std::string> neg_items;
  for (auto i : rng.sample_without_replacement(eligible.size(), cfg.n)) {
    const auto& paper = corpus.at(eligible[i]);
    const std::size_t k = paper.keywords.size();
    if (vertices.size() < k) throw Error(ErrorCode::InsufficientStratum, "graph has fewer vertices than a keyword set");
    pos_scores.push_back(score_set(g, paper.keywords, cal).s);
    pos_items.push_back(paper.doi);

    std::vector<std::string> random_set;
    for (auto v : rng.sample_without_replacement(vertices.size(), k)) random_set.push_back(vertices[v]);
    neg_scores.push_back(score_set(g, random_set, cal).s);
    std::sort(random_set.begin(), random_set.end());
    std::string joined;
    for (const auto& kw : random_set) joined += (joined.empty() ? "" : ",") + kw;
    neg_items.push_back(std::move(joined));
  }
  std::vector<double> scores = pos_scores;
  scores.insert(scores.end(), neg_scores.begin(), neg_scores.end());
  std::vector<int> labels(cfg.n, 1);
  labels.resize(2 * cfg.n, 0);
  std::vector<std::string> items = pos_items;
  items.insert(items.end(), neg_items.begin(), neg_items.end());
  return detail::make_report(std::move(scores), std::move(labels), std::move(items), cfg.seed, cfg.bootstrap, cfg.jobs);
}

// ---------------------------------------------------------------------------
// FWCI distributions per EVAL threshold
// ---------------------------------------------------------------------------

struct HistogramSpec {
  std::size_t bins = 64;
  double lo = 0.0;
  double hi = 10.0;

  double width() const { return (hi - lo) / static_cast<double>(bins); }
  std::vector<double> edges() const {
    std::vector<double> e(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) e[i] = lo + width() * static_cast<double>(i);
    return e;
  }
};

/// Unit-area histogram of log2(FWCI+1). Values outside [lo, hi] are counted in
/// the end bins so every sampled paper contributes.
struct Histogram {
  double cut = 0.0;  // EVAL threshold; NaN for the full sample
  std::size_t count = 0;
  bool empty = true;
  double mean_log_fwci = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> density;
};

struct HistogramSet {
  HistogramSpec spec;
  std::size_t sample_size = 0;
  Histogram full;
  std::vector<Histogram> by_cut;
};

struct FwciHistogramConfig {
  std::size_t sample_n = 10000;
  std::vector<double> eval_cuts{0.8, 0.9, 0.95, 0.99};
  HistogramSpec bins;
  std::uint64_t seed = 0;
};

namespace detail {

inline Histogram make_histogram(const std::vector<double>& values, const HistogramSpec& spec, double cut) {
  Histogram h;
  h.cut = cut;
  h.count = values.size();
  h.empty = values.empty();
  h.density.assign(spec.bins, 0.0);
  if (values.empty()) return h;
  double sum = 0.0;
  for (double x : values) {
    sum += x;
    auto b = static_cast<long long>(std::floor((x - spec.lo) / spec.width()));
    b = std::clamp<long long>(b, 0, static_cast<long long>(spec.bins) - 1);
    h.density[static_cast<std::size_t>(b)] += 1.0;
  }
  for (auto& d : h.density) d /= static_cast<double>(values.size()) * spec.width();
  h.mean_log_fwci = sum / static_cast<double>(values.size());
  return h;
}

}  // namespace detail

/// Samples min(sample_n, eligible) papers with at least two keywords, computes
/// EVAL for each, and histograms log2(FWCI+1) for the whole sample and for each
/// subset with EVAL >= cut. Empty subsets are flagged, not fatal.
inline HistogramSet fwci_threshold_histograms(const Corpus& corpus, const FwciHistogramConfig& cfg) {
  for (double cut : cfg.eval_cuts) {
    if (!(cut >= 0.0 && cut < 1.0)) throw Error(ErrorCode::InvalidArgument, "EVAL cuts must lie in [0,1)");
  }
  if (cfg.bins.bins == 0 || !(cfg.bins.hi > cfg.bins.lo)) throw Error(ErrorCode::InvalidArgument, "bad histogram spec");
  std::vector<RecordId> eligible;
  for (RecordId id = 0; id < corpus.size(); ++id) {
    if (corpus.at(id).keywords.size() >= 2) eligible.push_back(id);
  }
  Rng rng = Rng::stream(cfg.seed, 1);
  std::vector<RecordId> chosen;
  for (auto i : rng.sample_without_replacement(eligible.size(), std::min(cfg.sample_n, eligible.size()))) {
    chosen.push_back(eligible[i]);
  }
  const auto evals = CausalEvaluator(corpus).evaluate(chosen);

  HistogramSet out;
  out.spec = cfg.bins;
  out.sample_size = chosen.size();
  std::vector<double> all;
  for (auto id : chosen) all.push_back(std::log2(corpus.at(id).fwci + 1.0));
  out.full = detail::make_histogram(all, cfg.bins, std::numeric_limits<double>::quiet_NaN());
  for (double cut : cfg.eval_cuts) {
    std::vector<double> subset;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      if (evals[i].s >= cut) subset.push_back(all[i]);
    }
    out.by_cut.push_back(detail::make_histogram(subset, cfg.bins, cut));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reconstruction judging
// ---------------------------------------------------------------------------

enum class JudgeAspect { Logic, Topic, Objective, Approach, Overall };

inline constexpr std::array<JudgeAspect, 5> kJudgeAspects{JudgeAspect::Logic, JudgeAspect::Topic, JudgeAspect::Objective,
                                                          JudgeAspect::Approach, JudgeAspect::Overall};

inline std::string to_string(JudgeAspect a) {
  switch (a) {
    case JudgeAspect::Logic: return "logic";
    case JudgeAspect::Topic: return "topic";
    case JudgeAspect::Objective: return "objective";
    case JudgeAspect::Approach: return "approach";
    case JudgeAspect::Overall: return "overall";
  }
  return "overall";
}

inline JudgeAspect parse_judge_aspect(std::string_view s) {
  for (auto a : kJudgeAspects) {
    if (to_string(a) == s) return a;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown judge aspect: " + std::string(s));
}

inline std::string_view judge_template(JudgeAspect a) {
  switch (a) {
    case JudgeAspect::Logic: return prompts::kJudgeLogic;
    case JudgeAspect::Topic: return prompts::kJudgeTopic;
    case JudgeAspect::Objective: return prompts::kJudgeObjective;
    case JudgeAspect::Approach: return prompts::kJudgeApproach;
    case JudgeAspect::Overall: return prompts::kJudgeOverall;
  }
  return prompts::kJudgeOverall;
}

inline GeneratorRequest judge_request(std::string_view first, std::string_view second, JudgeAspect aspect) {
  GeneratorRequest r;
  r.tag = "judge." + to_string(aspect);
  r.variables = {{"first_idea", std::string(first)}, {"second_idea", std::string(second)}};
  r.user_prompt = prompts::render(judge_template(aspect), r.variables);
  return r;
}

/// Strict yes/no verdict: case-insensitive after trimming whitespace.
inline bool parse_yes_no(std::string_view response) {
  const auto b = response.find_first_not_of(" \t\r\n");
  const auto e = response.find_last_not_of(" \t\r\n");
  std::string t;
  if (b != std::string_view::npos) {
    for (char c : response.substr(b, e - b + 1)) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (t == "yes") return true;
  if (t == "no") return false;
  throw Error(ErrorCode::MalformedJudgment, "expected 'yes' or 'no', got '" + std::string(response) + "'");
}

inline bool judge_similarity(std::string_view a, std::string_view b, JudgeAspect aspect, TextGenerator& gen) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "judge inputs must be non-empty");
  return parse_yes_no(gen.generate(judge_request(a, b, aspect)));
}

struct ReconstructionPair {
  std::string group;  // e.g. journal
  std::string original;
  std::string reconstructed;
};

/// Pass counts per aspect and group, shaped like a journal-by-criterion table.
struct ReconstructionReport {
  struct Tally {
    std::size_t passed = 0;
    std::size_t total = 0;
  };

  std::vector<std::string> groups;  // first-appearance order
  std::map<JudgeAspect, std::map<std::string, Tally>> cells;

  Tally total(JudgeAspect a) const {
    Tally t;
    if (auto it = cells.find(a); it != cells.end()) {
      for (const auto& [g, c] : it->second) {
        t.passed += c.passed;
        t.total += c.total;
      }
    }
    return t;
  }

  std::string to_table() const {
    std::string out = "Criteria";
    for (const auto& g : groups) out += "\t" + g;
    out += "\tTotal\tRate\n";
    char pct[32];
    for (auto a : kJudgeAspects) {
      std::string name = to_string(a);
      name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
      out += name;
      auto it = cells.find(a);
      for (const auto& g : groups) {
        Tally c;
        if (it != cells.end()) {
          if (auto jt = it->second.find(g); jt != it->second.end()) c = jt->second;
        }
        out += "\t" + std::to_string(c.passed) + "/" + std::to_string(c.total);
      }
      const auto t = total(a);
      std::snprintf(pct, sizeof pct, "%.2f%%", t.total ? 100.0 * static_cast<double>(t.passed) / static_cast<double>(t.total) : 0.0);
      out += "\t" + std::to_string(t.passed) + "/" + std::to_string(t.total) + "\t" + pct + "\n";
    }
    return out;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["groups"] = groups;
    for (auto a : kJudgeAspects) {
      nlohmann::ordered_json row;
      for (const auto& g : groups) {
        Tally c;
        if (auto it = cells.find(a); it != cells.end()) {
          if (auto jt = it->second.find(g); jt != it->second.end()) c = jt->second;
        }
        row[g] = {{"passed", c.passed}, {"total", c.total}};
      }
      const auto t = total(a);
      row["total"] = {{"passed", t.passed}, {"total", t.total}};
      j["aspects"][to_string(a)] = row;
    }
    return j;
  }
};

inline ReconstructionReport judge_reconstructions(std::span<const ReconstructionPair> pairs, TextGenerator& gen) {
  ReconstructionReport rep;
  for (const auto& p : pairs) {
    if (std::find(rep.groups.begin(), rep.groups.end(), p.group) == rep.groups.end()) rep.groups.push_back(p.group);
    for (auto a : kJudgeAspects) {
      auto& cell = rep.cells[a][p.group];
      ++cell.total;
      if (judge_similarity(p.original, p.reconstructed, a, gen)) ++cell.passed;
    }
  }
  return rep;
}

}  // namespace spacer
