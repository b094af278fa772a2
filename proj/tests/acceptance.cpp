// Acceptance suite: one PASS/FAIL line per primary criterion. Exit status is
// nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "spacer/spacer.hpp"

using namespace spacer;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome graph_oracle() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng(1000 + seed);
    auto records = oracle::random_records(rng, 1 + rng.index(50), 15, 1, 6);
    auto c = Corpus::from_records(records);
    std::vector<PaperRecord> ordered(c.records().begin(), c.records().end());
    const auto want = oracle::brute_weights(ordered);
    const auto g = build_graph(c.records());
    o.check(g.edge_count() == want.size(), "edge count differs on corpus " + std::to_string(seed));
    for (const auto& e : g.sorted_edges()) {
      auto it = want.find({e.u, e.v});
      if (it == want.end()) {
        o.check(false, "unexpected edge " + e.u + "-" + e.v);
        continue;
      }
      worst = std::max(worst, std::abs(it->second - e.weight));
    }
  }
  const double t = seconds_since(t0);
  o.check(worst <= 1e-12, "max edge error " + fmt("%.3g", worst));
  o.check(t < 5.0, "took " + fmt("%.2f", t) + " s");
  if (o.pass) o.detail = "max edge error " + fmt("%.3g", worst) + ", " + fmt("%.3f", t) + " s";
  return o;
}

Outcome auc_oracle() {
  Outcome o;
  Rng rng(77);
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t n = 2 + rng.index(49);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      // coarse grid so ties are common
      scores[i] = inst % 2 ? std::round(rng.uniform01() * 8) / 8 : rng.normal();
      labels[i] = rng.uniform01() < 0.5;
    }
    labels[0] = 1;
    labels[1] = 0;
    const auto r = roc_auc(scores, labels);
    const auto twice = oracle::mann_whitney_twice(scores, labels);
    const std::string at = " on instance " + std::to_string(inst);
    o.check(r.twice_area_count == twice, "pair count differs" + at);
    o.check(r.auc == oracle::mann_whitney_auc(scores, labels), "AUC differs" + at);
    const auto& pts = r.curve.points;
    o.check(!pts.empty() && pts.front().fpr == 0.0 && pts.front().tpr == 0.0, "curve does not start at (0,0)" + at);
    o.check(!pts.empty() && pts.back().fpr == 1.0 && pts.back().tpr == 1.0, "curve does not end at (1,1)" + at);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      o.check(pts[i].fpr >= pts[i - 1].fpr && pts[i].tpr >= pts[i - 1].tpr, "curve not monotone" + at);
      o.check(r.curve.thresholds[i] < r.curve.thresholds[i - 1], "thresholds not decreasing" + at);
    }
  }
  if (o.pass) o.detail = "100 instances, exact pair counts";
  return o;
}

Outcome causality() {
  Outcome o;
  std::size_t checks = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(5000 + seed);
    auto records = oracle::random_records(rng, 10 + rng.index(21), 10, 2, 5);
    auto base_corpus = Corpus::from_records(records);
    const std::vector<PaperRecord> sorted(base_corpus.records().begin(), base_corpus.records().end());
    const auto base = CausalEvaluator(base_corpus).evaluate(std::vector<RecordId>(
        [&] {
          std::vector<RecordId> ids(sorted.size());
          std::iota(ids.begin(), ids.end(), 0);
          return ids;
        }()));
    for (RecordId p = 0; p < sorted.size(); ++p) {
      const std::string at = "corpus " + std::to_string(seed) + " paper " + sorted[p].doi;
      // Own FWCI plus every later record's keywords and FWCI.
      for (RecordId q = p; q < sorted.size(); ++q) {
        auto mutated = sorted;
        mutated[q].fwci = mutated[q].fwci * 3 + 1.5;
        if (q != p) mutated[q].keywords = rng.uniform01() < 0.5 ? sorted[p].keywords : sorted[rng.index(sorted.size())].keywords;
        const auto s = eval_paper(Corpus::from_records(mutated), p);
        o.check(s == base[p], "EVAL changed after mutating a later record, " + at);
        ++checks;
      }
      // A prior paper sharing a keyword gains impact.
      const std::set<std::string> mine(sorted[p].keywords.begin(), sorted[p].keywords.end());
      for (RecordId q = 0; q < p; ++q) {
        const bool shares = std::any_of(sorted[q].keywords.begin(), sorted[q].keywords.end(),
                                        [&](const std::string& k) { return mine.count(k) > 0; });
        if (!shares) continue;
        auto mutated = sorted;
        mutated[q].fwci = mutated[q].fwci * 2 + 1;
        const auto s = eval_paper(Corpus::from_records(mutated), p);
        o.check(s.s >= base[p].s, "EVAL decreased after raising prior impact, " + at);
        ++checks;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " mutations";
  return o;
}

struct PlantedCorpus {
  Corpus corpus;
  KeywordGraph graph;
  Calibration cal;
};

const PlantedCorpus& planted() {
  static const PlantedCorpus pc = [] {
    PlantedCorpus out;
    out.corpus = generate(SynthSpec{});
    out.graph = build_graph(out.corpus.records());
    out.cal = calibrate(out.graph, out.corpus.records());
    return out;
  }();
  return pc;
}

Outcome impact_classification_check() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  ImpactClassificationConfig cfg;
  cfg.seed = 42;
  auto r = impact_classification(generate(SynthSpec{}), cfg);
  const double t = seconds_since(t0);
  const double width = r.ci_high - r.ci_low;
  o.check(r.auc >= 0.90, "AUC " + fmt("%.4f", r.auc));
  o.check(width <= 0.10, "CI width " + fmt("%.4f", width));
  o.check(t < 60.0, "took " + fmt("%.1f", t) + " s");
  o.detail = "AUC " + fmt("%.4f", r.auc) + ", 95% CI [" + fmt("%.4f", r.ci_low) + ", " + fmt("%.4f", r.ci_high) + "], " +
             fmt("%.2f", t) + " s" + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome histogram_check() {
  Outcome o;
  FwciHistogramConfig cfg;
  cfg.seed = 42;
  auto h = fwci_threshold_histograms(planted().corpus, cfg);
  auto area = [&](const Histogram& x) {
    double a = 0;
    for (double d : x.density) a += d * h.spec.width();
    return a;
  };
  o.check(std::abs(area(h.full) - 1.0) <= 1e-9, "full-sample area " + fmt("%.12f", area(h.full)));
  std::string means;
  double prev = -1.0;
  for (const auto& x : h.by_cut) {
    o.check(!x.empty, "subset at cut " + fmt("%g", x.cut) + " is empty");
    if (x.empty) continue;
    o.check(std::abs(area(x) - 1.0) <= 1e-9, "area at cut " + fmt("%g", x.cut) + " is " + fmt("%.12f", area(x)));
    o.check(x.mean_log_fwci >= prev, "mean drops at cut " + fmt("%g", x.cut));
    prev = x.mean_log_fwci;
    means += (means.empty() ? "" : ", ") + fmt("%.3f", x.mean_log_fwci) + " (n=" + std::to_string(x.count) + ")";
  }
  o.detail = "means " + means + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome random_sets_check() {
  Outcome o;
  RandomSetConfig cfg;
  cfg.seed = 42;
  const auto& pc = planted();
  auto r = random_set_experiment(pc.corpus, pc.graph, pc.cal, cfg);
  o.check(r.auc >= 0.95, "AUC " + fmt("%.4f", r.auc));
  o.detail = "AUC " + fmt("%.4f", r.auc) + ", 95% CI [" + fmt("%.4f", r.ci_low) + ", " + fmt("%.4f", r.ci_high) + "]";
  return o;
}

std::string serialize(const std::vector<CandidateSet>& sets) {
  std::ostringstream out;
  for (const auto& c : sets) {
    for (const auto& k : c.keywords) out << k << ",";
    out << detail::fmt_double(c.score.s) << "," << detail::fmt_double(c.score.raw) << "," << c.novel << "\n";
  }
  return out.str();
}

Outcome search_oracle() {
  Outcome o;
  double worst_ratio = 1.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(9000 + seed);
    const std::size_t n = 6 + rng.index(7);
    const double density = 0.3 + 0.6 * rng.uniform01();
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    KeywordGraph g;
    for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(100 + i));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng.uniform01() < density) {
          w[i][j] = w[j][i] = rng.lognormal(0.0, 1.0);
          g.add_weight(*g.vertex_id("v" + std::to_string(100 + i)), *g.vertex_id("v" + std::to_string(100 + j)), w[i][j]);
        }
      }
    }
    if (g.edge_count() == 0) continue;
    SearchConfig cfg;
    cfg.rng_seed = seed;
    const auto first = search_sets(g, Corpus{}, Calibration{1.0}, cfg);
    const auto second = search_sets(g, Corpus{}, Calibration{1.0}, cfg);
    o.check(serialize(first) == serialize(second), "same-seed runs differ on graph " + std::to_string(seed));
    double opt = 0.0;
    for (std::size_t k = cfg.set_size_min; k <= std::min(cfg.set_size_max, n); ++k) {
      opt = std::max(opt, oracle::best_subset_mean(n, k, [&](auto i, auto j) { return w[i][j]; }));
    }
    if (first.empty()) {
      o.check(false, "no result on graph " + std::to_string(seed));
      continue;
    }
    const double ratio = first.front().score.raw / opt;
    worst_ratio = std::min(worst_ratio, ratio);
    o.check(ratio >= 0.95, "graph " + std::to_string(seed) + " reached " + fmt("%.4f", ratio) + " of optimum");
  }
  if (o.pass) o.detail = "worst ratio to optimum " + fmt("%.4f", worst_ratio);
  return o;
}

Outcome energy_identities() {
  Outcome o;
  using Points = std::vector<std::vector<double>>;
  o.check(energy_distance(Points{{0.0}, {2.0}}, Points{{1.0}}) == 1.0, "D({0,2},{1}) != 1");
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(300 + seed);
    const std::size_t d = 1 + rng.index(8);
    auto draw = [&](std::size_t n, double shift) {
      Points p(n, std::vector<double>(d));
      for (auto& v : p) {
        for (auto& x : v) x = rng.normal() + shift;
      }
      return p;
    };
    const auto x = draw(1 + rng.index(20), 0.0);
    const auto y = draw(1 + rng.index(20), rng.uniform(-2, 2));
    const double e = energy_distance(x, y);
    const std::string at = " on fixture " + std::to_string(seed);
    o.check(energy_distance(x, x) == 0.0, "D(X,X) != 0" + at);
    o.check(energy_distance(y, x) == e, "asymmetric" + at);
    std::vector<double> t(d);
    for (auto& v : t) v = rng.uniform(-10, 10);
    const double lambda = rng.uniform(0.1, 10.0);
    auto xt = x, yt = y, xs = x, ys = y;
    for (auto* p : {&xt, &yt}) {
      for (auto& v : *p) {
        for (std::size_t j = 0; j < d; ++j) v[j] += t[j];
      }
    }
    for (auto* p : {&xs, &ys}) {
      for (auto& v : *p) {
        for (auto& c : v) c *= lambda;
      }
    }
    const double dt = std::abs(energy_distance(xt, yt) - e);
    const double ds = std::abs(energy_distance(xs, ys) - lambda * e);
    worst = std::max({worst, dt, ds});
    o.check(dt <= 1e-9, "translation error " + fmt("%.3g", dt) + at);
    o.check(ds <= 1e-9, "scaling error " + fmt("%.3g", ds) + at);
  }
  if (o.pass) o.detail = "50 fixtures, worst invariance error " + fmt("%.3g", worst);
  return o;
}

double orthonormality_error(const Eigen::MatrixXd& b) {
  return (b.transpose() * b - Eigen::MatrixXd::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff();
}

Outcome pca_lda_checks() {
  Outcome o;
  // PCA: orthonormal basis, exact reconstruction at full rank.
  {
    Rng rng(61);
    EmbeddingDataset ds;
    for (int i = 0; i < 50; ++i) {
      std::vector<double> v(12);
      for (auto& x : v) x = rng.normal() * (1.0 + 0.3 * static_cast<double>(&x - v.data()));
      ds.add("a", v);
    }
    auto m = pca_fit(ds, 12);
    o.check(orthonormality_error(m.basis) <= 1e-8, "PCA basis not orthonormal");
    double worst = 0.0;
    for (const auto& s : ds.samples) {
      const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(s.vector.data(), 12);
      worst = std::max(worst, (m.reconstruct(m.project(s.vector)) - x).cwiseAbs().maxCoeff());
    }
    o.check(worst <= 1e-8, "reconstruction error " + fmt("%.3g", worst));
  }
  // Two blobs in 10-D.
  double separation = 0.0;
  {
    Rng rng(62);
    EmbeddingDataset ds;
    for (int i = 0; i < 100; ++i) {
      std::vector<double> a(10), b(10);
      for (std::size_t j = 0; j < 10; ++j) {
        a[j] = rng.normal();
        b[j] = rng.normal() + (j < 4 ? 4.0 : 0.0);  // Mahalanobis distance 8
      }
      ds.add("a", a);
      ds.add("b", b);
    }
    auto m = lda_fit(ds, 128, 1);
    o.check(orthonormality_error(m.basis) <= 1e-8, "LDA basis not orthonormal");
    std::vector<double> pa, pb;
    for (const auto& s : ds.samples) (s.label == "a" ? pa : pb).push_back(m.project(s.vector)(0));
    auto mean = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); };
    auto ss = [&](const std::vector<double>& v) {
      double s = 0, mv = mean(v);
      for (double x : v) s += (x - mv) * (x - mv);
      return s;
    };
    const double sd = std::sqrt((ss(pa) + ss(pb)) / static_cast<double>(pa.size() + pb.size() - 2));
    separation = std::abs(mean(pa) - mean(pb)) / sd;
    o.check(separation > 5.0, "two-blob separation " + fmt("%.2f", separation) + " SD");
  }
  // 7 classes x 52 samples x 512 dims, PCA to 128 then LDA to 2.
  double t = 0.0;
  {
    Rng rng(63);
    EmbeddingDataset ds;
    for (int c = 0; c < 7; ++c) {
      std::vector<double> center(512);
      for (auto& x : center) x = 0.3 * rng.normal();
      for (int i = 0; i < 52; ++i) {
        auto v = center;
        for (auto& x : v) x += rng.normal();
        ds.add("group" + std::to_string(c), std::move(v));
      }
    }
    const auto t0 = std::chrono::steady_clock::now();
    auto m = lda_fit(ds, 128, 2);
    auto projected = m.project_all(ds);
    t = seconds_since(t0);
    o.check(projected.rows() == 364 && projected.cols() == 2, "projection has the wrong shape");
    o.check(m.pre_pca_dims == 128, "pre-PCA dimension is not 128");
    o.check(orthonormality_error(m.basis) <= 1e-8, "PCA->LDA basis not orthonormal");
    o.check(t < 10.0, "364x512 path took " + fmt("%.2f", t) + " s");
  }
  if (o.pass) o.detail = "two-blob separation " + fmt("%.1f", separation) + " SD, 364x512 path " + fmt("%.2f", t) + " s";
  return o;
}

std::string rule_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::Cycle: return "acyclic";
    case ViolationKind::ConceptCount: return "one_concept";
    case ViolationKind::ConceptOutDegree: return "concept_sink";
    case ViolationKind::RationaleInDegree:
    case ViolationKind::RationaleOutDegree: return "rationale_degree";
    case ViolationKind::IntermediateInDegree:
    case ViolationKind::IntermediateOutDegree: return "intermediate_degree";
    case ViolationKind::Unreachable: return "reaches_concept";
    case ViolationKind::NoRationale: return "has_rationale";
    default: return "other";
  }
}

Outcome logic_graph_suite() {
  Outcome o;
  Rng rng(2024);
  std::size_t valid = 0;
  for (int t = 0; t < 200; ++t) {
    auto inst = oracle::random_logic_instance(rng);
    LogicGraph g;
    for (const auto& n : inst.nodes) g.vertices.push_back({n.id, static_cast<VertexKind>(n.kind), "text " + n.id, {}});
    for (auto [a, b] : inst.edges) g.edges.emplace_back(inst.nodes[a].id, inst.nodes[b].id);
    std::set<std::string> got;
    for (auto k : validate_logic_graph(g).kinds()) got.insert(rule_name(k));
    const auto want = oracle::logic_rules_broken(inst.nodes, inst.edges);
    o.check(got == want, "validator disagrees on graph " + std::to_string(t));
    valid += want.empty();
  }
  // Round trip through the seed graph and back.
  for (std::size_t n = 1; n <= 12; ++n) {
    Statement s;
    s.concept_text = "Concept " + std::to_string(n);
    for (std::size_t i = 0; i < n; ++i) s.rationale.push_back("Rationale " + std::to_string(n - i));
    s.supporting_dois = {"10.4321/b." + std::to_string(n), "10.4321/a." + std::to_string(n)};
    auto back = graph_to_statement(statement_to_seed_graph(s));
    std::sort(s.supporting_dois.begin(), s.supporting_dois.end());
    o.check(back == s, "round trip changed a statement with " + std::to_string(n) + " rationales");
    auto j = to_json(back);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    o.check(keys == std::vector<std::string>{"concept", "supporting_dois", "rationale"}, "statement JSON field set differs");
    o.check(statement_from_json(nlohmann::json::parse(j.dump())) == back, "statement JSON round trip failed");
  }
  if (o.pass) o.detail = "200 graphs (" + std::to_string(valid) + " valid), round trip and schema";
  return o;
}

const char* kMockScript = R"({
  "name": "acceptance-mock",
  "rules": [
    {"tag": "refine", "response": "{{keywords_json}}"},
    {"tag": "weaver", "response": "Joining {{keywords}} exposes a shared mechanism."},
    {"tag": "sketcher", "response": "measure how {{keywords}} interact."},
    {"tag": "combiner", "response": "{{concept}} The goal is to {{goal}}"},
    {"tag": "augment", "response": "{{thesis}} Prior synthetic paper work is acknowledged."},
    {"tag": "graph", "response": {
      "vertices": [
        {"id": "r1", "kind": "rationale", "text": "Synthetic paper evidence links the core terms."},
        {"id": "r2", "kind": "rationale", "text": "Synthetic paper results show the terms co-occur."},
        {"id": "i1", "kind": "intermediate", "text": "The terms form one research front."},
        {"id": "c1", "kind": "concept", "text": "{{thesis}}"}],
      "edges": [["r1", "i1"], ["r2", "i1"], ["i1", "c1"]]}},
    {"tag": "validate", "response": "{\"status\": \"supported\", \"dois\": {{search_dois}}}"},
    {"tag": "review", "response": {"summary": "Plausible.", "validity": ["grounded"], "irrationality": ["small sample", "vague goal"]}},
    {"tag": "meta_review", "response": {"meta_review": [{"option": "C"}, {"option": "D"}]}}
  ]
})";

Outcome pipeline_determinism() {
  Outcome o;
  SynthSpec spec;
  spec.n_papers = 300;
  spec.seed = 7;
  const auto corpus = generate(spec);
  const auto g = build_graph(corpus.records());
  const auto cal = calibrate(g, corpus.records());
  auto once = [&] {
    ScriptedGenerator gen(nlohmann::json::parse(kMockScript));
    CorpusLiteratureSearch lit(corpus);
    PipelineConfig cfg;
    cfg.retry.initial_backoff = std::chrono::milliseconds(0);
    cfg.logical_clock = true;
    cfg.concurrency = 3;
    cfg.seed = 11;
    cfg.max_candidates = 3;
    SearchConfig sc;
    sc.rng_seed = 11;
    sc.require_novelty = true;
    auto res = run_pipeline(cfg, sc, corpus, g, cal, gen, lit);
    std::ostringstream statements, audit;
    for (const auto& s : res.accepted) statements << to_json(s).dump() << "\n";
    res.audit.write_jsonl(audit);
    return std::make_tuple(statements.str(), audit.str(), res.outcomes.size(), res.accepted.size());
  };
  const auto a = once();
  const auto b = once();
  o.check(std::get<2>(a) == 3, "expected 3 candidates, got " + std::to_string(std::get<2>(a)));
  o.check(std::get<3>(a) == 3, "expected 3 accepted statements, got " + std::to_string(std::get<3>(a)));
  o.check(std::get<0>(a) == std::get<0>(b), "statements differ between runs");
  o.check(std::get<1>(a) == std::get<1>(b), "audit logs differ between runs");
  o.check(!std::get<1>(a).empty(), "audit log is empty");

  std::size_t lists = 0;
  for (std::size_t len = 0; len <= 4; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= 5;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<SeverityGrade> grades;
      bool fatal = false;
      for (std::size_t i = 0, c = code; i < len; ++i, c /= 5) {
        grades.push_back({static_cast<Severity>(c % 5), ""});
        fatal = fatal || c % 5 < 2;
      }
      o.check(is_acceptable(grades) == !fatal, "acceptance rule wrong for a grade list of length " + std::to_string(len));
      ++lists;
    }
  }
  if (o.pass) {
    o.detail = std::to_string(std::get<3>(a)) + " statements, " +
               std::to_string(std::count(std::get<1>(a).begin(), std::get<1>(a).end(), '\n')) +
               " audit entries identical; " + std::to_string(lists) + " grade lists";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"graph oracle", graph_oracle},
      {"AUC oracle", auc_oracle},
      {"causality", causality},
      {"planted impact classification", impact_classification_check},
      {"FWCI by EVAL threshold", histogram_check},
      {"random-set classification", random_sets_check},
      {"search oracle", search_oracle},
      {"energy-distance identities", energy_identities},
      {"PCA/LDA", pca_lda_checks},
      {"logic-graph suite", logic_graph_suite},
      {"pipeline determinism", pipeline_determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("[%s] %-30s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
