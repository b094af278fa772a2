#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spacer/corpus.hpp"
#include "spacer/embed.hpp"
#include "spacer/error.hpp"
#include "spacer/generator.hpp"
#include "spacer/generator_http.hpp"
#include "spacer/graph.hpp"
#include "spacer/literature.hpp"
#include "spacer/logicgraph.hpp"
#include "spacer/pipeline.hpp"
#include "spacer/scoring.hpp"
#include "spacer/search.hpp"
#include "spacer/synthgen.hpp"
#include "spacer/validation.hpp"

namespace spacer::cli {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kGenerator = 3 };

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::GeneratorFailure:
    case ErrorCode::MalformedJudgment:
    case ErrorCode::NoValidGraph:
      return kGenerator;
    default:
      return kData;
  }
}

/// Raised for flag combinations CLI11 cannot check by itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Report serialization (shared with tests so CLI output can be compared with
// direct library calls)
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json report_json(const ClassificationReport& r) {
  nlohmann::ordered_json j;
  j["auc"] = r.auc;
  j["ci_low"] = r.ci_low;
  j["ci_high"] = r.ci_high;
  j["n_pos"] = r.n_pos;
  j["n_neg"] = r.n_neg;
  j["seed"] = r.seed;
  return j;
}

inline void write_curve_csv(const RocCurve& c, std::ostream& out) {
  out << "threshold,fpr,tpr\n";
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    out << spacer::detail::fmt_double(c.thresholds[i]) << "," << spacer::detail::fmt_double(c.points[i].fpr) << ","
        << spacer::detail::fmt_double(c.points[i].tpr) << "\n";
  }
}

inline nlohmann::ordered_json histogram_json(const HistogramSet& h) {
  nlohmann::ordered_json j;
  j["sample_size"] = h.sample_size;
  j["bins"] = h.spec.bins;
  j["lo"] = h.spec.lo;
  j["hi"] = h.spec.hi;
  auto one = [](const Histogram& x) {
    nlohmann::ordered_json o;
    if (!std::isnan(x.cut)) o["cut"] = x.cut;
    o["count"] = x.count;
    o["empty"] = x.empty;
    o["mean_log_fwci"] = x.empty ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(x.mean_log_fwci);
    return o;
  };
  j["full"] = one(h.full);
  j["subsets"] = nlohmann::ordered_json::array();
  for (const auto& x : h.by_cut) j["subsets"].push_back(one(x));
  return j;
}

/// Columns: bin_lo, bin_hi, full, then one density column per cut.
inline void write_histogram_csv(const HistogramSet& h, std::ostream& out) {
  const auto edges = h.spec.edges();
  out << "bin_lo,bin_hi,full";
  for (const auto& x : h.by_cut) out << ",eval_ge_" << spacer::detail::fmt_double(x.cut);
  out << "\n";
  for (std::size_t b = 0; b < h.spec.bins; ++b) {
    out << spacer::detail::fmt_double(edges[b]) << "," << spacer::detail::fmt_double(edges[b + 1]) << ","
        << spacer::detail::fmt_double(h.full.density[b]);
    for (const auto& x : h.by_cut) out << "," << spacer::detail::fmt_double(x.density[b]);
    out << "\n";
  }
}

inline nlohmann::ordered_json candidates_json(const std::vector<CandidateSet>& sets) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : sets) {
    arr.push_back({{"keywords", c.keywords}, {"s", c.score.s}, {"raw", c.score.raw}, {"novel", c.novel}});
  }
  return arr;
}

inline nlohmann::ordered_json score_json(const std::vector<std::string>& keywords, const ImpactScore& s,
                                         const Calibration& cal) {
  nlohmann::ordered_json j;
  j["keywords"] = keywords;
  j["s"] = s.s;
  j["raw"] = s.raw;
  j["c"] = cal.c;
  return j;
}

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

namespace detail {

inline Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open corpus " + path);
  return ingest(in);
}

inline KeywordGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open graph " + path);
  return read_graph_dump(in);
}

inline EmbeddingDataset load_embeddings(const std::string& path, bool normalize) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open embeddings " + path);
  auto ds = read_embedding_csv(in);
  return normalize ? unit_normalized(std::move(ds)) : ds;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + path);
  f << content;
  if (!f) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace detail

struct Globals {
  std::string config;
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
  std::string out;
};

/// Runs the command line in `args` (without the program name). Data goes to
/// `out` (or --out), diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Keyword co-occurrence graph toolkit: scoring, search, validation statistics, embeddings and an idea pipeline"};
  app.name("spacer");
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Configuration file (key = value)")->check(CLI::ExistingFile);
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed (required by randomized subcommands)");
  app.add_option("--out", g.out, "Write data output to this file instead of stdout");

  std::function<void(std::ostream&)> action;
  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    auto* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };
  auto need_seed = [&](const std::string& what) {
    if (!g.seed) throw UsageError(what + " is randomized and requires --seed");
    return *g.seed;
  };
  auto config_map = [&]() {
    return g.config.empty() ? std::map<std::string, std::string>{} : load_kv_config(g.config);
  };

  // ingest
  std::string input;
  auto* ingest_cmd = sub(&app, "ingest", "Validate and normalize a JSON-Lines corpus; emit it in date order");
  ingest_cmd->add_option("input", input, "Corpus JSON-Lines file")->required()->check(CLI::ExistingFile);
  ingest_cmd->callback([&] {
    action = [&](std::ostream& o) {
      auto c = detail::load_corpus(input);
      export_jsonl(c, o);
      err << "ingested " << c.size() << " records\n";
    };
  });

  // synth
  SynthSpec spec;
  auto* synth_cmd = sub(&app, "synth", "Generate a planted-structure synthetic corpus (JSON-Lines)");
  synth_cmd->add_option("--n", spec.n_papers, "Number of papers")->capture_default_str();
  synth_cmd->add_option("--vocab", spec.vocab_size, "Vocabulary size")->capture_default_str();
  synth_cmd->add_option("--core", spec.core_size, "Planted core size")->capture_default_str();
  synth_cmd->add_option("--high-frac", spec.high_frac, "Fraction of high-impact papers")->capture_default_str();
  synth_cmd->add_option("--kw-min", spec.keywords_min, "Minimum keywords per paper")->capture_default_str();
  synth_cmd->add_option("--kw-max", spec.keywords_max, "Maximum keywords per paper")->capture_default_str();
  synth_cmd->callback([&] {
    action = [&](std::ostream& o) {
      spec.seed = need_seed("synth");
      export_jsonl(generate(spec), o);
    };
  });

  // graph build
  std::string corpus_path;
  auto* graph_cmd = sub(&app, "graph", "Keyword graph commands");
  graph_cmd->require_subcommand(1);
  auto* graph_build = sub(graph_cmd, "build", "Build the keyword co-occurrence graph and write a text dump");
  graph_build->add_option("--corpus", corpus_path, "Corpus JSON-Lines file")->required()->check(CLI::ExistingFile);
  graph_build->callback([&] {
    action = [&](std::ostream& o) {
      auto c = detail::load_corpus(corpus_path);
      auto gr = build_graph(c.records());
      write_graph_dump(gr, o);
      err << "graph: " << gr.vertex_count() << " vertices, " << gr.edge_count() << " edges\n";
    };
  });

  // score
  std::string graph_path;
  std::string keywords_arg;
  std::string doi_arg;
  auto* score_cmd = sub(&app, "score", "Score a keyword set on the whole-corpus graph, or EVAL a paper causally");
  score_cmd->add_option("--corpus", corpus_path, "Corpus JSON-Lines file")->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--graph", graph_path, "Precomputed graph dump (default: build from corpus)")->check(CLI::ExistingFile);
  auto* kw_opt = score_cmd->add_option("--keywords", keywords_arg, "Comma-separated keyword set");
  auto* doi_opt = score_cmd->add_option("--doi", doi_arg, "EVAL this paper against only earlier papers");
  kw_opt->excludes(doi_opt);
  score_cmd->callback([&] {
    action = [&](std::ostream& o) {
      auto c = detail::load_corpus(corpus_path);
      if (!doi_arg.empty()) {
        const auto id = c.id_of(doi_arg);
        auto s = eval_paper(c, id);
        auto j = score_json(c.at(id).keywords, s, calibrate_structural(c.slice_before(id)));
        j["doi"] = doi_arg;
        o << j.dump(2) << "\n";
        return;
      }
      if (keywords_arg.empty()) throw UsageError("score needs --keywords or --doi");
      auto gr = graph_path.empty() ? build_graph(c.records()) : detail::load_graph(graph_path);
      auto cal = calibrate(gr, c.records());
      auto ks = canonical_set(normalize_keyword_list(detail::split_list(keywords_arg)));
      o << score_json(ks, score_set(gr, ks, cal), cal).dump(2) << "\n";
    };
  });

  // search
  SearchConfig search_cfg;
  auto* search_cmd = sub(&app, "search", "Search for novel, high-scoring keyword sets");
  search_cmd->add_option("--corpus", corpus_path, "Corpus JSON-Lines file")->required()->check(CLI::ExistingFile);
  search_cmd->add_option("--graph", graph_path, "Precomputed graph dump")->check(CLI::ExistingFile);
  search_cmd->add_option("--size-min", search_cfg.set_size_min, "Smallest set size")->capture_default_str();
  search_cmd->add_option("--size-max", search_cfg.set_size_max, "Largest set size")->capture_default_str();
  search_cmd->add_option("--beam", search_cfg.beam_width, "Beam width")->capture_default_str();
  search_cmd->add_option("--iters", search_cfg.iterations, "Hill-climbing rounds")->capture_default_str();
  search_cmd->add_option("--min-score", search_cfg.min_score, "Drop sets scoring below this")->capture_default_str();
  search_cmd->add_flag("--novel", search_cfg.require_novelty, "Only sets no single paper already contains");
  search_cmd->add_option("--max-results", search_cfg.max_results, "Result count")->capture_default_str();
  search_cmd->callback([&] {
    action = [&](std::ostream& o) {
      search_cfg.rng_seed = need_seed("search");
      auto c = detail::load_corpus(corpus_path);
      auto gr = graph_path.empty() ? build_graph(c.records()) : detail::load_graph(graph_path);
      auto cal = calibrate(gr, c.records());
      o << candidates_json(search_sets(gr, c, cal, search_cfg)).dump(2) << "\n";
    };
  });

  // validate
  auto* validate_cmd = sub(&app, "validate", "Statistical validation experiments");
  validate_cmd->require_subcommand(1);
  ImpactClassificationConfig roc_cfg;
  std::string curve_csv;
  auto* roc_cmd = sub(validate_cmd, "roc", "EVAL-based high- vs low-impact classification (ROC/AUC, bootstrap CI)");
  roc_cmd->add_option("--corpus", corpus_path, "Corpus JSON-Lines file")->required()->check(CLI::ExistingFile);
  roc_cmd->add_option("--high-cut", roc_cfg.high_cut, "High-impact FWCI floor")->capture_default_str();
  roc_cmd->add_option("--low-cut", roc_cfg.low_cut, "Low-impact FWCI ceiling")->capture_default_str();
  roc_cmd->add_option("--n", roc_cfg.n_per_class, "Papers per class")->capture_default_str();
  roc_cmd->add_option("--resamples", roc_cfg.bootstrap.resamples, "Bootstrap resamples")->capture_default_str();
  roc_cmd->add_option("--level", roc_cfg.bootstrap.level, "Confidence level")->capture_default_str();
  roc_cmd->add_option("--curve-csv", curve_csv, "Write ROC points to this CSV");
  roc_cmd->callback([&] {
    action = [&](std::ostream& o) {
      roc_cfg.seed = need_seed("validate roc");
      roc_cfg.jobs = g.jobs;
      auto r = impact_classification(detail::load_corpus(corpus_path), roc_cfg);
      o << report_json(r).dump(2) << "\n";
      if (!curve_csv.empty()) {
        std::ostringstream s;
        write_curve_csv(r.curve, s);
        detail::write_file(curve_csv, s.str());
      }
    };
  });

  FwciHistogramConfig hist_cfg;
  std::string cuts_arg;
  std::string hist_csv;
  auto* hist_cmd = sub(validate_cmd, "fwci-hist", "Histograms of log2(FWCI+1) for EVAL-threshold subsets");
  hist_cmd->add_option("--corpus", corpus_path, "Corpus JSON-Lines file")->required()->check(CLI::ExistingFile);
  hist_cmd->add_option("--sample-n", hist_cfg.sample_n, "Papers to sample")->capture_default_str();
  hist_cmd->add_option("--cuts", cuts_arg, "Comma-separated EVAL cuts (default 0.8,0.9,0.95,0.99)");
  hist_cmd->add_option("--bins", hist_cfg.bins.bins, "Histogram bins")->capture_default_str();
  hist_cmd->add_option("--csv", hist_csv, "Write bin edges and densities to this CSV");
  hist_cmd->callback([&] {
    action = [&](std::ostream& o) {
      hist_cfg.seed = need_seed("validate fwci-hist");
      if (!cuts_arg.empty()) {
        hist_cfg.eval_cuts.clear();
        for (const auto& c : detail::split_list(cuts_arg)) {
          try {
            hist_cfg.eval_cuts.push_back(std::stod(c));
          } catch (const std::exception&) {
            throw UsageError("bad cut value '" + c + "'");
          }
        }
      }
      auto h = fwci_threshold_histograms(detail::load_corpus(corpus_path), hist_cfg);
      o << histogram_json(h).dump(2) << "\n";
      for (const auto& x : h.by_cut) {
        if (x.empty) err << "warning: no paper has EVAL >= " << x.cut << "\n";
      }
      if (!hist_csv.empty()) {
        std::ostringstream s;
        write_histogram_csv(h, s);
        detail::write_file(hist_csv, s.str());
      }
    };
  });

  RandomSetConfig rand_cfg;
  auto* rand_cmd = sub(validate_cmd, "random-sets", "Paper keyword sets vs. size-matched random sets");
  rand_cmd->add_option("--corpus", corpus_path, "Corpus JSON-Lines file")->required()->check(CLI::ExistingFile);
  rand_cmd->add_option("--graph", graph_path, "Precomputed graph dump")->check(CLI::ExistingFile);
  rand_cmd->add_option("--n", rand_cfg.n, "Sets per class")->capture_default_str();
  rand_cmd->add_option("--resamples", rand_cfg.bootstrap.resamples, "Bootstrap resamples")->capture_default_str();
  rand_cmd->add_option("--curve-csv", curve_csv, "Write ROC points to this CSV");
  rand_cmd->callback([&] {
    action = [&](std::ostream& o) {
      rand_cfg.seed = need_seed("validate random-sets");
      rand_cfg.jobs = g.jobs;
      auto c = detail::load_corpus(corpus_path);
      auto gr = graph_path.empty() ? build_graph(c.records()) : detail::load_graph(graph_path);
      auto r = random_set_experiment(c, gr, calibrate(gr, c.records()), rand_cfg);
      o << report_json(r).dump(2) << "\n";
      if (!curve_csv.empty()) {
        std::ostringstream s;
        write_curve_csv(r.curve, s);
        detail::write_file(curve_csv, s.str());
      }
    };
  });

  // embed
  auto* embed_cmd = sub(&app, "embed", "Embedding-space analysis (input CSV: label,v0,v1,...)");
  embed_cmd->require_subcommand(1);
  std::string emb_path;
  bool normalize = false;
  std::size_t pca_k = 2;
  auto* pca_cmd = sub(embed_cmd, "pca", "Project onto the top-k principal components (CSV label,p0,...)");
  pca_cmd->add_option("--input", emb_path, "Embedding CSV")->required()->check(CLI::ExistingFile);
  pca_cmd->add_option("--k", pca_k, "Components")->capture_default_str();
  pca_cmd->add_flag("--normalize", normalize, "Scale vectors to unit norm first");
  pca_cmd->callback([&] {
    action = [&](std::ostream& o) {
      auto ds = detail::load_embeddings(emb_path, normalize);
      write_projection_csv(ds, pca_fit(ds, pca_k), o);
    };
  });
  std::size_t pre_k = 128;
  std::size_t lda_dims = 2;
  auto* lda_cmd = sub(embed_cmd, "lda", "PCA then Fisher LDA projection (CSV label,p0,...)");
  lda_cmd->add_option("--input", emb_path, "Embedding CSV")->required()->check(CLI::ExistingFile);
  lda_cmd->add_option("--pre-k", pre_k, "PCA dimensions before LDA")->capture_default_str();
  lda_cmd->add_option("--dims", lda_dims, "Output dimensions")->capture_default_str();
  lda_cmd->add_flag("--normalize", normalize, "Scale vectors to unit norm first");
  lda_cmd->callback([&] {
    action = [&](std::ostream& o) {
      auto ds = detail::load_embeddings(emb_path, normalize);
      auto m = lda_fit(ds, pre_k, lda_dims);
      if (m.low_discrimination) err << "warning: classes are barely separable (low discrimination)\n";
      write_projection_csv(ds, m, o);
    };
  });
  auto* energy_cmd = sub(embed_cmd, "energy", "Energy-distance matrix between classes (CSV)");
  energy_cmd->add_option("--input", emb_path, "Embedding CSV")->required()->check(CLI::ExistingFile);
  energy_cmd->add_flag("--normalize", normalize, "Scale vectors to unit norm first");
  energy_cmd->callback([&] {
    action = [&](std::ostream& o) {
      write_matrix_csv(class_distance_matrix(detail::load_embeddings(emb_path, normalize), g.jobs), o);
    };
  });

  // pipeline
  auto* pipe_cmd = sub(&app, "pipeline", "Idea pipeline over a text generator");
  pipe_cmd->require_subcommand(1);
  std::size_t candidates = 3;
  std::string audit_path;
  std::string outcomes_path;
  bool logical_clock = false;
  auto* run_cmd = sub(pipe_cmd, "run", "Search candidate sets, then refine, reveal, scaffold and assess each");
  run_cmd->add_option("--corpus", corpus_path, "Corpus JSON-Lines file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--graph", graph_path, "Precomputed graph dump")->check(CLI::ExistingFile);
  run_cmd->add_option("--candidates", candidates, "Keyword sets to process")->capture_default_str();
  run_cmd->add_option("--audit", audit_path, "Write the audit log (JSON-Lines) here");
  run_cmd->add_option("--outcomes", outcomes_path, "Write per-candidate outcomes (JSON) here");
  run_cmd->add_flag("--logical-clock", logical_clock, "Deterministic audit timestamps");
  auto pipeline_config = [&](const std::map<std::string, std::string>& kv) {
    PipelineConfig pc;
    auto num = [&](const std::string& key, auto& field) {
      if (auto it = kv.find(key); it != kv.end()) {
        try {
          field = static_cast<std::decay_t<decltype(field)>>(std::stod(it->second));
        } catch (const std::exception&) {
          throw UsageError("config key '" + key + "' must be numeric");
        }
      }
    };
    num("max_iterations", pc.max_iterations);
    num("literature_limit", pc.literature_limit);
    num("temperature", pc.temperature);
    num("retry_attempts", pc.retry.attempts);
    long long backoff = pc.retry.initial_backoff.count();
    num("retry_backoff_ms", backoff);
    pc.retry.initial_backoff = std::chrono::milliseconds(backoff);
    pc.concurrency = g.jobs;
    pc.logical_clock = logical_clock;
    return pc;
  };
  auto load_generator = [&](const std::map<std::string, std::string>& kv) {
    if (g.config.empty()) throw UsageError("pipeline commands need --config naming a generator");
    return make_generator(kv, std::filesystem::path(g.config).parent_path());
  };
  run_cmd->callback([&] {
    action = [&](std::ostream& o) {
      const auto kv = config_map();
      auto gen = load_generator(kv);
      auto pc = pipeline_config(kv);
      pc.seed = need_seed("pipeline run");
      pc.max_candidates = candidates;
      SearchConfig sc;
      sc.rng_seed = *pc.seed;
      sc.require_novelty = true;
      sc.max_results = std::max<std::size_t>(candidates, 1);
      auto c = detail::load_corpus(corpus_path);
      auto gr = graph_path.empty() ? build_graph(c.records()) : detail::load_graph(graph_path);
      CorpusLiteratureSearch lit(c);
      auto res = run_pipeline(pc, sc, c, gr, calibrate(gr, c.records()), *gen, lit);
      auto arr = nlohmann::ordered_json::array();
      for (const auto& s : res.accepted) arr.push_back(to_json(s));
      o << arr.dump(2) << "\n";
      for (const auto& oc : res.outcomes) {
        err << oc.id << ": " << to_string(oc.status) << (oc.error.empty() ? "" : " (" + oc.error + ")") << "\n";
      }
      if (!audit_path.empty()) {
        std::ostringstream s;
        res.audit.write_jsonl(s);
        detail::write_file(audit_path, s.str());
      }
      if (!outcomes_path.empty()) {
        auto oj = nlohmann::ordered_json::array();
        for (const auto& oc : res.outcomes) oj.push_back(outcome_json(oc));
        detail::write_file(outcomes_path, oj.dump(2) + "\n");
      }
    };
  });

  std::string pairs_path;
  auto* recon_cmd = sub(pipe_cmd, "reconstruct", "Weaver-only thesis reconstruction, optionally judged against originals");
  auto* recon_kw = recon_cmd->add_option("--keywords", keywords_arg, "Comma-separated keyword set");
  auto* recon_pairs = recon_cmd->add_option(
      "--pairs", pairs_path, "JSON-Lines of {group, keywords, original}: reconstruct and judge each (table report)");
  recon_pairs->check(CLI::ExistingFile);
  recon_kw->excludes(recon_pairs);
  recon_cmd->callback([&] {
    action = [&](std::ostream& o) {
      const auto kv = config_map();
      auto gen = load_generator(kv);
      auto pc = pipeline_config(kv);
      pc.seed = g.seed;
      if (!keywords_arg.empty()) {
        Session session(*gen, pc, "reconstruct");
        o << reconstruct_thesis(normalize_keyword_list(detail::split_list(keywords_arg)), session) << "\n";
        return;
      }
      if (pairs_path.empty()) throw UsageError("reconstruct needs --keywords or --pairs");
      std::ifstream in(pairs_path);
      std::vector<ReconstructionPair> pairs;
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(line);
          ReconstructionPair p;
          p.group = j.value("group", std::string("all"));
          p.original = j.at("original").get<std::string>();
          Session session(*gen, pc, "pair-" + std::to_string(line_no));
          p.reconstructed =
              reconstruct_thesis(normalize_keyword_list(j.at("keywords").get<std::vector<std::string>>()), session);
          pairs.push_back(std::move(p));
        } catch (const nlohmann::json::exception& e) {
          throw ParseError(line_no, e.what());
        }
      }
      auto rep = judge_reconstructions(pairs, *gen);
      o << rep.to_json().dump(2) << "\n";
      err << rep.to_table();
    };
  });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (g.out.empty()) {
      action(out);
    } else {
      std::ostringstream buf;
      action(buf);
      detail::write_file(g.out, buf.str());
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kData;
  }
  return kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args), out, err);
}

}  // namespace spacer::cli
