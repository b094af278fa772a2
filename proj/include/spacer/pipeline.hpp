#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "spacer/corpus.hpp"
#include "spacer/error.hpp"
#include "spacer/generator.hpp"
#include "spacer/graph.hpp"
#include "spacer/literature.hpp"
#include "spacer/logicgraph.hpp"
#include "spacer/parallel.hpp"
#include "spacer/prompts.hpp"
#include "spacer/scoring.hpp"
#include "spacer/search.hpp"

namespace spacer {

struct RetryPolicy {
  std::size_t attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
  double multiplier = 2.0;
};

struct PipelineConfig {
  RetryPolicy retry;
  std::size_t max_iterations = 5;     // graph rounds in scaffolding
  std::size_t literature_limit = 5;   // hits per literature query
  std::size_t concurrency = 1;        // candidates processed at once
  double temperature = 0.0;
  std::optional<std::uint64_t> seed;  // forwarded to every generator request
  bool logical_clock = false;         // deterministic timestamps for reproducible audit logs
  std::size_t max_candidates = 3;     // searched sets passed to run_pipeline stages
};

// ---------------------------------------------------------------------------
// Audit log
// ---------------------------------------------------------------------------

/// One entry per generator call.
struct AuditEntry {
  std::size_t seq = 0;
  std::string candidate;
  std::string stage;
  std::size_t attempt = 1;
  std::string timestamp;
  std::string system_prompt;
  std::string user_prompt;
  std::string response_digest;  // empty when the call failed
  std::string decision;

  nlohmann::ordered_json to_json() const {
    return {{"seq", seq},
            {"candidate", candidate},
            {"stage", stage},
            {"attempt", attempt},
            {"timestamp", timestamp},
            {"system_prompt", system_prompt},
            {"user_prompt", user_prompt},
            {"response_digest", response_digest},
            {"decision", decision}};
  }
};

namespace detail {

inline std::string iso_timestamp(std::chrono::system_clock::time_point tp) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(tp.time_since_epoch()).count();
  const std::time_t secs = static_cast<std::time_t>(ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms % 1000));
  return buf;
}

}  // namespace detail

/// Append-only log. Candidates record into private trails that a single
/// appender adds here in candidate order, so the log is independent of scheduling.
class AuditLog {
 public:
  explicit AuditLog(bool logical_clock = false) : logical_(logical_clock) {}

  void append(std::vector<AuditEntry> trail) {
    for (auto& e : trail) {
      e.seq = entries_.size();
      // The logical clock ticks one second per entry from the Unix epoch.
      if (logical_) e.timestamp = detail::iso_timestamp(std::chrono::system_clock::time_point(std::chrono::seconds(e.seq)));
      entries_.push_back(std::move(e));
    }
  }

  const std::vector<AuditEntry>& entries() const { return entries_; }

  void write_jsonl(std::ostream& out) const {
    for (const auto& e : entries_) out << e.to_json().dump() << "\n";
  }

 private:
  bool logical_;
  std::vector<AuditEntry> entries_;
};

/// Generator access for one candidate: retries, empty-response checks and the
/// candidate's audit trail.
class Session {
 public:
  Session(TextGenerator& gen, const PipelineConfig& cfg, std::string candidate)
      : gen_(gen), cfg_(cfg), candidate_(std::move(candidate)) {}

  /// Calls the generator up to retry.attempts times; an exception or an
  /// all-whitespace response counts as a failed attempt. Returns the trimmed text.
  std::string call(GeneratorRequest req) {
    req.temperature = cfg_.temperature;
    if (cfg_.seed) req.seed = cfg_.seed;
    req.validate();
    auto backoff = cfg_.retry.initial_backoff;
    std::string last_error;
    const std::size_t attempts = std::max<std::size_t>(1, cfg_.retry.attempts);
    for (std::size_t attempt = 1; attempt <= attempts; ++attempt) {
      AuditEntry e;
      e.candidate = candidate_;
      e.stage = req.tag;
      e.attempt = attempt;
      e.timestamp = detail::iso_timestamp(std::chrono::system_clock::now());
      e.system_prompt = req.system_prompt;
      e.user_prompt = req.user_prompt;
      try {
        std::string text = trim(gen_.generate(req));
        if (text.empty()) {
          last_error = "empty response";
        } else {
          e.response_digest = digest(text);
          e.decision = "ok";
          trail_.push_back(std::move(e));
          return text;
        }
      } catch (const std::exception& ex) {
        last_error = ex.what();
      }
      e.decision = "failed: " + last_error;
      trail_.push_back(std::move(e));
      if (attempt < attempts && backoff.count() > 0) {
        std::this_thread::sleep_for(backoff);
        backoff = std::chrono::milliseconds(static_cast<long long>(static_cast<double>(backoff.count()) * cfg_.retry.multiplier));
      }
    }
    throw Error(ErrorCode::GeneratorFailure,
                "stage '" + req.tag + "' failed after " + std::to_string(attempts) + " attempts: " + last_error);
  }

  /// Overrides the decision recorded for the most recent call.
  void decide(std::string decision) {
    if (!trail_.empty()) trail_.back().decision = std::move(decision);
  }

  const PipelineConfig& config() const { return cfg_; }
  const std::string& candidate() const { return candidate_; }
  TextGenerator& generator() { return gen_; }

  std::vector<AuditEntry>& trail() { return trail_; }
  std::vector<AuditEntry> take_trail() { return std::move(trail_); }

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }

 private:
  TextGenerator& gen_;
  const PipelineConfig& cfg_;
  std::string candidate_;
  std::vector<AuditEntry> trail_;
};

namespace detail {

/// Parses the first JSON value of the given kind ('{' or '['), tolerating prose
/// or code fences around it.
inline std::optional<nlohmann::json> extract_json(const std::string& text, char open) {
  const char close = open == '{' ? '}' : ']';
  const auto b = text.find(open);
  const auto e = text.rfind(close);
  if (b == std::string::npos || e == std::string::npos || e < b) return std::nullopt;
  try {
    return nlohmann::json::parse(text.substr(b, e - b + 1));
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

inline std::map<std::string, std::string> keyword_vars(const std::vector<std::string>& keywords) {
  std::string list;
  for (const auto& k : keywords) list += (list.empty() ? "" : ", ") + k;
  return {{"keywords", list}, {"keywords_json", nlohmann::json(keywords).dump()}};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Revealing
// ---------------------------------------------------------------------------

struct RefineResult {
  std::vector<std::string> keywords;
  bool warning = false;  // generator output rejected; keywords returned unchanged
  std::string note;
};

/// Asks the generator to vet the set. The answer must be a JSON string array
/// of 2+ keywords whose size is within 25% of the input; otherwise the input is
/// returned with a warning.
inline RefineResult refine_keywords(const std::vector<std::string>& keywords, Session& session) {
  if (keywords.size() < 2) throw Error(ErrorCode::SetTooSmall, "refinement needs at least 2 keywords");
  const std::string text = session.call(make_request("refine", prompts::kRefine, detail::keyword_vars(keywords)));
  auto fallback = [&](std::string why) {
    session.decide("kept input: " + why);
    return RefineResult{keywords, true, std::move(why)};
  };
  auto parsed = detail::extract_json(text, '[');
  if (!parsed || !parsed->is_array()) return fallback("response is not a JSON array");
  std::vector<std::string> out;
  for (const auto& item : *parsed) {
    if (!item.is_string()) return fallback("array holds a non-string");
    std::string k;
    try {
      k = normalize_keyword(item.get<std::string>());
    } catch (const Error&) {
      return fallback("empty keyword");
    }
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(std::move(k));
  }
  const double n = static_cast<double>(keywords.size());
  const double m = static_cast<double>(out.size());
  if (out.size() < 2 || m < 0.75 * n || m > 1.25 * n) {
    return fallback("size " + std::to_string(out.size()) + " outside 25% of " + std::to_string(keywords.size()));
  }
  session.decide("refined to " + std::to_string(out.size()) + " keywords");
  return {std::move(out), false, {}};
}

struct Thesis {
  std::string text;
  std::vector<std::string> source_keywords;
  std::string concept_seed;  // Weaver
  std::string goal_seed;     // Sketcher

  bool operator==(const Thesis&) const = default;
};

/// Weaver and Sketcher run concurrently; the combiner merges their outputs.
inline Thesis reveal(const std::vector<std::string>& keywords, Session& session) {
  if (keywords.size() < 2) throw Error(ErrorCode::SetTooSmall, "revealing needs at least 2 keywords");
  const auto vars = detail::keyword_vars(keywords);
  Session weaver(session.generator(), session.config(), session.candidate());
  Session sketcher(session.generator(), session.config(), session.candidate());
  auto concept_future = std::async(std::launch::async, [&] { return weaver.call(make_request("weaver", prompts::kWeaver, vars)); });
  std::string goal;
  std::exception_ptr sketch_error;
  try {
    goal = sketcher.call(make_request("sketcher", prompts::kSketcher, vars));
  } catch (...) {
    sketch_error = std::current_exception();
  }
  std::string concept_text;
  std::exception_ptr weave_error;
  try {
    concept_text = concept_future.get();
  } catch (...) {
    weave_error = std::current_exception();
  }
  // Fixed order in the trail: Weaver calls, then Sketcher calls.
  for (auto* s : {&weaver, &sketcher}) {
    auto t = s->take_trail();
    session.trail().insert(session.trail().end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
  }
  if (weave_error) std::rethrow_exception(weave_error);
  if (sketch_error) std::rethrow_exception(sketch_error);

  Thesis t;
  t.source_keywords = keywords;
  t.concept_seed = concept_text;
  t.goal_seed = goal;
  t.text = session.call(make_request("combiner", prompts::kCombiner, {{"concept", concept_text}, {"goal", goal}}));
  return t;
}

/// Weaver-only generation used by the reconstruction experiment.
inline std::string reconstruct_thesis(const std::vector<std::string>& keywords, Session& session) {
  if (keywords.size() < 2) throw Error(ErrorCode::SetTooSmall, "reconstruction needs at least 2 keywords");
  return session.call(make_request("weaver", prompts::kWeaver, detail::keyword_vars(keywords)));
}

// ---------------------------------------------------------------------------
// Scaffolding
// ---------------------------------------------------------------------------

struct ScaffoldResult {
  Statement statement;
  LogicGraph graph;
  std::string augmented_thesis;
  std::size_t rounds = 0;
  double validated_fraction = 0.0;
};

namespace detail {

inline std::string format_hits(const std::vector<LiteratureHit>& hits) {
  if (hits.empty()) return "(no results)";
  std::string out;
  char rel[32];
  for (const auto& h : hits) {
    std::snprintf(rel, sizeof rel, "%.3f", h.relevance);
    out += "- " + h.doi + " | " + h.title + " | relevance " + rel + "\n";
  }
  out.pop_back();
  return out;
}

inline std::string hit_dois(const std::vector<LiteratureHit>& hits) {
  std::vector<std::string> d;
  for (const auto& h : hits) d.push_back(h.doi);
  return nlohmann::json(d).dump();
}

struct RationaleCheck {
  bool supported = false;
  std::vector<std::string> dois;
};

/// Literature check of one proposition. Only DOIs that the search actually
/// returned are kept; a rationale counts as validated when it is "supported"
/// with at least one such DOI.
inline RationaleCheck check_rationale(const std::string& proposition, Session& session, LiteratureSearch& lit) {
  const auto hits = lit.search(proposition, session.config().literature_limit);
  const std::string text = session.call(make_request(
      "validate", prompts::kRationaleValidation,
      {{"proposition", proposition}, {"search_results", format_hits(hits)}, {"search_dois", hit_dois(hits)}}));
  RationaleCheck out;
  auto parsed = extract_json(text, '{');
  if (!parsed || !parsed->is_object()) {
    session.decide("inconclusive: malformed validation response");
    return out;
  }
  const std::string status = parsed->value("status", std::string());
  std::set<std::string> allowed;
  for (const auto& h : hits) allowed.insert(h.doi);
  std::set<std::string> dois;
  if (auto it = parsed->find("dois"); it != parsed->end() && it->is_array()) {
    for (const auto& d : *it) {
      if (d.is_string() && allowed.count(d.get<std::string>()) && is_valid_doi(d.get<std::string>())) {
        dois.insert(d.get<std::string>());
      }
    }
  }
  out.supported = status == "supported" && !dois.empty();
  if (out.supported) out.dois.assign(dois.begin(), dois.end());
  session.decide(out.supported ? "supported by " + std::to_string(out.dois.size()) + " DOIs"
                               : "not validated (status '" + status + "')");
  return out;
}

}  // namespace detail

/// Augmentation round, then up to max_iterations graph rounds. A round's graph
/// is used only if it passes validate_logic_graph; its rationales are then
/// checked against the literature. Iteration stops once every rationale is
/// validated or the validated fraction stops improving; the best graph wins.
inline ScaffoldResult scaffold(const Thesis& thesis, Session& session, LiteratureSearch& lit) {
  if (thesis.text.empty() || thesis.source_keywords.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "thesis needs text and at least 2 keywords");
  }
  const auto& cfg = session.config();
  ScaffoldResult best;
  std::string query;
  for (const auto& k : thesis.source_keywords) query += (query.empty() ? "" : " ") + k;
  const auto background = lit.search(query, cfg.literature_limit);
  best.augmented_thesis = session.call(make_request(
      "augment", prompts::kAugmentation, {{"thesis", thesis.text}, {"literature", detail::format_hits(background)}}));

  std::string previous = "(none)";
  std::string feedback = "(none)";
  double best_fraction = -1.0;
  std::optional<LogicGraph> best_graph;
  for (std::size_t round = 1; round <= std::max<std::size_t>(1, cfg.max_iterations); ++round) {
    best.rounds = round;
    const std::string text = session.call(make_request(
        "graph", prompts::kGraphGeneration,
        {{"thesis", best.augmented_thesis}, {"previous_graph", previous}, {"feedback", feedback}}));
    auto parsed = detail::extract_json(text, '{');
    LogicGraph g;
    try {
      if (!parsed) throw Error(ErrorCode::InvalidGraph, "response holds no JSON object");
      g = logic_graph_from_json(*parsed);
    } catch (const Error& e) {
      session.decide(std::string("rejected: ") + e.what());
      feedback = std::string("The previous output could not be parsed: ") + e.what();
      continue;
    }
    const auto check = validate_logic_graph(g);
    previous = to_json(g).dump(2);
    if (!check.ok()) {
      session.decide("invalid graph: " + check.summary());
      feedback = "The graph violates these rules: " + check.summary();
      continue;
    }
    session.decide("valid graph");

    std::size_t validated = 0;
    std::size_t total = 0;
    std::string unsupported;
    for (auto& v : g.vertices) {
      if (v.kind != VertexKind::Rationale) continue;
      ++total;
      auto result = detail::check_rationale(v.text, session, lit);
      v.supporting_dois = result.dois;
      if (result.supported) {
        ++validated;
      } else {
        unsupported += "\n- " + v.id + ": " + v.text;
      }
    }
    const double fraction = static_cast<double>(validated) / static_cast<double>(total);
    previous = to_json(g).dump(2);
    feedback = unsupported.empty() ? "(none)" : "These rationales lack literature support:" + unsupported;
    if (fraction <= best_fraction) break;
    best_fraction = fraction;
    best_graph = std::move(g);
    if (fraction >= 1.0) break;
  }
  if (!best_graph) {
    throw Error(ErrorCode::NoValidGraph, "no valid logic graph after " + std::to_string(best.rounds) + " rounds");
  }
  best.graph = std::move(*best_graph);
  best.validated_fraction = best_fraction;
  best.statement = graph_to_statement(best.graph);
  return best;
}

// ---------------------------------------------------------------------------
// Assessment
// ---------------------------------------------------------------------------

struct Critique {
  std::string summary;
  std::vector<std::string> validity;
  std::vector<std::string> irrationality;

  bool operator==(const Critique&) const = default;
};

enum class Severity { A, B, C, D, E };

inline char to_char(Severity s) { return static_cast<char>('A' + static_cast<int>(s)); }

inline Severity parse_severity(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  if (b == std::string_view::npos || e != b) throw Error(ErrorCode::MalformedJudgment, "bad severity '" + std::string(s) + "'");
  const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s[b])));
  if (c < 'A' || c > 'E') throw Error(ErrorCode::MalformedJudgment, "bad severity '" + std::string(s) + "'");
  return static_cast<Severity>(c - 'A');
}

struct SeverityGrade {
  Severity option = Severity::E;
  std::string rationale;

  bool operator==(const SeverityGrade&) const = default;
};

/// A Statement clears assessment when no irrationality is graded Fatal or Serious.
inline bool is_acceptable(const std::vector<SeverityGrade>& grades) {
  return std::none_of(grades.begin(), grades.end(),
                      [](const SeverityGrade& g) { return g.option == Severity::A || g.option == Severity::B; });
}

struct Verdict {
  bool accepted = false;
  std::vector<SeverityGrade> grades;
  Critique critique;
};

namespace detail {

inline Critique parse_critique(const std::string& text) {
  auto j = extract_json(text, '{');
  if (!j || !j->is_object()) throw Error(ErrorCode::MalformedJudgment, "review is not a JSON object");
  Critique c;
  try {
    c.summary = j->at("summary").get<std::string>();
    c.validity = j->value("validity", std::vector<std::string>{});
    c.irrationality = j->value("irrationality", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedJudgment, std::string("malformed review: ") + e.what());
  }
  if (c.summary.empty()) throw Error(ErrorCode::MalformedJudgment, "review summary is empty");
  return c;
}

inline std::vector<SeverityGrade> parse_grades(const std::string& text, std::size_t expected) {
  auto j = extract_json(text, '{');
  if (!j || !j->is_object()) throw Error(ErrorCode::MalformedJudgment, "meta-review is not a JSON object");
  std::vector<SeverityGrade> grades;
  try {
    for (const auto& g : j->at("meta_review")) {
      grades.push_back({parse_severity(g.at("option").get<std::string>()), g.value("rationale", std::string())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedJudgment, std::string("malformed meta-review: ") + e.what());
  }
  if (grades.size() != expected) {
    throw Error(ErrorCode::MalformedJudgment, "meta-review graded " + std::to_string(grades.size()) + " of " +
                                                  std::to_string(expected) + " irrationalities");
  }
  return grades;
}

}  // namespace detail

inline Verdict assess(const Statement& s, Session& session) {
  s.validate();
  const std::string statement = to_json(s).dump(2);
  Verdict v;
  v.critique = detail::parse_critique(session.call(make_request("review", prompts::kReviewer, {{"statement", statement}})));
  if (v.critique.irrationality.empty()) {
    v.accepted = true;
    session.decide("accepted: no irrationality raised");
    return v;
  }
  session.decide(std::to_string(v.critique.irrationality.size()) + " irrationalities raised");
  std::string list;
  for (std::size_t i = 0; i < v.critique.irrationality.size(); ++i) {
    list += std::to_string(i + 1) + ". " + v.critique.irrationality[i] + "\n";
  }
  list.pop_back();
  v.grades = detail::parse_grades(
      session.call(make_request("meta_review", prompts::kMetaReviewer, {{"statement", statement}, {"irrationality", list}})),
      v.critique.irrationality.size());
  v.accepted = is_acceptable(v.grades);
  std::string letters;
  for (const auto& g : v.grades) letters.push_back(to_char(g.option));
  session.decide((v.accepted ? "accepted: grades " : "rejected: grades ") + letters);
  return v;
}

// ---------------------------------------------------------------------------
// End to end
// ---------------------------------------------------------------------------

enum class CandidateStatus { Accepted, Rejected, Failed };

inline std::string to_string(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::Accepted: return "accepted";
    case CandidateStatus::Rejected: return "rejected";
    case CandidateStatus::Failed: return "failed";
  }
  return "failed";
}

struct CandidateOutcome {
  std::string id;
  std::vector<std::string> keywords;
  CandidateStatus status = CandidateStatus::Failed;
  std::string error;  // Failed only
  std::optional<RefineResult> refined;
  std::optional<Thesis> thesis;
  std::optional<ScaffoldResult> scaffold;
  std::optional<Verdict> verdict;
};

struct PipelineResult {
  std::vector<CandidateOutcome> outcomes;
  std::vector<Statement> accepted;  // candidate order
  AuditLog audit;

  explicit PipelineResult(bool logical_clock) : audit(logical_clock) {}
};

inline std::string candidate_label(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "cand-%03zu", i);
  return buf;
}

/// refine -> reveal -> scaffold -> assess for each keyword set. A failing
/// candidate is recorded and never stops the others.
inline PipelineResult run_candidates(const std::vector<std::vector<std::string>>& sets, TextGenerator& gen,
                                     LiteratureSearch& lit, const PipelineConfig& cfg) {
  std::vector<CandidateOutcome> outcomes(sets.size());
  std::vector<std::vector<AuditEntry>> trails(sets.size());
  parallel_for(sets.size(), cfg.concurrency, [&](std::size_t i) {
    auto& o = outcomes[i];
    o.id = candidate_label(i);
    o.keywords = sets[i];
    Session session(gen, cfg, o.id);
    try {
      o.refined = refine_keywords(sets[i], session);
      o.thesis = reveal(o.refined->keywords, session);
      o.scaffold = scaffold(*o.thesis, session, lit);
      o.verdict = assess(o.scaffold->statement, session);
      o.status = o.verdict->accepted ? CandidateStatus::Accepted : CandidateStatus::Rejected;
    } catch (const std::exception& e) {
      o.status = CandidateStatus::Failed;
      o.error = e.what();
    }
    trails[i] = session.take_trail();
  });
  PipelineResult res(cfg.logical_clock);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    res.audit.append(std::move(trails[i]));
    if (outcomes[i].status == CandidateStatus::Accepted) res.accepted.push_back(outcomes[i].scaffold->statement);
  }
  res.outcomes = std::move(outcomes);
  return res;
}

/// Searches the graph for candidate sets, then runs the candidates.
inline PipelineResult run_pipeline(const PipelineConfig& cfg, const SearchConfig& search, const Corpus& corpus,
                                   const KeywordGraph& g, const Calibration& cal, TextGenerator& gen,
                                   LiteratureSearch& lit) {
  auto found = search_sets(g, corpus, cal, search);
  if (found.size() > cfg.max_candidates) found.resize(cfg.max_candidates);
  std::vector<std::vector<std::string>> sets;
  for (auto& c : found) sets.push_back(std::move(c.keywords));
  return run_candidates(sets, gen, lit, cfg);
}

inline nlohmann::ordered_json outcome_json(const CandidateOutcome& o) {
  nlohmann::ordered_json j;
  j["id"] = o.id;
  j["keywords"] = o.keywords;
  j["status"] = to_string(o.status);
  if (!o.error.empty()) j["error"] = o.error;
  if (o.refined) {
    j["refined_keywords"] = o.refined->keywords;
    j["refine_warning"] = o.refined->warning;
  }
  if (o.thesis) j["thesis"] = o.thesis->text;
  if (o.scaffold) {
    j["rounds"] = o.scaffold->rounds;
    j["validated_fraction"] = o.scaffold->validated_fraction;
    j["statement"] = to_json(o.scaffold->statement);
  }
  if (o.verdict) {
    std::string letters;
    for (const auto& g : o.verdict->grades) letters.push_back(to_char(g.option));
    j["grades"] = letters;
  }
  return j;
}

}  // namespace spacer
