#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spacer/cli.hpp"

using namespace spacer;

namespace {

const std::string kSamples = SPACER_SAMPLES_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content = {}) {
  auto p = std::filesystem::temp_directory_path() / ("spacer_cli_" + std::to_string(::getpid()) + "_" + name);
  if (!content.empty()) std::ofstream(p) << content;
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"search", "--help"}).code, 0);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  auto r = run({"search", "--corpus", kSamples + "/corpus.jsonl"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--seed"), std::string::npos);
  EXPECT_EQ(run({"validate", "roc", "--corpus", "/nonexistent/corpus.jsonl", "--seed", "1"}).code, 1);
  EXPECT_EQ(run({"score", "--corpus", kSamples + "/corpus.jsonl"}).code, 1);
}

TEST(Cli, MalformedDataExitsTwo) {
  auto bad = temp_file("bad.jsonl", "{\"doi\": \"10.1/x\"\n");
  auto r = run({"ingest", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);
  std::filesystem::remove(bad);
}

TEST(Cli, SynthMatchesLibrary) {
  auto r = run({"--seed", "5", "synth", "--n", "30"});
  ASSERT_EQ(r.code, 0) << r.err;
  SynthSpec s;
  s.n_papers = 30;
  s.seed = 5;
  std::ostringstream want;
  export_jsonl(generate(s), want);
  EXPECT_EQ(r.out, want.str());
}

TEST(Cli, RocMatchesLibraryReport) {
  auto r = run({"validate", "roc", "--corpus", kSamples + "/corpus.jsonl", "--seed", "11", "--n", "60", "--resamples", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(kSamples + "/corpus.jsonl");
  auto c = ingest(in);
  ImpactClassificationConfig cfg;
  cfg.n_per_class = 60;
  cfg.seed = 11;
  cfg.bootstrap.resamples = 200;
  EXPECT_EQ(r.out, cli::report_json(impact_classification(c, cfg)).dump(2) + "\n");
  // Thread count does not change the result.
  EXPECT_EQ(run({"--jobs", "4", "validate", "roc", "--corpus", kSamples + "/corpus.jsonl", "--seed", "11", "--n", "60",
                 "--resamples", "200"})
                .out,
            r.out);
}

TEST(Cli, SearchMatchesLibrary) {
  auto r = run({"search", "--corpus", kSamples + "/corpus.jsonl", "--seed", "3", "--size-min", "3", "--size-max", "4",
                "--novel", "--max-results", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(kSamples + "/corpus.jsonl");
  auto c = ingest(in);
  auto g = build_graph(c.records());
  SearchConfig cfg;
  cfg.set_size_min = 3;
  cfg.set_size_max = 4;
  cfg.require_novelty = true;
  cfg.max_results = 5;
  cfg.rng_seed = 3;
  EXPECT_EQ(r.out, cli::candidates_json(search_sets(g, c, calibrate(g, c.records()), cfg)).dump(2) + "\n");
}

TEST(Cli, GraphDumpFeedsScore) {
  auto dump = temp_file("graph.tsv");
  auto r = run({"--out", dump.string(), "graph", "build", "--corpus", kSamples + "/corpus.jsonl"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dump).rfind("# papers 300", 0), 0u);
  auto a = run({"score", "--corpus", kSamples + "/corpus.jsonl", "--keywords", "term0000,term0001,term0002"});
  auto b = run({"score", "--corpus", kSamples + "/corpus.jsonl", "--graph", dump.string(), "--keywords",
                "term0002,TERM0001,term0000"});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  // The dump keeps 12 significant digits, so values agree to that precision.
  auto j = nlohmann::json::parse(a.out);
  auto k = nlohmann::json::parse(b.out);
  EXPECT_EQ(j["keywords"], k["keywords"]);
  for (const char* field : {"s", "raw", "c"}) {
    EXPECT_NEAR(j[field].get<double>(), k[field].get<double>(), 1e-10 * std::abs(j[field].get<double>())) << field;
  }
  EXPECT_GT(j["s"].get<double>(), 0.0);
  std::filesystem::remove(dump);
  EXPECT_EQ(run({"score", "--corpus", kSamples + "/corpus.jsonl", "--doi", "10.0000/none"}).code, 2);
}

TEST(Cli, EmbedCommands) {
  auto pca = run({"embed", "pca", "--input", kSamples + "/embeddings.csv", "--k", "2"});
  ASSERT_EQ(pca.code, 0) << pca.err;
  EXPECT_EQ(pca.out.rfind("label,p0,p1\n", 0), 0u);
  auto lda = run({"embed", "lda", "--input", kSamples + "/embeddings.csv", "--dims", "2"});
  ASSERT_EQ(lda.code, 0) << lda.err;
  auto energy = run({"embed", "energy", "--input", kSamples + "/embeddings.csv"});
  ASSERT_EQ(energy.code, 0) << energy.err;
  EXPECT_EQ(energy.out.rfind("class,alpha,beta,gamma\n", 0), 0u);
  EXPECT_EQ(run({"embed", "lda", "--input", kSamples + "/embeddings.csv", "--dims", "5"}).code, 2);
}

TEST(Cli, PipelineRunWithSampleConfig) {
  auto audit = temp_file("audit.jsonl");
  auto outcomes = temp_file("outcomes.json");
  std::vector<std::string> args{"--config", kSamples + "/pipeline.conf", "--seed", "1", "pipeline", "run", "--corpus",
                                kSamples + "/corpus.jsonl", "--candidates", "2", "--logical-clock", "--audit",
                                audit.string(), "--outcomes", outcomes.string()};
  auto r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  auto accepted = nlohmann::json::parse(r.out);
  EXPECT_EQ(accepted.size(), 2u);
  for (const auto& s : accepted) EXPECT_NO_THROW(statement_from_json(s).validate());
  const auto first_audit = slurp(audit);
  EXPECT_FALSE(first_audit.empty());
  auto again = run(args);
  EXPECT_EQ(again.out, r.out);
  EXPECT_EQ(slurp(audit), first_audit);
  std::filesystem::remove(audit);
  std::filesystem::remove(outcomes);
  EXPECT_EQ(run({"--seed", "1", "pipeline", "run", "--corpus", kSamples + "/corpus.jsonl"}).code, 1);
}

TEST(Cli, ReconstructPairs) {
  auto r = run({"--config", kSamples + "/pipeline.conf", "pipeline", "reconstruct", "--pairs", kSamples + "/pairs.jsonl"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.empty());
  EXPECT_NE(r.err.find("Overall"), std::string::npos);
  auto one = run({"--config", kSamples + "/pipeline.conf", "pipeline", "reconstruct", "--keywords", "A,b"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_NE(one.out.find("a, b"), std::string::npos);
}

TEST(Cli, GeneratorFailureExitsThree) {
  auto script = temp_file("failing.json", R"({"rules":[{"tag":"*","fail":true}]})");
  auto conf = temp_file("failing.conf", "generator = mock:" + script.filename().string() + "\nretry_backoff_ms = 0\n");
  auto r = run({"--config", conf.string(), "pipeline", "reconstruct", "--keywords", "a,b"});
  EXPECT_EQ(r.code, 3);
  std::filesystem::remove(script);
  std::filesystem::remove(conf);
}
