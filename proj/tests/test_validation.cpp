#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spacer/synthgen.hpp"
#include "spacer/validation.hpp"

using namespace spacer;

namespace {

RocResult roc(const std::vector<double>& s, const std::vector<int>& l) { return roc_auc(s, l); }

void check_curve(const RocCurve& c) {
  ASSERT_GE(c.points.size(), 2u);
  EXPECT_EQ(c.points.front().fpr, 0.0);
  EXPECT_EQ(c.points.front().tpr, 0.0);
  EXPECT_EQ(c.points.back().fpr, 1.0);
  EXPECT_EQ(c.points.back().tpr, 1.0);
  EXPECT_EQ(c.points.size(), c.thresholds.size());
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    EXPECT_GE(c.points[i].fpr, c.points[i - 1].fpr);
    EXPECT_GE(c.points[i].tpr, c.points[i - 1].tpr);
    EXPECT_LT(c.thresholds[i], c.thresholds[i - 1]);
  }
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

const Corpus& planted() {
  static const Corpus c = [] {
    SynthSpec spec;
    spec.n_papers = 400;
    spec.seed = 3;
    return generate(spec);
  }();
  return c;
}

}  // namespace

TEST(RocAuc, PerfectSeparation) { EXPECT_EQ(roc({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}).auc, 1.0); }

TEST(RocAuc, AllTied) {
  auto r = roc({0.3, 0.3, 0.3, 0.3, 0.3}, {1, 0, 1, 0, 0});
  EXPECT_EQ(r.auc, 0.5);
  EXPECT_EQ(r.curve.points.size(), 2u);
}

TEST(RocAuc, ThreeOfFourConcordant) { EXPECT_EQ(roc({0.8, 0.4, 0.6, 0.2}, {1, 1, 0, 0}).auc, 0.75); }

TEST(RocAuc, MatchesMannWhitneyOnRandomInstances) {
  Rng rng(1);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng.index(49);
    std::vector<double> s(n);
    std::vector<int> l(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.index(8)) / 8.0;  // coarse grid forces ties
      l[i] = static_cast<int>(rng.index(2));
    }
    l[0] = 1;
    l[1] = 0;
    auto r = roc(s, l);
    EXPECT_EQ(r.twice_area_count, oracle::mann_whitney_twice(s, l));
    EXPECT_EQ(r.auc, oracle::mann_whitney_auc(s, l));
    check_curve(r.curve);
  }
}

TEST(RocAuc, Errors) {
  EXPECT_EQ(code_of([] { roc({0.1, 0.2}, {1, 1}); }), ErrorCode::DegenerateLabels);
  EXPECT_EQ(code_of([] { roc({0.1, 0.2}, {1}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { roc({0.1, 0.2}, {1, 2}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { roc({0.1, std::nan("")}, {1, 0}); }), ErrorCode::InvalidArgument);
}

TEST(BootstrapCi, PerfectSeparationCollapses) {
  std::vector<double> s;
  std::vector<int> l;
  for (int i = 0; i < 100; ++i) {
    s.push_back(1.0 + i);
    l.push_back(1);
    s.push_back(-1.0 - i);
    l.push_back(0);
  }
  auto [lo, hi] = bootstrap_ci(s, l, 200, 0.95, 4);
  EXPECT_EQ(lo, 1.0);
  EXPECT_EQ(hi, 1.0);
}

TEST(BootstrapCi, DeterministicAndJobIndependent) {
  Rng rng(2);
  std::vector<double> s;
  std::vector<int> l;
  for (int i = 0; i < 60; ++i) {
    l.push_back(i % 2);
    s.push_back(rng.normal() + 0.7 * l.back());
  }
  auto a = bootstrap_ci(s, l, 500, 0.9, 17);
  auto b = bootstrap_ci(s, l, 500, 0.9, 17);
  auto c = bootstrap_ci(s, l, 500, 0.9, 17, 4);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_LE(a.first, a.second);
}

TEST(BootstrapCi, MatchesIndependentPercentileBootstrap) {
  Rng rng(20);
  std::vector<double> s;
  std::vector<int> l;
  for (int i = 0; i < 20; ++i) {
    l.push_back(i < 9 ? 1 : 0);
    s.push_back(rng.normal() + (l.back() ? 0.8 : 0.0));
  }
  for (std::uint64_t seed : {0ULL, 5ULL, 99ULL}) {
    auto got = bootstrap_ci(s, l, 1000, 0.95, seed);
    auto want = oracle::percentile_bootstrap(s, l, 1000, 0.95, seed);
    EXPECT_NEAR(got.first, want.first, 1e-12);
    EXPECT_NEAR(got.second, want.second, 1e-12);
  }
}

TEST(BootstrapCi, Preconditions) {
  EXPECT_EQ(code_of([] { bootstrap_ci(std::vector<double>{1, 2}, std::vector<int>{1, 0}, 50, 0.95, 1); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { bootstrap_ci(std::vector<double>{1, 2}, std::vector<int>{1, 0}, 100, 1.0, 1); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { bootstrap_ci(std::vector<double>{1, 2}, std::vector<int>{0, 0}, 100, 0.9, 1); }),
            ErrorCode::DegenerateLabels);
}

TEST(QuantileSorted, Type7) {
  std::vector<double> v{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.25), 1.75);
}

TEST(ImpactClassification, PlantedCorpusSeparates) {
  ImpactClassificationConfig cfg;
  cfg.n_per_class = 100;
  cfg.seed = 1;
  cfg.bootstrap.resamples = 200;
  auto r = impact_classification(planted(), cfg);
  EXPECT_GE(r.auc, 0.9);
  EXPECT_EQ(r.n_pos, 100u);
  EXPECT_EQ(r.n_neg, 100u);
  EXPECT_LE(r.ci_low, r.auc);
  EXPECT_GE(r.ci_high, r.auc);
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    const auto& p = planted().at(planted().id_of(r.items[i]));
    EXPECT_EQ(r.labels[i], p.fwci >= 15.0 ? 1 : 0);
    EXPECT_EQ(r.scores[i], eval_paper(planted(), p.doi).s);
  }
  auto again = impact_classification(planted(), cfg);
  EXPECT_EQ(again.auc, r.auc);
  EXPECT_EQ(again.ci_low, r.ci_low);
  EXPECT_EQ(again.items, r.items);
}

TEST(ImpactClassification, ShuffledFwciIsNearChance) {
  // Same keyword structure, FWCI permuted: EVAL no longer carries label information.
  SynthSpec spec;
  spec.n_papers = 800;
  spec.seed = 5;
  auto records = generate_records(spec);
  Rng rng(77);
  std::vector<double> f;
  for (const auto& r : records) f.push_back(r.fwci);
  rng.shuffle(f);
  for (std::size_t i = 0; i < records.size(); ++i) records[i].fwci = f[i];
  auto c = Corpus::from_records(records);
  ImpactClassificationConfig cfg;
  cfg.seed = 2;
  cfg.bootstrap.resamples = 100;
  auto r = impact_classification(c, cfg);
  EXPECT_GE(r.auc, 0.4);
  EXPECT_LE(r.auc, 0.6);
}

TEST(ImpactClassification, InsufficientStratum) {
  ImpactClassificationConfig cfg;
  cfg.n_per_class = 5000;
  EXPECT_EQ(code_of([&] { impact_classification(planted(), cfg); }), ErrorCode::InsufficientStratum);
}

TEST(FwciHistograms, UnitAreaAndThresholdZeroEqualsFull) {
  FwciHistogramConfig cfg;
  cfg.sample_n = 300;
  cfg.eval_cuts = {0.0, 0.8, 0.9, 0.95, 0.99};
  cfg.seed = 4;
  auto h = fwci_threshold_histograms(planted(), cfg);
  EXPECT_EQ(h.sample_size, 300u);
  EXPECT_EQ(h.by_cut[0].density, h.full.density);
  EXPECT_EQ(h.by_cut[0].count, h.full.count);
  for (const auto* hist : {&h.full, &h.by_cut[1], &h.by_cut[2]}) {
    if (hist->empty) continue;
    double area = 0.0;
    for (double d : hist->density) area += d * h.spec.width();
    EXPECT_NEAR(area, 1.0, 1e-9);
  }
  EXPECT_EQ(h.spec.edges().size(), 65u);
  EXPECT_EQ(h.spec.edges().back(), 10.0);
}

TEST(FwciHistograms, EmptySubsetFlagged) {
  // A corpus where no paper can score: every keyword set is new.
  std::vector<PaperRecord> records;
  for (int i = 0; i < 20; ++i) {
    PaperRecord p;
    p.doi = "10.1/" + std::to_string(i);
    p.title = "t";
    p.journal = "j";
    p.keywords = {"a" + std::to_string(i), "b" + std::to_string(i)};
    p.fwci = 3.0;
    p.pub_date = Date::parse("2020-01-01");
    records.push_back(p);
  }
  FwciHistogramConfig cfg;
  cfg.eval_cuts = {0.5};
  auto h = fwci_threshold_histograms(Corpus::from_records(records), cfg);
  EXPECT_TRUE(h.by_cut[0].empty);
  EXPECT_EQ(h.by_cut[0].count, 0u);
  EXPECT_FALSE(h.full.empty);
}

TEST(FwciHistograms, RejectsBadCuts) {
  FwciHistogramConfig cfg;
  cfg.eval_cuts = {1.0};
  EXPECT_THROW(fwci_threshold_histograms(planted(), cfg), Error);
}

TEST(RandomSets, PlantedCorpusSeparatesAndRepeats) {
  auto g = build_graph(planted().records());
  auto cal = calibrate(g, planted().records());
  RandomSetConfig cfg;
  cfg.n = 100;
  cfg.seed = 6;
  cfg.bootstrap.resamples = 200;
  auto a = random_set_experiment(planted(), g, cal, cfg);
  auto b = random_set_experiment(planted(), g, cal, cfg);
  EXPECT_GE(a.auc, 0.95);
  EXPECT_EQ(a.auc, b.auc);
  EXPECT_EQ(a.ci_low, b.ci_low);
  EXPECT_EQ(a.items, b.items);
  EXPECT_EQ(a.n_pos, 100u);
}

TEST(RandomSets, TooFewSets) {
  auto g = build_graph(planted().records());
  RandomSetConfig cfg;
  cfg.n = 1;
  EXPECT_EQ(code_of([&] { random_set_experiment(planted(), g, Calibration{}, cfg); }), ErrorCode::InsufficientStratum);
}

TEST(Judge, ReflexiveMockSaysYes) {
  CallbackGenerator gen([](const GeneratorRequest& r) {
    return r.variables.at("first_idea") == r.variables.at("second_idea") ? "Yes\n" : "no";
  });
  for (auto a : kJudgeAspects) {
    EXPECT_TRUE(judge_similarity("same idea", "same idea", a, gen));
    EXPECT_FALSE(judge_similarity("one idea", "other idea", a, gen));
  }
}

TEST(Judge, MalformedAnswer) {
  CallbackGenerator gen([](const GeneratorRequest&) { return "maybe"; });
  EXPECT_EQ(code_of([&] { judge_similarity("a", "b", JudgeAspect::Topic, gen); }), ErrorCode::MalformedJudgment);
  EXPECT_TRUE(parse_yes_no("  YES \n"));
  EXPECT_FALSE(parse_yes_no("No"));
  EXPECT_THROW(parse_yes_no("yes."), Error);
  EXPECT_THROW(parse_yes_no(""), Error);
}

TEST(Judge, PromptIsTemplateVerbatim) {
  std::vector<GeneratorRequest> seen;
  CallbackGenerator gen([&](const GeneratorRequest& r) {
    seen.push_back(r);
    return "yes";
  });
  judge_similarity("IDEA-ONE", "IDEA-TWO", JudgeAspect::Logic, gen);
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_EQ(seen[0].tag, "judge.logic");
  EXPECT_TRUE(seen[0].system_prompt.empty());
  EXPECT_EQ(seen[0].user_prompt,
            prompts::render(prompts::kJudgeLogic, {{"first_idea", "IDEA-ONE"}, {"second_idea", "IDEA-TWO"}}));
  EXPECT_NE(seen[0].user_prompt.find("share the same logical structure"), std::string::npos);
}

TEST(ReconstructionReport, TableShape) {
  CallbackGenerator gen([](const GeneratorRequest& r) {
    if (r.tag == "judge.approach") return std::string("no");
    return std::string(r.variables.at("second_idea").find("off") == std::string::npos ? "yes" : "no");
  });
  std::vector<ReconstructionPair> pairs{{"Cell", "x", "good"}, {"Cell", "x", "off topic"}, {"Nature", "y", "good"}};
  auto rep = judge_reconstructions(pairs, gen);
  EXPECT_EQ(rep.groups, (std::vector<std::string>{"Cell", "Nature"}));
  EXPECT_EQ(rep.total(JudgeAspect::Overall).passed, 2u);
  EXPECT_EQ(rep.total(JudgeAspect::Overall).total, 3u);
  EXPECT_EQ(rep.total(JudgeAspect::Approach).passed, 0u);
  const std::string table = rep.to_table();
  EXPECT_EQ(table.substr(0, table.find('\n')), "Criteria\tCell\tNature\tTotal\tRate");
  EXPECT_NE(table.find("Overall\t1/2\t1/1\t2/3\t66.67%\n"), std::string::npos);
  EXPECT_EQ(rep.to_json()["aspects"]["overall"]["total"]["passed"], 2);
}
