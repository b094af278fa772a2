#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "spacer/corpus.hpp"
#include "spacer/error.hpp"
#include "spacer/rng.hpp"

namespace spacer {

struct LogNormal {
  double mu = 0.0;
  double sigma = 1.0;
};

/// Planted-structure corpus: high-impact papers take at least half their
/// keywords from a small dense core, low-impact papers draw uniformly from the
/// whole vocabulary. FWCI is log-normal truncated to its stratum (high >=
/// high_floor, low < low_ceiling). Within the high stratum the core share
/// rises from one half to all keywords with the paper's FWCI quantile, so
/// impact is graded rather than two-level.
struct SynthSpec {
  std::size_t n_papers = 1000;
  std::size_t vocab_size = 1000;
  std::size_t core_size = 12;
  double high_frac = 0.5;
  LogNormal fwci_high{std::log(25.0), 0.5};
  LogNormal fwci_low{std::log(0.4), 0.6};
  double high_floor = 15.0;
  double low_ceiling = 1.0;
  std::size_t keywords_min = 6;
  std::size_t keywords_max = 10;
  int year = 2020;
  std::uint64_t seed = 42;

  std::size_t high_count() const { return static_cast<std::size_t>(std::llround(high_frac * static_cast<double>(n_papers))); }

  void validate() const {
    auto bad = [](const std::string& why) { throw Error(ErrorCode::InvalidSpec, why); };
    if (n_papers == 0) bad("n_papers must be positive");
    if (!(high_frac > 0.0 && high_frac < 1.0)) bad("high_frac must lie in (0, 1)");
    if (core_size == 0 || core_size > vocab_size) bad("core_size must be in [1, vocab_size]");
    if (keywords_min < 2 || keywords_min > keywords_max) bad("keywords range must satisfy 2 <= min <= max");
    if (keywords_max > vocab_size) bad("keywords_max exceeds vocab_size");
    if (keywords_max > core_size) bad("core_size must be at least keywords_max");
    if (!(fwci_high.sigma >= 0.0) || !(fwci_low.sigma >= 0.0)) bad("log-normal sigma must be non-negative");
    if (!(low_ceiling > 0.0) || !(high_floor >= low_ceiling)) bad("need 0 < low_ceiling <= high_floor");
    if (year < 1 || year > 9999) bad("year out of range");
  }
};

inline std::string synth_keyword(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "term%04zu", i);
  return buf;
}

inline std::string synth_doi(std::uint64_t seed, std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "10.5555/synth.%llu.%06zu", static_cast<unsigned long long>(seed), i);
  return buf;
}

namespace detail {

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Rejection sampling; the acceptance region must have reasonable mass.
template <typename Accept>
double truncated_lognormal(Rng& rng, const LogNormal& d, Accept accept) {
  for (int tries = 0; tries < 100000; ++tries) {
    const double x = rng.lognormal(d.mu, d.sigma);
    if (accept(x)) return x;
  }
  throw Error(ErrorCode::InvalidSpec, "FWCI distribution has almost no mass inside its stratum");
}

}  // namespace detail

/// Deterministic in spec (including seed). Paper i is high impact iff i is
/// among the first high_count() entries of a seeded permutation.
inline std::vector<PaperRecord> generate_records(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<bool> high(spec.n_papers, false);
  for (auto i : rng.sample_without_replacement(spec.n_papers, spec.high_count())) high[i] = true;

  using namespace std::chrono;
  const sys_days first{year{spec.year} / January / 1};
  const auto days = static_cast<std::uint64_t>((sys_days{year{spec.year + 1} / January / 1} - first).count());
  static const char* const journals[] = {"Synthetic Letters", "Journal of Planted Structure", "Desk Scale Reports"};

  std::vector<PaperRecord> out;
  out.reserve(spec.n_papers);
  for (std::size_t i = 0; i < spec.n_papers; ++i) {
    PaperRecord p;
    p.doi = synth_doi(spec.seed, i);
    p.title = "Synthetic paper " + std::to_string(i);
    p.journal = journals[rng.index(3)];
    p.pub_date = Date::from_days(first + std::chrono::days{static_cast<long>(rng.index(days))});
    const std::size_t k = spec.keywords_min + rng.index(spec.keywords_max - spec.keywords_min + 1);
    std::vector<std::size_t> picked;
    auto take = [&](std::size_t v) {
      if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
    };
    if (high[i]) {
      p.fwci = detail::truncated_lognormal(rng, spec.fwci_high, [&](double x) { return x >= spec.high_floor; });
      // Quantile of the FWCI within the truncated stratum distribution.
      double u = 1.0;
      if (spec.fwci_high.sigma > 0.0) {
        const double f0 = detail::normal_cdf((std::log(spec.high_floor) - spec.fwci_high.mu) / spec.fwci_high.sigma);
        const double f = detail::normal_cdf((std::log(p.fwci) - spec.fwci_high.mu) / spec.fwci_high.sigma);
        u = f0 < 1.0 ? std::clamp((f - f0) / (1.0 - f0), 0.0, 1.0) : 1.0;
      }
      const std::size_t half = (k + 1) / 2;
      const auto n_core = half + static_cast<std::size_t>(std::llround(u * static_cast<double>(k - half)));
      for (auto c : rng.sample_without_replacement(spec.core_size, n_core)) take(c);
    } else {
      p.fwci = detail::truncated_lognormal(rng, spec.fwci_low, [&](double x) { return x < spec.low_ceiling; });
    }
    while (picked.size() < k) take(rng.index(spec.vocab_size));
    for (auto v : picked) p.keywords.push_back(synth_keyword(v));
    out.push_back(std::move(p));
  }
  return out;
}

inline Corpus generate(const SynthSpec& spec) { return Corpus::from_records(generate_records(spec)); }

}  // namespace spacer
