#pragma once

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spacer/corpus.hpp"

namespace spacer {

struct LiteratureHit {
  std::string doi;
  std::string title;
  std::string abstract;
  double relevance = 0.0;

  bool operator==(const LiteratureHit&) const = default;
};

class LiteratureSearch {
 public:
  virtual ~LiteratureSearch() = default;
  /// Best matches first; at most `limit` hits.
  virtual std::vector<LiteratureHit> search(const std::string& query, std::size_t limit) = 0;
};

namespace detail {

inline std::set<std::string> search_tokens(std::string_view text) {
  static const std::set<std::string, std::less<>> stop{
      "and", "are", "but", "can", "for", "from", "has", "have", "how", "into", "its", "may", "not",
      "that", "the", "their", "these", "this", "those", "through", "via", "was", "were", "which", "with"};
  std::set<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.size() >= 3 && !stop.count(cur)) out.insert(cur);
    cur.clear();
  };
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

}  // namespace detail

/// Local stand-in for a literature engine: relevance is the fraction of query
/// tokens found among a paper's title and keyword tokens. Ties break by DOI.
class CorpusLiteratureSearch : public LiteratureSearch {
 public:
  explicit CorpusLiteratureSearch(const Corpus& corpus) : corpus_(corpus) {
    docs_.reserve(corpus.size());
    for (const auto& r : corpus.records()) {
      auto toks = detail::search_tokens(r.title);
      for (const auto& k : r.keywords) {
        auto kt = detail::search_tokens(k);
        toks.insert(kt.begin(), kt.end());
      }
      docs_.push_back(std::move(toks));
    }
  }

  std::vector<LiteratureHit> search(const std::string& query, std::size_t limit) override {
    const auto q = detail::search_tokens(query);
    std::vector<LiteratureHit> hits;
    if (q.empty()) return hits;
    for (std::size_t i = 0; i < docs_.size(); ++i) {
      std::size_t common = 0;
      for (const auto& t : q) common += docs_[i].count(t);
      if (common == 0) continue;
      const auto& r = corpus_.at(i);
      hits.push_back({r.doi, r.title, r.abstract.value_or(""), static_cast<double>(common) / static_cast<double>(q.size())});
    }
    std::sort(hits.begin(), hits.end(), [](const LiteratureHit& a, const LiteratureHit& b) {
      if (a.relevance != b.relevance) return a.relevance > b.relevance;
      return a.doi < b.doi;
    });
    if (hits.size() > limit) hits.resize(limit);
    return hits;
  }

 private:
  const Corpus& corpus_;
  std::vector<std::set<std::string>> docs_;
};

}  // namespace spacer
