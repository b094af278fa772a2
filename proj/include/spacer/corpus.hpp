#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/locid.h>

#include "json.hpp"
#include "spacer/error.hpp"

namespace spacer {

/// Keyword canonical form: NFC, lowercase, trimmed, internal whitespace runs
/// collapsed to one ASCII space. No stemming or synonym merging.
inline std::string normalize_keyword(std::string_view raw) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error(ErrorCode::InvalidArgument, "ICU NFC normalizer unavailable");

  icu::UnicodeString text =
      icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  text = nfc->normalize(text, status);
  text.toLower(icu::Locale::getRoot());
  // Case mapping can leave a string outside NFC (e.g. precomposed capitals).
  text = nfc->normalize(text, status);
  if (U_FAILURE(status)) throw Error(ErrorCode::InvalidArgument, "keyword normalization failed");

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < text.length();) {
    const UChar32 cp = text.char32At(i);
    i = text.moveIndex32(i, 1);
    if (u_isUWhiteSpace(cp)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) collapsed.append(static_cast<UChar>(u' '));
    pending_space = false;
    collapsed.append(cp);
  }

  std::string out;
  collapsed.toUTF8String(out);
  if (out.empty()) throw Error(ErrorCode::EmptyKeyword, "keyword is empty after normalization");
  return out;
}

/// Calendar date with ISO-8601 (YYYY-MM-DD) text form.
struct Date {
  std::chrono::year_month_day ymd{};

  static Date parse(std::string_view text) {
    auto digits = [&](std::size_t pos, std::size_t len) {
      int v = 0;
      for (std::size_t i = pos; i < pos + len; ++i) {
        if (text[i] < '0' || text[i] > '9') throw Error(ErrorCode::InvalidArgument, "bad date: " + std::string(text));
        v = v * 10 + (text[i] - '0');
      }
      return v;
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
      throw Error(ErrorCode::InvalidArgument, "bad date: " + std::string(text));
    }
    Date d{std::chrono::year{digits(0, 4)} / std::chrono::month{static_cast<unsigned>(digits(5, 2))} /
           std::chrono::day{static_cast<unsigned>(digits(8, 2))}};
    if (!d.ymd.ok()) throw Error(ErrorCode::InvalidArgument, "invalid calendar date: " + std::string(text));
    return d;
  }

  static Date from_days(std::chrono::sys_days days) { return Date{std::chrono::year_month_day{days}}; }

  std::string to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
  }

  auto operator<=>(const Date&) const = default;
};

struct PaperRecord {
  std::string doi;
  std::string title;
  std::vector<std::string> keywords;  // normalized, deduplicated, first-occurrence order
  double fwci = 0.0;
  Date pub_date;
  std::string journal;
  std::optional<std::string> abstract;

  bool operator==(const PaperRecord&) const = default;
};

/// Position of a record in the corpus date order.
using RecordId = std::size_t;

/// A contiguous run of records in date order. slice_before always yields a prefix.
using CorpusView = std::span<const PaperRecord>;

/// Normalizes and deduplicates a keyword list in place, keeping first occurrences.
inline std::vector<std::string> normalize_keyword_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  out.reserve(raw.size());
  for (const auto& k : raw) {
    std::string n = normalize_keyword(k);
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(std::move(n));
  }
  return out;
}

/// Immutable collection of papers sorted by (pub_date, doi), with a keyword
/// posting index. Safe for concurrent reads.
class Corpus {
 public:
  Corpus() = default;

  /// Validates, normalizes keywords, rejects duplicate DOIs, and sorts.
  static Corpus from_records(std::vector<PaperRecord> records) {
    Corpus c;
    for (auto& r : records) {
      if (r.doi.empty()) throw Error(ErrorCode::InvalidArgument, "record without doi");
      r.keywords = normalize_keyword_list(r.keywords);
      if (r.keywords.empty()) throw Error(ErrorCode::InvalidArgument, "record " + r.doi + " has no keywords");
      if (!std::isfinite(r.fwci) || r.fwci < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "record " + r.doi + " has invalid fwci");
      }
    }
    std::sort(records.begin(), records.end(), [](const PaperRecord& a, const PaperRecord& b) {
      if (a.pub_date != b.pub_date) return a.pub_date < b.pub_date;
      return a.doi < b.doi;
    });
    c.records_ = std::move(records);
    for (RecordId id = 0; id < c.records_.size(); ++id) {
      const auto& r = c.records_[id];
      if (!c.by_doi_.emplace(r.doi, id).second) throw Error(ErrorCode::DuplicateDoi, r.doi);
      for (const auto& k : r.keywords) c.index_[k].push_back(id);
    }
    return c;
  }

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  CorpusView records() const { return records_; }
  const PaperRecord& at(RecordId id) const {
    if (id >= records_.size()) throw Error(ErrorCode::UnknownRecord, "record index " + std::to_string(id));
    return records_[id];
  }

  std::optional<RecordId> find(std::string_view doi) const {
    auto it = by_doi_.find(std::string(doi));
    if (it == by_doi_.end()) return std::nullopt;
    return it->second;
  }

  RecordId id_of(std::string_view doi) const {
    auto id = find(doi);
    if (!id) throw Error(ErrorCode::UnknownRecord, std::string(doi));
    return *id;
  }

  /// Record ids containing `keyword`, ascending. Empty for unknown keywords.
  std::span<const RecordId> papers_with(const std::string& keyword) const {
    auto it = index_.find(keyword);
    if (it == index_.end()) return {};
    return it->second;
  }

  const std::unordered_map<std::string, std::vector<RecordId>>& index() const { return index_; }

  /// Records strictly earlier than `id` in date order.
  CorpusView slice_before(RecordId id) const {
    if (id >= records_.size()) throw Error(ErrorCode::UnknownRecord, "record index " + std::to_string(id));
    return CorpusView(records_).first(id);
  }

  CorpusView slice_before(std::string_view doi) const { return slice_before(id_of(doi)); }

 private:
  std::vector<PaperRecord> records_;
  std::unordered_map<std::string, RecordId> by_doi_;
  std::unordered_map<std::string, std::vector<RecordId>> index_;
};

namespace detail {

inline PaperRecord record_from_json(const nlohmann::json& j, std::size_t line) {
  auto fail = [line](const std::string& msg) -> PaperRecord { throw ParseError(line, msg); };
  if (!j.is_object()) return fail("expected a JSON object");
  auto string_field = [&](const char* name) -> std::string {
    auto it = j.find(name);
    if (it == j.end() || !it->is_string()) throw ParseError(line, std::string("missing or non-string field '") + name + "'");
    return it->get<std::string>();
  };

  PaperRecord r;
  r.doi = string_field("doi");
  if (r.doi.empty()) return fail("empty doi");
  r.title = string_field("title");
  r.journal = string_field("journal");

  auto kw = j.find("keywords");
  if (kw == j.end() || !kw->is_array() || kw->empty()) return fail("'keywords' must be a non-empty array");
  std::vector<std::string> raw;
  for (const auto& k : *kw) {
    if (!k.is_string()) return fail("keywords must be strings");
    raw.push_back(k.get<std::string>());
  }
  try {
    r.keywords = normalize_keyword_list(raw);
  } catch (const Error& e) {
    return fail(e.what());
  }

  auto fw = j.find("fwci");
  if (fw == j.end() || !fw->is_number()) return fail("missing or non-numeric field 'fwci'");
  r.fwci = fw->get<double>();
  if (!std::isfinite(r.fwci) || r.fwci < 0.0) return fail("fwci must be a finite non-negative number");

  try {
    r.pub_date = Date::parse(string_field("pub_date"));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    return fail(e.what());
  }

  if (auto ab = j.find("abstract"); ab != j.end() && !ab->is_null()) {
    if (!ab->is_string()) return fail("'abstract' must be a string");
    r.abstract = ab->get<std::string>();
  }
  return r;
}

}  // namespace detail

/// Reads JSON-Lines paper records. Blank lines are skipped.
inline Corpus ingest(std::istream& in) {
  std::vector<PaperRecord> records;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, e.what());
    }
    PaperRecord r = detail::record_from_json(j, line_no);
    if (auto [it, inserted] = seen.emplace(r.doi, line_no); !inserted) {
      throw Error(ErrorCode::DuplicateDoi,
                  r.doi + " (lines " + std::to_string(it->second) + " and " + std::to_string(line_no) + ")");
    }
    records.push_back(std::move(r));
  }
  return Corpus::from_records(std::move(records));
}

inline nlohmann::ordered_json to_json(const PaperRecord& r) {
  nlohmann::ordered_json j;
  j["doi"] = r.doi;
  j["title"] = r.title;
  j["keywords"] = r.keywords;
  j["fwci"] = r.fwci;
  j["pub_date"] = r.pub_date.to_string();
  j["journal"] = r.journal;
  if (r.abstract) j["abstract"] = *r.abstract;
  return j;
}

/// Writes records in date order, one JSON object per line.
inline void export_jsonl(CorpusView records, std::ostream& out) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

inline void export_jsonl(const Corpus& corpus, std::ostream& out) { export_jsonl(corpus.records(), out); }

}  // namespace spacer
