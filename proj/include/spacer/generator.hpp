#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "spacer/error.hpp"
#include "spacer/prompts.hpp"

namespace spacer {

struct GeneratorRequest {
  std::string tag;  // pipeline stage, e.g. "weaver", "judge.logic"
  std::string system_prompt;
  std::string user_prompt;
  double temperature = 0.0;
  std::size_t max_output = 1024;
  std::optional<std::uint64_t> seed;
  // Values substituted into the prompt templates; exposed to mock scripts.
  std::map<std::string, std::string> variables;

  /// The system prompt may be empty (the judge prompts have none).
  void validate() const {
    if (user_prompt.empty()) throw Error(ErrorCode::InvalidArgument, "generator request without a user prompt");
    if (!(temperature >= 0.0)) throw Error(ErrorCode::InvalidArgument, "temperature must be non-negative");
  }
};

struct GeneratorInfo {
  std::string name;
  std::size_t context_limit = 0;
};

/// Text-generation backend. Implementations throw Error(GeneratorFailure) on
/// transport problems; callers treat an empty response as a failure too.
class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual std::string generate(const GeneratorRequest& request) = 0;
  virtual GeneratorInfo info() const = 0;
};

/// Builds a request from a template pair and its variables.
inline GeneratorRequest make_request(std::string tag, const prompts::Template& t,
                                     std::map<std::string, std::string> vars) {
  GeneratorRequest r;
  r.tag = std::move(tag);
  r.system_prompt = prompts::render(t.system, vars);
  r.user_prompt = prompts::render(t.user, vars);
  r.variables = std::move(vars);
  return r;
}

/// Adapter for lambdas; used heavily by tests.
class CallbackGenerator : public TextGenerator {
 public:
  using Fn = std::function<std::string(const GeneratorRequest&)>;

  explicit CallbackGenerator(Fn fn, std::string name = "callback") : fn_(std::move(fn)), name_(std::move(name)) {}

  std::string generate(const GeneratorRequest& request) override { return fn_(request); }
  GeneratorInfo info() const override { return {name_, 0}; }

 private:
  Fn fn_;
  std::string name_;
};

/// Stateless scripted mock. A script is a JSON object:
///
///   { "name": "mock",
///     "rules": [ { "tag": "weaver", "contains": "optional substring",
///                  "response": "text with {{variable}} placeholders" },
///                { "tag": "review", "fail": true } ],
///     "default": "optional fallback response" }
///
/// The first rule whose tag equals the request tag (or is "*"/absent) and whose
/// `contains` substring occurs in the user prompt wins. Responses are rendered
/// against the request variables, so identical requests always get identical
/// responses regardless of call order.
class ScriptedGenerator : public TextGenerator {
 public:
  struct Rule {
    std::string tag;
    std::string contains;
    std::string response;
    bool fail = false;
  };

  explicit ScriptedGenerator(const nlohmann::json& script) {
    if (!script.is_object()) throw Error(ErrorCode::InvalidArgument, "mock script must be a JSON object");
    name_ = script.value("name", std::string("mock"));
    if (auto it = script.find("rules"); it != script.end()) {
      if (!it->is_array()) throw Error(ErrorCode::InvalidArgument, "mock script 'rules' must be an array");
      for (const auto& r : *it) {
        Rule rule;
        rule.tag = r.value("tag", std::string("*"));
        rule.contains = r.value("contains", std::string());
        rule.fail = r.value("fail", false);
        if (!rule.fail) {
          auto resp = r.find("response");
          if (resp == r.end()) throw Error(ErrorCode::InvalidArgument, "mock rule needs 'response' or 'fail'");
          rule.response = resp->is_string() ? resp->get<std::string>() : resp->dump();
        }
        rules_.push_back(std::move(rule));
      }
    }
    if (auto it = script.find("default"); it != script.end()) {
      default_ = it->is_string() ? it->get<std::string>() : it->dump();
    }
  }

  static ScriptedGenerator from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open mock script " + path);
    try {
      return ScriptedGenerator(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, "mock script " + path + ": " + e.what());
    }
  }

  std::string generate(const GeneratorRequest& request) override {
    for (const auto& rule : rules_) {
      if (rule.tag != "*" && rule.tag != request.tag) continue;
      if (!rule.contains.empty() && request.user_prompt.find(rule.contains) == std::string::npos) continue;
      if (rule.fail) throw Error(ErrorCode::GeneratorFailure, "scripted failure for '" + request.tag + "'");
      return expand(rule.response, request);
    }
    if (default_) return expand(*default_, request);
    throw Error(ErrorCode::GeneratorFailure, "mock script has no rule for '" + request.tag + "'");
  }

  GeneratorInfo info() const override { return {name_, 0}; }

 private:
  static std::string expand(const std::string& text, const GeneratorRequest& request) {
    auto vars = request.variables;
    vars.emplace("tag", request.tag);
    return prompts::render(text, vars);
  }

  std::string name_;
  std::vector<Rule> rules_;
  std::optional<std::string> default_;
};

/// FNV-1a 64-bit digest, rendered as 16 hex digits. Used for audit-log response digests.
inline std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

/// `key = value` lines; `#` starts a comment line. Keys and values are trimmed.
inline std::map<std::string, std::string> parse_kv_config(std::istream& in) {
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

}  // namespace spacer
