#pragma once

// Requires cpp-httplib; link the spacer_http target (OpenSSL) for https endpoints.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <string>

#include "httplib.h"
#include "json.hpp"
#include "spacer/error.hpp"
#include "spacer/generator.hpp"

namespace spacer {

struct HttpGeneratorConfig {
  std::string endpoint;  // e.g. https://api.example.com/v1/chat/completions
  std::string api_key;
  std::string model;
  int timeout_seconds = 120;
};

/// Chat-completions style transport: POSTs {model, messages, temperature,
/// max_tokens[, seed]} and reads choices[0].message.content (or a top-level
/// "text" field).
class HttpGenerator : public TextGenerator {
 public:
  explicit HttpGenerator(HttpGeneratorConfig cfg) : cfg_(std::move(cfg)) {
    const auto scheme_end = cfg_.endpoint.find("://");
    if (scheme_end == std::string::npos) throw Error(ErrorCode::InvalidArgument, "endpoint needs a scheme: " + cfg_.endpoint);
    const auto path_start = cfg_.endpoint.find('/', scheme_end + 3);
    base_ = cfg_.endpoint.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : cfg_.endpoint.substr(path_start);
  }

  std::string generate(const GeneratorRequest& request) override {
    request.validate();
    nlohmann::json body;
    if (!cfg_.model.empty()) body["model"] = cfg_.model;
    body["messages"] = nlohmann::json::array();
    if (!request.system_prompt.empty()) body["messages"].push_back({{"role", "system"}, {"content", request.system_prompt}});
    body["messages"].push_back({{"role", "user"}, {"content", request.user_prompt}});
    body["temperature"] = request.temperature;
    body["max_tokens"] = request.max_output;
    if (request.seed) body["seed"] = *request.seed;

    httplib::Client client(base_);
    client.set_connection_timeout(cfg_.timeout_seconds, 0);
    client.set_read_timeout(cfg_.timeout_seconds, 0);
    httplib::Headers headers;
    if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);
    auto res = client.Post(path_, headers, body.dump(), "application/json");
    if (!res) throw Error(ErrorCode::GeneratorFailure, "transport error: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) {
      throw Error(ErrorCode::GeneratorFailure, "endpoint returned HTTP " + std::to_string(res->status));
    }
    try {
      const auto j = nlohmann::json::parse(res->body);
      if (auto it = j.find("choices"); it != j.end() && it->is_array() && !it->empty()) {
        return it->at(0).at("message").at("content").get<std::string>();
      }
      if (auto it = j.find("text"); it != j.end() && it->is_string()) return it->get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::GeneratorFailure, std::string("unreadable response: ") + e.what());
    }
    throw Error(ErrorCode::GeneratorFailure, "response has no generated text");
  }

  GeneratorInfo info() const override { return {cfg_.model.empty() ? "http" : cfg_.model, 0}; }

 private:
  HttpGeneratorConfig cfg_;
  std::string base_;
  std::string path_;
};

/// Builds the generator named by a `key = value` configuration:
///   generator = mock:<script.json>   scripted mock (path relative to base_dir)
///   generator = http                 HttpGenerator (the default)
///   endpoint, api_key, model, timeout_seconds
/// SPACER_GEN_ENDPOINT and SPACER_GEN_KEY override endpoint and api_key.
inline std::unique_ptr<TextGenerator> make_generator(const std::map<std::string, std::string>& cfg,
                                                     const std::filesystem::path& base_dir = {}) {
  auto get = [&](const std::string& key) {
    auto it = cfg.find(key);
    return it == cfg.end() ? std::string() : it->second;
  };
  const std::string kind = get("generator");
  if (kind.rfind("mock:", 0) == 0) {
    std::filesystem::path script = kind.substr(5);
    if (script.is_relative() && !base_dir.empty()) script = base_dir / script;
    return std::make_unique<ScriptedGenerator>(ScriptedGenerator::from_file(script.string()));
  }
  if (!kind.empty() && kind != "http") throw Error(ErrorCode::InvalidArgument, "unknown generator '" + kind + "'");
  HttpGeneratorConfig h;
  h.endpoint = get("endpoint");
  h.api_key = get("api_key");
  h.model = get("model");
  if (const char* env = std::getenv("SPACER_GEN_ENDPOINT"); env && *env) h.endpoint = env;
  if (const char* env = std::getenv("SPACER_GEN_KEY"); env && *env) h.api_key = env;
  if (auto t = get("timeout_seconds"); !t.empty()) {
    try {
      h.timeout_seconds = std::stoi(t);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "timeout_seconds must be an integer");
    }
  }
  if (h.endpoint.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no generator endpoint (set 'endpoint' or SPACER_GEN_ENDPOINT)");
  }
  return std::make_unique<HttpGenerator>(std::move(h));
}

inline std::map<std::string, std::string> load_kv_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path.string());
  return parse_kv_config(in);
}

}  // namespace spacer
