// Copyright 2026 The vcurate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vcurate/llm.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#ifdef VCURATE_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

namespace vcurate {

namespace fs = std::filesystem;
using nlohmann::json;

std::string request_fingerprint(const ChatRequest& request) {
  std::ostringstream canon;
  canon << request.model << '\x1e' << request.temperature << '\x1e'
        << request.max_tokens << '\x1e' << request.attempt << '\x1e';
  for (const ChatMessage& m : request.messages) {
    canon << m.role << '\x1f' << m.content << '\x1e';
  }
  return fingerprint128(canon.str());
}

namespace {

struct SplitUrl {
  std::string base;  // scheme://host[:port]
  std::string path;  // /v1/...
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error("endpoint must include a scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

bool retryable_status(int status) {
  return status == 408 || status == 429 || status >= 500;
}

// Shared retry-with-backoff POST. Returns the response body.
std::string post_json_with_retry(const ClientProfile& profile,
                                 const std::string& body) {
  const SplitUrl url = split_url(profile.endpoint);
  httplib::Headers headers;
  if (!profile.key_env.empty()) {
    if (const char* key = std::getenv(profile.key_env.c_str())) {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }
  std::string last_error;
  for (int attempt = 0; attempt < std::max(1, profile.max_attempts);
       ++attempt) {
    if (attempt > 0) {
      const auto delay =
          std::chrono::milliseconds(profile.backoff_ms) * (1 << (attempt - 1));
      std::this_thread::sleep_for(delay);
    }
    httplib::Client client(url.base);
    client.set_connection_timeout(0, profile.timeout_ms * 1000);
    client.set_read_timeout(profile.timeout_ms / 1000,
                            (profile.timeout_ms % 1000) * 1000);
    auto result = client.Post(url.path, headers, body, "application/json");
    if (!result) {
      last_error = "connection failure: " + httplib::to_string(result.error());
      continue;
    }
    if (result->status == 200) return result->body;
    last_error = "HTTP " + std::to_string(result->status);
    if (!retryable_status(result->status)) break;
  }
  throw TransportError("request to " + profile.endpoint + " failed (" +
                       last_error + ")");
}

}  // namespace

HttpLlmClient::HttpLlmClient(ClientProfile profile)
    : profile_(std::move(profile)) {}

ChatResponse HttpLlmClient::complete(const ChatRequest& request) {
  json messages = json::array();
  for (const ChatMessage& m : request.messages) {
    messages.push_back({{"role", m.role}, {"content", m.content}});
  }
  const json body = {{"model", request.model},
                     {"messages", messages},
                     {"temperature", request.temperature},
                     {"max_tokens", request.max_tokens}};
  const std::string reply = post_json_with_retry(profile_, body.dump());
  try {
    const json parsed = json::parse(reply);
    return {parsed.at("choices").at(0).at("message").at("content")
                .get<std::string>()};
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed chat response: ") + e.what());
  }
}

MockLlmClient::MockLlmClient(fs::path fixture_dir) : dir_(std::move(fixture_dir)) {
  if (!fs::is_directory(dir_)) {
    throw Error("mock LLM fixture directory not found: " + dir_.string());
  }
}

ChatResponse MockLlmClient::complete(const ChatRequest& request) {
  const std::string fp = request_fingerprint(request);
  const fs::path exact = dir_ / (fp + ".txt");
  if (fs::exists(exact)) return {read_text_file(exact)};
  const fs::path fallback = dir_ / "__default__.txt";
  if (fs::exists(fallback)) return {read_text_file(fallback)};
  // Dump the prompt so a fixture author can fill in the response.
  std::ostringstream dump;
  dump << "model: " << request.model << "\nattempt: " << request.attempt
       << "\n";
  for (const ChatMessage& m : request.messages) {
    dump << "--- " << m.role << " ---\n" << m.content << "\n";
  }
  write_text_file_atomic(dir_ / "missing" / (fp + ".prompt.txt"), dump.str());
  throw TransportError("mock response missing: " + fp);
}

CachingLlmClient::CachingLlmClient(std::shared_ptr<LlmClient> inner,
                                   fs::path cache_dir)
    : inner_(std::move(inner)), dir_(std::move(cache_dir)) {
  fs::create_directories(dir_);
}

ChatResponse CachingLlmClient::complete(const ChatRequest& request) {
  const fs::path entry = dir_ / (request_fingerprint(request) + ".txt");
  if (fs::exists(entry)) {
    hits_.fetch_add(1);
    return {read_text_file(entry)};
  }
  inner_calls_.fetch_add(1);
  const ChatResponse response = inner_->complete(request);
  write_text_file_atomic(entry, response.text);
  return response;
}

HttpEmbedClient::HttpEmbedClient(ClientProfile profile)
    : profile_(std::move(profile)) {}

std::vector<double> HttpEmbedClient::embed(std::string_view text) {
  const json body = {{"model", profile_.model},
                     {"input", json::array({std::string(text)})}};
  const std::string reply = post_json_with_retry(profile_, body.dump());
  try {
    const json parsed = json::parse(reply);
    return parsed.at("data").at(0).at("embedding").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed embedding response: ") +
                         e.what());
  }
}

std::vector<double> HashEmbedClient::embed(std::string_view text) {
  std::vector<double> v(dims_);
  const std::uint64_t base = fnv1a64(text);
  for (std::size_t i = 0; i < dims_; ++i) {
    const std::uint64_t h = mix64(base + 0x9e3779b97f4a7c15ULL * (i + 1));
    // map to (-1, 1)
    v[i] = (static_cast<double>(h >> 11) /
            static_cast<double>(1ULL << 53)) * 2.0 - 1.0;
  }
  return v;
}

CachingEmbedClient::CachingEmbedClient(std::shared_ptr<EmbedClient> inner,
                                       fs::path cache_dir, std::string model)
    : inner_(std::move(inner)), dir_(std::move(cache_dir)),
      model_(std::move(model)) {
  fs::create_directories(dir_);
}

std::vector<double> CachingEmbedClient::embed(std::string_view text) {
  const std::string key =
      fingerprint128(model_ + "\x1e" + std::string(text));
  const fs::path entry = dir_ / (key + ".json");
  if (fs::exists(entry)) {
    hits_.fetch_add(1);
    return json::parse(read_text_file(entry)).get<std::vector<double>>();
  }
  inner_calls_.fetch_add(1);
  std::vector<double> v = inner_->embed(text);
  write_text_file_atomic(entry, json(v).dump());
  return v;
}

}  // namespace vcurate
