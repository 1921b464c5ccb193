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
//
// Chat-completion and embedding clients: HTTP transport with retry and
// exponential backoff, a fixture-directory mock for offline runs, and a
// write-then-rename response cache.

#ifndef VCURATE_LLM_HPP
#define VCURATE_LLM_HPP

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vcurate/util.hpp"

namespace vcurate {

/// Transport-level failure (network, HTTP 5xx after retries, missing mock
/// fixture). Callers downgrade these to per-record outcomes instead of
/// aborting a run.
class TransportError : public Error {
 public:
  using Error::Error;
};

struct ChatMessage {
  std::string role;
  std::string content;
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int max_tokens = 2048;
  // Semantic-retry salt. Included in the fingerprint so a retry is a new
  // cacheable request while identical (prompt, params, attempt) stays a
  // pure cache hit.
  int attempt = 0;
};

struct ChatResponse {
  std::string text;
};

/// Stable 32-hex key over (model, params, messages, attempt).
std::string request_fingerprint(const ChatRequest& request);

class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
};

struct ClientProfile {
  std::string endpoint;  // e.g. https://api.example.com/v1/chat/completions
  std::string model;
  std::string key_env;   // environment variable holding the API key
  double temperature = 0.0;
  int max_tokens = 2048;
  int timeout_ms = 60000;
  int max_attempts = 3;  // transport attempts (1 initial + retries)
  int backoff_ms = 250;  // doubled per retry
  std::string cache_dir;  // empty disables the response cache
  int concurrency = 2;
};

/// JSON-over-HTTP chat-completion transport. Retries connection failures
/// and retryable statuses (408/429/5xx) with exponential backoff.
class HttpLlmClient : public LlmClient {
 public:
  explicit HttpLlmClient(ClientProfile profile);
  ChatResponse complete(const ChatRequest& request) override;

 private:
  ClientProfile profile_;
};

/// Offline fixture client: responses live in a directory as
/// `<fingerprint>.txt`, with `__default__.txt` as a catch-all. A missing
/// response dumps the prompt under `missing/` to ease fixture authoring
/// and raises TransportError.
class MockLlmClient : public LlmClient {
 public:
  explicit MockLlmClient(std::filesystem::path fixture_dir);
  ChatResponse complete(const ChatRequest& request) override;

 private:
  std::filesystem::path dir_;
};

/// Adapts a plain function; the workhorse for unit tests and custom
/// backends. Counts calls.
class FunctionLlmClient : public LlmClient {
 public:
  using Fn = std::function<std::string(const ChatRequest&)>;
  explicit FunctionLlmClient(Fn fn) : fn_(std::move(fn)) {}
  ChatResponse complete(const ChatRequest& request) override {
    calls_.fetch_add(1);
    return {fn_(request)};
  }
  std::uint64_t calls() const { return calls_.load(); }

 private:
  Fn fn_;
  std::atomic<std::uint64_t> calls_{0};
};

/// Response cache decorator. Identical requests (same fingerprint) return
/// the cached text without touching the inner client. Safe under
/// concurrent writers via write-then-rename.
class CachingLlmClient : public LlmClient {
 public:
  CachingLlmClient(std::shared_ptr<LlmClient> inner,
                   std::filesystem::path cache_dir);
  ChatResponse complete(const ChatRequest& request) override;

  std::uint64_t hits() const { return hits_.load(); }
  std::uint64_t inner_calls() const { return inner_calls_.load(); }

 private:
  std::shared_ptr<LlmClient> inner_;
  std::filesystem::path dir_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> inner_calls_{0};
};

// --- embeddings ------------------------------------------------------------

class EmbedClient {
 public:
  virtual ~EmbedClient() = default;
  virtual std::vector<double> embed(std::string_view text) = 0;
};

class HttpEmbedClient : public EmbedClient {
 public:
  explicit HttpEmbedClient(ClientProfile profile);
  std::vector<double> embed(std::string_view text) override;

 private:
  ClientProfile profile_;
};

/// Deterministic pseudo-embedding derived from the text hash. Identical
/// texts map to identical vectors, so cosine(x, x) = 1; used by mock runs.
class HashEmbedClient : public EmbedClient {
 public:
  explicit HashEmbedClient(std::size_t dims = 16) : dims_(dims) {}
  std::vector<double> embed(std::string_view text) override;

 private:
  std::size_t dims_;
};

class FunctionEmbedClient : public EmbedClient {
 public:
  using Fn = std::function<std::vector<double>(std::string_view)>;
  explicit FunctionEmbedClient(Fn fn) : fn_(std::move(fn)) {}
  std::vector<double> embed(std::string_view text) override {
    calls_.fetch_add(1);
    return fn_(text);
  }
  std::uint64_t calls() const { return calls_.load(); }

 private:
  Fn fn_;
  std::atomic<std::uint64_t> calls_{0};
};

/// Embedding cache keyed by (model, text) hash.
class CachingEmbedClient : public EmbedClient {
 public:
  CachingEmbedClient(std::shared_ptr<EmbedClient> inner,
                     std::filesystem::path cache_dir, std::string model = "");
  std::vector<double> embed(std::string_view text) override;

  std::uint64_t hits() const { return hits_.load(); }
  std::uint64_t inner_calls() const { return inner_calls_.load(); }

 private:
  std::shared_ptr<EmbedClient> inner_;
  std::filesystem::path dir_;
  std::string model_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> inner_calls_{0};
};

}  // namespace vcurate

#endif  // VCURATE_LLM_HPP
