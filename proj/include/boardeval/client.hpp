#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "boardeval/core.hpp"
#include "boardeval/engines.hpp"
#include "boardeval/records.hpp"

namespace boardeval {

/// What the harness knows about a query. Built-in agents read the ground
/// truth from here; the HTTP adapter ignores everything except `key`.
struct QueryContext {
  GameKind kind = GameKind::TicTacToe;
  TaskKind task = TaskKind::Perceiving;
  std::string key;  // sample id, or "<session>/turn-<n>"
  const BoardMatrix* truth_matrix = nullptr;
  const QAItem* qa = nullptr;
  const GameState* state = nullptr;
};

/// One contract for every model. send() blocks; failures surface as
/// Error{Transport}, Error{MalformedResponse} or Error{ScriptExhausted}.
class ModelAdapter {
 public:
  virtual ~ModelAdapter() = default;
  virtual std::string send(const std::string& prompt, std::span<const std::uint8_t> png, const QueryContext& ctx) = 0;
  virtual std::string name() const = 0;
};

struct AdapterConfig {
  std::string endpoint_url;  // full chat-completions URL
  std::string model_name;
  std::string api_key_env = "BOARDEVAL_API_KEY";
  int max_new_tokens = 1024;
  double temperature = 0.0;
  int timeout_ms = 60000;
  int max_retries = 3;
  int initial_backoff_ms = 500;
  int parallelism = 1;
};

/// Chat-completions request body: one user message holding the prompt and
/// the screenshot as a base64 data URL.
nlohmann::json chat_request_body(const AdapterConfig& cfg, const std::string& prompt,
                                 std::span<const std::uint8_t> png);
/// Text of choices[0].message.content. Throws Error{MalformedResponse}.
std::string chat_response_text(const std::string& body);

std::string base64_encode(std::span<const std::uint8_t> bytes);

class HttpAdapter : public ModelAdapter {
 public:
  explicit HttpAdapter(AdapterConfig cfg);
  std::string send(const std::string& prompt, std::span<const std::uint8_t> png, const QueryContext& ctx) override;
  std::string name() const override { return "http:" + cfg_.model_name; }
  /// Number of retries performed by the most recent send.
  int last_retries() const { return last_retries_.load(); }

 private:
  AdapterConfig cfg_;
  std::atomic<int> last_retries_{0};
};

/// Uniform-random well-formed replies, seeded per query key so runs
/// reproduce regardless of scheduling.
class RandomAgent : public ModelAdapter {
 public:
  explicit RandomAgent(Seed seed) : seed_(seed) {}
  std::string send(const std::string& prompt, std::span<const std::uint8_t> png, const QueryContext& ctx) override;
  std::string name() const override { return "random"; }

 private:
  Seed seed_;
};

/// Ground-truth matrix, correct letter, or the first legal move.
class OracleAgent : public ModelAdapter {
 public:
  std::string send(const std::string& prompt, std::span<const std::uint8_t> png, const QueryContext& ctx) override;
  std::string name() const override { return "oracle"; }
};

/// Replays a fixed list of replies in order.
class ScriptedAgent : public ModelAdapter {
 public:
  explicit ScriptedAgent(std::vector<std::string> replies) : queue_(replies.begin(), replies.end()) {}
  std::string send(const std::string& prompt, std::span<const std::uint8_t> png, const QueryContext& ctx) override;
  std::string name() const override { return "scripted"; }
  size_t remaining() const;

 private:
  mutable std::mutex mu_;
  std::deque<std::string> queue_;
};

/// A reply that is never a valid move, for strike-rule tests.
class AlwaysInvalidAgent : public ModelAdapter {
 public:
  std::string send(const std::string&, std::span<const std::uint8_t>, const QueryContext&) override {
    return "Observation: unsure\nStrategy: none\nMovement: pass";
  }
  std::string name() const override { return "invalid"; }
};

}  // namespace boardeval
