#include "boardeval/client.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <regex>
#include <thread>

#include "httplib.h"

#include "boardeval/rng.hpp"

namespace boardeval {

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<size_t>(n));
  return out;
}

nlohmann::json chat_request_body(const AdapterConfig& cfg, const std::string& prompt,
                                 std::span<const std::uint8_t> png) {
  nlohmann::json content = nlohmann::json::array();
  content.push_back({{"type", "text"}, {"text", prompt}});
  content.push_back(
      {{"type", "image_url"}, {"image_url", {{"url", "data:image/png;base64," + base64_encode(png)}}}});
  return {
      {"model", cfg.model_name},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", content}}})},
      {"max_tokens", cfg.max_new_tokens},
      {"temperature", cfg.temperature},
  };
}

std::string chat_response_text(const std::string& body) {
  const auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::MalformedResponse, "response is not JSON");
  try {
    const auto& content = j.at("choices").at(0).at("message").at("content");
    if (content.is_string()) return content.get<std::string>();
    if (content.is_array()) {
      std::string text;
      for (const auto& part : content) {
        if (part.value("type", "") == "text") text += part.value("text", "");
      }
      return text;
    }
  } catch (const nlohmann::json::exception&) {
  }
  throw Error(ErrorCode::MalformedResponse, "response has no choices[0].message.content");
}

// ---------------------------------------------------------------------------

HttpAdapter::HttpAdapter(AdapterConfig cfg) : cfg_(std::move(cfg)) {}

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw Error(ErrorCode::InvalidArgument, "bad endpoint url: " + url);
  return {m.str(1), m[2].matched ? m.str(2) : "/"};
}

}  // namespace

std::string HttpAdapter::send(const std::string& prompt, std::span<const std::uint8_t> png, const QueryContext&) {
  const Endpoint ep = split_url(cfg_.endpoint_url);
  httplib::Client cli(ep.origin);
  const auto timeout = std::chrono::milliseconds(cfg_.timeout_ms);
  cli.set_connection_timeout(timeout);
  cli.set_read_timeout(timeout);
  cli.set_write_timeout(timeout);
  httplib::Headers headers;
  if (const char* key = std::getenv(cfg_.api_key_env.c_str()); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  const std::string body = chat_request_body(cfg_, prompt, png).dump();

  last_retries_ = 0;
  std::string last_error;
  for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
    if (attempt > 0) {
      ++last_retries_;
      std::this_thread::sleep_for(std::chrono::milliseconds(cfg_.initial_backoff_ms) * (1 << (attempt - 1)));
    }
    auto res = cli.Post(ep.path, headers, body, "application/json");
    if (!res) {
      last_error = "transport: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) return chat_response_text(res->body);
    last_error = "HTTP " + std::to_string(res->status);
    if (res->status != 429 && res->status < 500) break;  // client errors do not improve on retry
  }
  throw Error(ErrorCode::Transport, last_error);
}

// ---------------------------------------------------------------------------

namespace {

std::string random_label(GameKind kind, Rng& rng) {
  const Dims d = board_dims(kind);
  const CellCoord c{rng.uniform_int(0, d.rows - 1), rng.uniform_int(0, d.cols - 1)};
  switch (kind) {
    case GameKind::Sudoku: return coord_to_label(kind, c) + " " + std::to_string(rng.uniform_int(1, 9));
    case GameKind::Chess: {
      static constexpr const char* kPrefixes[] = {"", "N", "B", "R", "Q", "K"};
      return kPrefixes[rng.below(6)] + coord_to_label(kind, c);
    }
    default: return coord_to_label(kind, c);
  }
}

}  // namespace

std::string RandomAgent::send(const std::string&, std::span<const std::uint8_t>, const QueryContext& ctx) {
  Rng rng(derive_seed(seed_, ctx.key));
  switch (ctx.task) {
    case TaskKind::Perceiving: {
      const auto alpha = cell_alphabet(ctx.kind);
      std::vector<int> cells(static_cast<size_t>(board_dims(ctx.kind).cells()));
      for (int& v : cells) v = rng.pick(alpha);
      return "Game State: " + matrix_to_text(BoardMatrix(ctx.kind, std::move(cells)));
    }
    case TaskKind::QA: {
      const int n = ctx.qa ? static_cast<int>(ctx.qa->options.size()) : 4;
      return std::string("Answer: ") + static_cast<char>('A' + rng.below(static_cast<std::uint64_t>(n)));
    }
    case TaskKind::RuleFollowing: return "Movement: " + random_label(ctx.kind, rng);
    case TaskKind::E2E:
      return "Observation: board seen\nStrategy: random\nMovement: " + random_label(ctx.kind, rng);
  }
  return {};
}

std::string OracleAgent::send(const std::string&, std::span<const std::uint8_t>, const QueryContext& ctx) {
  switch (ctx.task) {
    case TaskKind::Perceiving:
      if (!ctx.truth_matrix) throw Error(ErrorCode::InvalidArgument, "oracle needs the ground-truth matrix");
      return "Game State: " + matrix_to_text(*ctx.truth_matrix);
    case TaskKind::QA:
      if (!ctx.qa) throw Error(ErrorCode::InvalidArgument, "oracle needs the question");
      return std::string("Answer: ") + ctx.qa->correct;
    case TaskKind::RuleFollowing:
    case TaskKind::E2E: {
      if (!ctx.state) throw Error(ErrorCode::InvalidArgument, "oracle needs the game state");
      const auto moves = legal_moves(*ctx.state);
      if (moves.empty()) throw Error(ErrorCode::TerminalState, "no legal move");
      const std::string prefix = ctx.task == TaskKind::E2E ? "Observation: known\nStrategy: first legal move\n" : "";
      return prefix + "Movement: " + move_to_text(moves.front());
    }
  }
  return {};
}

std::string ScriptedAgent::send(const std::string&, std::span<const std::uint8_t>, const QueryContext&) {
  std::lock_guard lock(mu_);
  if (queue_.empty()) throw Error(ErrorCode::ScriptExhausted, "scripted agent has no replies left");
  std::string reply = std::move(queue_.front());
  queue_.pop_front();
  return reply;
}

size_t ScriptedAgent::remaining() const {
  std::lock_guard lock(mu_);
  return queue_.size();
}

}  // namespace boardeval
