#include "boardeval/prompts.hpp"

#include "boardeval/assets.hpp"

namespace boardeval {

namespace {

std::string_view require_asset(const std::string& path) {
  auto text = embedded_asset(path);
  if (!text) throw Error(ErrorCode::Io, "missing embedded asset " + path);
  return *text;
}

}  // namespace

std::string_view task_prompt(GameKind kind, TaskKind task) {
  return require_asset("prompts/" + std::string(task_id(task)) + "/" + std::string(game_id(kind)) + ".txt");
}

std::string qa_prompt(GameKind kind, std::string_view question_block) {
  std::string text(task_prompt(kind, TaskKind::QA));
  const std::string placeholder = "{question}";
  const auto pos = text.find(placeholder);
  if (pos == std::string::npos) throw Error(ErrorCode::Io, "QA template without placeholder");
  text.replace(pos, placeholder.size(), question_block);
  return text;
}

std::string_view invalid_move_notice() { return require_asset("prompts/e2e/invalid_move_notice.txt"); }

}  // namespace boardeval
