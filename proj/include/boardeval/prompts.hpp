#pragma once

#include <string>
#include <string_view>

#include "boardeval/core.hpp"

namespace boardeval {

/// Prompt text for a game and task exactly as shipped in assets/prompts.
/// The QA template still carries its "{question}" placeholder.
std::string_view task_prompt(GameKind kind, TaskKind task);

/// QA template with "{question}" replaced by the question and its options.
std::string qa_prompt(GameKind kind, std::string_view question_block);

/// Line appended to the E2E prompt after a rejected move.
std::string_view invalid_move_notice();

}  // namespace boardeval
