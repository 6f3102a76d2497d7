// Minimal UCI speaker for client tests. FAKE_UCI_MODE selects behaviour:
// "first" (default) answers the first legal move, "illegal" answers a1a1,
// "silent" never answers "go", "crash" exits after the handshake.
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "boardeval/chess.hpp"

using boardeval::chess::Position;

int main() {
  const char* env = std::getenv("FAKE_UCI_MODE");
  const std::string mode = env ? env : "first";
  Position pos = Position::start();
  std::string line;
  while (std::getline(std::cin, line)) {
    std::istringstream in(line);
    std::string cmd;
    in >> cmd;
    if (cmd == "uci") {
      std::cout << "id name fake-uci\nid author test\nuciok" << std::endl;
      if (mode == "crash") return 3;
    } else if (cmd == "isready") {
      std::cout << "readyok" << std::endl;
    } else if (cmd == "position") {
      std::string kind, word, fen;
      in >> kind;
      if (kind == "startpos") {
        pos = Position::start();
      } else {
        for (int i = 0; i < 6 && in >> word; ++i) fen += (i ? " " : "") + word;
        pos = Position::from_fen(fen);
      }
      if (in >> word && word == "moves") {
        while (in >> word) {
          auto m = pos.parse_uci(word);
          if (!m) return 4;
          pos.make(*m);
        }
      }
    } else if (cmd == "go") {
      if (mode == "silent") continue;
      std::cout << "info depth 1 score cp 0" << std::endl;
      if (mode == "illegal") {
        std::cout << "bestmove a1a1" << std::endl;
      } else {
        const auto moves = pos.legal_moves();
        std::cout << "bestmove " << (moves.empty() ? std::string("(none)") : pos.uci(moves.front())) << std::endl;
      }
    } else if (cmd == "quit") {
      return 0;
    }
  }
  return 0;
}
