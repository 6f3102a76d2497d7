#pragma once

#include <string>
#include <vector>

#include <sys/types.h>

namespace boardeval {

/// One external engine child process speaking UCI over its standard streams.
/// Construction launches the binary and completes the uci/isready handshake;
/// failures throw Error{Transport}. Not thread-safe: one instance per session.
class UciEngine {
 public:
  explicit UciEngine(const std::string& executable, int timeout_ms = 5000);
  ~UciEngine();
  UciEngine(const UciEngine&) = delete;
  UciEngine& operator=(const UciEngine&) = delete;

  /// Returns the long-algebraic token of the "bestmove" reply.
  std::string bestmove(const std::string& fen, const std::vector<std::string>& moves, int movetime_ms);

  const std::string& name() const { return name_; }

 private:
  void send(const std::string& line);
  std::string read_line(int timeout_ms);
  std::string wait_for(const std::string& prefix, int timeout_ms);
  void shutdown();

  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  int timeout_ms_;
  std::string buffer_;
  std::string name_;
};

}  // namespace boardeval
