#include "boardeval/uci.hpp"

#include <chrono>
#include <csignal>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "boardeval/core.hpp"

namespace boardeval {

namespace {

Error transport(const std::string& what) { return Error(ErrorCode::Transport, "uci: " + what); }

void close_fd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

}  // namespace

UciEngine::UciEngine(const std::string& executable, int timeout_ms) : timeout_ms_(timeout_ms) {
  if (executable.empty()) throw transport("no engine path configured");
  // A dead engine must surface as EPIPE, not kill the harness.
  std::signal(SIGPIPE, SIG_IGN);

  int in_pipe[2], out_pipe[2];
  if (::pipe(in_pipe) != 0) throw transport(std::strerror(errno));
  if (::pipe(out_pipe) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw transport(std::strerror(errno));
  }
  // Report exec failure through a close-on-exec pipe.
  int exec_pipe[2];
  if (::pipe2(exec_pipe, O_CLOEXEC) != 0) throw transport(std::strerror(errno));

  pid_ = ::fork();
  if (pid_ < 0) throw transport(std::strerror(errno));
  if (pid_ == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::close(exec_pipe[0]);
    ::execl(executable.c_str(), executable.c_str(), static_cast<char*>(nullptr));
    const int err = errno;
    (void)!::write(exec_pipe[1], &err, sizeof err);
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  ::close(exec_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];

  int err = 0;
  const ssize_t n = ::read(exec_pipe[0], &err, sizeof err);
  ::close(exec_pipe[0]);
  if (n == static_cast<ssize_t>(sizeof err)) {
    shutdown();
    throw transport("cannot launch '" + executable + "': " + std::strerror(err));
  }

  try {
    send("uci");
    for (;;) {
      const std::string line = read_line(timeout_ms_);
      if (line.rfind("id name ", 0) == 0) name_ = line.substr(8);
      if (line == "uciok") break;
    }
    send("isready");
    wait_for("readyok", timeout_ms_);
  } catch (...) {
    shutdown();
    throw;
  }
}

UciEngine::~UciEngine() { shutdown(); }

void UciEngine::shutdown() {
  if (to_child_ >= 0) {
    const char quit[] = "quit\n";
    (void)!::write(to_child_, quit, sizeof quit - 1);
  }
  close_fd(to_child_);
  close_fd(from_child_);
  if (pid_ > 0) {
    int status = 0;
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, &status, WNOHANG) == pid_) {
        pid_ = -1;
        return;
      }
      ::usleep(2000);
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, &status, 0);
    pid_ = -1;
  }
}

void UciEngine::send(const std::string& line) {
  const std::string data = line + "\n";
  size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(to_child_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw transport(std::string("write failed: ") + std::strerror(errno));
    }
    off += static_cast<size_t>(n);
  }
}

std::string UciEngine::read_line(int timeout_ms) {
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now()).count();
    if (left <= 0) throw transport("timed out waiting for engine output");
    pollfd pfd{from_child_, POLLIN, 0};
    const int rc = ::poll(&pfd, 1, static_cast<int>(left));
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw transport(std::string("poll failed: ") + std::strerror(errno));
    }
    if (rc == 0) continue;
    char chunk[4096];
    const ssize_t n = ::read(from_child_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw transport(std::string("read failed: ") + std::strerror(errno));
    }
    if (n == 0) throw transport("engine closed its output");
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

std::string UciEngine::wait_for(const std::string& prefix, int timeout_ms) {
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now()).count();
    if (left <= 0) throw transport("timed out waiting for '" + prefix + "'");
    std::string line = read_line(static_cast<int>(left));
    if (line.rfind(prefix, 0) == 0) return line;
  }
}

std::string UciEngine::bestmove(const std::string& fen, const std::vector<std::string>& moves, int movetime_ms) {
  std::string position = "position fen " + fen;
  if (!moves.empty()) {
    position += " moves";
    for (const auto& m : moves) position += " " + m;
  }
  send(position);
  send("go movetime " + std::to_string(movetime_ms));
  const std::string line = wait_for("bestmove", movetime_ms + timeout_ms_);
  const std::string rest = std::string(trim(std::string_view(line).substr(8)));
  const std::string token = rest.substr(0, rest.find(' '));
  if (token.empty() || token == "(none)") throw transport("engine returned no move");
  return token;
}

}  // namespace boardeval
