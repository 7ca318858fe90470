#pragma once

// Line protocol adapter for out-of-process models.
//
// The command runs under /bin/sh with CHUNKPUNCT_MODEL_FORMAT set to "plain"
// or "encoded". For each batch we write one lowercase chunk per line, flush,
// and read back exactly one restored line per chunk, in order. The process is
// kept alive across batches.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "chunkpunct/codec.hpp"
#include "chunkpunct/error.hpp"
#include "chunkpunct/merger.hpp"
#include "chunkpunct/models.hpp"
#include "chunkpunct/text.hpp"

extern char** environ;

namespace chunkpunct {

struct ExternalOptions {
  std::string command;
  LineFormat format = LineFormat::Plain;
  std::size_t batch_size = 64;
  int timeout_ms = 30000;  // per batch

  void validate() const {
    if (command.empty()) throw ConfigError("external model needs a command");
    if (batch_size == 0) throw ConfigError("external model batch size must be positive");
    if (timeout_ms <= 0) throw ConfigError("external model timeout must be positive");
  }
};

namespace detail {

/// A child process with a writable stdin and readable stdout.
class ChildProcess {
 public:
  ChildProcess(const std::string& command, LineFormat format) {
    int in_fds[2];  // socketpair so a dead reader gives EPIPE instead of SIGPIPE
    int out_fds[2];
    if (socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, in_fds) != 0) {
      throw ModelError(std::string("socketpair: ") + std::strerror(errno));
    }
    if (pipe2(out_fds, O_CLOEXEC) != 0) {
      ::close(in_fds[0]);
      ::close(in_fds[1]);
      throw ModelError(std::string("pipe: ") + std::strerror(errno));
    }
    // Everything the child needs is prepared before fork.
    std::vector<std::string> env_storage;
    for (char** e = environ; e && *e; ++e) {
      if (std::strncmp(*e, "CHUNKPUNCT_MODEL_FORMAT=", 24) != 0) env_storage.emplace_back(*e);
    }
    env_storage.push_back("CHUNKPUNCT_MODEL_FORMAT=" + to_string(format));
    std::vector<char*> envp;
    for (auto& s : env_storage) envp.push_back(s.data());
    envp.push_back(nullptr);
    std::string shell_cmd = command;
    char sh[] = "/bin/sh";
    char dash_c[] = "-c";
    char* argv[] = {sh, dash_c, shell_cmd.data(), nullptr};

    pid_ = fork();
    if (pid_ < 0) {
      const int err = errno;
      for (int fd : {in_fds[0], in_fds[1], out_fds[0], out_fds[1]}) ::close(fd);
      throw ModelError(std::string("fork: ") + std::strerror(err));
    }
    if (pid_ == 0) {
      setpgid(0, 0);  // the shell and anything it starts are killed together
      dup2(in_fds[1], STDIN_FILENO);
      dup2(out_fds[1], STDOUT_FILENO);
      execve("/bin/sh", argv, envp.data());
      _exit(127);
    }
    setpgid(pid_, pid_);
    ::close(in_fds[1]);
    ::close(out_fds[1]);
    in_ = in_fds[0];
    out_ = out_fds[0];
    fcntl(in_, F_SETFL, fcntl(in_, F_GETFL) | O_NONBLOCK);
    fcntl(out_, F_SETFL, fcntl(out_, F_GETFL) | O_NONBLOCK);
  }

  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  ~ChildProcess() {
    if (in_ >= 0) ::close(in_);
    if (out_ >= 0) ::close(out_);
    if (pid_ > 0) {
      // Give the model a moment to exit on EOF, then kill it.
      for (int i = 0; i < 50; ++i) {
        if (waitpid(pid_, nullptr, WNOHANG) == pid_) return;
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      }
      kill(-pid_, SIGKILL);
      waitpid(pid_, nullptr, 0);
    }
  }

  struct Failure {
    std::size_t lines_read;
    std::string reason;
  };

  /// Writes `input` and reads `expected` lines. On failure the child is dead.
  std::optional<Failure> exchange(const std::string& input, std::size_t expected,
                                  std::vector<std::string>& lines, int timeout_ms) {
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
    std::size_t written = 0;
    lines.clear();
    while (lines.size() < expected) {
      const auto now = std::chrono::steady_clock::now();
      if (now >= deadline) return terminate("timed out after " + std::to_string(timeout_ms) + " ms", lines);
      const int wait = static_cast<int>(
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count()) + 1;
      pollfd fds[2] = {{out_, POLLIN, 0}, {in_, POLLOUT, 0}};
      const nfds_t nfds = written < input.size() ? 2 : 1;
      const int rc = ::poll(fds, nfds, wait);
      if (rc < 0) {
        if (errno == EINTR) continue;
        return terminate(std::string("poll: ") + std::strerror(errno), lines);
      }
      if (nfds == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
        const ssize_t n = ::send(in_, input.data() + written, input.size() - written, MSG_NOSIGNAL);
        if (n > 0) {
          written += static_cast<std::size_t>(n);
        } else if (n < 0 && errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) {
          return terminate("model closed its input (" + std::string(std::strerror(errno)) + ")", lines);
        }
      }
      if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
        char buf[65536];
        const ssize_t n = ::read(out_, buf, sizeof buf);
        if (n > 0) {
          for (ssize_t i = 0; i < n; ++i) {
            if (buf[i] == '\n') {
              if (!partial_.empty() && partial_.back() == '\r') partial_.pop_back();
              lines.push_back(std::move(partial_));
              partial_.clear();
            } else {
              partial_.push_back(buf[i]);
            }
          }
        } else if (n == 0) {
          return terminate("model exited early" + exit_note(), lines);
        } else if (errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) {
          return terminate(std::string("read: ") + std::strerror(errno), lines);
        }
      }
    }
    if (lines.size() > expected) {
      return terminate("model wrote more lines than it was given", lines);
    }
    if (!partial_.empty()) return terminate("model wrote a partial line past the batch", lines);
    return std::nullopt;
  }

 private:
  std::string exit_note() {
    int status = 0;
    pid_t r = 0;
    for (int i = 0; i < 100 && r == 0; ++i) {
      r = waitpid(pid_, &status, WNOHANG);
      if (r == 0) std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    if (r != pid_) return {};
    pid_ = -1;
    if (WIFEXITED(status)) return " with status " + std::to_string(WEXITSTATUS(status));
    if (WIFSIGNALED(status)) return " on signal " + std::to_string(WTERMSIG(status));
    return {};
  }

  std::optional<Failure> terminate(std::string reason, const std::vector<std::string>& lines) {
    if (pid_ > 0) {
      kill(-pid_, SIGKILL);
      waitpid(pid_, nullptr, 0);
      pid_ = -1;
    }
    return Failure{lines.size(), std::move(reason)};
  }

  pid_t pid_ = -1;
  int in_ = -1;
  int out_ = -1;
  std::string partial_;
};

}  // namespace detail

class ExternalRestorer : public Restorer {
 public:
  explicit ExternalRestorer(ExternalOptions opts) : opts_(std::move(opts)) { opts_.validate(); }

  LabeledSequence restore(const Chunk& chunk) const override {
    return std::move(restore_batch(std::span(&chunk, 1)).front());
  }

  std::vector<LabeledSequence> restore_batch(std::span<const Chunk> chunks) const override {
    std::vector<std::string> lines;
    {
      std::lock_guard lock(mu_);
      if (!child_) child_.emplace(opts_.command, opts_.format);
      std::string input;
      for (const auto& c : chunks) {
        input += join(c.words);
        input.push_back('\n');
      }
      if (auto failure = child_->exchange(input, chunks.size(), lines, opts_.timeout_ms)) {
        child_.reset();
        const std::size_t at = std::min(failure->lines_read, chunks.size() - 1);
        throw ExternalModelError(chunks[at].index, failure->reason);
      }
    }
    std::vector<LabeledSequence> out;
    out.reserve(chunks.size());
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      try {
        if (opts_.format == LineFormat::Plain) {
          out.push_back(align(chunks[i].words, parse_plain(lines[i])));
        } else {
          out.push_back(decode(lines[i], chunks[i].words));
        }
      } catch (const Error& e) {
        throw ExternalModelError(chunks[i].index, std::string("bad output line: ") + e.what());
      }
    }
    return out;
  }

  std::size_t batch_size() const override { return opts_.batch_size; }

 private:
  ExternalOptions opts_;
  mutable std::mutex mu_;
  mutable std::optional<detail::ChildProcess> child_;
};

}  // namespace chunkpunct
