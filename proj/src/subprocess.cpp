// Copyright 2026 The Formalism Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// One child process per batch. Standard input and output are pumped
// together through poll() so a child that answers while still reading
// cannot deadlock against us.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <mutex>

#include <fmt/format.h>

#include "formalism/errors.hpp"
#include "formalism/pipeline.hpp"
#include "transport.hpp"

namespace formalism {
namespace detail {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    auto end = nl == std::string_view::npos ? text.size() : nl;
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

}  // namespace detail

namespace {

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] {
    struct sigaction sa{};
    sa.sa_handler = SIG_IGN;
    sigaction(SIGPIPE, &sa, nullptr);
  });
}

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  ~Fd() { reset(); }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
};

void kill_group(pid_t pid) {
  ::kill(-pid, SIGKILL);
  ::waitpid(pid, nullptr, 0);
}

[[noreturn]] void sys_fail(const char* what) {
  throw ProtocolError(fmt::format("{}: {}", what, std::strerror(errno)));
}

}  // namespace

std::vector<std::string> run_subprocess_batch(const std::string& command,
                                              std::string_view input,
                                              double timeout_seconds) {
  ignore_sigpipe();
  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) sys_fail("pipe");
  Fd to_r(to_child[0]), to_w(to_child[1]);
  if (::pipe2(from_child, O_CLOEXEC) != 0) sys_fail("pipe");
  Fd from_r(from_child[0]), from_w(from_child[1]);

  pid_t pid = ::fork();
  if (pid < 0) sys_fail("fork");
  if (pid == 0) {
    // Own process group so a timeout also reaches anything the shell spawned;
    // ignored dispositions survive exec, so restore SIGPIPE for the backend.
    ::setpgid(0, 0);
    ::signal(SIGPIPE, SIG_DFL);
    ::dup2(to_r.get(), STDIN_FILENO);
    ::dup2(from_w.get(), STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  to_r.reset();
  from_w.reset();
  ::fcntl(to_w.get(), F_SETFL, ::fcntl(to_w.get(), F_GETFL) | O_NONBLOCK);

  using Clock = std::chrono::steady_clock;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(timeout_seconds));
  std::string output;
  std::size_t written = 0;
  if (input.empty()) to_w.reset();
  bool timed_out = false;
  char buf[65536];
  while (from_r.get() >= 0) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd fds[2];
    nfds_t n = 0;
    fds[n++] = {from_r.get(), POLLIN, 0};
    if (to_w.get() >= 0) fds[n++] = {to_w.get(), POLLOUT, 0};
    int rc = ::poll(fds, n, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      kill_group(pid);
      sys_fail("poll");
    }
    if (n == 2 && fds[1].revents != 0) {
      auto w = ::write(to_w.get(), input.data() + written, input.size() - written);
      if (w > 0) written += static_cast<std::size_t>(w);
      // EPIPE: the child stopped reading; whatever it answered still counts.
      if ((w < 0 && errno != EAGAIN && errno != EINTR) || written == input.size()) {
        to_w.reset();
      }
    }
    if (fds[0].revents != 0) {
      auto r = ::read(from_r.get(), buf, sizeof buf);
      if (r > 0) {
        output.append(buf, static_cast<std::size_t>(r));
      } else if (r == 0 || (errno != EAGAIN && errno != EINTR)) {
        from_r.reset();
      }
    }
  }
  to_w.reset();
  if (timed_out) {
    kill_group(pid);
    throw ProtocolError(fmt::format(
        "external backend timed out after {} s: {}", timeout_seconds, command));
  }
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) sys_fail("waitpid");
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw ProtocolError(fmt::format(
        "external backend failed ({}): {}",
        WIFEXITED(status) ? fmt::format("exit {}", WEXITSTATUS(status))
                          : fmt::format("signal {}", WTERMSIG(status)),
        command));
  }
  return detail::split_lines(output);
}

}  // namespace formalism
