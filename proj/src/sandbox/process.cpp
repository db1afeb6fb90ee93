// Copyright 2026 The soeval Authors
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

#include "soeval/sandbox/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/syscall.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <utility>

extern char** environ;

namespace soeval::sandbox {
namespace {

using Clock = std::chrono::steady_clock;

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  ~Fd() { reset(); }
  Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  Fd& operator=(Fd&& o) noexcept {
    if (this != &o) {
      reset();
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

struct Pipe {
  Fd read;
  Fd write;
};

Pipe make_pipe() {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) throw HarnessError(std::string("pipe2: ") + std::strerror(errno));
  return {Fd(fds[0]), Fd(fds[1])};
}

// Child side between fork and exec: async-signal-safe calls only.
[[noreturn]] void report_exec_failure(int fd, int err) {
  [[maybe_unused]] auto n = ::write(fd, &err, sizeof err);
  ::_exit(127);
}

[[noreturn]] void exec_child(const ProcessSpec& spec, char* const* argv, char* const* envp, int dev_null, int out_fd,
                             int err_fd, int result_fd, int exec_err_fd) {
  auto fail = [&exec_err_fd](int err) { report_exec_failure(exec_err_fd, err); };
  ::setpgid(0, 0);
  const std::array<std::pair<int, int>, 4> moves = {{{dev_null, 0}, {out_fd, 1}, {err_fd, 2}, {result_fd, 3}}};
  // Lift sources out of the low range first so a later dup2 cannot clobber them.
  std::array<int, 4> lifted{};
  for (std::size_t i = 0; i < moves.size(); ++i) {
    lifted[i] = ::fcntl(moves[i].first, F_DUPFD_CLOEXEC, 10);
    if (lifted[i] < 0) fail(errno);
  }
  const int err_lifted = ::fcntl(exec_err_fd, F_DUPFD_CLOEXEC, 10);
  if (err_lifted < 0) fail(errno);
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (::dup2(lifted[i], moves[i].second) < 0) fail(errno);
  }
  if (::dup3(err_lifted, 4, O_CLOEXEC) < 0) fail(errno);
  exec_err_fd = 4;
  ::syscall(SYS_close_range, 5u, ~0u, 0u);
  if (::chdir(spec.cwd.c_str()) != 0) fail(errno);
  struct rlimit lim {};
  lim.rlim_cur = lim.rlim_max = 0;
  ::setrlimit(RLIMIT_CORE, &lim);
  if (spec.address_space_bytes) {
    lim.rlim_cur = lim.rlim_max = *spec.address_space_bytes;
    ::setrlimit(RLIMIT_AS, &lim);
  }
  if (spec.file_size_bytes) {
    lim.rlim_cur = lim.rlim_max = *spec.file_size_bytes;
    ::setrlimit(RLIMIT_FSIZE, &lim);
  }
  ::execve(argv[0], argv, envp);
  report_exec_failure(exec_err_fd, errno);
}

void append_bounded(std::string& buf, const char* data, std::size_t n, std::size_t limit) {
  buf.append(data, n);
  if (buf.size() > 2 * limit) buf.erase(0, buf.size() - limit);
}

}  // namespace

ProcessOutcome run_process(const ProcessSpec& spec) {
  if (spec.argv.empty()) throw HarnessError("empty argv");
  if (spec.wall_timeout_s <= 0) throw HarnessError("wall timeout must be positive");

  std::vector<std::string> env_storage = {"PATH=/usr/local/bin:/usr/bin:/bin", "LANG=C.UTF-8",
                                          "PYTHONHASHSEED=0", "PYTHONDONTWRITEBYTECODE=1",
                                          "HOME=" + spec.cwd.string(), "TMPDIR=" + spec.cwd.string()};
  std::vector<char*> envp;
  for (auto& s : env_storage) envp.push_back(s.data());
  envp.push_back(nullptr);
  std::vector<std::string> argv_storage = spec.argv;
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());
  argv.push_back(nullptr);

  Fd dev_null(::open("/dev/null", O_RDWR | O_CLOEXEC));
  if (dev_null.get() < 0) throw HarnessError(std::string("open /dev/null: ") + std::strerror(errno));
  auto err_pipe = make_pipe();
  auto result_pipe = make_pipe();
  auto exec_err = make_pipe();
  Pipe out_pipe;
  if (spec.capture_stdout) out_pipe = make_pipe();

  const auto start = Clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) throw HarnessError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    exec_child(spec, argv.data(), envp.data(), dev_null.get(),
               spec.capture_stdout ? out_pipe.write.get() : dev_null.get(), err_pipe.write.get(),
               result_pipe.write.get(), exec_err.write.get());
  }
  ::setpgid(pid, pid);
  err_pipe.write.reset();
  result_pipe.write.reset();
  out_pipe.write.reset();
  exec_err.write.reset();

  int exec_errno = 0;
  ssize_t got;
  do {
    got = ::read(exec_err.read.get(), &exec_errno, sizeof exec_errno);
  } while (got < 0 && errno == EINTR);
  if (got == static_cast<ssize_t>(sizeof exec_errno)) {
    int status = 0;
    ::waitpid(pid, &status, 0);
    throw HarnessError("cannot start " + spec.argv[0] + ": " + std::strerror(exec_errno));
  }

  ProcessOutcome outcome;
  const auto deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(spec.wall_timeout_s));
  std::array<char, 8192> chunk{};
  bool reaped = false;
  int status = 0;
  std::optional<Clock::time_point> drain_deadline;

  while (true) {
    std::array<pollfd, 3> fds{};
    std::array<std::string*, 3> sinks{};
    std::array<std::size_t, 3> limits{};
    nfds_t nfds = 0;
    auto add = [&](Pipe& p, std::string* sink, std::size_t limit) {
      if (p.read.get() >= 0) {
        fds[nfds] = {p.read.get(), POLLIN, 0};
        sinks[nfds] = sink;
        limits[nfds] = limit;
        ++nfds;
      }
    };
    add(err_pipe, &outcome.stderr_tail, spec.stderr_tail_bytes);
    add(result_pipe, &outcome.result_channel, 4096);
    add(out_pipe, &outcome.stdout_data, std::size_t{1} << 20);

    if (!reaped) {
      const pid_t w = ::waitpid(pid, &status, WNOHANG);
      if (w == pid) {
        reaped = true;
        outcome.duration_s = std::chrono::duration<double>(Clock::now() - start).count();
        ::kill(-pid, SIGKILL);  // orphans still holding our pipes
        drain_deadline = Clock::now() + std::chrono::seconds(1);
      }
    }
    if (nfds == 0 && reaped) break;

    const auto now = Clock::now();
    if (!reaped && now >= deadline) {
      ::kill(-pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      reaped = true;
      outcome.timed_out = true;
      outcome.duration_s = std::chrono::duration<double>(Clock::now() - start).count();
      drain_deadline = Clock::now() + std::chrono::seconds(1);
      continue;
    }
    if (drain_deadline && now >= *drain_deadline) break;

    auto wait_ms = std::chrono::duration_cast<std::chrono::milliseconds>((reaped ? *drain_deadline : deadline) - now).count();
    wait_ms = std::clamp<long long>(wait_ms, 0, 20);
    if (nfds == 0) {
      ::poll(nullptr, 0, static_cast<int>(wait_ms));
      continue;
    }
    const int ready = ::poll(fds.data(), nfds, static_cast<int>(wait_ms));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw HarnessError(std::string("poll: ") + std::strerror(errno));
    }
    for (nfds_t i = 0; i < nfds; ++i) {
      if (!(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      const auto n = ::read(fds[i].fd, chunk.data(), chunk.size());
      if (n > 0) {
        append_bounded(*sinks[i], chunk.data(), static_cast<std::size_t>(n), limits[i]);
      } else if (n == 0 || (errno != EINTR && errno != EAGAIN)) {
        for (Pipe* p : {&err_pipe, &result_pipe, &out_pipe}) {
          if (p->read.get() == fds[i].fd) p->read.reset();
        }
      }
    }
  }

  if (!reaped) ::waitpid(pid, &status, 0);
  if (outcome.stderr_tail.size() > spec.stderr_tail_bytes) {
    outcome.stderr_tail.erase(0, outcome.stderr_tail.size() - spec.stderr_tail_bytes);
  }
  if (!outcome.timed_out) {
    if (WIFEXITED(status)) {
      outcome.exited = true;
      outcome.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
      outcome.term_signal = WTERMSIG(status);
    }
  }
  return outcome;
}

ScopedTempDir::ScopedTempDir(const std::filesystem::path& root) {
  std::string templ = (root / "soeval-XXXXXX").string();
  if (::mkdtemp(templ.data()) == nullptr) {
    throw HarnessError("mkdtemp under " + root.string() + ": " + std::strerror(errno));
  }
  path_ = templ;
}

ScopedTempDir::~ScopedTempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace soeval::sandbox
