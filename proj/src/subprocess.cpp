#include "subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>

#include "vidshift/error.hpp"

extern char** environ;

namespace vidshift::detail {

namespace {

struct Fd {
  int fd = -1;
  Fd() = default;
  explicit Fd(int f) : fd(f) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }
  void reset() {
    if (fd >= 0) ::close(fd);
    fd = -1;
  }
};

void make_pipe(Fd& read_end, Fd& write_end) {
  int p[2];
  if (::pipe2(p, O_CLOEXEC) != 0) throw Error(ErrorCode::IoError, std::string("pipe: ") + std::strerror(errno));
  read_end.fd = p[0];
  write_end.fd = p[1];
}

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv, std::span<const std::uint8_t> stdin_bytes,
                          bool capture_stdout, const std::filesystem::path& stderr_path) {
  static std::once_flag ignore_sigpipe;
  std::call_once(ignore_sigpipe, [] { ::signal(SIGPIPE, SIG_IGN); });

  Fd in_r, in_w, out_r, out_w;
  make_pipe(in_r, in_w);
  if (capture_stdout) make_pipe(out_r, out_w);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_r.fd, STDIN_FILENO);
  if (capture_stdout)
    posix_spawn_file_actions_adddup2(&actions, out_w.fd, STDOUT_FILENO);
  else
    posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, "/dev/null", O_WRONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, stderr_path.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0644);

  std::vector<char*> cargv;
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);

  pid_t pid = 0;
  const int rc = ::posix_spawn(&pid, cargv[0], &actions, nullptr, cargv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) throw Error(ErrorCode::IoError, "spawn " + argv[0] + ": " + std::strerror(rc));

  in_r.reset();
  out_w.reset();

  ProcessResult result;
  std::size_t written = 0;
  if (stdin_bytes.empty()) in_w.reset();
  std::vector<std::uint8_t> buf(1 << 16);
  while (in_w.fd >= 0 || out_r.fd >= 0) {
    pollfd fds[2];
    int n = 0;
    if (in_w.fd >= 0) fds[n++] = {in_w.fd, POLLOUT, 0};
    if (out_r.fd >= 0) fds[n++] = {out_r.fd, POLLIN, 0};
    if (::poll(fds, n, -1) < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int i = 0; i < n; ++i) {
      if (fds[i].revents == 0) continue;
      if (fds[i].fd == in_w.fd) {
        const auto chunk = std::min<std::size_t>(stdin_bytes.size() - written, 1 << 16);
        const ssize_t w = ::write(in_w.fd, stdin_bytes.data() + written, chunk);
        if (w < 0 && errno != EINTR && errno != EAGAIN) {
          in_w.reset();  // child closed its stdin
        } else if (w > 0) {
          written += static_cast<std::size_t>(w);
          if (written == stdin_bytes.size()) in_w.reset();
        }
      } else {
        const ssize_t r = ::read(out_r.fd, buf.data(), buf.size());
        if (r > 0)
          result.stdout_bytes.insert(result.stdout_bytes.end(), buf.begin(), buf.begin() + r);
        else if (r == 0 || (errno != EINTR && errno != EAGAIN))
          out_r.reset();
      }
    }
  }

  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  return result;
}

std::string file_tail(const std::filesystem::path& path, std::size_t max_bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  if (s.size() > max_bytes) s = s.substr(s.size() - max_bytes);
  return s;
}

}  // namespace vidshift::detail
