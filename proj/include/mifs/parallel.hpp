#pragma once

#include <optional>
#include <string_view>

namespace mifs {

/// Environment variable consulted by `configure_threads` when no explicit cap is given.
inline constexpr std::string_view kThreadsEnv = "MIFS_THREADS";

/// Caps the OpenMP team size. `std::nullopt` means "auto" (the runtime default,
/// or MIFS_THREADS when set). Returns the effective thread count.
int configure_threads(std::optional<int> threads);

int max_threads();

/// RAII override of the thread cap, restored on scope exit.
class ThreadCap {
 public:
  explicit ThreadCap(int threads);
  ~ThreadCap();
  ThreadCap(const ThreadCap&) = delete;
  ThreadCap& operator=(const ThreadCap&) = delete;

 private:
  int previous_;
};

}  // namespace mifs
