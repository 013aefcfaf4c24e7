#include "mifs/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mifs {

int configure_threads(std::optional<int> threads) {
  if (!threads) {
    if (const char* env = std::getenv(std::string(kThreadsEnv).c_str()); env && *env) {
      const std::string value(env);
      if (value != "auto") {
        const int n = std::stoi(value);
        if (n < 1) throw std::invalid_argument("MIFS_THREADS must be positive or 'auto'");
        threads = n;
      }
    }
  }
  if (threads) {
    if (*threads < 1) throw std::invalid_argument("thread count must be positive");
    omp_set_num_threads(*threads);
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

ThreadCap::ThreadCap(int threads) : previous_(omp_get_max_threads()) { omp_set_num_threads(threads); }

ThreadCap::~ThreadCap() { omp_set_num_threads(previous_); }

}  // namespace mifs
