#include "ynls/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

namespace ynls {
namespace {

int hardware_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

std::atomic<int>& configured() {
  static std::atomic<int> n{resolve_thread_count(std::nullopt)};
  return n;
}

}  // namespace

int thread_count() { return configured().load(std::memory_order_relaxed); }

void set_thread_count(int n) {
  configured().store(n <= 0 ? hardware_threads() : n, std::memory_order_relaxed);
}

int resolve_thread_count(std::optional<int> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("YNLS_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return hardware_threads();
}

}  // namespace ynls
