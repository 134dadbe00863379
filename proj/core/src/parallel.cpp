#include "hmvp/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace hmvp::parallel {
namespace {

std::atomic<std::size_t> g_override{0};

std::size_t from_environment() {
  if (const char* env = std::getenv("HARMONIC_MVP_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace

std::size_t max_threads() {
  const std::size_t o = g_override.load();
  if (o > 0) return o;
  static const std::size_t env = from_environment();
  return env;
}

void set_max_threads(std::size_t n) { g_override.store(n); }

}  // namespace hmvp::parallel
