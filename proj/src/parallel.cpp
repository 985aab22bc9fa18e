#include "kato/parallel.hpp"

#include <cstdlib>
#include <string>

namespace kato {

std::size_t worker_count() {
  if (const char* env = std::getenv("KATO_LAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace kato
