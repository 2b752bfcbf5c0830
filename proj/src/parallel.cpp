#include "ising/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace ising {

unsigned thread_count_from_env() {
  if (const char* env = std::getenv("ISING_THREADS"); env != nullptr && *env != '\0') {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace ising
