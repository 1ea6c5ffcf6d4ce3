#include "circsym/numerics/parallel.hpp"

#include <cstdlib>
#include <string>

namespace circsym {

unsigned default_thread_count() {
  if (const char* env = std::getenv("CIRCSYM_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value >= 1) return static_cast<unsigned>(value);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace circsym
