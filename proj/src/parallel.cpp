#include "berglab/parallel.hpp"

#include <cstdlib>

#include "berglab/text.hpp"

namespace berglab {

unsigned configured_threads() {
  if (const char* env = std::getenv("BERGLAB_THREADS")) {
    if (const auto n = text::parse_int(env); n && *n >= 1) return static_cast<unsigned>(*n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

}  // namespace berglab
