#include "dynatomic/config.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace dynatomic {

namespace {

std::atomic<unsigned> g_thread_cap{0};

}  // namespace

void set_thread_cap(unsigned cap) { g_thread_cap = cap; }

unsigned thread_cap() {
  unsigned cap = g_thread_cap;
  if (cap == 0) {
    if (const char* env = std::getenv("DYNATOMIC_THREADS")) cap = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  if (cap == 0) cap = std::thread::hardware_concurrency();
  return cap == 0 ? 1 : cap;
}

}  // namespace dynatomic
