#ifndef SKEWSTONE_UTIL_HPP
#define SKEWSTONE_UTIL_HPP

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace skewstone {

struct SizeGuardError : std::runtime_error {
  explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

// base^exp with overflow guard; element-space sizes stay well below 2^62.
inline std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::int64_t{1} << 62) / base)
      throw SizeGuardError("element space too large: " + std::to_string(base) +
                           "^" + std::to_string(exp));
    r *= base;
  }
  return r;
}

inline int thread_cap() {
  if (const char* v = std::getenv("SKEWSTONE_THREADS")) {
    int k = std::atoi(v);
    if (k >= 1) return k;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0,n) across threads, strided so that expensive indices
// spread out. fn(i) must write only to slot i of caller-owned storage, so the
// result is order-independent.
template <class Fn>
void parallel_for(std::int64_t n, Fn&& fn) {
  int k = thread_cap();
  if (k <= 1 || n < 2) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (static_cast<std::int64_t>(k) > n) k = static_cast<int>(n);
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (int t = 0; t < k; ++t)
    pool.emplace_back([t, k, n, &fn] {
      for (std::int64_t i = t; i < n; i += k) fn(i);
    });
  for (auto& th : pool) th.join();
}

// Odometer over mixed radices; returns false after the last tuple.
inline bool next_tuple(std::vector<int>& t, const std::vector<int>& radix) {
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    if (++t[i] < radix[i]) return true;
    t[i] = 0;
  }
  return false;
}

inline bool next_tuple(std::vector<int>& t, int radix) {
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    if (++t[i] < radix) return true;
    t[i] = 0;
  }
  return false;
}

}  // namespace skewstone

#endif  // SKEWSTONE_UTIL_HPP
