#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace pdesk {

// Worker cap for the whole process (flow --threads). 1 disables threading.
void set_thread_count(int n);
int thread_count();

// Runs fn(i) for i in [0, n) split across workers. Each index writes only
// its own outputs, so results are independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

std::vector<std::string> split(const std::string& s, char sep);
std::string trim(const std::string& s);
bool starts_with(const std::string& s, const std::string& prefix);
std::string lower(const std::string& s);

// Fixed-format double for reports: trailing zeros trimmed, '.' kept out of
// integers, locale-independent. Deterministic across runs.
std::string fmt_double(double v, int precision = 6);

// XorShift-based deterministic RNG used by tests and sample generators.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi);
  double uniform();  // [0, 1)

 private:
  std::uint64_t state_;
};

}  // namespace pdesk
