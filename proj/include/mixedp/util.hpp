#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace mixedp {

// Seeded splitmix64 generator. Self-contained so that random suites produce
// identical draws on every platform and standard library.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

// Number of worker threads used by the block-wise reductions below.
std::size_t thread_count();
void set_thread_count(std::size_t k);

// Sums fn(i0, i1) over fixed-size index blocks covering [0, n). Partial sums
// are combined strictly in block order, so the result does not depend on the
// number of threads.
double block_sum(std::size_t n, const std::function<double(std::size_t, std::size_t)>& fn);

// Runs fn(i0, i1) over the same fixed blocks; fn must only write to
// disjoint per-index slots.
void block_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

// Fixed-width float formatting shared by every CSV writer; "%.12g".
std::string format_double(double x);

// Round-trip-exact formatting ("%.17g") for config echoes.
std::string format_double_exact(double x);

}  // namespace mixedp
