#include "mixedp/util.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <thread>
#include <vector>

namespace mixedp {

namespace {
std::size_t g_threads = 1;
constexpr std::size_t kBlock = 256;  // fixed block size keeps reductions deterministic
}  // namespace

std::size_t thread_count() { return g_threads; }

void set_thread_count(std::size_t k) { g_threads = std::max<std::size_t>(1, k); }

double block_sum(std::size_t n, const std::function<double(std::size_t, std::size_t)>& fn) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    if (g_threads <= 1 || nblocks == 1) {
        double acc = 0.0;
        for (std::size_t b = 0; b < nblocks; ++b)
            acc += fn(b * kBlock, std::min(n, (b + 1) * kBlock));
        return acc;
    }
    std::vector<double> partial(nblocks, 0.0);
    std::atomic<std::size_t> counter{0};
    auto worker = [&] {
        for (;;) {
            std::size_t b = counter.fetch_add(1);
            if (b >= nblocks) return;
            partial[b] = fn(b * kBlock, std::min(n, (b + 1) * kBlock));
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < g_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    double acc = 0.0;
    for (double v : partial) acc += v;
    return acc;
}

void block_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    if (g_threads <= 1 || nblocks == 1) {
        for (std::size_t b = 0; b < nblocks; ++b)
            fn(b * kBlock, std::min(n, (b + 1) * kBlock));
        return;
    }
    std::atomic<std::size_t> counter{0};
    auto worker = [&] {
        for (;;) {
            std::size_t b = counter.fetch_add(1);
            if (b >= nblocks) return;
            fn(b * kBlock, std::min(n, (b + 1) * kBlock));
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < g_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string format_double_exact(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace mixedp
