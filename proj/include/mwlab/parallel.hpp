#pragma once

// Deterministic parallel scans over prime lists. Work is split into
// fixed-size blocks; results are merged in ascending block order so the
// output never depends on the worker count or on scheduling.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mwlab/numth.hpp"

namespace mwlab {

/// MWLAB_WORKERS when set to a positive integer, otherwise `fallback`.
inline unsigned workers_from_env(unsigned fallback = 1) {
    if (const char* env = std::getenv("MWLAB_WORKERS")) {
        try {
            const long n = std::stol(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
    }
    return fallback;
}

namespace detail {

constexpr std::size_t kScanBlock = 64;

/// Runs fn(block) for block in [0, nblocks) on up to `workers` threads.
/// Blocks are handed out in ascending order; `skip(block)` lets a caller
/// abandon blocks it no longer needs.
template <class Fn, class Skip>
void run_blocks(std::size_t nblocks, unsigned workers, Fn&& fn, Skip&& skip) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(nblocks, 1))));
    if (workers == 1) {
        for (std::size_t b = 0; b < nblocks; ++b) {
            if (!skip(b)) fn(b);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t b = next.fetch_add(1);
                if (b >= nblocks) return;
                if (skip(b)) continue;
                try {
                    fn(b);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Order-preserving parallel map over a prime list.
template <class Fn>
auto parallel_map(const std::vector<u64>& primes, unsigned workers, Fn&& fn) {
    using R = decltype(fn(u64{}));
    std::vector<std::optional<R>> slots(primes.size());
    const std::size_t nblocks = (primes.size() + detail::kScanBlock - 1) / detail::kScanBlock;
    detail::run_blocks(
        nblocks, workers,
        [&](std::size_t b) {
            const std::size_t end = std::min(primes.size(), (b + 1) * detail::kScanBlock);
            for (std::size_t i = b * detail::kScanBlock; i < end; ++i) slots[i].emplace(fn(primes[i]));
        },
        [](std::size_t) { return false; });
    std::vector<R> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

/// Per-prime result of a first-failure scan.
template <class Fail>
struct PrimeOutcome {
    enum class Kind { pass, skipped, fail };
    Kind kind = Kind::pass;
    std::optional<Fail> failure;

    static PrimeOutcome pass() { return {}; }
    static PrimeOutcome skipped() { return {Kind::skipped, std::nullopt}; }
    static PrimeOutcome fail(Fail f) { return {Kind::fail, std::move(f)}; }
};

template <class Fail>
struct ScanOutcome {
    std::vector<u64> skipped;
    std::size_t good = 0;
    std::optional<std::pair<u64, Fail>> failure;
};

/// Evaluates primes in ascending order until the first failure. Skipped
/// primes and the good-prime count cover exactly the primes up to and
/// including the failing one, independent of `workers`.
template <class Fail, class Eval>
ScanOutcome<Fail> scan_first_failure(const std::vector<u64>& primes, unsigned workers, Eval&& eval) {
    const std::size_t nblocks = (primes.size() + detail::kScanBlock - 1) / detail::kScanBlock;
    std::vector<ScanOutcome<Fail>> blocks(nblocks);
    std::atomic<std::size_t> first_fail{nblocks};
    detail::run_blocks(
        nblocks, workers,
        [&](std::size_t b) {
            auto& out = blocks[b];
            const std::size_t end = std::min(primes.size(), (b + 1) * detail::kScanBlock);
            for (std::size_t i = b * detail::kScanBlock; i < end; ++i) {
                if (first_fail.load() < b) return;
                PrimeOutcome<Fail> r = eval(primes[i]);
                if (r.kind == PrimeOutcome<Fail>::Kind::skipped) {
                    out.skipped.push_back(primes[i]);
                    continue;
                }
                ++out.good;
                if (r.kind == PrimeOutcome<Fail>::Kind::fail) {
                    out.failure.emplace(primes[i], std::move(*r.failure));
                    std::size_t cur = first_fail.load();
                    while (b < cur && !first_fail.compare_exchange_weak(cur, b)) {
                    }
                    return;
                }
            }
        },
        [&](std::size_t b) { return first_fail.load() < b; });
    ScanOutcome<Fail> merged;
    for (std::size_t b = 0; b < nblocks; ++b) {
        auto& blk = blocks[b];
        merged.skipped.insert(merged.skipped.end(), blk.skipped.begin(), blk.skipped.end());
        merged.good += blk.good;
        if (blk.failure) {
            merged.failure = std::move(blk.failure);
            break;
        }
    }
    return merged;
}

}  // namespace mwlab
