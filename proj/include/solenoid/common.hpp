#pragma once

#include <complex>
#include <cstdint>
#include <future>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace solenoid {

using cplx = std::complex<double>;

// Thrown when an enumeration or matrix would exceed a configured cap.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an iterative solver fails to reach its tolerance.
class solver_error : public std::runtime_error {
public:
    solver_error(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// ── checked 64-bit integer arithmetic ─────────────────────────────────────────
// Group arithmetic must stay exact; on overflow we refuse rather than wrap.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw resource_error("integer overflow in group arithmetic (add)");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw resource_error("integer overflow in group arithmetic (sub)");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw resource_error("integer overflow in group arithmetic (mul)");
    return r;
}

inline std::int64_t checked_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

// ── deterministic random sampling ─────────────────────────────────────────────
// std::normal_distribution sequences are implementation-defined; Box-Muller on
// raw mt19937_64 output keeps sample streams reproducible everywhere.

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // in [0, 1)
        return (engine_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        double u2 = uniform();
        double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return mag * std::cos(2.0 * M_PI * u2);
    }

    std::uint64_t bits() { return engine_(); }

    // index in [0, n)
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Derived seed for the i-th point of a sweep.
inline std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t index) {
    return seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
}

// ── deterministic parallel map ────────────────────────────────────────────────
// Tasks are independent; results are collected in input order.

template <typename T, typename F>
auto parallel_map(const std::vector<T>& items, F&& fn)
    -> std::vector<decltype(fn(items.front()))> {
    using R = decltype(fn(items.front()));
    std::vector<R> out(items.size());
    if (items.size() <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
        return out;
    }
    std::vector<std::future<R>> futures;
    futures.reserve(items.size());
    for (const auto& item : items)
        futures.push_back(std::async(std::launch::async, fn, std::cref(item)));
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = futures[i].get();
    return out;
}

}  // namespace solenoid
