#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace tridrop {

// Deterministic xoshiro256++ generator seeded through splitmix64.
// Identical seeds produce identical streams on every platform; nothing here
// depends on std::random distributions, whose output is not portable.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform on [lo, hi).
    double uniform(double lo = 0.0, double hi = 1.0);
    float uniform_float(float lo, float hi);

    // Uniform on {0, ..., bound-1}, bias-free (rejection sampling).
    std::uint64_t uniform_below(std::uint64_t bound);

    // Uniform on {lo, ..., hi} inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    bool bernoulli(double p);

    // Child generator with an independent stream. Forking depends only on the
    // seed this Rng was constructed with and on `stream`, not on how much of
    // the parent stream has been consumed; evaluation code relies on this to
    // give episode k the same randomness no matter the call order.
    Rng fork(std::uint64_t stream) const;

    std::uint64_t seed() const { return seed_; }

    // Fisher-Yates shuffle driven by this generator.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::array<std::uint64_t, 4> state_;
    std::uint64_t seed_;
};

}  // namespace tridrop
