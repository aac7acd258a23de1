#pragma once

#include <cstdint>

namespace ultradiff {

using Residue = std::uint32_t;

// The coefficient field F_p. Only the characteristic is stored, so copies
// are free and every series carries its own handle.
class PrimeField {
public:
    static constexpr std::uint32_t kMaxPrime = (1u << 31) - 1;

    // Throws ConfigError("p must be prime") for p <= 1, composite p, or p above kMaxPrime.
    explicit PrimeField(std::uint32_t p);

    std::uint32_t characteristic() const noexcept { return p_; }

    Residue reduce(std::int64_t v) const noexcept {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    Residue add(Residue a, Residue b) const noexcept {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Residue>(s >= p_ ? s - p_ : s);
    }
    Residue sub(Residue a, Residue b) const noexcept {
        return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + p_ - b);
    }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>((std::uint64_t{a} * b) % p_);
    }
    // a must be nonzero.
    Residue inv(Residue a) const noexcept;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

} // namespace ultradiff
