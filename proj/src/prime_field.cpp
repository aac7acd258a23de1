#include "ultradiff/prime_field.hpp"

#include "ultradiff/errors.hpp"

namespace ultradiff {

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p > kMaxPrime || !is_prime(p)) throw ConfigError("p must be prime");
}

Residue PrimeField::inv(Residue a) const noexcept {
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a % p_;
    std::uint32_t e = p_ - 2;
    while (e) {
        if (e & 1u) result = result * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<Residue>(result);
}

} // namespace ultradiff
