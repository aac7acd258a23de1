#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ultradiff/domains.hpp"
#include "ultradiff/errors.hpp"

namespace ultradiff {

// mt19937_64 has a standardized output sequence; the reductions below are
// ours, so sampled points are bit-identical across platforms for one seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t below(std::uint64_t n);       // uniform in [0, n)
    int between(int lo, int hi);                 // uniform in [lo, hi]
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::mt19937_64 gen_;
};

class Sampler {
public:
    static constexpr int kMaxRejections = 10000;

    // min_sep: within-block differences must have valuation <= prec - 1 - min_sep.
    Sampler(BallDomain domain, int prec, int min_sep, std::uint64_t seed);

    const BallDomain& domain() const noexcept { return domain_; }
    int prec() const noexcept { return prec_; }
    Rng& rng() noexcept { return rng_; }

    // Uniform coefficients on [lead, prec): an element of X^lead * O.
    LaurentSeries random_series(int lead);
    // lead fixed, leading coefficient nonzero, so the valuation is exactly lead.
    LaurentSeries random_with_valuation(int v);
    LaurentSeries in_ball(int i);
    Point base_point();

    // Strict point of U^{>alpha<}.
    BlockPoint strict_angle(const MultiIndex& alpha);
    // Strict point of U^{]k[}, layout as in bracket_dim.
    Point strict_bracket(int k);

    bool separated(const LaurentSeries& a, const LaurentSeries& b) const;

    // Runs gen until accept(result) holds; SamplerExhausted after
    // kMaxRejections consecutive failures.
    template <class Gen, class Accept>
    auto retry(Gen&& gen, Accept&& accept, const char* what) {
        for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
            try {
                auto candidate = gen();
                if (accept(candidate)) return candidate;
            } catch (const SamplerExhausted&) {
                throw;
            } catch (const PrecisionError&) {
                // candidate not certifiable at this precision; draw again
            }
        }
        throw_exhausted(what);
    }

private:
    [[noreturn]] void throw_exhausted(const char* what) const;

    BallDomain domain_;
    int prec_;
    int min_sep_;
    Rng rng_;
};

std::vector<BlockPoint> sample_angle_points(const BallDomain& U, const MultiIndex& alpha, int count, int prec,
                                            int min_sep, std::uint64_t seed);
std::vector<Point> sample_bracket_points(const BallDomain& U, int k, int count, int prec, int min_sep,
                                         std::uint64_t seed);

} // namespace ultradiff
