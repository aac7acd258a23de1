#include "ultradiff/sampler.hpp"

#include <limits>

#include "ultradiff/errors.hpp"

namespace ultradiff {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t r;
    do {
        r = gen_();
    } while (r >= limit);
    return r % n;
}

int Rng::between(int lo, int hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Sampler::Sampler(BallDomain domain, int prec, int min_sep, std::uint64_t seed)
    : domain_(std::move(domain)), prec_(prec), min_sep_(min_sep), rng_(seed) {
    if (min_sep < 0) throw ConfigError("min_sep must be non-negative");
}

void Sampler::throw_exhausted(const char* what) const {
    throw SamplerExhausted(std::string("rejection sampling for ") + what + " failed " + std::to_string(kMaxRejections) +
                           " times in a row (domain " + domain_.to_string() + ", precision " + std::to_string(prec_) + ")");
}

LaurentSeries Sampler::random_series(int lead) {
    const PrimeField& F = domain_.field();
    if (lead >= prec_) return LaurentSeries::zero(F, prec_);
    std::vector<Residue> c(static_cast<std::size_t>(prec_ - lead));
    for (auto& r : c) r = static_cast<Residue>(rng_.below(F.characteristic()));
    return LaurentSeries(F, lead, std::move(c), prec_);
}

LaurentSeries Sampler::random_with_valuation(int v) {
    const PrimeField& F = domain_.field();
    if (v >= prec_) return LaurentSeries::zero(F, prec_);
    std::vector<Residue> c(static_cast<std::size_t>(prec_ - v));
    c[0] = static_cast<Residue>(1 + rng_.below(F.characteristic() - 1));
    for (std::size_t i = 1; i < c.size(); ++i) c[i] = static_cast<Residue>(rng_.below(F.characteristic()));
    return LaurentSeries(F, v, std::move(c), prec_);
}

LaurentSeries Sampler::in_ball(int i) {
    const auto& b = domain_.ball(i);
    return b.center + random_series(b.radius);
}

Point Sampler::base_point() {
    Point x;
    for (int i = 0; i < domain_.dim(); ++i) x.push_back(in_ball(i));
    return x;
}

bool Sampler::separated(const LaurentSeries& a, const LaurentSeries& b) const {
    LaurentSeries diff = a - b;
    return diff.certified_nonzero() && diff.lead() <= prec_ - 1 - min_sep_;
}

BlockPoint Sampler::strict_angle(const MultiIndex& alpha) {
    if (alpha.dim() != domain_.dim()) throw ShapeError("multi-index dimension does not match the domain");
    Point flat;
    for (int i = 0; i < alpha.dim(); ++i) {
        auto block = retry(
            [&] {
                Point b;
                for (int j = 0; j <= alpha[i]; ++j) b.push_back(in_ball(i));
                return b;
            },
            [&](const Point& b) {
                for (std::size_t j = 0; j < b.size(); ++j)
                    for (std::size_t k = j + 1; k < b.size(); ++k)
                        if (!separated(b[j], b[k])) return false;
                return true;
            },
            "a strict block");
        flat.insert(flat.end(), block.begin(), block.end());
    }
    BlockPoint x(alpha, std::move(flat));
    if (!member_angle(domain_, x, true)) throw Error("sampler produced a point outside its own domain");
    return x;
}

Point Sampler::strict_bracket(int k) {
    if (k == 0) return base_point();
    return retry(
        [&] {
            // (x, (w - x)/t, t) with x, w strict at level k-1 puts both x and
            // x + t*y inside U^{]k-1[}.
            Point x = strict_bracket(k - 1);
            Point w = strict_bracket(k - 1);
            LaurentSeries t = random_with_valuation(rng_.between(0, 3));
            LaurentSeries t_inv = t.inverse();
            Point z = x;
            for (std::size_t i = 0; i < x.size(); ++i) z.push_back((w[i] - x[i]) * t_inv);
            z.push_back(t);
            return z;
        },
        [&](const Point& z) { return member_bracket(domain_, k, z, true); }, "a strict bracket point");
}

std::vector<BlockPoint> sample_angle_points(const BallDomain& U, const MultiIndex& alpha, int count, int prec,
                                            int min_sep, std::uint64_t seed) {
    Sampler s(U, prec, min_sep, seed);
    std::vector<BlockPoint> out;
    for (int i = 0; i < count; ++i) out.push_back(s.strict_angle(alpha));
    return out;
}

std::vector<Point> sample_bracket_points(const BallDomain& U, int k, int count, int prec, int min_sep,
                                         std::uint64_t seed) {
    Sampler s(U, prec, min_sep, seed);
    std::vector<Point> out;
    for (int i = 0; i < count; ++i) out.push_back(s.strict_bracket(k));
    return out;
}

} // namespace ultradiff
