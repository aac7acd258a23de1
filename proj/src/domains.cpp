#include "ultradiff/domains.hpp"

#include <algorithm>
#include <charconv>

#include "ultradiff/errors.hpp"
#include "ultradiff/series_format.hpp"

namespace ultradiff {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

int parse_int(std::string_view s, const char* what) {
    s = trim(s);
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError(std::string("invalid ") + what + ": '" + std::string(s) + "'");
    return v;
}

} // namespace

BallDomain::BallDomain(std::vector<Ball> balls) : balls_(std::move(balls)) {
    if (balls_.empty()) throw ShapeError("a domain needs at least one coordinate");
    for (const auto& b : balls_)
        if (b.center.field() != balls_.front().center.field()) throw ShapeError("ball centers over different fields");
}

BallDomain BallDomain::unit_polydisc(PrimeField field, int d) {
    std::vector<Ball> balls;
    for (int i = 0; i < d; ++i) balls.push_back({LaurentSeries::zero(field, 1 << 20), 0});
    return BallDomain(std::move(balls));
}

bool BallDomain::contains_coordinate(int i, const LaurentSeries& z) const {
    const Ball& b = ball(i);
    LaurentSeries diff = z - b.center;
    if (diff.certified_nonzero()) return diff.lead() >= b.radius;
    if (diff.prec() >= b.radius) return true;
    throw UndecidableAtPrecision("membership in a ball of radius " + std::to_string(b.radius) +
                                 " undecidable at precision " + std::to_string(diff.prec()));
}

bool BallDomain::contains(std::span<const LaurentSeries> z) const {
    if (static_cast<int>(z.size()) != dim()) throw ShapeError("point dimension does not match the domain");
    for (int i = 0; i < dim(); ++i)
        if (!contains_coordinate(i, z[static_cast<std::size_t>(i)])) return false;
    return true;
}

std::string BallDomain::to_string() const {
    bool unit = std::all_of(balls_.begin(), balls_.end(),
                            [](const Ball& b) { return b.center.is_zero_to_precision() && b.radius == 0; });
    if (unit) return "O^" + std::to_string(dim());
    std::string out = "ball(";
    for (std::size_t i = 0; i < balls_.size(); ++i) {
        if (i) out += "; ";
        out += ultradiff::to_string(balls_[i].center) + ", " + std::to_string(balls_[i].radius);
    }
    return out + ")";
}

BallDomain parse_domain(std::string_view text, PrimeField field, int default_prec) {
    text = trim(text);
    if (text.starts_with("O^")) {
        int d = parse_int(text.substr(2), "domain dimension");
        if (d < 1) throw ConfigError("domain dimension must be at least 1");
        return BallDomain::unit_polydisc(field, d);
    }
    if (!text.starts_with("ball(") || !text.ends_with(")"))
        throw ConfigError("domain must be 'O^d' or 'ball(c_1,r_1;...;c_d,r_d)'");
    std::string_view body = text.substr(5, text.size() - 6);
    std::vector<BallDomain::Ball> balls;
    while (true) {
        auto semi = body.find(';');
        std::string_view part = body.substr(0, semi);
        auto comma = part.rfind(',');
        if (comma == std::string_view::npos) throw ConfigError("ball entry needs 'center, radius'");
        balls.push_back({parse_series(trim(part.substr(0, comma)), field, default_prec),
                         parse_int(part.substr(comma + 1), "ball radius")});
        if (semi == std::string_view::npos) break;
        body.remove_prefix(semi + 1);
    }
    return BallDomain(std::move(balls));
}

MultiIndex::MultiIndex(std::vector<int> entries) : a_(std::move(entries)) {
    if (a_.empty()) throw ShapeError("multi-index needs at least one entry");
    for (int v : a_) {
        if (v < 0) throw ShapeError("multi-index entries must be non-negative");
        order_ += v;
        starts_.push_back(starts_.back() + 1 + v);
    }
}

MultiIndex MultiIndex::unit(int d, int i) {
    std::vector<int> e(static_cast<std::size_t>(d), 0);
    e.at(static_cast<std::size_t>(i)) = 1;
    return MultiIndex(std::move(e));
}

std::vector<int> MultiIndex::offsets() const {
    std::vector<int> s;
    for (int v : starts_) s.push_back(v + 1);
    return s;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
    if (o.dim() != dim()) throw ShapeError("multi-index dimensions differ");
    std::vector<int> r = a_;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.a_[i];
    return MultiIndex(std::move(r));
}

std::string MultiIndex::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < a_.size(); ++i) out += (i ? "," : "") + std::to_string(a_[i]);
    return out + ")";
}

MultiIndex parse_multi_index(std::string_view text) {
    text = trim(text);
    if (text.starts_with("(") && text.ends_with(")")) text = text.substr(1, text.size() - 2);
    std::vector<int> v;
    while (true) {
        auto comma = text.find(',');
        v.push_back(parse_int(text.substr(0, comma), "multi-index entry"));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return MultiIndex(std::move(v));
}

BlockPoint::BlockPoint(MultiIndex alpha, Point flat) : alpha_(std::move(alpha)), flat_(std::move(flat)) {
    if (static_cast<int>(flat_.size()) != alpha_.flat_size()) {
        throw ShapeError("point has " + std::to_string(flat_.size()) + " scalars, multi-index " + alpha_.to_string() +
                         " needs " + std::to_string(alpha_.flat_size()));
    }
}

std::span<const LaurentSeries> BlockPoint::block(int i) const {
    auto start = static_cast<std::size_t>(alpha_.block_start(i));
    return std::span<const LaurentSeries>(flat_).subspan(start, static_cast<std::size_t>(1 + alpha_[i]));
}

bool member_angle(const BallDomain& U, const BlockPoint& x, bool strict) {
    if (x.alpha().dim() != U.dim()) throw ShapeError("multi-index dimension does not match the domain");
    // On a product of balls every mixed selection lies in U iff every block
    // entry lies in the matching factor.
    bool inside = true;
    for (int i = 0; i < U.dim() && inside; ++i)
        for (const auto& z : x.block(i))
            if (!U.contains_coordinate(i, z)) {
                inside = false;
                break;
            }
    if (!inside || !strict) return inside;
    for (int i = 0; i < U.dim(); ++i) {
        auto b = x.block(i);
        for (std::size_t j = 0; j < b.size(); ++j)
            for (std::size_t k = j + 1; k < b.size(); ++k)
                if ((b[j] - b[k]).is_zero_to_precision()) return false;
    }
    return true;
}

int bracket_dim(int d, int k) {
    int n = d;
    for (int i = 0; i < k; ++i) n = 2 * n + 1;
    return n;
}

BracketParts split_bracket(std::span<const LaurentSeries> z, int d, int k) {
    if (k < 1) throw ShapeError("bracket level must be at least 1");
    const auto inner = static_cast<std::size_t>(bracket_dim(d, k - 1));
    if (z.size() != 2 * inner + 1) {
        throw ShapeError("bracket point has " + std::to_string(z.size()) + " scalars, level " + std::to_string(k) +
                         " over K^" + std::to_string(d) + " needs " + std::to_string(2 * inner + 1));
    }
    return {z.subspan(0, inner), z.subspan(inner, inner), z[2 * inner]};
}

Point axpy(std::span<const LaurentSeries> x, const LaurentSeries& t, std::span<const LaurentSeries> y) {
    Point r;
    r.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r.push_back(x[i] + t * y[i]);
    return r;
}

bool member_bracket(const BallDomain& U, int k, std::span<const LaurentSeries> z, bool strict) {
    if (k == 0) return U.contains(z);
    auto [x, y, t] = split_bracket(z, U.dim(), k);
    if (strict && t.is_zero_to_precision()) return false;
    if (!member_bracket(U, k - 1, x, strict)) return false;
    Point moved = axpy(x, t, y);
    return member_bracket(U, k - 1, moved, strict);
}

} // namespace ultradiff
