#include "bcsi/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>

#include "bcsi/index_coding.hpp"
#include "bcsi/outer_bound.hpp"

namespace bcsi {

namespace {

RateTuple unit(const RateTuple& d)
{
    const double n = std::sqrt(dot(d, d));
    if (!(n > 0.0)) throw std::invalid_argument("direction must be nonzero");
    return {d[0] / n, d[1] / n, d[2] / n};
}

}  // namespace

std::vector<RateTuple> octant_directions(int n, bool with_axes)
{
    if (n < 0) throw std::invalid_argument("direction count must be nonnegative");
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<RateTuple> dirs;
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (i + 0.5) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = std::fmod((i + 0.5) * golden, std::numbers::pi / 2);
        dirs.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    if (with_axes) {
        dirs.push_back({1.0, 0.0, 0.0});
        dirs.push_back({0.0, 1.0, 0.0});
        dirs.push_back({0.0, 0.0, 1.0});
    }
    return dirs;
}

std::vector<RateTuple> random_directions(int n, std::uint64_t seed)
{
    if (n < 0) throw std::invalid_argument("direction count must be nonnegative");
    UnitRng rng(seed);
    std::vector<RateTuple> dirs;
    while (static_cast<int>(dirs.size()) < n) {
        // rejection from the unit cube keeps the law uniform on the sphere
        const RateTuple d{rng.next(), rng.next(), rng.next()};
        const double r2 = dot(d, d);
        if (r2 > 1.0 || r2 < 1e-12) continue;
        dirs.push_back(unit(d));
    }
    return dirs;
}

nlohmann::ordered_json classify_json(const RoutingMatrix& a)
{
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["id"] = a.id();
    doc["bits"] = a.bits();
    const auto e = a.entries();
    doc["matrix"] = ordered_json::array();
    for (const auto& row : e) doc["matrix"].push_back(ordered_json(row));

    doc["acyclic_sets"] = ordered_json::array();
    for (auto v : acyclic_family(a)) doc["acyclic_sets"].push_back(v.to_string());
    doc["k_family"] = ordered_json::array();
    for (auto k : maximum_complete_sets(a)) doc["k_family"].push_back(k.to_string());

    const auto fam = layer_assignment(a);
    doc["layers"] = ordered_json::object();
    for (int l = 1; l <= 3; ++l) doc["layers"][std::to_string(l)] = fam.layer(l).to_string();

    doc["degraded_sequences"] = ordered_json::array();
    for (const auto& seq : degraded_sequences(a)) {
        ordered_json s = ordered_json::array();
        for (auto d : seq) s.push_back(d.to_string());
        doc["degraded_sequences"].push_back(s);
    }

    const auto verdict = tightness_classify(a);
    ordered_json t;
    t["case"] = to_string(verdict.case_id);
    t["tight"] = verdict.tight();
    if (verdict.labels[0] != 0) t["labels"] = verdict.labels;
    t["detail"] = verdict.detail();
    doc["tightness"] = t;
    return doc;
}

std::vector<BoundsRow> bounds_rows(const RoutingMatrix& a, const Channel& ch,
                                   const std::vector<WeightVector>& directions, int grid)
{
    const auto shape = inner_shape(a);
    std::vector<BoundsRow> rows;
    for (const auto& mu : directions) {
        BoundsRow row;
        row.mu = mu;
        const auto opt = max_weighted_sum_utility(a, ch, mu);
        row.inner = support(direct_region(shape, ch, opt.split), mu).argmax;
        row.inner_j = opt.value;
        const auto u = unit(mu);
        row.outer_t = outer_ray_extent(a, ch, u);
        row.gap = row.outer_t - inner_ray_extent(a, ch, u, grid).t;
        rows.push_back(row);
    }
    return rows;
}

std::vector<InnerRow> inner_rows(const RoutingMatrix& a, const Channel& ch,
                                 const std::vector<WeightVector>& directions)
{
    const auto shape = inner_shape(a);
    std::vector<InnerRow> rows;
    for (const auto& mu : directions) {
        const auto opt = max_weighted_sum_utility(a, ch, mu);
        rows.push_back({mu, support(direct_region(shape, ch, opt.split), mu).argmax, opt.value,
                        opt.split.parts(), opt.realizable});
    }
    return rows;
}

std::vector<RayRow> outer_rows(const RoutingMatrix& a, const Channel& ch,
                               const std::vector<RateTuple>& directions)
{
    std::vector<RayRow> rows;
    for (const auto& d : directions) {
        const auto u = unit(d);
        const double t = outer_ray_extent(a, ch, u);
        rows.push_back({u, t, {t * u[0], t * u[1], t * u[2]}});
    }
    return rows;
}

double max_ray_gap(const RoutingMatrix& a, const Channel& ch, const std::vector<RateTuple>& directions,
                   int grid)
{
    double worst = -kUnbounded;
    for (const auto& d : directions) {
        const auto u = unit(d);
        worst = std::max(worst, outer_ray_extent(a, ch, u) - inner_ray_extent(a, ch, u, grid).t);
    }
    return worst;
}

ReportRow report_row(const RoutingMatrix& a, const Channel& ch,
                     const std::vector<RateTuple>& directions, int grid)
{
    ReportRow row;
    row.id = a.id();
    row.bits = a.bits();
    row.k_family = to_string(maximum_complete_sets(a));
    row.tightness = to_string(tightness_classify(a).case_id);

    const WeightVector ones{1.0, 1.0, 1.0};
    const auto opt = max_weighted_sum_utility(a, ch, ones);
    row.inner_sum = opt.value;

    for (const auto& d : directions) {
        const auto u = unit(d);
        const double t = outer_ray_extent(a, ch, u);
        row.outer_sum = std::max(row.outer_sum, t * (u[0] + u[1] + u[2]));
    }
    // The inner maximiser is itself an outer point, which keeps outer_sum >= inner_sum.
    const auto best = support(direct_region(a, ch, opt.split), ones).argmax;
    if (is_achievable_outer(a, ch, best)) row.outer_sum = std::max(row.outer_sum, best[0] + best[1] + best[2]);
    row.max_gap = max_ray_gap(a, ch, directions, grid);
    return row;
}

std::vector<ReportRow> report_all(const Channel& ch, const std::vector<RateTuple>& directions, int grid)
{
    std::vector<ReportRow> rows;
    for (int id = 0; id < 64; ++id) rows.push_back(report_row(RoutingMatrix::from_id(id), ch, directions, grid));
    return rows;
}

std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    // snprintf honours LC_NUMERIC; the C locale is never changed here, but be explicit.
    for (char* c = buf; *c; ++c)
        if (*c == ',') *c = '.';
    return buf;
}

namespace {

template <class Range>
void write_fields(std::ostream& out, const Range& values)
{
    bool first = true;
    for (double v : values) {
        if (!first) out << ',';
        out << format_number(v);
        first = false;
    }
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<BoundsRow>& rows)
{
    out << "mu1,mu2,mu3,inner_R1,inner_R2,inner_R3,inner_J,outer_t,gap\n";
    for (const auto& r : rows) {
        write_fields(out, std::array<double, 9>{r.mu[0], r.mu[1], r.mu[2], r.inner[0], r.inner[1],
                                                r.inner[2], r.inner_j, r.outer_t, r.gap});
        out << '\n';
    }
}

void write_csv(std::ostream& out, const std::vector<InnerRow>& rows)
{
    out << "mu1,mu2,mu3,R1,R2,R3,J,P1,P2,P3,realizable\n";
    for (const auto& r : rows) {
        std::array<double, 3> p{};
        for (std::size_t l = 0; l < r.split.size() && l < 3; ++l) p[l] = r.split[l];
        write_fields(out, std::array<double, 10>{r.mu[0], r.mu[1], r.mu[2], r.rate[0], r.rate[1],
                                                 r.rate[2], r.value, p[0], p[1], p[2]});
        out << ',' << (r.realizable ? 1 : 0) << '\n';
    }
}

void write_csv(std::ostream& out, const std::vector<RayRow>& rows)
{
    out << "d1,d2,d3,t,R1,R2,R3\n";
    for (const auto& r : rows) {
        write_fields(out, std::array<double, 7>{r.direction[0], r.direction[1], r.direction[2], r.t,
                                                r.rate[0], r.rate[1], r.rate[2]});
        out << '\n';
    }
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows)
{
    out << "config,bits,k_family,tightness,inner_sum,outer_sum,max_gap\n";
    for (const auto& r : rows) {
        out << r.id << ',' << r.bits << ",\"" << r.k_family << "\"," << r.tightness << ','
            << format_number(r.inner_sum) << ',' << format_number(r.outer_sum) << ','
            << format_number(r.max_gap) << '\n';
    }
}

PowerSplit random_split(const Channel& ch, UnitRng& rng)
{
    const double x = rng.next(), y = rng.next(), z = rng.next();
    const double s = x + y + z;
    if (!(s > 0.0)) return PowerSplit({ch.power, 0.0, 0.0});
    const double p1 = ch.power * x / s, p2 = ch.power * y / s;
    return PowerSplit({p1, p2, std::max(ch.power - p1 - p2, 0.0)});
}

// ---------------------------------------------------------------------------
// Verification suites

namespace {

void record(SuiteResult& res, bool ok, double deviation, const std::string& what)
{
    ++res.checks;
    res.worst = std::max(res.worst, deviation);
    if (!ok) {
        if (res.failures == 0) res.detail = what;
        ++res.failures;
    }
}

std::string split_text(const PowerSplit& s)
{
    std::string t = "(";
    for (std::size_t l = 0; l < s.size(); ++l) t += (l ? "," : "") + format_number(s[l]);
    return t + ")";
}

}  // namespace

SuiteResult verify_fm_direct(const Channel& ch, std::uint64_t seed, int splits, int weights)
{
    SuiteResult res;
    res.name = "fm-vs-direct";
    UnitRng rng(seed);
    for (int id = 0; id < 64; ++id) {
        const auto a = RoutingMatrix::from_id(id);
        for (int s = 0; s < splits; ++s) {
            const auto split = random_split(ch, rng);
            SubsetBoundRegion fm;
            try {
                fm = region_via_fm(a, ch, split);
            } catch (const std::exception& e) {
                record(res, false, kUnbounded, "config " + std::to_string(id) + ": " + e.what());
                continue;
            }
            const auto direct = direct_region(a, ch, split);
            for (int w = 0; w < weights; ++w) {
                const WeightVector mu{rng.next(), rng.next(), rng.next()};
                const double d = std::abs(support(fm, mu).value - support(direct, mu).value);
                record(res, d <= 1e-9, d,
                       "config " + std::to_string(id) + " split " + split_text(split) +
                           ": support differs by " + format_number(d));
            }
        }
    }
    return res;
}

SuiteResult verify_utility_grid(const Channel& ch, std::uint64_t seed, int pairs, int grid)
{
    SuiteResult res;
    res.name = "utility-vs-grid";
    UnitRng rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (int k = 0; k < pairs; ++k) {
        const int id = static_cast<int>(rng.raw() % 64);
        const auto a = RoutingMatrix::from_id(id);
        WeightVector mu{};
        for (double& m : mu) m = 0.05 + rng.next();
        const double j = max_weighted_sum_utility(a, ch, mu).value;
        const double g = grid_weighted_sum(a, ch, mu, grid);
        const bool ok = g <= j + 1e-9 && j - g <= 5e-3 * j;
        record(res, ok, std::abs(j - g),
               "config " + std::to_string(id) + ": J*=" + format_number(j) + " grid=" + format_number(g));
    }
    return res;
}

SuiteResult verify_inner_outer(const Channel& ch, const std::vector<WeightVector>& directions)
{
    SuiteResult res;
    res.name = "inner-within-outer";
    for (int id = 0; id < 64; ++id) {
        const auto a = RoutingMatrix::from_id(id);
        for (const auto& r : frontier(a, ch, directions)) {
            const bool ok = is_achievable_outer(a, ch, r, 1e-9);
            record(res, ok, 0.0,
                   "config " + std::to_string(id) + ": inner point (" + format_number(r[0]) + "," +
                       format_number(r[1]) + "," + format_number(r[2]) + ") violates the outer bound");
        }
    }
    return res;
}

namespace {

// Every receiver recovers its message from k and the side information the
// scheme relies on, and that side information pins w_i down uniquely.
void check_space(SuiteResult& res, const MessageSpace& space)
{
    const auto& s = space.sizes;
    const auto count = subcodebook_count(space);
    const auto tag = [&] {
        return std::string(space.kind == MessageSpace::Kind::PairXor ? "pair " : "mixed ") + "sizes (" +
               std::to_string(s[0]) + "," + std::to_string(s[1]) + "," + std::to_string(s[2]) + ")";
    };
    std::vector<char> hit(count, 0);
    // (receiver, k, side value) -> decoded message, for uniqueness
    std::map<std::array<std::uint64_t, 3>, std::uint64_t> seen;
    bool ok = true;
    for (std::uint64_t w1 = 0; w1 < s[0]; ++w1)
        for (std::uint64_t w2 = 0; w2 < s[1]; ++w2)
            for (std::uint64_t w3 = 0; w3 < s[2]; ++w3) {
                const MessageTuple w{w1, w2, w3};
                const auto k = index_message(w, space);
                if (k >= count) {
                    ok = false;
                    continue;
                }
                hit[k] = 1;
                for (int i = 1; i <= 3; ++i) {
                    SideInfo known{};
                    std::uint64_t side = 0;
                    if (space.kind == MessageSpace::Kind::PairXor && i != space.third()) {
                        const int other = i == space.pair[0] ? space.pair[1] : space.pair[0];
                        known[other - 1] = w[other - 1];
                        side = w[other - 1] + 1;
                    }
                    if (recover_message(k, known, space, i) != w[i - 1]) ok = false;
                    const auto [it, fresh] = seen.emplace(std::array<std::uint64_t, 3>{std::uint64_t(i), k, side}, w[i - 1]);
                    if (!fresh && it->second != w[i - 1]) ok = false;
                }
            }
    const bool onto = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
    bool bijective = true;
    if (space.kind == MessageSpace::Kind::MixedRadix) bijective = count == s[0] * s[1] * s[2];
    record(res, ok && onto && bijective, 0.0, tag() + ": round trip or coverage failed");
}

}  // namespace

SuiteResult verify_index(int max_size)
{
    SuiteResult res;
    res.name = "index-round-trip";
    std::vector<std::uint64_t> sizes;
    for (std::uint64_t v : {1, 2, 3, 4, 8, 16})
        if (v <= static_cast<std::uint64_t>(max_size)) sizes.push_back(v);
    for (auto a : sizes)
        for (auto b : sizes)
            for (auto c : sizes)
                for (auto pair : {std::array<int, 2>{1, 2}, {1, 3}, {2, 3}})
                    check_space(res, MessageSpace::pair_xor({a, b, c}, pair[0], pair[1]));
    const int radix_max = std::min(max_size, 8);
    for (std::uint64_t a = 1; a <= static_cast<std::uint64_t>(radix_max); ++a)
        for (std::uint64_t b = 1; b <= static_cast<std::uint64_t>(radix_max); ++b)
            for (std::uint64_t c = 1; c <= static_cast<std::uint64_t>(radix_max); ++c)
                check_space(res, MessageSpace::mixed_radix({a, b, c}));
    return res;
}

std::vector<SuiteResult> verify_all(const Channel& ch, std::uint64_t seed)
{
    return {verify_fm_direct(ch, seed), verify_utility_grid(ch, seed),
            verify_inner_outer(ch, octant_directions()), verify_index()};
}

}  // namespace bcsi
