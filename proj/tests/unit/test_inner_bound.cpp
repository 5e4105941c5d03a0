#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <random>

#include "bcsi/inner_bound.hpp"

using namespace bcsi;

namespace {

const Channel kChannel{10.0, {0.2, 0.5, 1.0}, LogBase::Two};

PowerSplit random_split(std::mt19937_64& rng, double power = 10.0)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double x = u(rng), y = u(rng), z = u(rng), t = x + y + z;
    return PowerSplit({power * x / t, power * y / t, power - power * x / t - power * y / t});
}

double max_support_gap(const SubsetBoundRegion& a, const SubsetBoundRegion& b, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const WeightVector mu{u(rng), u(rng), u(rng)};
        worst = std::max(worst, std::abs(support(a, mu).value - support(b, mu).value));
    }
    return worst;
}

// Exhaustive grid maximum of the ray extent, straight from direct_region.
double brute_ray(const RoutingMatrix& a, const RateTuple& d, int grid)
{
    double best = 0.0;
    for (int i = 0; i <= grid; ++i)
        for (int j = 0; i + j <= grid; ++j) {
            const double p1 = kChannel.power * i / grid, p2 = kChannel.power * j / grid;
            const auto r = direct_region(a, kChannel, PowerSplit({p1, p2, std::max(kChannel.power - p1 - p2, 0.0)}));
            double t = kUnbounded;
            for (unsigned m : kNonemptySubsetMasks) {
                const auto v = ReceiverSet::from_mask(m);
                const double w = subset_sum(d, v);
                if (r.constrained(v) && w > 0) t = std::min(t, r.bound(v) / w);
            }
            best = std::max(best, t);
        }
    return best;
}

}  // namespace

TEST_CASE("golden configuration a13 = a31 = 1")
{
    const auto a = RoutingMatrix::from_id(18);
    const PowerSplit split({2, 3, 5});
    const auto r = direct_region(a, kChannel, split);
    const double b1 = cap(2 / 0.2) + cap(5 / 5.2);
    CHECK(r.bound(ReceiverSet{1}) == doctest::Approx(b1).epsilon(1e-14));
    CHECK(r.bound(ReceiverSet{1}) == doctest::Approx(2.2157).epsilon(1e-4));
    CHECK(r.bound(ReceiverSet{2}) == doctest::Approx(cap(3 / 2.5)).epsilon(1e-14));
    CHECK(r.bound(ReceiverSet{3}) == doctest::Approx(cap(5 / 6.0) + cap(2 / 1.0)).epsilon(1e-14));
    // {1,3} meets K_1 = K_3 = {1,3} in a cycle
    CHECK_FALSE(r.constrained(ReceiverSet{1, 3}));
    CHECK_FALSE(r.constrained(kAllReceivers));
    // remaining constraints are sums of the three printed ones
    CHECK(r.bound(ReceiverSet{1, 2}) == doctest::Approx(r.bound(ReceiverSet{1}) + r.bound(ReceiverSet{2})));
    CHECK(r.bound(ReceiverSet{2, 3}) == doctest::Approx(r.bound(ReceiverSet{2}) + r.bound(ReceiverSet{3})));
}

TEST_CASE("single-polytope configuration")
{
    std::mt19937_64 rng(1);
    const auto a = RoutingMatrix::from_id(52);
    for (int s = 0; s < 5; ++s) {
        const auto r = direct_region(a, kChannel, random_split(rng));
        for (unsigned m : kNonemptySubsetMasks) {
            const auto v = ReceiverSet::from_mask(m);
            REQUIRE(r.constrained(v));
            CHECK(r.bound(v) == doctest::Approx(cap(10.0 / kChannel.noise_of(v.min()))).epsilon(1e-12));
        }
    }
}

TEST_CASE("split-rate system structure")
{
    const PowerSplit split({2, 3, 5});
    const auto s0 = split_rate_system(RoutingMatrix{}, kChannel, split);
    CHECK(s0.names() == std::vector<std::string>{"R1", "R2", "R3", "R1_1", "R2_2", "R3_3"});
    const auto s16 = split_rate_system(RoutingMatrix::from_id(16), kChannel, split);
    CHECK(s16.names() == std::vector<std::string>{"R1", "R2", "R3", "R1_1", "R3_1", "R2_2", "R1_3", "R3_3"});

    // zero-power layer rows have zero bounds
    const auto sz = split_rate_system(RoutingMatrix{}, kChannel, PowerSplit({10, 0, 0}));
    const auto r22 = sz.index_of("R2_2");
    bool found = false;
    for (const auto& row : sz.rows())
        if (row.coef[r22] == 1.0 && row.rhs == 0.0) found = true;
    CHECK(found);
}

TEST_CASE("elimination reproduces the direct region")
{
    std::mt19937_64 rng(2);
    for (int id = 0; id < 64; ++id) {
        const auto a = RoutingMatrix::from_id(id);
        for (int s = 0; s < 3; ++s) {
            const auto split = random_split(rng);
            CHECK(max_support_gap(region_via_fm(a, kChannel, split), direct_region(a, kChannel, split), rng) <= 1e-9);
        }
    }
}

TEST_CASE("network coding over complete-set sequences")
{
    std::mt19937_64 rng(3);
    const auto split = random_split(rng);
    for (int id = 0; id < 64; ++id) {
        const auto a = RoutingMatrix::from_id(id);
        const auto fam = layer_assignment(a);
        const auto own = cmkm_region(a, {fam.layer(1), fam.layer(2), fam.layer(3)}, kChannel, split);
        CHECK(max_support_gap(own, direct_region(a, kChannel, split), rng) <= 1e-12);
        // zero-power upper layers reduce to the first layer alone
        const auto top = direct_region(a, kChannel, PowerSplit({10, 0, 0}));
        const auto one = cmkm_region(a, {fam.layer(1)}, kChannel, PowerSplit({10}));
        CHECK(max_support_gap(top, one, rng) <= 1e-12);
    }
    const auto single = cmkm_region(RoutingMatrix::from_id(52), {kAllReceivers}, kChannel, PowerSplit({10}));
    CHECK(single.bound(ReceiverSet{2, 3}) == doctest::Approx(cap(10 / 0.5)));
    const auto succ = cmkm_region(RoutingMatrix{}, {{1}, {2}, {3}}, kChannel, split);
    CHECK(max_support_gap(succ, direct_region(RoutingMatrix{}, kChannel, split), rng) <= 1e-12);

    CHECK_THROWS_AS(cmkm_region(RoutingMatrix{}, {{1, 2}}, kChannel, PowerSplit({10})), std::invalid_argument);
    CHECK_THROWS_AS(cmkm_region(RoutingMatrix{}, {{1}, {2}}, kChannel, PowerSplit({10})), std::invalid_argument);
}

TEST_CASE("bounds grow with power")
{
    std::mt19937_64 rng(4);
    for (int id = 0; id < 64; ++id) {
        const auto a = RoutingMatrix::from_id(id);
        const auto s = random_split(rng);
        Channel big = kChannel;
        big.power = 20.0;
        const auto r1 = direct_region(a, kChannel, s);
        const auto r2 = direct_region(a, big, PowerSplit({2 * s[0], 2 * s[1], 2 * s[2]}));
        for (unsigned m : kNonemptySubsetMasks)
            CHECK(r2.bound(ReceiverSet::from_mask(m)) >= r1.bound(ReceiverSet::from_mask(m)));
    }
}

TEST_CASE("utility curves")
{
    const auto curves = utility_curves(RoutingMatrix::from_id(18), kChannel, {0.5, 0.6, 0.3});
    // {1},{2},{3} and the cyclic pair {1,3}
    REQUIRE(curves.size() == 4);
    for (const auto& c : curves) {
        const double h = 1e-4;
        double numeric = 0;
        for (int k = 0; k < 10000; ++k) numeric += c.value((k + 0.5) * h) * h;
        CHECK(c.integral(0, 1) == doctest::Approx(numeric).epsilon(1e-7));
        CHECK(c.value(1.0) < c.value(0.5));
    }
    // acyclic pair: weaker member only gains its excess weight
    const auto acyc = utility_curves(RoutingMatrix::from_id(16), kChannel, {0.5, 0.6, 0.8});
    bool seen = false;
    for (const auto& c : acyc)
        if (c.set == ReceiverSet{1, 3}) {
            seen = true;
            CHECK(c.weight[0] == 0.5);
            CHECK(c.weight[2] == doctest::Approx(0.3));
        }
    CHECK(seen);
    CHECK_THROWS_AS(utility_curves(RoutingMatrix{}, kChannel, {0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(utility_curves(RoutingMatrix{}, kChannel, {-1, 1, 1}), std::invalid_argument);
}

TEST_CASE("utility maximiser examples")
{
    const auto opt = max_weighted_sum_utility(RoutingMatrix{}, kChannel, {1, 1, 1});
    CHECK(opt.value == doctest::Approx(cap(10 / 0.2)).epsilon(1e-12));
    CHECK(opt.split[0] == doctest::Approx(10.0));
    for (int id = 0; id < 64; ++id) {
        const auto a = RoutingMatrix::from_id(id);
        CHECK(max_weighted_sum_utility(a, kChannel, {1, 0, 0}).value == doctest::Approx(cap(10 / 0.2)).epsilon(1e-12));
        const auto o = max_weighted_sum_utility(a, kChannel, {0.3, 0.9, 0.4});
        CHECK(o.realizable);
        CHECK(o.split.total() == doctest::Approx(10.0));
        CHECK_NOTHROW(o.split.validate(kChannel));
        // the split achieves the integral
        CHECK(support(direct_region(a, kChannel, o.split), {0.3, 0.9, 0.4}).value == doctest::Approx(o.value).epsilon(1e-9));
    }
}

TEST_CASE("utility maximum dominates every split and the grid")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int k = 0; k < 12; ++k) {
        const auto a = RoutingMatrix::from_id(static_cast<int>(rng() % 64));
        const WeightVector mu{u(rng), u(rng), u(rng)};
        const double j = max_weighted_sum_utility(a, kChannel, mu).value;
        for (int s = 0; s < 20; ++s) CHECK(support(direct_region(a, kChannel, random_split(rng)), mu).value <= j + 1e-9);
        const double g = grid_weighted_sum(a, kChannel, mu, 60);
        CHECK(g <= j + 1e-9);
        CHECK(j - g <= 2e-2 * j);
    }
}

TEST_CASE("complete-set sequence vertex clouds stay below the utility maximum")
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int id = 0; id < 64; ++id) {
        const auto a = RoutingMatrix::from_id(id);
        const auto sets = complete_sets(a);
        std::vector<RateTuple> cloud;
        for (int draw = 0; draw < 30; ++draw) {
            std::vector<ReceiverSet> kseq;
            const int m = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < m; ++i) kseq.push_back(sets[rng() % sets.size()]);
            std::vector<double> parts(m);
            double total = 0;
            for (double& p : parts) total += (p = u(rng));
            for (double& p : parts) p *= 10.0 / total;
            const auto region = cmkm_region(a, kseq, kChannel, PowerSplit(parts));
            if (!region.bounded()) continue;
            for (const auto& v : vertices(region).vertices) cloud.push_back(v);
        }
        if (cloud.empty()) continue;
        for (int k = 0; k < 10; ++k) {
            const WeightVector mu{u(rng), u(rng), u(rng)};
            CHECK(hull_support(cloud, mu) <= max_weighted_sum_utility(a, kChannel, mu).value + 1e-6);
        }
    }
}

TEST_CASE("frontier corners")
{
    for (int id : {0, 18, 52, 63}) {
        const auto f = frontier(RoutingMatrix::from_id(id), kChannel, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
        for (int i = 0; i < 3; ++i)
            CHECK(f[i][i] == doctest::Approx(cap(10.0 / kChannel.noise[i])).epsilon(1e-12));
    }
}

TEST_CASE("ray extent search is exact over the grid")
{
    const std::vector<RateTuple> dirs{{1, 1, 1}, {0.2, 0.7, 0.1}, {0.6, 0.1, 0.9}, {0, 1, 0}, {0.5, 0, 0.5}};
    for (int id = 0; id < 64; id += 3) {
        const auto a = RoutingMatrix::from_id(id);
        for (const auto& d : dirs) {
            const auto e = inner_ray_extent(a, kChannel, d, 24);
            CHECK(e.t == doctest::Approx(brute_ray(a, d, 24)).epsilon(1e-11));
            CHECK_NOTHROW(e.split.validate(kChannel));
            // refining the grid never loses
            CHECK(inner_ray_extent(a, kChannel, d, 48).t >= e.t - 1e-12);
        }
    }
    CHECK_THROWS_AS(inner_ray_extent(RoutingMatrix{}, kChannel, {0, 0, 0}, 10), std::invalid_argument);
}
