#include "doctest.h"

#include <stdexcept>

#include <algorithm>
#include <random>

#include "bcsi/inner_bound.hpp"
#include "bcsi/region_geometry.hpp"

using namespace bcsi;

namespace {

SubsetBoundRegion box(double b)
{
    SubsetBoundRegion r;
    for (int i = 1; i <= 3; ++i) r.set_bound(ReceiverSet{i}, b);
    return r;
}

bool same_points(std::vector<RateTuple> a, std::vector<RateTuple> b)
{
    if (a.size() != b.size()) return false;
    const auto near = [](const RateTuple& p, const RateTuple& q) {
        for (int k = 0; k < 3; ++k)
            if (std::abs(p[k] - q[k]) > 1e-9) return false;
        return true;
    };
    for (const auto& p : a)
        if (std::none_of(b.begin(), b.end(), [&](const RateTuple& q) { return near(p, q); })) return false;
    return true;
}

}  // namespace

TEST_CASE("fourier-motzkin small systems")
{
    LinearInequalitySystem s({"x", "y"});
    s.add({1, -1}, 0);
    s.add({0, 1}, 1);
    auto out = fm_eliminate(s, {"y"});
    REQUIRE(out.rows().size() == 1);
    CHECK(out.rows()[0].coef[0] == doctest::Approx(1.0));
    CHECK(out.rows()[0].rhs == doctest::Approx(1.0));

    LinearInequalitySystem t({"x", "y"});
    t.add({1, 1}, 1);
    t.add({0, -1}, 0);
    out = fm_eliminate(t, {"y"});
    REQUIRE(out.rows().size() == 1);
    CHECK(out.rows()[0].rhs == doctest::Approx(1.0));

    LinearInequalitySystem bad({"x"});
    bad.add({1}, -1);
    bad.add({-1}, 0);
    CHECK(fm_eliminate(bad, {"x"}).infeasible());
}

TEST_CASE("fourier-motzkin projection soundness on random systems")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_real_distribution<double> rhs(0.0, 3.0);
    for (int trial = 0; trial < 40; ++trial) {
        LinearInequalitySystem s({"x", "y", "z"});
        for (int r = 0; r < 6; ++r) s.add({double(coef(rng)), double(coef(rng)), double(coef(rng))}, rhs(rng));
        for (std::size_t v = 0; v < 3; ++v) s.add_nonnegativity(v);
        for (int v = 0; v < 3; ++v) s.add({v == 0 ? 1.0 : 0.0, v == 1 ? 1.0 : 0.0, v == 2 ? 1.0 : 0.0}, 4.0);
        const auto proj = fm_eliminate(s, {"y", "z"});
        for (int i = 0; i <= 40; ++i) {
            const double x = 0.1 * i;
            // Grid spacing 0.05 over y,z in [0,4] with |coef| <= 2 moves any row by at most 0.1.
            bool on_grid = false, near_grid = false;
            for (int j = 0; j <= 80; ++j)
                for (int k = 0; k <= 80; ++k) {
                    const double p[3] = {x, 0.05 * j, 0.05 * k};
                    on_grid = on_grid || s.satisfied_by(p, 1e-9);
                    near_grid = near_grid || s.satisfied_by(p, 0.11);
                }
            const double q[1] = {x};
            const bool in_proj = proj.satisfied_by(q, 1e-9);
            if (on_grid) CHECK(in_proj);
            if (in_proj) CHECK(near_grid);
        }
    }
}

TEST_CASE("vertex enumeration")
{
    SubsetBoundRegion r;
    r.set_bound(ReceiverSet{1}, 1);
    r.set_bound(ReceiverSet{2}, 1);
    r.set_bound(ReceiverSet{1, 2}, 1.5);
    r.set_bound(ReceiverSet{3}, 0);
    CHECK(same_points(vertices(r).vertices, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 0.5, 0}, {0.5, 1, 0}}));
    CHECK(vertices(box(1)).vertices.size() == 8);

    SubsetBoundRegion z;
    z.set_bound(kAllReceivers, 0);
    CHECK(same_points(vertices(z).vertices, {{0, 0, 0}}));

    SubsetBoundRegion open;
    open.set_bound(ReceiverSet{1, 2}, 1);
    CHECK_FALSE(open.bounded());
    CHECK_THROWS_AS(vertices(open), std::invalid_argument);
}

TEST_CASE("support and membership")
{
    auto s = support(box(1), {1, 1, 1});
    CHECK(s.value == doctest::Approx(3));
    CHECK(s.argmax == RateTuple{1, 1, 1});

    SubsetBoundRegion r;
    r.set_bound(ReceiverSet{1, 2}, 1);
    r.set_bound(ReceiverSet{3}, 0);
    s = support(r, {2, 1, 0});
    CHECK(s.value == doctest::Approx(2));
    CHECK(s.argmax == RateTuple{1, 0, 0});
    // a tie goes to the lexicographically largest vertex
    CHECK(support(r, {1, 1, 0}).argmax == RateTuple{1, 0, 0});

    CHECK(contains(box(1), {0, 0, 0}));
    CHECK(contains(box(1), {1, 1, 1}));
    CHECK_FALSE(contains(box(1), {1 + 1e-6, 1 + 1e-6, 1 + 1e-6}));
    CHECK_FALSE(contains(box(1), {-0.1, 0, 0}));

    CHECK(hull_support({{1, 2, 3}}, {1, 1, 1}) == doctest::Approx(6));
    CHECK(hull_support({{1, 0, 0}, {0, 2, 0}}, {1, 1, 1}) == doctest::Approx(2));
    CHECK_THROWS_AS(hull_support({}, {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("support is positively homogeneous and monotone, and matches sampling")
{
    const Channel ch{10, {0.2, 0.5, 1.0}};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int id : {0, 18, 33, 36, 52}) {
        const auto region = direct_region(RoutingMatrix::from_id(id), ch, PowerSplit({3, 3, 4}));
        auto smaller = region;
        for (unsigned m : kNonemptySubsetMasks)
            if (region.constrained(ReceiverSet::from_mask(m)))
                smaller.set_bound(ReceiverSet::from_mask(m), 0.8 * region.bound(ReceiverSet::from_mask(m)));
        for (int k = 0; k < 20; ++k) {
            const WeightVector mu{u(rng), u(rng), u(rng)};
            const double v = support(region, mu).value;
            CHECK(support(region, {3 * mu[0], 3 * mu[1], 3 * mu[2]}).value == doctest::Approx(3 * v));
            CHECK(support(smaller, mu).value <= v + 1e-12);
            CHECK(contains(region, support(region, mu).argmax));
        }
        // rejection sampling never beats the support value
        const WeightVector mu{0.3, 0.5, 0.2};
        const double v = support(region, mu).value;
        double best = 0;
        const double hi = std::max({region.bound(ReceiverSet{1}), region.bound(ReceiverSet{2}), region.bound(ReceiverSet{3})});
        for (int k = 0; k < 20000; ++k) {
            const RateTuple p{hi * u(rng), hi * u(rng), hi * u(rng)};
            if (contains(region, p)) best = std::max(best, dot(mu, p));
        }
        CHECK(best <= v + 1e-12);
        CHECK(best >= 0.9 * v);
    }
}

TEST_CASE("vertex and halfspace round trip over all configurations")
{
    const Channel ch{10, {0.2, 0.5, 1.0}};
    for (int id = 0; id < 64; ++id) {
        const auto region = direct_region(RoutingMatrix::from_id(id), ch, PowerSplit({2, 3, 5}));
        const auto poly = vertices(region);
        for (const auto& v : poly.vertices) CHECK(contains(region, v));
        const auto hs = hull_halfspaces(poly.vertices);
        const auto again = vertices(hs);
        CHECK(same_points(poly.vertices, again.vertices));
        // every facet is tight at some vertex
        for (const auto& h : hs) {
            double best = -1e300;
            for (const auto& v : poly.vertices) best = std::max(best, dot(h.normal, v));
            CHECK(best == doctest::Approx(h.offset));
        }
    }
}
