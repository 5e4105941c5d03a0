#include "doctest.h"

#include <stdexcept>

#include <algorithm>
#include <set>

#include "bcsi/config_algebra.hpp"

using namespace bcsi;

namespace {

RoutingMatrix with_entries(std::initializer_list<std::pair<int, int>> ones)
{
    RoutingMatrix a;
    for (auto [i, j] : ones) a = a.with(i, j, true);
    return a;
}

// Cycle search by walking every ordered vertex sequence inside v.
bool has_cycle(const RoutingMatrix& a, ReceiverSet v)
{
    const auto m = v.members();
    for (int x : m)
        for (int y : m) {
            if (x == y) continue;
            if (a.knows(x, y) && a.knows(y, x)) return true;
            for (int z : m)
                if (z != x && z != y && a.knows(x, y) && a.knows(y, z) && a.knows(z, x)) return true;
        }
    return false;
}

// Brute force over all ordered sequences of distinct nonempty sets.
std::vector<DegradedSequence> brute_sequences(const RoutingMatrix& a, WeaknessReading reading)
{
    std::vector<DegradedSequence> out;
    std::vector<ReceiverSet> sets;
    for (unsigned m = 1; m < 8; ++m) sets.push_back(ReceiverSet::from_mask(m));
    auto ok = [&](const DegradedSequence& s) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (has_cycle(a, s[j])) return false;
            for (std::size_t p = 0; p < j; ++p) {
                if (reading == WeaknessReading::Consecutive && p + 1 != j) continue;
                if (!(s[j].min() > s[p].max())) return false;
                for (int x : s[j].members())
                    for (int y : s[p].members())
                        if (a.knows(x, y)) return false;
            }
        }
        return true;
    };
    for (auto x : sets) {
        if (ok({x})) out.push_back({x});
        for (auto y : sets) {
            if (ok({x, y})) out.push_back({x, y});
            for (auto z : sets)
                if (ok({x, y, z})) out.push_back({x, y, z});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("config id encoding")
{
    CHECK(encode_config(RoutingMatrix{}) == 0);
    CHECK(with_entries({{1, 2}}).id() == 1);
    CHECK(with_entries({{3, 2}}).id() == 32);
    CHECK(with_entries({{2, 1}, {3, 1}, {3, 2}}).id() == 52);
    CHECK(with_entries({{1, 3}, {3, 1}}).id() == 18);
    const auto full = decode_config(63);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) CHECK(full.knows(i, j) == (i != j));
    for (int id = 0; id < 64; ++id) {
        const auto a = decode_config(id);
        CHECK(encode_config(a) == id);
        CHECK(RoutingMatrix(a.entries()) == a);
        CHECK(RoutingMatrix::parse(a.bits()) == a);
        CHECK(RoutingMatrix::parse(std::to_string(id)) == a);
    }
    CHECK(RoutingMatrix::parse("010010").id() == 18);
}

TEST_CASE("config validation")
{
    RoutingMatrix::Entries e{};
    e[1][1] = 1;
    CHECK_THROWS_AS(RoutingMatrix{e}, std::invalid_argument);
    e[1][1] = 0;
    e[0][2] = 2;
    CHECK_THROWS_AS(RoutingMatrix{e}, std::invalid_argument);
    CHECK_THROWS_AS(RoutingMatrix::from_id(64), std::invalid_argument);
    CHECK_THROWS_AS(RoutingMatrix::from_id(-1), std::invalid_argument);
    CHECK_THROWS_AS(RoutingMatrix::parse("0120"), std::invalid_argument);
    CHECK_THROWS_AS(RoutingMatrix::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(RoutingMatrix::parse("12x"), std::invalid_argument);
}

TEST_CASE("acyclic sets")
{
    for (int id = 0; id < 64; ++id) {
        const auto a = RoutingMatrix::from_id(id);
        CHECK(is_acyclic(a, ReceiverSet{}));
        for (unsigned m = 0; m < 8; ++m) {
            const auto v = ReceiverSet::from_mask(m);
            CHECK(is_acyclic(a, v) == !has_cycle(a, v));
            // subsets of acyclic sets are acyclic
            if (is_acyclic(a, v))
                for (unsigned s = 0; s < 8; ++s)
                    if ((s & ~m) == 0) CHECK(is_acyclic(a, ReceiverSet::from_mask(s)));
        }
    }
    CHECK_FALSE(is_acyclic(with_entries({{1, 2}, {2, 1}}), ReceiverSet{1, 2}));
    CHECK(is_acyclic(RoutingMatrix{}, kAllReceivers));
    CHECK(acyclic_family(RoutingMatrix{}).size() == 8);
    CHECK(acyclic_family(RoutingMatrix{}).front().empty());

    const auto full = acyclic_family(RoutingMatrix::from_id(63));
    CHECK(full.size() == 4);
    const auto pair = acyclic_family(with_entries({{1, 2}, {2, 1}}));
    CHECK(pair.size() == 6);
    for (auto v : pair) CHECK_FALSE((v.contains(1) && v.contains(2)));
}

TEST_CASE("complete and maximum complete sets")
{
    const auto k52 = maximum_complete_sets(RoutingMatrix::from_id(52));
    REQUIRE(k52.size() == 1);
    CHECK(k52[0] == kAllReceivers);

    const auto k31 = maximum_complete_sets(with_entries({{3, 1}}));
    CHECK(to_string(k31) == "{{2},{1,3}}");

    CHECK(to_string(maximum_complete_sets(RoutingMatrix{})) == "{{1},{2},{3}}");

    for (int id = 0; id < 64; ++id) {
        const auto a = RoutingMatrix::from_id(id);
        const auto fam = maximum_complete_sets(a);
        for (auto k : fam) {
            CHECK(is_complete(a, k));
            for (unsigned m = 1; m < 8; ++m) {
                const auto sup = ReceiverSet::from_mask(m);
                if (sup != k && k.is_subset_of(sup)) CHECK_FALSE(is_complete(a, sup));
            }
        }
        // complete pairs are acyclic exactly when the reverse entry is absent
        for (auto k : complete_sets(a))
            if (k.size() == 2) CHECK(is_acyclic(a, k) == !a.knows(k.min(), k.max()));
        // every receiver is in some maximum complete set
        ReceiverSet cover;
        for (auto k : fam) cover = cover | k;
        CHECK(cover == kAllReceivers);
    }
}

TEST_CASE("layer assignment")
{
    const auto f32 = layer_assignment(with_entries({{3, 2}}));
    CHECK(f32.layer(1) == ReceiverSet{1});
    CHECK(f32.layer(2) == ReceiverSet{2, 3});
    CHECK(f32.layer(3) == ReceiverSet{2, 3});

    const auto f52 = layer_assignment(RoutingMatrix::from_id(52));
    for (int l = 1; l <= 3; ++l) CHECK(f52.layer(l) == kAllReceivers);

    const auto f0 = layer_assignment(RoutingMatrix{});
    for (int l = 1; l <= 3; ++l) CHECK(f0.layer(l) == ReceiverSet{l});

    for (int id = 0; id < 64; ++id) {
        const auto a = RoutingMatrix::from_id(id);
        const auto fam = layer_assignment(a);
        for (int l = 1; l <= 3; ++l) {
            CHECK(fam.layer(l).contains(l));
            CHECK(std::find(fam.k_family.begin(), fam.k_family.end(), fam.layer(l)) != fam.k_family.end());
        }
    }
}

TEST_CASE("weaker sets")
{
    CHECK(is_weaker(RoutingMatrix{}, ReceiverSet{3}, ReceiverSet{1, 2}));
    CHECK_FALSE(is_weaker(with_entries({{3, 1}}), ReceiverSet{3}, ReceiverSet{1}));
    for (int id = 0; id < 64; ++id) CHECK_FALSE(is_weaker(RoutingMatrix::from_id(id), ReceiverSet{1}, ReceiverSet{2}));
}

TEST_CASE("degraded sequences match brute force under both readings")
{
    for (auto reading : {WeaknessReading::AllPredecessors, WeaknessReading::Consecutive}) {
        for (int id = 0; id < 64; ++id) {
            const auto a = RoutingMatrix::from_id(id);
            auto got = degraded_sequences(a, reading);
            auto want = brute_sequences(a, reading);
            const auto key = [](const DegradedSequence& s) {
                std::vector<unsigned> k;
                for (auto d : s) k.push_back(d.mask());
                return k;
            };
            std::set<std::vector<unsigned>> g, w;
            for (const auto& s : got) {
                g.insert(key(s));
                CHECK(is_degraded_sequence(a, s, reading));
                for (std::size_t j = 1; j < s.size(); ++j) CHECK((s[j] & s[j - 1]).empty());
            }
            for (const auto& s : want) w.insert(key(s));
            CHECK(g.size() == got.size());
            CHECK(g == w);
        }
    }
}

TEST_CASE("degraded sequence examples")
{
    const auto zero = degraded_sequences(RoutingMatrix{});
    CHECK(std::find(zero.begin(), zero.end(), DegradedSequence{{1}, {2}, {3}}) != zero.end());

    const auto full = degraded_sequences(RoutingMatrix::from_id(63));
    CHECK(full.size() == 3);
    for (const auto& s : full) CHECK((s.size() == 1 && s[0].size() == 1));

    const auto s31 = degraded_sequences(with_entries({{3, 1}}));
    CHECK(std::find(s31.begin(), s31.end(), DegradedSequence{{1, 2}, {3}}) == s31.end());
    CHECK(std::find(s31.begin(), s31.end(), DegradedSequence{{2}, {3}}) != s31.end());

    // The readings differ once a later set knows a message two steps back.
    const auto a = with_entries({{3, 1}});
    CHECK_FALSE(is_degraded_sequence(a, {{1}, {2}, {3}}, WeaknessReading::AllPredecessors));
    CHECK(is_degraded_sequence(a, {{1}, {2}, {3}}, WeaknessReading::Consecutive));
}

TEST_CASE("max uncertainty rate")
{
    const RateTuple r{0.7, 1.1, 0.4};
    const auto a = with_entries({{1, 2}, {2, 1}});
    CHECK(max_uncertainty_rate(a, 3, r) == doctest::Approx(0.4 + 1.1));
    CHECK(max_uncertainty_rate(RoutingMatrix::from_id(63), 1, r) == doctest::Approx(0.7));
    for (int id = 0; id < 64; ++id)
        for (int i = 1; i <= 3; ++i) CHECK(max_uncertainty_rate(RoutingMatrix::from_id(id), i, {0, 0, 0}) == 0.0);
    // with no side information every receiver faces the full sum
    CHECK(max_uncertainty_rate(RoutingMatrix{}, 2, r) == doctest::Approx(2.2));
}

TEST_CASE("tightness verdicts")
{
    CHECK(tightness_classify(RoutingMatrix::from_id(52)).case_id == TightnessCase::Case1);
    CHECK(tightness_classify(RoutingMatrix{}).case_id == TightnessCase::Case4);
    CHECK(tightness_classify(RoutingMatrix::from_id(18)).case_id == TightnessCase::Open);
    CHECK(tightness_classify(RoutingMatrix::from_id(63)).case_id == TightnessCase::Case1);

    int counts[5] = {};
    for (int id = 0; id < 64; ++id) ++counts[static_cast<int>(tightness_classify(RoutingMatrix::from_id(id)).case_id)];
    CHECK(counts[0] == 8);
    CHECK(counts[1] == 14);
    CHECK(counts[2] == 16);
    CHECK(counts[3] == 8);
    CHECK(counts[0] + counts[1] + counts[2] + counts[3] == 46);

    const auto v = tightness_classify(with_entries({{2, 1}, {3, 1}}));
    CHECK(v.case_id == TightnessCase::Case2);
    CHECK(v.labels == std::array<int, 3>{2, 1, 3});
}
