#include "doctest.h"

#include <stdexcept>

#include "bcsi/core.hpp"

using namespace bcsi;

TEST_CASE("receiver set basics")
{
    constexpr ReceiverSet s{1, 3};
    static_assert(s.mask() == 5);
    CHECK(s.contains(1));
    CHECK_FALSE(s.contains(2));
    CHECK(s.size() == 2);
    CHECK(s.min() == 1);
    CHECK(s.max() == 3);
    CHECK(s.to_string() == "{1,3}");
    CHECK(ReceiverSet{}.to_string() == "{}");
    CHECK(ReceiverSet{}.min() == 0);
    CHECK(ReceiverSet{2}.is_subset_of(kAllReceivers));
    CHECK_FALSE(s.is_subset_of(ReceiverSet{1, 2}));
    CHECK((s & ReceiverSet{3, 2}) == ReceiverSet{3});
    CHECK((s | ReceiverSet{2}) == kAllReceivers);
    CHECK(s.members() == std::vector<int>{1, 3});
}

TEST_CASE("subset masks cover every nonempty set once")
{
    unsigned seen = 0;
    for (unsigned m : kNonemptySubsetMasks) {
        CHECK((seen & (1u << m)) == 0);
        seen |= 1u << m;
    }
    CHECK(seen == 0xFEu);
}

TEST_CASE("subset sums and log base parsing")
{
    const RateTuple r{1.0, 2.0, 4.0};
    CHECK(subset_sum(r, ReceiverSet{1, 3}) == 5.0);
    CHECK(subset_sum(r, ReceiverSet{}) == 0.0);
    CHECK(dot({1.0, 1.0, 0.5}, r) == 5.0);
    CHECK(parse_log_base("2") == LogBase::Two);
    CHECK(parse_log_base("e") == LogBase::E);
    CHECK(to_string(LogBase::E) == "e");
    CHECK_THROWS_AS(parse_log_base("10"), std::invalid_argument);
}
