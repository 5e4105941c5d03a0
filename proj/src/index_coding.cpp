#include "bcsi/index_coding.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bcsi {

void MessageSpace::validate() const
{
    for (auto s : sizes)
        if (s == 0) throw std::invalid_argument("message set sizes must be positive");
    if (kind == Kind::PairXor &&
        !(pair[0] >= 1 && pair[0] < pair[1] && pair[1] <= 3))
        throw std::invalid_argument("pair must be two distinct receivers i < j");
}

std::uint64_t MessageSpace::modulus() const
{
    return std::max(sizes[pair[0] - 1], sizes[pair[1] - 1]);
}

MessageSpace MessageSpace::pair_xor(std::array<std::uint64_t, 3> sizes, int i, int j)
{
    MessageSpace s;
    s.sizes = sizes;
    s.kind = Kind::PairXor;
    s.pair = {std::min(i, j), std::max(i, j)};
    s.validate();
    return s;
}

MessageSpace MessageSpace::mixed_radix(std::array<std::uint64_t, 3> sizes)
{
    MessageSpace s;
    s.sizes = sizes;
    s.kind = Kind::MixedRadix;
    s.validate();
    return s;
}

MessageSpace MessageSpace::for_config(const RoutingMatrix& a, std::array<std::uint64_t, 3> sizes)
{
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j)
            if (a.knows(i, j) && a.knows(j, i)) return pair_xor(sizes, i, j);
    return mixed_radix(sizes);
}

namespace {

void check_tuple(const MessageTuple& w, const MessageSpace& space)
{
    for (int k = 0; k < 3; ++k)
        if (w[k] >= space.sizes[k])
            throw std::invalid_argument("message w" + std::to_string(k + 1) + " out of range");
}

void check_receiver(int receiver)
{
    if (receiver < 1 || receiver > 3) throw std::invalid_argument("receiver must be 1, 2 or 3");
}

void check_kind(const MessageSpace& space, MessageSpace::Kind kind)
{
    space.validate();
    if (space.kind != kind) throw std::invalid_argument("index function does not match the message space");
}

}  // namespace

std::uint64_t index_case1(const MessageTuple& w, const MessageSpace& space)
{
    check_kind(space, MessageSpace::Kind::PairXor);
    check_tuple(w, space);
    const auto l = space.modulus();
    const auto [i, j] = space.pair;
    return w[space.third() - 1] * l + (w[i - 1] + w[j - 1]) % l;
}

std::uint64_t recover_case1(std::uint64_t k, const SideInfo& known, const MessageSpace& space,
                            int receiver)
{
    check_kind(space, MessageSpace::Kind::PairXor);
    check_receiver(receiver);
    const auto l = space.modulus();
    if (k >= subcodebook_count(space)) throw std::invalid_argument("index out of range");
    if (receiver == space.third()) return k / l;
    const int other = receiver == space.pair[0] ? space.pair[1] : space.pair[0];
    const auto& side = known[other - 1];
    if (!side) throw std::invalid_argument("receiver " + std::to_string(receiver) +
                                           " needs w" + std::to_string(other) + " as side information");
    return (k % l + l - *side % l) % l;
}

std::uint64_t index_case2(const MessageTuple& w, const MessageSpace& space)
{
    check_kind(space, MessageSpace::Kind::MixedRadix);
    check_tuple(w, space);
    const auto& s = space.sizes;
    return w[2] * s[0] * s[1] + w[1] * s[0] + w[0];
}

std::uint64_t recover_case2(std::uint64_t k, const MessageSpace& space, int receiver)
{
    check_kind(space, MessageSpace::Kind::MixedRadix);
    check_receiver(receiver);
    if (k >= subcodebook_count(space)) throw std::invalid_argument("index out of range");
    const auto& s = space.sizes;
    switch (receiver) {
    case 1: return k % s[0];
    case 2: return (k / s[0]) % s[1];
    default: return k / (s[0] * s[1]);
    }
}

std::uint64_t index_message(const MessageTuple& w, const MessageSpace& space)
{
    return space.kind == MessageSpace::Kind::PairXor ? index_case1(w, space) : index_case2(w, space);
}

std::uint64_t recover_message(std::uint64_t k, const SideInfo& known, const MessageSpace& space,
                              int receiver)
{
    return space.kind == MessageSpace::Kind::PairXor ? recover_case1(k, known, space, receiver)
                                                     : recover_case2(k, space, receiver);
}

std::uint64_t subcodebook_count(const MessageSpace& space)
{
    space.validate();
    if (space.kind == MessageSpace::Kind::PairXor)
        return space.sizes[space.third() - 1] * space.modulus();
    return space.sizes[0] * space.sizes[1] * space.sizes[2];
}

bool gp_rate_check(const RoutingMatrix& a, int receiver, const RateTuple& rates, double capacity)
{
    check_receiver(receiver);
    for (double r : rates)
        if (!(r >= 0.0)) throw std::invalid_argument("rates must be nonnegative");
    if (!(capacity >= 0.0)) throw std::invalid_argument("capacity must be nonnegative");
    return max_uncertainty_rate(a, receiver, rates) <= capacity;
}

}  // namespace bcsi
