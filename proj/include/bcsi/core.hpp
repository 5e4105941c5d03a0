#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace bcsi {

// Receivers are labelled 1, 2, 3 in order of increasing noise variance.
inline constexpr int kNumReceivers = 3;

/// Subset of {1,2,3} stored as a bitmask (bit i-1 <=> receiver i).
class ReceiverSet {
public:
    constexpr ReceiverSet() = default;
    constexpr ReceiverSet(std::initializer_list<int> receivers)
    {
        for (int r : receivers) mask_ |= bit(r);
    }

    static constexpr ReceiverSet from_mask(unsigned mask)
    {
        ReceiverSet s;
        s.mask_ = static_cast<std::uint8_t>(mask & 7u);
        return s;
    }

    constexpr unsigned mask() const { return mask_; }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr bool contains(int r) const { return (mask_ & bit(r)) != 0; }

    constexpr int size() const
    {
        return ((mask_ >> 0) & 1) + ((mask_ >> 1) & 1) + ((mask_ >> 2) & 1);
    }

    // min/max of the empty set are 0.
    constexpr int min() const
    {
        for (int r = 1; r <= kNumReceivers; ++r)
            if (contains(r)) return r;
        return 0;
    }
    constexpr int max() const
    {
        for (int r = kNumReceivers; r >= 1; --r)
            if (contains(r)) return r;
        return 0;
    }

    constexpr bool is_subset_of(ReceiverSet other) const
    {
        return (mask_ & ~other.mask_) == 0;
    }

    std::vector<int> members() const;
    std::string to_string() const;  // "{1,3}"

    friend constexpr ReceiverSet operator&(ReceiverSet a, ReceiverSet b)
    {
        return from_mask(a.mask_ & b.mask_);
    }
    friend constexpr ReceiverSet operator|(ReceiverSet a, ReceiverSet b)
    {
        return from_mask(a.mask_ | b.mask_);
    }
    friend constexpr bool operator==(ReceiverSet a, ReceiverSet b) = default;

private:
    static constexpr unsigned bit(int r) { return (r >= 1 && r <= kNumReceivers) ? 1u << (r - 1) : 0u; }

    std::uint8_t mask_ = 0;
};

inline constexpr ReceiverSet kAllReceivers = ReceiverSet::from_mask(7);

// Nonempty subsets ordered by size, then lexicographically:
// {1},{2},{3},{1,2},{1,3},{2,3},{1,2,3}.
inline constexpr std::array<unsigned, 7> kNonemptySubsetMasks = {1, 2, 4, 3, 5, 6, 7};

/// (R1,R2,R3), rates per channel use in the configured log base.
using RateTuple = std::array<double, 3>;

/// (mu1,mu2,mu3), nonnegative weights.
using WeightVector = std::array<double, 3>;

enum class LogBase { Two, E };

std::string to_string(LogBase base);
LogBase parse_log_base(const std::string& text);

/// Rate carried by a set of receivers: sum_{k in V} r_k.
double subset_sum(const RateTuple& r, ReceiverSet v);

double dot(const WeightVector& mu, const RateTuple& r);

}  // namespace bcsi
