#pragma once

// Message-level index functions for network-coded broadcast with side information.

#include <array>
#include <cstdint>
#include <optional>

#include "bcsi/config_algebra.hpp"
#include "bcsi/core.hpp"

namespace bcsi {

/// Message tuple (w1, w2, w3), 0-based: w_i in {0, ..., L_i - 1}.
using MessageTuple = std::array<std::uint64_t, 3>;

/// What a receiver already knows: known[j-1] holds w_j when available.
using SideInfo = std::array<std::optional<std::uint64_t>, 3>;

struct MessageSpace {
    enum class Kind { PairXor, MixedRadix };

    std::array<std::uint64_t, 3> sizes{1, 1, 1};
    Kind kind = Kind::MixedRadix;
    std::array<int, 2> pair{1, 2};  // mutually-known pair (i < j) for PairXor

    /// Throws std::invalid_argument on a zero size or a malformed pair.
    void validate() const;
    /// The receiver outside the pair.
    int third() const { return 6 - pair[0] - pair[1]; }
    /// max(L_i, L_j) for PairXor.
    std::uint64_t modulus() const;

    static MessageSpace pair_xor(std::array<std::uint64_t, 3> sizes, int i, int j);
    static MessageSpace mixed_radix(std::array<std::uint64_t, 3> sizes);
    /// PairXor over the first mutually-known pair of A, MixedRadix when there is none.
    /// Throws std::invalid_argument if a_ij = a_ji = 1 is not met for the chosen pair.
    static MessageSpace for_config(const RoutingMatrix& a, std::array<std::uint64_t, 3> sizes);
};

/// k = w_t * L + ((w_i + w_j) mod L), L = max(L_i, L_j), t the third receiver.
std::uint64_t index_case1(const MessageTuple& w, const MessageSpace& space);

/// Receiver `receiver` recovers its own message from k. A pair member needs the
/// other pair member's message; throws std::invalid_argument when it is missing.
std::uint64_t recover_case1(std::uint64_t k, const SideInfo& known, const MessageSpace& space,
                            int receiver);

/// k = w3 * L1 * L2 + w2 * L1 + w1.
std::uint64_t index_case2(const MessageTuple& w, const MessageSpace& space);
std::uint64_t recover_case2(std::uint64_t k, const MessageSpace& space, int receiver);

std::uint64_t index_message(const MessageTuple& w, const MessageSpace& space);
std::uint64_t recover_message(std::uint64_t k, const SideInfo& known, const MessageSpace& space,
                              int receiver);

/// Number of sub-codebooks the index ranges over.
std::uint64_t subcodebook_count(const MessageSpace& space);

/// max_{V acyclic} sum_{j in V, a_ij = 0} R_j <= capacity.
bool gp_rate_check(const RoutingMatrix& a, int receiver, const RateTuple& rates, double capacity);

}  // namespace bcsi
