#pragma once

// Combinatorics over the 64 side-information configurations of a
// 3-receiver broadcast channel.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "bcsi/core.hpp"

namespace bcsi {

/// Routing matrix A: a_ij = 1 iff receiver i knows message W_j a priori.
///
/// The canonical id packs the six off-diagonal entries, bit k holding the
/// k-th pair of kConfigBitOrder. The order is part of the file formats
/// (CSV/JSON) and must not change.
class RoutingMatrix {
public:
    using Entries = std::array<std::array<int, 3>, 3>;

    static constexpr std::array<std::array<int, 2>, 6> kConfigBitOrder = {
        {{1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}}};

    RoutingMatrix() = default;

    /// Throws std::invalid_argument on a nonzero diagonal or entries outside {0,1}.
    explicit RoutingMatrix(const Entries& entries);

    static RoutingMatrix from_id(int id);

    /// Accepts a decimal id "0".."63" or a 6-character bit string in
    /// kConfigBitOrder (character k = bit k).
    static RoutingMatrix parse(std::string_view text);

    int id() const;
    std::string bits() const;
    Entries entries() const;

    bool knows(int i, int j) const { return ((known_[i - 1] >> (j - 1)) & 1u) != 0; }

    RoutingMatrix with(int i, int j, bool value) const;

    friend bool operator==(const RoutingMatrix&, const RoutingMatrix&) = default;

private:
    // known_[i-1] bit j-1 <=> a_ij
    std::array<unsigned, 3> known_{};
};

int encode_config(const RoutingMatrix& a);
RoutingMatrix decode_config(int id);

/// No directed cycle of "knows" relations inside v (2-cycles and both 3-cycles).
bool is_acyclic(const RoutingMatrix& a, ReceiverSet v);

/// All acyclic subsets, including the empty set first; subsets in kNonemptySubsetMasks order.
std::vector<ReceiverSet> acyclic_family(const RoutingMatrix& a);

/// a_ji = 1 for every pair i < j in v. Singletons (and the empty set) are complete.
bool is_complete(const RoutingMatrix& a, ReceiverSet v);

/// Every nonempty complete set.
std::vector<ReceiverSet> complete_sets(const RoutingMatrix& a);

/// The family K_I of complete sets with no complete strict superset.
std::vector<ReceiverSet> maximum_complete_sets(const RoutingMatrix& a);

struct CompleteSetFamily {
    std::vector<ReceiverSet> k_family;
    std::array<ReceiverSet, 3> layer_of;  // layer_of[l-1] = K_l

    ReceiverSet layer(int l) const { return layer_of[l - 1]; }
};

/// K_l = the member of K_I containing l with the smallest min K + max K.
/// Throws std::logic_error if the minimiser is not unique.
CompleteSetFamily layer_assignment(const RoutingMatrix& a);

/// a31 + a32 + a21: the number of weaker receivers knowing a stronger one's message.
int side_info_degree(const RoutingMatrix& a);

/// v1 is weaker than v2: min v1 > max v2 and no receiver in v1 knows a message of v2.
bool is_weaker(const RoutingMatrix& a, ReceiverSet v1, ReceiverSet v2);

/// How "D_j is a weaker set of D_{j-1}" chains are checked.
///  - AllPredecessors: D_j must be weaker than every earlier set.
///  - Consecutive: only the immediate predecessor is checked.
enum class WeaknessReading { AllPredecessors, Consecutive };

using DegradedSequence = std::vector<ReceiverSet>;

/// Every degraded sequence (D_1,...,D_J), J >= 1, of nonempty acyclic sets,
/// in depth-first order over kNonemptySubsetMasks.
std::vector<DegradedSequence> degraded_sequences(
    const RoutingMatrix& a, WeaknessReading reading = WeaknessReading::AllPredecessors);

bool is_degraded_sequence(const RoutingMatrix& a, const DegradedSequence& seq,
                          WeaknessReading reading = WeaknessReading::AllPredecessors);

/// max over acyclic V of the sum of R_j, j in V, j not known to receiver i.
double max_uncertainty_rate(const RoutingMatrix& a, int receiver, const RateTuple& rates);

enum class TightnessCase { Case1, Case2, Case3, Case4, Open };

std::string to_string(TightnessCase c);

struct TightnessVerdict {
    TightnessCase case_id = TightnessCase::Open;
    std::vector<ReceiverSet> k_family;
    // (k1, k2, k3) for the two-set patterns; zeros otherwise.
    std::array<int, 3> labels{};

    bool tight() const { return case_id != TightnessCase::Open; }
    std::string detail() const;
};

TightnessVerdict tightness_classify(const RoutingMatrix& a);

std::string to_string(const std::vector<ReceiverSet>& family);

}  // namespace bcsi
