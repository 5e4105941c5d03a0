#pragma once

// Converse region over degraded sequences of acyclic sets.

#include <vector>

#include "bcsi/config_algebra.hpp"
#include "bcsi/core.hpp"
#include "bcsi/gaussian_layers.hpp"
#include "bcsi/region_geometry.hpp"

namespace bcsi {

/// sum_{k in D_j} R_k <= cap(P_j / (min D_j noise + sum_{m<j} P_m)) for each j.
/// Receivers outside every D_j are unconstrained. Throws std::invalid_argument
/// if the split length differs from the sequence length.
SubsetBoundRegion sequence_region(const DegradedSequence& seq, const Channel& ch,
                                  const PowerSplit& split);

/// Smallest total power for which some split puts r inside sequence_region(seq).
double sequence_min_power(const DegradedSequence& seq, const Channel& ch, const RateTuple& r);

/// r satisfies the converse for every degraded sequence of A (for some split each).
bool is_achievable_outer(const RoutingMatrix& a, const Channel& ch, const RateTuple& r,
                         double tol = 1e-9,
                         WeaknessReading reading = WeaknessReading::AllPredecessors);

/// Largest t with t * direction outer-achievable, by bisection to 1e-12 in t.
double outer_ray_extent(const RoutingMatrix& a, const Channel& ch, const RateTuple& direction,
                        WeaknessReading reading = WeaknessReading::AllPredecessors);

/// t * direction at the outer extent for each direction.
std::vector<RateTuple> outer_frontier(const RoutingMatrix& a, const Channel& ch,
                                      const std::vector<RateTuple>& directions,
                                      WeaknessReading reading = WeaknessReading::AllPredecessors);

}  // namespace bcsi
