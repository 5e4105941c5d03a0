#pragma once

// Achievable region of layered joint network / dirty-paper coding.

#include <array>
#include <vector>

#include "bcsi/config_algebra.hpp"
#include "bcsi/core.hpp"
#include "bcsi/gaussian_layers.hpp"
#include "bcsi/region_geometry.hpp"

namespace bcsi {

/// The constraint family of the achievable region for one configuration,
/// independent of channel and split: which V carry a constraint, and for
/// each such V and layer l the strongest receiver of V inside K_l (0 when
/// V and K_l are disjoint, so the layer contributes nothing).
struct InnerShape {
    CompleteSetFamily layers;
    std::array<bool, 8> constrained{};
    std::array<std::array<int, 3>, 8> best_receiver{};
};

InnerShape inner_shape(const RoutingMatrix& a);

/// b_V = sum_l cap(P_l / (min_{i in K_l, i in V} N_i + sum_{m<l} P_m)) for every V
/// whose intersection with each K_l is acyclic or empty.
SubsetBoundRegion direct_region(const RoutingMatrix& a, const Channel& ch, const PowerSplit& split);
SubsetBoundRegion direct_region(const InnerShape& shape, const Channel& ch, const PowerSplit& split);

/// Per-layer rate-split system over R1..R3 and R{i}_{l} (i in K_l).
LinearInequalitySystem split_rate_system(const RoutingMatrix& a, const Channel& ch,
                                         const PowerSplit& split);

/// Projects split_rate_system onto (R1,R2,R3) by Fourier-Motzkin elimination.
/// Throws std::logic_error if a surviving row is neither a 0/1 subset-sum row
/// nor implied by those rows.
SubsetBoundRegion region_via_fm(const RoutingMatrix& a, const Channel& ch, const PowerSplit& split);

/// Region of the scheme that network-codes over the complete sets
/// kseq[0..M-1] in layers 1..M. Throws std::invalid_argument if a member is
/// not complete under A or the split length differs from M.
SubsetBoundRegion cmkm_region(const RoutingMatrix& a, const std::vector<ReceiverSet>& kseq,
                              const Channel& ch, const PowerSplit& split);

/// Marginal weighted rate of a layer serving a complete set at interference
/// level z: scale * sum_k weight[k] / (N_k + z).
struct UtilityCurve {
    ReceiverSet set;
    std::array<double, 3> weight{};
    std::array<double, 3> noise{};
    double scale = 1.0;

    double value(double z) const;
    double integral(double from, double to) const;
};

/// One curve per nonempty complete set with a nonzero weight.
std::vector<UtilityCurve> utility_curves(const RoutingMatrix& a, const Channel& ch,
                                         const WeightVector& mu);

struct ScheduleSegment {
    double begin = 0.0;
    double end = 0.0;
    ReceiverSet set;  // maximising curve on [begin, end]
    int layer = 0;    // layer whose K_l carries it
};

struct UtilityOptimum {
    double value = 0.0;  // J*
    PowerSplit split;
    std::vector<ScheduleSegment> schedule;
    bool realizable = true;  // schedule order fits the layer order K_1, K_2, K_3
};

/// Weighted sum-rate maximum max mu . R over the achievable region, by
/// integrating the upper envelope of the utility curves over [0, P].
/// Throws std::invalid_argument for negative or all-zero weights.
UtilityOptimum max_weighted_sum_utility(const RoutingMatrix& a, const Channel& ch,
                                        const WeightVector& mu);

/// The maximising rate tuple for each weight vector.
std::vector<RateTuple> frontier(const RoutingMatrix& a, const Channel& ch,
                                const std::vector<WeightVector>& directions);

/// max over the split grid {P (i,j,g-i-j)/g} of support(direct_region, mu).
double grid_weighted_sum(const RoutingMatrix& a, const Channel& ch, const WeightVector& mu, int grid);

struct RayExtent {
    double t = 0.0;
    PowerSplit split;
};

/// Largest t with t * direction in direct_region(split) over the split grid
/// with resolution `grid`. Exact over the grid (branch and bound on
/// monotone upper bounds), so doubling the grid never decreases t.
RayExtent inner_ray_extent(const RoutingMatrix& a, const Channel& ch, const RateTuple& direction,
                           int grid);

}  // namespace bcsi
