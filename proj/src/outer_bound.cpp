#include "bcsi/outer_bound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcsi {

SubsetBoundRegion sequence_region(const DegradedSequence& seq, const Channel& ch,
                                  const PowerSplit& split)
{
    ch.validate();
    if (split.size() != seq.size())
        throw std::invalid_argument("sequence_region: split length must equal the sequence length");
    split.validate(ch);
    SubsetBoundRegion region;
    for (std::size_t j = 0; j < seq.size(); ++j) {
        if (seq[j].empty()) throw std::invalid_argument("sequence_region: empty set in sequence");
        region.tighten(seq[j], cap(split[j] / (ch.noise_of(seq[j].min()) + split.below(j)), ch.base));
    }
    return region;
}

double sequence_min_power(const DegradedSequence& seq, const Channel& ch, const RateTuple& r)
{
    const double b = ch.base == LogBase::Two ? 2.0 : std::exp(1.0);
    double used = 0.0;
    for (auto d : seq) {
        const double rate = subset_sum(r, d);
        used += std::expm1(2.0 * rate * std::log(b)) * (ch.noise_of(d.min()) + used);
        if (!std::isfinite(used)) return used;
    }
    return used;
}

namespace {

void check_rates(const RateTuple& r)
{
    for (double x : r)
        if (!(x >= 0.0)) throw std::invalid_argument("rates must be nonnegative");
}

bool within(const std::vector<DegradedSequence>& seqs, const Channel& ch, const RateTuple& r,
            double tol)
{
    for (const auto& seq : seqs)
        if (!(sequence_min_power(seq, ch, r) <= ch.power + tol)) return false;
    return true;
}

}  // namespace

bool is_achievable_outer(const RoutingMatrix& a, const Channel& ch, const RateTuple& r, double tol,
                         WeaknessReading reading)
{
    ch.validate();
    check_rates(r);
    return within(degraded_sequences(a, reading), ch, r, tol);
}

double outer_ray_extent(const RoutingMatrix& a, const Channel& ch, const RateTuple& direction,
                        WeaknessReading reading)
{
    ch.validate();
    check_rates(direction);
    double hi = kUnbounded;
    for (int k = 0; k < 3; ++k)
        if (direction[k] > 0.0) hi = std::min(hi, cap(ch.power / ch.noise[k], ch.base) / direction[k]);
    if (!std::isfinite(hi)) throw std::invalid_argument("ray direction must be nonzero");

    const auto seqs = degraded_sequences(a, reading);
    const auto at = [&](double t) {
        return RateTuple{t * direction[0], t * direction[1], t * direction[2]};
    };
    if (within(seqs, ch, at(hi), 0.0)) return hi;
    double lo = 0.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (within(seqs, ch, at(mid), 0.0) ? lo : hi) = mid;
    }
    return lo;
}

std::vector<RateTuple> outer_frontier(const RoutingMatrix& a, const Channel& ch,
                                      const std::vector<RateTuple>& directions,
                                      WeaknessReading reading)
{
    std::vector<RateTuple> out;
    out.reserve(directions.size());
    for (const auto& d : directions) {
        const double t = outer_ray_extent(a, ch, d, reading);
        out.push_back({t * d[0], t * d[1], t * d[2]});
    }
    return out;
}

}  // namespace bcsi
