#include "bcsi/inner_bound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bcsi {

InnerShape inner_shape(const RoutingMatrix& a)
{
    InnerShape shape;
    shape.layers = layer_assignment(a);
    for (unsigned m : kNonemptySubsetMasks) {
        const auto v = ReceiverSet::from_mask(m);
        bool ok = true;
        for (int l = 1; l <= 3; ++l) {
            const auto inter = v & shape.layers.layer(l);
            if (!inter.empty() && !is_acyclic(a, inter)) ok = false;
            shape.best_receiver[m][l - 1] = inter.min();
        }
        shape.constrained[m] = ok;
    }
    return shape;
}

SubsetBoundRegion direct_region(const InnerShape& shape, const Channel& ch, const PowerSplit& split)
{
    if (split.size() != 3) throw std::invalid_argument("direct_region needs a 3-part power split");
    split.validate(ch);
    SubsetBoundRegion region;
    for (unsigned m : kNonemptySubsetMasks) {
        if (!shape.constrained[m]) continue;
        double b = 0.0;
        for (std::size_t l = 0; l < 3; ++l) {
            const int r = shape.best_receiver[m][l];
            if (r == 0) continue;
            b += cap(split[l] / (ch.noise_of(r) + split.below(l)), ch.base);
        }
        region.set_bound(ReceiverSet::from_mask(m), b);
    }
    return region;
}

SubsetBoundRegion direct_region(const RoutingMatrix& a, const Channel& ch, const PowerSplit& split)
{
    ch.validate();
    return direct_region(inner_shape(a), ch, split);
}

namespace {

std::string split_var(int receiver, int layer)
{
    return "R" + std::to_string(receiver) + "_" + std::to_string(layer);
}

}  // namespace

LinearInequalitySystem split_rate_system(const RoutingMatrix& a, const Channel& ch,
                                         const PowerSplit& split)
{
    ch.validate();
    if (split.size() != 3) throw std::invalid_argument("split_rate_system needs a 3-part power split");
    split.validate(ch);
    const auto fam = layer_assignment(a);

    std::vector<std::string> names{"R1", "R2", "R3"};
    for (int l = 1; l <= 3; ++l)
        for (int i : fam.layer(l).members()) names.push_back(split_var(i, l));
    LinearInequalitySystem sys(names);
    const std::size_t n = names.size();

    for (int l = 1; l <= 3; ++l) {
        const auto k = fam.layer(l);
        const double below = split.below(static_cast<std::size_t>(l - 1));
        for (unsigned m : kNonemptySubsetMasks) {
            const auto v = ReceiverSet::from_mask(m);
            if (!v.is_subset_of(k) || !is_acyclic(a, v)) continue;
            std::vector<double> row(n, 0.0);
            for (int i : v.members()) row[sys.index_of(split_var(i, l))] = 1.0;
            sys.add(row, cap(split[l - 1] / (ch.noise_of(v.min()) + below), ch.base));
        }
    }
    // R_i = sum_l R_{il}
    for (int i = 1; i <= 3; ++i) {
        std::vector<double> row(n, 0.0);
        row[i - 1] = 1.0;
        for (int l = 1; l <= 3; ++l)
            if (fam.layer(l).contains(i)) row[sys.index_of(split_var(i, l))] = -1.0;
        sys.add(row, 0.0);
        for (double& c : row) c = -c;
        sys.add(row, 0.0);
    }
    for (std::size_t v = 0; v < n; ++v) sys.add_nonnegativity(v);
    return sys;
}

SubsetBoundRegion region_via_fm(const RoutingMatrix& a, const Channel& ch, const PowerSplit& split)
{
    const auto sys = split_rate_system(a, ch, split);
    std::vector<std::string> eliminate(sys.names().begin() + 3, sys.names().end());
    const auto projected = fm_eliminate(sys, eliminate);
    if (projected.infeasible()) throw std::logic_error("projected rate system is infeasible");

    constexpr double eps = 1e-9;
    SubsetBoundRegion region;
    std::vector<LinearInequality> other;
    for (const auto& row : projected.rows()) {
        unsigned mask = 0;
        bool subset_row = true;
        int negatives = 0;
        for (int k = 0; k < 3; ++k) {
            const double c = row.coef[k];
            if (std::abs(c - 1.0) <= eps) mask |= 1u << k;
            else if (std::abs(c + 1.0) <= eps) ++negatives, subset_row = false;
            else if (std::abs(c) > eps) subset_row = false;
        }
        if (subset_row && mask != 0) {
            region.tighten(ReceiverSet::from_mask(mask), row.rhs);
            continue;
        }
        if (negatives == 1 && mask == 0 && std::abs(row.rhs) <= eps) continue;  // R_k >= 0
        other.push_back(row);
    }
    for (const auto& row : other) {
        const WeightVector dir{row.coef[0], row.coef[1], row.coef[2]};
        if (support(region, dir).value > row.rhs + eps)
            throw std::logic_error("projection produced a constraint outside subset-sum form");
    }
    return region;
}

SubsetBoundRegion cmkm_region(const RoutingMatrix& a, const std::vector<ReceiverSet>& kseq,
                              const Channel& ch, const PowerSplit& split)
{
    ch.validate();
    if (split.size() != kseq.size())
        throw std::invalid_argument("cmkm_region: split length must equal the number of sets");
    split.validate(ch);
    for (auto k : kseq)
        if (k.empty() || !is_complete(a, k))
            throw std::invalid_argument("cmkm_region: " + k.to_string() + " is not complete");

    SubsetBoundRegion region;
    for (unsigned m : kNonemptySubsetMasks) {
        const auto v = ReceiverSet::from_mask(m);
        bool ok = true;
        double b = 0.0;
        for (std::size_t l = 0; l < kseq.size() && ok; ++l) {
            const auto inter = v & kseq[l];
            if (inter.empty()) continue;
            if (!is_acyclic(a, inter)) {
                ok = false;
                break;
            }
            b += cap(split[l] / (ch.noise_of(inter.min()) + split.below(l)), ch.base);
        }
        if (ok) region.set_bound(v, b);
    }
    return region;
}

// ---------------------------------------------------------------------------
// Utility-function maximisation

double UtilityCurve::value(double z) const
{
    double s = 0.0;
    for (int k = 0; k < 3; ++k)
        if (weight[k] != 0.0) s += weight[k] / (noise[k] + z);
    return scale * s;
}

double UtilityCurve::integral(double from, double to) const
{
    double s = 0.0;
    for (int k = 0; k < 3; ++k)
        if (weight[k] != 0.0) s += weight[k] * std::log((noise[k] + to) / (noise[k] + from));
    return scale * s;
}

namespace {

void check_weights(const WeightVector& mu)
{
    for (double m : mu)
        if (!(m >= 0.0) || !std::isfinite(m)) throw std::invalid_argument("weights must be nonnegative");
    if (mu[0] + mu[1] + mu[2] <= 0.0) throw std::invalid_argument("weights must not all be zero");
}

double utility_scale(LogBase base)
{
    return base == LogBase::Two ? 1.0 / (2.0 * std::log(2.0)) : 0.5;
}

// Roots in (lo, hi) of  sum_k c_k / (N_k + z) = 0  after clearing denominators.
void difference_roots(const std::array<double, 3>& c, const std::array<double, 3>& n, double lo,
                      double hi, std::vector<double>& out)
{
    double qa = 0.0, qb = 0.0, qc = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double na = n[(k + 1) % 3], nb = n[(k + 2) % 3];
        qa += c[k];
        qb += c[k] * (na + nb);
        qc += c[k] * na * nb;
    }
    const double mag = std::max({std::abs(qa), std::abs(qb), std::abs(qc)});
    if (mag == 0.0) return;
    const auto accept = [&](double z) {
        if (z > lo && z < hi && std::isfinite(z)) out.push_back(z);
    };
    if (std::abs(qa) <= 1e-14 * mag) {
        if (std::abs(qb) > 1e-14 * mag) accept(-qc / qb);
        return;
    }
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (qb + (qb >= 0.0 ? sq : -sq));
    accept(q / qa);
    if (q != 0.0) accept(qc / q);
}

}  // namespace

std::vector<UtilityCurve> utility_curves(const RoutingMatrix& a, const Channel& ch,
                                         const WeightVector& mu)
{
    check_weights(mu);
    std::vector<UtilityCurve> curves;
    for (auto k : complete_sets(a)) {
        UtilityCurve u;
        u.set = k;
        u.noise = ch.noise;
        u.scale = utility_scale(ch.base);
        const auto m = k.members();
        if (m.size() == 1) {
            u.weight[m[0] - 1] = mu[m[0] - 1];
        } else if (m.size() == 2) {
            const int i = m[0], j = m[1];
            u.weight[i - 1] = mu[i - 1];
            // A mutually-informed pair carries both messages at full rate;
            // otherwise the weaker member only gains its excess weight.
            u.weight[j - 1] = is_acyclic(a, k) ? std::max(mu[j - 1] - mu[i - 1], 0.0) : mu[j - 1];
        } else {
            continue;  // {1,2,3} only arises in the single-polytope configuration
        }
        if (u.weight[0] == 0.0 && u.weight[1] == 0.0 && u.weight[2] == 0.0) continue;
        curves.push_back(u);
    }
    return curves;
}

UtilityOptimum max_weighted_sum_utility(const RoutingMatrix& a, const Channel& ch,
                                        const WeightVector& mu)
{
    ch.validate();
    check_weights(mu);
    UtilityOptimum opt;

    if (side_info_degree(a) == 3) {
        const auto region = direct_region(a, ch, PowerSplit({ch.power, 0.0, 0.0}));
        opt.value = support(region, mu).value;
        opt.split = PowerSplit({ch.power, 0.0, 0.0});
        opt.schedule.push_back({0.0, ch.power, kAllReceivers, 1});
        return opt;
    }

    const auto curves = utility_curves(a, ch, mu);

    std::vector<double> cuts{0.0, ch.power};
    for (std::size_t x = 0; x < curves.size(); ++x)
        for (std::size_t y = x + 1; y < curves.size(); ++y) {
            std::array<double, 3> c{};
            for (int k = 0; k < 3; ++k) c[k] = curves[x].weight[k] - curves[y].weight[k];
            difference_roots(c, ch.noise, 0.0, ch.power, cuts);
        }
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> points;
    for (double z : cuts)
        if (points.empty() || z - points.back() > 1e-10) points.push_back(z);
    if (points.back() < ch.power) points.back() = ch.power;

    for (std::size_t s = 0; s + 1 < points.size(); ++s) {
        const double lo = points[s], hi = points[s + 1];
        const double mid = 0.5 * (lo + hi);
        const UtilityCurve* best = nullptr;
        double best_val = 0.0;
        for (const auto& u : curves) {
            const double v = u.value(mid);
            const double tie = 1e-12 * std::max(std::abs(v), std::abs(best_val));
            const auto score = [](ReceiverSet k) { return k.min() + k.max(); };
            if (!best || v > best_val + tie ||
                (v >= best_val - tie &&
                 (score(u.set) < score(best->set) ||
                  (score(u.set) == score(best->set) && u.set.mask() < best->set.mask())))) {
                if (!best || v > best_val + tie) best_val = v;
                best = &u;
            }
        }
        opt.value += best->integral(lo, hi);
        if (!opt.schedule.empty() && opt.schedule.back().set == best->set)
            opt.schedule.back().end = hi;
        else
            opt.schedule.push_back({lo, hi, best->set, 0});
    }

    // Place segments on layers in z order: layer l lives above layers < l.
    const auto fam = layer_assignment(a);
    std::vector<double> parts(3, 0.0);
    int pointer = 1;
    for (auto& seg : opt.schedule) {
        int chosen = 0;
        for (int l = pointer; l <= 3 && !chosen; ++l)
            if (seg.set.is_subset_of(fam.layer(l))) chosen = l;
        if (!chosen) {
            opt.realizable = false;
            chosen = pointer;
        }
        seg.layer = chosen;
        pointer = chosen;
        parts[chosen - 1] += seg.end - seg.begin;
    }
    // Absorb rounding so the split sums to P exactly.
    parts[pointer - 1] += ch.power - (parts[0] + parts[1] + parts[2]);
    parts[pointer - 1] = std::max(parts[pointer - 1], 0.0);
    opt.split = PowerSplit(parts);
    return opt;
}

std::vector<RateTuple> frontier(const RoutingMatrix& a, const Channel& ch,
                                const std::vector<WeightVector>& directions)
{
    const auto shape = inner_shape(a);
    std::vector<RateTuple> out;
    out.reserve(directions.size());
    for (const auto& mu : directions) {
        const auto opt = max_weighted_sum_utility(a, ch, mu);
        out.push_back(support(direct_region(shape, ch, opt.split), mu).argmax);
    }
    return out;
}

namespace {

PowerSplit grid_split(double power, int i, int j, int grid)
{
    const double p1 = power * i / grid;
    const double p2 = power * j / grid;
    return PowerSplit({p1, p2, std::max(power - p1 - p2, 0.0)});
}

}  // namespace

double grid_weighted_sum(const RoutingMatrix& a, const Channel& ch, const WeightVector& mu, int grid)
{
    ch.validate();
    check_weights(mu);
    if (grid < 1) throw std::invalid_argument("grid resolution must be positive");
    const auto shape = inner_shape(a);
    double best = 0.0;
    for (int i = 0; i <= grid; ++i)
        for (int j = 0; i + j <= grid; ++j)
            best = std::max(best, support(direct_region(shape, ch, grid_split(ch.power, i, j, grid)), mu).value);
    return best;
}

// ---------------------------------------------------------------------------
// Ray extent over the split grid

namespace {

struct RaySearch {
    const InnerShape& shape;
    const Channel& ch;
    int grid;
    // Constraint rows with positive direction weight. Consecutive layers with
    // the same best receiver telescope into one term, which keeps the cell
    // bound exact on plateaus such as b_V = cap(P/N_r).
    struct Term {
        int receiver;  // 0-based
        int first;     // starts at cut `first`
        int last;      // ends at cut `last` + 1
    };
    std::vector<std::vector<Term>> rows;
    std::vector<double> inv_weight;

    double best = -1.0;
    int best_i = 0, best_j = 0;

    void add_row(unsigned mask, double weight)
    {
        const auto& br = shape.best_receiver[mask];
        std::vector<Term> terms;
        for (int l = 0; l < 3; ++l) {
            if (!br[l]) continue;
            if (!terms.empty() && terms.back().receiver == br[l] - 1 && terms.back().last == l - 1)
                terms.back().last = l;
            else
                terms.push_back({br[l] - 1, l, l});
        }
        rows.push_back(std::move(terms));
        inv_weight.push_back(1.0 / weight);
    }

    // Cuts z_0 = 0 <= z_1 <= z_2 <= z_3 = P bound the layers; lo/hi bracket
    // them and p_hi bounds each layer's own power.
    double extent(const std::array<double, 4>& lo, const std::array<double, 4>& hi,
                  const std::array<double, 3>& p_hi) const
    {
        double t = kUnbounded;
        for (std::size_t s = 0; s < rows.size(); ++s) {
            double b = 0.0;
            for (const auto& term : rows[s]) {
                const double z = lo[term.first];
                double own = 0.0;
                for (int l = term.first; l <= term.last; ++l) own += p_hi[l];
                const double width = std::max(std::min(hi[term.last + 1] - z, own), 0.0);
                b += cap(width / (ch.noise[term.receiver] + z), ch.base);
            }
            t = std::min(t, b * inv_weight[s]);
        }
        return t;
    }

    double at(int i, int j) const
    {
        const double p1 = ch.power * i / grid;
        const double p2 = ch.power * j / grid;
        const std::array<double, 4> z{0.0, p1, std::min(p1 + p2, ch.power), ch.power};
        return extent(z, z, {p1, p2, ch.power - z[2]});
    }

    void visit(int i, int j)
    {
        const double t = at(i, j);
        if (t > best) {
            best = t;
            best_i = i;
            best_j = j;
        }
    }

    double upper(int i0, int i1, int j0, int j1) const
    {
        const double p1lo = ch.power * i0 / grid, p1hi = ch.power * i1 / grid;
        const double p2lo = ch.power * j0 / grid, p2hi = ch.power * j1 / grid;
        const std::array<double, 4> lo{0.0, p1lo, std::min(p1lo + p2lo, ch.power), ch.power};
        const std::array<double, 4> hi{0.0, p1hi, std::min(p1hi + p2hi, ch.power), ch.power};
        return extent(lo, hi, {p1hi, p2hi, ch.power - lo[2]});
    }

    void search(int i0, int i1, int j0, int j1)
    {
        if (i0 + j0 > grid) return;
        j1 = std::min(j1, grid - i0);
        // Flat objectives (layers sharing a K set) would otherwise force a full scan.
        if (upper(i0, i1, j0, j1) <= best + 1e-12 * std::max(1.0, best)) return;
        if ((i1 - i0 + 1) * (j1 - j0 + 1) <= 16) {
            for (int i = i0; i <= i1; ++i)
                for (int j = j0; j <= j1 && i + j <= grid; ++j) visit(i, j);
            return;
        }
        if (i1 - i0 >= j1 - j0) {
            const int mid = (i0 + i1) / 2;
            search(i0, mid, j0, j1);
            search(mid + 1, i1, j0, j1);
        } else {
            const int mid = (j0 + j1) / 2;
            search(i0, i1, j0, mid);
            search(i0, i1, mid + 1, j1);
        }
    }
};

}  // namespace

RayExtent inner_ray_extent(const RoutingMatrix& a, const Channel& ch, const RateTuple& direction,
                           int grid)
{
    ch.validate();
    if (grid < 1) throw std::invalid_argument("grid resolution must be positive");
    for (double d : direction)
        if (!(d >= 0.0)) throw std::invalid_argument("ray direction must be nonnegative");
    const auto shape = inner_shape(a);

    RaySearch rs{shape, ch, grid, {}, {}};
    for (unsigned m : kNonemptySubsetMasks) {
        if (!shape.constrained[m]) continue;
        const double w = subset_sum(direction, ReceiverSet::from_mask(m));
        if (w <= 0.0) continue;
        rs.add_row(m, w);
    }
    if (rs.rows.empty()) throw std::invalid_argument("ray direction must be nonzero");

    const auto& fam = shape.layers;
    if (fam.layer(1) == fam.layer(2) || fam.layer(2) == fam.layer(3)) {
        // Adjacent layers on the same K telescope: cap(a/(N+z)) + cap(b/(N+z+a)) =
        // cap((a+b)/(N+z)), so only one split coordinate matters.
        for (int i = 0; i <= grid; ++i) rs.visit(i, 0);
    } else {
        // Seed the incumbent from a coarse sub-grid of the same grid.
        const int step = std::max(1, grid / 32);
        for (int i = 0; i <= grid; i += step)
            for (int j = 0; i + j <= grid; j += step) rs.visit(i, j);
        rs.search(0, grid, 0, grid);
    }

    return {rs.best, grid_split(ch.power, rs.best_i, rs.best_j, grid)};
}

}  // namespace bcsi
