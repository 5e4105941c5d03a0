#include "bcsi/region_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcsi {

void SubsetBoundRegion::set_bound(ReceiverSet v, double b)
{
    if (v.empty()) throw std::invalid_argument("bound on the empty set");
    if (!(b >= 0.0)) throw std::invalid_argument("subset bounds must be nonnegative");
    bounds_[v.mask()] = b;
}

void SubsetBoundRegion::tighten(ReceiverSet v, double b)
{
    set_bound(v, std::min(bound(v), std::max(b, 0.0)));
}

bool SubsetBoundRegion::bounded() const
{
    unsigned covered = 0;
    for (unsigned m = 1; m < 8; ++m)
        if (bounds_[m] < kUnbounded) covered |= m;
    return covered == 7u;
}

// ---------------------------------------------------------------------------
// Linear systems and Fourier-Motzkin elimination

LinearInequalitySystem::LinearInequalitySystem(std::vector<std::string> names)
    : names_(std::move(names)), nonneg_(names_.size(), false)
{
}

std::size_t LinearInequalitySystem::index_of(const std::string& name) const
{
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw std::invalid_argument("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - names_.begin());
}

void LinearInequalitySystem::add(std::vector<double> coef, double rhs)
{
    if (coef.size() != names_.size())
        throw std::invalid_argument("row length does not match the variable count");
    for (double c : coef)
        if (!std::isfinite(c)) throw std::invalid_argument("coefficients must be finite");
    rows_.push_back({std::move(coef), rhs});
}

void LinearInequalitySystem::add_nonnegativity(std::size_t var)
{
    std::vector<double> coef(names_.size(), 0.0);
    coef[var] = -1.0;
    nonneg_[var] = true;
    add(std::move(coef), 0.0);
}

bool LinearInequalitySystem::infeasible() const
{
    for (const auto& row : rows_) {
        const bool zero = std::all_of(row.coef.begin(), row.coef.end(),
                                      [](double c) { return std::abs(c) <= kGeometryTol; });
        if (zero && row.rhs < -kGeometryTol) return true;
    }
    return false;
}

bool LinearInequalitySystem::satisfied_by(std::span<const double> x, double tol) const
{
    for (const auto& row : rows_) {
        double lhs = 0.0;
        for (std::size_t v = 0; v < x.size(); ++v) lhs += row.coef[v] * x[v];
        if (lhs > row.rhs + tol) return false;
    }
    return true;
}

void LinearInequalitySystem::simplify()
{
    constexpr double eps = 1e-12;
    std::vector<LinearInequality> kept;
    double infeasible_rhs = 0.0;
    for (auto row : rows_) {
        double scale = 0.0;
        for (double c : row.coef) scale = std::max(scale, std::abs(c));
        if (scale <= eps) {
            infeasible_rhs = std::min(infeasible_rhs, row.rhs);
            continue;
        }
        for (double& c : row.coef) {
            c /= scale;
            if (std::abs(c) <= eps) c = 0.0;
        }
        row.rhs /= scale;
        kept.push_back(std::move(row));
    }

    const auto dominates = [&](const LinearInequality& strong, const LinearInequality& weak) {
        if (strong.rhs > weak.rhs + eps) return false;
        for (std::size_t v = 0; v < names_.size(); ++v) {
            const double d = strong.coef[v] - weak.coef[v];
            if (nonneg_[v] ? d < -eps : std::abs(d) > eps) return false;
        }
        return true;
    };

    std::vector<bool> removed(kept.size(), false);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        for (std::size_t j = 0; j < kept.size() && !removed[i]; ++j) {
            if (i == j || removed[j]) continue;
            if (dominates(kept[j], kept[i])) removed[i] = true;
        }
    }

    rows_.clear();
    for (std::size_t i = 0; i < kept.size(); ++i)
        if (!removed[i]) rows_.push_back(std::move(kept[i]));
    if (infeasible_rhs < -kGeometryTol) rows_.push_back({std::vector<double>(names_.size(), 0.0), infeasible_rhs});
}

LinearInequalitySystem fm_eliminate_one(const LinearInequalitySystem& sys, std::size_t var)
{
    if (var >= sys.num_vars()) throw std::invalid_argument("variable index out of range");

    std::vector<std::string> names;
    std::vector<bool> nonneg;
    for (std::size_t v = 0; v < sys.num_vars(); ++v) {
        if (v == var) continue;
        names.push_back(sys.names_[v]);
        nonneg.push_back(sys.nonneg_[v]);
    }
    LinearInequalitySystem out(std::move(names));
    out.nonneg_ = std::move(nonneg);

    const auto drop = [&](const std::vector<double>& coef) {
        std::vector<double> c;
        c.reserve(coef.size() - 1);
        for (std::size_t v = 0; v < coef.size(); ++v)
            if (v != var) c.push_back(coef[v]);
        return c;
    };

    std::vector<const LinearInequality*> pos, neg;
    for (const auto& row : sys.rows_) {
        const double c = row.coef[var];
        if (c > 0.0) pos.push_back(&row);
        else if (c < 0.0) neg.push_back(&row);
        else out.rows_.push_back({drop(row.coef), row.rhs});
    }
    for (const auto* p : pos) {
        for (const auto* n : neg) {
            const double wp = 1.0 / p->coef[var];
            const double wn = -1.0 / n->coef[var];
            std::vector<double> coef(sys.num_vars());
            for (std::size_t v = 0; v < coef.size(); ++v) coef[v] = wp * p->coef[v] + wn * n->coef[v];
            coef[var] = 0.0;
            out.rows_.push_back({drop(coef), wp * p->rhs + wn * n->rhs});
        }
    }
    out.simplify();
    return out;
}

LinearInequalitySystem fm_eliminate(const LinearInequalitySystem& sys,
                                    const std::vector<std::string>& vars)
{
    LinearInequalitySystem cur = sys;
    cur.simplify();
    for (const auto& name : vars) cur = fm_eliminate_one(cur, cur.index_of(name));
    return cur;
}

// ---------------------------------------------------------------------------
// Vertex enumeration

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

bool solve3(Mat3 m, std::array<double, 3> b, RateTuple& x)
{
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-12) return false;
        std::swap(m[piv], m[col]);
        std::swap(b[piv], b[col]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int k = 0; k < 3; ++k) x[k] = b[k] / m[k][k];
    return true;
}

bool lex_greater(const RateTuple& a, const RateTuple& b)
{
    for (int k = 0; k < 3; ++k) {
        if (a[k] > b[k] + kGeometryTol) return true;
        if (a[k] < b[k] - kGeometryTol) return false;
    }
    return false;
}

void add_unique(std::vector<RateTuple>& pts, const RateTuple& p)
{
    for (const auto& q : pts)
        if (std::abs(p[0] - q[0]) <= kGeometryTol && std::abs(p[1] - q[1]) <= kGeometryTol &&
            std::abs(p[2] - q[2]) <= kGeometryTol)
            return;
    pts.push_back(p);
}

// The ten planes of a subset-bound region: sum_{k in V} R_k = b_V for the
// seven nonempty V (planes 0..6, mask = index+1) and R_k = 0 (planes 7..9).
std::array<double, 3> plane_normal(int p)
{
    if (p < 7) {
        const unsigned m = static_cast<unsigned>(p + 1);
        return {double(m & 1u), double((m >> 1) & 1u), double((m >> 2) & 1u)};
    }
    std::array<double, 3> n{0.0, 0.0, 0.0};
    n[p - 7] = 1.0;
    return n;
}

struct TripleSolve {
    std::array<int, 3> planes;
    Mat3 inverse;
};

// Inverses of every nonsingular triple of the ten planes, built once.
const std::vector<TripleSolve>& triple_table()
{
    static const std::vector<TripleSolve> table = [] {
        std::vector<TripleSolve> t;
        for (int p = 0; p < 10; ++p)
            for (int q = p + 1; q < 10; ++q)
                for (int r = q + 1; r < 10; ++r) {
                    Mat3 m{plane_normal(p), plane_normal(q), plane_normal(r)};
                    TripleSolve ts{{p, q, r}, {}};
                    bool ok = true;
                    for (int col = 0; col < 3 && ok; ++col) {
                        std::array<double, 3> e{0.0, 0.0, 0.0};
                        e[col] = 1.0;
                        RateTuple x;
                        ok = solve3(m, e, x);
                        for (int k = 0; k < 3; ++k) ts.inverse[k][col] = x[k];
                    }
                    if (ok) t.push_back(ts);
                }
        return t;
    }();
    return table;
}

bool feasible(const SubsetBoundRegion& region, const RateTuple& x)
{
    for (int k = 0; k < 3; ++k)
        if (x[k] < -kGeometryTol) return false;
    const auto& b = region.raw();
    for (unsigned m = 1; m < 8; ++m) {
        if (b[m] == kUnbounded) continue;
        if (subset_sum(x, ReceiverSet::from_mask(m)) > b[m] + kGeometryTol) return false;
    }
    return true;
}

template <class Visit>
void for_each_vertex(const SubsetBoundRegion& region, Visit&& visit)
{
    if (!region.bounded()) throw std::invalid_argument("region is unbounded");
    const auto& b = region.raw();
    const auto rhs = [&](int p) { return p < 7 ? b[p + 1] : 0.0; };
    for (const auto& ts : triple_table()) {
        const auto [p, q, r] = ts.planes;
        if (rhs(p) == kUnbounded || rhs(q) == kUnbounded || rhs(r) == kUnbounded) continue;
        const std::array<double, 3> bb{rhs(p), rhs(q), rhs(r)};
        RateTuple x;
        for (int k = 0; k < 3; ++k)
            x[k] = ts.inverse[k][0] * bb[0] + ts.inverse[k][1] * bb[1] + ts.inverse[k][2] * bb[2];
        if (!feasible(region, x)) continue;
        for (double& c : x)
            if (std::abs(c) <= 1e-15) c = 0.0;
        visit(x);
    }
}

}  // namespace

Polytope3 vertices(const SubsetBoundRegion& region)
{
    Polytope3 out;
    for_each_vertex(region, [&](const RateTuple& x) { add_unique(out.vertices, x); });
    const auto& b = region.raw();
    for (unsigned m = 1; m < 8; ++m) {
        if (b[m] == kUnbounded) continue;
        out.halfspaces.push_back({plane_normal(static_cast<int>(m) - 1), b[m]});
    }
    for (int k = 0; k < 3; ++k) {
        Halfspace h;
        h.normal[k] = -1.0;
        out.halfspaces.push_back(h);
    }
    return out;
}

Polytope3 vertices(const std::vector<Halfspace>& halfspaces)
{
    Polytope3 out;
    out.halfspaces = halfspaces;
    const std::size_t n = halfspaces.size();
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
            for (std::size_t r = q + 1; r < n; ++r) {
                Mat3 m{halfspaces[p].normal, halfspaces[q].normal, halfspaces[r].normal};
                RateTuple x;
                if (!solve3(m, {halfspaces[p].offset, halfspaces[q].offset, halfspaces[r].offset}, x))
                    continue;
                bool ok = true;
                for (const auto& h : halfspaces) {
                    const double lhs = h.normal[0] * x[0] + h.normal[1] * x[1] + h.normal[2] * x[2];
                    if (lhs > h.offset + kGeometryTol) {
                        ok = false;
                        break;
                    }
                }
                if (ok) add_unique(out.vertices, x);
            }
    return out;
}

std::vector<Halfspace> hull_halfspaces(const std::vector<RateTuple>& points)
{
    std::vector<Halfspace> out;
    const std::size_t n = points.size();
    const auto sub = [](const RateTuple& a, const RateTuple& b) {
        return RateTuple{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const auto u = sub(points[j], points[i]);
                const auto v = sub(points[k], points[i]);
                std::array<double, 3> nrm{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                          u[0] * v[1] - u[1] * v[0]};
                const double len = std::sqrt(nrm[0] * nrm[0] + nrm[1] * nrm[1] + nrm[2] * nrm[2]);
                if (len < 1e-12) continue;
                for (double& c : nrm) c /= len;
                const double off = nrm[0] * points[i][0] + nrm[1] * points[i][1] + nrm[2] * points[i][2];
                bool below = true, above = true;
                for (const auto& p : points) {
                    const double s = nrm[0] * p[0] + nrm[1] * p[1] + nrm[2] * p[2] - off;
                    if (s > kGeometryTol) below = false;
                    if (s < -kGeometryTol) above = false;
                }
                if (below == above) continue;  // interior plane or degenerate point set
                Halfspace h{nrm, off};
                if (!below) {
                    for (double& c : h.normal) c = -c;
                    h.offset = -off;
                }
                const bool dup = std::any_of(out.begin(), out.end(), [&](const Halfspace& g) {
                    return std::abs(g.normal[0] - h.normal[0]) <= 1e-9 &&
                           std::abs(g.normal[1] - h.normal[1]) <= 1e-9 &&
                           std::abs(g.normal[2] - h.normal[2]) <= 1e-9 &&
                           std::abs(g.offset - h.offset) <= 1e-9;
                });
                if (!dup) out.push_back(h);
            }
    return out;
}

// ---------------------------------------------------------------------------
// Support functions

namespace {

void offer(SupportResult& best, bool& any, const WeightVector& mu, const RateTuple& x)
{
    const double val = dot(mu, x);
    const double tie = 1e-12 * std::max(1.0, std::abs(val));
    if (!any || val > best.value + tie) {
        best = {val, x};
        any = true;
    } else if (val >= best.value - tie && lex_greater(x, best.argmax)) {
        best.value = std::max(best.value, val);
        best.argmax = x;
    }
}

}  // namespace

SupportResult support(const SubsetBoundRegion& region, const WeightVector& mu)
{
    SupportResult best;
    bool any = false;
    for_each_vertex(region, [&](const RateTuple& x) { offer(best, any, mu, x); });
    return best;
}

SupportResult support(const Polytope3& polytope, const WeightVector& mu)
{
    if (polytope.vertices.empty()) throw std::invalid_argument("polytope has no vertices");
    SupportResult best;
    bool any = false;
    for (const auto& x : polytope.vertices) offer(best, any, mu, x);
    return best;
}

bool contains(const SubsetBoundRegion& region, const RateTuple& r, double tol)
{
    for (int k = 0; k < 3; ++k)
        if (r[k] < -tol) return false;
    const auto& b = region.raw();
    for (unsigned m = 1; m < 8; ++m) {
        if (b[m] == kUnbounded) continue;
        if (subset_sum(r, ReceiverSet::from_mask(m)) > b[m] + tol) return false;
    }
    return true;
}

double hull_support(const std::vector<RateTuple>& points, const WeightVector& mu)
{
    if (points.empty()) throw std::invalid_argument("hull_support of an empty point set");
    double best = dot(mu, points.front());
    for (const auto& p : points) best = std::max(best, dot(mu, p));
    return best;
}

}  // namespace bcsi
