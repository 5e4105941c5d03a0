#pragma once

// Small-dimension polyhedral utilities for rate regions in R^3.

#include <array>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "bcsi/core.hpp"

namespace bcsi {

inline constexpr double kGeometryTol = 1e-9;
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// { R >= 0 : sum_{k in V} R_k <= b_V } for every nonempty V. An infinite
/// bound means V carries no constraint.
class SubsetBoundRegion {
public:
    SubsetBoundRegion() { bounds_.fill(kUnbounded); }

    double bound(ReceiverSet v) const { return bounds_[v.mask()]; }
    bool constrained(ReceiverSet v) const { return bounds_[v.mask()] < kUnbounded; }

    /// Sets the bound (b_V >= 0 is enforced).
    void set_bound(ReceiverSet v, double b);
    /// Keeps the smaller of the current and the given bound.
    void tighten(ReceiverSet v, double b);

    /// True when every receiver appears in some finite constraint.
    bool bounded() const;

    /// The bounds as a flat array indexed by mask (index 0 unused).
    const std::array<double, 8>& raw() const { return bounds_; }

private:
    std::array<double, 8> bounds_;
};

struct Halfspace {
    std::array<double, 3> normal{};
    double offset = 0.0;  // normal . x <= offset
};

struct Polytope3 {
    std::vector<RateTuple> vertices;
    std::vector<Halfspace> halfspaces;
};

/// Rows of a linear system a . x <= b over named variables.
struct LinearInequality {
    std::vector<double> coef;
    double rhs = 0.0;
};

class LinearInequalitySystem {
public:
    LinearInequalitySystem() = default;
    explicit LinearInequalitySystem(std::vector<std::string> names);

    std::size_t num_vars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t index_of(const std::string& name) const;

    void add(std::vector<double> coef, double rhs);
    /// Adds -x <= 0 and records that x is sign-restricted.
    void add_nonnegativity(std::size_t var);
    bool nonnegative(std::size_t var) const { return nonneg_[var]; }

    const std::vector<LinearInequality>& rows() const { return rows_; }

    /// Contains a row 0 <= -c with c > 0.
    bool infeasible() const;

    /// a . x <= b for every row, within tol.
    bool satisfied_by(std::span<const double> x, double tol = kGeometryTol) const;

    /// Drops all-zero rows with rhs >= 0, normalises each row by its largest
    /// coefficient magnitude, merges duplicate rows and removes rows
    /// dominated by a single other row (using the sign restrictions).
    void simplify();

private:
    friend LinearInequalitySystem fm_eliminate_one(const LinearInequalitySystem&, std::size_t);

    std::vector<std::string> names_;
    std::vector<bool> nonneg_;
    std::vector<LinearInequality> rows_;
};

/// Projects out one variable (Fourier-Motzkin), then simplifies.
LinearInequalitySystem fm_eliminate_one(const LinearInequalitySystem& sys, std::size_t var);

/// Projects out the named variables in order.
LinearInequalitySystem fm_eliminate(const LinearInequalitySystem& sys,
                                    const std::vector<std::string>& vars);

/// Vertices of a subset-bound region (R >= 0 implied). Throws
/// std::invalid_argument for an unbounded region.
Polytope3 vertices(const SubsetBoundRegion& region);

/// Vertices of a bounded polytope given by halfspaces (R >= 0 is NOT implied).
Polytope3 vertices(const std::vector<Halfspace>& halfspaces);

/// Facet halfspaces of the convex hull of a full-dimensional point set.
std::vector<Halfspace> hull_halfspaces(const std::vector<RateTuple>& points);

struct SupportResult {
    double value = 0.0;
    RateTuple argmax{};
};

/// max over the region of mu . R; ties go to the lexicographically largest vertex.
SupportResult support(const SubsetBoundRegion& region, const WeightVector& mu);
SupportResult support(const Polytope3& polytope, const WeightVector& mu);

bool contains(const SubsetBoundRegion& region, const RateTuple& r, double tol = kGeometryTol);

/// max over the points of mu . p. Throws std::invalid_argument for an empty set.
double hull_support(const std::vector<RateTuple>& points, const WeightVector& mu);

}  // namespace bcsi
