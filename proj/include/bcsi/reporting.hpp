#pragma once

// Direction sampling, table builders and verification suites behind the CLI.

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "bcsi/config_algebra.hpp"
#include "bcsi/core.hpp"
#include "bcsi/gaussian_layers.hpp"
#include "bcsi/inner_bound.hpp"

namespace bcsi {

inline constexpr int kDefaultRayGrid = 1600;
inline constexpr int kDefaultDirections = 64;
inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// n unit directions on the positive octant (Fibonacci spiral), optionally
/// followed by the three axes.
std::vector<RateTuple> octant_directions(int n = kDefaultDirections, bool with_axes = true);

/// n unit directions drawn uniformly from the positive octant of the sphere.
/// Deterministic for a seed on every platform.
std::vector<RateTuple> random_directions(int n, std::uint64_t seed);

/// Classification document: id, bits, matrix, acyclic_sets, k_family, layers,
/// degraded_sequences, tightness. Key order is fixed.
nlohmann::ordered_json classify_json(const RoutingMatrix& a);

struct BoundsRow {
    WeightVector mu{};
    RateTuple inner{};    // maximiser of mu . R over the inner bound
    double inner_j = 0.0;
    double outer_t = 0.0; // outer extent along the unit ray through mu
    double gap = 0.0;     // outer_t minus the inner extent along the same ray
};

std::vector<BoundsRow> bounds_rows(const RoutingMatrix& a, const Channel& ch,
                                   const std::vector<WeightVector>& directions,
                                   int grid = kDefaultRayGrid);

struct InnerRow {
    WeightVector mu{};
    RateTuple rate{};
    double value = 0.0;
    std::vector<double> split;
    bool realizable = true;
};

std::vector<InnerRow> inner_rows(const RoutingMatrix& a, const Channel& ch,
                                 const std::vector<WeightVector>& directions);

struct RayRow {
    RateTuple direction{};
    double t = 0.0;
    RateTuple rate{};
};

std::vector<RayRow> outer_rows(const RoutingMatrix& a, const Channel& ch,
                               const std::vector<RateTuple>& directions);

struct ReportRow {
    int id = 0;
    std::string bits;
    std::string k_family;
    std::string tightness;
    double inner_sum = 0.0;  // max R1+R2+R3 over the inner bound
    double outer_sum = 0.0;  // sampled estimate of the same over the outer bound
    double max_gap = 0.0;    // max over directions of outer t* - inner t*
};

ReportRow report_row(const RoutingMatrix& a, const Channel& ch,
                     const std::vector<RateTuple>& directions, int grid = kDefaultRayGrid);

std::vector<ReportRow> report_all(const Channel& ch, const std::vector<RateTuple>& directions,
                                  int grid = kDefaultRayGrid);

/// Worst (outer t* - inner t*) over unit directions at the given split grid.
double max_ray_gap(const RoutingMatrix& a, const Channel& ch, const std::vector<RateTuple>& directions,
                   int grid);

void write_csv(std::ostream& out, const std::vector<BoundsRow>& rows);
void write_csv(std::ostream& out, const std::vector<InnerRow>& rows);
void write_csv(std::ostream& out, const std::vector<RayRow>& rows);
void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);

/// %.12g, locale independent.
std::string format_number(double x);

struct SuiteResult {
    std::string name;
    long checks = 0;
    long failures = 0;
    double worst = 0.0;  // largest observed deviation
    std::string detail;  // first failure, if any

    bool passed() const { return failures == 0; }
};

SuiteResult verify_fm_direct(const Channel& ch, std::uint64_t seed, int splits = 5, int weights = 100);
SuiteResult verify_utility_grid(const Channel& ch, std::uint64_t seed, int pairs = 20, int grid = 200);
SuiteResult verify_inner_outer(const Channel& ch, const std::vector<WeightVector>& directions);
SuiteResult verify_index(int max_size = 16);

std::vector<SuiteResult> verify_all(const Channel& ch, std::uint64_t seed);

/// Uniform doubles in [0, 1). std::mt19937_64 output is fixed by the
/// standard, the library distributions are not, so the conversion is done here.
class UnitRng {
public:
    explicit UnitRng(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// A random power split of ch.power into three parts.
PowerSplit random_split(const Channel& ch, UnitRng& rng);

}  // namespace bcsi
