/*
 * spectra.hpp — geodesic length spectra of the supported flat manifolds.
 *
 * Travel times (speed 1, so length == time):
 *   cylinder   AB: sqrt((kb)^2 + a^2), k >= 0; one loop of time b at each of
 *              A and B (longer returns are repeated traversals of that loop)
 *   2-torus    loops: sqrt((na)^2 + (mb)^2), n, m >= 0, (n,m) != 0
 *              AB:    sqrt((c+na)^2 + (d+mb)^2), n, m in Z
 *   3-torus    the three-index analogues
 *
 * The loop family of a symmetric manifold is listed once, tagged AA; the
 * B-side copy is materialized by the equivalent-graph builder.  Abstract
 * spectra list AA/AB/BB exactly as supplied.
 *
 * With rational geometry, squared lengths are exact rationals and all cutoff
 * comparisons are decided exactly.
 */

#pragma once

#include "packetgraph/manifold.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace packetgraph {

enum class Pair : std::uint8_t { AA = 0, AB = 1, BB = 2 };

std::string pair_name(Pair p);

// Lattice index of a geodesic class: (k), (n,m) or (n,m,l); abstract entries
// use their list position.
struct IndexTuple {
    std::uint8_t size = 0;
    std::array<std::int64_t, 3> v{0, 0, 0};

    static IndexTuple of(std::int64_t k) { return {1, {k, 0, 0}}; }
    static IndexTuple of(std::int64_t n, std::int64_t m) { return {2, {n, m, 0}}; }
    static IndexTuple of(std::int64_t n, std::int64_t m, std::int64_t l) { return {3, {n, m, l}}; }

    auto operator<=>(const IndexTuple&) const = default;
    std::string str() const; // "k" or "n:m" or "n:m:l"
};

struct GeodesicClass {
    Pair pair;
    IndexTuple index;
    TimeValue length;
};

struct LengthSpectrum {
    ManifoldSpec spec;
    double cutoff = 0.0;
    std::vector<GeodesicClass> classes; // ascending length, ties by (pair, index)
};

struct SpectraOptions {
    std::size_t class_cap = 10'000'000;
};

// Every geodesic class with length <= cutoff, canonically sorted.  Exceeding
// the class cap raises ResourceLimitError, never truncates.
LengthSpectrum enumerate_lengths(const ManifoldSpec& spec, double cutoff,
                                 const SpectraOptions& opts = {});

// rho(lambda): number of classes with length <= lambda, optionally one
// pair family only.  lambda > cutoff raises InsufficientSpectrumError.
std::int64_t counting_function(const LengthSpectrum& spectrum, double lambda,
                               std::optional<Pair> filter = std::nullopt);

// The counting-function parameters (c0, gamma) with rho ~ c0 lambda^(1+gamma):
// cylinder (1/b, 0); 2-torus (5pi/(4ab), 1); 3-torus (3pi/(2abc), 2).
std::pair<double, double> closed_form_params(const ManifoldSpec& spec);

struct FitResult {
    double c0 = 0.0;
    double gamma = 0.0;
    double max_residual = 0.0; // max |log rho - fit| over the grid
};

// Least-squares fit of log rho against log lambda over a geometric grid of
// >= 20 points in [lambda_min, lambda_max].  Requires rho(lambda_min) >= 10.
FitResult fit_counting_params(const LengthSpectrum& spectrum, double lambda_min,
                              double lambda_max, int grid_points = 24);

// Exhaustive search for integer relations sum q_i l_i ~ 0 with support size
// <= max_subset (<= 4) and |q_i| <= max_coef (<= 32).  Tolerance is
// 1e-9 * max length * max_coef * max_subset.  Vectors are canonicalized so
// the first non-zero entry is positive.  An empty result certifies nothing
// beyond this search depth.
std::vector<std::vector<int>> detect_rational_dependence(const std::vector<double>& lengths,
                                                         int max_coef, int max_subset);

} // namespace packetgraph
