#pragma once

#include "packetgraph/exact.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace packetgraph {

// Geometry parameter: a double, exact as a rational when it was supplied as
// one ("p/q" literals, or API construction from a Rational).
struct Param {
    double value = 0.0;
    std::optional<Rational> exact;

    static Param from_double(double v) { return {v, std::nullopt}; }
    static Param from_rational(const Rational& r) { return {to_double(r), r}; }
};

// Flat circular cylinder; A and B on one ruling at distance a, circle length b.
struct Cylinder {
    Param a, b;
};

// Flat 2-torus with periods a, b; A = (0,0), B = (c,d) in the fundamental domain.
struct Torus2 {
    Param a, b, c, d;
};

// Flat 3-torus with periods a, b, c; A = (0,0,0), B = (d,e,f).
struct Torus3 {
    Param a, b, c, d, e, f;
};

// Hand-supplied travel-time lists (sorted ascending), or just the counting
// function parameters (c0, gamma) when only asymptotics are wanted.
struct Abstract {
    std::vector<TimeValue> aa, ab, bb;
    std::optional<std::pair<double, double>> params; // (c0, gamma)
};

struct ManifoldSpec {
    std::variant<Cylinder, Torus2, Torus3, Abstract> shape;
    Param segment_time = Param::from_double(1.0); // travel time of the glued segment

    // Throws ConfigError on non-positive geometry, offsets outside the
    // fundamental domain, B coinciding with A, or unsorted abstract lists.
    void validate() const;

    std::string describe() const;
};

ManifoldSpec make_cylinder(Param a, Param b, Param L = Param::from_double(1.0));
ManifoldSpec make_torus2(Param a, Param b, Param c, Param d, Param L = Param::from_double(1.0));
ManifoldSpec make_torus3(Param a, Param b, Param c, Param d, Param e, Param f,
                         Param L = Param::from_double(1.0));
ManifoldSpec make_abstract(std::vector<TimeValue> aa, std::vector<TimeValue> ab,
                           std::vector<TimeValue> bb, Param L = Param::from_double(1.0));
ManifoldSpec make_abstract_params(double c0, double gamma, Param L = Param::from_double(1.0));

} // namespace packetgraph
