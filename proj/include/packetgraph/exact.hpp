/*
 * exact.hpp — exact arithmetic for travel times of the form sqrt(rational).
 *
 * Every geodesic travel time on the supported flat manifolds is the square
 * root of a rational number (a sum of squares of rational coordinates), so a
 * birth time — a non-negative integer combination of travel times — is
 *
 *     t  =  r  +  sum_s  c_s * sqrt(s),     r, c_s rational, s squarefree >= 2.
 *
 * Square roots of distinct squarefree integers are linearly independent over
 * the rationals, so this canonical form decides equality of birth times
 * exactly: two sums are equal iff their canonical forms coincide.  That is
 * what lets 3+5 and 4+4 merge as one time while sqrt(2)+1 and sqrt(3) stay
 * provably distinct.
 *
 * When a squared length cannot be factored within the trial-division bound,
 * its radical stays opaque: equality of keys still implies equality of values,
 * but distinct keys are then separated (or not) by rational interval
 * refinement of the square roots up to a bit cap.  A pair still undecided at
 * the cap is reported as unresolved rather than merged.
 *
 * Doubles supplied as lengths are exact dyadic rationals; helpers here convert
 * them losslessly.  Whether a value carries exact semantics (and therefore an
 * exact dedup key) is a provenance question decided at parse time, not a
 * representational one.
 */

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace packetgraph {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ── Basic integer/rational helpers ──────────────────────────────────────────

// floor(sqrt(n)), n >= 0
BigInt isqrt(const BigInt& n);

// floor(sqrt(p/q)) for p, q > 0.  Uses floor(sqrt(pq))/q, which is exact.
BigInt floor_sqrt(const Rational& r);

// floor(sqrt(r) / d) and ceil(sqrt(r) / d), r >= 0, d > 0, both exact.
BigInt floor_sqrt_div(const Rational& r, const Rational& d);
BigInt ceil_sqrt_div(const Rational& r, const Rational& d);

// If r is the square of a rational, return that (non-negative) root.
std::optional<Rational> exact_sqrt(const Rational& r);

// Exact dyadic rational value of a double (finite doubles only).
Rational rational_from_double(double v);

double to_double(const Rational& r);
double log_of(const BigInt& n); // natural log of a positive big integer

// Decimal-exact parse: "3", "-2.5", "1e3", "7/20" all become exact rationals.
Rational parse_rational(const std::string& text);

// u = m^2 * s with s squarefree.  Trial division up to `bound`; returns
// nullopt when a large cofactor cannot be classified.
struct SquarefreeParts {
    BigInt m;
    BigInt s;
};
std::optional<SquarefreeParts> squarefree_decompose(const BigInt& u,
                                                    std::uint64_t bound = 1'000'000);

// ── TimeValue ────────────────────────────────────────────────────────────────
// A positive travel time.  `sq` is the exact squared value when the inputs
// that produced it were exact; absent for float-provenance inputs, whose
// equality is a tolerance question.
struct TimeValue {
    double value = 0.0;
    std::optional<Rational> sq;

    static TimeValue from_double(double v);       // float provenance, no exact square
    static TimeValue from_sq(const Rational& sq); // value = sqrt(sq), exact
    static TimeValue from_rational(const Rational& v);

    bool exact() const { return sq.has_value(); }
};

// Exact comparison of two time values when both carry squares, else by double.
int compare_times(const TimeValue& a, const TimeValue& b);

// Parse a length literal: "p/q", decimal, or "sqrt(p/q)" / "sqrt(decimal)".
TimeValue parse_time_literal(const std::string& text);

// ── RadicalTerm: canonical form of one travel time ──────────────────────────
// value = coeff * sqrt(radical) with radical squarefree (radical == 1 means
// the value is the rational `coeff`).  If the square could not be decomposed
// the term is kept opaque as sqrt(opaque_sq).
struct RadicalTerm {
    Rational coeff;                    // > 0
    BigInt radical = 1;                // squarefree, 1 for rational values
    std::optional<Rational> opaque_sq; // set when decomposition failed

    static RadicalTerm from_sq(const Rational& sq);
    static RadicalTerm from_rational(const Rational& v);

    bool opaque() const { return opaque_sq.has_value(); }
    bool operator==(const RadicalTerm&) const = default;
};

// ── SumKey: canonical form of a non-negative combination of travel times ────
struct RatInterval {
    Rational lo, hi;
};

class SumKey {
public:
    SumKey() = default;

    void add(const RadicalTerm& term, const BigInt& count = 1);
    void add_rational(const Rational& v);

    bool is_zero() const { return terms_.empty() && opaque_.empty(); }
    bool has_opaque() const { return !opaque_.empty(); }

    bool operator==(const SumKey& o) const { return terms_ == o.terms_ && opaque_ == o.opaque_; }
    bool operator<(const SumKey& o) const; // arbitrary total order for map keys

    // Rigorous enclosure of the value using `bits` fractional bits per root.
    RatInterval enclosure(unsigned bits) const;

    // Deterministic double approximation (from a 96-bit enclosure midpoint).
    double approx() const;

    enum class Cmp { Less, Equal, Greater, Unresolved };
    // Exact three-way comparison; refinement up to bit_cap for distinct keys.
    static Cmp compare(const SumKey& a, const SumKey& b, unsigned bit_cap = 512);
    static Cmp compare_with_rational(const SumKey& a, const Rational& r, unsigned bit_cap = 512);

    // |a - b| as a double, from a refined enclosure of the difference.
    static double gap(const SumKey& a, const SumKey& b);

    std::string describe() const; // human-readable, for audit records

private:
    // radical -> coefficient; radical 1 carries the rational part.
    std::map<BigInt, Rational> terms_;
    // opaque squared value -> multiplicity of sqrt(that value)
    std::map<Rational, BigInt> opaque_;
};

} // namespace packetgraph
