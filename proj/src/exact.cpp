#include "packetgraph/exact.hpp"
#include "packetgraph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace packetgraph {

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw ConfigError("isqrt: negative argument");
    return boost::multiprecision::sqrt(n); // floor square root for cpp_int
}

BigInt floor_sqrt(const Rational& r) {
    if (r < 0) throw ConfigError("floor_sqrt: negative argument");
    const BigInt p = boost::multiprecision::numerator(r);
    const BigInt q = boost::multiprecision::denominator(r);
    // sqrt(p/q) = sqrt(pq)/q and no integer multiple of q lies strictly
    // between floor(sqrt(pq)) and sqrt(pq), so the nested floor is exact.
    return isqrt(p * q) / q;
}

BigInt floor_sqrt_div(const Rational& r, const Rational& d) {
    if (d <= 0) throw ConfigError("floor_sqrt_div: non-positive divisor");
    return floor_sqrt(r / (d * d));
}

BigInt ceil_sqrt_div(const Rational& r, const Rational& d) {
    const BigInt f = floor_sqrt_div(r, d);
    // sqrt(r)/d == f exactly iff r == f^2 d^2
    if (Rational(f * f) * d * d == r) return f;
    return f + 1;
}

std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    if (r == 0) return Rational(0);
    const BigInt p = boost::multiprecision::numerator(r);
    const BigInt q = boost::multiprecision::denominator(r);
    const BigInt sp = isqrt(p), sq = isqrt(q);
    if (sp * sp == p && sq * sq == q) return Rational(sp, sq);
    return std::nullopt;
}

Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw ConfigError("rational_from_double: non-finite value");
    if (v == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(v, &exp); // v = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral
    BigInt num = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(num);
    if (exp > 0) r *= Rational(BigInt(1) << exp);
    else if (exp < 0) r /= Rational(BigInt(1) << -exp);
    return r;
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

double log_of(const BigInt& n) {
    if (n <= 0) throw ConfigError("log_of: non-positive argument");
    const std::size_t bits = boost::multiprecision::msb(n);
    if (bits <= 900) return std::log(n.convert_to<double>());
    const BigInt top = n >> (bits - 64);
    return std::log(top.convert_to<double>()) + static_cast<double>(bits - 64) * std::log(2.0);
}

Rational parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) throw ConfigError("empty numeric literal");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        const Rational num = parse_rational(s.substr(0, slash));
        const Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) throw ConfigError("zero denominator in '" + text + "'");
        return num / den;
    }

    bool negative = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') negative = (s[i++] == '-');

    BigInt mantissa = 0;
    long scale = 0; // powers of ten to divide by
    long expo = 0;
    bool any_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c >= '0' && c <= '9') {
            mantissa = mantissa * 10 + (c - '0');
            if (seen_dot) ++scale;
            any_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            expo = std::stol(s.substr(i + 1));
            break;
        } else {
            throw ConfigError("bad numeric literal '" + text + "'");
        }
    }
    if (!any_digit) throw ConfigError("bad numeric literal '" + text + "'");

    Rational r(mantissa);
    const long net = expo - scale;
    BigInt pow10 = 1;
    for (long k = 0; k < std::labs(net); ++k) pow10 *= 10;
    if (net > 0) r *= Rational(pow10);
    else if (net < 0) r /= Rational(pow10);
    return negative ? -r : r;
}

std::optional<SquarefreeParts> squarefree_decompose(const BigInt& u, std::uint64_t bound) {
    if (u <= 0) throw ConfigError("squarefree_decompose: argument must be positive");
    if (u == 1) return SquarefreeParts{1, 1};

    BigInt m = 1, s = 1;
    if (u <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
        std::uint64_t n = u.convert_to<std::uint64_t>();
        std::uint64_t mm = 1, ss = 1;
        auto strip = [&](std::uint64_t d) {
            unsigned e = 0;
            while (n % d == 0) { n /= d; ++e; }
            for (unsigned k = 0; k + 1 < e; k += 2) mm *= d;
            if (e & 1u) ss *= d;
        };
        strip(2);
        for (std::uint64_t d = 3; d <= bound && d * d <= n; d += 2) strip(d);
        m = mm;
        s = ss;
        if (n > 1) {
            const std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
            for (std::uint64_t c : {r - 1, r, r + 1})
                if (c > 0 && c * c == n) { m *= c; n = 1; break; }
            if (n > 1) {
                // all remaining prime factors exceed bound; below bound^2 the
                // cofactor is prime, and below bound^3 a product of two
                // distinct primes -- squarefree either way
                BigInt b(bound);
                if (BigInt(n) < b * b * b) s *= n;
                else return std::nullopt;
            }
        }
        return SquarefreeParts{m, s};
    }

    BigInt n = u;
    auto strip = [&](const BigInt& d) {
        unsigned e = 0;
        while (n % d == 0) { n /= d; ++e; }
        for (unsigned k = 0; k + 1 < e; k += 2) m *= d;
        if (e & 1u) s *= d;
    };
    strip(2);
    for (BigInt d = 3; d <= bound && d * d <= n; d += 2) strip(d);
    if (n > 1) {
        const BigInt r = isqrt(n);
        if (r * r == n) { m *= r; n = 1; }
        else {
            BigInt b(bound);
            if (n < b * b * b) s *= n;
            else return std::nullopt;
        }
    }
    return SquarefreeParts{m, s};
}

// ── TimeValue ────────────────────────────────────────────────────────────────

TimeValue TimeValue::from_double(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("travel time must be positive and finite");
    return TimeValue{v, std::nullopt};
}

TimeValue TimeValue::from_sq(const Rational& sq) {
    if (sq <= 0) throw ConfigError("squared travel time must be positive");
    TimeValue t;
    t.sq = sq;
    t.value = std::sqrt(to_double(sq));
    if (auto root = exact_sqrt(sq)) t.value = to_double(*root);
    return t;
}

TimeValue TimeValue::from_rational(const Rational& v) {
    if (v <= 0) throw ConfigError("travel time must be positive");
    TimeValue t;
    t.sq = v * v;
    t.value = to_double(v);
    return t;
}

int compare_times(const TimeValue& a, const TimeValue& b) {
    if (a.sq && b.sq) {
        if (*a.sq < *b.sq) return -1;
        if (*a.sq > *b.sq) return 1;
        return 0;
    }
    if (a.value < b.value) return -1;
    if (a.value > b.value) return 1;
    return 0;
}

TimeValue parse_time_literal(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.rfind("sqrt(", 0) == 0 && !s.empty() && s.back() == ')') {
        const Rational inner = parse_rational(s.substr(5, s.size() - 6));
        return TimeValue::from_sq(inner);
    }
    if (s.find('/') != std::string::npos) return TimeValue::from_rational(parse_rational(s));
    // plain decimal: float provenance by design; "p/q" or "sqrt(...)" opt in
    // to exact semantics
    const double v = std::strtod(s.c_str(), nullptr);
    return TimeValue::from_double(v);
}

// ── RadicalTerm ──────────────────────────────────────────────────────────────

RadicalTerm RadicalTerm::from_sq(const Rational& sq) {
    if (sq <= 0) throw ConfigError("RadicalTerm: squared value must be positive");
    const BigInt p = boost::multiprecision::numerator(sq);
    const BigInt q = boost::multiprecision::denominator(sq);
    // sqrt(p/q) = sqrt(pq)/q
    if (auto parts = squarefree_decompose(p * q)) {
        RadicalTerm t;
        t.coeff = Rational(parts->m, q);
        t.radical = parts->s;
        if (parts->s == 1) t.radical = 1;
        return t;
    }
    RadicalTerm t;
    t.coeff = 1;
    t.radical = 0;
    t.opaque_sq = sq;
    return t;
}

RadicalTerm RadicalTerm::from_rational(const Rational& v) {
    if (v <= 0) throw ConfigError("RadicalTerm: value must be positive");
    RadicalTerm t;
    t.coeff = v;
    t.radical = 1;
    return t;
}

// ── SumKey ───────────────────────────────────────────────────────────────────

void SumKey::add(const RadicalTerm& term, const BigInt& count) {
    if (count == 0) return;
    if (count < 0) throw ConfigError("SumKey: negative multiplicity");
    if (term.opaque()) {
        opaque_[*term.opaque_sq] += count;
        return;
    }
    Rational& c = terms_[term.radical];
    c += term.coeff * Rational(count);
    if (c == 0) terms_.erase(term.radical);
}

void SumKey::add_rational(const Rational& v) {
    if (v == 0) return;
    Rational& c = terms_[BigInt(1)];
    c += v;
    if (c == 0) terms_.erase(BigInt(1));
}

bool SumKey::operator<(const SumKey& o) const {
    if (terms_ != o.terms_)
        return std::lexicographical_compare(terms_.begin(), terms_.end(),
                                            o.terms_.begin(), o.terms_.end());
    return std::lexicographical_compare(opaque_.begin(), opaque_.end(),
                                        o.opaque_.begin(), o.opaque_.end());
}

RatInterval SumKey::enclosure(unsigned bits) const {
    RatInterval iv{0, 0};
    const BigInt scale = BigInt(1) << bits;
    const Rational inv(BigInt(1), scale);
    for (const auto& [radical, coeff] : terms_) {
        if (radical == 1) {
            iv.lo += coeff;
            iv.hi += coeff;
            continue;
        }
        const BigInt m = isqrt(radical * scale * scale);
        const Rational lo = Rational(m) * inv, hi = Rational(m + 1) * inv;
        if (coeff >= 0) { iv.lo += coeff * lo; iv.hi += coeff * hi; }
        else            { iv.lo += coeff * hi; iv.hi += coeff * lo; }
    }
    for (const auto& [sq, count] : opaque_) {
        // sqrt(p/q) in [floor(sqrt(pq*4^b))/(q*2^b), (floor+1)/(q*2^b)]
        const BigInt p = boost::multiprecision::numerator(sq);
        const BigInt q = boost::multiprecision::denominator(sq);
        const BigInt mm = isqrt(p * q * scale * scale);
        const Rational lo = Rational(mm, q * scale), hi = Rational(mm + 1, q * scale);
        iv.lo += Rational(count) * lo;
        iv.hi += Rational(count) * hi;
    }
    return iv;
}

double SumKey::approx() const {
    const RatInterval iv = enclosure(96);
    return to_double((iv.lo + iv.hi) / 2);
}

SumKey::Cmp SumKey::compare(const SumKey& a, const SumKey& b, unsigned bit_cap) {
    if (a == b) return Cmp::Equal;
    for (unsigned bits = 64; bits <= bit_cap; bits *= 2) {
        const RatInterval ia = a.enclosure(bits), ib = b.enclosure(bits);
        if (ia.hi < ib.lo) return Cmp::Less;
        if (ib.hi < ia.lo) return Cmp::Greater;
    }
    return Cmp::Unresolved;
}

SumKey::Cmp SumKey::compare_with_rational(const SumKey& a, const Rational& r, unsigned bit_cap) {
    SumKey b;
    b.add_rational(r);
    // a == b structurally only when a is the pure rational r
    return compare(a, b, bit_cap);
}

double SumKey::gap(const SumKey& a, const SumKey& b) {
    if (a == b) return 0.0;
    const RatInterval ia = a.enclosure(192), ib = b.enclosure(192);
    const Rational mid = (ia.lo + ia.hi - ib.lo - ib.hi) / 2;
    return std::abs(to_double(mid));
}

std::string SumKey::describe() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [radical, coeff] : terms_) {
        if (!first) out << " + ";
        first = false;
        if (radical == 1) out << coeff;
        else out << coeff << "*sqrt(" << radical << ")";
    }
    for (const auto& [sq, count] : opaque_) {
        if (!first) out << " + ";
        first = false;
        out << count << "*sqrt(" << sq << ")";
    }
    if (first) out << "0";
    return out.str();
}

} // namespace packetgraph
