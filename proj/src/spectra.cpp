#include "packetgraph/spectra.hpp"
#include "packetgraph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace packetgraph {

std::string pair_name(Pair p) {
    switch (p) {
        case Pair::AA: return "AA";
        case Pair::AB: return "AB";
        case Pair::BB: return "BB";
    }
    return "?";
}

std::string IndexTuple::str() const {
    std::ostringstream out;
    for (std::uint8_t i = 0; i < size; ++i) {
        if (i) out << ':';
        out << v[i];
    }
    return out.str();
}

namespace {

// Inclusion window for one class: above < length <= cutoff, decided exactly
// when the squared length is exact.  `above` < 0 disables the lower bound.
struct Window {
    double above = -1.0;
    double cutoff = 0.0;
    Rational above_sq;  // dyadic squares of the double bounds
    Rational cutoff_sq;

    explicit Window(double above_, double cutoff_)
        : above(above_), cutoff(cutoff_) {
        if (above >= 0.0) above_sq = rational_from_double(above) * rational_from_double(above);
        cutoff_sq = rational_from_double(cutoff) * rational_from_double(cutoff);
    }

    bool below_cut(const TimeValue& t) const {
        return t.sq ? (*t.sq <= cutoff_sq) : (t.value <= cutoff);
    }
    bool above_low(const TimeValue& t) const {
        if (above < 0.0) return true;
        return t.sq ? (*t.sq > above_sq) : (t.value > above);
    }
    bool contains(const TimeValue& t) const { return below_cut(t) && above_low(t); }
};

struct Builder {
    std::vector<GeodesicClass> classes;
    std::size_t cap;

    void push(Pair pair, IndexTuple idx, TimeValue len) {
        if (classes.size() >= cap)
            throw ResourceLimitError("geodesic class cap exceeded (" + std::to_string(cap) +
                                     "); lower the cutoff or raise the cap");
        classes.push_back(GeodesicClass{pair, idx, std::move(len)});
    }
};

bool all_exact(std::initializer_list<const Param*> ps) {
    for (const Param* p : ps)
        if (!p->exact) return false;
    return true;
}

// coordinate offset + n * period, exact when possible
TimeValue axis_length_sq_to_time(const Rational& sq) { return TimeValue::from_sq(sq); }

// cylinder AB: t_k = sqrt((k b)^2 + a^2), k >= 0
void enumerate_cylinder(const Cylinder& cyl, const Window& w, Builder& out) {
    const bool exact = all_exact({&cyl.a, &cyl.b});
    for (std::int64_t k = 0;; ++k) {
        TimeValue len;
        if (exact) {
            const Rational x = Rational(k) * *cyl.b.exact;
            const Rational sq = x * x + *cyl.a.exact * *cyl.a.exact;
            if (sq > w.cutoff_sq) break;
            len = axis_length_sq_to_time(sq);
        } else {
            const double x = static_cast<double>(k) * cyl.b.value;
            const double sq = x * x + cyl.a.value * cyl.a.value;
            if (sq > w.cutoff * w.cutoff) break;
            len = TimeValue::from_double(std::sqrt(sq));
        }
        if (w.above_low(len)) out.push(Pair::AB, IndexTuple::of(k), len);
    }
    // one loop of time b; repeated windings are repeated traversals
    TimeValue loop = cyl.b.exact ? TimeValue::from_rational(*cyl.b.exact)
                                 : TimeValue::from_double(cyl.b.value);
    if (w.contains(loop)) out.push(Pair::AA, IndexTuple::of(1), loop);
}

// shared scaffolding for torus lattice scans: the coordinate along axis i is
// off_i + n_i * per_i; scan ranges come from double estimates, widened and
// then closed off by explicit inclusion tests so float rounding cannot drop a
// boundary class.
struct Axis {
    double off, per;
    std::optional<Rational> off_x, per_x;
    bool exact() const { return off_x && per_x; }
    double coord(std::int64_t n) const { return off + static_cast<double>(n) * per; }
    Rational coord_x(std::int64_t n) const { return *off_x + Rational(n) * *per_x; }
};

Axis loop_axis(const Param& period) {
    return Axis{0.0, period.value, Rational(0), period.exact};
}
Axis cross_axis(const Param& offset, const Param& period) {
    return Axis{offset.value, period.value, offset.exact, period.exact};
}

std::pair<std::int64_t, std::int64_t> estimate_range(const Axis& ax, double reach, bool signed_range) {
    if (!signed_range) {
        // n >= 0 and coordinate = n*per
        const std::int64_t hi = static_cast<std::int64_t>(std::floor(reach / ax.per)) + 2;
        return {0, hi};
    }
    const std::int64_t lo = static_cast<std::int64_t>(std::ceil((-reach - ax.off) / ax.per)) - 2;
    const std::int64_t hi = static_cast<std::int64_t>(std::floor((reach - ax.off) / ax.per)) + 2;
    return {lo, hi};
}

template <typename Emit>
void scan_lattice(const std::vector<Axis>& axes, bool signed_range, const Window& w, Emit&& emit) {
    const bool exact = std::all_of(axes.begin(), axes.end(), [](const Axis& a) { return a.exact(); });
    const double cut2 = w.cutoff * w.cutoff;

    // prefix sums of squares, exact and double
    std::vector<std::int64_t> idx(axes.size(), 0);
    std::vector<std::int64_t> lo(axes.size()), hi(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i)
        std::tie(lo[i], hi[i]) = estimate_range(axes[i], w.cutoff, signed_range);

    // recursive descent over axes; partial-sum pruning per the lattice bound
    auto descend = [&](auto&& self, std::size_t depth, double part, const Rational& part_x) -> void {
        if (depth == axes.size()) {
            TimeValue len;
            if (exact) {
                if (part_x > w.cutoff_sq || part_x == 0) return;
                len = TimeValue::from_sq(part_x);
            } else {
                if (part > cut2 || part == 0.0) return;
                len = TimeValue::from_double(std::sqrt(part));
            }
            if (w.above_low(len)) emit(idx, len);
            return;
        }
        const Axis& ax = axes[depth];
        for (std::int64_t n = lo[depth]; n <= hi[depth]; ++n) {
            double p2 = part;
            Rational px = part_x;
            if (exact) {
                const Rational x = ax.coord_x(n);
                px += x * x;
                if (px > w.cutoff_sq) {
                    // widen the tail if the estimate clipped a valid endpoint
                    if (n == hi[depth] && x < 0) ++hi[depth];
                    continue;
                }
            } else {
                const double x = ax.coord(n);
                p2 += x * x;
                if (p2 > cut2) {
                    if (n == hi[depth] && x < 0) ++hi[depth];
                    continue;
                }
            }
            idx[depth] = n;
            self(self, depth + 1, p2, px);
        }
    };
    descend(descend, 0, 0.0, Rational(0));
}

void enumerate_torus2(const Torus2& t, const Window& w, Builder& out) {
    scan_lattice({loop_axis(t.a), loop_axis(t.b)}, false, w,
                 [&](const std::vector<std::int64_t>& n, const TimeValue& len) {
                     out.push(Pair::AA, IndexTuple::of(n[0], n[1]), len);
                 });
    scan_lattice({cross_axis(t.c, t.a), cross_axis(t.d, t.b)}, true, w,
                 [&](const std::vector<std::int64_t>& n, const TimeValue& len) {
                     out.push(Pair::AB, IndexTuple::of(n[0], n[1]), len);
                 });
}

void enumerate_torus3(const Torus3& t, const Window& w, Builder& out) {
    scan_lattice({loop_axis(t.a), loop_axis(t.b), loop_axis(t.c)}, false, w,
                 [&](const std::vector<std::int64_t>& n, const TimeValue& len) {
                     out.push(Pair::AA, IndexTuple::of(n[0], n[1], n[2]), len);
                 });
    scan_lattice({cross_axis(t.d, t.a), cross_axis(t.e, t.b), cross_axis(t.f, t.c)}, true, w,
                 [&](const std::vector<std::int64_t>& n, const TimeValue& len) {
                     out.push(Pair::AB, IndexTuple::of(n[0], n[1], n[2]), len);
                 });
}

void enumerate_abstract(const Abstract& a, const Window& w, Builder& out) {
    auto family = [&](const std::vector<TimeValue>& lens, Pair pair) {
        for (std::size_t i = 0; i < lens.size(); ++i) {
            if (!w.below_cut(lens[i])) break; // sorted ascending
            if (w.above_low(lens[i]))
                out.push(pair, IndexTuple::of(static_cast<std::int64_t>(i)), lens[i]);
        }
    };
    family(a.aa, Pair::AA);
    family(a.ab, Pair::AB);
    family(a.bb, Pair::BB);
}

bool class_less(const GeodesicClass& x, const GeodesicClass& y) {
    if (x.length.value != y.length.value) return x.length.value < y.length.value;
    if (x.length.sq && y.length.sq && *x.length.sq != *y.length.sq)
        return *x.length.sq < *y.length.sq;
    if (x.pair != y.pair) return x.pair < y.pair;
    return x.index < y.index;
}

LengthSpectrum enumerate_window(const ManifoldSpec& spec, double above, double cutoff,
                                const SpectraOptions& opts) {
    spec.validate();
    if (cutoff < 0.0 || !std::isfinite(cutoff)) throw ConfigError("cutoff must be finite and >= 0");

    Builder out;
    out.cap = opts.class_cap;
    const Window w(above, cutoff);
    if (cutoff > 0.0) {
        if (std::holds_alternative<Cylinder>(spec.shape))
            enumerate_cylinder(std::get<Cylinder>(spec.shape), w, out);
        else if (std::holds_alternative<Torus2>(spec.shape))
            enumerate_torus2(std::get<Torus2>(spec.shape), w, out);
        else if (std::holds_alternative<Torus3>(spec.shape))
            enumerate_torus3(std::get<Torus3>(spec.shape), w, out);
        else {
            const auto& a = std::get<Abstract>(spec.shape);
            if (a.aa.empty() && a.ab.empty() && a.bb.empty() && a.params)
                throw UnsupportedError("abstract spec has only (c0, gamma) parameters; no lengths to enumerate");
            enumerate_abstract(a, w, out);
        }
    }
    std::sort(out.classes.begin(), out.classes.end(), class_less);

    LengthSpectrum s;
    s.spec = spec;
    s.cutoff = cutoff;
    s.classes = std::move(out.classes);
    return s;
}

} // namespace

LengthSpectrum enumerate_lengths(const ManifoldSpec& spec, double cutoff, const SpectraOptions& opts) {
    return enumerate_window(spec, -1.0, cutoff, opts);
}

namespace detail {
LengthSpectrum enumerate_lengths_above(const ManifoldSpec& spec, double above, double cutoff,
                                       const SpectraOptions& opts) {
    return enumerate_window(spec, above, cutoff, opts);
}
} // namespace detail

std::int64_t counting_function(const LengthSpectrum& spectrum, double lambda,
                               std::optional<Pair> filter) {
    if (lambda > spectrum.cutoff)
        throw InsufficientSpectrumError("counting_function: lambda exceeds the spectrum cutoff");
    if (lambda < 0.0) return 0;
    const Rational lambda_sq = rational_from_double(lambda) * rational_from_double(lambda);
    std::int64_t n = 0;
    for (const auto& cls : spectrum.classes) {
        if (filter && cls.pair != *filter) continue;
        const bool in = cls.length.sq ? (*cls.length.sq <= lambda_sq) : (cls.length.value <= lambda);
        if (in) ++n;
    }
    return n;
}

std::pair<double, double> closed_form_params(const ManifoldSpec& spec) {
    constexpr double pi = std::numbers::pi;
    if (std::holds_alternative<Cylinder>(spec.shape)) {
        const auto& c = std::get<Cylinder>(spec.shape);
        return {1.0 / c.b.value, 0.0};
    }
    if (std::holds_alternative<Torus2>(spec.shape)) {
        const auto& t = std::get<Torus2>(spec.shape);
        return {5.0 * pi / (4.0 * t.a.value * t.b.value), 1.0};
    }
    if (std::holds_alternative<Torus3>(spec.shape)) {
        const auto& t = std::get<Torus3>(spec.shape);
        return {3.0 * pi / (2.0 * t.a.value * t.b.value * t.c.value), 2.0};
    }
    const auto& a = std::get<Abstract>(spec.shape);
    if (a.params) return *a.params;
    throw UnsupportedError("closed_form_params: abstract spec without (c0, gamma) parameters");
}

FitResult fit_counting_params(const LengthSpectrum& spectrum, double lambda_min,
                              double lambda_max, int grid_points) {
    if (!(lambda_min > 0.0) || !(lambda_min < lambda_max))
        throw FitFailureError("fit: need 0 < lambda_min < lambda_max");
    if (lambda_max > spectrum.cutoff)
        throw InsufficientSpectrumError("fit: lambda_max exceeds the spectrum cutoff");
    if (counting_function(spectrum, lambda_min) < 10)
        throw FitFailureError("fit: rho(lambda_min) < 10");
    if (grid_points < 20) grid_points = 20;

    std::vector<double> xs, ys;
    const double ratio = lambda_max / lambda_min;
    for (int i = 0; i < grid_points; ++i) {
        const double lambda = lambda_min * std::pow(ratio, static_cast<double>(i) / (grid_points - 1));
        const std::int64_t rho = counting_function(spectrum, lambda);
        if (rho <= 0) throw FitFailureError("fit: zero count inside the grid");
        xs.push_back(std::log(lambda));
        ys.push_back(std::log(static_cast<double>(rho)));
    }

    const auto n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (!(std::abs(denom) > 1e-12)) throw FitFailureError("fit: degenerate lambda grid");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double max_resid = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        max_resid = std::max(max_resid, std::abs(ys[i] - (intercept + slope * xs[i])));

    return FitResult{std::exp(intercept), slope - 1.0, max_resid};
}

std::vector<std::vector<int>> detect_rational_dependence(const std::vector<double>& lengths,
                                                         int max_coef, int max_subset) {
    if (max_subset < 1 || max_subset > 4) throw ConfigError("detect_rational_dependence: maxSubset must be in [1,4]");
    if (max_coef < 1 || max_coef > 32) throw ConfigError("detect_rational_dependence: maxCoef must be in [1,32]");
    double max_len = 0.0;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (!(lengths[i] > 0.0)) throw ConfigError("detect_rational_dependence: lengths must be positive");
        if (i > 0 && lengths[i] < lengths[i - 1]) throw ConfigError("detect_rational_dependence: lengths must be sorted");
        max_len = std::max(max_len, lengths[i]);
    }

    const long double eta = 1e-9L * static_cast<long double>(max_len) * max_coef * max_subset;
    const std::size_t n = lengths.size();
    std::set<std::vector<int>> found;
    constexpr std::size_t out_cap = 1'000'000;

    std::vector<std::size_t> subset;
    // all nonzero coefficients on `subset`; the last coordinate is solved for
    auto scan_subset = [&]() {
        const std::size_t k = subset.size();
        std::vector<int> q(k, 0);
        auto record = [&](const std::vector<int>& qs) {
            std::vector<int> vec(n, 0);
            for (std::size_t i = 0; i < k; ++i) vec[subset[i]] = qs[i];
            for (std::size_t i = 0; i < n; ++i) {
                if (vec[i] == 0) continue;
                if (vec[i] < 0)
                    for (auto& c : vec) c = -c;
                break;
            }
            if (found.size() >= out_cap)
                throw ResourceLimitError("dependence search produced too many relations");
            found.insert(std::move(vec));
        };
        auto rec = [&](auto&& self, std::size_t pos, long double partial) -> void {
            if (pos + 1 == k) {
                // q_last ~ -partial / l_last; only the two neighbours can work
                const long double t = -partial / static_cast<long double>(lengths[subset[pos]]);
                const auto base = static_cast<long long>(std::floor(t));
                for (long long cand = base; cand <= base + 1; ++cand) {
                    if (cand == 0 || std::llabs(cand) > max_coef) continue;
                    const long double total =
                        partial + static_cast<long double>(cand) * static_cast<long double>(lengths[subset[pos]]);
                    if (std::fabs(static_cast<double>(total)) < static_cast<double>(eta)) {
                        q[pos] = static_cast<int>(cand);
                        record(q);
                    }
                }
                return;
            }
            for (int c = -max_coef; c <= max_coef; ++c) {
                if (c == 0) continue;
                q[pos] = c;
                self(self, pos + 1,
                     partial + static_cast<long double>(c) * static_cast<long double>(lengths[subset[pos]]));
            }
        };
        if (k >= 2) rec(rec, 0, 0.0L);
        // k == 1 cannot vanish: all lengths are positive
    };

    auto choose = [&](auto&& self, std::size_t start, int remaining) -> void {
        if (!subset.empty()) scan_subset();
        if (remaining == 0) return;
        for (std::size_t i = start; i < n; ++i) {
            subset.push_back(i);
            self(self, i + 1, remaining - 1);
            subset.pop_back();
        }
    };
    choose(choose, 0, max_subset);

    return {found.begin(), found.end()};
}

} // namespace packetgraph
