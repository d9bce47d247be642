#include "packetgraph/manifold.hpp"
#include "packetgraph/errors.hpp"

#include <sstream>

namespace packetgraph {

namespace {

void require_positive(const Param& p, const char* name) {
    if (!(p.value > 0.0)) throw ConfigError(std::string("non-positive geometry parameter ") + name);
    if (p.exact && *p.exact <= 0) throw ConfigError(std::string("non-positive geometry parameter ") + name);
}

// offset must lie in [0, period)
void require_offset(const Param& off, const Param& period, const char* name) {
    if (off.exact && period.exact) {
        if (*off.exact < 0 || *off.exact >= *period.exact)
            throw ConfigError(std::string("offset ") + name + " outside the fundamental domain");
        return;
    }
    if (off.value < 0.0 || off.value >= period.value)
        throw ConfigError(std::string("offset ") + name + " outside the fundamental domain");
}

bool offset_zero(const Param& p) {
    return p.exact ? (*p.exact == 0) : (p.value == 0.0);
}

void require_sorted_positive(const std::vector<TimeValue>& v, const char* name) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i].value > 0.0)) throw ConfigError(std::string("non-positive length in ") + name);
        if (i > 0 && compare_times(v[i - 1], v[i]) > 0)
            throw ConfigError(std::string("lengths not sorted ascending in ") + name);
    }
}

} // namespace

void ManifoldSpec::validate() const {
    if (!(segment_time.value > 0.0)) throw ConfigError("non-positive segment travel time");
    if (std::holds_alternative<Cylinder>(shape)) {
        const auto& c = std::get<Cylinder>(shape);
        require_positive(c.a, "a");
        require_positive(c.b, "b");
    } else if (std::holds_alternative<Torus2>(shape)) {
        const auto& t = std::get<Torus2>(shape);
        require_positive(t.a, "a");
        require_positive(t.b, "b");
        require_offset(t.c, t.a, "c");
        require_offset(t.d, t.b, "d");
        if (offset_zero(t.c) && offset_zero(t.d))
            throw ConfigError("torus gluing points coincide: offsets (c,d) = (0,0)");
    } else if (std::holds_alternative<Torus3>(shape)) {
        const auto& t = std::get<Torus3>(shape);
        require_positive(t.a, "a");
        require_positive(t.b, "b");
        require_positive(t.c, "c");
        require_offset(t.d, t.a, "d");
        require_offset(t.e, t.b, "e");
        require_offset(t.f, t.c, "f");
        if (offset_zero(t.d) && offset_zero(t.e) && offset_zero(t.f))
            throw ConfigError("torus gluing points coincide: offsets (d,e,f) = (0,0,0)");
    } else {
        const auto& a = std::get<Abstract>(shape);
        require_sorted_positive(a.aa, "lengthsAA");
        require_sorted_positive(a.ab, "lengthsAB");
        require_sorted_positive(a.bb, "lengthsBB");
        if (a.params) {
            if (!(a.params->first > 0.0)) throw ConfigError("abstract c0 must be positive");
            if (a.params->second < 0.0) throw ConfigError("abstract gamma must be non-negative");
        }
    }
}

std::string ManifoldSpec::describe() const {
    std::ostringstream out;
    if (std::holds_alternative<Cylinder>(shape)) {
        const auto& c = std::get<Cylinder>(shape);
        out << "cylinder(a=" << c.a.value << ", b=" << c.b.value << ")";
    } else if (std::holds_alternative<Torus2>(shape)) {
        const auto& t = std::get<Torus2>(shape);
        out << "torus2(a=" << t.a.value << ", b=" << t.b.value
            << ", c=" << t.c.value << ", d=" << t.d.value << ")";
    } else if (std::holds_alternative<Torus3>(shape)) {
        const auto& t = std::get<Torus3>(shape);
        out << "torus3(a=" << t.a.value << ", b=" << t.b.value << ", c=" << t.c.value
            << ", d=" << t.d.value << ", e=" << t.e.value << ", f=" << t.f.value << ")";
    } else {
        const auto& a = std::get<Abstract>(shape);
        out << "abstract(aa=" << a.aa.size() << ", ab=" << a.ab.size()
            << ", bb=" << a.bb.size();
        if (a.params) out << ", c0=" << a.params->first << ", gamma=" << a.params->second;
        out << ")";
    }
    out << " L=" << segment_time.value;
    return out.str();
}

ManifoldSpec make_cylinder(Param a, Param b, Param L) {
    ManifoldSpec s{Cylinder{a, b}, L};
    s.validate();
    return s;
}

ManifoldSpec make_torus2(Param a, Param b, Param c, Param d, Param L) {
    ManifoldSpec s{Torus2{a, b, c, d}, L};
    s.validate();
    return s;
}

ManifoldSpec make_torus3(Param a, Param b, Param c, Param d, Param e, Param f, Param L) {
    ManifoldSpec s{Torus3{a, b, c, d, e, f}, L};
    s.validate();
    return s;
}

ManifoldSpec make_abstract(std::vector<TimeValue> aa, std::vector<TimeValue> ab,
                           std::vector<TimeValue> bb, Param L) {
    ManifoldSpec s{Abstract{std::move(aa), std::move(ab), std::move(bb), std::nullopt}, L};
    s.validate();
    return s;
}

ManifoldSpec make_abstract_params(double c0, double gamma, Param L) {
    ManifoldSpec s{Abstract{{}, {}, {}, std::make_pair(c0, gamma)}, L};
    s.validate();
    return s;
}

} // namespace packetgraph
