#pragma once

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/errors.hpp"
#include "orlicz/orlicz_space.hpp"
#include "orlicz/qbfs.hpp"
#include "orlicz/space.hpp"
#include "orlicz/vecmeasure.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline void check_schema_version(const Json& j, const char* what) {
    if (j.contains("v") && j.at("v") != kSchemaVersion)
        throw ParseError(std::string(what) + ": unsupported schema version");
}

inline double require_number(const Json& j, const char* key, const char* what) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ParseError(std::string(what) + ": missing numeric field '" + key + "'");
    return j.at(key).get<double>();
}

// ---- gauges ----------------------------------------------------------------

inline YoungSpec young_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ParseError("gauge: expected an object with a 'kind' field");
    check_schema_version(j, "gauge");
    YoungSpec s;
    s.kind = j.at("kind").get<std::string>();
    if (s.kind == "power") {
        s.p = require_number(j, "p", "gauge power");
    } else if (s.kind == "power-log") {
        s.p = require_number(j, "p", "gauge power-log");
        s.q = require_number(j, "q", "gauge power-log");
    } else if (s.kind == "exp") {
        s.a = require_number(j, "a", "gauge exp");
    } else if (s.kind == "scaled") {
        s.M = require_number(j, "M", "gauge scaled");
        if (!j.contains("inner")) throw ParseError("gauge scaled: missing 'inner'");
        s.inner = std::make_shared<YoungSpec>(young_spec_from_json(j.at("inner")));
    } else if (s.kind == "calderon") {
        s.theta = require_number(j, "theta", "gauge calderon");
        if (!j.contains("phi0") || !j.contains("phi1"))
            throw ParseError("gauge calderon: missing 'phi0'/'phi1'");
        s.phi0 = std::make_shared<YoungSpec>(young_spec_from_json(j.at("phi0")));
        s.phi1 = std::make_shared<YoungSpec>(young_spec_from_json(j.at("phi1")));
    } else if (s.kind == "tabulated") {
        if (!j.contains("points") || !j.at("points").is_array())
            throw ParseError("gauge tabulated: missing 'points' array");
        for (const auto& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2)
                throw ParseError("gauge tabulated: points must be [t,u] pairs");
            s.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        }
        s.terminal_slope = require_number(j, "terminal_slope", "gauge tabulated");
    } else {
        throw ParseError("gauge: unknown kind '" + s.kind + "'");
    }
    return s;
}

inline YoungValidation validate_young(const Json& j) { return validate(young_spec_from_json(j)); }

inline YoungFunction parse_young(const Json& j) {
    YoungValidation v = validate_young(j);
    if (!v.ok()) {
        std::string msg = "gauge rejected:";
        for (const auto& d : v.diagnostics) msg += " [" + d + "]";
        throw ParseError(msg);
    }
    return *v.fn;
}

inline Json young_to_json(const YoungFunction& phi) {
    Json j;
    switch (phi.kind()) {
        case YoungFunction::Kind::Power:
            j = {{"kind", "power"}, {"p", phi.param_p()}};
            break;
        case YoungFunction::Kind::PowerLog:
            j = {{"kind", "power-log"}, {"p", phi.param_p()}, {"q", phi.param_q()}};
            break;
        case YoungFunction::Kind::ExpMinusOne:
            j = {{"kind", "exp"}, {"a", phi.param_a()}};
            break;
        case YoungFunction::Kind::Scaled:
            j = {{"kind", "scaled"}, {"M", phi.param_M()}, {"inner", young_to_json(phi.inner())}};
            break;
        case YoungFunction::Kind::Calderon:
            j = {{"kind", "calderon"},
                 {"theta", phi.param_theta()},
                 {"phi0", young_to_json(phi.factor0())},
                 {"phi1", young_to_json(phi.factor1())}};
            break;
        case YoungFunction::Kind::Tabulated: {
            Json pts = Json::array();
            for (const auto& p : phi.points()) pts.push_back({p[0], p[1]});
            j = {{"kind", "tabulated"}, {"points", pts}, {"terminal_slope", phi.terminal_slope()}};
            break;
        }
    }
    return j;
}

// ---- carrier, functions, sets ----------------------------------------------

inline SpacePtr parse_space(const Json& j) {
    if (!j.is_object() || !j.contains("atoms") || !j.contains("weights"))
        throw ParseError("space: expected {'atoms':[...],'weights':[...]}");
    check_schema_version(j, "space");
    std::vector<std::string> ids;
    std::vector<double> w;
    for (const auto& a : j.at("atoms")) ids.push_back(a.get<std::string>());
    for (const auto& x : j.at("weights")) w.push_back(x.get<double>());
    try {
        return make_space(std::move(ids), std::move(w));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

inline Json space_to_json(const AtomicMeasureSpace& s) {
    return Json{{"atoms", s.atom_ids()}, {"weights", s.weights()}};
}

inline Fn parse_fn(const Json& j, SpacePtr space) {
    if (!j.is_object() || !j.contains("values"))
        throw ParseError("function: expected {'values':[...]}");
    check_schema_version(j, "function");
    if (j.contains("space")) space = parse_space(j.at("space"));
    if (!space) throw ParseError("function: no carrier space available");
    std::vector<double> v;
    for (const auto& x : j.at("values")) v.push_back(x.get<double>());
    try {
        return Fn(std::move(space), std::move(v));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

inline Json fn_to_json(const Fn& f) { return Json{{"values", f.values()}}; }

inline AtomSet parse_atom_set(const Json& j, const SpacePtr& space) {
    if (!j.is_array()) throw ParseError("set: expected an array of atom ids");
    AtomSet a(space->size());
    for (const auto& id : j) {
        int idx = space->index_of(id.get<std::string>());
        if (idx < 0) throw ParseError("set: unknown atom id '" + id.get<std::string>() + "'");
        a.set(static_cast<std::size_t>(idx));
    }
    return a;
}

// ---- vector measures ---------------------------------------------------------

inline VectorMeasure parse_measure(const Json& j) {
    if (!j.is_object() || !j.contains("target") || !j.contains("atom_vectors"))
        throw ParseError("measure: expected {'target':{...},'atom_vectors':[...]}");
    check_schema_version(j, "measure");
    const Json& t = j.at("target");
    int dim = static_cast<int>(require_number(t, "dim", "measure target"));
    if (!t.contains("norm") || !t.at("norm").is_string())
        throw ParseError("measure target: missing 'norm'");
    std::string nk = t.at("norm").get<std::string>();
    NormKind kind;
    if (nk == "l1") kind = NormKind::l1;
    else if (nk == "l2") kind = NormKind::l2;
    else if (nk == "linf") kind = NormKind::linf;
    else throw ParseError("measure target: unknown norm '" + nk + "'");

    std::vector<std::vector<double>> vectors;
    for (const auto& row : j.at("atom_vectors")) {
        std::vector<double> v;
        for (const auto& x : row) v.push_back(x.get<double>());
        vectors.push_back(std::move(v));
    }
    SpacePtr space =
        j.contains("space") ? parse_space(j.at("space")) : unit_space(vectors.size());
    try {
        return VectorMeasure(std::move(space), TargetNorm{dim, kind}, std::move(vectors));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

inline Json measure_to_json(const VectorMeasure& m) {
    return Json{{"target", {{"dim", m.target().dim}, {"norm", norm_kind_name(m.target().kind)}}},
                {"atom_vectors", m.atom_vectors()},
                {"space", space_to_json(*m.space())}};
}

// ---- quasi-normed space specs -------------------------------------------------

/// Space spec: {"kind":"l1mu"|"linf"|"l1w"|"l1semivar"|"power"|"orlicz", ...}.
/// `fallback` supplies the carrier when the spec omits it (the CLI derives it
/// from the function file).
inline QuasiNormedSpace parse_base_space(const Json& j, SpacePtr fallback = nullptr) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ParseError("space spec: expected an object with a 'kind' field");
    check_schema_version(j, "space spec");
    const std::string kind = j.at("kind").get<std::string>();
    auto carrier = [&]() -> SpacePtr {
        if (j.contains("space")) return parse_space(j.at("space"));
        if (fallback) return fallback;
        throw ParseError("space spec '" + kind + "': no carrier space given");
    };
    if (kind == "l1mu") return l1_mu(carrier());
    if (kind == "linf") return linf(carrier());
    if (kind == "l1w" || kind == "l1semivar") {
        if (!j.contains("measure")) throw ParseError("space spec '" + kind + "': missing 'measure'");
        VectorMeasure m = parse_measure(j.at("measure"));
        return kind == "l1w" ? l1w(m) : l1_semivar(m);
    }
    if (kind == "power") {
        if (!j.contains("base")) throw ParseError("space spec 'power': missing 'base'");
        double s = require_number(j, "s", "space spec power");
        try {
            return power_space(parse_base_space(j.at("base"), fallback), s);
        } catch (const PreconditionError& e) {
            throw ParseError(e.what());
        }
    }
    if (kind == "orlicz") {
        if (!j.contains("base") || !j.contains("phi"))
            throw ParseError("space spec 'orlicz': missing 'base'/'phi'");
        double tol = j.contains("tol") ? j.at("tol").get<double>() : 1e-10;
        OrliczSpace os(parse_base_space(j.at("base"), fallback), parse_young(j.at("phi")), tol);
        return os.as_space();
    }
    throw ParseError("space spec: unknown kind '" + kind + "'");
}

// ---- step functions: JSON, CSV, SVG ------------------------------------------

inline Json step_to_json(const StepFunction& s) {
    return Json{{"v", kSchemaVersion},
                {"breakpoints", s.breakpoints()},
                {"values", s.values()},
                {"integral", s.integral()}};
}

inline void write_step_csv(std::ostream& os, const StepFunction& s) {
    os << "t,value\n";
    os << std::setprecision(17);
    for (std::size_t j = 0; j < s.breakpoints().size(); ++j)
        os << s.breakpoints()[j] << "," << s.values()[j] << "\n";
}

/// Staircase plot of the distribution function, axes included.
inline void write_step_svg(std::ostream& os, const StepFunction& s) {
    const double W = 640, H = 400, ml = 60, mr = 20, mt = 20, mb = 40;
    const auto& ts = s.breakpoints();
    const auto& vs = s.values();
    double tmax = std::max(ts.back() * 1.15, 1e-12);
    double vmax = std::max(vs.front() * 1.15, 1e-12);
    auto X = [&](double t) { return ml + (W - ml - mr) * t / tmax; };
    auto Y = [&](double v) { return H - mb - (H - mb - mt) * v / vmax; };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
       << H - mb << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << ml << "\" y2=\"" << mt
       << "\" stroke=\"black\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (std::size_t j = 0; j < ts.size(); ++j) {
        double t_next = (j + 1 < ts.size()) ? ts[j + 1] : tmax;
        os << X(ts[j]) << "," << Y(vs[j]) << " " << X(t_next) << "," << Y(vs[j]) << " ";
    }
    os << "\"/>\n";
    os << "<text x=\"" << W - mr - 4 << "\" y=\"" << H - mb + 22
       << "\" text-anchor=\"end\" font-size=\"12\">t</text>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << mt + 10
       << "\" text-anchor=\"end\" font-size=\"12\">" << vs.front() << "</text>\n";
    os << "</svg>\n";
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

} // namespace orlicz
