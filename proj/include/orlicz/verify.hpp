#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/interp.hpp"
#include "orlicz/json_io.hpp"
#include "orlicz/orlicz_space.hpp"
#include "orlicz/qbfs.hpp"
#include "orlicz/rng.hpp"
#include "orlicz/space.hpp"
#include "orlicz/vecmeasure.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// ---- instance generators -----------------------------------------------------

namespace gen {

inline SpacePtr random_space(Rng& rng, std::size_t min_atoms = 2, std::size_t max_atoms = 8) {
    std::size_t n = min_atoms + rng.index(max_atoms - min_atoms + 1);
    std::vector<std::string> ids(n);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = "a" + std::to_string(i + 1);
        w[i] = rng.uniform(0.2, 5.0);
    }
    return make_space(std::move(ids), std::move(w));
}

inline TargetNorm random_target(Rng& rng, int max_dim = 4) {
    TargetNorm t;
    t.dim = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(max_dim)));
    const NormKind kinds[] = {NormKind::l1, NormKind::l2, NormKind::linf};
    t.kind = kinds[rng.index(3)];
    return t;
}

inline VectorMeasure random_measure(Rng& rng, SpacePtr space, int max_dim = 4,
                                    bool allow_null_atoms = false) {
    TargetNorm t = random_target(rng, max_dim);
    std::vector<std::vector<double>> vs(space->size());
    for (auto& v : vs) {
        v.resize(static_cast<std::size_t>(t.dim));
        bool null_atom = allow_null_atoms && rng.coin(0.15);
        for (auto& x : v) x = null_atom ? 0.0 : rng.uniform(-3.0, 3.0);
        if (!allow_null_atoms && t.norm(v) < 1e-3) v[0] += 1.0;  // keep atoms non-null
    }
    return VectorMeasure(std::move(space), t, std::move(vs));
}

inline Fn random_fn(Rng& rng, const SpacePtr& space, double hi = 8.0, double zero_prob = 0.2,
                    bool signed_values = true) {
    std::vector<double> v(space->size());
    for (auto& x : v) {
        if (rng.coin(zero_prob)) { x = 0.0; continue; }
        x = rng.uniform(0.05, hi);
        if (signed_values && rng.coin()) x = -x;
    }
    return Fn(space, std::move(v));
}

inline Fn random_nonzero_fn(Rng& rng, const SpacePtr& space, double hi = 8.0) {
    Fn f = random_fn(rng, space, hi);
    while (f.is_zero()) f = random_fn(rng, space, hi);
    return f;
}

inline AtomSet random_set(Rng& rng, std::size_t n) {
    AtomSet a(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng.coin()) a.set(i);
    return a;
}

/// Random convex increasing breakpoint gauge with a steeper terminal slope.
inline YoungFunction random_tabulated(Rng& rng) {
    std::size_t segments = 2 + rng.index(3);
    std::vector<std::array<double, 2>> pts{{0.0, 0.0}};
    double t = 0.0, u = 0.0, slope = rng.uniform(0.05, 0.5);
    for (std::size_t j = 0; j < segments; ++j) {
        t += rng.uniform(0.3, 2.0);
        u += slope * (t - pts.back()[0]);
        pts.push_back({t, u});
        slope += rng.uniform(0.1, 2.0);
    }
    return YoungFunction::tabulated(std::move(pts), slope);
}

/// Doubling families only; exponential gauges are drawn separately where a
/// non-doubling gauge is the point.
inline YoungFunction random_young_delta2(Rng& rng) {
    switch (rng.index(4)) {
        case 0: return YoungFunction::power(rng.uniform(1.0, 4.0));
        case 1: return YoungFunction::power_log(rng.uniform(1.0, 3.0), rng.uniform(0.0, 2.0));
        case 2: return random_tabulated(rng);
        default:
            return YoungFunction::scaled(YoungFunction::power(rng.uniform(1.0, 3.0)),
                                         rng.uniform(0.5, 3.0));
    }
}

inline YoungFunction random_young(Rng& rng) {
    if (rng.coin(0.2)) return YoungFunction::exp_minus_one(rng.uniform(1.0, 2.0));
    return random_young_delta2(rng);
}

struct BaseDraw {
    QuasiNormedSpace X;
    Json desc;
};

/// One of the four concrete base kinds over a fresh carrier; vector-measure
/// kinds avoid null atoms so the Q1 axiom holds literally.
inline BaseDraw random_base(Rng& rng, SpacePtr space, int kind = -1) {
    if (kind < 0) kind = static_cast<int>(rng.index(4));
    switch (kind) {
        case 0: return {l1_mu(space), Json{{"kind", "l1mu"}, {"space", space_to_json(*space)}}};
        case 1: return {linf(space), Json{{"kind", "linf"}, {"space", space_to_json(*space)}}};
        case 2: {
            VectorMeasure m = random_measure(rng, space);
            return {l1w(m), Json{{"kind", "l1w"}, {"measure", measure_to_json(m)}}};
        }
        default: {
            VectorMeasure m = random_measure(rng, space);
            return {l1_semivar(m), Json{{"kind", "l1semivar"}, {"measure", measure_to_json(m)}}};
        }
    }
}

} // namespace gen

// ---- registry ------------------------------------------------------------------

struct Failure {
    std::uint64_t replay_seed = 0;
    Json counterexample;
};

struct Verdict {
    std::string id;
    std::string statement;
    int instances = 0;
    std::vector<Failure> failures;
    std::map<std::string, double> constants;
    bool pass() const { return failures.empty(); }
};

struct CheckSpec {
    std::string id;
    std::string statement;
    int default_instances = 100;
    std::function<void(Rng&, int, Verdict&)> run;
};

class Registry {
public:
    void add(std::string id, std::string statement, int default_instances,
             std::function<void(Rng&, int, Verdict&)> run) {
        for (const auto& c : checks_)
            if (c.id == id) throw Error("registry: duplicate check id '" + id + "'");
        checks_.push_back(CheckSpec{std::move(id), std::move(statement), default_instances,
                                    std::move(run)});
    }
    const std::vector<CheckSpec>& checks() const { return checks_; }

private:
    std::vector<CheckSpec> checks_;
};

// '*' wildcard glob against check ids.
inline bool glob_match(const std::string& pattern, const std::string& s) {
    std::size_t p = 0, i = 0, star = std::string::npos, mark = 0;
    while (i < s.size()) {
        if (p < pattern.size() && (pattern[p] == s[i])) { ++p; ++i; }
        else if (p < pattern.size() && pattern[p] == '*') { star = p++; mark = i; }
        else if (star != std::string::npos) { p = star + 1; i = ++mark; }
        else return false;
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

namespace detail {

inline bool approx_le(double a, double b, double rel = 1e-9) {
    return a <= b + rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline bool close(double a, double b, double rel = 1e-9) {
    return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline void record(Verdict& v, std::uint64_t replay_seed, Json ce) {
    v.failures.push_back(Failure{replay_seed, std::move(ce)});
}

inline void bump(Verdict& v, const std::string& key, double value) {
    auto it = v.constants.find(key);
    if (it == v.constants.end()) v.constants[key] = value;
    else it->second = std::max(it->second, value);
}

} // namespace detail

/// The default statement registry. Each check is an executable property over
/// seeded random instances; failures carry the fully serialized instance.
inline Registry default_registry() {
    using namespace detail;
    Registry reg;

    // -- semivariation core --------------------------------------------------

    reg.add("semivar-oracle",
            "branch-and-bound semivariation equals the full sign enumeration", 500,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local, 1, 12);
                    VectorMeasure m = gen::random_measure(local, sp, 4, true);
                    AtomSet a = k % 3 == 0 ? full_set(sp->size())
                                           : gen::random_set(local, sp->size());
                    double fast = semivariation(m, a);
                    double slow = semivariation_bruteforce(m, a);
                    bump(v, "max_abs_diff", std::fabs(fast - slow));
                    if (!close(fast, slow, 1e-12))
                        record(v, replay,
                               Json{{"measure", measure_to_json(m)},
                                    {"fast", fast},
                                    {"slow", slow}});
                }
            });

    reg.add("semivar-subadditive", "semivariation is subadditive on disjoint sets", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local, 2, 10);
                    VectorMeasure m = gen::random_measure(local, sp, 4, true);
                    AtomSet a = gen::random_set(local, sp->size());
                    AtomSet b = gen::random_set(local, sp->size()).set_intersection(a.complement());
                    double lhs = semivariation(m, a.set_union(b));
                    double rhs = semivariation(m, a) + semivariation(m, b);
                    if (!approx_le(lhs, rhs, 1e-12))
                        record(v, replay,
                               Json{{"measure", measure_to_json(m)}, {"lhs", lhs}, {"rhs", rhs}});
                }
            });

    reg.add("semivar-monotone", "semivariation is monotone under set inclusion", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local, 2, 10);
                    VectorMeasure m = gen::random_measure(local, sp, 4, true);
                    AtomSet b = gen::random_set(local, sp->size());
                    AtomSet a = gen::random_set(local, sp->size()).set_intersection(b);
                    if (!approx_le(semivariation(m, a), semivariation(m, b), 1e-12))
                        record(v, replay, Json{{"measure", measure_to_json(m)}});
                }
            });

    reg.add("scalar-variation-bound",
            "every unit-dual scalar variation sits below the semivariation", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local, 1, 10);
                    VectorMeasure m = gen::random_measure(local, sp, 4, true);
                    AtomSet a = gen::random_set(local, sp->size());
                    std::vector<double> y(static_cast<std::size_t>(m.target().dim));
                    for (auto& x : y) x = local.uniform(-1.0, 1.0);
                    double dn = m.target().dual_norm(y);
                    if (dn == 0.0) continue;
                    for (auto& x : y) x /= dn;
                    double lhs = scalar_variation(m, y, a);
                    double rhs = semivariation(m, a);
                    if (!approx_le(lhs, rhs, 1e-12))
                        record(v, replay,
                               Json{{"measure", measure_to_json(m)}, {"ystar", y},
                                    {"lhs", lhs}, {"rhs", rhs}});
                }
            });

    reg.add("rybakov-equivalence",
            "the scalarizing functional stays in the dual ball and its control weights "
            "vanish exactly on the null atoms",
            200, [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local, 1, 10);
                    VectorMeasure m = gen::random_measure(local, sp, 4, true);
                    RybakovResult r = rybakov(m, replay);
                    bool ok = m.target().dual_norm(r.ystar) <= 1.0 + 1e-12;
                    for (std::size_t i = 0; i < m.atom_count(); ++i) {
                        bool null_atom = m.atom_norm(i) == 0.0;
                        if (null_atom != (r.control_weights[i] == 0.0)) ok = false;
                    }
                    if (!ok)
                        record(v, replay,
                               Json{{"measure", measure_to_json(m)}, {"ystar", r.ystar},
                                    {"weights", r.control_weights}});
                }
            });

    reg.add("distfn-monotone", "distribution functions are non-increasing step functions", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local, 1, 10);
                    VectorMeasure m = gen::random_measure(local, sp, 3, true);
                    Fn f = gen::random_fn(local, sp);
                    StepFunction s = distribution_function(m, f);
                    bool ok = true;
                    for (int j = 1; j <= 20; ++j) {
                        double t = local.uniform(0.0, 10.0);
                        if (s.value_at(t) != semivariation(m, level_set(f, t))) ok = false;
                    }
                    for (std::size_t j = 1; j < s.values().size(); ++j)
                        if (s.values()[j] > s.values()[j - 1]) ok = false;
                    if (!ok)
                        record(v, replay,
                               Json{{"measure", measure_to_json(m)}, {"fn", fn_to_json(f)}});
                }
            });

    reg.add("choquet-homogeneous", "the Choquet norm is positively homogeneous", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local, 1, 10);
                    VectorMeasure m = gen::random_measure(local, sp, 4, true);
                    Fn f = gen::random_fn(local, sp);
                    double c = local.uniform(-4.0, 4.0);
                    double lhs = choquet_l1_norm(m, scale(f, c));
                    double rhs = std::fabs(c) * choquet_l1_norm(m, f);
                    if (!close(lhs, rhs, 1e-12))
                        record(v, replay,
                               Json{{"measure", measure_to_json(m)}, {"fn", fn_to_json(f)},
                                    {"c", c}, {"lhs", lhs}, {"rhs", rhs}});
                }
            });

    reg.add("choquet-scalar-collapse",
            "for positive scalar measures the Choquet norm is the weighted L1 norm", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local, 1, 10);
                    std::vector<std::vector<double>> vs(sp->size());
                    for (auto& row : vs) row = {local.uniform(0.1, 4.0)};
                    VectorMeasure m(sp, TargetNorm{1, NormKind::l2}, vs);
                    Fn f = gen::random_fn(local, sp);
                    double lhs = choquet_l1_norm(m, f);
                    double rhs = 0.0;
                    for (std::size_t i = 0; i < f.size(); ++i) rhs += std::fabs(f[i]) * vs[i][0];
                    bump(v, "max_rel_diff", std::fabs(lhs - rhs) / std::max(1.0, rhs));
                    if (!close(lhs, rhs, 1e-12))
                        record(v, replay,
                               Json{{"measure", measure_to_json(m)}, {"fn", fn_to_json(f)},
                                    {"lhs", lhs}, {"rhs", rhs}});
                }
            });

    // -- quasi-normed space axioms -------------------------------------------

    reg.add("qbfs-axioms",
            "Q1-Q3, lattice monotonicity and indicator membership for every base kind", 250,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local, 2, 8);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    QuasiNormedSpace X = local.coin(0.25)
                                             ? power_space(base.X, local.uniform(0.4, 2.0))
                                             : base.X;
                    Fn f = gen::random_nonzero_fn(local, sp);
                    Fn g = gen::random_fn(local, sp);
                    double c = local.uniform(-5.0, 5.0);
                    bool ok = true;
                    Json why;
                    if (!(X(f) > 0.0)) { ok = false; why["q1"] = X(f); }
                    if (X(Fn(sp, std::vector<double>(sp->size(), 0.0))) != 0.0) ok = false;
                    if (!close(X(scale(f, c)), std::fabs(c) * X(f), 1e-12)) {
                        ok = false;
                        why["q2"] = true;
                    }
                    double q3 = X(add(f, g)) / std::max(1e-300, X.K() * (X(f) + X(g)));
                    bump(v, "q3_utilization", q3);
                    if (!(X(add(f, g)) <= X.K() * (X(f) + X(g)) * (1.0 + 1e-9))) {
                        ok = false;
                        why["q3"] = q3;
                    }
                    Fn smaller(sp, [&] {
                        std::vector<double> sv(sp->size());
                        for (std::size_t i = 0; i < sp->size(); ++i)
                            sv[i] = f[i] * local.uniform(0.0, 1.0);
                        return sv;
                    }());
                    if (!approx_le(X(smaller), X(f), 1e-12)) { ok = false; why["lattice"] = true; }
                    double chi = X(indicator(sp, full_set(sp->size())));
                    if (!std::isfinite(chi) || chi <= 0.0) { ok = false; why["indicator"] = chi; }
                    if (!ok) {
                        why["base"] = base.desc;
                        why["fn"] = fn_to_json(f);
                        record(v, replay, why);
                    }
                }
            });

    reg.add("qbfs-sup-inclusion",
            "qnorm(f) is at most the sup norm of f times the indicator norm", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    Fn f = gen::random_fn(local, sp);
                    double sup = 0.0;
                    for (double x : f.values()) sup = std::max(sup, std::fabs(x));
                    double lhs = base.X(f);
                    double rhs = sup * base.X(indicator(sp, full_set(sp->size())));
                    if (!approx_le(lhs, rhs, 1e-12))
                        record(v, replay,
                               Json{{"base", base.desc}, {"fn", fn_to_json(f)},
                                    {"lhs", lhs}, {"rhs", rhs}});
                }
            });

    reg.add("qbfs-fatou-masking",
            "along masked increasing chains the norms climb to the norm of the limit", 100,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    if (!base.X.tags().sigma_fatou) continue;
                    Fn f = abs(gen::random_nonzero_fn(local, sp));
                    std::vector<std::size_t> order(sp->size());
                    for (std::size_t i = 0; i < sp->size(); ++i) order[i] = i;
                    for (std::size_t i = sp->size(); i > 1; --i)
                        std::swap(order[i - 1], order[local.index(i)]);
                    AtomSet grow(sp->size());
                    double sup = 0.0;
                    bool monotone = true;
                    double prev = 0.0;
                    for (std::size_t i = 0; i < sp->size(); ++i) {
                        grow.set(order[i]);
                        double cur = base.X(restrict(f, grow));
                        if (cur < prev - 1e-12) monotone = false;
                        prev = cur;
                        sup = std::max(sup, cur);
                    }
                    if (!monotone || sup != base.X(f))
                        record(v, replay, Json{{"base", base.desc}, {"fn", fn_to_json(f)}});
                }
            });

    // -- Luxemburg machinery ----------------------------------------------------

    reg.add("lux-pnorm-oracle",
            "for power gauges over weighted L1 the Luxemburg norm is the weighted p-norm", 200,
            [](Rng& rng, int n, Verdict& v) {
                const double ps[] = {1.0, 1.5, 2.0, 3.0};
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    double p = ps[k % 4];
                    SpacePtr sp = gen::random_space(local);
                    OrliczSpace os(l1_mu(sp), YoungFunction::power(p));
                    Fn f = gen::random_fn(local, sp);
                    double expected = 0.0;
                    for (std::size_t i = 0; i < f.size(); ++i)
                        expected += std::pow(std::fabs(f[i]), p) * sp->weight(i);
                    expected = std::pow(expected, 1.0 / p);
                    double got = os.luxemburg(f);
                    bump(v, "max_rel_diff",
                         std::fabs(got - expected) / std::max(1.0, expected));
                    if (!close(got, expected, 1e-9))
                        record(v, replay,
                               Json{{"p", p}, {"fn", fn_to_json(f)},
                                    {"space", space_to_json(*sp)}, {"expected", expected},
                                    {"got", got}});
                }
            });

    reg.add("lux-homogeneity", "the Luxemburg norm is absolutely homogeneous", 500,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    OrliczSpace os(base.X, gen::random_young(local));
                    Fn f = gen::random_fn(local, sp, 4.0);
                    double c = local.uniform(-3.0, 3.0);
                    double lhs = os.luxemburg(scale(f, c));
                    double rhs = std::fabs(c) * os.luxemburg(f);
                    if (!close(lhs, rhs, 1e-9))
                        record(v, replay,
                               Json{{"base", base.desc}, {"phi", young_to_json(os.phi())},
                                    {"fn", fn_to_json(f)}, {"c", c},
                                    {"lhs", lhs}, {"rhs", rhs}});
                }
            });

    reg.add("lux-lattice", "the Luxemburg norm is lattice monotone", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    OrliczSpace os(base.X, gen::random_young(local));
                    Fn g = gen::random_fn(local, sp, 4.0);
                    std::vector<double> fv(sp->size());
                    for (std::size_t i = 0; i < sp->size(); ++i)
                        fv[i] = g[i] * local.uniform(0.0, 1.0);
                    Fn f(sp, std::move(fv));
                    if (!approx_le(os.luxemburg(f), os.luxemburg(g), 1e-9))
                        record(v, replay,
                               Json{{"base", base.desc}, {"phi", young_to_json(os.phi())},
                                    {"f", fn_to_json(f)}, {"g", fn_to_json(g)}});
                }
            });

    reg.add("lux-bisection-monotone",
            "the modular is non-increasing in the scaling parameter", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    OrliczSpace os(base.X, gen::random_young_delta2(local));
                    Fn f = gen::random_fn(local, sp, 4.0);
                    double k1 = local.log_uniform(0.1, 10.0);
                    double k2 = k1 * local.uniform(1.0, 4.0);
                    double m1 = base.X(os.apply_phi(f, k1));
                    double m2 = base.X(os.apply_phi(f, k2));
                    if (!approx_le(m2, m1, 1e-12))
                        record(v, replay,
                               Json{{"base", base.desc}, {"phi", young_to_json(os.phi())},
                                    {"fn", fn_to_json(f)}, {"k1", k1}, {"k2", k2}});
                }
            });

    reg.add("chi-norm-formula",
            "indicator norms match the closed reciprocal-inverse-gauge formula", 100,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    gen::BaseDraw base = gen::random_base(local, sp, k % 4);
                    OrliczSpace os(base.X, gen::random_young(local));
                    AtomSet a = gen::random_set(local, sp->size());
                    if (a.empty()) a.set(local.index(sp->size()));
                    double formula = os.char_norm(a);
                    double direct = os.luxemburg(indicator(sp, a));
                    bump(v, "max_rel_diff",
                         std::fabs(formula - direct) / std::max(1.0, formula));
                    if (!close(formula, direct, 1e-9))
                        record(v, replay,
                               Json{{"base", base.desc}, {"phi", young_to_json(os.phi())},
                                    {"formula", formula}, {"direct", direct}});
                }
            });

    reg.add("sup-embedding-bound",
            "the Luxemburg norm is controlled by the sup norm over the indicator gauge", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    OrliczSpace os(base.X, gen::random_young(local));
                    Fn f = local.coin(0.1) ? indicator(sp, full_set(sp->size()))
                                           : gen::random_fn(local, sp, 4.0);
                    auto [lhs, rhs] = os.linf_embedding_bound(f);
                    if (!approx_le(lhs, rhs, 1e-9))
                        record(v, replay,
                               Json{{"base", base.desc}, {"phi", young_to_json(os.phi())},
                                    {"fn", fn_to_json(f)}, {"lhs", lhs}, {"rhs", rhs}});
                }
            });

    reg.add("modular-battery",
            "all four norm/modular inequalities hold on random instances", 1000,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    OrliczSpace os(base.X, gen::random_young(local));
                    Fn f = gen::random_fn(local, sp, 4.0);
                    NormModularReport rep = norm_modular_relations(os, f);
                    if (!rep.all_pass()) {
                        Json items = Json::array();
                        for (const auto& r : rep.relations)
                            items.push_back(Json{{"id", r.id}, {"applicable", r.applicable},
                                                 {"lhs", r.lhs}, {"rhs", r.rhs},
                                                 {"pass", r.pass}});
                        record(v, replay,
                               Json{{"base", base.desc}, {"phi", young_to_json(os.phi())},
                                    {"fn", fn_to_json(f)},
                                    {"luxemburg", rep.luxemburg},
                                    {"modular", rep.modular}, {"items", items}});
                    }
                }
            });

    reg.add("bounded-set-transfer",
            "bounded modulars give bounded norms and bounded norms admit a rescaled gauge", 150,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    OrliczSpace os(base.X, gen::random_young_delta2(local));
                    std::vector<Fn> H;
                    std::size_t count = 1 + local.index(5);
                    for (std::size_t i = 0; i < count; ++i)
                        H.push_back(gen::random_fn(local, sp, 4.0));
                    BoundedSetTransfer t = bounded_set_transfer(os, H);
                    if (!t.bounded_in_orlicz || !t.psi_certified)
                        record(v, replay,
                               Json{{"base", base.desc}, {"phi", young_to_json(os.phi())},
                                    {"modular_sup", t.modular_sup},
                                    {"luxemburg_sup", t.luxemburg_sup},
                                    {"psi_modular_sup", t.psi_modular_sup}});
                }
            });

    reg.add("fatou-transfer",
            "increasing chains reach the norm of their limit in the gauge space", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    YoungFunction phi = gen::random_young(local);
                    for (int kind = 0; kind < 4; ++kind) {
                        gen::BaseDraw base = gen::random_base(local, sp, kind);
                        if (!base.X.tags().sigma_fatou) continue;
                        OrliczSpace os(base.X, phi);
                        Fn f = abs(gen::random_nonzero_fn(local, sp, 4.0));
                        std::vector<std::size_t> order(sp->size());
                        for (std::size_t i = 0; i < sp->size(); ++i) order[i] = i;
                        for (std::size_t i = sp->size(); i > 1; --i)
                            std::swap(order[i - 1], order[local.index(i)]);
                        AtomSet grow(sp->size());
                        double sup = 0.0;
                        for (std::size_t i = 0; i < sp->size(); ++i) {
                            grow.set(order[i]);
                            sup = std::max(sup, os.luxemburg(restrict(f, grow)));
                        }
                        double limit = os.luxemburg(f);
                        if (!close(sup, limit, 1e-9))
                            record(v, replay,
                                   Json{{"base", base.desc}, {"phi", young_to_json(phi)},
                                        {"fn", fn_to_json(f)}, {"sup", sup},
                                        {"limit", limit}});
                    }
                }
            });

    reg.add("delta2-equivalence",
            "for doubling gauges, norm convergence to zero matches modular convergence", 100,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    YoungFunction phi = local.coin() ? YoungFunction::power(local.uniform(1.0, 3.0))
                                                     : YoungFunction::power_log(1.0, 1.0);
                    OrliczSpace os(base.X, phi);
                    Fn f = gen::random_nonzero_fn(local, sp, 4.0);
                    std::vector<Fn> seq;
                    bool null_seq = local.coin();
                    for (int i = 0; i < 60; ++i)
                        seq.push_back(null_seq ? scale(f, std::pow(0.5, i))
                                               : scale(f, 1.0 + 0.5 * (i % 2)));
                    Delta2Consequences rep = delta2_consequences(os, seq);
                    bool expected_zero = null_seq;
                    if (!rep.equivalence_pass || rep.lux_to_zero != expected_zero ||
                        rep.modular_to_zero != expected_zero)
                        record(v, replay,
                               Json{{"base", base.desc}, {"phi", young_to_json(phi)},
                                    {"fn", fn_to_json(f)}, {"null_seq", null_seq},
                                    {"lux_to_zero", rep.lux_to_zero},
                                    {"modular_to_zero", rep.modular_to_zero}});
                }
            });

    reg.add("delta2-order-continuity",
            "for doubling gauges increasing chains converge in norm to their limit", 100,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    OrliczSpace os(base.X, gen::random_young_delta2(local));
                    Fn f = abs(gen::random_nonzero_fn(local, sp, 4.0));
                    std::vector<Fn> chain;
                    AtomSet grow(sp->size());
                    for (std::size_t i = 0; i < sp->size(); ++i) {
                        grow.set(i);
                        chain.push_back(restrict(f, grow));
                    }
                    Delta2Consequences rep = delta2_consequences(os, chain);
                    if (!rep.chain_applicable || !rep.chain_pass)
                        record(v, replay,
                               Json{{"base", base.desc}, {"phi", young_to_json(os.phi())},
                                    {"fn", fn_to_json(f)}});
                }
            });

    reg.add("delta2-estimator-flags",
            "the doubling estimator accepts power-type gauges and flags exponential ones", 40,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    YoungFunction good = gen::random_young_delta2(local);
                    YoungFunction bad = YoungFunction::exp_minus_one(local.uniform(1.0, 2.0));
                    Delta2Estimate eg = delta2_default(good);
                    Delta2Estimate eb = delta2_default(bad);
                    bump(v, "max_bounded_constant", eg.constant);
                    if (!eg.is_delta2() || eb.is_delta2())
                        record(v, replay,
                               Json{{"good", young_to_json(good)}, {"bad", young_to_json(bad)},
                                    {"good_flag", eg.is_delta2()}, {"bad_flag", eb.is_delta2()}});
                }
            });

    reg.add("orlicz-base-inclusion",
            "the base norm is controlled by a finite multiple of the gauge norm; the "
            "observed operator bound is reported, not asserted",
            100, [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    OrliczSpace os(base.X, gen::random_young(local));
                    Fn f = gen::random_nonzero_fn(local, sp, 4.0);
                    double lux = os.luxemburg(f);
                    double bn = base.X(f);
                    if (lux > 0.0) bump(v, "operator_bound", bn / lux);
                    if (!(std::isfinite(bn) && std::isfinite(lux)))
                        record(v, replay, Json{{"base", base.desc}, {"fn", fn_to_json(f)}});
                }
            });

    reg.add("orlicz-q3-inheritance",
            "the gauge space satisfies the quasi-triangle inequality with its base constant",
            1000, [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    OrliczSpace os(base.X, gen::random_young(local));
                    Fn f = gen::random_fn(local, sp, 4.0);
                    Fn g = gen::random_fn(local, sp, 4.0);
                    double lf = os.luxemburg(f), lg = os.luxemburg(g);
                    double lsum = os.luxemburg(add(f, g));
                    if (lf + lg > 0.0) bump(v, "empirical_q3", lsum / (lf + lg));
                    if (!(lsum <= base.X.K() * (lf + lg) * (1.0 + 1e-9) + 1e-15))
                        record(v, replay,
                               Json{{"base", base.desc}, {"phi", young_to_json(os.phi())},
                                    {"f", fn_to_json(f)}, {"g", fn_to_json(g)},
                                    {"lhs", lsum}, {"rhs", base.X.K() * (lf + lg)}});
                }
            });

    // -- vector-measure gauge identities ---------------------------------------

    reg.add("weak-orlicz-identity",
            "the dual-ball grid of scalarized gauge norms stays below the weak-base "
            "Luxemburg norm and matches it for scalar targets",
            100, [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local, 2, 6);
                    TargetNorm t = gen::random_target(local, 3);
                    if (k % 3 == 0) t.dim = 1;
                    std::vector<std::vector<double>> vs(sp->size());
                    for (auto& row : vs) {
                        row.resize(static_cast<std::size_t>(t.dim));
                        for (auto& x : row) x = local.uniform(-3.0, 3.0);
                        if (t.norm(row) < 1e-3) row[0] += 1.0;
                    }
                    VectorMeasure m(sp, t, vs);
                    YoungFunction phi = gen::random_young_delta2(local);
                    std::vector<Fn> samples;
                    for (int i = 0; i < 4; ++i) samples.push_back(gen::random_fn(local, sp, 4.0));
                    VectorOrliczReport rep =
                        vector_orlicz_identities(m, phi, samples, 64, replay);
                    if (!rep.all_pass())
                        record(v, replay,
                               Json{{"measure", measure_to_json(m)},
                                    {"phi", young_to_json(phi)},
                                    {"scalar_exhaustive", rep.scalar_exhaustive},
                                    {"scalar_collapse_pass", rep.scalar_collapse_pass}});
                }
            });

    // -- convexity and interpolation -------------------------------------------

    reg.add("s-convexity",
            "tuple convexity estimates: additive for L1 and finite for the Choquet scale", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local, 2, 6);
                    std::vector<std::vector<Fn>> tuples(1);
                    std::size_t count = 2 + local.index(3);
                    for (std::size_t i = 0; i < count; ++i)
                        tuples[0].push_back(gen::random_fn(local, sp, 4.0));
                    SConvexityReport l1rep = s_convexity_check(l1_mu(sp), 1.0, 1.0, tuples);
                    VectorMeasure m = gen::random_measure(local, sp, 3);
                    SConvexityReport chrep =
                        s_convexity_check(l1_semivar(m), 0.5, 8.0, tuples);
                    bump(v, "choquet_s_half_constant", chrep.best_constant);
                    if (!l1rep.pass || !std::isfinite(chrep.best_constant))
                        record(v, replay,
                               Json{{"measure", measure_to_json(m)},
                                    {"l1_best", l1rep.best_constant},
                                    {"choquet_best", chrep.best_constant}});
                }
            });

    reg.add("lconvexity-transfer",
            "the derived convexity parameter from the doubling constant survives the "
            "randomized refuter on the gauge space",
            100000, [](Rng& rng, int n, Verdict& v) {
                std::uint64_t replay = rng.next_u64();
                SpacePtr sp = unit_space(6);
                QuasiNormedSpace base = l1_mu(sp);
                LConvexityResult base_cert = l_convexity_search(base, 0.49, 10000, 8, replay);
                YoungFunction phi = YoungFunction::power(2.0);
                double s = delta2_default(phi).constant;  // 4 for the square gauge
                double delta = l_convexity_transfer_delta(0.49, s);
                v.constants["delta"] = delta;
                v.constants["doubling_s"] = s;
                OrliczSpace os(base, phi);
                LConvexityResult cert =
                    l_convexity_search(os.as_space(true), delta, n, 8, replay ^ 0x9e3779b9ull);
                if (!base_cert.passed || !cert.passed)
                    record(v, replay,
                           Json{{"base_passed", base_cert.passed},
                                {"gauge_passed", cert.passed},
                                {"delta", delta}});
            });

    reg.add("lconvexity-choquet-powers",
            "the power scale over the Choquet norm survives the convexity refuter", 100000,
            [](Rng& rng, int n, Verdict& v) {
                std::uint64_t replay = rng.next_u64();
                Rng local(replay);
                SpacePtr sp = gen::random_space(local, 4, 6);
                VectorMeasure m = gen::random_measure(local, sp, 3);
                double p = local.uniform(1.0, 3.0);
                QuasiNormedSpace X = power_space(l1_semivar(m), 1.0 / p);
                v.constants["p"] = p;
                LConvexityResult cert = l_convexity_search(X, 0.2, n, 8, replay);
                if (!cert.passed) record(v, replay, Json{{"measure", measure_to_json(m)}, {"p", p}});
            });

    reg.add("cp-orlicz-identity",
            "the constructive factorization, the grid oracle and the combined-gauge norm "
            "agree on the Calderon product of two power-gauge spaces",
            250, [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    bool small = k < n / 5;  // first fifth: oracle-verified supports
                    SpacePtr sp = small ? unit_space(3) : gen::random_space(local, 10, 10);
                    QuasiNormedSpace base = l1_mu(sp);
                    YoungFunction phi0 = YoungFunction::power(local.uniform(1.0, 2.0));
                    YoungFunction phi1 = YoungFunction::power(local.uniform(2.0, 4.0));
                    double theta = local.uniform(0.2, 0.8);
                    std::vector<Fn> samples{gen::random_nonzero_fn(local, sp, 4.0)};
                    CpIdentityReport rep =
                        cp_orlicz_identity(base, phi0, phi1, theta, samples);
                    if (!rep.all_pass())
                        record(v, replay,
                               Json{{"theta", theta}, {"phi0", young_to_json(phi0)},
                                    {"phi1", young_to_json(phi1)},
                                    {"fn", fn_to_json(samples[0])},
                                    {"lower", rep.rows[0].lower},
                                    {"constructive", rep.rows[0].constructive},
                                    {"oracle", rep.rows[0].oracle}});
                }
            });

    reg.add("cp-equal-space",
            "the Calderon product of a space with itself collapses to the space", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = gen::random_space(local, 2, 6);
                    gen::BaseDraw base = gen::random_base(local, sp);
                    double theta = local.uniform(0.1, 0.9);
                    CalderonInstance inst = make_calderon(base.X, base.X, theta);
                    Fn f = gen::random_nonzero_fn(local, sp, 4.0);
                    CalderonUpper u = calderon_norm_upper(inst, f, CalderonMethod::Alternating);
                    double qn = base.X(f);
                    FactorizationCheck fc = check_factorization(inst, f, u.factorization());
                    if (!close(u.value, qn, 1e-9) || !fc.ok())
                        record(v, replay,
                               Json{{"base", base.desc}, {"fn", fn_to_json(f)},
                                    {"theta", theta}, {"lambda", u.value}, {"qnorm", qn}});
                }
            });

    reg.add("cp-method-monotone",
            "oracle below alternating below the first feasible certificate", 100,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = unit_space(3);
                    QuasiNormedSpace x0 = l1_mu(sp);
                    QuasiNormedSpace x1 = power_space(l1_mu(sp), 1.0 / local.uniform(1.5, 3.0));
                    double theta = local.uniform(0.2, 0.8);
                    CalderonInstance inst = make_calderon(x0, x1, theta);
                    Fn f = gen::random_nonzero_fn(local, sp, 4.0);
                    CalderonUpper oracle = calderon_norm_upper(inst, f, CalderonMethod::GridOracle);
                    CalderonUpper alt = calderon_norm_upper(inst, f, CalderonMethod::Alternating);
                    bool ok = approx_le(oracle.value, alt.value, 1e-9) &&
                              approx_le(alt.value, alt.initial, 1e-9) &&
                              check_factorization(inst, f, oracle.factorization()).ok() &&
                              check_factorization(inst, f, alt.factorization()).ok();
                    if (!ok)
                        record(v, replay,
                               Json{{"fn", fn_to_json(f)}, {"theta", theta},
                                    {"oracle", oracle.value}, {"alternating", alt.value},
                                    {"initial", alt.initial}});
                }
            });

    reg.add("cp-power-commutation",
            "taking powers commutes with the Calderon product on oracle-sized supports", 50,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    SpacePtr sp = unit_space(3);
                    QuasiNormedSpace x0 = l1_mu(sp);
                    QuasiNormedSpace x1 = power_space(l1_mu(sp), 1.0 / local.uniform(1.5, 3.0));
                    double theta = local.uniform(0.2, 0.8);
                    double r = local.uniform(0.5, 2.0);
                    Fn f = gen::random_nonzero_fn(local, sp, 3.0);
                    double lhs = power_space(calderon_oracle_space(x0, x1, theta), r)(f);
                    double rhs =
                        calderon_oracle_space(power_space(x0, r), power_space(x1, r), theta)(f);
                    bump(v, "max_rel_diff", std::fabs(lhs - rhs) / std::max(1.0, rhs));
                    if (!close(lhs, rhs, 1e-6))
                        record(v, replay,
                               Json{{"fn", fn_to_json(f)}, {"theta", theta}, {"r", r},
                                    {"lhs", lhs}, {"rhs", rhs}});
                }
            });

    reg.add("interp-exponent-identity",
            "interpolating power gauges over the Choquet base lands on the expected "
            "power of the Choquet scale",
            200, [](Rng& rng, int n, Verdict& v) {
                const double cfg[][3] = {{1.0, 3.0, 0.5}, {2.0, 4.0, 0.25}, {1.5, 2.0, 0.75}};
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    const auto& c = cfg[k % 3];
                    double p0 = c[0], p1 = c[1], theta = c[2];
                    double p = 1.0 / ((1.0 - theta) / p0 + theta / p1);
                    SpacePtr sp = gen::random_space(local, 2, 6);
                    VectorMeasure m = gen::random_measure(local, sp, 3);
                    QuasiNormedSpace base = l1_semivar(m);
                    InterpolationOptions opts;
                    opts.trials = 200;
                    opts.seed = replay;
                    InterpolationResult res = complex_interpolation(
                        base, YoungFunction::power(p0), YoungFunction::power(p1), theta, opts);
                    QuasiNormedSpace expected = power_space(base, 1.0 / p);
                    Fn f = gen::random_fn(local, sp, 4.0);
                    double got = res.space.luxemburg(f);
                    double want = expected(f);
                    bump(v, "max_rel_diff", std::fabs(got - want) / std::max(1.0, want));
                    if (!close(got, want, 1e-9))
                        record(v, replay,
                               Json{{"measure", measure_to_json(m)}, {"p0", p0}, {"p1", p1},
                                    {"theta", theta}, {"fn", fn_to_json(f)},
                                    {"got", got}, {"want", want}});
                }
            });

    // -- gauge-level properties --------------------------------------------------

    reg.add("young-axioms",
            "validated gauges are strictly increasing, convex, correctly scaled and "
            "invert to themselves",
            200, [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    YoungFunction phi = gen::random_young(local);
                    bool ok = true;
                    Json why;
                    double hi = std::min(phi.domain_cap() / 2.1, 50.0);
                    double prev_t = 0.0, prev_v = 0.0, prev_slope = -1.0;
                    for (int j = 1; j <= 24; ++j) {
                        double t = hi * std::pow(1e-5, 1.0 - j / 24.0);
                        double val = phi.eval(t);
                        if (!(val > prev_v)) { ok = false; why["monotone"] = t; }
                        double slope = (val - prev_v) / (t - prev_t);
                        if (prev_slope >= 0.0 && slope < prev_slope * (1.0 - 1e-10)) {
                            ok = false;
                            why["convex"] = t;
                        }
                        double rt = phi.inverse(val);
                        if (std::fabs(rt - t) > 1e-9 * std::max(1.0, t)) {
                            ok = false;
                            why["round_trip"] = t;
                        }
                        prev_t = t;
                        prev_v = val;
                        prev_slope = slope;
                    }
                    for (int j = 0; j < 5; ++j) {
                        double t = local.uniform(0.0, hi);
                        double a_small = local.uniform(0.0, 1.0);
                        double a_big = 1.0 + local.uniform(0.0, 4.0);
                        if (phi.eval(a_small * t) > a_small * phi.eval(t) + 1e-12) {
                            ok = false;
                            why["scale_small"] = t;
                        }
                        if (a_big * t <= phi.domain_cap() &&
                            phi.eval(a_big * t) < a_big * phi.eval(t) - 1e-12) {
                            ok = false;
                            why["scale_big"] = t;
                        }
                    }
                    if (!ok) {
                        why["phi"] = young_to_json(phi);
                        record(v, replay, why);
                    }
                }
            });

    reg.add("young-quasi-subadditive",
            "the convexity splitting bound dominates the gauge of a sum", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    YoungFunction phi = gen::random_young_delta2(local);
                    double alpha = 1.0 + local.uniform(0.0, 2.0);
                    std::vector<double> ts(1 + local.index(5));
                    for (auto& t : ts) t = local.uniform(0.0, 3.0);
                    auto [lhs, rhs] = quasi_subadditive_bound(phi, alpha, ts);
                    if (!(lhs <= rhs * (1.0 + 1e-9) + 1e-15))
                        record(v, replay,
                               Json{{"phi", young_to_json(phi)}, {"alpha", alpha}, {"ts", ts},
                                    {"lhs", lhs}, {"rhs", rhs}});
                }
            });

    reg.add("young-calderon-power",
            "combining power gauges gives the harmonic-mean exponent", 200,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    double p0 = local.uniform(1.0, 3.0);
                    double p1 = local.uniform(1.0, 4.0);
                    double theta = local.uniform(0.1, 0.9);
                    double p = 1.0 / ((1.0 - theta) / p0 + theta / p1);
                    YoungFunction combined =
                        calderon_combine(YoungFunction::power(p0), YoungFunction::power(p1), theta);
                    YoungFunction direct = YoungFunction::power(p);
                    bool ok = true;
                    double worst = 0.0;
                    for (int j = 0; j < 12; ++j) {
                        double t = local.log_uniform(1e-3, 1e3);
                        double a = combined.eval(t), b = direct.eval(t);
                        worst = std::max(worst, std::fabs(a - b) / std::max(1e-300, b));
                        if (!close(a, b, 1e-9)) ok = false;
                    }
                    bump(v, "max_rel_diff", worst);
                    if (!ok)
                        record(v, replay,
                               Json{{"p0", p0}, {"p1", p1}, {"theta", theta}, {"p", p}});
                }
            });

    return reg;
}

/// A bundled id -> statement index for the registry; every check appears here.
inline Json registry_index(const Registry& reg) {
    Json idx = Json::object();
    for (const auto& c : reg.checks()) idx[c.id] = c.statement;
    return idx;
}

inline int default_thread_count() {
    if (const char* env = std::getenv("ORLICZ_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(std::min(hc, 8u));
}

/// Runs every check whose id matches the glob. Deterministic in
/// (filter, seed, budget): each check derives its stream from the seed and
/// its id, and verdicts are assembled in id order regardless of scheduling.
/// budget <= 0 keeps each check's default instance count.
inline std::vector<Verdict> run_suite(const Registry& reg, const std::string& filter,
                                      std::uint64_t seed, int budget = 0, int threads = 0) {
    // a filter is a comma-separated list of globs
    std::vector<std::string> globs;
    std::string cur;
    for (char c : filter) {
        if (c == ',') { globs.push_back(cur); cur.clear(); }
        else cur += c;
    }
    globs.push_back(cur);
    auto matches = [&globs](const std::string& id) {
        for (const auto& g : globs)
            if (g.empty() || glob_match(g, id)) return true;
        return false;
    };
    std::vector<const CheckSpec*> selected;
    for (const auto& c : reg.checks())
        if (matches(c.id)) selected.push_back(&c);
    if (selected.empty()) throw UnknownFilterError("no checks match filter '" + filter + "'");
    std::sort(selected.begin(), selected.end(),
              [](const CheckSpec* a, const CheckSpec* b) { return a->id < b->id; });

    std::vector<Verdict> out(selected.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= selected.size()) return;
            const CheckSpec& c = *selected[i];
            Verdict verdict;
            verdict.id = c.id;
            verdict.statement = c.statement;
            verdict.instances = budget > 0 ? budget : c.default_instances;
            Rng rng(derive_seed(seed, c.id));
            try {
                c.run(rng, verdict.instances, verdict);
            } catch (const std::exception& e) {
                // a throwing check is itself a failure, never a crashed run
                verdict.failures.push_back(
                    Failure{derive_seed(seed, c.id), Json{{"exception", e.what()}}});
            }
            out[i] = std::move(verdict);
        }
    };
    int nthreads = threads > 0 ? threads : default_thread_count();
    if (nthreads <= 1 || selected.size() <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min<int>(nthreads, static_cast<int>(selected.size())); ++t)
            pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return out;
}

inline Json verdicts_to_json(const std::vector<Verdict>& verdicts, const std::string& filter,
                             std::uint64_t seed, int budget) {
    Json checks = Json::array();
    for (const auto& v : verdicts) {
        Json failures = Json::array();
        for (const auto& f : v.failures)
            failures.push_back(Json{{"replay_seed", f.replay_seed},
                                    {"counterexample", f.counterexample}});
        checks.push_back(Json{{"check", v.id},
                              {"statement", v.statement},
                              {"instances", v.instances},
                              {"failures", failures},
                              {"constants", v.constants},
                              {"pass", v.pass()}});
    }
    return Json{{"v", kSchemaVersion},
                {"filter", filter},
                {"seed", seed},
                {"budget", budget},
                {"checks", checks}};
}

} // namespace orlicz
