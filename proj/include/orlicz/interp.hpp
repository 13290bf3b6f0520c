#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/orlicz_space.hpp"
#include "orlicz/qbfs.hpp"
#include "orlicz/rng.hpp"
#include "orlicz/space.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

/// Witness for membership in a Calderon product: |f| <= lambda * |f0|^(1-theta) * |f1|^theta
/// pointwise, with both factors in the unit balls.
struct Factorization {
    Fn f0;
    Fn f1;
    double lambda = 0.0;
};

struct CalderonInstance {
    QuasiNormedSpace x0;
    QuasiNormedSpace x1;
    double theta;
    // present when both spaces are Orlicz over one base, enabling the
    // constructive factorization route
    std::optional<OrliczSpace> orlicz0;
    std::optional<OrliczSpace> orlicz1;
};

inline CalderonInstance make_calderon(QuasiNormedSpace x0, QuasiNormedSpace x1, double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw PreconditionError("calderon: theta must be in (0,1)");
    if (!same_space(x0.carrier(), x1.carrier()))
        throw SpaceMismatchError("calderon: spaces must share the carrier");
    return CalderonInstance{std::move(x0), std::move(x1), theta, std::nullopt, std::nullopt};
}

inline CalderonInstance make_calderon_orlicz(const QuasiNormedSpace& base, const YoungFunction& phi0,
                                             const YoungFunction& phi1, double theta,
                                             double tol = 1e-10) {
    if (!(theta > 0.0 && theta < 1.0)) throw PreconditionError("calderon: theta must be in (0,1)");
    OrliczSpace o0(base, phi0, tol), o1(base, phi1, tol);
    CalderonInstance inst{o0.as_space(), o1.as_space(), theta, o0, o1};
    return inst;
}

struct FactorizationCheck {
    bool pointwise_ok = false;
    double f0_norm = 0.0;
    double f1_norm = 0.0;
    bool balls_ok = false;
    bool ok() const { return pointwise_ok && balls_ok; }
};

inline FactorizationCheck check_factorization(const CalderonInstance& inst, const Fn& f,
                                              const Factorization& fac) {
    FactorizationCheck c;
    c.pointwise_ok = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double rhs = fac.lambda * std::pow(std::fabs(fac.f0[i]), 1.0 - inst.theta) *
                     std::pow(std::fabs(fac.f1[i]), inst.theta);
        double lhs = std::fabs(f[i]);
        if (lhs > rhs + 1e-12 * std::max(lhs, rhs) + 1e-300) c.pointwise_ok = false;
    }
    c.f0_norm = inst.x0(fac.f0);
    c.f1_norm = inst.x1(fac.f1);
    c.balls_ok = c.f0_norm <= 1.0 + 1e-9 && c.f1_norm <= 1.0 + 1e-9;
    return c;
}

/// Constructive factorization through the combined gauge: with
/// Phi^{-1} = (Phi0^{-1})^{1-theta} (Phi1^{-1})^theta and c the Luxemburg
/// norm of f in base^Phi, the level function h = Phi(|f|/c) splits as
/// f0 = Phi0^{-1}(h), f1 = Phi1^{-1}(h), and both factors land on the unit
/// sphere, so lambda = c up to solver tolerance.
inline Factorization orlicz_factorize(const QuasiNormedSpace& base, const YoungFunction& phi0,
                                      const YoungFunction& phi1, double theta, const Fn& f,
                                      double tol = 1e-10) {
    if (f.is_zero()) throw ZeroFunctionError("orlicz_factorize: zero function");
    YoungFunction phi = calderon_combine(phi0, phi1, theta);
    OrliczSpace combined(base, phi, tol);
    const double c = combined.luxemburg(f);
    if (c == 0.0)
        throw MethodInapplicableError("orlicz_factorize: base degenerates on the support");

    std::vector<double> h(f.size()), v0(f.size()), v1(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        h[i] = phi.eval(std::fabs(f[i]) / c);
        v0[i] = phi0.inverse(h[i]);
        v1[i] = phi1.inverse(h[i]);
    }
    Fn f0(f.space(), std::move(v0));
    Fn f1(f.space(), std::move(v1));

    OrliczSpace o0(base, phi0, tol), o1(base, phi1, tol);
    const double alpha = std::max(o0.luxemburg(f0), o1.luxemburg(f1));
    Factorization fac{scale(f0, 1.0 / alpha), scale(f1, 1.0 / alpha), c * alpha};
    return fac;
}

enum class CalderonMethod { OrliczConstructive, Alternating, GridOracle };

inline CalderonMethod parse_calderon_method(const std::string& s) {
    if (s == "orlicz-constructive") return CalderonMethod::OrliczConstructive;
    if (s == "alternating") return CalderonMethod::Alternating;
    if (s == "grid-oracle") return CalderonMethod::GridOracle;
    throw ParseError("unknown calderon method '" + s + "'");
}

struct CalderonUpper {
    double value = 0.0;
    std::optional<Factorization> fac;
    bool converged = true;
    int iterations = 0;
    double initial = 0.0;  // lambda of the first feasible factorization tried

    const Factorization& factorization() const {
        if (!fac) throw Error("calderon: no factorization attached");
        return *fac;
    }
};

namespace detail {

// Pointwise-equality factorizations are parametrized per atom by a positive
// ratio rho: g0 = |f| rho^theta, g1 = |f| rho^-(1-theta). lambda is invariant
// under a global rescaling of rho, so the first support atom is anchored.
inline double cp_lambda_of_ratios(const CalderonInstance& inst, const Fn& f,
                                  const std::vector<double>& log_rho,
                                  const std::vector<std::size_t>& supp_idx,
                                  std::optional<Factorization>* fac_out = nullptr) {
    const double theta = inst.theta;
    std::vector<double> g0(f.size(), 0.0), g1(f.size(), 0.0);
    for (std::size_t j = 0; j < supp_idx.size(); ++j) {
        const std::size_t i = supp_idx[j];
        const double af = std::fabs(f[i]);
        g0[i] = af * std::exp(theta * log_rho[j]);
        g1[i] = af * std::exp(-(1.0 - theta) * log_rho[j]);
    }
    Fn F0(f.space(), std::move(g0)), F1(f.space(), std::move(g1));
    const double n0 = inst.x0(F0), n1 = inst.x1(F1);
    if (n0 == 0.0 || n1 == 0.0)
        throw MethodInapplicableError("calderon: factor space degenerates on the support");
    double lambda = std::pow(n0, 1.0 - theta) * std::pow(n1, theta);
    if (fac_out) *fac_out = Factorization{scale(F0, 1.0 / n0), scale(F1, 1.0 / n1), lambda};
    return lambda;
}

inline CalderonUpper cp_alternating(const CalderonInstance& inst, const Fn& f) {
    const double theta = inst.theta;
    std::vector<std::size_t> supp_idx;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] != 0.0) supp_idx.push_back(i);

    // equal-split start: g0 = g1 = |f|
    std::vector<double> g1(f.size(), 0.0);
    for (std::size_t i : supp_idx) g1[i] = std::fabs(f[i]);

    CalderonUpper best;
    best.value = std::numeric_limits<double>::infinity();
    double prev = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < 500; ++iter) {
        Fn F1(f.space(), g1);
        const double n1 = inst.x1(F1);
        if (n1 == 0.0) throw MethodInapplicableError("calderon: degenerate factor");
        Fn u1 = scale(F1, 1.0 / n1);

        std::vector<double> g0(f.size(), 0.0);
        for (std::size_t i : supp_idx)
            g0[i] = std::pow(std::fabs(f[i]) / std::pow(u1[i], theta), 1.0 / (1.0 - theta));
        Fn F0(f.space(), g0);
        const double n0 = inst.x0(F0);
        if (n0 == 0.0) throw MethodInapplicableError("calderon: degenerate factor");
        Fn u0 = scale(F0, 1.0 / n0);

        const double lambda = std::pow(n0, 1.0 - theta);  // u1 is on the unit sphere
        if (iter == 0) best.initial = lambda;
        if (lambda < best.value) best.value = lambda, best.fac = Factorization{u0, u1, lambda};
        best.iterations = iter + 1;
        if (std::fabs(lambda - prev) <= 1e-8 * std::max(lambda, 1e-300)) {
            best.converged = true;
            return best;
        }
        prev = lambda;

        // reallocate the other factor against the fixed unit f0
        for (std::size_t i : supp_idx)
            g1[i] = std::pow(std::fabs(f[i]) / std::pow(u0[i], 1.0 - theta), 1.0 / theta);
    }
    best.converged = false;
    return best;
}

inline CalderonUpper cp_grid_oracle(const CalderonInstance& inst, const Fn& f) {
    std::vector<std::size_t> supp_idx;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] != 0.0) supp_idx.push_back(i);
    if (supp_idx.size() > 3)
        throw MethodInapplicableError("grid-oracle: support limited to 3 atoms");

    const std::size_t free_atoms = supp_idx.size() - 1;  // first atom anchored at rho = 1
    std::vector<double> log_rho(supp_idx.size(), 0.0);
    CalderonUpper out;
    out.initial = cp_lambda_of_ratios(inst, f, log_rho, supp_idx);
    if (free_atoms == 0) {
        out.value = cp_lambda_of_ratios(inst, f, log_rho, supp_idx, &out.fac);
        out.iterations = 1;
        return out;
    }

    const int pts = 64;
    std::vector<double> center(free_atoms, 0.0);
    double halfwidth = 18.0;
    std::vector<double> best_coords(free_atoms, 0.0);
    double best = std::numeric_limits<double>::infinity();

    for (int pass = 0; pass < 6; ++pass) {
        const double step = 2.0 * halfwidth / (pts - 1);
        std::vector<int> idx(free_atoms, 0);
        while (true) {
            for (std::size_t a = 0; a < free_atoms; ++a)
                log_rho[a + 1] = center[a] - halfwidth + idx[a] * step;
            double lambda = cp_lambda_of_ratios(inst, f, log_rho, supp_idx);
            ++out.iterations;
            if (lambda < best) {
                best = lambda;
                for (std::size_t a = 0; a < free_atoms; ++a) best_coords[a] = log_rho[a + 1];
            }
            std::size_t a = 0;
            while (a < free_atoms && ++idx[a] == pts) idx[a++] = 0;
            if (a == free_atoms) break;
        }
        center = best_coords;
        halfwidth = 2.0 * step;
    }
    for (std::size_t a = 0; a < free_atoms; ++a) log_rho[a + 1] = best_coords[a];
    out.value = cp_lambda_of_ratios(inst, f, log_rho, supp_idx, &out.fac);
    return out;
}

} // namespace detail

/// Feasible lambda with its witnessing factorization, an upper bound on the
/// Calderon product norm. `orlicz-constructive` needs the Orlicz structure;
/// `alternating` is the general pointwise reallocation loop; `grid-oracle`
/// exhausts ratio shapes on supports of up to three atoms.
inline CalderonUpper calderon_norm_upper(const CalderonInstance& inst, const Fn& f,
                                         CalderonMethod method) {
    if (f.is_zero()) {
        Fn zero(f.space(), std::vector<double>(f.size(), 0.0));
        return CalderonUpper{0.0, Factorization{zero, zero, 0.0}, true, 0, 0.0};
    }
    switch (method) {
        case CalderonMethod::OrliczConstructive: {
            if (!inst.orlicz0 || !inst.orlicz1)
                throw MethodInapplicableError(
                    "orlicz-constructive requires both spaces to be Orlicz over one base");
            Factorization fac =
                orlicz_factorize(inst.orlicz0->base(), inst.orlicz0->phi(), inst.orlicz1->phi(),
                                 inst.theta, f, inst.orlicz0->tol());
            return CalderonUpper{fac.lambda, fac, true, 1, fac.lambda};
        }
        case CalderonMethod::Alternating:
            return detail::cp_alternating(inst, f);
        case CalderonMethod::GridOracle:
            return detail::cp_grid_oracle(inst, f);
    }
    throw Error("unreachable");
}

/// Test-scale evaluator view of the Calderon product (grid oracle inside,
/// so supports are limited to three atoms).
inline QuasiNormedSpace calderon_oracle_space(const QuasiNormedSpace& x0,
                                              const QuasiNormedSpace& x1, double theta) {
    CalderonInstance inst = make_calderon(x0, x1, theta);
    auto eval = [inst](const Fn& f) {
        if (f.is_zero()) return 0.0;
        return detail::cp_grid_oracle(inst, f).value;
    };
    double K = std::pow(x0.K(), 1.0 - theta) * std::pow(x1.K(), theta);
    SpaceTags tags{x0.tags().is_norm && x1.tags().is_norm, false, false};
    std::string name = "CP(" + x0.name() + "," + x1.name() + ")";
    return QuasiNormedSpace(std::move(name), x0.carrier(), eval, K, tags);
}

struct CpIdentityRow {
    double lower = 0.0;         // Luxemburg norm in base^Phi
    double constructive = 0.0;  // lambda from the constructive factorization
    double oracle = -1.0;       // grid optimum, when the support allows it
    bool one_sided_ok = false;
    bool two_sided_ok = true;  // vacuous without the oracle
};

struct CpIdentityReport {
    std::vector<CpIdentityRow> rows;
    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.one_sided_ok || !r.two_sided_ok) return false;
        return true;
    }
};

/// Calderon product of two Orlicz spaces over one base against the combined
/// gauge: the constructive route certifies the product norm from above, the
/// Luxemburg norm of base^Phi from below, and on small supports the grid
/// oracle confirms the two-sided identity.
inline CpIdentityReport cp_orlicz_identity(const QuasiNormedSpace& base, const YoungFunction& phi0,
                                           const YoungFunction& phi1, double theta,
                                           const std::vector<Fn>& samples, double tol = 1e-10) {
    CpIdentityReport rep;
    YoungFunction phi = calderon_combine(phi0, phi1, theta);
    OrliczSpace combined(base, phi, tol);
    CalderonInstance inst = make_calderon_orlicz(base, phi0, phi1, theta, tol);
    for (const Fn& f : samples) {
        CpIdentityRow row;
        if (f.is_zero()) {
            row.one_sided_ok = true;
            rep.rows.push_back(row);
            continue;
        }
        row.lower = combined.luxemburg(f);
        row.constructive = orlicz_factorize(base, phi0, phi1, theta, f, tol).lambda;
        row.one_sided_ok = row.lower <= row.constructive * (1.0 + 1e-6);
        if (support(f).count() <= 3) {
            row.oracle = detail::cp_grid_oracle(inst, f).value;
            double scale_ref = std::max({row.oracle, row.constructive, row.lower});
            row.two_sided_ok = std::fabs(row.constructive - row.oracle) <= 1e-6 * scale_ref &&
                               std::fabs(row.lower - row.oracle) <= 1e-6 * scale_ref;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

struct LConvexityWitness {
    Fn f;
    std::vector<Fn> parts;
    double f_norm = 0.0;
    double max_part_norm = 0.0;
};

struct LConvexityResult {
    bool passed = false;  // no witness found within the budget
    double eps = 0.0;
    int trials = 0;
    int n_max = 0;
    std::optional<LConvexityWitness> witness;
};

/// Randomized refuter for lattice convexity at a given eps: searches for
/// 0 <= f_i <= f with mean(f_i) >= (1-eps) f pointwise yet every part small,
/// max ||f_i|| < eps ||f||. A pass is budget-relative, not a proof.
inline LConvexityResult l_convexity_search(const QuasiNormedSpace& X, double eps, int trials,
                                           int n_max, std::uint64_t seed = 0x5eedULL) {
    if (trials < 1) throw PreconditionError("l_convexity_search: trials must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("l_convexity_search: eps in (0,1)");
    if (n_max < 1) throw PreconditionError("l_convexity_search: n_max must be >= 1");
    LConvexityResult out;
    out.eps = eps;
    out.trials = trials;
    out.n_max = n_max;
    Rng rng(seed);
    const std::size_t atoms = X.carrier()->size();

    for (int trial = 0; trial < trials; ++trial) {
        const int n = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n_max)));
        std::vector<double> fv(atoms);
        for (auto& v : fv) v = rng.coin(0.2) ? 0.0 : rng.uniform(0.05, 10.0);
        Fn f(X.carrier(), fv);
        const double nf = X(f);
        if (nf == 0.0) continue;

        // deficit matrix: parts are f scaled by b_i with per-atom mean >= 1-eps
        std::vector<std::vector<double>> b(static_cast<std::size_t>(n),
                                           std::vector<double>(atoms, 1.0));
        const std::size_t strategy = rng.index(3);
        for (std::size_t w = 0; w < atoms; ++w) {
            if (fv[w] == 0.0) continue;
            if (strategy == 0) {
                // zero out floor(eps*n) randomly chosen parts entirely
                int kill = static_cast<int>(std::floor(eps * n));
                std::vector<int> order(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
                for (int i = 0; i < kill; ++i) {
                    std::size_t j = i + rng.index(static_cast<std::size_t>(n - i));
                    std::swap(order[static_cast<std::size_t>(i)], order[j]);
                    b[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])][w] = 0.0;
                }
            } else if (strategy == 1) {
                // spread the allowed deficit eps*n proportionally to raw draws
                std::vector<double> raw(static_cast<std::size_t>(n));
                double sum = 0.0;
                for (auto& r : raw) sum += (r = rng.uniform(0.0, 1.0));
                if (sum == 0.0) continue;
                for (int i = 0; i < n; ++i) {
                    double d = eps * n * raw[static_cast<std::size_t>(i)] / sum;
                    b[static_cast<std::size_t>(i)][w] = std::max(0.0, 1.0 - d);
                }
            } else {
                // dump the whole deficit on one part
                std::size_t j = rng.index(static_cast<std::size_t>(n));
                b[j][w] = std::max(0.0, 1.0 - eps * n);
            }
        }

        std::vector<Fn> parts;
        parts.reserve(static_cast<std::size_t>(n));
        double max_norm = 0.0;
        for (int i = 0; i < n; ++i) {
            std::vector<double> pv(atoms);
            for (std::size_t w = 0; w < atoms; ++w) pv[w] = b[static_cast<std::size_t>(i)][w] * fv[w];
            parts.emplace_back(X.carrier(), std::move(pv));
            max_norm = std::max(max_norm, X(parts.back()));
        }

        // re-verify the mean constraint before accepting a witness
        if (max_norm < eps * nf * (1.0 - 1e-9)) {
            bool feasible = true;
            for (std::size_t w = 0; w < atoms && feasible; ++w) {
                double mean = 0.0;
                for (const auto& p : parts) mean += p[w];
                mean /= n;
                if (mean < (1.0 - eps) * fv[w] - 1e-12 * fv[w]) feasible = false;
            }
            if (feasible) {
                out.witness = LConvexityWitness{f, std::move(parts), nf, max_norm};
                out.trials = trial + 1;
                return out;
            }
        }
    }
    out.passed = true;
    return out;
}

struct SConvexityReport {
    double s = 0.0;
    double declared_constant = 0.0;
    double best_constant = 0.0;  // largest observed lhs / (sum ||f||^s)^(1/s)
    int violations = 0;
    bool pass = true;
};

/// ||(sum |f_k|^s)^(1/s)|| <= C (sum ||f_k||^s)^(1/s) for each tuple.
inline SConvexityReport s_convexity_check(const QuasiNormedSpace& X, double s, double C,
                                          const std::vector<std::vector<Fn>>& tuples) {
    if (!(s > 0.0)) throw PreconditionError("s_convexity_check: s must be positive");
    if (!(C >= 1.0)) throw PreconditionError("s_convexity_check: C must be >= 1");
    SConvexityReport rep;
    rep.s = s;
    rep.declared_constant = C;
    for (const auto& tuple : tuples) {
        if (tuple.empty()) continue;
        std::vector<double> acc(X.carrier()->size(), 0.0);
        double norm_sum = 0.0;
        for (const Fn& f : tuple) {
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] += std::pow(std::fabs(f[i]), s);
            norm_sum += std::pow(X(f), s);
        }
        for (auto& v : acc) v = std::pow(v, 1.0 / s);
        double lhs = X(Fn(X.carrier(), std::move(acc)));
        double rhs_core = std::pow(norm_sum, 1.0 / s);
        if (rhs_core > 0.0) rep.best_constant = std::max(rep.best_constant, lhs / rhs_core);
        if (lhs > C * rhs_core + relation_slack(C * rhs_core)) {
            ++rep.violations;
            rep.pass = false;
        }
    }
    return rep;
}

/// delta with (1 - delta)^s = 1 - eps: the convexity parameter that the
/// Orlicz space inherits from its base when the gauge doubles with constant s.
inline double l_convexity_transfer_delta(double eps_base, double doubling_s) {
    if (!(eps_base > 0.0 && eps_base < 1.0))
        throw PreconditionError("l_convexity_transfer: eps in (0,1)");
    if (!(doubling_s > 0.0)) throw PreconditionError("l_convexity_transfer: s must be positive");
    return 1.0 - std::pow(1.0 - eps_base, 1.0 / doubling_s);
}

struct InterpolationOptions {
    double eps = 0.49;
    int trials = 2000;
    int n_max = 6;
    std::uint64_t seed = 0x5eedULL;
    double tol = 1e-10;
};

struct InterpolationResult {
    OrliczSpace space;
    Delta2Estimate delta2_0;
    Delta2Estimate delta2_1;
    LConvexityResult base_certificate;
};

/// Realization of the theta-interpolation space of two Orlicz spaces over a
/// common base as the Orlicz space of the combined gauge. Preconditions
/// (doubling gauges, lattice-convex base) are checked and recorded; the
/// analytic vector-valued construction itself is out of scope here.
inline InterpolationResult complex_interpolation(const QuasiNormedSpace& base,
                                                 const YoungFunction& phi0,
                                                 const YoungFunction& phi1, double theta,
                                                 const InterpolationOptions& opts = {}) {
    Delta2Estimate d0 = delta2_default(phi0);
    Delta2Estimate d1 = delta2_default(phi1);
    if (!d0.is_delta2() || !d1.is_delta2())
        throw PreconditionError("complex_interpolation: gauges must be doubling");
    LConvexityResult cert = l_convexity_search(base, opts.eps, opts.trials, opts.n_max, opts.seed);
    if (!cert.passed)
        throw PreconditionError("complex_interpolation: base failed the lattice-convexity search");
    OrliczSpace space(base, calderon_combine(phi0, phi1, theta), opts.tol);
    return InterpolationResult{std::move(space), d0, d1, std::move(cert)};
}

} // namespace orlicz
