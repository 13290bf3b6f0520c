#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz {

/// Convex gauge: strictly increasing, continuous, convex on [0,inf) with
/// value 0 at 0 and divergence at infinity. Instances are immutable after
/// construction and safe to evaluate concurrently.
///
/// Supported families:
///   power          t^p                      (p >= 1)
///   power-log      t^p * log(1+t)^q         (p >= 1, q >= 0)
///   exp-minus-one  e^(t^a) - 1              (a >= 1)
///   scaled         inner(t / M)             (M > 0)
///   calderon       held via its inverse     inv = inv0^(1-theta) * inv1^theta
///   tabulated      convex piecewise-linear breakpoints with a terminal slope
class YoungFunction {
public:
    enum class Kind { Power, PowerLog, ExpMinusOne, Scaled, Calderon, Tabulated };

    static constexpr double kValueCap = 1e300;          // largest gauge value handled
    static constexpr double kBisectRelWidth = 1e-12;    // bracket termination

    static YoungFunction power(double p) {
        require(p >= 1.0 && std::isfinite(p), "power: p must be >= 1");
        auto n = std::make_shared<Node>();
        n->kind = Kind::Power;
        n->p = p;
        n->domain_cap = std::numeric_limits<double>::infinity();
        return YoungFunction(std::move(n));
    }

    static YoungFunction power_log(double p, double q) {
        require(p >= 1.0 && std::isfinite(p), "power-log: p must be >= 1");
        require(q >= 0.0 && std::isfinite(q), "power-log: q must be >= 0");
        auto n = std::make_shared<Node>();
        n->kind = Kind::PowerLog;
        n->p = p;
        n->q = q;
        n->domain_cap = std::numeric_limits<double>::infinity();
        return YoungFunction(std::move(n));
    }

    static YoungFunction exp_minus_one(double a) {
        require(a >= 1.0 && std::isfinite(a), "exp: a must be >= 1");
        auto n = std::make_shared<Node>();
        n->kind = Kind::ExpMinusOne;
        n->a = a;
        // solve e^(t^a) - 1 = cap: the largest overflow-safe argument
        n->domain_cap = std::pow(std::log1p(kValueCap), 1.0 / a);
        return YoungFunction(std::move(n));
    }

    static YoungFunction scaled(const YoungFunction& inner, double M) {
        require(M > 0.0 && std::isfinite(M), "scaled: M must be positive");
        auto n = std::make_shared<Node>();
        n->kind = Kind::Scaled;
        n->M = M;
        n->inner = inner.node_;
        n->domain_cap = inner.domain_cap() * M;
        return YoungFunction(std::move(n));
    }

    static YoungFunction tabulated(std::vector<std::array<double, 2>> points,
                                   double terminal_slope) {
        std::string why;
        if (!tabulated_ok(points, terminal_slope, &why)) throw Error("tabulated: " + why);
        auto n = std::make_shared<Node>();
        n->kind = Kind::Tabulated;
        n->points = std::move(points);
        n->terminal_slope = terminal_slope;
        const auto& last = n->points.back();
        n->domain_cap = last[0] + (kValueCap - last[1]) / terminal_slope;
        return YoungFunction(std::move(n));
    }

    double eval(double t) const {
        require(t >= 0.0 && !std::isnan(t), "eval: t must be nonnegative");
        if (t > node_->domain_cap)
            throw DomainOverflowError("eval: argument " + std::to_string(t) +
                                      " exceeds domain cap");
        return eval_impl(*node_, t);
    }
    double operator()(double t) const { return eval(t); }

    /// Unique t with eval(t) = u. Closed form where the family admits one,
    /// otherwise bracket doubling + bisection at relative width 1e-12.
    double inverse(double u) const {
        require(u >= 0.0 && !std::isnan(u), "inverse: u must be nonnegative");
        if (u == 0.0) return 0.0;
        return inverse_impl(*node_, u);
    }

    double domain_cap() const { return node_->domain_cap; }
    Kind kind() const { return node_->kind; }

    std::string describe() const { return describe_impl(*node_); }

    // parameter accessors used by serialization
    double param_p() const { return node_->p; }
    double param_q() const { return node_->q; }
    double param_a() const { return node_->a; }
    double param_M() const { return node_->M; }
    double param_theta() const { return node_->theta; }
    YoungFunction inner() const { return YoungFunction(node_->inner); }
    YoungFunction factor0() const { return YoungFunction(node_->phi0); }
    YoungFunction factor1() const { return YoungFunction(node_->phi1); }
    const std::vector<std::array<double, 2>>& points() const { return node_->points; }
    double terminal_slope() const { return node_->terminal_slope; }

private:
    struct Node {
        Kind kind = Kind::Power;
        double p = 0, q = 0, a = 0, M = 0, theta = 0;
        std::shared_ptr<const Node> inner, phi0, phi1;
        std::vector<std::array<double, 2>> points;
        double terminal_slope = 0;
        double domain_cap = std::numeric_limits<double>::infinity();
    };
    using NodePtr = std::shared_ptr<const Node>;

    explicit YoungFunction(NodePtr n) : node_(std::move(n)) {}

    static void require(bool cond, const char* msg) {
        if (!cond) throw Error(msg);
    }

    static bool tabulated_ok(const std::vector<std::array<double, 2>>& pts,
                             double terminal_slope, std::string* why) {
        if (pts.size() < 2) { *why = "need at least two breakpoints"; return false; }
        if (pts.front()[0] != 0.0 || pts.front()[1] != 0.0) {
            *why = "phi(0) != 0 (first breakpoint must be (0,0))";
            return false;
        }
        double prev_slope = 0.0;
        for (std::size_t j = 1; j < pts.size(); ++j) {
            if (!(pts[j][0] > pts[j - 1][0])) { *why = "breakpoints not strictly increasing"; return false; }
            if (!(pts[j][1] > pts[j - 1][1])) { *why = "not strictly increasing"; return false; }
            double s = (pts[j][1] - pts[j - 1][1]) / (pts[j][0] - pts[j - 1][0]);
            if (j > 1 && s < prev_slope * (1.0 - 1e-12) - 1e-15) {
                *why = "convexity violated (decreasing chord slope)";
                return false;
            }
            prev_slope = s;
        }
        if (!(terminal_slope > 0.0)) { *why = "terminal slope not positive (gauge does not diverge)"; return false; }
        if (terminal_slope < prev_slope * (1.0 - 1e-12) - 1e-15) {
            *why = "convexity violated (terminal slope below last chord)";
            return false;
        }
        return true;
    }

    static double eval_impl(const Node& n, double t) {
        switch (n.kind) {
            case Kind::Power:
                return std::pow(t, n.p);
            case Kind::PowerLog:
                return std::pow(t, n.p) * std::pow(std::log1p(t), n.q);
            case Kind::ExpMinusOne:
                return std::expm1(std::pow(t, n.a));
            case Kind::Scaled:
                return eval_impl(*n.inner, t / n.M);
            case Kind::Calderon:
                return calderon_forward(n, t);
            case Kind::Tabulated:
                return tabulated_eval(n, t);
        }
        return 0.0;
    }

    static double inverse_impl(const Node& n, double u) {
        switch (n.kind) {
            case Kind::Power:
                return std::pow(u, 1.0 / n.p);
            case Kind::ExpMinusOne:
                return std::pow(std::log1p(u), 1.0 / n.a);
            case Kind::Scaled:
                return n.M * inverse_impl(*n.inner, u);
            case Kind::Calderon:
                return std::pow(inverse_impl(*n.phi0, u), 1.0 - n.theta) *
                       std::pow(inverse_impl(*n.phi1, u), n.theta);
            case Kind::Tabulated:
                return tabulated_inverse(n, u);
            case Kind::PowerLog:
                return invert_by_bisection(n, u);
        }
        return 0.0;
    }

    // Bracket doubling on [0, t_hi], then bisection to relative width 1e-12.
    static double invert_by_bisection(const Node& n, double u) {
        double lo = 0.0, hi = 1.0;
        while (eval_impl(n, hi) < u) {
            lo = hi;
            hi *= 2.0;
            if (hi > n.domain_cap) {
                if (eval_impl(n, n.domain_cap) >= u) { hi = n.domain_cap; break; }
                throw DomainOverflowError("inverse: bracket exceeded domain cap");
            }
        }
        while (hi - lo > kBisectRelWidth * hi) {
            double mid = 0.5 * (lo + hi);
            if (eval_impl(n, mid) < u) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    // The calderon kind stores only its inverse; forward values come from
    // bisecting the strictly increasing inverse in u.
    static double calderon_forward(const Node& n, double t) {
        if (t == 0.0) return 0.0;
        auto inv = [&n](double u) {
            return std::pow(inverse_impl(*n.phi0, u), 1.0 - n.theta) *
                   std::pow(inverse_impl(*n.phi1, u), n.theta);
        };
        double lo = 0.0, hi = 1.0;
        while (inv(hi) < t) {
            lo = hi;
            hi *= 2.0;
            if (hi > kValueCap)
                throw DomainOverflowError("calderon eval: value bracket exceeded cap");
        }
        while (hi - lo > kBisectRelWidth * hi) {
            double mid = 0.5 * (lo + hi);
            if (inv(mid) < t) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    static double tabulated_eval(const Node& n, double t) {
        const auto& pts = n.points;
        if (t >= pts.back()[0])
            return pts.back()[1] + n.terminal_slope * (t - pts.back()[0]);
        std::size_t lo = 0, hi = pts.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (pts[mid][0] <= t) lo = mid; else hi = mid;
        }
        double w = (t - pts[lo][0]) / (pts[hi][0] - pts[lo][0]);
        return pts[lo][1] + w * (pts[hi][1] - pts[lo][1]);
    }

    static double tabulated_inverse(const Node& n, double u) {
        const auto& pts = n.points;
        if (u >= pts.back()[1])
            return pts.back()[0] + (u - pts.back()[1]) / n.terminal_slope;
        std::size_t lo = 0, hi = pts.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (pts[mid][1] <= u) lo = mid; else hi = mid;
        }
        double w = (u - pts[lo][1]) / (pts[hi][1] - pts[lo][1]);
        return pts[lo][0] + w * (pts[hi][0] - pts[lo][0]);
    }

    static std::string describe_impl(const Node& n) {
        std::ostringstream os;
        switch (n.kind) {
            case Kind::Power: os << "power(p=" << n.p << ")"; break;
            case Kind::PowerLog: os << "power-log(p=" << n.p << ",q=" << n.q << ")"; break;
            case Kind::ExpMinusOne: os << "exp(a=" << n.a << ")"; break;
            case Kind::Scaled: os << "scaled(" << describe_impl(*n.inner) << ",M=" << n.M << ")"; break;
            case Kind::Calderon:
                os << "calderon(" << describe_impl(*n.phi0) << "," << describe_impl(*n.phi1)
                   << ",theta=" << n.theta << ")";
                break;
            case Kind::Tabulated: os << "tabulated(" << n.points.size() << " pts)"; break;
        }
        return os.str();
    }

    friend YoungFunction calderon_combine(const YoungFunction&, const YoungFunction&, double);
    friend class YoungBuilderAccess;

    NodePtr node_;
};

/// Combine two gauges through their inverses:
/// inv(u) = inv0(u)^(1-theta) * inv1(u)^theta. The result is revalidated for
/// monotonicity on a sample grid.
inline YoungFunction calderon_combine(const YoungFunction& phi0, const YoungFunction& phi1,
                                      double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw Error("calderon_combine: theta must be in (0,1)");
    auto n = std::make_shared<YoungFunction::Node>();
    n->kind = YoungFunction::Kind::Calderon;
    n->theta = theta;
    n->phi0 = phi0.node_;
    n->phi1 = phi1.node_;
    // domain cap: the argument whose gauge value reaches the cap
    n->domain_cap = std::pow(phi0.inverse(YoungFunction::kValueCap), 1.0 - theta) *
                    std::pow(phi1.inverse(YoungFunction::kValueCap), theta);
    YoungFunction combined{YoungFunction::NodePtr(std::move(n))};
    double prev = 0.0;
    double hi = std::min(combined.domain_cap(), 1e6);
    for (int j = 0; j <= 16; ++j) {
        double t = hi * std::pow(1e-6, 1.0 - j / 16.0);
        double v = combined.eval(t);
        if (!(v > prev)) throw Error("calderon_combine: combined gauge not increasing on grid");
        prev = v;
    }
    return combined;
}

/// Psi(t) = phi(t / M).
inline YoungFunction scale_argument(const YoungFunction& phi, double M) {
    return YoungFunction::scaled(phi, M);
}

/// Grid estimate of the doubling constant sup phi(2t)/phi(t). A heuristic,
/// not a proof: the flag is set when the ratio keeps growing by more than a
/// factor of two across the top decade of the grid.
struct Delta2Estimate {
    double constant = 0.0;
    bool unbounded = false;
    double t_max = 0.0;
    int n_grid = 0;
    bool is_delta2() const { return !unbounded; }
};

inline Delta2Estimate delta2_constant(const YoungFunction& phi, double t_max, int n_grid) {
    if (n_grid < 16) throw PreconditionError("delta2_constant: n_grid must be >= 16");
    if (!(t_max > 0.0)) throw PreconditionError("delta2_constant: t_max must be positive");
    Delta2Estimate est;
    est.t_max = t_max;
    est.n_grid = n_grid;
    const double t_min = t_max * 1e-8;
    std::vector<std::pair<double, double>> ratios;  // (t, ratio)
    for (int j = 0; j < n_grid; ++j) {
        double t = t_min * std::pow(t_max / t_min, static_cast<double>(j) / (n_grid - 1));
        double lo = phi.eval(t);
        if (lo == 0.0) continue;
        double r = phi.eval(2.0 * t) / lo;
        est.constant = std::max(est.constant, r);
        ratios.emplace_back(t, r);
    }
    // top decade [t_max/10, t_max]
    bool monotone = true;
    double first = -1.0, last = -1.0;
    for (const auto& [t, r] : ratios) {
        if (t < t_max / 10.0) continue;
        if (first < 0.0) first = r;
        if (last >= 0.0 && r < last * (1.0 - 1e-12)) monotone = false;
        last = r;
    }
    est.unbounded = monotone && first > 0.0 && last > 2.0 * first;
    return est;
}

/// Default grid for the doubling estimate, kept clear of the domain cap.
inline Delta2Estimate delta2_default(const YoungFunction& phi) {
    double t_max = 50.0;
    if (std::isfinite(phi.domain_cap())) t_max = std::min(t_max, phi.domain_cap() / 2.0000001);
    return delta2_constant(phi, t_max, 256);
}

/// lhs = phi(sum t_n), rhs = sum phi(2^n a^n t_n) / (2^n a^n), n from 1.
/// Convexity forces lhs <= rhs.
struct QuasiSubadditiveBound {
    double lhs = 0.0;
    double rhs = 0.0;
};

inline QuasiSubadditiveBound quasi_subadditive_bound(const YoungFunction& phi, double alpha,
                                                     const std::vector<double>& ts) {
    if (!(alpha >= 1.0)) throw PreconditionError("quasi_subadditive_bound: alpha must be >= 1");
    QuasiSubadditiveBound out;
    double total = 0.0;
    double factor = 1.0;
    for (double t : ts) {
        if (!(t >= 0.0)) throw PreconditionError("quasi_subadditive_bound: entries must be >= 0");
        total += t;
        factor *= 2.0 * alpha;
        out.rhs += phi.eval(factor * t) / factor;
    }
    out.lhs = phi.eval(total);
    return out;
}

/// Raw gauge specification, as it arrives from user input.
struct YoungSpec {
    std::string kind;  // power | power-log | exp | scaled | calderon | tabulated
    double p = 0, q = 0, a = 0, M = 0, theta = 0;
    std::shared_ptr<YoungSpec> inner, phi0, phi1;
    std::vector<std::array<double, 2>> points;
    double terminal_slope = 0;
};

struct YoungValidation {
    std::optional<YoungFunction> fn;
    std::vector<std::string> diagnostics;
    bool ok() const { return fn.has_value() && diagnostics.empty(); }
};

namespace detail {

inline void validate_spec_params(const YoungSpec& s, std::vector<std::string>& out) {
    auto bad = [&out](const std::string& msg) { out.push_back(msg); };
    if (s.kind == "power") {
        if (!std::isfinite(s.p)) bad("power: p not finite");
        else if (s.p < 1.0) bad("convexity violated (power p < 1)");
    } else if (s.kind == "power-log") {
        if (!std::isfinite(s.p) || !std::isfinite(s.q)) bad("power-log: parameters not finite");
        else {
            if (s.p < 1.0) bad("convexity violated (power-log p < 1)");
            if (s.q < 0.0) bad("power-log: q < 0 (not monotone at the origin)");
        }
    } else if (s.kind == "exp") {
        if (!std::isfinite(s.a)) bad("exp: a not finite");
        else if (s.a < 1.0) bad("convexity violated (exp a < 1)");
    } else if (s.kind == "scaled") {
        if (!(s.M > 0.0) || !std::isfinite(s.M)) bad("scaled: M must be positive finite");
        if (!s.inner) bad("scaled: missing inner gauge");
        else validate_spec_params(*s.inner, out);
    } else if (s.kind == "calderon") {
        if (!(s.theta > 0.0 && s.theta < 1.0)) bad("calderon: theta must be in (0,1)");
        if (!s.phi0 || !s.phi1) bad("calderon: missing factor gauge");
        else {
            validate_spec_params(*s.phi0, out);
            validate_spec_params(*s.phi1, out);
        }
    } else if (s.kind == "tabulated") {
        if (s.points.size() < 2) { bad("tabulated: need at least two breakpoints"); return; }
        if (s.points.front()[0] != 0.0 || s.points.front()[1] != 0.0)
            bad("phi(0) != 0 (first breakpoint must be (0,0))");
        double prev_slope = 0.0;
        bool increasing = true, convex = true, t_increasing = true;
        for (std::size_t j = 1; j < s.points.size(); ++j) {
            if (!(s.points[j][0] > s.points[j - 1][0])) t_increasing = false;
            if (!(s.points[j][1] > s.points[j - 1][1])) increasing = false;
            if (!t_increasing) continue;
            double sl = (s.points[j][1] - s.points[j - 1][1]) / (s.points[j][0] - s.points[j - 1][0]);
            if (j > 1 && sl < prev_slope * (1.0 - 1e-12) - 1e-15) convex = false;
            prev_slope = sl;
        }
        if (!t_increasing) bad("tabulated: breakpoints not strictly increasing");
        if (!increasing) bad("not strictly increasing");
        if (!convex) bad("convexity violated (decreasing chord slope)");
        if (!(s.terminal_slope > 0.0)) bad("terminal slope not positive (gauge does not diverge)");
        else if (t_increasing && s.terminal_slope < prev_slope * (1.0 - 1e-12) - 1e-15)
            bad("convexity violated (terminal slope below last chord)");
    } else {
        bad("unknown gauge kind '" + s.kind + "'");
    }
}

inline YoungFunction build_from_spec(const YoungSpec& s) {
    if (s.kind == "power") return YoungFunction::power(s.p);
    if (s.kind == "power-log") return YoungFunction::power_log(s.p, s.q);
    if (s.kind == "exp") return YoungFunction::exp_minus_one(s.a);
    if (s.kind == "scaled") return YoungFunction::scaled(build_from_spec(*s.inner), s.M);
    if (s.kind == "calderon")
        return calderon_combine(build_from_spec(*s.phi0), build_from_spec(*s.phi1), s.theta);
    return YoungFunction::tabulated(s.points, s.terminal_slope);
}

} // namespace detail

/// Checks every gauge axiom on the raw spec and returns either the validated
/// gauge or the full list of violations. Diagnostics are the error channel;
/// this never throws on bad input.
inline YoungValidation validate(const YoungSpec& spec) {
    YoungValidation result;
    detail::validate_spec_params(spec, result.diagnostics);
    if (!result.diagnostics.empty()) return result;

    YoungFunction fn = detail::build_from_spec(spec);

    // numeric axiom sweep: phi(0) = 0, strict growth, non-decreasing chords
    if (fn.eval(0.0) != 0.0) result.diagnostics.push_back("phi(0) != 0");
    const double hi = std::min(fn.domain_cap() / 2.0000001, 1e4);
    const double lo = hi * 1e-8;
    const int steps = 40;
    double prev_t = 0.0, prev_v = 0.0, prev_slope = -1.0;
    bool increasing = true, convex = true;
    for (int j = 0; j <= steps; ++j) {
        double t = lo * std::pow(hi / lo, static_cast<double>(j) / steps);
        double v = fn.eval(t);
        if (!(v > prev_v)) increasing = false;
        double slope = (v - prev_v) / (t - prev_t);
        if (prev_slope >= 0.0 && slope < prev_slope * (1.0 - 1e-10) - 1e-15) convex = false;
        prev_t = t;
        prev_v = v;
        prev_slope = slope;
    }
    if (!increasing) result.diagnostics.push_back("not strictly increasing");
    if (!convex) result.diagnostics.push_back("convexity violated");
    if (result.diagnostics.empty()) result.fn = fn;
    return result;
}

} // namespace orlicz
