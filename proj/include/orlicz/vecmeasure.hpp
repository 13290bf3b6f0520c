#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/rng.hpp"
#include "orlicz/space.hpp"

namespace orlicz {

enum class NormKind { l1, l2, linf };

inline std::string norm_kind_name(NormKind k) {
    switch (k) {
        case NormKind::l1: return "l1";
        case NormKind::l2: return "l2";
        case NormKind::linf: return "linf";
    }
    return "?";
}

/// Norm on the finite-dimensional target of a vector measure.
struct TargetNorm {
    int dim = 1;
    NormKind kind = NormKind::l2;

    double norm(const std::vector<double>& v) const {
        switch (kind) {
            case NormKind::l1: {
                double s = 0.0;
                for (double x : v) s += std::fabs(x);
                return s;
            }
            case NormKind::l2: {
                double s = 0.0;
                for (double x : v) s += x * x;
                return std::sqrt(s);
            }
            case NormKind::linf: {
                double s = 0.0;
                for (double x : v) s = std::max(s, std::fabs(x));
                return s;
            }
        }
        return 0.0;
    }

    // norm of a functional, i.e. the dual of `kind`
    double dual_norm(const std::vector<double>& y) const {
        TargetNorm d{dim, dual_kind()};
        return d.norm(y);
    }

    NormKind dual_kind() const {
        switch (kind) {
            case NormKind::l1: return NormKind::linf;
            case NormKind::linf: return NormKind::l1;
            case NormKind::l2: return NormKind::l2;
        }
        return NormKind::l2;
    }
};

/// Vector measure on a finite atomic space: one target vector per atom,
/// m(A) = sum of the vectors of the atoms in A.
class VectorMeasure {
public:
    VectorMeasure(SpacePtr space, TargetNorm target, std::vector<std::vector<double>> atom_vectors)
        : space_(std::move(space)), target_(target), vectors_(std::move(atom_vectors)) {
        if (!space_) throw Error("vector measure: null space");
        if (vectors_.size() != space_->size())
            throw DimensionMismatchError("vector measure: one vector per atom required");
        if (target_.dim < 1) throw DimensionMismatchError("vector measure: dim must be >= 1");
        atom_norms_.reserve(vectors_.size());
        for (const auto& v : vectors_) {
            if (static_cast<int>(v.size()) != target_.dim)
                throw DimensionMismatchError("vector measure: vector dimension mismatch");
            for (double x : v)
                if (!std::isfinite(x)) throw Error("vector measure: entries must be finite");
            atom_norms_.push_back(target_.norm(v));
        }
    }

    const SpacePtr& space() const { return space_; }
    const TargetNorm& target() const { return target_; }
    std::size_t atom_count() const { return vectors_.size(); }
    const std::vector<double>& atom_vector(std::size_t i) const { return vectors_[i]; }
    const std::vector<std::vector<double>>& atom_vectors() const { return vectors_; }
    double atom_norm(std::size_t i) const { return atom_norms_[i]; }

private:
    SpacePtr space_;
    TargetNorm target_;
    std::vector<std::vector<double>> vectors_;
    std::vector<double> atom_norms_;
};

namespace detail {

// max over sign vectors s of ||sum_i s_i v_i||, the dual-ball supremum of
// the variation after swapping sup and max. Branch and bound over the sign
// tree in decreasing-norm order; bound = ||partial|| + remaining norm mass.
inline double signed_max_norm(std::vector<std::vector<double>> vs, const TargetNorm& target) {
    vs.erase(std::remove_if(vs.begin(), vs.end(),
                            [&target](const std::vector<double>& v) { return target.norm(v) == 0.0; }),
             vs.end());
    if (vs.empty()) return 0.0;

    if (target.kind == NormKind::linf) {
        // max_j sum_i |v_ij|: the coordinates decouple
        double best = 0.0;
        for (int j = 0; j < target.dim; ++j) {
            double s = 0.0;
            for (const auto& v : vs) s += std::fabs(v[j]);
            best = std::max(best, s);
        }
        return best;
    }

    std::sort(vs.begin(), vs.end(), [&target](const auto& a, const auto& b) {
        return target.norm(a) > target.norm(b);
    });
    std::vector<double> tail(vs.size() + 1, 0.0);
    for (std::size_t i = vs.size(); i-- > 0;) tail[i] = tail[i + 1] + target.norm(vs[i]);

    double best = 0.0;
    std::vector<double> partial(static_cast<std::size_t>(target.dim), 0.0);

    auto dfs = [&](auto&& self, std::size_t i) -> void {
        if (i == vs.size()) {
            best = std::max(best, target.norm(partial));
            return;
        }
        if (target.norm(partial) + tail[i] <= best) return;
        for (int sign : {+1, -1}) {
            if (i == 0 && sign < 0) continue;  // global flip symmetry
            for (int j = 0; j < target.dim; ++j) partial[j] += sign * vs[i][j];
            self(self, i + 1);
            for (int j = 0; j < target.dim; ++j) partial[j] -= sign * vs[i][j];
        }
    };
    dfs(dfs, 0);
    return best;
}

inline std::vector<std::vector<double>> vectors_in(const VectorMeasure& m, const AtomSet& a) {
    require_set_size(a, m.atom_count());
    std::vector<std::vector<double>> vs;
    for (std::size_t i = 0; i < m.atom_count(); ++i)
        if (a.contains(i)) vs.push_back(m.atom_vector(i));
    return vs;
}

} // namespace detail

/// Variation of the scalarized measure <m, ystar> on A:
/// sum over atoms in A of |<m_i, ystar>|.
inline double scalar_variation(const VectorMeasure& m, const std::vector<double>& ystar,
                               const AtomSet& a) {
    require_set_size(a, m.atom_count());
    if (static_cast<int>(ystar.size()) != m.target().dim)
        throw DimensionMismatchError("scalar_variation: functional dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < m.atom_count(); ++i) {
        if (!a.contains(i)) continue;
        double ip = 0.0;
        for (int j = 0; j < m.target().dim; ++j) ip += m.atom_vector(i)[j] * ystar[j];
        s += std::fabs(ip);
    }
    return s;
}

/// ||m||(A): supremum of the scalar variation over the dual unit ball,
/// computed exactly as the sign-enumeration maximum.
inline double semivariation(const VectorMeasure& m, const AtomSet& a) {
    return detail::signed_max_norm(detail::vectors_in(m, a), m.target());
}

/// Differential-testing oracle: full 2^|A| enumeration, no pruning.
inline double semivariation_bruteforce(const VectorMeasure& m, const AtomSet& a) {
    auto vs = detail::vectors_in(m, a);
    if (vs.size() > 24) throw SizeExceededError("semivariation_bruteforce: more than 24 atoms");
    if (vs.empty()) return 0.0;
    const int d = m.target().dim;
    double best = 0.0;
    std::vector<double> sum(static_cast<std::size_t>(d), 0.0);
    for (std::uint64_t bits = 0; bits < (1ull << vs.size()); ++bits) {
        std::fill(sum.begin(), sum.end(), 0.0);
        for (std::size_t i = 0; i < vs.size(); ++i) {
            double sign = (bits >> i) & 1 ? -1.0 : 1.0;
            for (int j = 0; j < d; ++j) sum[j] += sign * vs[i][j];
        }
        best = std::max(best, m.target().norm(sum));
    }
    return best;
}

inline bool is_m_null(const VectorMeasure& m, const AtomSet& a) {
    return semivariation(m, a) == 0.0;
}

/// A scalarizing functional together with the control weights
/// |<m_i, ystar>| it induces. Weights are zero exactly on the m-null atoms,
/// so the control measure is equivalent to m by construction. Kept as a raw
/// weight vector: a degenerate measure (all atoms m-null) has no positive-
/// weight measure-space representation.
struct RybakovResult {
    std::vector<double> ystar;
    std::vector<double> control_weights;

    double control(const AtomSet& a) const {
        double s = 0.0;
        for (std::size_t i = 0; i < control_weights.size(); ++i)
            if (a.contains(i)) s += control_weights[i];
        return s;
    }
};

/// Finds a functional in the closed dual unit ball that scalarizes m without
/// killing any non-null atom. Tries the weighted direction mix first, then a
/// seeded randomized budget; failure is reported, never silently accepted.
inline RybakovResult rybakov(const VectorMeasure& m, std::uint64_t seed = 0x5eedULL) {
    const int d = m.target().dim;
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < m.atom_count(); ++i)
        if (m.atom_norm(i) > 0.0) live.push_back(i);

    auto finish = [&m](std::vector<double> ystar) {
        RybakovResult out;
        out.ystar = std::move(ystar);
        out.control_weights.resize(m.atom_count());
        for (std::size_t i = 0; i < m.atom_count(); ++i) {
            double ip = 0.0;
            for (std::size_t j = 0; j < out.ystar.size(); ++j)
                ip += m.atom_vector(i)[j] * out.ystar[j];
            out.control_weights[i] = std::fabs(ip);
        }
        return out;
    };

    if (live.empty()) {
        std::vector<double> y(static_cast<std::size_t>(d), 0.0);
        y[0] = 1.0;
        double dn = m.target().dual_norm(y);
        for (auto& x : y) x /= dn;
        return finish(std::move(y));
    }

    auto admissible = [&](const std::vector<double>& y) {
        for (std::size_t i : live) {
            double ip = 0.0;
            for (int j = 0; j < d; ++j) ip += m.atom_vector(i)[j] * y[j];
            if (ip == 0.0) return false;
        }
        return true;
    };

    // candidate 1: sum of unit directions with rapidly decaying coefficients
    std::vector<double> cand(static_cast<std::size_t>(d), 0.0);
    double coeff = 1.0;
    for (std::size_t i : live) {
        coeff /= 3.0;
        for (int j = 0; j < d; ++j) cand[j] += coeff * m.atom_vector(i)[j] / m.atom_norm(i);
    }
    double dn = m.target().dual_norm(cand);
    if (dn > 0.0) {
        for (auto& x : cand) x /= dn;
        if (admissible(cand)) return finish(std::move(cand));
    }

    Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<double> y(static_cast<std::size_t>(d));
        for (auto& x : y) x = rng.uniform(-1.0, 1.0);
        double n = m.target().dual_norm(y);
        if (n == 0.0) continue;
        for (auto& x : y) x /= n;
        if (admissible(y)) return finish(std::move(y));
    }
    throw NotFoundError("rybakov: no admissible functional found within the search budget");
}

/// Right-continuous non-increasing step function on [0,inf) with finitely
/// many breakpoints and terminal value zero.
class StepFunction {
public:
    StepFunction(std::vector<double> breakpoints, std::vector<double> values)
        : ts_(std::move(breakpoints)), vs_(std::move(values)) {
        if (ts_.size() != vs_.size() || ts_.empty())
            throw Error("step function: breakpoint/value count mismatch");
        if (ts_.front() != 0.0) throw Error("step function: first breakpoint must be 0");
        for (std::size_t j = 1; j < ts_.size(); ++j) {
            if (!(ts_[j] > ts_[j - 1])) throw Error("step function: breakpoints must increase");
            if (vs_[j] > vs_[j - 1]) throw Error("step function: values must be non-increasing");
        }
        if (vs_.back() != 0.0) throw Error("step function: terminal value must be 0");
    }

    const std::vector<double>& breakpoints() const { return ts_; }
    const std::vector<double>& values() const { return vs_; }

    double value_at(double t) const {
        if (t < 0.0) throw Error("step function: negative argument");
        std::size_t lo = 0;
        for (std::size_t j = 1; j < ts_.size(); ++j)
            if (ts_[j] <= t) lo = j;
        return vs_[lo];
    }

    /// Exact integral over (0,inf): sum of rectangle areas.
    double integral() const {
        double s = 0.0;
        for (std::size_t j = 0; j + 1 < ts_.size(); ++j) s += (ts_[j + 1] - ts_[j]) * vs_[j];
        return s;
    }

private:
    std::vector<double> ts_;
    std::vector<double> vs_;
};

/// t -> ||m||([|f| > t]), exact: breakpoints at the distinct values of |f|.
inline StepFunction distribution_function(const VectorMeasure& m, const Fn& f) {
    if (!same_space(m.space(), f.space()))
        throw SpaceMismatchError("distribution_function: spaces differ");
    std::vector<double> thresholds{0.0};
    for (double v : f.values())
        if (v != 0.0) thresholds.push_back(std::fabs(v));
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    std::vector<double> values;
    values.reserve(thresholds.size());
    for (double t : thresholds) values.push_back(semivariation(m, level_set(f, t)));
    return StepFunction(std::move(thresholds), std::move(values));
}

/// Choquet-type norm: the exact integral of the distribution function.
inline double choquet_l1_norm(const VectorMeasure& m, const Fn& f) {
    return distribution_function(m, f).integral();
}

} // namespace orlicz
