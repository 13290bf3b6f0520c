#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz {

/// Finite atomic measure space: a list of labelled atoms with strictly
/// positive weights. Every function space in the library lives over one of
/// these, so integrals are finite sums and suprema are finite maxima.
class AtomicMeasureSpace {
public:
    AtomicMeasureSpace(std::vector<std::string> atom_ids, std::vector<double> weights)
        : atom_ids_(std::move(atom_ids)), weights_(std::move(weights)) {
        if (atom_ids_.size() != weights_.size())
            throw Error("measure space: atom/weight count mismatch");
        if (atom_ids_.empty())
            throw Error("measure space: no atoms");
        std::unordered_set<std::string> seen;
        for (const auto& id : atom_ids_)
            if (!seen.insert(id).second)
                throw Error("measure space: duplicate atom id '" + id + "'");
        for (double w : weights_)
            if (!(w > 0.0) || !std::isfinite(w))
                throw Error("measure space: weights must be positive finite");
    }

    std::size_t size() const { return atom_ids_.size(); }
    const std::vector<std::string>& atom_ids() const { return atom_ids_; }
    const std::vector<double>& weights() const { return weights_; }
    double weight(std::size_t i) const { return weights_[i]; }

    double total_measure() const {
        double s = 0.0;
        for (double w : weights_) s += w;
        return s;
    }

    // -1 when the id is unknown
    int index_of(const std::string& id) const {
        for (std::size_t i = 0; i < atom_ids_.size(); ++i)
            if (atom_ids_[i] == id) return static_cast<int>(i);
        return -1;
    }

private:
    std::vector<std::string> atom_ids_;
    std::vector<double> weights_;
};

using SpacePtr = std::shared_ptr<const AtomicMeasureSpace>;

inline SpacePtr make_space(std::vector<std::string> atom_ids, std::vector<double> weights) {
    return std::make_shared<AtomicMeasureSpace>(std::move(atom_ids), std::move(weights));
}

/// Atoms a1..an with unit weights.
inline SpacePtr unit_space(std::size_t n) {
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = "a" + std::to_string(i + 1);
    return make_space(std::move(ids), std::vector<double>(n, 1.0));
}

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->atom_ids() == b->atom_ids() && a->weights() == b->weights();
}

/// Measurable set: a membership mask over the atoms.
class AtomSet {
public:
    AtomSet() = default;
    explicit AtomSet(std::vector<bool> mask) : mask_(std::move(mask)) {}
    explicit AtomSet(std::size_t n, bool value = false) : mask_(n, value) {}

    std::size_t size() const { return mask_.size(); }
    bool contains(std::size_t i) const { return mask_[i]; }
    void set(std::size_t i, bool v = true) { mask_[i] = v; }

    std::size_t count() const {
        return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
    }
    bool empty() const { return count() == 0; }

    bool subset_of(const AtomSet& other) const {
        for (std::size_t i = 0; i < mask_.size(); ++i)
            if (mask_[i] && !other.mask_[i]) return false;
        return true;
    }

    AtomSet set_union(const AtomSet& other) const {
        AtomSet r(mask_.size());
        for (std::size_t i = 0; i < mask_.size(); ++i) r.mask_[i] = mask_[i] || other.mask_[i];
        return r;
    }
    AtomSet set_intersection(const AtomSet& other) const {
        AtomSet r(mask_.size());
        for (std::size_t i = 0; i < mask_.size(); ++i) r.mask_[i] = mask_[i] && other.mask_[i];
        return r;
    }
    AtomSet complement() const {
        AtomSet r(mask_.size());
        for (std::size_t i = 0; i < mask_.size(); ++i) r.mask_[i] = !mask_[i];
        return r;
    }

    bool operator==(const AtomSet& other) const { return mask_ == other.mask_; }

private:
    std::vector<bool> mask_;
};

inline AtomSet full_set(std::size_t n) { return AtomSet(n, true); }
inline AtomSet empty_set(std::size_t n) { return AtomSet(n, false); }

/// Real function on the atoms. On a finite atomic sigma-algebra every
/// measurable function is simple, so a value per atom is the whole story.
class Fn {
public:
    Fn(SpacePtr space, std::vector<double> values)
        : space_(std::move(space)), values_(std::move(values)) {
        if (!space_) throw Error("function: null space");
        if (values_.size() != space_->size())
            throw Error("function: value count does not match atom count");
        for (double v : values_)
            if (!std::isfinite(v)) throw Error("function: values must be finite");
    }

    const SpacePtr& space() const { return space_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

    bool is_zero() const {
        for (double v : values_)
            if (v != 0.0) return false;
        return true;
    }

private:
    SpacePtr space_;
    std::vector<double> values_;
};

inline void require_same_space(const Fn& f, const Fn& g) {
    if (!same_space(f.space(), g.space()))
        throw SpaceMismatchError("functions live on different measure spaces");
}

inline void require_set_size(const AtomSet& a, std::size_t n) {
    if (a.size() != n)
        throw SpaceMismatchError("set mask does not match the atom count");
}

inline double mu(const AtomicMeasureSpace& space, const AtomSet& a) {
    require_set_size(a, space.size());
    double s = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i)
        if (a.contains(i)) s += space.weight(i);
    return s;
}
inline double mu(const SpacePtr& space, const AtomSet& a) { return mu(*space, a); }

inline Fn abs(const Fn& f) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = std::fabs(f[i]);
    return Fn(f.space(), std::move(v));
}

inline Fn add(const Fn& f, const Fn& g) {
    require_same_space(f, g);
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = f[i] + g[i];
    return Fn(f.space(), std::move(v));
}

inline Fn sub(const Fn& f, const Fn& g) {
    require_same_space(f, g);
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = f[i] - g[i];
    return Fn(f.space(), std::move(v));
}

inline Fn scale(const Fn& f, double c) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = c * f[i];
    return Fn(f.space(), std::move(v));
}

inline Fn pointwise_max(const Fn& f, const Fn& g) {
    require_same_space(f, g);
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = std::max(f[i], g[i]);
    return Fn(f.space(), std::move(v));
}

inline bool pointwise_leq(const Fn& f, const Fn& g) {
    require_same_space(f, g);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!(f[i] <= g[i])) return false;
    return true;
}

/// [|f| > t], with strict inequality.
inline AtomSet level_set(const Fn& f, double t) {
    AtomSet a(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        if (std::fabs(f[i]) > t) a.set(i);
    return a;
}

inline Fn indicator(const SpacePtr& space, const AtomSet& a) {
    require_set_size(a, space->size());
    std::vector<double> v(space->size(), 0.0);
    for (std::size_t i = 0; i < space->size(); ++i)
        if (a.contains(i)) v[i] = 1.0;
    return Fn(space, std::move(v));
}

inline Fn restrict(const Fn& f, const AtomSet& a) {
    require_set_size(a, f.size());
    std::vector<double> v(f.size(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (a.contains(i)) v[i] = f[i];
    return Fn(f.space(), std::move(v));
}

/// |f|^e elementwise.
inline Fn pow_elements(const Fn& f, double e) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = std::pow(std::fabs(f[i]), e);
    return Fn(f.space(), std::move(v));
}

inline AtomSet support(const Fn& f) { return level_set(f, 0.0); }

} // namespace orlicz
