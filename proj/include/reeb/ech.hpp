#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "reeb/errors.hpp"
#include "reeb/qlinear.hpp"
#include "reeb/rational.hpp"

namespace reeb {

/// An ECH generator: finitely many distinct simple orbits with positive
/// integer multiplicities, multiplicity 1 forced on hyperbolic orbits.
class OrbitSet {
public:
    struct Entry {
        long long multiplicity = 1;
        QLinearValue action;
        bool hyperbolic = false;
    };

    explicit OrbitSet(std::vector<Entry> entries) : entries_(std::move(entries)) {
        for (const Entry& entry : entries_) {
            if (entry.multiplicity < 1)
                throw InvalidOrbitSet("orbit multiplicities must be positive");
            if (entry.hyperbolic && entry.multiplicity != 1)
                throw InvalidOrbitSet("hyperbolic orbits admit only multiplicity 1");
            if (!is_positive(entry.action))
                throw InvalidOrbitSet("orbit actions must be positive");
        }
        for (std::size_t i = 0; i < entries_.size(); ++i)
            for (std::size_t j = i + 1; j < entries_.size(); ++j)
                if (entries_[i].action == entries_[j].action)
                    throw InvalidOrbitSet("orbit actions must be pairwise distinct");
    }

    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_;
};

/// Total action Σ mᵢ·A(γᵢ) of a generator. The empty set has action 0 and
/// needs a registry to express it.
inline QLinearValue orbit_set_action(const OrbitSet& os, const RegistryPtr& registry) {
    QLinearValue total = QLinearValue::zero(registry);
    for (const OrbitSet::Entry& entry : os.entries())
        total = total + entry.action.scaled(Rational(entry.multiplicity));
    return total;
}

/// #{(m,n) ∈ ℕ² : m·a + n·b ≤ L}, the dimension of the action-filtered
/// generator space of the two-orbit picture at filtration level L.
inline std::uint64_t filtered_generator_count(const QLinearValue& a, const QLinearValue& b,
                                              const QLinearValue& L) {
    if (a.registry() != b.registry() || a.registry() != L.registry())
        throw MixedRegistries("filtered count requires one registry");
    if (!is_positive(a) || !is_positive(b))
        throw PreconditionViolated("orbit actions must be positive");
    if (sign(L) < 0) throw PreconditionViolated("filtration level must be nonnegative");
    std::uint64_t count = 0;
    for (QLinearValue row = QLinearValue::zero(a.registry());
         compare(row, L) != Ordering::Greater; row = row + a) {
        QLinearValue value = row;
        while (compare(value, L) != Ordering::Greater) {
            ++count;
            value = value + b;
        }
    }
    return count;
}

/// The nondecreasing sequence N_0 ≤ N_1 ≤ ... of values m·a + n·b sorted
/// with multiplicity: N_k is the (k+1)-th smallest. Values are produced
/// lazily by an exact best-first search over the lattice; instances carry
/// that enumeration state, so one instance must not be driven from two
/// threads at once (independent instances are fine).
class EchSpectrum {
public:
    EchSpectrum(QLinearValue a, QLinearValue b) : a_(std::move(a)), b_(std::move(b)) {
        if (a_.registry() != b_.registry())
            throw MixedRegistries("ellipsoid axes must share one registry");
        if (!is_positive(a_) || !is_positive(b_))
            throw InvalidSpectrum("ellipsoid axes must be positive");
        push_node(QLinearValue::zero(a_.registry()), 0, 0);
    }

    const QLinearValue& a() const { return a_; }
    const QLinearValue& b() const { return b_; }

    /// N_k, extending the sequence as needed. Returned by value: extending
    /// the sequence may relocate the internal storage, so references into it
    /// must not outlive the next call.
    QLinearValue value(std::size_t k) {
        ensure(k);
        return values_[k];
    }

    /// The lattice point (m, n) realizing N_k = m·a + n·b.
    std::pair<std::uint64_t, std::uint64_t> term(std::size_t k) {
        ensure(k);
        return terms_[k];
    }

    std::vector<QLinearValue> values_up_to(std::size_t k_max) {
        ensure(k_max);
        return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(k_max) + 1};
    }

private:
    struct Node {
        QLinearValue value;
        RationalInterval box;
        std::uint64_t m, n;
    };

    // Certified ordering: disjoint enclosing boxes decide cheaply, anything
    // else falls back to the exact comparison (consistent with the boxes,
    // since each true value lies inside its box).
    struct NodeAfter {
        bool operator()(const Node& x, const Node& y) const {
            if (y.box.hi < x.box.lo) return true;
            if (x.box.hi < y.box.lo) return false;
            return compare(y.value, x.value) == Ordering::Less;
        }
    };

    void push_node(QLinearValue value, std::uint64_t m, std::uint64_t n) {
        RationalInterval box = value.interval_evaluation();
        frontier_.push(Node{std::move(value), std::move(box), m, n});
    }

    void ensure(std::size_t k) {
        while (values_.size() <= k) {
            Node next = frontier_.top();
            frontier_.pop();
            // Each lattice point enters the frontier exactly once: stepping
            // m is always allowed, stepping n only from the m = 0 column.
            push_node(next.value + a_, next.m + 1, next.n);
            if (next.m == 0) push_node(next.value + b_, 0, next.n + 1);
            values_.push_back(std::move(next.value));
            terms_.emplace_back(next.m, next.n);
        }
    }

    QLinearValue a_, b_;
    std::vector<QLinearValue> values_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> terms_;
    std::priority_queue<Node, std::vector<Node>, NodeAfter> frontier_;
};

/// [N_0, ..., N_k_max].
inline std::vector<QLinearValue> ech_spectrum_values(const QLinearValue& a,
                                                     const QLinearValue& b,
                                                     std::size_t k_max) {
    return EchSpectrum(a, b).values_up_to(k_max);
}

/// Smallest k < k_max with N_{k+1} = N_k exactly; such a collision of a
/// spectral value with its index-shifted successor happens precisely in the
/// rational-ratio (Besse) case.
inline std::optional<std::size_t> first_gap_collision(const QLinearValue& a,
                                                      const QLinearValue& b,
                                                      std::size_t k_max) {
    EchSpectrum spectrum(a, b);
    for (std::size_t k = 0; k < k_max; ++k)
        if (spectrum.value(k + 1) == spectrum.value(k)) return k;
    return std::nullopt;
}

struct SublinearityPoint {
    std::size_t k = 0;
    RationalInterval ratio;  // encloses N_k / k
};

/// N_k/k sampled at the given checkpoints; the enclosures shrink toward 0
/// as k grows (the spectral values grow like √k).
inline std::vector<SublinearityPoint> sublinearity_profile(const QLinearValue& a,
                                                           const QLinearValue& b,
                                                           const std::vector<std::size_t>& checkpoints) {
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1)
            throw PreconditionViolated("checkpoints must be at least 1");
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
            throw PreconditionViolated("checkpoints must be strictly increasing");
    }
    EchSpectrum spectrum(a, b);
    std::vector<SublinearityPoint> profile;
    for (std::size_t k : checkpoints) {
        QLinearValue scaled = spectrum.value(k).scaled(Rational(1, k));
        profile.push_back({k, scaled.interval_evaluation()});
    }
    return profile;
}

/// Encloses N_k²/(2abk), the running comparison of the k-th spectral value
/// against the volume-growth prediction; tends to 1 as k grows. Exact (a
/// degenerate interval) whenever a and b are rational.
inline RationalInterval volume_asymptotic_ratio(const QLinearValue& a, const QLinearValue& b,
                                                std::size_t k) {
    if (k < 1) throw PreconditionViolated("the ratio needs k at least 1");
    EchSpectrum spectrum(a, b);
    RationalInterval nk = spectrum.value(k).interval_evaluation();
    if (nk.lo < 0) nk.lo = 0;
    RationalInterval ab{a.interval_evaluation().lo * b.interval_evaluation().lo,
                        a.interval_evaluation().hi * b.interval_evaluation().hi};
    if (ab.lo <= 0)
        throw IndistinguishableAtPrecision(
            "axis approximations cannot bound the volume term away from zero");
    Rational scale = Rational(2) * Rational(k);
    return {nk.lo * nk.lo / (ab.hi * scale), nk.hi * nk.hi / (ab.lo * scale)};
}

}  // namespace reeb
