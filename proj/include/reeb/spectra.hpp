#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "reeb/errors.hpp"
#include "reeb/qlinear.hpp"
#include "reeb/rational.hpp"

namespace reeb {

namespace detail {

/// Deterministic total order on coefficient vectors (symbol id, then exact
/// rational). Unlike compare() it never consults intervals, so it is usable
/// for canonical storage even when values are numerically indistinguishable.
inline bool lex_less(const QLinearValue& a, const QLinearValue& b) {
    const auto& ac = a.coefficients();
    const auto& bc = b.coefficients();
    for (std::size_t i = 0; i < std::min(ac.size(), bc.size()); ++i) {
        if (ac[i].first != bc[i].first) return ac[i].first < bc[i].first;
        if (ac[i].second != bc[i].second) return ac[i].second < bc[i].second;
    }
    return ac.size() < bc.size();
}

}  // namespace detail

/// The prime action spectrum of a Reeb flow, presented as a finite set of
/// exactly-distinct, certified-positive values over one registry. Elements
/// are stored in a canonical exact order; numerically close but exactly
/// distinct values stay distinct.
class PrimeSpectrum {
public:
    explicit PrimeSpectrum(std::vector<QLinearValue> elements) {
        if (elements.empty()) throw InvalidSpectrum("prime spectrum must be nonempty");
        for (const QLinearValue& v : elements)
            if (v.registry() != elements.front().registry())
                throw MixedRegistries("prime spectrum elements must share one registry");
        std::sort(elements.begin(), elements.end(), detail::lex_less);
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
        for (const QLinearValue& v : elements)
            if (!is_positive(v))
                throw InvalidSpectrum("prime spectrum elements must be strictly positive");
        elements_ = std::move(elements);
    }

    const std::vector<QLinearValue>& elements() const { return elements_; }
    const RegistryPtr& registry() const { return elements_.front().registry(); }
    std::size_t size() const { return elements_.size(); }

    bool contains(const QLinearValue& v) const {
        return std::any_of(elements_.begin(), elements_.end(),
                           [&](const QLinearValue& e) { return e == v; });
    }

    friend bool operator==(const PrimeSpectrum& a, const PrimeSpectrum& b) {
        return a.elements_ == b.elements_;
    }

private:
    std::vector<QLinearValue> elements_;
};

/// Rank of the ℤ-submodule of ℝ generated by the spectrum. The full action
/// spectrum (ℕ-multiple closure) generates the same module, so this one
/// number serves both.
inline std::size_t spectrum_rank(const PrimeSpectrum& sp) {
    return rank(std::span<const QLinearValue>(sp.elements()));
}

/// Least T > 0 with T/τ' ∈ ℕ for every element τ'; present exactly when the
/// rank is 1 (all elements are then rational multiples of any one of them).
inline std::optional<QLinearValue> common_period(const PrimeSpectrum& sp) {
    if (spectrum_rank(sp) != 1) return std::nullopt;
    const QLinearValue& ref = sp.elements().front();
    std::vector<Rational> ratios;
    for (const QLinearValue& v : sp.elements()) ratios.push_back(*rational_ratio(v, ref));
    return ref.scaled(rational_lcm(ratios));
}

/// Largest T with every element an ℕ-multiple of T; present exactly when the
/// rank is 1. The ℕ-multiple closure of the spectrum then sits inside {nT}.
inline std::optional<QLinearValue> rank_one_witness(const PrimeSpectrum& sp) {
    if (spectrum_rank(sp) != 1) return std::nullopt;
    const QLinearValue& ref = sp.elements().front();
    std::vector<Rational> ratios;
    for (const QLinearValue& v : sp.elements()) ratios.push_back(*rational_ratio(v, ref));
    return ref.scaled(rational_gcd(ratios));
}

struct BesseVerdict {
    enum class Kind { Besse, NotBesse };
    Kind verdict;
    std::optional<QLinearValue> witness;
};

/// Every orbit closed ⟺ all periods share a common multiple ⟺ the spectrum
/// has rank 1; the witness is the minimal common period.
inline BesseVerdict besse_verdict(const PrimeSpectrum& sp) {
    std::optional<QLinearValue> period = common_period(sp);
    if (period) return {BesseVerdict::Kind::Besse, std::move(period)};
    return {BesseVerdict::Kind::NotBesse, std::nullopt};
}

/// All closed orbits share one minimal period.
inline bool is_zoll(const PrimeSpectrum& sp) { return sp.size() == 1; }

/// All periods n·τ' ≤ cutoff with n ≥ 1 and τ' prime, deduplicated and
/// sorted. Sorting uses compare, so indistinguishable-at-precision pairs
/// propagate as errors.
inline std::vector<QLinearValue> enumerate_action_spectrum(const PrimeSpectrum& sp,
                                                           const QLinearValue& cutoff) {
    if (cutoff.registry() != sp.registry())
        throw MixedRegistries("cutoff must live over the spectrum's registry");
    if (!is_positive(cutoff)) throw PreconditionViolated("cutoff must be positive");
    std::vector<QLinearValue> out;
    for (const QLinearValue& tau : sp.elements()) {
        QLinearValue multiple = tau;
        while (compare(multiple, cutoff) != Ordering::Greater) {
            out.push_back(multiple);
            multiple = multiple + tau;
        }
    }
    std::sort(out.begin(), out.end(), detail::lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::sort(out.begin(), out.end(), less_than);
    return out;
}

enum class MetricClass { General, Reversible, Riemannian };

/// What the spectral rank of a geodesic flow forces about the underlying
/// surface and metric. Only conclusions the rank actually licenses are set;
/// rank ≥ 2 is inconclusive.
struct FinslerConclusion {
    bool conclusive = false;
    std::string surface;  // "S2" or "RP2" when conclusive
    bool besse = false;
    bool zoll = false;
    bool constant_curvature = false;

    friend bool operator==(const FinslerConclusion&, const FinslerConclusion&) = default;
};

/// Decision table for Finsler geodesic flows on a surface presented through
/// the rank of the length spectrum. A Riemannian metric is in particular
/// reversible, so it inherits the reversible conclusions.
inline FinslerConclusion finsler_conclusion(bool orientable, MetricClass metric_class,
                                            std::size_t spectrum_rank_value) {
    if (spectrum_rank_value == 0)
        throw PreconditionViolated("spectrum rank must be at least 1");
    FinslerConclusion out;
    if (spectrum_rank_value != 1) return out;
    out.conclusive = true;
    out.besse = true;
    bool reversible = metric_class != MetricClass::General;
    if (orientable) {
        out.surface = "S2";
        out.zoll = reversible;
    } else {
        out.surface = "RP2";
        if (metric_class == MetricClass::Riemannian) {
            out.zoll = true;
            out.constant_curvature = true;
        }
    }
    return out;
}

}  // namespace reeb
