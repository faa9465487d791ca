#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reeb/errors.hpp"
#include "reeb/qlinear.hpp"
#include "reeb/seifert.hpp"
#include "reeb/spectra.hpp"

namespace reeb {

/// A Besse Reeb flow presented by its underlying manifold (caller-asserted
/// label, never computed), the minimal common period τ, and the Seifert
/// invariants of the orbit fibration. The fibration must pass the positive
/// Euler number gate, and τ must be positive.
///
/// τ is automatically the minimal common period of the spectrum this model
/// induces: the regular fibers contribute τ itself and every singular fiber
/// period τ/α divides it. The constructor still verifies that, so a
/// presentation whose period data ever failed to normalize would be rejected
/// rather than silently accepted.
class BesseModel {
public:
    BesseModel(std::string manifold_label, QLinearValue tau, SeifertInvariants seifert)
        : manifold_label_(std::move(manifold_label)),
          tau_(std::move(tau)),
          seifert_(std::move(seifert)) {
        if (manifold_label_.empty()) throw InvalidModel("manifold label must be nonempty");
        if (!is_positive(tau_)) throw InvalidModel("common period tau must be positive");
        if (!besse_realizable(seifert_))
            throw InvalidModel("fibration fails the positive Euler number gate");
        std::vector<Rational> ratios{Rational(1)};
        for (const SeifertPair& pair : seifert_.pairs())
            ratios.emplace_back(1, pair.alpha);
        if (rational_lcm(ratios) != 1)
            throw InvalidModel("tau is a non-minimal multiple of the common period");
    }

    const std::string& manifold_label() const { return manifold_label_; }
    const QLinearValue& tau() const { return tau_; }
    const SeifertInvariants& seifert() const { return seifert_; }

private:
    std::string manifold_label_;
    QLinearValue tau_;
    SeifertInvariants seifert_;
};

/// Minimal periods of the model's orbits: the regular fibers give τ, each
/// singular fiber of multiplicity α gives τ/α.
inline PrimeSpectrum model_prime_spectrum(const BesseModel& m) {
    std::vector<QLinearValue> elements{m.tau()};
    for (const SeifertPair& pair : m.seifert().pairs())
        if (pair.alpha >= 2) elements.push_back(m.tau().scaled(Rational(1, pair.alpha)));
    return PrimeSpectrum(std::move(elements));
}

/// The finite set of orbit multiplicities present in a model: the regular
/// stratum (multiplicity 1, always present) plus a count of exceptional
/// fibers per multiplicity α ≥ 2.
struct MultiplicityStrata {
    bool includes_regular_stratum = true;
    std::map<long long, long long> exceptional_counts;

    friend bool operator==(const MultiplicityStrata&, const MultiplicityStrata&) = default;
};

inline MultiplicityStrata multiplicity_strata(const BesseModel& m) {
    MultiplicityStrata strata;
    for (const SeifertPair& pair : m.seifert().pairs())
        if (pair.alpha >= 2) ++strata.exceptional_counts[pair.alpha];
    return strata;
}

/// The boundary of the ellipsoid E(a,b), normalized so that a ≤ b.
class EllipsoidModel {
public:
    EllipsoidModel(QLinearValue a, QLinearValue b) : a_(std::move(a)), b_(std::move(b)) {
        if (!is_positive(a_) || !is_positive(b_))
            throw InvalidModel("ellipsoid axes must be positive");
        if (compare(a_, b_) == Ordering::Greater) std::swap(a_, b_);
    }

    const QLinearValue& a() const { return a_; }
    const QLinearValue& b() const { return b_; }

private:
    QLinearValue a_;
    QLinearValue b_;
};

/// The two simple orbits have minimal periods a and b; when b/a is rational
/// every other orbit is closed with minimal period lcm(a,b).
inline PrimeSpectrum ellipsoid_prime_spectrum(const EllipsoidModel& e) {
    std::vector<QLinearValue> elements{e.a(), e.b()};
    if (auto ratio = rational_ratio(e.b(), e.a()))
        elements.push_back(e.a().scaled(rational_lcm({Rational(1), *ratio})));
    return PrimeSpectrum(std::move(elements));
}

inline bool ellipsoid_is_besse(const EllipsoidModel& e) {
    return rational_ratio(e.b(), e.a()).has_value();
}

namespace detail {

/// Least nonnegative x with p·x ≡ 1 (mod q); q ≥ 1 and gcd(p, q) = 1.
inline Int modular_inverse(Int p, const Int& q) {
    if (q == 1) return 0;
    Int r0 = q, r1 = p % q;
    if (r1 < 0) r1 += q;
    Int x0 = 0, x1 = 1;
    while (r1 != 0) {
        Int quot = r0 / r1;
        r0 -= quot * r1;
        std::swap(r0, r1);
        x0 -= quot * x1;
        std::swap(x0, x1);
    }
    Int x = x0 % q;
    if (x < 0) x += q;
    return x;
}

}  // namespace detail

/// Bridges a rational-ratio ellipsoid to its fibration presentation: with
/// a = p·t, b = q·t in lowest terms, the flow is the weight-(p,q) circle
/// action on S³ with common period τ = p·q·t and Seifert data
/// (0; q,β₁, p,β₂) for the Bézout solution p·β₁ + q·β₂ = 1, 0 ≤ β₁ < q.
/// Trivial (1,0) pairs are dropped; the Euler number is 1/(p·q).
inline BesseModel ellipsoid_to_besse_model(const EllipsoidModel& e) {
    auto ratio = rational_ratio(e.a(), e.b());
    if (!ratio) throw NotBesse("ellipsoid axes are not rationally dependent");
    Int p = numerator(*ratio);
    Int q = denominator(*ratio);
    QLinearValue t = e.a().scaled(Rational(1, p));
    QLinearValue tau = t.scaled(Rational(p * q));

    Int beta1 = detail::modular_inverse(p, q);
    Int beta2 = (1 - p * beta1) / q;
    std::vector<SeifertPair> pairs;
    for (auto [alpha, beta] : {std::pair(q, beta1), std::pair(p, beta2)}) {
        if (alpha == 1 && beta == 0) continue;
        pairs.push_back({static_cast<long long>(alpha), static_cast<long long>(beta)});
    }
    return BesseModel("S3", std::move(tau), SeifertInvariants(0, std::move(pairs)));
}

/// Two Besse models on the same manifold present isomorphic flows exactly
/// when their prime spectra coincide.
inline bool besse_forms_equivalent(const BesseModel& m1, const BesseModel& m2) {
    if (m1.manifold_label() != m2.manifold_label())
        throw ManifoldMismatch("models present flows on different manifolds");
    return model_prime_spectrum(m1) == model_prime_spectrum(m2);
}

struct ReconstructedFlow {
    QLinearValue tau;
    std::vector<Int> multiplicities;  // distinct alpha >= 2, ascending
};

/// Inverts model_prime_spectrum at spectrum level: a Besse prime spectrum
/// has the shape {τ, τ/a_1, ..., τ/a_s}, so the maximal element is τ and the
/// remaining elements determine the distinct multiplicities. Two exceptional
/// fibers sharing one α collapse to a single spectrum element, so counts are
/// not recoverable, only the set of values. Absent when the spectrum does
/// not have this shape.
inline std::optional<ReconstructedFlow> reconstruct_multiplicities(const PrimeSpectrum& sp) {
    if (spectrum_rank(sp) != 1) return std::nullopt;
    QLinearValue tau = sp.elements().front();
    for (const QLinearValue& v : sp.elements())
        if (compare(v, tau) == Ordering::Greater) tau = v;
    std::vector<Int> alphas;
    for (const QLinearValue& v : sp.elements()) {
        Rational ratio = *rational_ratio(tau, v);
        if (denominator(ratio) != 1) return std::nullopt;
        if (numerator(ratio) != 1) alphas.push_back(numerator(ratio));
    }
    std::sort(alphas.begin(), alphas.end());
    return ReconstructedFlow{std::move(tau), std::move(alphas)};
}

}  // namespace reeb
