#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <utility>
#include <vector>

#include "reeb/errors.hpp"
#include "reeb/rational.hpp"

namespace reeb {

struct SeifertPair {
    long long alpha = 1;
    long long beta = 0;

    friend bool operator==(const SeifertPair&, const SeifertPair&) = default;
};

/// Classifying data (g; α_1,β_1,...,α_r,β_r) of a Seifert fibration over a
/// closed orientable genus-g surface. β may be negative; each pair is coprime
/// (α = 1 pairs carry arbitrary β and are removable by moves).
class SeifertInvariants {
public:
    SeifertInvariants(long long genus, std::vector<SeifertPair> pairs)
        : genus_(genus), pairs_(std::move(pairs)) {
        if (genus_ < 0) throw InvalidSeifertInvariants("genus must be nonnegative");
        for (const SeifertPair& pair : pairs_) {
            if (pair.alpha < 1)
                throw InvalidSeifertInvariants("fiber multiplicity alpha must be at least 1");
            if (std::gcd(pair.alpha, std::llabs(pair.beta)) != 1)
                throw InvalidSeifertInvariants("pair (alpha, beta) must be coprime");
        }
    }

    long long genus() const { return genus_; }
    const std::vector<SeifertPair>& pairs() const { return pairs_; }

    friend bool operator==(const SeifertInvariants&, const SeifertInvariants&) = default;

private:
    long long genus_;
    std::vector<SeifertPair> pairs_;
};

/// Canonical representative of a fibration-isomorphism class: one integer
/// twist b plus exceptional pairs with residues 0 < β̄ < α, sorted.
struct NormalForm {
    long long genus = 0;
    long long b = 0;
    std::vector<SeifertPair> exceptional;

    friend bool operator==(const NormalForm&, const NormalForm&) = default;

    /// The tuple (g; 1,b, α_1,β̄_1, ...) presenting this class.
    SeifertInvariants to_invariants() const {
        std::vector<SeifertPair> pairs;
        pairs.push_back({1, b});
        pairs.insert(pairs.end(), exceptional.begin(), exceptional.end());
        return SeifertInvariants(genus, std::move(pairs));
    }
};

/// Euler number e = Σ β_i/α_i, an invariant of the fibration.
inline Rational euler_number(const SeifertInvariants& s) {
    Rational e = 0;
    for (const SeifertPair& pair : s.pairs()) e += Rational(pair.beta, pair.alpha);
    return e;
}

inline NormalForm normalize(const SeifertInvariants& s) {
    NormalForm nf;
    nf.genus = s.genus();
    for (const SeifertPair& pair : s.pairs()) {
        long long residue = ((pair.beta % pair.alpha) + pair.alpha) % pair.alpha;
        nf.b += (pair.beta - residue) / pair.alpha;
        if (pair.alpha >= 2) nf.exceptional.push_back({pair.alpha, residue});
    }
    std::sort(nf.exceptional.begin(), nf.exceptional.end(),
              [](const SeifertPair& x, const SeifertPair& y) {
                  return std::pair(x.alpha, x.beta) < std::pair(y.alpha, y.beta);
              });
    return nf;
}

/// Orientation-preserving fibration isomorphism.
inline bool equivalent(const SeifertInvariants& s1, const SeifertInvariants& s2) {
    return normalize(s1) == normalize(s2);
}

inline SeifertInvariants reverse_orientation(const SeifertInvariants& s) {
    std::vector<SeifertPair> pairs = s.pairs();
    for (SeifertPair& pair : pairs) pair.beta = -pair.beta;
    return SeifertInvariants(s.genus(), std::move(pairs));
}

/// Necessary condition for the fibration to come from a Besse contact form:
/// strictly positive Euler number. Sufficiency is not claimed.
inline bool besse_realizable(const SeifertInvariants& s) { return euler_number(s) > 0; }

// ---------------------------------------------------------------------------
// Equivalence moves
// ---------------------------------------------------------------------------

/// Reorders the pair list (isomorphism never depends on pair order).
inline SeifertInvariants reorder_pairs(const SeifertInvariants& s,
                                       const std::vector<std::size_t>& permutation) {
    if (permutation.size() != s.pairs().size())
        throw PreconditionViolated("permutation length must match pair count");
    std::vector<SeifertPair> pairs;
    for (std::size_t idx : permutation) pairs.push_back(s.pairs().at(idx));
    return SeifertInvariants(s.genus(), std::move(pairs));
}

/// Adjoins a trivial (1, 0) pair; the inverse move deletes one.
inline SeifertInvariants with_trivial_pair(const SeifertInvariants& s) {
    std::vector<SeifertPair> pairs = s.pairs();
    pairs.push_back({1, 0});
    return SeifertInvariants(s.genus(), std::move(pairs));
}

/// Moves one full twist between two distinct fibers: β_i += α_i, β_j -= α_j.
/// Coprimality is preserved since residues mod α are unchanged.
inline SeifertInvariants twist_transfer(const SeifertInvariants& s, std::size_t i,
                                        std::size_t j) {
    if (i == j || i >= s.pairs().size() || j >= s.pairs().size())
        throw PreconditionViolated("twist transfer needs two distinct pair indices");
    std::vector<SeifertPair> pairs = s.pairs();
    pairs[i].beta += pairs[i].alpha;
    pairs[j].beta -= pairs[j].alpha;
    return SeifertInvariants(s.genus(), std::move(pairs));
}

// ---------------------------------------------------------------------------
// Lens-space constraints
// ---------------------------------------------------------------------------

/// Whether the genus-0 fibration s can fiber the lens space L(p,q)
/// (L(0,1) = S²×S¹, L(1,q) = S³). Three mutually exclusive constraint
/// shapes apply depending on p and the number of singular fibers:
///   p = 0:  s ≅ (0; α,β, α,-β) for coprime α > 0, β ≥ 0;
///   p > 0, at most one singular fiber:  s ≅ (0; α, p) with α ≡ q or
///     α·q ≡ 1 mod p;
///   p > 0, two singular fibers:  gcd(α_1, α_2) divides p (the matching
///     β constraints involve auxiliary functions with no closed form given,
///     so they are deliberately not checked).
inline bool lens_fibration_check(long long p, long long q, const SeifertInvariants& s) {
    if (p < 0) throw InvalidLensParameters("p must be nonnegative");
    if (p > 0 && std::gcd(p, std::llabs(q)) != 1)
        throw InvalidLensParameters("p and q must be coprime");
    if (s.genus() != 0) throw PreconditionViolated("lens fibrations have base genus 0");
    NormalForm nf = normalize(s);
    if (nf.exceptional.size() > 2)
        throw PreconditionViolated("lens fibrations have at most two singular fibers");

    if (p == 0) {
        // Normal forms of (0; α,β, α,-β): with α = 1 this is (b=0, none);
        // with α ≥ 2 it is (b=-1, [(α,β̄), (α,α-β̄)]).
        if (nf.exceptional.empty()) return nf.b == 0;
        if (nf.exceptional.size() != 2) return false;
        const SeifertPair& first = nf.exceptional[0];
        const SeifertPair& second = nf.exceptional[1];
        return nf.b == -1 && first.alpha == second.alpha &&
               first.beta + second.beta == first.alpha;
    }

    if (nf.exceptional.size() == 2)
        return p % std::gcd(nf.exceptional[0].alpha, nf.exceptional[1].alpha) == 0;

    // Zero or one singular fiber: collapse to a single-pair presentation
    // (0; α, β_total) with β_total = b·α + β̄, then demand β_total = p and
    // the multiplicity congruence.
    long long alpha = nf.exceptional.empty() ? 1 : nf.exceptional[0].alpha;
    long long beta_total = nf.b * alpha + (nf.exceptional.empty() ? 0 : nf.exceptional[0].beta);
    if (beta_total != p) return false;
    auto mod_p = [&](long long x) { return ((x % p) + p) % p; };
    return mod_p(alpha) == mod_p(q) || mod_p(alpha * mod_p(q)) == 1 % p;
}

/// Bounded verifier that the two diophantine equations
///   (1 + n₁·n₂)·α = q   and   (q + n₁·n₂)·α = 1,   n₁ = p/α,
/// have no integer solution n₂ with |n₂| ≤ search_bound. Both equations are
/// linear in n₂, so solvability within the bound is decided exactly by one
/// divisibility check each.
inline bool singular_count_obstruction(long long p, long long q, long long alpha,
                                       long long search_bound) {
    if (p <= 1) throw PreconditionViolated("p must exceed 1");
    if (alpha <= 1) throw PreconditionViolated("alpha must exceed 1");
    if (std::gcd(p, std::llabs(q)) != 1) throw PreconditionViolated("p, q must be coprime");
    if (p % alpha != 0) throw PreconditionViolated("alpha must divide p");
    if (search_bound < 0) throw PreconditionViolated("search bound must be nonnegative");
    Int n1 = p / alpha;
    Int step = n1 * alpha;
    auto solvable_within_bound = [&](const Int& target) {
        if (target % step != 0) return false;
        Int n2 = target / step;
        return abs(n2) <= search_bound;
    };
    // (1 + n1*n2)*alpha = q  <=>  step*n2 = q - alpha
    // (q + n1*n2)*alpha = 1  <=>  step*n2 = 1 - q*alpha
    return !solvable_within_bound(Int(q) - alpha) && !solvable_within_bound(1 - Int(q) * alpha);
}

}  // namespace reeb
