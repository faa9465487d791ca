#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reeb/errors.hpp"
#include "reeb/rational.hpp"

namespace reeb {

// ---------------------------------------------------------------------------
// Basis registry
// ---------------------------------------------------------------------------

/// One declared basis symbol: a name, a positive decimal approximation, and
/// how many of its digits are declared trustworthy.
struct BasisEntry {
    std::string symbol;
    std::string approx;
    unsigned precision_digits = 0;
};

/// An immutable, declared ℚ-linearly-independent positive basis of the reals
/// under consideration. The rational unit is always present as symbol "1"
/// (id 0) with an exact, zero-width interval; declared symbols get ids 1..n.
///
/// Independence is trusted, never verified.
class BasisRegistry {
public:
    static constexpr int kUnitId = 0;

    /// Builds a registry. `max_precision_digits` caps the working precision
    /// of interval refinement; 0 means "no extra cap" (the per-symbol limit
    /// of 4x declared digits and the approximation string's own length still
    /// apply).
    static std::shared_ptr<const BasisRegistry> create(std::vector<BasisEntry> entries,
                                                       unsigned max_precision_digits = 0) {
        auto reg = std::shared_ptr<BasisRegistry>(new BasisRegistry());
        reg->max_precision_digits_ = max_precision_digits;
        for (const BasisEntry& entry : entries) {
            if (entry.symbol.empty() || entry.symbol == "1")
                throw InvalidRegistry("basis symbol must be a nonempty identifier other than \"1\"");
            if (!is_identifier(entry.symbol))
                throw InvalidRegistry("basis symbol \"" + entry.symbol + "\" is not an identifier");
            for (const Symbol& prev : reg->symbols_)
                if (prev.name == entry.symbol)
                    throw InvalidRegistry("duplicate basis symbol \"" + entry.symbol + "\"");
            if (entry.precision_digits == 0)
                throw InvalidRegistry("symbol \"" + entry.symbol + "\": precision_digits must be positive");
            ParsedDecimal parsed = parse_decimal(entry.approx);
            if (parsed.value <= 0)
                throw InvalidRegistry("symbol \"" + entry.symbol + "\": approximation must be positive");
            Symbol sym;
            sym.name = entry.symbol;
            sym.approx = entry.approx;
            sym.precision_digits = entry.precision_digits;
            sym.value = parsed.value;
            for (unsigned stage = 0; stage < kStages; ++stage) {
                unsigned digits = std::min(entry.precision_digits * (1u << stage), parsed.fractional_digits);
                digits = std::max(digits, 1u);
                if (max_precision_digits > 0) digits = std::min(digits, max_precision_digits);
                sym.radius[stage] = Rational(1, int_pow10(digits));
            }
            reg->symbols_.push_back(std::move(sym));
        }
        return reg;
    }

    std::size_t symbol_count() const { return symbols_.size(); }
    unsigned max_precision_digits() const { return max_precision_digits_; }

    /// Total coefficient-vector dimension including the unit.
    std::size_t dimension() const { return symbols_.size() + 1; }

    int id_of(std::string_view symbol) const {
        if (symbol == "1") return kUnitId;
        for (std::size_t i = 0; i < symbols_.size(); ++i)
            if (symbols_[i].name == symbol) return static_cast<int>(i) + 1;
        throw InvalidRegistry("unknown basis symbol \"" + std::string(symbol) + "\"");
    }

    const std::string& symbol_name(int id) const {
        static const std::string unit = "1";
        if (id == kUnitId) return unit;
        return symbols_.at(static_cast<std::size_t>(id) - 1).name;
    }

    const std::string& approx_string(int id) const {
        return symbols_.at(static_cast<std::size_t>(id) - 1).approx;
    }

    unsigned precision_digits(int id) const {
        return symbols_.at(static_cast<std::size_t>(id) - 1).precision_digits;
    }

    /// Midpoint of the symbol's interval model (exact value of its
    /// approximation string). The unit is exactly 1.
    const Rational& midpoint(int id) const {
        static const Rational one = 1;
        if (id == kUnitId) return one;
        return symbols_.at(static_cast<std::size_t>(id) - 1).value;
    }

    /// Interval half-width at refinement stage 0, 1, or 2 (declared digits,
    /// doubled, quadrupled, never beyond what the approximation string
    /// actually carries). The unit has zero width.
    const Rational& radius(int id, unsigned stage) const {
        static const Rational zero = 0;
        if (id == kUnitId) return zero;
        return symbols_.at(static_cast<std::size_t>(id) - 1).radius[std::min(stage, kStages - 1)];
    }

    static constexpr unsigned kStages = 3;

private:
    BasisRegistry() = default;

    static bool is_identifier(std::string_view s) {
        auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
        auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); };
        if (!alpha(s[0])) return false;
        return std::all_of(s.begin() + 1, s.end(), alnum);
    }

    struct Symbol {
        std::string name;
        std::string approx;
        unsigned precision_digits = 0;
        Rational value;
        Rational radius[kStages];
    };

    std::vector<Symbol> symbols_;
    unsigned max_precision_digits_ = 0;
};

using RegistryPtr = std::shared_ptr<const BasisRegistry>;

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

enum class Ordering { Less, Equal, Greater };

struct RationalInterval {
    Rational lo;
    Rational hi;
};

/// An exact element of the ℚ-span of the registry's basis: a finitely
/// supported coefficient map, stored sparse and sorted by symbol id with all
/// zero coefficients absent. Equality is coefficient-wise; ordering goes
/// through compare().
class QLinearValue {
public:
    using Coefficients = std::vector<std::pair<int, Rational>>;

    static QLinearValue zero(RegistryPtr registry) { return QLinearValue(std::move(registry), {}); }

    static QLinearValue rational(Rational q, RegistryPtr registry) {
        Coefficients coeffs;
        if (q != 0) coeffs.emplace_back(BasisRegistry::kUnitId, std::move(q));
        return QLinearValue(std::move(registry), std::move(coeffs));
    }

    static QLinearValue basis_symbol(std::string_view symbol, RegistryPtr registry) {
        int id = registry->id_of(symbol);
        return QLinearValue(std::move(registry), {{id, Rational(1)}});
    }

    /// Builds a value from (symbol id, coefficient) terms in any order;
    /// duplicate ids are summed and zeros dropped.
    static QLinearValue from_terms(RegistryPtr registry, Coefficients terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Coefficients coeffs;
        for (auto& [id, c] : terms) {
            if (id < 0 || static_cast<std::size_t>(id) >= registry->dimension())
                throw InvalidRegistry("symbol id out of range");
            if (!coeffs.empty() && coeffs.back().first == id)
                coeffs.back().second += c;
            else
                coeffs.emplace_back(id, std::move(c));
        }
        std::erase_if(coeffs, [](const auto& term) { return term.second == 0; });
        return QLinearValue(std::move(registry), std::move(coeffs));
    }

    const RegistryPtr& registry() const { return registry_; }
    const Coefficients& coefficients() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }

    /// True when the support is contained in the rational unit.
    bool is_rational() const {
        return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_[0].first == BasisRegistry::kUnitId);
    }

    std::optional<Rational> as_rational() const {
        if (coeffs_.empty()) return Rational(0);
        if (is_rational()) return coeffs_[0].second;
        return std::nullopt;
    }

    Rational coefficient(int id) const {
        for (const auto& [i, c] : coeffs_)
            if (i == id) return c;
        return Rational(0);
    }

    QLinearValue scaled(const Rational& factor) const {
        if (factor == 0) return zero(registry_);
        Coefficients coeffs = coeffs_;
        for (auto& [id, c] : coeffs) c *= factor;
        return QLinearValue(registry_, std::move(coeffs));
    }

    friend QLinearValue operator+(const QLinearValue& a, const QLinearValue& b) {
        require_same_registry(a, b);
        Coefficients out;
        out.reserve(a.coeffs_.size() + b.coeffs_.size());
        auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin();
        while (ia != a.coeffs_.end() || ib != b.coeffs_.end()) {
            if (ib == b.coeffs_.end() || (ia != a.coeffs_.end() && ia->first < ib->first)) {
                out.push_back(*ia++);
            } else if (ia == a.coeffs_.end() || ib->first < ia->first) {
                out.push_back(*ib++);
            } else {
                Rational sum = ia->second + ib->second;
                if (sum != 0) out.emplace_back(ia->first, std::move(sum));
                ++ia;
                ++ib;
            }
        }
        return QLinearValue(a.registry_, std::move(out));
    }

    friend QLinearValue operator-(const QLinearValue& a) { return a.scaled(Rational(-1)); }

    friend QLinearValue operator-(const QLinearValue& a, const QLinearValue& b) { return a + (-b); }

    /// Exact coefficient-wise equality over the same registry.
    friend bool operator==(const QLinearValue& a, const QLinearValue& b) {
        require_same_registry(a, b);
        return a.coeffs_ == b.coeffs_;
    }

    /// Outward interval evaluation under the registry approximations at the
    /// given refinement stage.
    RationalInterval interval_evaluation(unsigned stage = BasisRegistry::kStages - 1) const {
        Rational mid = 0, slack = 0;
        for (const auto& [id, c] : coeffs_) {
            mid += c * registry_->midpoint(id);
            if (id != BasisRegistry::kUnitId)
                slack += abs(c) * registry_->radius(id, stage);
        }
        return {mid - slack, mid + slack};
    }

private:
    QLinearValue(RegistryPtr registry, Coefficients coeffs)
        : registry_(std::move(registry)), coeffs_(std::move(coeffs)) {
        if (!registry_) throw InvalidRegistry("value requires a registry");
    }

    static void require_same_registry(const QLinearValue& a, const QLinearValue& b) {
        if (a.registry_ != b.registry_)
            throw MixedRegistries("values belong to different basis registries");
    }

    RegistryPtr registry_;
    Coefficients coeffs_;
};

// ---------------------------------------------------------------------------
// Comparison
// ---------------------------------------------------------------------------

/// Sign of a value: exact for rational values; otherwise decided by outward
/// interval evaluation, refining through the registry's precision stages.
/// Throws IndistinguishableAtPrecision when the registry approximations are
/// too coarse to separate a (coefficient-wise) nonzero value from zero.
inline int sign(const QLinearValue& v) {
    if (v.is_zero()) return 0;
    if (auto q = v.as_rational()) return *q > 0 ? 1 : -1;
    Rational mid = 0;
    for (const auto& [id, c] : v.coefficients()) mid += c * v.registry()->midpoint(id);
    for (unsigned stage = 0; stage < BasisRegistry::kStages; ++stage) {
        Rational slack = 0;
        for (const auto& [id, c] : v.coefficients())
            if (id != BasisRegistry::kUnitId) slack += abs(c) * v.registry()->radius(id, stage);
        if (mid > slack) return 1;
        if (mid < -slack) return -1;
    }
    throw IndistinguishableAtPrecision(
        "interval evaluation cannot separate a nonzero value from zero at maximum "
        "precision; the registry approximations are too coarse");
}

/// Total order on exactly-distinct values. Equal means identical coefficient
/// maps; Less/Greater are certified by interval arithmetic on x - y, so any
/// symbols shared by x and y cancel exactly before evaluation.
inline Ordering compare(const QLinearValue& x, const QLinearValue& y) {
    QLinearValue diff = x - y;
    int s = sign(diff);
    if (s == 0) return Ordering::Equal;
    return s < 0 ? Ordering::Less : Ordering::Greater;
}

inline bool is_positive(const QLinearValue& v) { return sign(v) > 0; }

inline bool less_than(const QLinearValue& x, const QLinearValue& y) {
    return compare(x, y) == Ordering::Less;
}

// ---------------------------------------------------------------------------
// Rank and ratios
// ---------------------------------------------------------------------------

namespace detail {

/// Fraction-free (Bareiss) row reduction over exact integers; returns the
/// number of pivots. Rows are pre-scaled copies, columns may be skipped when
/// entirely zero below the current row.
inline std::size_t integer_matrix_rank(std::vector<std::vector<Int>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    Int prev = 1;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                m[i][j] = (m[r][col] * m[i][j] - m[i][col] * m[r][j]) / prev;
            m[i][col] = 0;
        }
        prev = m[r][col];
        ++r;
    }
    return r;
}

}  // namespace detail

/// Rank of the ℤ-submodule of ℝ generated by the values: the dimension of
/// the ℚ-span of their coefficient vectors (the module is torsion-free, so
/// the two agree).
inline std::size_t rank(std::span<const QLinearValue> values) {
    if (values.empty()) throw PreconditionViolated("rank requires a nonempty set of values");
    const RegistryPtr& registry = values.front().registry();
    for (const QLinearValue& v : values)
        if (v.registry() != registry)
            throw MixedRegistries("rank requires all values over one registry");
    const std::size_t dim = registry->dimension();
    std::vector<std::vector<Int>> matrix;
    matrix.reserve(values.size());
    for (const QLinearValue& v : values) {
        Int denom = 1;
        for (const auto& [id, c] : v.coefficients()) denom = lcm(denom, denominator(c));
        std::vector<Int> row(dim, Int(0));
        for (const auto& [id, c] : v.coefficients())
            row[static_cast<std::size_t>(id)] = numerator(c) * (denom / denominator(c));
        matrix.push_back(std::move(row));
    }
    return detail::integer_matrix_rank(std::move(matrix));
}

inline std::size_t rank(std::initializer_list<QLinearValue> values) {
    return rank(std::span<const QLinearValue>(values.begin(), values.size()));
}

/// The exact rational q with x = q·y, when the coefficient vectors are
/// proportional over ℚ; nullopt otherwise.
inline std::optional<Rational> rational_ratio(const QLinearValue& x, const QLinearValue& y) {
    if (x.registry() != y.registry())
        throw MixedRegistries("rational_ratio requires values over one registry");
    if (y.is_zero()) throw DivisionByZero("rational_ratio: zero divisor");
    if (x.is_zero()) return Rational(0);
    const auto& xc = x.coefficients();
    const auto& yc = y.coefficients();
    if (xc.size() != yc.size()) return std::nullopt;
    Rational ratio = xc[0].second / yc[0].second;
    for (std::size_t i = 0; i < xc.size(); ++i) {
        if (xc[i].first != yc[i].first) return std::nullopt;
        if (xc[i].second != ratio * yc[i].second) return std::nullopt;
    }
    return ratio;
}

}  // namespace reeb
