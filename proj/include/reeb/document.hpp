#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "reeb/ech.hpp"
#include "reeb/errors.hpp"
#include "reeb/models.hpp"
#include "reeb/qlinear.hpp"
#include "reeb/rational.hpp"
#include "reeb/seifert.hpp"
#include "reeb/spectra.hpp"

namespace reeb {

using Json = nlohmann::ordered_json;

inline constexpr const char* kDocumentVersion = "reeb-spectra/1";

/// An error tied to a document field. `name()` keeps the underlying error's
/// vocabulary ("InvalidSeifertInvariants", "ParseError", ...); structural
/// problems use the name "SchemaViolation". Exit-code classification keys on
/// the name: SchemaViolation and ParseError are schema errors, the rest are
/// domain errors.
class LocatedError : public Error {
public:
    LocatedError(std::string cause_name, const std::string& message, std::string path)
        : Error(std::move(cause_name), message), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

inline bool is_schema_error_name(const std::string& name) {
    return name == "SchemaViolation" || name == "ParseError";
}

namespace doc {

[[noreturn]] inline void fail(const std::string& path, const std::string& message) {
    throw LocatedError("SchemaViolation", message, path);
}

/// Runs `f`, attaching `path` to any library error that escapes it.
template <typename F>
decltype(auto) at_path(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const LocatedError&) {
        throw;
    } catch (const Error& e) {
        throw LocatedError(e.name(), e.what(), path);
    }
}

inline std::string join(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

inline std::string index(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

inline const Json& require_object(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    return j;
}

inline const Json& require_array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

inline std::string require_string(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

inline long long require_integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    if (j.is_number_unsigned() &&
        j.get<unsigned long long>() >
            static_cast<unsigned long long>(std::numeric_limits<long long>::max()))
        fail(path, "integer out of range");
    return j.get<long long>();
}

inline const Json& require_member(const Json& obj, const char* key, const std::string& path) {
    require_object(obj, path);
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing required field \"") + key + "\"");
    return *it;
}

inline void reject_unknown_keys(const Json& obj, const std::vector<std::string>& allowed,
                                const std::string& path) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const std::string& key : allowed)
            if (item.key() == key) { known = true; break; }
        if (!known) fail(join(path, item.key()), "unknown field");
    }
}

inline Rational parse_rational_json(const Json& j, const std::string& path) {
    std::string text = require_string(j, path);
    return at_path(path, [&] { return parse_rational(text); });
}

inline Json rational_to_json(const Rational& q) { return format_rational(q); }

/// A value is either a bare rational string or a {symbol: "p/q"} map over the
/// registry (unit symbol "1" allowed as a key).
inline QLinearValue parse_value_json(const Json& j, const RegistryPtr& registry,
                                     const std::string& path) {
    if (j.is_string()) return QLinearValue::rational(parse_rational_json(j, path), registry);
    if (!j.is_object()) fail(path, "expected a rational string or a {symbol: \"p/q\"} object");
    QLinearValue::Coefficients terms;
    for (const auto& item : j.items()) {
        const std::string term_path = join(path, item.key());
        int id;
        try {
            id = registry->id_of(item.key());
        } catch (const InvalidRegistry&) {
            fail(term_path, "symbol \"" + item.key() + "\" is not declared in the registry");
        }
        terms.emplace_back(id, parse_rational_json(item.value(), term_path));
    }
    return at_path(path, [&] { return QLinearValue::from_terms(registry, std::move(terms)); });
}

inline Json value_to_json(const QLinearValue& v) {
    if (v.is_rational()) return rational_to_json(*v.as_rational());
    Json obj = Json::object();
    for (const auto& [id, c] : v.coefficients())
        obj[v.registry()->symbol_name(id)] = rational_to_json(c);
    return obj;
}

inline std::vector<QLinearValue> parse_value_array(const Json& j, const RegistryPtr& registry,
                                                   const std::string& path) {
    require_array(j, path);
    std::vector<QLinearValue> values;
    values.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        values.push_back(parse_value_json(j[i], registry, index(path, i)));
    return values;
}

inline Json values_to_json(const std::vector<QLinearValue>& values) {
    Json arr = Json::array();
    for (const QLinearValue& v : values) arr.push_back(value_to_json(v));
    return arr;
}

inline PrimeSpectrum parse_spectrum_json(const Json& j, const RegistryPtr& registry,
                                         const std::string& path) {
    std::vector<QLinearValue> values = parse_value_array(j, registry, path);
    return at_path(path, [&] { return PrimeSpectrum(std::move(values)); });
}

inline Json spectrum_to_json(const PrimeSpectrum& sp) { return values_to_json(sp.elements()); }

inline SeifertInvariants parse_seifert_json(const Json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown_keys(j, {"genus", "pairs"}, path);
    long long genus = require_integer(require_member(j, "genus", path), join(path, "genus"));
    const Json& pairs_json = require_member(j, "pairs", path);
    const std::string pairs_path = join(path, "pairs");
    require_array(pairs_json, pairs_path);
    std::vector<SeifertPair> pairs;
    pairs.reserve(pairs_json.size());
    for (std::size_t i = 0; i < pairs_json.size(); ++i) {
        const std::string pair_path = index(pairs_path, i);
        require_array(pairs_json[i], pair_path);
        if (pairs_json[i].size() != 2) fail(pair_path, "expected a pair [alpha, beta]");
        SeifertPair pair;
        pair.alpha = require_integer(pairs_json[i][0], index(pair_path, 0));
        pair.beta = require_integer(pairs_json[i][1], index(pair_path, 1));
        pairs.push_back(pair);
    }
    return at_path(path, [&] { return SeifertInvariants(genus, std::move(pairs)); });
}

inline Json pairs_to_json(const std::vector<SeifertPair>& pairs) {
    Json arr = Json::array();
    for (const SeifertPair& pair : pairs) arr.push_back(Json::array({pair.alpha, pair.beta}));
    return arr;
}

inline Json seifert_to_json(const SeifertInvariants& s) {
    Json obj = Json::object();
    obj["genus"] = s.genus();
    obj["pairs"] = pairs_to_json(s.pairs());
    return obj;
}

inline Json normal_form_to_json(const NormalForm& nf) {
    Json obj = Json::object();
    obj["genus"] = nf.genus;
    obj["b"] = nf.b;
    obj["exceptional"] = pairs_to_json(nf.exceptional);
    return obj;
}

inline BesseModel parse_model_json(const Json& j, const RegistryPtr& registry,
                                   const std::string& path) {
    require_object(j, path);
    reject_unknown_keys(j, {"manifold_label", "tau", "seifert"}, path);
    std::string label = require_string(require_member(j, "manifold_label", path),
                                       join(path, "manifold_label"));
    QLinearValue tau =
        parse_value_json(require_member(j, "tau", path), registry, join(path, "tau"));
    SeifertInvariants seifert =
        parse_seifert_json(require_member(j, "seifert", path), join(path, "seifert"));
    return at_path(path, [&] { return BesseModel(std::move(label), std::move(tau), std::move(seifert)); });
}

inline Json model_to_json(const BesseModel& m) {
    Json obj = Json::object();
    obj["manifold_label"] = m.manifold_label();
    obj["tau"] = value_to_json(m.tau());
    obj["seifert"] = seifert_to_json(m.seifert());
    return obj;
}

inline EllipsoidModel parse_ellipsoid_json(const Json& j, const RegistryPtr& registry,
                                           const std::string& path) {
    require_object(j, path);
    reject_unknown_keys(j, {"a", "b"}, path);
    QLinearValue a = parse_value_json(require_member(j, "a", path), registry, join(path, "a"));
    QLinearValue b = parse_value_json(require_member(j, "b", path), registry, join(path, "b"));
    return at_path(path, [&] { return EllipsoidModel(std::move(a), std::move(b)); });
}

inline RegistryPtr parse_registry_json(const Json& j, unsigned max_precision_digits,
                                       const std::string& path) {
    require_object(j, path);
    reject_unknown_keys(j, {"symbols"}, path);
    const Json& symbols_json = require_member(j, "symbols", path);
    const std::string symbols_path = join(path, "symbols");
    require_array(symbols_json, symbols_path);
    std::vector<BasisEntry> entries;
    entries.reserve(symbols_json.size());
    for (std::size_t i = 0; i < symbols_json.size(); ++i) {
        const std::string entry_path = index(symbols_path, i);
        require_object(symbols_json[i], entry_path);
        reject_unknown_keys(symbols_json[i], {"symbol", "approx", "precision_digits"}, entry_path);
        BasisEntry entry;
        entry.symbol = require_string(require_member(symbols_json[i], "symbol", entry_path),
                                      join(entry_path, "symbol"));
        entry.approx = require_string(require_member(symbols_json[i], "approx", entry_path),
                                      join(entry_path, "approx"));
        long long digits = require_integer(
            require_member(symbols_json[i], "precision_digits", entry_path),
            join(entry_path, "precision_digits"));
        if (digits < 0 || digits > std::numeric_limits<int>::max())
            fail(join(entry_path, "precision_digits"), "integer out of range");
        entry.precision_digits = static_cast<unsigned>(digits);
        entries.push_back(std::move(entry));
    }
    return at_path(path, [&] { return BasisRegistry::create(std::move(entries), max_precision_digits); });
}

}  // namespace doc

/// A parsed input document: the raw tree plus the registry every payload
/// value is read against.
struct InputDocument {
    Json raw = Json::object();
    RegistryPtr registry;
};

inline InputDocument parse_input_document(const std::string& text,
                                          unsigned max_precision_digits = 0) {
    InputDocument document;
    try {
        document.raw = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw LocatedError("ParseError", e.what(), "");
    }
    doc::require_object(document.raw, "");
    doc::reject_unknown_keys(document.raw,
                             {"version", "registry", "values", "spectrum", "seifert", "seifert2",
                              "model", "model2", "ellipsoid", "ech"},
                             "");
    std::string version =
        doc::require_string(doc::require_member(document.raw, "version", ""), "version");
    if (version != kDocumentVersion)
        doc::fail("version", "unsupported document version \"" + version + "\"");
    if (auto it = document.raw.find("registry"); it != document.raw.end())
        document.registry = doc::parse_registry_json(*it, max_precision_digits, "registry");
    else
        document.registry = BasisRegistry::create({}, max_precision_digits);
    if (auto it = document.raw.find("values"); it != document.raw.end())
        doc::require_object(*it, "values");
    return document;
}

/// Fetches a required payload from the document root.
inline const Json& document_payload(const InputDocument& document, const char* key) {
    return doc::require_member(document.raw, key, "");
}

/// Resolves a flag-supplied value reference: an inline rational, a name in
/// the document's "values" table, or a bare registry symbol.
inline QLinearValue resolve_value_ref(const std::string& ref, const InputDocument& document,
                                      const std::string& flag_path) {
    try {
        return QLinearValue::rational(parse_rational(ref), document.registry);
    } catch (const ParseError&) {
    }
    if (auto it = document.raw.find("values"); it != document.raw.end()) {
        if (auto entry = it->find(ref); entry != it->end())
            return doc::parse_value_json(*entry, document.registry, doc::join("values", ref));
    }
    try {
        return QLinearValue::basis_symbol(ref, document.registry);
    } catch (const InvalidRegistry&) {
    }
    doc::fail(flag_path, "unresolvable value reference \"" + ref + "\"");
}

inline Json output_success(const std::string& command, Json result) {
    Json out = Json::object();
    out["version"] = kDocumentVersion;
    out["command"] = command;
    out["result"] = std::move(result);
    return out;
}

inline Json output_error(const std::string& command, const std::string& name,
                         const std::string& message, const std::string& path) {
    Json error = Json::object();
    error["name"] = name;
    error["message"] = message;
    error["path"] = path;
    Json out = Json::object();
    out["version"] = kDocumentVersion;
    out["command"] = command;
    out["error"] = std::move(error);
    return out;
}

/// Canonical byte rendering: two-space indent, trailing newline. Identical
/// documents must serialize to identical bytes.
inline std::string dump_document(const Json& document) { return document.dump(2) + "\n"; }

}  // namespace reeb
