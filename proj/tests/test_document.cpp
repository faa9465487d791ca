#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "reeb/document.hpp"

using namespace reeb;

namespace {

RegistryPtr two_symbol_registry() {
    return BasisRegistry::create({{"s", "1.4142135623730951", 8},
                                  {"t", "1.7320508075688772", 8}});
}

template <typename F>
LocatedError capture(F&& f) {
    try {
        f();
    } catch (const LocatedError& e) {
        return e;
    }
    FAIL("expected a LocatedError");
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("rational json parsing and rendering") {
    CHECK(doc::parse_rational_json(Json("3/2"), "x") == Rational(3, 2));
    CHECK(doc::parse_rational_json(Json("-7"), "x") == Rational(-7));
    CHECK(doc::parse_rational_json(Json("0"), "x") == 0);
    CHECK(doc::rational_to_json(Rational(3, 2)) == Json("3/2"));
    CHECK(doc::rational_to_json(Rational(-4, 2)) == Json("-2"));

    LocatedError not_string = capture([] { doc::parse_rational_json(Json(3), "field"); });
    CHECK(not_string.name() == "SchemaViolation");
    CHECK(not_string.path() == "field");

    LocatedError garbage = capture([] { doc::parse_rational_json(Json("1.5x"), "field"); });
    CHECK(garbage.name() == "ParseError");
    CHECK(garbage.path() == "field");
    CHECK(is_schema_error_name(garbage.name()));
}

TEST_CASE("value serialization picks the bare string form exactly for rationals") {
    RegistryPtr reg = two_symbol_registry();
    CHECK(doc::value_to_json(QLinearValue::rational(Rational(3, 2), reg)) == Json("3/2"));
    CHECK(doc::value_to_json(QLinearValue::zero(reg)) == Json("0"));

    QLinearValue s = QLinearValue::basis_symbol("s", reg);
    Json s_json = doc::value_to_json(s);
    REQUIRE(s_json.is_object());
    CHECK(s_json.size() == 1);
    CHECK(s_json["s"] == "1");

    QLinearValue mixed = QLinearValue::rational(Rational(1, 2), reg) + s.scaled(3);
    Json mixed_json = doc::value_to_json(mixed);
    REQUIRE(mixed_json.is_object());
    std::vector<std::string> keys;
    for (const auto& item : mixed_json.items()) keys.push_back(item.key());
    CHECK(keys == std::vector<std::string>{"1", "s"});
    CHECK(mixed_json["1"] == "1/2");
    CHECK(mixed_json["s"] == "3");
}

TEST_CASE("value parsing accepts both forms and round-trips") {
    RegistryPtr reg = two_symbol_registry();
    CHECK(doc::parse_value_json(Json("5/3"), reg, "v") ==
          QLinearValue::rational(Rational(5, 3), reg));
    CHECK(doc::parse_value_json(Json::object(), reg, "v") == QLinearValue::zero(reg));

    Json map = Json::object();
    map["1"] = "-1/2";
    map["t"] = "2";
    QLinearValue expected = QLinearValue::rational(Rational(-1, 2), reg) +
                            QLinearValue::basis_symbol("t", reg).scaled(2);
    CHECK(doc::parse_value_json(map, reg, "v") == expected);

    for (int c0 = -2; c0 <= 2; ++c0)
        for (int c1 = -2; c1 <= 2; ++c1)
            for (int c2 = 0; c2 <= 2; ++c2) {
                QLinearValue v = QLinearValue::rational(Rational(c0, 3), reg) +
                                 QLinearValue::basis_symbol("s", reg).scaled(Rational(c1, 2)) +
                                 QLinearValue::basis_symbol("t", reg).scaled(c2);
                CHECK(doc::parse_value_json(doc::value_to_json(v), reg, "v") == v);
            }
}

TEST_CASE("value parsing rejects unknown symbols and wrong shapes as schema errors") {
    RegistryPtr reg = two_symbol_registry();

    Json unknown = Json::object();
    unknown["u"] = "1";
    LocatedError bad_symbol = capture([&] { doc::parse_value_json(unknown, reg, "v"); });
    CHECK(bad_symbol.name() == "SchemaViolation");
    CHECK(bad_symbol.path() == "v.u");

    Json numeric = Json::object();
    numeric["s"] = 2;
    LocatedError bad_coeff = capture([&] { doc::parse_value_json(numeric, reg, "v"); });
    CHECK(bad_coeff.name() == "SchemaViolation");
    CHECK(bad_coeff.path() == "v.s");

    LocatedError bad_shape = capture([&] { doc::parse_value_json(Json::array(), reg, "v"); });
    CHECK(bad_shape.name() == "SchemaViolation");
    CHECK(bad_shape.path() == "v");
}

TEST_CASE("spectrum parsing locates domain errors without reclassifying them") {
    RegistryPtr reg = two_symbol_registry();
    PrimeSpectrum sp = doc::parse_spectrum_json(Json::parse(R"(["1","2"])"), reg, "spectrum");
    CHECK(sp.size() == 2);
    CHECK(doc::spectrum_to_json(sp) == Json::parse(R"(["1","2"])"));

    LocatedError empty = capture([&] { doc::parse_spectrum_json(Json::array(), reg, "spectrum"); });
    CHECK(empty.name() == "InvalidSpectrum");
    CHECK(empty.path() == "spectrum");
    CHECK_FALSE(is_schema_error_name(empty.name()));

    LocatedError negative =
        capture([&] { doc::parse_spectrum_json(Json::parse(R"(["-1"])"), reg, "spectrum"); });
    CHECK(negative.name() == "InvalidSpectrum");

    LocatedError shape = capture([&] { doc::parse_spectrum_json(Json("1"), reg, "spectrum"); });
    CHECK(shape.name() == "SchemaViolation");
}

TEST_CASE("seifert parsing and serialization") {
    Json j = Json::parse(R"({"genus": 0, "pairs": [[3, 2], [2, -1]]})");
    SeifertInvariants s = doc::parse_seifert_json(j, "seifert");
    CHECK(s.genus() == 0);
    REQUIRE(s.pairs().size() == 2);
    CHECK(s.pairs()[0] == SeifertPair{3, 2});
    CHECK(s.pairs()[1] == SeifertPair{2, -1});
    CHECK(doc::seifert_to_json(s) == j);

    LocatedError unknown = capture(
        [] { doc::parse_seifert_json(Json::parse(R"({"genus":0,"pairs":[],"x":1})"), "seifert"); });
    CHECK(unknown.name() == "SchemaViolation");
    CHECK(unknown.path() == "seifert.x");

    LocatedError arity = capture(
        [] { doc::parse_seifert_json(Json::parse(R"({"genus":0,"pairs":[[1,2,3]]})"), "seifert"); });
    CHECK(arity.path() == "seifert.pairs[0]");

    LocatedError beta_type = capture(
        [] { doc::parse_seifert_json(Json::parse(R"({"genus":0,"pairs":[[2,"1"]]})"), "seifert"); });
    CHECK(beta_type.path() == "seifert.pairs[0][1]");

    LocatedError genus_type = capture(
        [] { doc::parse_seifert_json(Json::parse(R"({"genus":0.5,"pairs":[]})"), "seifert"); });
    CHECK(genus_type.path() == "seifert.genus");

    LocatedError not_coprime = capture(
        [] { doc::parse_seifert_json(Json::parse(R"({"genus":0,"pairs":[[4,2]]})"), "seifert"); });
    CHECK(not_coprime.name() == "InvalidSeifertInvariants");
    CHECK(not_coprime.path() == "seifert");

    NormalForm nf = normalize(s);
    Json nf_json = doc::normal_form_to_json(nf);
    CHECK(nf_json == Json::parse(R"({"genus":0,"b":-1,"exceptional":[[2,1],[3,2]]})"));
}

TEST_CASE("model and ellipsoid payloads") {
    RegistryPtr reg = two_symbol_registry();
    Json j = Json::parse(
        R"({"manifold_label":"S3","tau":"2","seifert":{"genus":0,"pairs":[[2,1]]}})");
    BesseModel m = doc::parse_model_json(j, reg, "model");
    CHECK(m.manifold_label() == "S3");
    CHECK(m.tau() == QLinearValue::rational(2, reg));
    CHECK(doc::model_to_json(m) == j);

    LocatedError gate = capture([&] {
        doc::parse_model_json(
            Json::parse(
                R"({"manifold_label":"S3","tau":"2","seifert":{"genus":0,"pairs":[[2,-1]]}})"),
            reg, "model");
    });
    CHECK(gate.name() == "InvalidModel");
    CHECK(gate.path() == "model");

    EllipsoidModel e =
        doc::parse_ellipsoid_json(Json::parse(R"({"a":"2","b":"1"})"), reg, "ellipsoid");
    CHECK(e.a() == QLinearValue::rational(1, reg));
    CHECK(e.b() == QLinearValue::rational(2, reg));

    LocatedError extra = capture([&] {
        doc::parse_ellipsoid_json(Json::parse(R"({"a":"1","b":"2","c":"3"})"), reg, "ellipsoid");
    });
    CHECK(extra.path() == "ellipsoid.c");
}

TEST_CASE("registry payloads") {
    Json j = Json::parse(
        R"({"symbols":[{"symbol":"s","approx":"1.41421","precision_digits":5}]})");
    RegistryPtr reg = doc::parse_registry_json(j, 0, "registry");
    CHECK(reg->symbol_count() == 1);
    CHECK(reg->id_of("s") == 1);

    RegistryPtr capped = doc::parse_registry_json(j, 3, "registry");
    CHECK(capped->max_precision_digits() == 3);
    CHECK(capped->radius(1, 2) == Rational(1, 1000));

    LocatedError duplicate = capture([&] {
        doc::parse_registry_json(
            Json::parse(R"({"symbols":[{"symbol":"s","approx":"1.5","precision_digits":1},
                                       {"symbol":"s","approx":"1.5","precision_digits":1}]})"),
            0, "registry");
    });
    CHECK(duplicate.name() == "InvalidRegistry");
    CHECK(duplicate.path() == "registry");
    CHECK_FALSE(is_schema_error_name(duplicate.name()));

    LocatedError negative_digits = capture([&] {
        doc::parse_registry_json(
            Json::parse(R"({"symbols":[{"symbol":"s","approx":"1.5","precision_digits":-1}]})"), 0,
            "registry");
    });
    CHECK(negative_digits.name() == "SchemaViolation");
    CHECK(negative_digits.path() == "registry.symbols[0].precision_digits");

    LocatedError extra_key = capture([&] {
        doc::parse_registry_json(
            Json::parse(R"({"symbols":[{"symbol":"s","approx":"1.5","precision_digits":1,"x":0}]})"),
            0, "registry");
    });
    CHECK(extra_key.path() == "registry.symbols[0].x");
}

TEST_CASE("input document envelope") {
    InputDocument d = parse_input_document(R"({"version":"reeb-spectra/1"})");
    CHECK(d.registry->symbol_count() == 0);

    InputDocument with_registry = parse_input_document(
        R"({"version":"reeb-spectra/1",
            "registry":{"symbols":[{"symbol":"s","approx":"1.5","precision_digits":2}]},
            "spectrum":[{"s":"1"}]})");
    CHECK(with_registry.registry->symbol_count() == 1);
    PrimeSpectrum sp = doc::parse_spectrum_json(document_payload(with_registry, "spectrum"),
                                                with_registry.registry, "spectrum");
    CHECK(sp.size() == 1);

    LocatedError syntax = capture([] { parse_input_document("{"); });
    CHECK(syntax.name() == "ParseError");
    CHECK(is_schema_error_name(syntax.name()));

    LocatedError no_version = capture([] { parse_input_document("{}"); });
    CHECK(no_version.name() == "SchemaViolation");
    CHECK(no_version.path() == "");

    LocatedError bad_version =
        capture([] { parse_input_document(R"({"version":"reeb-spectra/2"})"); });
    CHECK(bad_version.path() == "version");

    LocatedError stray_key =
        capture([] { parse_input_document(R"({"version":"reeb-spectra/1","xyz":1})"); });
    CHECK(stray_key.path() == "xyz");

    LocatedError bad_values =
        capture([] { parse_input_document(R"({"version":"reeb-spectra/1","values":[]})"); });
    CHECK(bad_values.path() == "values");

    LocatedError missing_payload =
        capture([] { document_payload(parse_input_document(R"({"version":"reeb-spectra/1"})"),
                                      "spectrum"); });
    CHECK(missing_payload.name() == "SchemaViolation");
}

TEST_CASE("value references resolve rationals, names, then symbols") {
    InputDocument d = parse_input_document(
        R"({"version":"reeb-spectra/1",
            "registry":{"symbols":[{"symbol":"s","approx":"1.5","precision_digits":2}]},
            "values":{"T":{"s":"2"},"half":"1/2"}})");

    CHECK(resolve_value_ref("3/2", d, "--cutoff") ==
          QLinearValue::rational(Rational(3, 2), d.registry));
    CHECK(resolve_value_ref("T", d, "--cutoff") ==
          QLinearValue::basis_symbol("s", d.registry).scaled(2));
    CHECK(resolve_value_ref("half", d, "--cutoff") ==
          QLinearValue::rational(Rational(1, 2), d.registry));
    CHECK(resolve_value_ref("s", d, "--cutoff") == QLinearValue::basis_symbol("s", d.registry));

    LocatedError unresolved = capture([&] { resolve_value_ref("nope", d, "--cutoff"); });
    CHECK(unresolved.name() == "SchemaViolation");
    CHECK(unresolved.path() == "--cutoff");
}

TEST_CASE("output envelopes are stable and round-trip through the renderer") {
    Json result = Json::object();
    result["rank"] = 2;
    Json success = output_success("rank", result);
    std::string text = dump_document(success);
    CHECK(text.back() == '\n');
    CHECK(text == dump_document(success));
    CHECK(dump_document(Json::parse(text)) == text);
    std::vector<std::string> keys;
    for (const auto& item : success.items()) keys.push_back(item.key());
    CHECK(keys == std::vector<std::string>{"version", "command", "result"});

    Json failure = output_error("rank", "InvalidSpectrum", "boom", "spectrum");
    CHECK(failure["error"] ==
          Json::parse(R"({"name":"InvalidSpectrum","message":"boom","path":"spectrum"})"));

    CHECK(is_schema_error_name("SchemaViolation"));
    CHECK(is_schema_error_name("ParseError"));
    CHECK_FALSE(is_schema_error_name("InvalidSpectrum"));
    CHECK_FALSE(is_schema_error_name("PreconditionViolated"));
}
