#include <cstddef>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "reeb/document.hpp"

namespace {

using reeb::InputDocument;
using reeb::Json;

struct Options {
    std::string input_path;
    std::string output_path = "-";
    unsigned max_precision_digits = 0;
    std::string cutoff_ref;
    std::string level_ref;
    long long kmax = -1;
    long long k = -1;
    long long p = 0;
    long long q = 0;
    long long alpha = 0;
    long long bound = 0;
    std::vector<long long> checkpoints;
};

void add_io_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--input", opt.input_path, "Input document path, or - for stdin");
    cmd->add_option("--output", opt.output_path, "Output document path, or - for stdout");
    cmd->add_option("--max-precision-digits", opt.max_precision_digits,
                    "Cap interval refinement at this many fractional digits (0 = no cap)");
}

reeb::PrimeSpectrum payload_spectrum(const InputDocument& d) {
    return reeb::doc::parse_spectrum_json(reeb::document_payload(d, "spectrum"), d.registry,
                                          "spectrum");
}

reeb::SeifertInvariants payload_seifert(const InputDocument& d, const char* key) {
    return reeb::doc::parse_seifert_json(reeb::document_payload(d, key), key);
}

reeb::BesseModel payload_model(const InputDocument& d, const char* key) {
    return reeb::doc::parse_model_json(reeb::document_payload(d, key), d.registry, key);
}

reeb::EllipsoidModel payload_ellipsoid(const InputDocument& d) {
    return reeb::doc::parse_ellipsoid_json(reeb::document_payload(d, "ellipsoid"), d.registry,
                                           "ellipsoid");
}

/// The ech-query payload: the ellipsoid axes plus optional in-document copies
/// of the enumeration parameters (command-line flags take precedence).
struct EchQuery {
    reeb::QLinearValue a;
    reeb::QLinearValue b;
    std::optional<long long> kmax;
    std::optional<long long> k;
    std::optional<reeb::QLinearValue> level;
    std::optional<std::vector<long long>> checkpoints;
};

EchQuery payload_ech(const InputDocument& d) {
    const Json& j = reeb::document_payload(d, "ech");
    reeb::doc::require_object(j, "ech");
    reeb::doc::reject_unknown_keys(j, {"a", "b", "kmax", "L", "checkpoints", "k"}, "ech");
    EchQuery query{
        reeb::doc::parse_value_json(reeb::doc::require_member(j, "a", "ech"), d.registry, "ech.a"),
        reeb::doc::parse_value_json(reeb::doc::require_member(j, "b", "ech"), d.registry, "ech.b"),
        {}, {}, {}, {}};
    if (auto it = j.find("kmax"); it != j.end())
        query.kmax = reeb::doc::require_integer(*it, "ech.kmax");
    if (auto it = j.find("k"); it != j.end()) query.k = reeb::doc::require_integer(*it, "ech.k");
    if (auto it = j.find("L"); it != j.end())
        query.level = reeb::doc::parse_value_json(*it, d.registry, "ech.L");
    if (auto it = j.find("checkpoints"); it != j.end()) {
        reeb::doc::require_array(*it, "ech.checkpoints");
        std::vector<long long> points;
        for (std::size_t i = 0; i < it->size(); ++i)
            points.push_back(
                reeb::doc::require_integer((*it)[i], reeb::doc::index("ech.checkpoints", i)));
        query.checkpoints = std::move(points);
    }
    return query;
}

/// Merges a flag with its in-document fallback; flags win. Index parameters
/// feed std::size_t interfaces, so negatives are schema errors here rather
/// than huge values after conversion.
std::size_t require_index_param(long long flag_value, const std::optional<long long>& doc_value,
                                const std::string& flag_name, const std::string& doc_path) {
    long long v = flag_value >= 0 ? flag_value : doc_value.value_or(-1);
    if (v < 0)
        reeb::doc::fail(flag_name, "provide " + flag_name + " (or " + doc_path + " in the input)");
    return static_cast<std::size_t>(v);
}

std::vector<std::size_t> require_checkpoints(const std::vector<long long>& flag_value,
                                             const std::optional<std::vector<long long>>& doc_value) {
    const std::vector<long long>& points = !flag_value.empty() ? flag_value : doc_value.value_or(std::vector<long long>{});
    if (points.empty())
        reeb::doc::fail("--checkpoints",
                        "provide --checkpoints (or ech.checkpoints in the input)");
    std::vector<std::size_t> result;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] < 0) reeb::doc::fail(reeb::doc::index("--checkpoints", i), "expected a nonnegative integer");
        result.push_back(static_cast<std::size_t>(points[i]));
    }
    return result;
}

Json optional_value_json(const std::optional<reeb::QLinearValue>& v) {
    return v ? reeb::doc::value_to_json(*v) : Json(nullptr);
}

std::string read_all(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    std::string command;
    std::function<Json(const InputDocument&)> handler;

    CLI::App app{"Exact spectral calculus for Reeb flows: action-spectrum rank, Besse/Zoll "
                 "decisions, Seifert invariants, and ellipsoid ECH spectra"};
    app.require_subcommand(1);

    auto leaf = [&](CLI::App* parent, const char* name, const char* desc, std::string full_name,
                    std::function<Json(const InputDocument&)> fn) {
        CLI::App* cmd = parent->add_subcommand(name, desc);
        add_io_flags(cmd, opt);
        cmd->callback([&command, &handler, full_name = std::move(full_name), fn = std::move(fn)] {
            command = full_name;
            handler = fn;
        });
        return cmd;
    };

    leaf(&app, "rank", "Rank of the ZZ-submodule of RR generated by a spectrum", "rank",
         [](const InputDocument& d) {
             Json r = Json::object();
             r["rank"] = reeb::spectrum_rank(payload_spectrum(d));
             return r;
         });

    leaf(&app, "common-period", "Minimal common period of a spectrum, if one exists",
         "common-period", [](const InputDocument& d) {
             Json r = Json::object();
             r["period"] = optional_value_json(reeb::common_period(payload_spectrum(d)));
             return r;
         });

    leaf(&app, "besse-check", "Decide the Besse property from a prime action spectrum",
         "besse-check", [](const InputDocument& d) {
             reeb::BesseVerdict verdict = reeb::besse_verdict(payload_spectrum(d));
             Json r = Json::object();
             r["besse"] = verdict.verdict == reeb::BesseVerdict::Kind::Besse;
             r["common_period"] = optional_value_json(verdict.witness);
             return r;
         });

    leaf(&app, "zoll-check", "Decide the Zoll property (single prime period)", "zoll-check",
         [](const InputDocument& d) {
             Json r = Json::object();
             r["zoll"] = reeb::is_zoll(payload_spectrum(d));
             return r;
         });

    CLI::App* spectrum = app.add_subcommand("spectrum", "Action-spectrum operations");
    spectrum->require_subcommand(1);
    leaf(spectrum, "enumerate", "List the full action spectrum up to a cutoff",
         "spectrum enumerate", [&opt](const InputDocument& d) {
             reeb::QLinearValue cutoff = reeb::resolve_value_ref(opt.cutoff_ref, d, "--cutoff");
             Json r = Json::object();
             r["values"] = reeb::doc::values_to_json(
                 reeb::enumerate_action_spectrum(payload_spectrum(d), cutoff));
             return r;
         })
        ->add_option("--cutoff", opt.cutoff_ref,
                     "Action cutoff: a rational, a name in the document's \"values\" table, or a "
                     "basis symbol")
        ->required();

    CLI::App* seifert = app.add_subcommand("seifert", "Seifert-invariant calculus");
    seifert->require_subcommand(1);
    leaf(seifert, "normalize", "Normal form of a Seifert tuple", "seifert normalize",
         [](const InputDocument& d) {
             return reeb::doc::normal_form_to_json(reeb::normalize(payload_seifert(d, "seifert")));
         });
    leaf(seifert, "euler", "Euler number of a Seifert fibration", "seifert euler",
         [](const InputDocument& d) {
             Json r = Json::object();
             r["euler"] = reeb::doc::rational_to_json(reeb::euler_number(payload_seifert(d, "seifert")));
             return r;
         });
    leaf(seifert, "equiv", "Decide whether two Seifert tuples present the same fibration",
         "seifert equiv", [](const InputDocument& d) {
             Json r = Json::object();
             r["equivalent"] =
                 reeb::equivalent(payload_seifert(d, "seifert"), payload_seifert(d, "seifert2"));
             return r;
         });
    leaf(seifert, "reverse", "Seifert invariants of the orientation-reversed fibration",
         "seifert reverse", [](const InputDocument& d) {
             return reeb::doc::seifert_to_json(
                 reeb::reverse_orientation(payload_seifert(d, "seifert")));
         });
    leaf(seifert, "besse-ok", "Positivity gate: can the fibration carry a Besse Reeb flow",
         "seifert besse-ok", [](const InputDocument& d) {
             Json r = Json::object();
             r["besse_realizable"] = reeb::besse_realizable(payload_seifert(d, "seifert"));
             return r;
         });

    CLI::App* lens_check = leaf(
        &app, "lens-check", "Check a Seifert tuple against the lens-space fibration constraints",
        "lens-check", [&opt](const InputDocument& d) {
            Json r = Json::object();
            r["compatible"] =
                reeb::lens_fibration_check(opt.p, opt.q, payload_seifert(d, "seifert"));
            return r;
        });
    lens_check->add_option("--p", opt.p, "Lens-space parameter p")->required();
    lens_check->add_option("--q", opt.q, "Lens-space parameter q")->required();

    CLI::App* lens_obstruction = leaf(
        &app, "lens-obstruction",
        "Bounded search certifying that no Seifert presentation matches the given singular count",
        "lens-obstruction", [&opt](const InputDocument&) {
            Json r = Json::object();
            r["obstructed"] =
                reeb::singular_count_obstruction(opt.p, opt.q, opt.alpha, opt.bound);
            return r;
        });
    lens_obstruction->add_option("--p", opt.p, "Lens-space parameter p")->required();
    lens_obstruction->add_option("--q", opt.q, "Lens-space parameter q")->required();
    lens_obstruction->add_option("--alpha", opt.alpha, "Candidate multiplicity dividing p")
        ->required();
    lens_obstruction->add_option("--bound", opt.bound, "Search radius for the remaining pair")
        ->required();

    CLI::App* model = app.add_subcommand("model", "Besse flow models");
    model->require_subcommand(1);
    leaf(model, "spectrum", "Prime action spectrum of a Besse model", "model spectrum",
         [](const InputDocument& d) {
             Json r = Json::object();
             r["prime_spectrum"] =
                 reeb::doc::spectrum_to_json(reeb::model_prime_spectrum(payload_model(d, "model")));
             return r;
         });
    leaf(model, "strata", "Orbit multiplicity strata of a Besse model", "model strata",
         [](const InputDocument& d) {
             reeb::MultiplicityStrata strata =
                 reeb::multiplicity_strata(payload_model(d, "model"));
             Json counts = Json::object();
             for (const auto& [alpha, count] : strata.exceptional_counts)
                 counts[std::to_string(alpha)] = count;
             Json r = Json::object();
             r["regular_stratum"] = strata.includes_regular_stratum;
             r["exceptional"] = std::move(counts);
             return r;
         });
    leaf(model, "equiv", "Decide whether two models have the same prime action spectrum",
         "model equiv", [](const InputDocument& d) {
             Json r = Json::object();
             r["equivalent"] = reeb::besse_forms_equivalent(payload_model(d, "model"),
                                                            payload_model(d, "model2"));
             return r;
         });
    leaf(model, "reconstruct",
         "Recover the common period and exceptional multiplicities from a Besse prime spectrum",
         "model reconstruct", [](const InputDocument& d) {
             std::optional<reeb::ReconstructedFlow> flow =
                 reeb::reconstruct_multiplicities(payload_spectrum(d));
             Json r = Json::object();
             if (flow) {
                 Json mults = Json::array();
                 for (const reeb::Int& m : flow->multiplicities) mults.push_back(m.str());
                 r["tau"] = reeb::doc::value_to_json(flow->tau);
                 r["multiplicities"] = std::move(mults);
             } else {
                 r["tau"] = nullptr;
                 r["multiplicities"] = nullptr;
             }
             return r;
         });

    CLI::App* ellipsoid = app.add_subcommand("ellipsoid", "Ellipsoid boundary contact forms");
    ellipsoid->require_subcommand(1);
    leaf(ellipsoid, "spectrum", "Prime action spectrum of an ellipsoid boundary",
         "ellipsoid spectrum", [](const InputDocument& d) {
             Json r = Json::object();
             r["prime_spectrum"] =
                 reeb::doc::spectrum_to_json(reeb::ellipsoid_prime_spectrum(payload_ellipsoid(d)));
             return r;
         });
    leaf(ellipsoid, "besse", "Besse dichotomy for an ellipsoid boundary", "ellipsoid besse",
         [](const InputDocument& d) {
             reeb::EllipsoidModel e = payload_ellipsoid(d);
             Json r = Json::object();
             r["besse"] = reeb::ellipsoid_is_besse(e);
             r["prime_spectrum"] = reeb::doc::spectrum_to_json(reeb::ellipsoid_prime_spectrum(e));
             return r;
         });
    leaf(ellipsoid, "to-model", "Seifert Besse model of a rational ellipsoid boundary",
         "ellipsoid to-model", [](const InputDocument& d) {
             return reeb::doc::model_to_json(reeb::ellipsoid_to_besse_model(payload_ellipsoid(d)));
         });

    CLI::App* ech = app.add_subcommand("ech", "Ellipsoid ECH spectrum");
    ech->require_subcommand(1);
    leaf(ech, "values", "ECH spectral values N_0..N_kmax", "ech values",
         [&opt](const InputDocument& d) {
             EchQuery query = payload_ech(d);
             std::size_t kmax = require_index_param(opt.kmax, query.kmax, "--kmax", "ech.kmax");
             Json r = Json::object();
             r["values"] =
                 reeb::doc::values_to_json(reeb::ech_spectrum_values(query.a, query.b, kmax));
             return r;
         })
        ->add_option("--kmax", opt.kmax, "Largest spectral index to enumerate");
    leaf(ech, "count", "Number of ECH generators with action at most L", "ech count",
         [&opt](const InputDocument& d) {
             EchQuery query = payload_ech(d);
             std::optional<reeb::QLinearValue> level;
             if (!opt.level_ref.empty())
                 level = reeb::resolve_value_ref(opt.level_ref, d, "--L");
             else if (query.level)
                 level = query.level;
             else
                 reeb::doc::fail("--L", "provide --L (or ech.L in the input)");
             Json r = Json::object();
             r["count"] = reeb::filtered_generator_count(query.a, query.b, *level);
             return r;
         })
        ->add_option("--L", opt.level_ref,
                     "Action cutoff: a rational, a name in the document's \"values\" table, or a "
                     "basis symbol");
    leaf(ech, "gap", "First index where the spectrum collides with its index shift", "ech gap",
         [&opt](const InputDocument& d) {
             EchQuery query = payload_ech(d);
             std::size_t kmax = require_index_param(opt.kmax, query.kmax, "--kmax", "ech.kmax");
             std::optional<std::size_t> k = reeb::first_gap_collision(query.a, query.b, kmax);
             Json r = Json::object();
             r["k"] = k ? Json(*k) : Json(nullptr);
             return r;
         })
        ->add_option("--kmax", opt.kmax, "Exclusive upper bound on the collision index");
    leaf(ech, "sublinear", "Enclosures of N_k/k at increasing checkpoints", "ech sublinear",
         [&opt](const InputDocument& d) {
             EchQuery query = payload_ech(d);
             std::vector<std::size_t> checkpoints =
                 require_checkpoints(opt.checkpoints, query.checkpoints);
             Json profile = Json::array();
             for (const reeb::SublinearityPoint& point :
                  reeb::sublinearity_profile(query.a, query.b, checkpoints)) {
                 Json entry = Json::object();
                 entry["k"] = point.k;
                 entry["lo"] = reeb::doc::rational_to_json(point.ratio.lo);
                 entry["hi"] = reeb::doc::rational_to_json(point.ratio.hi);
                 profile.push_back(std::move(entry));
             }
             Json r = Json::object();
             r["profile"] = std::move(profile);
             return r;
         })
        ->add_option("--checkpoints", opt.checkpoints,
                     "Comma-separated strictly increasing indices")
        ->delimiter(',');
    leaf(ech, "volume", "Enclosure of N_k^2/(2abk), the volume-growth comparison", "ech volume",
         [&opt](const InputDocument& d) {
             EchQuery query = payload_ech(d);
             std::size_t k = require_index_param(opt.k, query.k, "--k", "ech.k");
             reeb::RationalInterval ratio = reeb::volume_asymptotic_ratio(query.a, query.b, k);
             Json r = Json::object();
             r["lo"] = reeb::doc::rational_to_json(ratio.lo);
             r["hi"] = reeb::doc::rational_to_json(ratio.hi);
             return r;
         })
        ->add_option("--k", opt.k, "Spectral index to compare");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto emit = [&](const Json& document) -> bool {
        std::string text = reeb::dump_document(document);
        if (opt.output_path == "-") {
            std::cout << text;
            return true;
        }
        std::ofstream out(opt.output_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output path \"" << opt.output_path << "\"\n";
            return false;
        }
        out << text;
        return out.good();
    };

    int exit_code = 0;
    Json output;
    try {
        InputDocument document;
        if (opt.input_path.empty()) {
            document.raw = Json::object();
            document.raw["version"] = reeb::kDocumentVersion;
            document.registry = reeb::BasisRegistry::create({}, opt.max_precision_digits);
        } else if (opt.input_path == "-") {
            document = reeb::parse_input_document(read_all(std::cin), opt.max_precision_digits);
        } else {
            std::ifstream in(opt.input_path, std::ios::binary);
            if (!in) throw reeb::LocatedError("ParseError",
                                              "cannot open input path \"" + opt.input_path + "\"",
                                              "--input");
            document = reeb::parse_input_document(read_all(in), opt.max_precision_digits);
        }
        output = reeb::output_success(command, handler(document));
    } catch (const reeb::LocatedError& e) {
        output = reeb::output_error(command, e.name(), e.what(), e.path());
        exit_code = reeb::is_schema_error_name(e.name()) ? 2 : 1;
    } catch (const reeb::Error& e) {
        output = reeb::output_error(command, e.name(), e.what(), "");
        exit_code = reeb::is_schema_error_name(e.name()) ? 2 : 1;
    }

    if (!emit(output)) return 2;
    return exit_code;
}
