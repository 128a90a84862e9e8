#include "ihskit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace ihskit::cli {

namespace {

struct Options {
    std::string format = "json";
    std::string out;
    long bound = 50;
    double tol = 1e-10;

    std::string lattice, ambient, isometry, involution, anchor, m0, generators, delta;
    std::string spectrum, spectra, ingredients;
    std::string series = "todd";
    std::string identity = "todd-ch";
    int weight = kMaxWeight;
    int dim = 4;
    long t = 0;
    bool free_normal = false;
};

/// What a subcommand produced: the JSON payload and, for non-JSON data, its raw rendering.
struct Outcome {
    Outcome(Json p = {}, std::string r = {}, std::vector<std::string> d = {})
        : payload(std::move(p)), raw(std::move(r)), diagnostics(std::move(d))
    {
    }

    Json payload;
    std::string raw;
    std::vector<std::string> diagnostics;
    int exit_code = kOk;
};

// ---------------------------------------------------------------------------- argument helpers

Json lattice_arg(const std::string& s)
{
    if (s.empty()) throw InputError("--lattice is required");
    if (s.size() > 5 && s.ends_with(".json")) return load_json_file(s);
    return Json(s);
}

EmbeddedSublattice sublattice_arg(const Options& o)
{
    Json doc = lattice_arg(o.lattice);
    if (!o.ambient.empty()) {
        if (!doc.is_object()) throw InputError("--ambient needs a document with a basis");
        doc["ambient"] = lattice_arg(o.ambient);
    }
    return sublattice_from_json(doc);
}

IntVector vector_arg(const std::string& s, const char* flag)
{
    if (s.empty()) throw InputError(std::string(flag) + " is required");
    IntVector v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        v.push_back(integer_from_json(Json(item)));
    }
    return v;
}

/// "1,0" or "1,0;0,1" as a list of vectors.
std::vector<IntVector> vectors_arg(const std::string& s, const char* flag)
{
    std::vector<IntVector> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) out.push_back(vector_arg(item, flag));
    return out;
}

const char* case_name(DeltaCase c)
{
    switch (c) {
    case DeltaCase::none: return "none";
    case DeltaCase::nonnegative: return "nonnegative";
    case DeltaCase::root: return "root";
    case DeltaCase::half_root: return "half_root";
    }
    return "none";
}

const CatalogInvolution& involution_arg(const std::string& key)
{
    for (const auto& c : default_catalog().involutions)
        if (c.key == key) return c;
    throw InputError("no catalog involution '" + key + "'");
}

Json numbers(double value)
{
    if (!std::isfinite(value)) throw DomainError("result is not finite");
    return Json(value);
}

// ---------------------------------------------------------------------------- text rendering

bool is_rational(const Json& j) { return j.is_object() && j.size() == 2 && j.contains("num") && j.contains("den"); }

std::string inline_text(const Json& j)
{
    if (is_rational(j)) {
        const std::string den = j["den"].get<std::string>();
        return den == "1" ? j["num"].get<std::string>() : j["num"].get<std::string>() + "/" + den;
    }
    if (j.is_string()) return j.get<std::string>();
    if (j.is_array()) {
        std::string s = "[";
        for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + inline_text(j[i]);
        return s + "]";
    }
    if (j.is_object()) {
        std::string s = "{";
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            s += (first ? "" : ", ") + k + ": " + inline_text(v);
            first = false;
        }
        return s + "}";
    }
    return j.dump();
}

bool is_flat(const Json& j)
{
    if (is_rational(j) || j.is_primitive()) return true;
    if (j.is_array()) return std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive() || (x.is_array() && is_flat(x)); });
    return false;
}

void render_text(const Json& j, const std::string& indent, std::string& out)
{
    if (j.is_object() && !is_rational(j)) {
        for (const auto& [k, v] : j.items()) {
            if (is_flat(v)) {
                out += indent + k + ": " + inline_text(v) + "\n";
            } else {
                out += indent + k + ":\n";
                render_text(v, indent + "  ", out);
            }
        }
    } else if (j.is_array() && !is_flat(j)) {
        for (const auto& v : j) {
            if (is_flat(v)) {
                out += indent + "- " + inline_text(v) + "\n";
            } else {
                out += indent + "-\n";
                render_text(v, indent + "  ", out);
            }
        }
    } else {
        out += indent + inline_text(j) + "\n";
    }
}

// ---------------------------------------------------------------------------- subcommands

Outcome lattice_info(const Options& o)
{
    const Lattice l = lattice_from_json(lattice_arg(o.lattice));
    const Signature s = signature(l);
    const DiscriminantGroup dg = discriminant_group(l);
    const TwoElementary te = is_2_elementary(l);
    Json j;
    j["label"] = l.label();
    j["rank"] = l.rank();
    j["signature"] = {s.positive, s.negative};
    j["determinant"] = to_json(l.determinant());
    j["even"] = l.is_even();
    j["hyperbolic"] = is_hyperbolic(l);
    j["discriminant_group"] = {{"elementary_divisors", to_json(std::span<const Integer>(dg.elementary_divisors))},
                               {"order", to_json(dg.order)}};
    j["two_elementary"] = te.holds ? Json{{"holds", true}, {"length", te.length}} : Json{{"holds", false}};
    return {j};
}

Outcome isometry_spinor(const Options& o)
{
    if (o.isometry.empty()) throw InputError("--isometry is required");
    const Isometry g = isometry_from_json(load_json_file(o.isometry));
    const ReflectionFactorization f = cartan_dieudonne(g);
    Json fixed = Json::array();
    for (const auto& v : invariant_lattice(g)) fixed.push_back(to_json(v));
    Json j;
    j["trace"] = to_json(g.trace());
    j["involution"] = g.is_involution();
    j["factorization"] = to_json(f);
    j["spinor_norm"] = spinor_norm(g.lattice(), f);
    j["in_O_plus"] = in_O_plus(g);
    j["invariant_lattice"] = fixed;
    return {j};
}

Outcome isometry_admissible(const Options& o)
{
    AdmissibleSublattice a = [&] {
        if (!o.involution.empty()) {
            const CatalogInvolution& c = involution_arg(o.involution);
            return make_admissible(nikulin_extension(build_standard("L_K3"), c.m0_basis, c.candidate));
        }
        if (o.isometry.empty()) throw InputError("--involution or --isometry is required");
        return validate_admissible(isometry_from_json(load_json_file(o.isometry)));
    }();
    Json j = to_json(a);
    j["numerology"] = to_json(numerology(a.t));
    return {j};
}

Outcome delta_enum(const Options& o)
{
    const EmbeddedSublattice m = sublattice_arg(o);
    const DeltaSet d = enumerate_delta(m, o.bound);
    Outcome r{to_json(d)};
    if (!d.exact) r.diagnostics.push_back("wall set found by a box search of half-width " + std::to_string(d.bound));
    return r;
}

Outcome delta_classify(const Options& o)
{
    const EmbeddedSublattice m = sublattice_arg(o);
    std::vector<IntVector> targets;
    Outcome r;
    if (!o.delta.empty()) {
        targets.push_back(vector_arg(o.delta, "--delta"));
    } else {
        const DeltaSet d = enumerate_delta(m, o.bound);
        if (!d.exact) r.diagnostics.push_back("wall set found by a box search of half-width " + std::to_string(d.bound));
        for (const auto& v : d.vectors) targets.push_back(v.coords);
    }
    Json list = Json::array();
    for (const auto& v : targets)
        list.push_back({{"coords", to_json(v)}, {"norm", to_json(norm(m.lattice(), v))}, {"case", case_name(classify_delta(m, v))}});
    r.payload = Json{{"classification", list}};
    return r;
}

struct ChamberData {
    EmbeddedSublattice m;
    DeltaSet delta;
    std::vector<Chamber2> chambers;
    std::vector<bool> natural;
    std::vector<std::string> diagnostics;
};

ChamberData chamber_data(const Options& o)
{
    EmbeddedSublattice m = sublattice_arg(o);
    if (m.rank() != 2) throw DomainError("chamber decomposition needs a rank-2 lattice, got rank " + std::to_string(m.rank()));
    DeltaSet d = enumerate_delta(m, o.bound);
    std::vector<std::string> diag;
    if (!d.exact) diag.push_back("wall set found by a box search of half-width " + std::to_string(d.bound));
    auto ch = chambers_rank2(m.lattice(), d, vector_arg(o.anchor, "--anchor"));
    std::vector<bool> natural;
    if (!o.m0.empty()) {
        const auto m0 = vectors_arg(o.m0, "--m0");
        for (const auto& c : ch) natural.push_back(is_natural(m0, c));
    }
    return {std::move(m), std::move(d), std::move(ch), std::move(natural), std::move(diag)};
}

Json chamber_payload(const ChamberData& c)
{
    Json j;
    j["delta"] = to_json(c.delta);
    j["chambers"] = to_json(c.chambers);
    if (!c.natural.empty()) {
        Json nat = Json::array();
        for (std::size_t i = 0; i < c.natural.size(); ++i)
            if (c.natural[i]) nat.push_back(i);
        j["natural"] = nat;
    }
    return j;
}

Outcome chambers_rank2_cmd(const Options& o)
{
    ChamberData c = chamber_data(o);
    return {chamber_payload(c), "", c.diagnostics};
}

Outcome chambers_orbits_cmd(const Options& o)
{
    ChamberData c = chamber_data(o);
    if (o.generators.empty()) throw InputError("--generators is required");
    Json doc = load_json_file(o.generators);
    if (doc.is_object() && doc.contains("generators")) doc = doc["generators"];
    if (!doc.is_array()) throw InputError("generators document is a list of isometries");
    std::vector<Isometry> gens;
    for (const auto& g : doc) gens.push_back(isometry_from_json(g, c.m.lattice()));
    Json j = chamber_payload(c);
    Json orbits = Json::array();
    for (const auto& orbit : chamber_orbits(c.m.lattice(), c.chambers, gens)) orbits.push_back(orbit);
    j["orbits"] = orbits;
    return {j, "", c.diagnostics};
}

Outcome chambers_plot_cmd(const Options& o)
{
    ChamberData c = chamber_data(o);
    return {chamber_payload(c), chambers_svg(c.m.lattice(), c.chambers, c.natural), c.diagnostics};
}

Outcome forms_verify(const Options& o)
{
    if (o.identity != "todd-ch") throw InputError("unknown identity '" + o.identity + "' (expected todd-ch)");
    const ToddChIdentityCheck c = verify_todd_ch_identity(!o.free_normal);
    Json j;
    j["holds"] = c.holds;
    j["normal_relations"] = !o.free_normal;
    j["lhs"] = to_json(c.lhs);
    j["rhs"] = to_json(c.rhs);
    j["residual"] = to_json(c.residual);
    return {j};
}

Outcome forms_expand(const Options& o)
{
    const std::map<std::string, std::function<GradedElement(int)>> series{
        {"todd", [](int w) { return todd_series(Gen::c1F, Gen::c2F, w); }},
        {"sigmoid", [](int w) { return sigmoid_det_factor(Gen::c1N, Gen::c2N, w); }},
        {"ch", [](int w) { return ch_bundle(Gen::c1F, Gen::c2F, 2, false, w); }},
        {"ch-dual", [](int w) { return ch_bundle(Gen::c1F, Gen::c2F, 2, true, w); }},
        {"td-iota", [](int w) { return equivariant_todd(w); }},
        {"ch-iota", [](int w) { return equivariant_ch_cotangent(w); }},
        {"omega", [](int w) { return omega_form(w); }},
    };
    auto it = series.find(o.series);
    if (it == series.end()) throw InputError("unknown series '" + o.series + "'");
    if (o.weight < 0 || o.weight > kMaxWeight) throw InputError("--weight must lie in [0, " + std::to_string(kMaxWeight) + "]");
    const GradedElement x = it->second(o.weight);
    Json j;
    j["series"] = o.series;
    Json parts = Json::array();
    for (int w = 0; w <= o.weight; ++w) parts.push_back({{"weight", w}, {"text", to_string(x.component(w))}});
    j["components"] = parts;
    j["element"] = to_json(x);
    std::string text;
    for (int w = 0; w <= o.weight; ++w) text += "weight " + std::to_string(w) + ": " + to_string(x.component(w)) + "\n";
    return {j, o.format == "text" ? text : ""};
}

Outcome zeta_dzeta(const Options& o)
{
    if (o.spectrum.empty()) throw InputError("--spectrum is required");
    const WeightedSpectrum s = spectrum_from_json(load_json_file(o.spectrum));
    return {Json{{"zeta_prime_zero", numbers(zeta_prime_zero(s))}}};
}

Outcome torsion_eq(const Options& o)
{
    if (o.spectra.empty()) throw InputError("--spectra is required");
    const auto spectra = spectra_from_json(load_json_file(o.spectra));
    const double tau = equivariant_torsion(spectra, o.dim);
    return {Json{{"dim", o.dim}, {"tau", numbers(tau)}, {"log_tau", numbers(std::log(tau))}}};
}

Outcome invariant_assemble(const Options& o)
{
    if (o.ingredients.empty()) throw InputError("--ingredients is required");
    const TorsionIngredients in = ingredients_from_json(load_json_file(o.ingredients));
    const double value = assemble_invariant(in);
    Json j;
    j["ingredients"] = to_json(in);
    j["exp_vol"] = to_json(numerology(in.t).exp_vol);
    j["value"] = numbers(value);
    j["log_value"] = numbers(std::log(value));
    return {j};
}

Outcome numerology_cmd(const Options& o) { return {to_json(numerology(o.t))}; }

Outcome verify_all_cmd(const Options& o)
{
    const auto checks = verify_all(o.tol);
    Json list = Json::array();
    std::size_t failed = 0;
    std::string text;
    for (const auto& c : checks) {
        list.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        failed += !c.pass;
        text += std::string(c.pass ? "PASS " : "FAIL ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")") + "\n";
    }
    Json j{{"checks", list}, {"passed", checks.size() - failed}, {"failed", failed}};
    Outcome r{j, o.format == "text" ? text : ""};
    if (failed) r.exit_code = kDomainError;
    return r;
}

Json error_document(const char* kind, const std::string& message, const std::vector<std::string>& violations = {})
{
    Json e{{"kind", kind}, {"message", message}};
    if (!violations.empty()) e["violations"] = violations;
    return Json{{"error", e}};
}

} // namespace

CommandResult run(const std::vector<std::string>& args)
{
    Options o;
    CLI::App app{"Lattice, chamber, characteristic-form and torsion computations", "ihskit"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", o.out, "Write the data stream to FILE");
    app.add_option("--bound", o.bound, "Box half-width for wall searches")->check(CLI::PositiveNumber);
    app.add_option("--tol", o.tol, "Tolerance for numeric checks")->check(CLI::PositiveNumber);

    std::function<Outcome(const Options&)> handler;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Outcome (*fn)(const Options&)) {
        CLI::App* sub = parent->add_subcommand(name, help);
        sub->callback([&handler, fn] { handler = fn; });
        return sub;
    };
    auto group = [&](const std::string& name, const std::string& help) {
        CLI::App* g = app.add_subcommand(name, help);
        g->require_subcommand(1);
        return g;
    };

    CLI::App* lattice = group("lattice", "Lattice invariants and the catalog");
    leaf(lattice, "info", "Signature, determinant, discriminant group", lattice_info)
        ->add_option("--lattice", o.lattice, "Catalog name or lattice JSON file")
        ->required();
    leaf(lattice, "catalog", "Emit the catalog document", [](const Options&) { return Outcome{catalog_document()}; });

    CLI::App* isometry = group("isometry", "Isometries and admissible involutions");
    leaf(isometry, "spinor", "Reflection factorization and spinor norm", isometry_spinor)
        ->add_option("--isometry", o.isometry, "Isometry JSON file")
        ->required();
    CLI::App* adm = leaf(isometry, "admissible", "Validate an admissible involution of L2", isometry_admissible);
    adm->add_option("--involution", o.involution, "Catalog involution key");
    adm->add_option("--isometry", o.isometry, "Involution of L2 as an isometry JSON file");

    auto sublattice_options = [&](CLI::App* sub) {
        sub->add_option("--lattice", o.lattice, "Catalog name, lattice or sublattice JSON file")->required();
        sub->add_option("--ambient", o.ambient, "Ambient lattice for a bare basis document");
        return sub;
    };
    CLI::App* delta = group("delta", "Wall vectors");
    sublattice_options(leaf(delta, "enum", "Enumerate the wall set", delta_enum));
    sublattice_options(leaf(delta, "classify", "Case split of wall vectors", delta_classify))
        ->add_option("--delta", o.delta, "A single wall vector, e.g. \"2,3\"");

    CLI::App* chambers = group("chambers", "Rank-2 chamber decompositions");
    auto chamber_options = [&](CLI::App* sub) {
        sublattice_options(sub);
        sub->add_option("--anchor", o.anchor, "Vector of positive norm selecting the cone component")->required();
        sub->add_option("--m0", o.m0, "Basis of M0 in M coordinates, \";\"-separated");
        return sub;
    };
    chamber_options(leaf(chambers, "rank2", "Chambers in angular order", chambers_rank2_cmd));
    chamber_options(leaf(chambers, "orbits", "Chamber orbits under generators", chambers_orbits_cmd))
        ->add_option("--generators", o.generators, "JSON list of isometries of M");
    chamber_options(leaf(chambers, "plot", "SVG chamber diagram", chambers_plot_cmd));

    CLI::App* forms = group("forms", "Characteristic forms");
    CLI::App* verify = leaf(forms, "verify", "Check the weight-3 identity", forms_verify);
    verify->add_flag("--free-normal", o.free_normal, "Leave the normal-bundle classes free");
    verify->add_option("identity", o.identity, "Identity name");
    CLI::App* expand = leaf(forms, "expand", "Expand a characteristic series", forms_expand);
    expand->add_option("--series", o.series, "todd|sigmoid|ch|ch-dual|td-iota|ch-iota|omega");
    expand->add_option("--weight", o.weight, "Truncation weight");

    CLI::App* zeta = group("zeta", "Spectral zeta functions");
    leaf(zeta, "dzeta", "Derivative at zero", zeta_dzeta)->add_option("--spectrum", o.spectrum, "Spectrum JSON file")->required();

    CLI::App* torsion = group("torsion", "Equivariant torsion");
    CLI::App* eq = leaf(torsion, "eq", "Torsion from weighted spectra", torsion_eq);
    eq->add_option("--spectra", o.spectra, "JSON map from degree to spectrum")->required();
    eq->add_option("--dim", o.dim, "Top degree n");

    CLI::App* invariant = group("invariant", "Invariant assembly");
    leaf(invariant, "assemble", "Combine supplied ingredients", invariant_assemble)
        ->add_option("--ingredients", o.ingredients, "Ingredients JSON file")
        ->required();

    leaf(&app, "numerology", "Fixed-locus numerology for a trace t", numerology_cmd)->add_option("--t", o.t, "t")->required();
    leaf(&app, "verify-all", "Run every regression check", verify_all_cmd);

    CommandResult result;
    std::ostringstream out, err;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        result.out = out.str();
        result.payload = Json::object();
        return result;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        result.exit_code = kInputError;
        result.diagnostics.push_back(e.what());
        result.err = err.str();
        return result;
    }

    try {
        if (!handler) throw InputError("no subcommand given");
        Outcome r = handler(o);
        result.diagnostics = std::move(r.diagnostics);
        std::string data;
        if (!r.raw.empty()) data = r.raw;
        else if (o.format == "text") render_text(r.payload, "", data);
        else data = r.payload.dump(2) + "\n";
        if (r.exit_code != kOk) {
            result.exit_code = r.exit_code;
            result.err = data;
        } else {
            result.payload = std::move(r.payload);
            if (o.out.empty()) {
                result.out = std::move(data);
            } else {
                std::ofstream file(o.out);
                if (!file || !(file << data)) throw InputError("cannot write '" + o.out + "'");
                result.diagnostics.push_back("wrote " + o.out);
            }
        }
    } catch (const AdmissibilityError& e) {
        result = {kDomainError, std::nullopt, {e.what()}, "", error_document("domain", e.what(), e.violations()).dump(2) + "\n"};
        return result;
    } catch (const InputError& e) {
        result = {kInputError, std::nullopt, {e.what()}, "", error_document("input", e.what()).dump(2) + "\n"};
        return result;
    } catch (const DomainError& e) {
        result = {kDomainError, std::nullopt, {e.what()}, "", error_document("domain", e.what()).dump(2) + "\n"};
        return result;
    } catch (const nlohmann::json::exception& e) {
        result = {kInputError, std::nullopt, {e.what()}, "", error_document("input", e.what()).dump(2) + "\n"};
        return result;
    }
    for (const auto& d : result.diagnostics) result.err += d + "\n";
    return result;
}

} // namespace ihskit::cli
