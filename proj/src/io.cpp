#include "ihskit/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>

#ifndef IHSKIT_DEFAULT_CATALOG
#define IHSKIT_DEFAULT_CATALOG "data/catalog.json"
#endif

namespace ihskit {

namespace {

constexpr int kCatalogVersion = 1;

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object()) throw InputError(std::string("expected an object with field '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
    return *it;
}

double number_from_json(const Json& j, const char* what)
{
    if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
    return j.get<double>();
}

int int_from_json(const Json& j, const char* what)
{
    if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
    return j.get<int>();
}

const Integer& two_pow_53()
{
    static const Integer x = Integer(1) << 53;
    return x;
}

Json boundary_ray(const BoundaryRay& r)
{
    Json j;
    j["direction"] = to_json(r.direction);
    j["wall"] = r.wall ? to_json(*r.wall) : Json(nullptr);
    return j;
}

BoundaryRay boundary_ray_from_json(const Json& j)
{
    BoundaryRay r;
    r.direction = int_vector_from_json(field(j, "direction"));
    auto it = j.find("wall");
    if (it != j.end() && !it->is_null()) r.wall = int_vector_from_json(*it);
    return r;
}

Gen gen_from_name(const std::string& name)
{
    for (std::size_t i = 0; i < kGenCount; ++i)
        if (name == name_of(static_cast<Gen>(i))) return static_cast<Gen>(i);
    throw InputError("unknown Chern class generator '" + name + "'");
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

} // namespace

Json to_json(const Integer& x)
{
    if (abs(x) <= two_pow_53()) return Json(x.get_si());
    return Json(x.get_str());
}

Integer integer_from_json(const Json& j)
{
    if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<unsigned long>()) : Integer(j.get<long>());
    if (j.is_string()) {
        static const std::regex pattern(R"(-?[0-9]+)");
        const std::string s = j.get<std::string>();
        if (!std::regex_match(s, pattern)) throw InputError("'" + s + "' is not an integer");
        return Integer(s);
    }
    throw InputError("expected an integer, got " + j.dump());
}

Json to_json(const Rational& x)
{
    Json j;
    j["num"] = x.get_num().get_str();
    j["den"] = x.get_den().get_str();
    return j;
}

Rational rational_from_json(const Json& j)
{
    if (j.is_object()) {
        const Integer num = integer_from_json(field(j, "num"));
        const Integer den = integer_from_json(field(j, "den"));
        if (den == 0) throw InputError("rational with zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    return Rational(integer_from_json(j));
}

Json to_json(std::span<const Integer> v)
{
    Json j = Json::array();
    for (const auto& x : v) j.push_back(to_json(x));
    return j;
}

IntVector int_vector_from_json(const Json& j)
{
    if (!j.is_array()) throw InputError("expected an array of integers");
    IntVector v;
    for (const auto& x : j) v.push_back(integer_from_json(x));
    return v;
}

Json to_json(const IntMatrix& m)
{
    Json j = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(to_json(m.row(i)));
    return j;
}

IntMatrix int_matrix_from_json(const Json& j)
{
    if (!j.is_array() || j.empty()) throw InputError("expected a nonempty array of rows");
    std::vector<IntVector> rows;
    for (const auto& r : j) rows.push_back(int_vector_from_json(r));
    return IntMatrix::from_rows(rows);
}

Json to_json(std::span<const Rational> v)
{
    Json j = Json::array();
    for (const auto& x : v) j.push_back(to_json(x));
    return j;
}

RatVector rat_vector_from_json(const Json& j)
{
    if (!j.is_array()) throw InputError("expected an array of rationals");
    RatVector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

// ---------------------------------------------------------------------------- catalog

Json catalog_document()
{
    Json doc;
    doc["format"] = "ihskit-catalog";
    doc["version"] = kCatalogVersion;
    doc["conventions"] = {
        {"E8", "negative of the Cartan matrix, Bourbaki node order (chain 1-3-4-5-6-7-8, node 2 on node 4)"},
        {"L_K3", "E8 + E8 + U + U + U, basis indices 0-7, 8-15, 16-17, 18-19, 20-21"},
        {"L2", "L_K3 + Ze with e^2 = -2 as basis index 22"},
        {"Lambda_k", "I_2 + -I_{10-k}; odd forms; Lambda_8U is the U + U variant for k = 8"}};
    Json lattices = Json::array();
    for (const auto& name : standard_names()) {
        const Lattice l = build_standard(name);
        const Signature s = signature(l);
        Json e;
        e["name"] = name;
        e["gram"] = to_json(l.gram());
        e["even"] = l.is_even();
        e["signature"] = {s.positive, s.negative};
        lattices.push_back(e);
    }
    doc["lattices"] = lattices;
    Json involutions = Json::array();
    for (const auto& key : catalog_involution_keys()) {
        const CatalogInvolution c = catalog_involution(key);
        Json e;
        e["key"] = c.key;
        e["description"] = c.description;
        Json basis = Json::array();
        for (const auto& v : c.m0_basis) basis.push_back(to_json(v));
        e["m0_basis"] = basis;
        e["matrix"] = to_json(to_integer(c.candidate));
        involutions.push_back(e);
    }
    doc["involutions"] = involutions;
    return doc;
}

Catalog catalog_from_json(const Json& j)
{
    if (field(j, "format") != "ihskit-catalog") throw InputError("not an ihskit catalog document");
    Catalog c;
    c.version = int_from_json(field(j, "version"), "catalog version");
    if (c.version != kCatalogVersion) throw InputError("unsupported catalog version " + std::to_string(c.version));
    for (const auto& e : field(j, "lattices")) {
        const std::string name = field(e, "name").get<std::string>();
        Lattice l(name, int_matrix_from_json(field(e, "gram")));
        auto even = e.find("even");
        if (even != e.end() && even->get<bool>() != l.is_even())
            throw InputError("catalog entry '" + name + "' has a wrong evenness flag");
        c.lattices.emplace(name, std::move(l));
    }
    for (const auto& e : field(j, "involutions")) {
        CatalogInvolution inv;
        inv.key = field(e, "key").get<std::string>();
        inv.description = e.value("description", "");
        for (const auto& v : field(e, "m0_basis")) inv.m0_basis.push_back(int_vector_from_json(v));
        inv.candidate = to_rational(int_matrix_from_json(field(e, "matrix")));
        c.involutions.push_back(std::move(inv));
    }
    return c;
}

std::filesystem::path catalog_path()
{
    if (const char* env = std::getenv("IHSKIT_CATALOG"); env && *env) return env;
    return IHSKIT_DEFAULT_CATALOG;
}

const Catalog& default_catalog()
{
    static std::mutex mutex;
    static std::map<std::filesystem::path, Catalog> cache;
    const std::filesystem::path path = catalog_path();
    std::lock_guard lock(mutex);
    auto it = cache.find(path);
    if (it == cache.end()) it = cache.emplace(path, catalog_from_json(load_json_file(path))).first;
    return it->second;
}

// ---------------------------------------------------------------------------- lattices

Json to_json(const Lattice& l)
{
    Json j;
    j["label"] = l.label();
    j["gram"] = to_json(l.gram());
    return j;
}

Lattice lattice_from_json(const Json& j, const Catalog& catalog)
{
    if (j.is_string()) return lattice_from_json(Json{{"name", j}}, catalog);
    if (j.contains("name")) {
        const std::string name = field(j, "name").get<std::string>();
        const Integer scale = j.contains("scale") ? integer_from_json(j["scale"]) : Integer(1);
        auto it = catalog.lattices.find(name);
        const Lattice base = it != catalog.lattices.end() ? it->second : build_standard(name);
        return scale == 1 ? base : rescale(base, scale);
    }
    return Lattice(j.value("label", "L"), int_matrix_from_json(field(j, "gram")));
}

Json to_json(const EmbeddedSublattice& m)
{
    Json j;
    j["label"] = m.lattice().label();
    j["ambient"] = to_json(m.ambient());
    Json basis = Json::array();
    for (const auto& v : m.basis()) basis.push_back(to_json(v));
    j["basis"] = basis;
    return j;
}

EmbeddedSublattice sublattice_from_json(const Json& j, const Catalog& catalog)
{
    if (j.is_object() && j.contains("ambient")) {
        std::vector<LatticeVector> basis;
        for (const auto& v : field(j, "basis")) basis.push_back(int_vector_from_json(v));
        return EmbeddedSublattice(lattice_from_json(j["ambient"], catalog), basis, j.value("label", "M"));
    }
    return EmbeddedSublattice::self(lattice_from_json(j, catalog));
}

Json to_json(const Isometry& g)
{
    Json j;
    j["lattice"] = to_json(g.lattice());
    j["matrix"] = to_json(g.matrix());
    return j;
}

Isometry isometry_from_json(const Json& j, const Catalog& catalog)
{
    return isometry_from_json(j, lattice_from_json(field(j, "lattice"), catalog));
}

Isometry isometry_from_json(const Json& j, const Lattice& lattice)
{
    return Isometry(lattice, int_matrix_from_json(field(j, "matrix")));
}

Json to_json(const ReflectionFactorization& f)
{
    Json vs = Json::array();
    for (const auto& v : f.vectors) vs.push_back(to_json(std::span<const Rational>(v)));
    return Json{{"vectors", vs}};
}

ReflectionFactorization factorization_from_json(const Json& j)
{
    ReflectionFactorization f;
    for (const auto& v : field(j, "vectors")) f.vectors.push_back(rat_vector_from_json(v));
    return f;
}

// ---------------------------------------------------------------------------- walls and chambers

Json to_json(const DeltaSet& d)
{
    Json vs = Json::array();
    for (const auto& v : d.vectors) vs.push_back(Json{{"coords", to_json(v.coords)}, {"norm", v.norm}});
    Json j;
    j["completeness"] = d.exact ? "exact" : "bounded";
    if (!d.exact) j["bound"] = d.bound;
    j["count"] = d.vectors.size();
    j["vectors"] = vs;
    return j;
}

DeltaSet delta_set_from_json(const Json& j)
{
    DeltaSet d;
    const std::string completeness = field(j, "completeness").get<std::string>();
    if (completeness == "exact") d.exact = true;
    else if (completeness == "bounded") d.bound = static_cast<long>(number_from_json(field(j, "bound"), "bound"));
    else throw InputError("completeness must be 'exact' or 'bounded'");
    for (const auto& v : field(j, "vectors")) {
        const int n = int_from_json(field(v, "norm"), "norm");
        if (n != -2 && n != -10) throw InputError("wall vector norms are -2 or -10");
        d.vectors.push_back({int_vector_from_json(field(v, "coords")), n});
    }
    std::sort(d.vectors.begin(), d.vectors.end(), [](const DeltaVector& a, const DeltaVector& b) { return a.coords < b.coords; });
    return d;
}

Json to_json(const Chamber2& c)
{
    Json j;
    j["low"] = boundary_ray(c.low);
    j["high"] = boundary_ray(c.high);
    j["interior_sample"] = to_json(c.interior_sample());
    return j;
}

Chamber2 chamber_from_json(const Json& j)
{
    return {boundary_ray_from_json(field(j, "low")), boundary_ray_from_json(field(j, "high"))};
}

Json to_json(const std::vector<Chamber2>& cs)
{
    Json j = Json::array();
    for (const auto& c : cs) j.push_back(to_json(c));
    return j;
}

std::vector<Chamber2> chambers_from_json(const Json& j)
{
    if (!j.is_array()) throw InputError("expected an array of chambers");
    std::vector<Chamber2> out;
    for (const auto& c : j) out.push_back(chamber_from_json(c));
    return out;
}

// ---------------------------------------------------------------------------- forms

Json to_json(const GradedElement& x)
{
    Json terms = Json::array();
    for (const auto& [e, c] : x.terms()) {
        Json mono = Json::object();
        for (std::size_t i = 0; i < kGenCount; ++i)
            if (e[i] != 0) mono[name_of(static_cast<Gen>(i))] = e[i];
        terms.push_back(Json{{"monomial", mono}, {"coefficient", to_json(c)}});
    }
    Json j;
    j["max_weight"] = x.max_weight();
    j["text"] = to_string(x);
    j["terms"] = terms;
    return j;
}

GradedElement graded_from_json(const Json& j)
{
    GradedElement x(int_from_json(field(j, "max_weight"), "max_weight"));
    for (const auto& t : field(j, "terms")) {
        GradedElement term = GradedElement::constant(rational_from_json(field(t, "coefficient")), x.max_weight());
        for (const auto& [name, power] : field(t, "monomial").items()) {
            const int p = int_from_json(power, "exponent");
            if (p < 0) throw InputError("negative exponent");
            term = term * GradedElement::generator(gen_from_name(name), x.max_weight()).pow(static_cast<unsigned>(p));
        }
        x += term;
    }
    return x;
}

// ---------------------------------------------------------------------------- torsion

Json to_json(const WeightedSpectrum& s)
{
    if (s.is_finite()) {
        Json entries = Json::array();
        for (const auto& [l, w] : s.finite().entries) entries.push_back({l, w});
        return Json{{"kind", "finite"}, {"entries", entries}};
    }
    const PowerSpectrum& p = s.power();
    return Json{{"kind", "power"}, {"a", p.a}, {"p", p.p}, {"w", p.w}};
}

WeightedSpectrum spectrum_from_json(const Json& j)
{
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "finite") {
        FiniteSpectrum f;
        for (const auto& e : field(j, "entries")) {
            if (!e.is_array() || e.size() != 2) throw InputError("finite spectrum entries are [lambda, w] pairs");
            f.entries.push_back({number_from_json(e[0], "lambda"), number_from_json(e[1], "w")});
        }
        return WeightedSpectrum(std::move(f));
    }
    if (kind == "power")
        return WeightedSpectrum(PowerSpectrum{number_from_json(field(j, "a"), "a"), number_from_json(field(j, "p"), "p"),
                                              number_from_json(field(j, "w"), "w")});
    throw InputError("spectrum kind must be 'finite' or 'power'");
}

std::map<int, WeightedSpectrum> spectra_from_json(const Json& j)
{
    if (!j.is_object()) throw InputError("spectra document maps degrees q to spectra");
    std::map<int, WeightedSpectrum> out;
    static const std::regex degree(R"(-?[0-9]+)");
    for (const auto& [key, value] : j.items()) {
        if (!std::regex_match(key, degree)) throw InputError("spectrum key '" + key + "' is not a degree");
        out.emplace(std::stoi(key), spectrum_from_json(value));
    }
    return out;
}

Json to_json(const TorsionIngredients& in)
{
    Json j;
    j["tau_iota"] = in.tau_iota;
    j["vol_X"] = in.vol_X;
    j["A"] = in.A;
    j["tau_O_fix"] = in.tau_O_fix;
    j["vol_fix"] = in.vol_fix;
    j["vol_L2_H1"] = in.vol_L2_H1;
    j["t"] = in.t;
    return j;
}

TorsionIngredients ingredients_from_json(const Json& j)
{
    TorsionIngredients in;
    in.tau_iota = number_from_json(field(j, "tau_iota"), "tau_iota");
    in.vol_X = number_from_json(field(j, "vol_X"), "vol_X");
    in.A = j.contains("A") ? number_from_json(j["A"], "A") : 1.0;
    in.tau_O_fix = number_from_json(field(j, "tau_O_fix"), "tau_O_fix");
    in.vol_fix = number_from_json(field(j, "vol_fix"), "vol_fix");
    in.vol_L2_H1 = number_from_json(field(j, "vol_L2_H1"), "vol_L2_H1");
    in.t = int_from_json(field(j, "t"), "t");
    validate(in);
    return in;
}

Json to_json(const Numerology& n)
{
    Json j;
    j["t"] = n.t;
    j["chi"] = to_json(n.chi);
    j["c1sq"] = to_json(n.c1sq);
    j["c2"] = to_json(n.c2);
    j["dim_def"] = to_json(n.dim_def);
    j["omega_int"] = to_json(n.omega_int);
    j["exp_vol"] = to_json(n.exp_vol);
    j["coef_curv16"] = to_json(n.coef_curv16);
    j["coef_curv8"] = to_json(n.coef_curv8);
    j["coef_prop32"] = to_json(n.coef_prop32);
    j["coef_l34_plus"] = to_json(n.coef_l34_plus);
    j["coef_l34_minus"] = to_json(n.coef_l34_minus);
    return j;
}

Numerology numerology_from_json(const Json& j)
{
    Numerology n;
    n.t = int_from_json(field(j, "t"), "t");
    check_t(n.t);
    n.chi = integer_from_json(field(j, "chi"));
    n.c1sq = integer_from_json(field(j, "c1sq"));
    n.c2 = integer_from_json(field(j, "c2"));
    n.dim_def = integer_from_json(field(j, "dim_def"));
    n.omega_int = integer_from_json(field(j, "omega_int"));
    n.exp_vol = rational_from_json(field(j, "exp_vol"));
    n.coef_curv16 = rational_from_json(field(j, "coef_curv16"));
    n.coef_curv8 = rational_from_json(field(j, "coef_curv8"));
    n.coef_prop32 = rational_from_json(field(j, "coef_prop32"));
    n.coef_l34_plus = rational_from_json(field(j, "coef_l34_plus"));
    n.coef_l34_minus = rational_from_json(field(j, "coef_l34_minus"));
    return n;
}

Json to_json(const AdmissibleSublattice& a)
{
    Json basis = Json::array();
    for (const auto& v : a.m_basis) basis.push_back(to_json(v));
    Json j;
    j["m_basis"] = basis;
    j["m_gram"] = to_json(induced_gram(a.ambient, a.m_basis));
    j["trace"] = to_json(a.iota.trace());
    j["t"] = a.t;
    j["spinor_norm"] = spinor_norm(a.iota);
    j["iota"] = to_json(a.iota);
    return j;
}

// ---------------------------------------------------------------------------- files and diagrams

Json load_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

std::string chambers_svg(const Lattice& m, const std::vector<Chamber2>& chambers, const std::vector<bool>& natural)
{
    if (m.rank() != 2) throw DomainError("chamber diagrams are drawn for rank-2 lattices");
    constexpr double size = 480, centre = size / 2, radius = 200;
    auto point = [&](std::span<const Integer> v) {
        const double x = v[0].get_d(), y = v[1].get_d();
        const double len = std::hypot(x, y);
        return std::pair{centre + radius * x / len, centre - radius * y / len};
    };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
       << size << ' ' << size << "\">\n";
    os << "<title>" << m.label() << ": " << chambers.size() << " chambers</title>\n";
    os << "<line x1=\"0\" y1=\"" << centre << "\" x2=\"" << size << "\" y2=\"" << centre
       << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << centre << "\" y1=\"0\" x2=\"" << centre << "\" y2=\"" << size
       << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
    for (std::size_t i = 0; i < chambers.size(); ++i) {
        const auto [x1, y1] = point(chambers[i].low.direction);
        const auto [x2, y2] = point(chambers[i].high.direction);
        const bool nat = i < natural.size() && natural[i];
        os << "<polygon points=\"" << fmt(centre) << ',' << fmt(centre) << ' ' << fmt(x1) << ',' << fmt(y1) << ' ' << fmt(x2)
           << ',' << fmt(y2) << "\" fill=\"" << (nat ? "#9ecae1" : "#e5e5e5") << "\" stroke=\"none\"/>\n";
        const auto [lx, ly] = point(chambers[i].interior_sample());
        os << "<text x=\"" << fmt(centre + 0.75 * (lx - centre)) << "\" y=\"" << fmt(centre + 0.75 * (ly - centre))
           << "\" font-size=\"14\" text-anchor=\"middle\">" << (i + 1) << "</text>\n";
    }
    auto ray = [&](const BoundaryRay& r) {
        const auto [x, y] = point(r.direction);
        os << "<line x1=\"" << fmt(centre) << "\" y1=\"" << fmt(centre) << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(y)
           << "\" stroke=\"#333\" stroke-width=\"2\"" << (r.isotropic() ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
        os << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y - 6) << "\" font-size=\"11\" text-anchor=\"middle\">("
           << r.direction[0].get_str() << ',' << r.direction[1].get_str() << ")</text>\n";
    };
    for (std::size_t i = 0; i < chambers.size(); ++i) {
        ray(chambers[i].low);
        if (i + 1 == chambers.size()) ray(chambers[i].high);
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace ihskit
