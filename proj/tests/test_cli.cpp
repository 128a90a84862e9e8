#include "ihskit/cli.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace ihskit;
using cli::run;

namespace {

const std::string kData = IHSKIT_DATA_DIR;

std::string data(const std::string& name) { return kData + "/" + name; }

std::filesystem::path temp_file(const std::string& name, const std::string& contents)
{
    const auto p = std::filesystem::temp_directory_path() / ("ihskit_cli_" + name);
    std::ofstream(p) << contents;
    return p;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Exit code 0, payload present, and the data stream parses back to the payload.
Json ok(const std::vector<std::string>& args)
{
    const cli::CommandResult r = run(args);
    INFO("err: ", r.err);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.payload.has_value());
    CHECK(Json::parse(r.out) == *r.payload);
    return *r.payload;
}

IntVector vec(std::initializer_list<long> xs)
{
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("numerology")
    {
        const Json j = ok({"numerology", "--t", "-17", "--format", "json"});
        CHECK(j["t"] == -17);
        CHECK(j["chi"] == 37);
        CHECK(j["c1sq"] == 288);
        CHECK(j["c2"] == 156);
        CHECK(j["dim_def"] == 19);
        CHECK(j["omega_int"] == -888);
        CHECK(numerology_from_json(j) == numerology(-17));

        const cli::CommandResult text = run({"numerology", "--t", "-17", "--format", "text"});
        CHECK(text.exit_code == 0);
        CHECK(text.out.find("coef_prop32: 17/2\n") != std::string::npos);
        CHECK(text.out.find("chi: 37\n") != std::string::npos);
    }

    TEST_CASE("exit codes")
    {
        const cli::CommandResult missing = run({"delta", "enum", "--lattice", "unknown.json"});
        CHECK(missing.exit_code == 2);
        CHECK_FALSE(missing.payload.has_value());
        CHECK(missing.out.empty());
        CHECK(Json::parse(missing.err)["error"]["kind"] == "input");

        CHECK(run({"bogus"}).exit_code == 2);
        CHECK(run({"lattice", "bogus"}).exit_code == 2);
        CHECK(run({"numerology"}).exit_code == 2);
        CHECK(run({"numerology", "--t", "x"}).exit_code == 2);
        CHECK(run({"numerology", "--t", "3", "--format", "yaml"}).exit_code == 2);
        CHECK(run({}).exit_code == 2);
        CHECK(run({"forms", "expand", "--series", "nope"}).exit_code == 2);
        CHECK(run({"forms", "verify", "other"}).exit_code == 2);

        const auto bad = temp_file("malformed.json", "{\"kind\": \"power\", ");
        CHECK(run({"zeta", "dzeta", "--spectrum", bad.string()}).exit_code == 2);
        const auto wrong = temp_file("wrongtype.json", R"({"kind": "power", "a": "one", "p": 1, "w": 1})");
        CHECK(run({"zeta", "dzeta", "--spectrum", wrong.string()}).exit_code == 2);

        const cli::CommandResult domain = run({"numerology", "--t", "4"});
        CHECK(domain.exit_code == 1);
        CHECK_FALSE(domain.payload.has_value());
        CHECK(domain.out.empty());
        CHECK(Json::parse(domain.err)["error"]["kind"] == "domain");

        const auto neg = temp_file("negative.json", R"({"kind": "power", "a": -1, "p": 1, "w": 1})");
        CHECK(run({"zeta", "dzeta", "--spectrum", neg.string()}).exit_code == 1);

        const cli::CommandResult help = run({"--help"});
        CHECK(help.exit_code == 0);
        CHECK(help.out.find("verify-all") != std::string::npos);
    }

    TEST_CASE("admissibility failures carry the violations")
    {
        IntMatrix minus(23, 23);
        for (std::size_t i = 0; i < 23; ++i) minus(i, i) = -1;
        const auto f = temp_file("minus.json", Json{{"lattice", "L2"}, {"matrix", to_json(minus)}}.dump());
        const cli::CommandResult r = run({"isometry", "admissible", "--isometry", f.string()});
        CHECK(r.exit_code == 1);
        const Json err = Json::parse(r.err)["error"];
        CHECK(err["kind"] == "domain");
        REQUIRE(err.contains("violations"));
        CHECK(err["violations"].size() >= 1);

        CHECK(run({"isometry", "admissible", "--involution", "nope"}).exit_code == 2);
        CHECK(run({"isometry", "admissible"}).exit_code == 2);
    }

    TEST_CASE("admissible catalog involution")
    {
        const Json j = ok({"isometry", "admissible", "--involution", "Zh"});
        CHECK(j["t"] == -17);
        CHECK(j["spinor_norm"] == 1);
        CHECK(j["trace"] == -19);
        CHECK(j["numerology"]["chi"] == 37);
        const Isometry iota = isometry_from_json(j["iota"]);
        CHECK(iota.is_involution());
        CHECK(invariant_lattice(iota) == cli::example_zh_ze().basis());
    }

    TEST_CASE("spinor subcommand")
    {
        const Lattice u = build_standard("U");
        const IntMatrix swap = IntMatrix::from_rows({vec({0, 1}), vec({1, 0})});
        const auto f = temp_file("swap.json", Json{{"lattice", "U"}, {"matrix", to_json(swap)}}.dump());
        const Json j = ok({"isometry", "spinor", "--isometry", f.string()});
        CHECK(j["involution"] == true);
        CHECK(j["trace"] == 0);
        const ReflectionFactorization fac = factorization_from_json(j["factorization"]);
        CHECK(compose(u, fac) == to_rational(swap));
        CHECK(j["spinor_norm"] == spinor_norm(u, fac));
    }

    TEST_CASE("lattice info and catalog")
    {
        const Json l2 = ok({"lattice", "info", "--lattice", "L2"});
        CHECK(l2["signature"] == Json::parse("[3,20]"));
        CHECK(l2["discriminant_group"]["elementary_divisors"] == Json::parse("[2]"));
        const Json u2 = ok({"lattice", "info", "--lattice", "U(2)+E8(2)"});
        CHECK(u2["two_elementary"]["length"] == 10);
        const auto f = temp_file("lat.json", R"({"label":"A2","gram":[[2,-1],[-1,2]]})");
        const Json a2 = ok({"lattice", "info", "--lattice", f.string()});
        CHECK(a2["determinant"] == 3);
        CHECK(a2["label"] == "A2");

        const Json cat = ok({"lattice", "catalog"});
        CHECK(cat == catalog_document());
        CHECK(catalog_from_json(cat).lattices.size() == standard_names().size());
    }

    TEST_CASE("catalog path override")
    {
        const auto empty = temp_file("catalog.json", Json{{"format", "ihskit-catalog"},
                                                           {"version", 1},
                                                           {"lattices", Json::array()},
                                                           {"involutions", Json::array()}}
                                                         .dump());
        setenv("IHSKIT_CATALOG", empty.c_str(), 1);
        CHECK(catalog_path() == empty);
        CHECK(run({"isometry", "admissible", "--involution", "Zh"}).exit_code == 2);
        setenv("IHSKIT_CATALOG", "/nonexistent/catalog.json", 1);
        CHECK(run({"lattice", "info", "--lattice", "U"}).exit_code == 2);
        unsetenv("IHSKIT_CATALOG");
        CHECK(run({"isometry", "admissible", "--involution", "Zh"}).exit_code == 0);
    }

    TEST_CASE("walls and chambers")
    {
        const Json d = ok({"delta", "enum", "--lattice", data("zh_ze.json")});
        CHECK(delta_set_from_json(d).vectors == enumerate_delta(cli::example_zh_ze()).vectors);
        CHECK(d["completeness"] == "exact");

        const Json c = ok({"delta", "classify", "--lattice", data("zh_ze.json"), "--delta", "2,3"});
        CHECK(c["classification"][0]["case"] == "nonnegative");
        CHECK(run({"delta", "classify", "--lattice", data("zh_ze.json"), "--delta", "1,0"}).exit_code == 1);

        const Json u = ok({"delta", "enum", "--lattice", "U"});
        CHECK(u["completeness"] == "exact");
        CHECK(u["count"] == 2);
        const cli::CommandResult bounded = run({"delta", "enum", "--lattice", "Lambda_9", "--bound", "3"});
        REQUIRE(bounded.payload.has_value());
        const DeltaSet box = delta_set_from_json(*bounded.payload);
        CHECK_FALSE(box.exact);
        CHECK(box.bound == 3);
        CHECK(box.vectors.size() > 0);
        CHECK(bounded.err.find("box search") != std::string::npos);

        const Json o = ok({"chambers", "orbits", "--lattice", data("zh_ze.json"), "--anchor", "1,0", "--m0", "1,0", "--generators",
                           data("zh_ze_generators.json")});
        CHECK(o["orbits"] == Json::parse("[[0,3],[1,2]]"));
        CHECK(o["natural"] == Json::parse("[1,2]"));
        CHECK(chambers_from_json(o["chambers"]).size() == 4);

        CHECK(run({"chambers", "rank2", "--lattice", "L2", "--anchor", "1,0"}).exit_code == 1);
        CHECK(run({"chambers", "rank2", "--lattice", data("zh_ze.json"), "--anchor", "0,1"}).exit_code == 1);
        CHECK(run({"chambers", "rank2", "--lattice", data("zh_ze.json"), "--anchor", "1,x"}).exit_code == 2);

        const auto svg = std::filesystem::temp_directory_path() / "ihskit_cli_chambers.svg";
        const cli::CommandResult plot =
            run({"chambers", "plot", "--lattice", data("zh_ze.json"), "--anchor", "1,0", "--m0", "1,0", "--out", svg.string()});
        CHECK(plot.exit_code == 0);
        CHECK(plot.out.empty());
        const EmbeddedSublattice m = cli::example_zh_ze();
        const auto ch = chambers_rank2(m.lattice(), enumerate_delta(m), vec({1, 0}));
        CHECK(slurp(svg) == chambers_svg(m.lattice(), ch, {false, true, true, false}));
    }

    TEST_CASE("forms")
    {
        const Json v = ok({"forms", "verify", "todd-ch"});
        CHECK(v["holds"] == true);
        CHECK(graded_from_json(v["residual"]).is_zero());
        CHECK(ok({"forms", "verify", "--free-normal"})["holds"] == false);

        const Json e = ok({"forms", "expand", "--series", "td-iota", "--weight", "2"});
        CHECK(graded_from_json(e["element"]) == equivariant_todd(2));
        const cli::CommandResult text = run({"forms", "expand", "--series", "sigmoid", "--weight", "2", "--format", "text"});
        CHECK(text.out == "weight 0: 1/4\nweight 1: 1/8*c1N\nweight 2: 1/16*c2N\n");
        CHECK(run({"forms", "expand", "--weight", "5"}).exit_code == 2);
    }

    TEST_CASE("zeta, torsion, invariant")
    {
        const Json z = ok({"zeta", "dzeta", "--spectrum", data("power_spectrum.json")});
        CHECK(std::abs(z["zeta_prime_zero"].get<double>() + 2.0 * std::log(2.0 * std::numbers::pi)) < 1e-12);

        const Json t = ok({"torsion", "eq", "--spectra", data("spectra.json"), "--dim", "4"});
        CHECK(t["tau"].get<double>() == equivariant_torsion(spectra_from_json(load_json_file(data("spectra.json"))), 4));
        CHECK(run({"torsion", "eq", "--spectra", data("spectra.json"), "--dim", "1"}).exit_code == 1);

        const Json a = ok({"invariant", "assemble", "--ingredients", data("ingredients.json")});
        CHECK(a["value"].get<double>() == assemble_invariant(ingredients_from_json(load_json_file(data("ingredients.json")))));
        CHECK(rational_from_json(a["exp_vol"]) == 27);
    }

    TEST_CASE("verify-all passes and is deterministic")
    {
        const cli::CommandResult a = run({"verify-all"});
        CHECK(a.exit_code == 0);
        REQUIRE(a.payload.has_value());
        CHECK((*a.payload)["failed"] == 0);
        CHECK((*a.payload)["checks"].size() >= 10);
        const cli::CommandResult b = run({"verify-all"});
        CHECK(a.out == b.out);
        const cli::CommandResult text = run({"verify-all", "--format", "text"});
        CHECK(text.out.find("FAIL") == std::string::npos);
        CHECK(text.out.starts_with("PASS "));
    }

    TEST_CASE("verify-all reports failures with exit code 1")
    {
        // a tolerance below the attainable floating-point error
        const cli::CommandResult r = run({"verify-all", "--tol", "1e-300"});
        CHECK(r.exit_code == 1);
        CHECK_FALSE(r.payload.has_value());
        CHECK(r.out.empty());
        CHECK(Json::parse(r.err)["failed"].get<int>() >= 1);
    }
}
