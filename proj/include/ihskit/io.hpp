#pragma once

#include "ihskit/chambers.hpp"
#include "ihskit/char_forms.hpp"
#include "ihskit/isometry.hpp"
#include "ihskit/lattice.hpp"
#include "ihskit/torsion.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace ihskit {

using Json = nlohmann::ordered_json;

/// Integers within ±2^53 as JSON numbers, larger ones as decimal strings.
Json to_json(const Integer& x);
Integer integer_from_json(const Json& j);
/// {"num": "...", "den": "..."}; the reader also takes plain integers.
Json to_json(const Rational& x);
Rational rational_from_json(const Json& j);

Json to_json(std::span<const Integer> v);
IntVector int_vector_from_json(const Json& j);
Json to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const Json& j);
Json to_json(std::span<const Rational> v);
RatVector rat_vector_from_json(const Json& j);

/// Named lattices from the versioned catalog file.
struct Catalog {
    int version = 0;
    std::map<std::string, Lattice> lattices;
    std::vector<CatalogInvolution> involutions;
};
Json catalog_document();
Catalog catalog_from_json(const Json& j);
/// IHSKIT_CATALOG if set, else the installed default.
std::filesystem::path catalog_path();
const Catalog& default_catalog();

/// {"label", "gram"}, or {"name", "scale"} resolved through the catalog.
Json to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j, const Catalog& catalog = default_catalog());

/// {"label", "ambient", "basis"}; a bare lattice document is read as M inside itself.
Json to_json(const EmbeddedSublattice& m);
EmbeddedSublattice sublattice_from_json(const Json& j, const Catalog& catalog = default_catalog());

Json to_json(const Isometry& g);
Isometry isometry_from_json(const Json& j, const Catalog& catalog = default_catalog());
/// An isometry document without "lattice" is read on the given lattice.
Isometry isometry_from_json(const Json& j, const Lattice& lattice);

Json to_json(const ReflectionFactorization& f);
ReflectionFactorization factorization_from_json(const Json& j);

Json to_json(const DeltaSet& d);
DeltaSet delta_set_from_json(const Json& j);

Json to_json(const Chamber2& c);
Chamber2 chamber_from_json(const Json& j);
Json to_json(const std::vector<Chamber2>& cs);
std::vector<Chamber2> chambers_from_json(const Json& j);

Json to_json(const GradedElement& x);
GradedElement graded_from_json(const Json& j);

Json to_json(const WeightedSpectrum& s);
WeightedSpectrum spectrum_from_json(const Json& j);
/// {"0": spectrum, "1": spectrum, ...}
std::map<int, WeightedSpectrum> spectra_from_json(const Json& j);

Json to_json(const TorsionIngredients& in);
TorsionIngredients ingredients_from_json(const Json& j);

Json to_json(const Numerology& n);
Numerology numerology_from_json(const Json& j);

Json to_json(const AdmissibleSublattice& a);

/// Parses a file; missing or malformed files raise InputError.
Json load_json_file(const std::filesystem::path& path);

/// Chamber diagram in M-coordinates: one wedge per chamber, walls solid, isotropic rays dashed.
std::string chambers_svg(const Lattice& m, const std::vector<Chamber2>& chambers, const std::vector<bool>& natural);

} // namespace ihskit
