#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "equihom/chains.hpp"
#include "equihom/error.hpp"
#include "equihom/mackey.hpp"

namespace equihom {

// Ordered keys keep every emitted document byte-stable.
using Json = nlohmann::ordered_json;

/// Parses a file; syntax errors become Parse errors with line and column.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& origin);

/// trivial, z2, z3, z4, z6, z12, zN, z2xz2, s3, d4, q8.
std::vector<std::string> builtin_group_names();
/// Null when the name is not a builtin.
std::shared_ptr<const FiniteGroup> builtin_group(const std::string& name);
/// A file path, or a builtin name (a missing file "name.json" falls back to
/// the builtin "name").
std::shared_ptr<const FiniteGroup> load_group(const std::string& ref);

Json group_to_json(const FiniteGroup& g, const std::string& name);
std::shared_ptr<const FiniteGroup> group_from_json(const Json& j);
/// Group reference inside complex / functor files: a name, a path or an
/// inline group object.
std::shared_ptr<const FiniteGroup> group_from_ref(const Json& j);

Json int_to_json(const Int& x);
Int int_from_json(const Json& j);
Json abgroup_to_json(const FgAbGroup& g);
FgAbGroup abgroup_from_json(const Json& j);
Json graded_to_json(const GradedAbGroups& g);

/// {"H", "K", "J", "g"}: object class ids, J as its element list.
Json span_to_json(const OrbitCategory& cat, int h, int k, int index);
/// Returns the basis morphism; throws ObjectMismatch for a span that is not one.
SpanMorphism span_from_json(const OrbitCategory& cat, const Json& j);

Json complex_to_json(const CellComplex& x, const Json& group_ref);
/// The file's own "group" wins when present; otherwise cat is used.
CellComplex complex_from_json(const Json& j, std::shared_ptr<const OrbitCategory> cat);

Json functor_to_json(const MackeyFunctor& t, const Json& group_ref);
/// Validates functoriality (FunctorialityFailure otherwise).
MackeyPtr functor_from_json(const Json& j, std::shared_ptr<const OrbitCategory> cat);

/// Exit status for an error kind: 1 usage, 2 parse, 3 everything else.
int exit_code(ErrorKind kind);

}  // namespace equihom
