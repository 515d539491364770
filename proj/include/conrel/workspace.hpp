#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "conrel/relation.hpp"

namespace conrel {

/// One universe plus named relations and named raw set families. Structure
/// entries stay raw member lists (not validated ConnectivityStructure
/// values) so that seeds for `generate` can be non-closed.
struct Workspace {
    std::unique_ptr<Universe> universe;
    std::map<std::string, Relation> relations;
    std::map<std::string, std::vector<IndexSet>> structures;
};

/// Schema:
///   {"universe": {"indices": [{"name": "...", "values": ["...", ...]}, ...]},
///    "relations": {"R": {"domain": ["...", ...], "tuples": [["...", ...], ...]}, ...},
///    "structures": {"K": [["...", ...], ...], ...}}
/// Tuples list value names in the file's domain order; structure members
/// list index names. Violations raise InputError with the JSON path;
/// duplicate tuples are deduplicated with a warning on `warnings`.
Workspace workspace_from_json(const nlohmann::json& doc,
                              std::uint64_t max_tuples = Universe::kDefaultCap,
                              std::ostream* warnings = nullptr);

/// Canonical form: indices in declared order, domains ascending, tuples
/// lexicographic, structure members by (cardinality, bitset value), names
/// sorted. Loading the result reproduces the workspace exactly.
nlohmann::ordered_json workspace_to_json(const Workspace& w);

Workspace load_workspace(std::istream& in, std::uint64_t max_tuples = Universe::kDefaultCap,
                         std::ostream* warnings = nullptr);
Workspace load_workspace_file(const std::string& path,
                              std::uint64_t max_tuples = Universe::kDefaultCap,
                              std::ostream* warnings = nullptr);
void save_workspace_file(const Workspace& w, const std::string& path);

/// Built-in workspaces:
///   "borromean3"        three binary indices; R = "some coordinate is 0",
///                       S = "some coordinate is 1"; the structure B3 and
///                       the recorded connectivity structure of their join.
///   "counterexample17"  four binary indices; R pins index 2 to 0 on
///                       {1,2,3}, S pins it to 1 on {1,2,4}.
///   "brunn:<kind><n>"   n binary indices and the structure K of the given
///                       kind (borromean, n >= 3 / discrete / coarse) on
///                       all n points, as a seed for brunn / verify-brunn.
Workspace make_fixture(const std::string& name,
                       std::uint64_t max_tuples = Universe::kDefaultCap);

/// Comma-separated index names -> set; "" is the empty set.
IndexSet parse_index_set(const Universe& u, const std::string& csv);

} // namespace conrel
