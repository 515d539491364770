#pragma once

#include <span>

#include "conrel/connectivity.hpp"
#include "conrel/split.hpp"

namespace conrel {

/// Definition-literal reference implementations. Deliberately slow and
/// structured differently from the optimized engine (family algebra and
/// exhaustive loops instead of row kernels and shortcuts) so the two can
/// audit each other; exposed to the CLI through --oracle.

/// Nested loop over both graphs: keep compatible pairs, sum them.
Relation oracle_join(const Relation& r, const Relation& s);

/// The sum criterion: every x in T|left and y in T|right have x+y in T.
bool oracle_splittable(const Relation& t, const Bipartition& b);

/// Membership form of detachability: every total family whose restriction
/// away from j lies in the restricted graph already lies in the graph.
bool oracle_detachable(const Relation& r, IndexSet j);

/// Union of all detachable subsets, each tested by restrict-then-extend
/// equality; 2^|domain| tests, capped at |domain| <= 16.
IndexSet oracle_external_part(const Relation& r);

/// The connectivity axiom tested literally over every subfamily, capped at
/// 12 distinct members.
bool oracle_axiom_check(std::span<const IndexSet> sets, IndexSet carrier);

/// Connectivity structure via exhaustive splittability: every bipartition
/// of every subset decided by oracle_splittable; capped at |domain| <= 16.
ConnectivityStructure oracle_structure_of(const Relation& r);

} // namespace conrel
