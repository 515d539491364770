#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "conrel/connectivity.hpp"

namespace conrel {

/// The synthesis universe for an integral connectivity structure K on a
/// carrier of n points: a fresh universe with one index per point i whose
/// alphabet is every 0/1 assignment on K_i — the nonempty connected sets
/// through i. A value is the bitmask of the sets it maps to 1; the
/// membership predicate only ever reads those coordinates, so nothing
/// larger is needed. The relation it carves out has K as its connectivity
/// structure.
class BrunnUniverse {
public:
    /// `point_names` (one per carrier point, in increasing point order)
    /// names the fresh indices; defaults to the decimal point ids.
    explicit BrunnUniverse(const ConnectivityStructure& k,
                           std::vector<std::string> point_names = {},
                           std::uint64_t max_tuples = Universe::kDefaultCap);

    const Universe& universe() const { return *u_; }
    /// The input structure re-indexed onto the fresh universe's indices.
    const ConnectivityStructure& structure() const { return k_; }

    /// The coordinate list K_i of fresh index i, sorted canonically.
    std::span<const IndexSet> coords(int i) const { return coords_[static_cast<std::size_t>(i)]; }
    Value all_ones(int i) const;
    /// f_i(c) for an encoded value; c must be a member of coords(i).
    bool bit(int i, Value v, IndexSet c) const;

    /// The full graph: all total families passing `member`. Capacity error
    /// reports the product of the alphabet sizes.
    Relation relation() const;
    /// For each nonempty connected c, some i in c has f_i(c) = 1.
    bool member(const Family& x) const;
    /// The restriction of the synthesized relation to a, built directly
    /// from `restriction_member` without materializing the full graph.
    Relation restriction_graph(IndexSet a) const;
    /// The restriction characterization: the constraint of every nonempty
    /// connected c inside a holds for x (a family with domain a).
    bool restriction_member(IndexSet a, const Family& x) const;

    /// Proof witness on `domain_pts`: every coordinate mapped to 1 except
    /// the coordinate of c, forced to 0 wherever it exists.
    Family witness_except(IndexSet domain_pts, IndexSet c) const;

private:
    ConnectivityStructure k_;
    std::vector<std::vector<IndexSet>> coords_;
    std::unique_ptr<Universe> u_;
};

/// Materialize the graph and extract its connectivity structure; feasible
/// for small carriers only.
bool verify_brunn_full(const BrunnUniverse& b);

/// Verification without materializing the graph, following the two proof
/// directions: (a) for every connected c and every bipartition (L,M) of c,
/// the witnesses l, m pass the restriction characterization on L and M
/// while l+m fails it on c, so the restriction to c never splits; (b) for
/// every non-connected a, the separating bipartition splits the constraint
/// set {c connected, c inside a} into sets inside L and sets inside M, so
/// the characterization factors and the restriction to a splits.
bool verify_brunn_witnesses(const BrunnUniverse& b);

/// Full verification for carriers of up to 3 points, witness verification
/// beyond.
bool verify_brunn(const ConnectivityStructure& k,
                  std::uint64_t max_tuples = Universe::kDefaultCap);

} // namespace conrel
