#pragma once

#include <span>
#include <string>
#include <vector>

#include "conrel/split.hpp"

namespace conrel {

/// A finite connectivity structure: a carrier set of points and the family
/// of its connected subsets — containing the empty set and closed under
/// union of overlapping members. Integral structures also hold every
/// singleton of the carrier.
class ConnectivityStructure {
public:
    /// Validates: members inside the carrier, closure under overlapping
    /// unions. The empty set is added if missing; members are deduplicated
    /// and kept sorted by (cardinality, bitset value).
    ConnectivityStructure(IndexSet carrier, std::vector<IndexSet> members);

    IndexSet carrier() const { return carrier_; }
    std::span<const IndexSet> connected() const { return connected_; }
    bool is_integral() const { return integral_; }
    bool contains(IndexSet a) const;

    friend bool operator==(const ConnectivityStructure& a, const ConnectivityStructure& b) {
        return a.carrier_ == b.carrier_ && a.connected_ == b.connected_;
    }

private:
    struct Trusted {};
    /// Skips the closure check: for families closed by construction.
    ConnectivityStructure(IndexSet carrier, std::vector<IndexSet> members, Trusted);

    IndexSet carrier_;
    std::vector<IndexSet> connected_;
    bool integral_;

    friend ConnectivityStructure generate(std::span<const IndexSet>, IndexSet, bool);
    friend ConnectivityStructure borromean(IndexSet);
    friend ConnectivityStructure discrete(IndexSet);
    friend ConnectivityStructure coarse(IndexSet);
};

/// Axiom test on a raw family: empty set present, and the union of any two
/// overlapping members is a member. Pairwise closure is equivalent to the
/// all-subfamilies axiom on finite carriers: a family with a common point
/// folds into binary overlapping unions through that point.
bool is_connectivity_structure(std::span<const IndexSet> sets, IndexSet carrier);

/// Least structure containing the seeds (plus all singletons when
/// `integral`): fixpoint of the overlapping-union closure.
ConnectivityStructure generate(std::span<const IndexSet> sets, IndexSet carrier, bool integral);

/// Union of the connected sets C with x in C and C inside a; the maximal
/// connected subset of a through x.
IndexSet component(const ConnectivityStructure& k, IndexSet a, int x);

/// For a non-connected part a: the bipartition (component of min(a), rest),
/// which every connected subset of a respects.
Bipartition separation_bipartition(const ConnectivityStructure& k, IndexSet a);

/// The connectivity structure of a relation: all subsets of the domain
/// whose restriction does not split. Integral by construction.
ConnectivityStructure structure_of(const Relation& r);

/// Empty set, singletons, and the whole carrier (needs >= 3 points).
ConnectivityStructure borromean(IndexSet carrier);
/// Empty set and singletons only.
ConnectivityStructure discrete(IndexSet carrier);
/// Every subset of the carrier.
ConnectivityStructure coarse(IndexSet carrier);

std::string to_string(const Universe& u, const ConnectivityStructure& k);

} // namespace conrel
