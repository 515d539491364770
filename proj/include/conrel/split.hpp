#pragma once

#include <optional>
#include <string>

#include "conrel/relation.hpp"

namespace conrel {

/// An unordered two-block partition of an ambient index set, oriented so the
/// left block holds the smallest ambient index.
class Bipartition {
public:
    Bipartition(IndexSet a, IndexSet b);

    IndexSet left() const { return left_; }
    IndexSet right() const { return right_; }
    IndexSet ambient() const { return left_ | right_; }

    friend bool operator==(const Bipartition& x, const Bipartition& y) {
        return x.left_ == y.left_ && x.right_ == y.right_;
    }

private:
    IndexSet left_;
    IndexSet right_;
};

/// How a relation sits on its domain: which indices it constrains (socle)
/// and which it leaves free (external part), and the derived adjectives.
struct Classification {
    bool solid = false;    // no detachable index at all
    bool anchored = false; // the whole external part is detachable
    bool moving = false;   // negation of anchored
    bool fluid = false;    // non-trivial, empty socle, and moving
    IndexSet external;
    IndexSet socle;
};

/// T = T|left x T|right? Only the inclusion join <= T needs testing: the
/// reverse inclusion holds for every bipartition of the domain.
bool is_splittable_along(const Relation& t, const Bipartition& b);

/// First splitting bipartition in canonical order (left block contains
/// min(J_T), enumerated by increasing bitset value), or nullopt. Domains of
/// size < 2 admit no bipartition and always yield nullopt.
std::optional<Bipartition> find_split(const Relation& t);

bool is_part_splittable(const Relation& r, IndexSet a);

/// Is R the product of its restriction away from J with the trivial
/// relation on J? Decided by row counting: the restricted-and-extended
/// relation always contains R, so equality is equality of sizes.
bool is_detachable(const Relation& r, IndexSet j);

/// Union of all detachable subsets of the domain; computed from detachable
/// singletons, which suffices by monotonicity + union closure.
IndexSet external_part(const Relation& r);

IndexSet socle(const Relation& r);

Classification classify(const Relation& r);

std::string to_string(const Universe& u, const Bipartition& b);

} // namespace conrel
