#include "conrel/split.hpp"

#include "conrel/errors.hpp"

namespace conrel {

Bipartition::Bipartition(IndexSet a, IndexSet b) {
    if (a.empty() || b.empty())
        throw DomainError("bipartition blocks must be nonempty");
    if (a.intersects(b))
        throw DomainError("bipartition blocks must be disjoint");
    const IndexSet ambient = a | b;
    if (a.contains(ambient.min())) {
        left_ = a;
        right_ = b;
    } else {
        left_ = b;
        right_ = a;
    }
}

bool is_splittable_along(const Relation& t, const Bipartition& b) {
    if (b.ambient() != t.domain())
        throw DomainError("bipartition ambient " + set_to_string(t.universe(), b.ambient()) +
                          " differs from the relation domain " +
                          set_to_string(t.universe(), t.domain()));
    const Relation tk = t.restricted_to(b.left());
    const Relation tl = t.restricted_to(b.right());
    // The product always contains t, so it equals t exactly when it fits in
    // t.size() rows and matches.
    const auto product = join_bounded(tk, tl, t.size());
    return product && *product == t;
}

std::optional<Bipartition> find_split(const Relation& t) {
    const IndexSet domain = t.domain();
    if (domain.count() < 2) return std::nullopt;
    const int m = domain.min();
    const IndexSet rest = domain.without(m);
    IndexSet sub{};
    for (;;) {
        if (sub != rest) { // skip the full domain, whose complement is empty
            const IndexSet left = sub.with(m);
            const Bipartition b(left, domain - left);
            if (is_splittable_along(t, b)) return b;
        }
        sub = next_subset(sub, rest);
        if (sub.empty()) break; // wrapped past the last subset
    }
    return std::nullopt;
}

bool is_part_splittable(const Relation& r, IndexSet a) {
    if (!a.subset_of(r.domain()))
        throw DomainError("part " + set_to_string(r.universe(), a) +
                          " is not contained in the domain " +
                          set_to_string(r.universe(), r.domain()));
    if (a.count() < 2) return false;
    return find_split(r.restricted_to(a)).has_value();
}

bool is_detachable(const Relation& r, IndexSet j) {
    if (!j.subset_of(r.domain()))
        throw DomainError("part " + set_to_string(r.universe(), j) +
                          " is not contained in the domain " +
                          set_to_string(r.universe(), r.domain()));
    if (j.empty()) return true;
    const Relation rest = r.restricted_to(r.domain() - j);
    // r is always included in rest x 1_j, whose size is |rest| * |Z_j|;
    // equality is therefore a row count comparison.
    const std::uint64_t prod = r.universe().product_size(j);
    if (rest.size() != 0 && prod > kSizeSaturated / rest.size())
        return false; // the product dwarfs anything r could hold
    return r.size() == rest.size() * prod;
}

IndexSet external_part(const Relation& r) {
    IndexSet ex;
    for (int i : r.domain())
        if (is_detachable(r, IndexSet::single(i))) ex |= IndexSet::single(i);
    return ex;
}

IndexSet socle(const Relation& r) {
    return r.domain() - external_part(r);
}

Classification classify(const Relation& r) {
    Classification c;
    c.external = external_part(r);
    c.socle = r.domain() - c.external;
    c.solid = c.external.empty();
    // Anchored means R is determined by its restriction to the socle, which
    // is exactly detachability of the external part.
    c.anchored = is_detachable(r, c.external);
    c.moving = !c.anchored;
    c.fluid = !r.is_trivial() && c.socle.empty() && c.moving;
    return c;
}

std::string to_string(const Universe& u, const Bipartition& b) {
    return "(" + set_to_string(u, b.left()) + "," + set_to_string(u, b.right()) + ")";
}

} // namespace conrel
