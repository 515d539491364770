#include "conrel/oracles.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "conrel/errors.hpp"

namespace conrel {

namespace {

std::vector<Family> graph_of(const Relation& r) {
    std::vector<Family> out;
    out.reserve(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) out.push_back(r.family_at(k));
    return out;
}

// Distinct restrictions of the graph members, as families on k.
std::vector<Family> projected_graph(const Relation& r, IndexSet k) {
    std::vector<Family> out;
    for (std::size_t a = 0; a < r.size(); ++a) {
        Family x = r.family_at(a).restricted_to(k);
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    return out;
}

} // namespace

Relation oracle_join(const Relation& r, const Relation& s) {
    if (&r.universe() != &s.universe())
        throw DomainError("join requires relations over the same universe");
    const Universe& u = r.universe();
    if (s.size() != 0 && r.size() > u.max_tuples() / s.size())
        throw CapacityError("join candidate count " + std::to_string(r.size()) + " x " +
                            std::to_string(s.size()) + " exceeds the cap of " +
                            std::to_string(u.max_tuples()));
    const std::vector<Family> gr = graph_of(r);
    const std::vector<Family> gs = graph_of(s);
    std::vector<Family> out;
    for (const Family& x : gr)
        for (const Family& y : gs)
            if (compatible(x, y)) out.push_back(x + y);
    return Relation::from_families(u, r.domain() | s.domain(), out);
}

bool oracle_splittable(const Relation& t, const Bipartition& b) {
    if (b.ambient() != t.domain())
        throw DomainError("bipartition ambient differs from the relation domain");
    const std::vector<Family> left = projected_graph(t, b.left());
    const std::vector<Family> right = projected_graph(t, b.right());
    for (const Family& x : left)
        for (const Family& y : right)
            if (!t.contains(x + y)) return false;
    return true;
}

bool oracle_detachable(const Relation& r, IndexSet j) {
    if (!j.subset_of(r.domain()))
        throw DomainError("part is not contained in the domain");
    if (j.empty()) return true;
    const Universe& u = r.universe();
    if (u.product_size(r.domain()) > (std::uint64_t{1} << 20))
        throw CapacityError("membership-form detachability enumerates " +
                            std::to_string(u.product_size(r.domain())) +
                            " total families; the cap is 2^20");
    const IndexSet rest = r.domain() - j;
    const int restw = rest.count();

    // Sorted projections of the graph onto the complement of j.
    std::set<std::vector<Value>> projected;
    std::vector<int> rest_cols;
    for (int i : rest) rest_cols.push_back(r.column_of(i));
    for (std::size_t a = 0; a < r.size(); ++a) {
        std::vector<Value> key(static_cast<std::size_t>(restw));
        for (std::size_t c = 0; c < rest_cols.size(); ++c)
            key[c] = r.row(a)[static_cast<std::size_t>(rest_cols[c])];
        projected.insert(std::move(key));
    }

    // Every total family projecting into the restricted graph must already
    // be a graph member.
    std::vector<int> idx;
    for (int i : r.domain()) idx.push_back(i);
    const int w = static_cast<int>(idx.size());
    std::vector<Value> z(static_cast<std::size_t>(w), 0);
    std::vector<Value> zrest(static_cast<std::size_t>(restw));
    for (;;) {
        for (std::size_t c = 0; c < rest_cols.size(); ++c)
            zrest[c] = z[static_cast<std::size_t>(rest_cols[c])];
        if (projected.count(zrest) && !r.contains_row(z)) return false;
        int c = w - 1;
        for (; c >= 0; --c) {
            if (++z[static_cast<std::size_t>(c)] <
                static_cast<Value>(u.alphabet_size(idx[static_cast<std::size_t>(c)])))
                break;
            z[static_cast<std::size_t>(c)] = 0;
        }
        if (c < 0) break;
    }
    return true;
}

IndexSet oracle_external_part(const Relation& r) {
    const IndexSet domain = r.domain();
    if (domain.count() > 16)
        throw CapacityError("exhaustive external part visits 2^" +
                            std::to_string(domain.count()) + " subsets; the cap is 2^16");
    IndexSet ex;
    IndexSet j{};
    for (;;) {
        if (!j.empty()) {
            const Relation back = r.restricted_to(domain - j).extended_to(domain);
            if (back == r) ex |= j;
        }
        j = next_subset(j, domain);
        if (j.empty()) break;
    }
    return ex;
}

bool oracle_axiom_check(std::span<const IndexSet> sets, IndexSet carrier) {
    for (IndexSet a : sets)
        if (!a.subset_of(carrier))
            throw DomainError("connected set outside the carrier");
    std::vector<IndexSet> ms(sets.begin(), sets.end());
    std::sort(ms.begin(), ms.end(), card_value_less);
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    if (ms.empty() || !ms.front().empty()) return false; // the empty set is required
    const std::size_t m = ms.size();
    if (m > 12)
        throw CapacityError("literal axiom check visits 2^" + std::to_string(m) +
                            " subfamilies; the cap is 2^12");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        IndexSet inter = carrier;
        IndexSet uni;
        for (std::size_t k = 0; k < m; ++k)
            if (mask & (std::uint64_t{1} << k)) {
                inter &= ms[k];
                uni |= ms[k];
            }
        if (inter.empty()) continue;
        if (!std::binary_search(ms.begin(), ms.end(), uni, card_value_less)) return false;
    }
    return true;
}

ConnectivityStructure oracle_structure_of(const Relation& r) {
    const IndexSet domain = r.domain();
    if (domain.count() > 16)
        throw CapacityError("exhaustive connectivity extraction visits 2^" +
                            std::to_string(domain.count()) + " subsets; the cap is 2^16");
    std::vector<IndexSet> members;
    IndexSet a{};
    for (;;) {
        if (a.count() < 2) {
            members.push_back(a);
        } else {
            const Relation ra = r.restricted_to(a);
            bool splits = false;
            const int m = a.min();
            const IndexSet rest = a.without(m);
            IndexSet sub{};
            for (;;) {
                if (sub != rest &&
                    oracle_splittable(ra, Bipartition(sub.with(m), a - sub.with(m)))) {
                    splits = true;
                    break;
                }
                sub = next_subset(sub, rest);
                if (sub.empty()) break;
            }
            if (!splits) members.push_back(a);
        }
        a = next_subset(a, domain);
        if (a.empty()) break;
    }
    return ConnectivityStructure(domain, std::move(members));
}

} // namespace conrel
