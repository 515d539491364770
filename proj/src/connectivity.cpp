#include "conrel/connectivity.hpp"

#include <algorithm>
#include <unordered_map>

#include "conrel/errors.hpp"

namespace conrel {

namespace {

// Sort by (cardinality, bitset value) and drop duplicates.
void canonicalize_members(std::vector<IndexSet>& sets) {
    std::sort(sets.begin(), sets.end(), card_value_less);
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

void check_inside_carrier(std::span<const IndexSet> sets, IndexSet carrier) {
    for (IndexSet a : sets)
        if (!a.subset_of(carrier))
            throw DomainError("connected set outside the carrier");
}

// First overlapping pair whose union is missing, if any.
bool pairwise_closed(std::span<const IndexSet> sorted_sets, IndexSet* bad_a, IndexSet* bad_b) {
    for (std::size_t i = 0; i < sorted_sets.size(); ++i)
        for (std::size_t j = i + 1; j < sorted_sets.size(); ++j) {
            const IndexSet a = sorted_sets[i], b = sorted_sets[j];
            if (!a.intersects(b)) continue;
            if (!std::binary_search(sorted_sets.begin(), sorted_sets.end(), a | b,
                                    card_value_less)) {
                if (bad_a) *bad_a = a;
                if (bad_b) *bad_b = b;
                return false;
            }
        }
    return true;
}

} // namespace

ConnectivityStructure::ConnectivityStructure(IndexSet carrier, std::vector<IndexSet> members)
    : ConnectivityStructure(carrier, std::move(members), Trusted{}) {
    if (!pairwise_closed(connected_, nullptr, nullptr))
        throw DomainError("family is not closed under unions of overlapping members");
}

ConnectivityStructure::ConnectivityStructure(IndexSet carrier, std::vector<IndexSet> members,
                                             Trusted)
    : carrier_(carrier), connected_(std::move(members)) {
    check_inside_carrier(connected_, carrier_);
    connected_.push_back(IndexSet{});
    canonicalize_members(connected_);
    integral_ = true;
    for (int i : carrier_)
        if (!contains(IndexSet::single(i))) {
            integral_ = false;
            break;
        }
}

bool ConnectivityStructure::contains(IndexSet a) const {
    return std::binary_search(connected_.begin(), connected_.end(), a, card_value_less);
}

bool is_connectivity_structure(std::span<const IndexSet> sets, IndexSet carrier) {
    check_inside_carrier(sets, carrier);
    std::vector<IndexSet> sorted(sets.begin(), sets.end());
    canonicalize_members(sorted);
    if (!std::binary_search(sorted.begin(), sorted.end(), IndexSet{}, card_value_less))
        return false;
    return pairwise_closed(sorted, nullptr, nullptr);
}

ConnectivityStructure generate(std::span<const IndexSet> sets, IndexSet carrier, bool integral) {
    check_inside_carrier(sets, carrier);
    std::vector<IndexSet> pool(sets.begin(), sets.end());
    pool.push_back(IndexSet{});
    if (integral)
        for (int i : carrier) pool.push_back(IndexSet::single(i));
    canonicalize_members(pool);
    // Fixpoint of the overlapping-union closure; the pool only grows.
    for (bool grew = true; grew;) {
        grew = false;
        const std::size_t n = pool.size();
        std::vector<IndexSet> added;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!pool[i].intersects(pool[j])) continue;
                const IndexSet u = pool[i] | pool[j];
                if (!std::binary_search(pool.begin(), pool.end(), u, card_value_less))
                    added.push_back(u);
            }
        if (!added.empty()) {
            grew = true;
            pool.insert(pool.end(), added.begin(), added.end());
            canonicalize_members(pool);
        }
    }
    return ConnectivityStructure(carrier, std::move(pool), ConnectivityStructure::Trusted{});
}

IndexSet component(const ConnectivityStructure& k, IndexSet a, int x) {
    if (!k.is_integral())
        throw DomainError("components are defined on integral structures");
    if (!a.subset_of(k.carrier()))
        throw DomainError("part outside the carrier");
    if (!a.contains(x))
        throw DomainError("point outside the part");
    IndexSet comp;
    for (IndexSet c : k.connected())
        if (c.contains(x) && c.subset_of(a)) comp |= c;
    return comp;
}

Bipartition separation_bipartition(const ConnectivityStructure& k, IndexSet a) {
    if (!k.is_integral())
        throw DomainError("separation is defined on integral structures");
    if (!a.subset_of(k.carrier()))
        throw DomainError("part outside the carrier");
    if (a.empty())
        throw DomainError("the empty part has no bipartition");
    if (k.contains(a))
        throw DomainError("a connected part has no separating bipartition");
    const IndexSet left = component(k, a, a.min());
    const IndexSet right = a - left;
    // `left` is a union of connected sets through min(a), hence itself
    // connected and a proper subset of the non-connected `a`.
    const Bipartition b(left, right);
    for (IndexSet c : k.connected())
        if (!c.empty() && c.subset_of(a) && !c.subset_of(left) && !c.subset_of(right))
            throw Error("separation lemma violated: a connected set straddles the bipartition");
    return b;
}

ConnectivityStructure structure_of(const Relation& r) {
    const IndexSet domain = r.domain();
    const int n = domain.count();
    if (n > 20)
        throw CapacityError("connectivity extraction visits 2^" + std::to_string(n) +
                            " subsets; the cap is 2^20");

    // All restrictions of r, each projected from a one-index-larger parent.
    std::unordered_map<std::uint64_t, Relation> memo;
    memo.reserve(std::size_t{1} << n);
    std::vector<std::vector<IndexSet>> by_card(static_cast<std::size_t>(n) + 1);
    {
        IndexSet sub{};
        for (;;) {
            by_card[static_cast<std::size_t>(sub.count())].push_back(sub);
            sub = next_subset(sub, domain);
            if (sub.empty()) break;
        }
    }
    memo.emplace(domain.value(), r);
    for (int card = n - 1; card >= 0; --card)
        for (IndexSet a : by_card[static_cast<std::size_t>(card)]) {
            const IndexSet parent = a.with((domain - a).min());
            memo.emplace(a.value(), memo.at(parent.value()).restricted_to(a));
        }

    std::vector<IndexSet> members;
    for (const auto& level : by_card)
        for (IndexSet a : level) {
            if (a.count() < 2) {
                members.push_back(a);
                continue;
            }
            const Relation& ra = memo.at(a.value());
            bool splits = false;
            const int m = a.min();
            const IndexSet rest = a.without(m);
            IndexSet sub{};
            for (;;) {
                if (sub != rest) {
                    const IndexSet left = sub.with(m);
                    const auto product = join_bounded(memo.at(left.value()),
                                                      memo.at((a - left).value()), ra.size());
                    if (product && *product == ra) {
                        splits = true;
                        break;
                    }
                }
                sub = next_subset(sub, rest);
                if (sub.empty()) break;
            }
            if (!splits) members.push_back(a);
        }
    return ConnectivityStructure(domain, std::move(members));
}

ConnectivityStructure borromean(IndexSet carrier) {
    if (carrier.count() < 3)
        throw DomainError("the borromean structure needs at least 3 points");
    std::vector<IndexSet> members{IndexSet{}, carrier};
    for (int i : carrier) members.push_back(IndexSet::single(i));
    return ConnectivityStructure(carrier, std::move(members), ConnectivityStructure::Trusted{});
}

ConnectivityStructure discrete(IndexSet carrier) {
    if (carrier.empty())
        throw DomainError("the discrete structure needs at least 1 point");
    std::vector<IndexSet> members{IndexSet{}};
    for (int i : carrier) members.push_back(IndexSet::single(i));
    return ConnectivityStructure(carrier, std::move(members), ConnectivityStructure::Trusted{});
}

ConnectivityStructure coarse(IndexSet carrier) {
    if (carrier.empty())
        throw DomainError("the coarse structure needs at least 1 point");
    if (carrier.count() > 20)
        throw CapacityError("the coarse structure on " + std::to_string(carrier.count()) +
                            " points has 2^" + std::to_string(carrier.count()) +
                            " members; the cap is 2^20");
    std::vector<IndexSet> members;
    IndexSet sub{};
    for (;;) {
        members.push_back(sub);
        sub = next_subset(sub, carrier);
        if (sub.empty()) break;
    }
    return ConnectivityStructure(carrier, std::move(members), ConnectivityStructure::Trusted{});
}

std::string to_string(const Universe& u, const ConnectivityStructure& k) {
    std::string out = "{";
    bool first = true;
    for (IndexSet c : k.connected()) {
        if (!first) out += ",";
        out += set_to_string(u, c);
        first = false;
    }
    out += "}";
    return out;
}

} // namespace conrel
