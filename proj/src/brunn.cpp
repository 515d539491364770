#include "conrel/brunn.hpp"

#include <algorithm>

#include "conrel/errors.hpp"

namespace conrel {

namespace {

// Re-index a structure onto dense points 0..n-1 (carrier points ascending).
// Checked first: synthesis needs integrity, and the per-point alphabet cap
// bounds the member count ahead of any quadratic re-validation.
ConnectivityStructure densify(const ConnectivityStructure& k) {
    if (!k.is_integral())
        throw DomainError("synthesis needs an integral structure");
    const std::size_t n = static_cast<std::size_t>(k.carrier().count());
    if (k.connected().size() > 16 * n + 1)
        throw CapacityError("structure has " + std::to_string(k.connected().size()) +
                            " connected sets; some point lies in more than 16 of them, and "
                            "alphabets are capped at 2^16 values");
    std::vector<int> points;
    for (int p : k.carrier()) points.push_back(p);
    auto remap = [&](IndexSet c) {
        IndexSet out;
        for (std::size_t t = 0; t < points.size(); ++t)
            if (c.contains(points[t])) out |= IndexSet::single(static_cast<int>(t));
        return out;
    };
    std::vector<IndexSet> members;
    for (IndexSet c : k.connected()) members.push_back(remap(c));
    return ConnectivityStructure(IndexSet::range(static_cast<int>(points.size())),
                                 std::move(members));
}

} // namespace

BrunnUniverse::BrunnUniverse(const ConnectivityStructure& k, std::vector<std::string> point_names,
                             std::uint64_t max_tuples)
    : k_(densify(k)) {
    const int n = k_.carrier().count();
    if (point_names.empty()) {
        std::vector<int> points;
        for (int p : k.carrier()) points.push_back(p);
        for (int p : points) point_names.push_back(std::to_string(p));
    }
    if (static_cast<int>(point_names.size()) != n)
        throw DomainError("expected one point name per carrier point");

    coords_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (IndexSet c : k_.connected())
            if (!c.empty() && c.contains(i)) coords_[static_cast<std::size_t>(i)].push_back(c);
        if (coords_[static_cast<std::size_t>(i)].size() > 16)
            throw CapacityError("point " + point_names[static_cast<std::size_t>(i)] + " lies in " +
                                std::to_string(coords_[static_cast<std::size_t>(i)].size()) +
                                " connected sets; alphabets are capped at 2^16 values");
    }

    // Value names spell out the sets mapped to 1, e.g. "{1}+{1,2,3}"; the
    // all-zero assignment prints as "0".
    auto set_name = [&](IndexSet c) {
        std::string out = "{";
        bool first = true;
        for (int i : c) {
            if (!first) out += ",";
            out += point_names[static_cast<std::size_t>(i)];
            first = false;
        }
        return out + "}";
    };
    std::vector<std::vector<std::string>> alphabets(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& cs = coords_[static_cast<std::size_t>(i)];
        const std::size_t count = std::size_t{1} << cs.size();
        alphabets[static_cast<std::size_t>(i)].reserve(count);
        for (std::size_t mask = 0; mask < count; ++mask) {
            std::string name;
            for (std::size_t b = 0; b < cs.size(); ++b)
                if (mask & (std::size_t{1} << b)) {
                    if (!name.empty()) name += "+";
                    name += set_name(cs[b]);
                }
            alphabets[static_cast<std::size_t>(i)].push_back(name.empty() ? "0" : name);
        }
    }
    u_ = std::make_unique<Universe>(std::move(point_names), std::move(alphabets), max_tuples);
}

Value BrunnUniverse::all_ones(int i) const {
    return static_cast<Value>((std::size_t{1} << coords(i).size()) - 1);
}

bool BrunnUniverse::bit(int i, Value v, IndexSet c) const {
    const auto cs = coords(i);
    const auto it = std::lower_bound(cs.begin(), cs.end(), c, card_value_less);
    if (it == cs.end() || *it != c)
        throw DomainError("set is not a coordinate of this point");
    return (v >> (it - cs.begin())) & 1u;
}

bool BrunnUniverse::member(const Family& x) const {
    if (x.domain() != u_->all())
        throw DomainError("membership needs a total family on the carrier");
    return restriction_member(u_->all(), x);
}

bool BrunnUniverse::restriction_member(IndexSet a, const Family& x) const {
    if (x.domain() != a)
        throw DomainError("family domain differs from the restriction set");
    for (IndexSet c : k_.connected()) {
        if (c.empty() || !c.subset_of(a)) continue;
        bool satisfied = false;
        for (int i : c)
            if (bit(i, x.value(i), c)) {
                satisfied = true;
                break;
            }
        if (!satisfied) return false;
    }
    return true;
}

Relation BrunnUniverse::restriction_graph(IndexSet a) const {
    if (!a.subset_of(u_->all()))
        throw DomainError("restriction set outside the carrier");
    if (a.empty()) return Relation::unit(*u_);
    const std::uint64_t prod = u_->product_size(a);
    if (prod > u_->max_tuples())
        throw CapacityError("synthesis on " + set_to_string(*u_, a) + " enumerates " +
                            std::to_string(prod) + " candidate tuples, above the cap of " +
                            std::to_string(u_->max_tuples()));

    // Constraints of a, compiled to (column, mask-of-the-c-bit) probes.
    struct Probe {
        int col;
        Value mask;
    };
    std::vector<std::vector<Probe>> constraints;
    std::vector<int> idx;
    for (int i : a) idx.push_back(i);
    auto col_of = [&](int i) {
        return static_cast<int>(std::lower_bound(idx.begin(), idx.end(), i) - idx.begin());
    };
    for (IndexSet c : k_.connected()) {
        if (c.empty() || !c.subset_of(a)) continue;
        std::vector<Probe> probes;
        for (int i : c) {
            const auto cs = coords(i);
            const auto it = std::lower_bound(cs.begin(), cs.end(), c, card_value_less);
            probes.push_back({col_of(i), static_cast<Value>(Value{1} << (it - cs.begin()))});
        }
        constraints.push_back(std::move(probes));
    }

    const int w = static_cast<int>(idx.size());
    std::vector<Value> row(static_cast<std::size_t>(w), 0);
    std::vector<Value> flat;
    for (;;) {
        bool ok = true;
        for (const auto& probes : constraints) {
            bool satisfied = false;
            for (const Probe& p : probes)
                if (row[static_cast<std::size_t>(p.col)] & p.mask) {
                    satisfied = true;
                    break;
                }
            if (!satisfied) {
                ok = false;
                break;
            }
        }
        if (ok) flat.insert(flat.end(), row.begin(), row.end());
        int c = w - 1;
        for (; c >= 0; --c) {
            if (++row[static_cast<std::size_t>(c)] <
                static_cast<Value>(u_->alphabet_size(idx[static_cast<std::size_t>(c)])))
                break;
            row[static_cast<std::size_t>(c)] = 0;
        }
        if (c < 0) break;
    }
    return Relation::from_rows(*u_, a, std::move(flat));
}

Relation BrunnUniverse::relation() const {
    return restriction_graph(u_->all());
}

Family BrunnUniverse::witness_except(IndexSet domain_pts, IndexSet c) const {
    if (!domain_pts.subset_of(u_->all()))
        throw DomainError("witness domain outside the carrier");
    Family x(*u_);
    for (int i : domain_pts) {
        Value v = all_ones(i);
        const auto cs = coords(i);
        const auto it = std::lower_bound(cs.begin(), cs.end(), c, card_value_less);
        if (it != cs.end() && *it == c)
            v = static_cast<Value>(v & ~(Value{1} << (it - cs.begin())));
        x.set(i, v);
    }
    return x;
}

bool verify_brunn_full(const BrunnUniverse& b) {
    return structure_of(b.relation()) == b.structure();
}

bool verify_brunn_witnesses(const BrunnUniverse& b) {
    const ConnectivityStructure& k = b.structure();
    const IndexSet carrier = k.carrier();

    // (a) Connected sets never split: witnesses against every bipartition.
    for (IndexSet c : k.connected()) {
        if (c.count() < 2) continue;
        const int m = c.min();
        const IndexSet rest = c.without(m);
        IndexSet sub{};
        for (;;) {
            if (sub != rest) {
                const IndexSet left = sub.with(m);
                const IndexSet right = c - left;
                const Family l = b.witness_except(left, c);
                const Family mm = b.witness_except(right, c);
                if (!b.restriction_member(left, l)) return false;
                if (!b.restriction_member(right, mm)) return false;
                if (b.restriction_member(c, l + mm)) return false;
            }
            sub = next_subset(sub, rest);
            if (sub.empty()) break;
        }
    }

    // (b) Non-connected sets split: the separating bipartition cuts the
    // constraint set cleanly, so the characterization factors.
    IndexSet a{};
    for (;;) {
        if (a.count() >= 2 && !k.contains(a)) {
            const IndexSet left = component(k, a, a.min());
            const IndexSet right = a - left;
            if (left == a || right.empty()) return false;
            for (IndexSet c : k.connected())
                if (!c.empty() && c.subset_of(a) && !c.subset_of(left) && !c.subset_of(right))
                    return false;
        }
        a = next_subset(a, carrier);
        if (a.empty()) break;
    }
    return true;
}

bool verify_brunn(const ConnectivityStructure& k, std::uint64_t max_tuples) {
    const BrunnUniverse b(k, {}, max_tuples);
    return k.carrier().count() <= 3 ? verify_brunn_full(b) : verify_brunn_witnesses(b);
}

} // namespace conrel
