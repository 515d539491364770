#pragma once

// Shared randomized-test scaffolding: reproducible universes, families,
// relations and connectivity structures at desk scale (up to 5 indices,
// alphabets of up to 3 values).

#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "conrel/connectivity.hpp"
#include "conrel/relation.hpp"

namespace conrel::testing {

using Rng = std::mt19937_64;

inline std::unique_ptr<Universe> make_universe(const std::vector<int>& alphabet_sizes,
                                               std::uint64_t max_tuples = Universe::kDefaultCap) {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> alphabets;
    for (std::size_t i = 0; i < alphabet_sizes.size(); ++i) {
        names.push_back(std::to_string(i + 1));
        std::vector<std::string> alphabet;
        for (int v = 0; v < alphabet_sizes[i]; ++v) alphabet.push_back(std::to_string(v));
        alphabets.push_back(std::move(alphabet));
    }
    return std::make_unique<Universe>(std::move(names), std::move(alphabets), max_tuples);
}

inline std::unique_ptr<Universe> random_universe(Rng& rng, int max_n = 5, int max_alphabet = 3) {
    std::uniform_int_distribution<int> nd(1, max_n);
    std::uniform_int_distribution<int> ad(1, max_alphabet);
    std::vector<int> sizes(static_cast<std::size_t>(nd(rng)));
    for (int& s : sizes) s = ad(rng);
    return make_universe(sizes);
}

inline IndexSet random_subset(Rng& rng, IndexSet ambient) {
    std::uniform_int_distribution<std::uint64_t> bd;
    return IndexSet(bd(rng)) & ambient;
}

inline IndexSet random_nonempty_subset(Rng& rng, IndexSet ambient) {
    IndexSet s = random_subset(rng, ambient);
    if (s.empty()) {
        std::vector<int> indices;
        for (int i : ambient) indices.push_back(i);
        std::uniform_int_distribution<std::size_t> pick(0, indices.size() - 1);
        s = IndexSet::single(indices[pick(rng)]);
    }
    return s;
}

inline Family random_family(Rng& rng, const Universe& u, IndexSet domain) {
    Family x(u);
    for (int i : domain) {
        std::uniform_int_distribution<int> vd(0, u.alphabet_size(i) - 1);
        x.set(i, static_cast<Value>(vd(rng)));
    }
    return x;
}

/// Density-sampled subgraph of the full product on `domain`; on the empty
/// domain flips a coin between the two width-zero relations.
inline Relation random_relation(Rng& rng, const Universe& u, IndexSet domain) {
    if (domain.empty()) {
        std::uniform_int_distribution<int> coin(0, 1);
        return coin(rng) ? Relation::unit(u) : Relation::null(u, domain);
    }
    const Relation full = Relation::trivial(u, domain);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double density = unif(rng);
    std::vector<Value> flat;
    for (std::size_t k = 0; k < full.size(); ++k)
        if (unif(rng) < density) {
            const auto row = full.row(k);
            flat.insert(flat.end(), row.begin(), row.end());
        }
    return Relation::from_rows(u, domain, std::move(flat));
}

inline Relation random_relation(Rng& rng, const Universe& u) {
    return random_relation(rng, u, random_subset(rng, u.all()));
}

/// The subgraph of the full product on `domain` kept by `keep` (rows in
/// column order = increasing index order).
inline Relation relation_where(const Universe& u, IndexSet domain,
                               const std::function<bool(std::span<const Value>)>& keep) {
    const Relation full = Relation::trivial(u, domain);
    std::vector<Value> flat;
    for (std::size_t k = 0; k < full.size(); ++k) {
        const auto row = full.row(k);
        if (keep(row)) flat.insert(flat.end(), row.begin(), row.end());
    }
    return Relation::from_rows(u, domain, std::move(flat));
}

/// "Some coordinate is 0" on three binary indices: 7 tuples.
inline Relation borromean_r(const Universe& u) {
    return relation_where(u, IndexSet::range(3), [](std::span<const Value> row) {
        for (Value v : row)
            if (v == 0) return true;
        return false;
    });
}

/// "Some coordinate is 1" on three binary indices: 7 tuples.
inline Relation borromean_s(const Universe& u) {
    return relation_where(u, IndexSet::range(3), [](std::span<const Value> row) {
        for (Value v : row)
            if (v == 1) return true;
        return false;
    });
}

/// All member families over `carrier` satisfying the connectivity axiom
/// (optionally integrality), enumerated by filtering every subset of the
/// power set. Feasible for carriers of up to 3 points.
inline std::vector<ConnectivityStructure> all_structures(IndexSet carrier, bool integral_only) {
    std::vector<IndexSet> subsets;
    IndexSet a{};
    for (;;) {
        subsets.push_back(a);
        a = next_subset(a, carrier);
        if (a.empty()) break;
    }
    std::vector<ConnectivityStructure> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << subsets.size()); ++mask) {
        std::vector<IndexSet> members;
        for (std::size_t k = 0; k < subsets.size(); ++k)
            if ((mask >> k) & 1u) members.push_back(subsets[k]);
        if (!is_connectivity_structure(members, carrier)) continue;
        ConnectivityStructure s(carrier, std::move(members));
        if (integral_only && !s.is_integral()) continue;
        out.push_back(std::move(s));
    }
    return out;
}

inline ConnectivityStructure random_integral_structure(Rng& rng, IndexSet carrier) {
    std::uniform_int_distribution<int> cd(0, 4);
    std::vector<IndexSet> seeds;
    const int count = cd(rng);
    for (int k = 0; k < count; ++k) seeds.push_back(random_subset(rng, carrier));
    return generate(seeds, carrier, /*integral=*/true);
}

} // namespace conrel::testing
