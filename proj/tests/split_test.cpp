#include <vector>

#include "doctest.h"

#include "conrel/errors.hpp"
#include "conrel/oracles.hpp"
#include "conrel/split.hpp"
#include "testers.hpp"

using namespace conrel;
using testing::borromean_r;
using testing::borromean_s;
using testing::make_universe;
using testing::random_relation;
using testing::random_subset;
using testing::random_universe;
using testing::relation_where;
using testing::Rng;

TEST_CASE("bipartitions are validated and canonically oriented") {
    CHECK_THROWS_AS(Bipartition(IndexSet{}, IndexSet::of({1})), DomainError);
    CHECK_THROWS_AS(Bipartition(IndexSet::of({1}), IndexSet::of({1, 2})), DomainError);
    const Bipartition b(IndexSet::of({2, 3}), IndexSet::of({0}));
    CHECK(b.left() == IndexSet::of({0}));
    CHECK(b.right() == IndexSet::of({2, 3}));
    CHECK(b.ambient() == IndexSet::of({0, 2, 3}));
    CHECK(b == Bipartition(IndexSet::of({0}), IndexSet::of({2, 3})));
}

TEST_CASE("null and trivial relations split along every bipartition") {
    const auto u = make_universe({2, 3, 2});
    const std::vector<Bipartition> bs = {
        Bipartition(IndexSet::of({0}), IndexSet::of({1, 2})),
        Bipartition(IndexSet::of({1}), IndexSet::of({0, 2})),
        Bipartition(IndexSet::of({2}), IndexSet::of({0, 1})),
    };
    for (const Bipartition& b : bs) {
        CHECK(is_splittable_along(Relation::trivial(*u, u->all()), b));
        CHECK(is_splittable_along(Relation::null(*u, u->all()), b));
    }
    CHECK_THROWS_AS(
        (void)is_splittable_along(Relation::trivial(*u, IndexSet::of({0, 1})), bs[0]),
        DomainError);
}

TEST_CASE("the borromean join does not split") {
    const auto u = make_universe({2, 2, 2});
    const Relation t = join(borromean_r(*u), borromean_s(*u));
    CHECK_FALSE(is_splittable_along(t, Bipartition(IndexSet::of({0, 1}), IndexSet::of({2}))));
    CHECK_FALSE(find_split(t).has_value());
}

TEST_CASE("find_split walks bipartitions in canonical order") {
    const auto u = make_universe({2, 2, 2});

    CHECK_FALSE(find_split(Relation::unit(*u)).has_value());
    CHECK_FALSE(find_split(Relation::trivial(*u, IndexSet::of({1}))).has_value());

    const auto split2 = find_split(Relation::trivial(*u, IndexSet::of({0, 1})));
    REQUIRE(split2.has_value());
    CHECK(*split2 == Bipartition(IndexSet::of({0}), IndexSet::of({1})));

    // The trivial relation splits everywhere; the canonical first hit pairs
    // the smallest index alone against the rest.
    const auto split3 = find_split(Relation::trivial(*u, u->all()));
    REQUIRE(split3.has_value());
    CHECK(split3->left() == IndexSet::of({0}));
    CHECK(split3->right() == IndexSet::of({1, 2}));

    const Relation identity = Relation::from_rows(*u, IndexSet::of({0, 1}), {0, 0, 1, 1});
    CHECK_FALSE(find_split(identity).has_value());
}

TEST_CASE("part splittability restricts first") {
    const auto u = make_universe({2, 2, 2});
    const Relation r = borromean_r(*u);
    CHECK_FALSE(is_part_splittable(r, IndexSet{}));
    CHECK_FALSE(is_part_splittable(r, IndexSet::of({1})));
    CHECK(is_part_splittable(r, IndexSet::of({0, 1}))); // restriction is trivial
    CHECK_FALSE(is_part_splittable(r, u->all()));
    CHECK_THROWS_AS((void)is_part_splittable(r, IndexSet::of({3})), DomainError);
}

TEST_CASE("splittability agrees with the sum criterion") {
    Rng rng(3001);
    int cases = 0;
    while (cases < 1000) {
        const auto u = random_universe(rng);
        const Relation t = random_relation(rng, *u);
        if (t.domain().count() < 2) continue;
        ++cases;
        IndexSet left = testing::random_nonempty_subset(rng, t.domain());
        if (left == t.domain()) left = left.without(left.min());
        const Bipartition b(left, t.domain() - left);
        CHECK(is_splittable_along(t, b) == oracle_splittable(t, b));
    }
}

TEST_CASE("a non-null split factorizes uniquely") {
    Rng rng(3002);
    const auto u = make_universe({2, 2, 2});
    const IndexSet k = IndexSet::of({0});
    const IndexSet l = IndexSet::of({1, 2});
    const Relation fullk = Relation::trivial(*u, k);
    const Relation fulll = Relation::trivial(*u, l);

    int tested = 0;
    std::uniform_int_distribution<std::uint64_t> rowmask;
    while (tested < 50) {
        // A non-null product of factors on {0} and {1,2}.
        std::vector<Value> aflat, bflat;
        const std::uint64_t am = rowmask(rng) & ((1u << fullk.size()) - 1);
        const std::uint64_t bm = rowmask(rng) & ((1u << fulll.size()) - 1);
        if (am == 0 || bm == 0) continue;
        for (std::size_t i = 0; i < fullk.size(); ++i)
            if ((am >> i) & 1u) aflat.insert(aflat.end(), fullk.row(i).begin(), fullk.row(i).end());
        for (std::size_t i = 0; i < fulll.size(); ++i)
            if ((bm >> i) & 1u) bflat.insert(bflat.end(), fulll.row(i).begin(), fulll.row(i).end());
        const Relation a0 = Relation::from_rows(*u, k, std::move(aflat));
        const Relation b0 = Relation::from_rows(*u, l, std::move(bflat));
        const Relation t = join(a0, b0);
        ++tested;

        // Exhaust all candidate factor pairs with these domains.
        int matches = 0;
        for (std::uint64_t ca = 0; ca < (std::uint64_t{1} << fullk.size()); ++ca)
            for (std::uint64_t cb = 0; cb < (std::uint64_t{1} << fulll.size()); ++cb) {
                std::vector<Value> fa, fb;
                for (std::size_t i = 0; i < fullk.size(); ++i)
                    if ((ca >> i) & 1u) fa.insert(fa.end(), fullk.row(i).begin(), fullk.row(i).end());
                for (std::size_t i = 0; i < fulll.size(); ++i)
                    if ((cb >> i) & 1u) fb.insert(fb.end(), fulll.row(i).begin(), fulll.row(i).end());
                const Relation fac_a = Relation::from_rows(*u, k, std::move(fa));
                const Relation fac_b = Relation::from_rows(*u, l, std::move(fb));
                if (join(fac_a, fac_b) == t) {
                    ++matches;
                    CHECK(fac_a == t.restricted_to(k));
                    CHECK(fac_b == t.restricted_to(l));
                }
            }
        CHECK(matches == 1);
    }
}

TEST_CASE("detachability: the empty part, constants and identities") {
    const auto u = make_universe({2, 2});
    const Relation identity = Relation::from_rows(*u, u->all(), {0, 0, 1, 1});
    const Relation constant = Relation::from_rows(*u, u->all(), {0, 0, 1, 0});
    CHECK(is_detachable(identity, IndexSet{}));
    CHECK(is_detachable(constant, IndexSet::of({0})));
    CHECK_FALSE(is_detachable(identity, IndexSet::of({0})));
    CHECK_THROWS_AS((void)is_detachable(identity, IndexSet::of({5})), DomainError);

    Rng rng(3003);
    for (int t = 0; t < 1000; ++t) {
        const auto ur = random_universe(rng);
        const Relation r = random_relation(rng, *ur);
        CHECK(is_detachable(r, IndexSet{}));
        // The full domain detaches exactly from the trivial relation (and
        // from any null relation).
        if (!r.is_null())
            CHECK(is_detachable(r, r.domain()) == r.is_trivial());
    }
}

TEST_CASE("null relations are detachable at every part") {
    const auto u = make_universe({2, 3, 2});
    const Relation zero = Relation::null(*u, u->all());
    IndexSet j{};
    for (;;) {
        CHECK(is_detachable(zero, j));
        j = next_subset(j, u->all());
        if (j.empty()) break;
    }
}

TEST_CASE("detachable parts are closed under union") {
    Rng rng(3004);
    for (int t = 0; t < 1000; ++t) {
        const auto u = random_universe(rng);
        const Relation r = random_relation(rng, *u);
        std::vector<IndexSet> detachable;
        IndexSet j{};
        for (;;) {
            if (is_detachable(r, j)) detachable.push_back(j);
            j = next_subset(j, r.domain());
            if (j.empty()) break;
        }
        for (IndexSet a : detachable)
            for (IndexSet b : detachable)
                CHECK(is_detachable(r, a | b));
    }
}

TEST_CASE("detachability is monotone under taking subsets") {
    Rng rng(3005);
    for (int t = 0; t < 1000; ++t) {
        const auto u = random_universe(rng);
        const Relation r = random_relation(rng, *u);
        IndexSet j{};
        for (;;) {
            if (is_detachable(r, j)) {
                IndexSet sub{};
                for (;;) {
                    CHECK(is_detachable(r, sub));
                    sub = next_subset(sub, j);
                    if (sub.empty()) break;
                }
            }
            j = next_subset(j, r.domain());
            if (j.empty()) break;
        }
    }
}

TEST_CASE("external part and socle") {
    const auto u = make_universe({2, 2, 2});
    const Relation r = borromean_r(*u);
    CHECK(external_part(r) == IndexSet{});
    CHECK(socle(r) == u->all());

    const Relation full = Relation::trivial(*u, u->all());
    CHECK(external_part(full) == u->all());
    CHECK(socle(full) == IndexSet{});

    const auto u2 = make_universe({2, 2});
    const Relation constant = Relation::from_rows(*u2, u2->all(), {0, 0, 1, 0});
    CHECK(external_part(constant) == IndexSet::of({0}));
    CHECK(socle(constant) == IndexSet::of({1}));
}

TEST_CASE("classification of the worked examples") {
    const auto u = make_universe({2, 2, 2});

    const Classification cr = classify(borromean_r(*u));
    CHECK(cr.solid);
    CHECK(cr.anchored);
    CHECK_FALSE(cr.moving);
    CHECK_FALSE(cr.fluid);

    const Classification ct = classify(Relation::trivial(*u, u->all()));
    CHECK(ct.anchored);
    CHECK_FALSE(ct.solid);
    CHECK_FALSE(ct.fluid);
    CHECK(ct.external == u->all());
    CHECK(ct.socle == IndexSet{});
}

TEST_CASE("every finite relation is anchored and reconstructs from its socle") {
    Rng rng(3006);
    for (int t = 0; t < 1000; ++t) {
        const auto u = random_universe(rng);
        const Relation r = random_relation(rng, *u);
        const Classification c = classify(r);
        CHECK(c.anchored);
        CHECK_FALSE(c.moving);
        CHECK_FALSE(c.fluid);
        CHECK(c.solid == c.external.empty());
        CHECK((c.external | c.socle) == r.domain());
        CHECK(r.restricted_to(c.socle).extended_to(r.domain()) == r);
    }
}
