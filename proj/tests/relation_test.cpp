#include <vector>

#include "doctest.h"

#include "conrel/errors.hpp"
#include "conrel/relation.hpp"
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

TEST_CASE("the two width-zero relations are distinct") {
    const auto u = make_universe({2, 2});
    const Relation zero = Relation::null(*u, IndexSet{});
    const Relation one = Relation::unit(*u);
    CHECK(zero.size() == 0);
    CHECK(one.size() == 1);
    CHECK(zero.is_null());
    CHECK_FALSE(one.is_null());
    CHECK(one.is_trivial());
    CHECK_FALSE(zero == one);
    CHECK(one.family_at(0) == Family::empty(*u));
}

TEST_CASE("trivial relations materialize the full product") {
    const auto u = make_universe({2, 2});
    const Relation full = Relation::trivial(*u, IndexSet::of({0, 1}));
    CHECK(full.size() == 4);
    CHECK(full.is_trivial());

    Rng rng(2001);
    for (int t = 0; t < 300; ++t) {
        const auto ur = random_universe(rng);
        const IndexSet j = random_subset(rng, ur->all());
        const Relation r = random_relation(rng, *ur, j);
        CHECK(Relation::null(*ur, j).subset_of(r));
        CHECK(r.subset_of(Relation::trivial(*ur, j)));
    }
}

TEST_CASE("trivial relations respect the materialization cap") {
    const auto u = make_universe({3, 3, 3, 3}, /*max_tuples=*/8);
    CHECK_THROWS_AS((void)Relation::trivial(*u, u->all()), CapacityError);
    CHECK_NOTHROW((void)Relation::trivial(*u, IndexSet::of({0})));
}

TEST_CASE("relations are canonical: order and duplicates do not matter") {
    const auto u = make_universe({2, 2});
    const Relation a = Relation::from_rows(*u, IndexSet::of({0, 1}), {1, 0, 0, 1, 1, 0});
    const Relation b = Relation::from_rows(*u, IndexSet::of({0, 1}), {0, 1, 1, 0});
    CHECK(a == b);
    CHECK(a.size() == 2);
    CHECK(a.row(0)[0] == 0); // lexicographically first row
    CHECK_THROWS_AS((void)Relation::from_rows(*u, IndexSet::of({0, 1}), {0, 1, 1}), DomainError);
    CHECK_THROWS_AS((void)Relation::from_rows(*u, IndexSet::of({0}), {2}), DomainError);
}

TEST_CASE("join has unit 1_empty and absorbing nulls") {
    Rng rng(2002);
    for (int t = 0; t < 300; ++t) {
        const auto u = random_universe(rng);
        const Relation r = random_relation(rng, *u);
        CHECK(join(r, Relation::unit(*u)) == r);
        CHECK(join(r, Relation::null(*u, u->all())) == Relation::null(*u, u->all()));
        CHECK(join(r, Relation::null(*u, IndexSet{})) == Relation::null(*u, r.domain()));
    }
}

TEST_CASE("joining the two borromean relations keeps the non-constant triples") {
    const auto u = make_universe({2, 2, 2});
    const Relation r = borromean_r(*u);
    const Relation s = borromean_s(*u);
    CHECK(r.size() == 7);
    CHECK(s.size() == 7);

    const Relation t = join(r, s);
    const Relation expected = relation_where(*u, IndexSet::range(3), [](auto row) {
        bool any0 = false, any1 = false;
        for (Value v : row) (v == 0 ? any0 : any1) = true;
        return any0 && any1;
    });
    CHECK(t == expected);
    CHECK(t.size() == 6);
}

TEST_CASE("restriction projects the graph") {
    const auto u = make_universe({2, 2, 2});
    const Relation r = borromean_r(*u);

    CHECK(r.restricted_to(IndexSet::of({0, 1})) == Relation::trivial(*u, IndexSet::of({0, 1})));
    CHECK(r.restricted_to(IndexSet{}) == Relation::unit(*u)); // nonempty graph -> 1_empty
    CHECK(Relation::null(*u, IndexSet::of({0})).restricted_to(IndexSet{}) ==
          Relation::null(*u, IndexSet{}));
    CHECK_THROWS_AS((void)r.restricted_to(IndexSet::of({4})), DomainError);
}

TEST_CASE("prolongement pads the graph with every value of the new indices") {
    const auto u = make_universe({2, 2});
    CHECK(Relation::unit(*u).extended_to(u->all()) == Relation::trivial(*u, u->all()));

    const Relation r = Relation::from_rows(*u, IndexSet::of({0}), {0});
    const Relation e = r.extended_to(IndexSet::of({0, 1}));
    CHECK(e == Relation::from_rows(*u, IndexSet::of({0, 1}), {0, 0, 0, 1}));

    CHECK_THROWS_AS((void)r.extended_to(IndexSet::of({1})), DomainError); // not a superset

    // The extension graph is exactly the preimage of the original graph
    // under projection: check size and projection on random instances.
    Rng rng(2003);
    for (int t = 0; t < 300; ++t) {
        const auto ur = random_universe(rng);
        const Relation x = random_relation(rng, *ur);
        const IndexSet j = x.domain() | random_subset(rng, ur->all());
        const Relation ext = x.extended_to(j);
        std::uint64_t pad = 1;
        for (int i : j - x.domain()) pad *= static_cast<std::uint64_t>(ur->alphabet_size(i));
        CHECK(ext.size() == x.size() * pad);
        CHECK(ext.domain() == j);
        if (!x.is_null()) CHECK(ext.restricted_to(x.domain()) == x);
    }
}

TEST_CASE("prolongement respects the materialization cap") {
    const auto u = make_universe({3, 3, 3}, /*max_tuples=*/5);
    const Relation r = Relation::from_rows(*u, IndexSet::of({0}), {0, 1});
    CHECK_THROWS_AS((void)r.extended_to(u->all()), CapacityError);
}

TEST_CASE("incompatibility means a null join") {
    const auto u = make_universe({2, 2, 2});
    const Relation r = borromean_r(*u);
    const Relation s = borromean_s(*u);
    CHECK_FALSE(incompatible(r, s));
    CHECK(incompatible(Relation::null(*u, IndexSet::of({0})), r));

    // Two relations pinning a shared index to different values.
    const auto u4 = make_universe({2, 2, 2, 2});
    const Relation a = relation_where(*u4, IndexSet::of({0, 1, 2}),
                                      [](auto row) { return row[1] == 0; });
    const Relation b = relation_where(*u4, IndexSet::of({0, 1, 3}),
                                      [](auto row) { return row[1] == 1; });
    CHECK(incompatible(a, b));
    CHECK(join(a, b).is_null());

    Rng rng(2004);
    for (int t = 0; t < 500; ++t) {
        const auto ur = random_universe(rng);
        const Relation x = random_relation(rng, *ur);
        const Relation y = random_relation(rng, *ur);
        CHECK(incompatible(x, y) == join(x, y).is_null());
    }
}

TEST_CASE("binary composition matches function composition") {
    const auto u = make_universe({2, 2, 2});
    const Relation identity = Relation::from_rows(*u, IndexSet::of({0, 1}), {0, 0, 1, 1});
    const Relation negation = Relation::from_rows(*u, IndexSet::of({1, 2}), {0, 1, 1, 0});
    CHECK(compose(identity, negation) == Relation::from_rows(*u, IndexSet::of({0, 2}), {0, 1, 1, 0}));

    const Relation constant0 = Relation::from_rows(*u, IndexSet::of({0, 1}), {0, 0, 1, 0});
    // g(0) = 1, so g after constant-0 is constant-1.
    CHECK(compose(constant0, negation) ==
          Relation::from_rows(*u, IndexSet::of({0, 2}), {0, 1, 1, 1}));

    CHECK_THROWS_AS((void)compose(identity, identity), DomainError); // no middle index

    Rng rng(2005);
    const auto u3 = make_universe({3, 3, 3});
    std::uniform_int_distribution<int> vd(0, 2);
    for (int t = 0; t < 300; ++t) {
        Value f[3], g[3];
        std::vector<Value> frows, grows, grows_after_f;
        for (Value v = 0; v < 3; ++v) {
            f[v] = static_cast<Value>(vd(rng));
            g[v] = static_cast<Value>(vd(rng));
        }
        for (Value v = 0; v < 3; ++v) {
            frows.insert(frows.end(), {v, f[v]});
            grows.insert(grows.end(), {v, g[v]});
            grows_after_f.insert(grows_after_f.end(), {v, g[f[v]]});
        }
        const Relation fr = Relation::from_rows(*u3, IndexSet::of({0, 1}), std::move(frows));
        const Relation gr = Relation::from_rows(*u3, IndexSet::of({1, 2}), std::move(grows));
        const Relation expected =
            Relation::from_rows(*u3, IndexSet::of({0, 2}), std::move(grows_after_f));
        CHECK(compose(fr, gr) == expected);
    }
}

TEST_CASE("join is associative, commutative, idempotent") {
    Rng rng(2006);
    for (int t = 0; t < 1000; ++t) {
        const auto u = random_universe(rng);
        const Relation r = random_relation(rng, *u);
        const Relation s = random_relation(rng, *u);
        const Relation q = random_relation(rng, *u);
        CHECK(join(join(r, s), q) == join(r, join(s, q)));
        CHECK(join(r, s) == join(s, r));
        CHECK(join(r, r) == r);
    }
}

TEST_CASE("a join restricted to a factor domain lands inside the factor") {
    Rng rng(2007);
    for (int t = 0; t < 1000; ++t) {
        const auto u = random_universe(rng);
        const Relation r = random_relation(rng, *u);
        const Relation s = random_relation(rng, *u);
        CHECK(join(r, s).restricted_to(r.domain()).subset_of(r));
    }
}

TEST_CASE("restriction/product interchange: inclusion always, equality past the overlap") {
    Rng rng(2008);
    for (int t = 0; t < 1000; ++t) {
        const auto u = random_universe(rng);
        const Relation r = random_relation(rng, *u);
        const Relation s = random_relation(rng, *u);
        const IndexSet l = random_subset(rng, r.domain() | s.domain());
        const Relation lhs = join(r, s).restricted_to(l);
        const Relation rhs =
            join(r.restricted_to(l & r.domain()), s.restricted_to(l & s.domain()));
        CHECK(lhs.subset_of(rhs));
        if ((r.domain() & s.domain()).subset_of(l)) CHECK(lhs == rhs);
    }
}

TEST_CASE("the interchange inclusion can be strict") {
    // Two relations pinning the shared index 1 to opposite values: the join
    // is null, but restricting each factor away from index 1 first loses the
    // contradiction entirely.
    const auto u = make_universe({2, 2, 2, 2});
    const Relation r = relation_where(*u, IndexSet::of({0, 1, 2}),
                                      [](auto row) { return row[1] == 0; });
    const Relation s = relation_where(*u, IndexSet::of({0, 1, 3}),
                                      [](auto row) { return row[1] == 1; });
    const IndexSet l = IndexSet::of({0, 2, 3});
    CHECK(join(r, s).restricted_to(l) == Relation::null(*u, l));
    CHECK(join(r.restricted_to(l & r.domain()), s.restricted_to(l & s.domain())) ==
          Relation::trivial(*u, l));
}

TEST_CASE("a cover of the domain reassembles a superset of the relation") {
    Rng rng(2009);
    for (int t = 0; t < 1000; ++t) {
        const auto u = random_universe(rng);
        const Relation r = random_relation(rng, *u);
        const IndexSet k = random_subset(rng, r.domain());
        const IndexSet l = (r.domain() - k) | random_subset(rng, r.domain());
        CHECK(r.subset_of(join(r.restricted_to(k), r.restricted_to(l))));
    }
}

TEST_CASE("non-null factors with disjoint domains are recovered from their join") {
    Rng rng(2010);
    int seen = 0;
    while (seen < 500) {
        const auto u = random_universe(rng);
        const IndexSet jr = random_subset(rng, u->all());
        const Relation r = random_relation(rng, *u, jr);
        const Relation s = random_relation(rng, *u, random_subset(rng, u->all() - jr));
        if (r.is_null() || s.is_null()) continue;
        ++seen;
        const Relation t = join(r, s);
        CHECK(t.restricted_to(r.domain()) == r);
        CHECK(t.restricted_to(s.domain()) == s);
    }
}

TEST_CASE("join respects the materialization cap") {
    const auto u = make_universe({3, 3}, /*max_tuples=*/4);
    const Relation r = Relation::trivial(*u, IndexSet::of({0}));
    const Relation s = Relation::trivial(*u, IndexSet::of({1}));
    CHECK_THROWS_AS((void)join(r, s), CapacityError);
    CHECK_FALSE(join_bounded(r, s, 4).has_value());
    CHECK(join_bounded(r, s, 9).has_value());
}
