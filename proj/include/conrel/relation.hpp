#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conrel/family.hpp"
#include "conrel/universe.hpp"

namespace conrel {

/// A multiple relation: a domain J plus an explicit graph of total J-tuples.
/// Rows are fixed-width value vectors (one column per domain index, columns
/// in increasing index order), kept lexicographically sorted and duplicate
/// free, so structural equality is semantic equality.
class Relation {
public:
    static Relation null(const Universe& u, IndexSet domain);
    /// Full product graph; throws CapacityError past the universe's cap.
    static Relation trivial(const Universe& u, IndexSet domain);
    /// 1 on the empty domain: the join unit, graph {bullet}.
    static Relation unit(const Universe& u) { return trivial(u, IndexSet{}); }

    static Relation from_rows(const Universe& u, IndexSet domain, std::vector<Value> flat_rows);
    static Relation from_families(const Universe& u, IndexSet domain, std::span<const Family> graph);

    const Universe& universe() const { return *u_; }
    IndexSet domain() const { return domain_; }
    int width() const { return width_; }
    std::size_t size() const { return nrows_; }
    bool is_null() const { return nrows_ == 0; }
    bool is_trivial() const;

    std::span<const Value> row(std::size_t k) const {
        return {rows_.data() + k * static_cast<std::size_t>(width_),
                static_cast<std::size_t>(width_)};
    }
    Family family_at(std::size_t k) const;

    /// Column position of index i within this relation's rows.
    int column_of(int i) const;

    bool contains_row(std::span<const Value> row) const;
    bool contains(const Family& x) const;

    Relation restricted_to(IndexSet k) const;

    /// Prolongement: join with the trivial relation on j minus the domain.
    Relation extended_to(IndexSet j) const;

    /// Graph inclusion; both relations must share the domain.
    bool subset_of(const Relation& other) const;

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.domain_ == b.domain_ && a.rows_ == b.rows_ && a.nrows_ == b.nrows_;
    }

private:
    Relation(const Universe& u, IndexSet domain, std::vector<Value> rows, bool presorted);

    const Universe* u_;
    IndexSet domain_;
    int width_;
    std::size_t nrows_;
    std::vector<Value> rows_;

    friend std::optional<Relation> join_bounded(const Relation&, const Relation&, std::uint64_t);
};

/// Natural join: domain union, graph of all compatible sums. Partitions both
/// graphs by their projection onto the shared indices through a hash index;
/// degenerates to the Cartesian product when the overlap is empty.
Relation join(const Relation& r, const Relation& s);

/// join that gives up instead of throwing once the output would exceed
/// `max_rows`; nullopt means "more than max_rows tuples".
std::optional<Relation> join_bounded(const Relation& r, const Relation& s, std::uint64_t max_rows);

/// True iff the join is null; probes the hash partition without
/// materializing anything.
bool incompatible(const Relation& r, const Relation& s);

/// g after f for binary relations on {i,j} and {j,k} sharing exactly j.
Relation compose(const Relation& f, const Relation& g);

std::string set_to_string(const Universe& u, IndexSet s);
std::string to_string(const Relation& r);

} // namespace conrel
