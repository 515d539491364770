#pragma once

#include <bit>
#include <cassert>
#include <compare>
#include <cstdint>
#include <initializer_list>

namespace conrel {

/// Subset of the universe's index range, as a machine word. Universes are
/// capped at 64 indices so every subset operation is a couple of ALU ops.
class IndexSet {
public:
    constexpr IndexSet() = default;
    constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr IndexSet range(int n) {
        assert(n >= 0 && n <= 64);
        return IndexSet(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    static constexpr IndexSet single(int i) { return IndexSet(std::uint64_t{1} << i); }

    static constexpr IndexSet of(std::initializer_list<int> indices) {
        std::uint64_t b = 0;
        for (int i : indices) b |= std::uint64_t{1} << i;
        return IndexSet(b);
    }

    constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int count() const { return std::popcount(bits_); }
    constexpr std::uint64_t value() const { return bits_; }

    /// Smallest index in the set; the set must be nonempty.
    constexpr int min() const {
        assert(bits_ != 0);
        return std::countr_zero(bits_);
    }

    constexpr IndexSet with(int i) const { return IndexSet(bits_ | (std::uint64_t{1} << i)); }
    constexpr IndexSet without(int i) const { return IndexSet(bits_ & ~(std::uint64_t{1} << i)); }

    constexpr bool subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool intersects(IndexSet o) const { return (bits_ & o.bits_) != 0; }

    friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.bits_ | b.bits_); }
    friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & b.bits_); }
    friend constexpr IndexSet operator^(IndexSet a, IndexSet b) { return IndexSet(a.bits_ ^ b.bits_); }
    /// Set difference.
    friend constexpr IndexSet operator-(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & ~b.bits_); }

    constexpr IndexSet& operator|=(IndexSet o) { bits_ |= o.bits_; return *this; }
    constexpr IndexSet& operator&=(IndexSet o) { bits_ &= o.bits_; return *this; }
    constexpr IndexSet& operator-=(IndexSet o) { bits_ &= ~o.bits_; return *this; }

    friend constexpr bool operator==(IndexSet a, IndexSet b) = default;
    friend constexpr auto operator<=>(IndexSet a, IndexSet b) { return a.bits_ <=> b.bits_; }

    class iterator {
    public:
        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
        constexpr int operator*() const { return std::countr_zero(rest_); }
        constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
        friend constexpr bool operator==(iterator a, iterator b) = default;
    private:
        std::uint64_t rest_;
    };

    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

private:
    std::uint64_t bits_ = 0;
};

/// Successor of `current` in the increasing enumeration of subsets of `mask`;
/// wraps to the empty set after `mask` itself.
constexpr IndexSet next_subset(IndexSet current, IndexSet mask) {
    return IndexSet((current.value() - mask.value()) & mask.value());
}

/// Canonical order on subsets: by cardinality, ties by bitset value.
constexpr bool card_value_less(IndexSet a, IndexSet b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a.value() < b.value();
}

} // namespace conrel
