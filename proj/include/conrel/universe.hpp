#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "conrel/index_set.hpp"

namespace conrel {

/// Value code within one index's alphabet.
using Value = std::uint32_t;

/// Slot marker for positions outside a family's domain.
inline constexpr Value kNoValue = ~Value{0};

/// The indexed family of finite alphabets every relation lives over. External
/// naming is string-based; everything downstream computes on integer codes.
/// Immutable after construction and pinned in memory (relations and families
/// keep a pointer to their universe).
class Universe {
public:
    static constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 24;

    Universe(std::vector<std::string> index_names,
             std::vector<std::vector<std::string>> alphabets,
             std::uint64_t max_tuples = kDefaultCap);

    Universe(const Universe&) = delete;
    Universe& operator=(const Universe&) = delete;

    int size() const { return static_cast<int>(index_names_.size()); }
    IndexSet all() const { return IndexSet::range(size()); }
    std::uint64_t max_tuples() const { return max_tuples_; }

    const std::string& index_name(int i) const { return index_names_[i]; }
    /// -1 when the name is unknown.
    int index_of(std::string_view name) const;

    int alphabet_size(int i) const { return static_cast<int>(alphabets_[i].size()); }
    const std::string& value_name(int i, Value v) const { return alphabets_[i][v]; }
    /// -1 when the value name is unknown for that index.
    int value_of(int i, std::string_view name) const;

    /// prod_{j in J} |E_j|, saturating at 2^63 (more than any cap allows).
    std::uint64_t product_size(IndexSet j) const;

private:
    std::vector<std::string> index_names_;
    std::vector<std::vector<std::string>> alphabets_;
    std::unordered_map<std::string, int> index_ids_;
    std::vector<std::unordered_map<std::string, Value>> value_ids_;
    std::uint64_t max_tuples_;
};

/// Saturation point of Universe::product_size.
inline constexpr std::uint64_t kSizeSaturated = std::uint64_t{1} << 63;

} // namespace conrel
