#include "conrel/universe.hpp"

#include "conrel/errors.hpp"

namespace conrel {

Universe::Universe(std::vector<std::string> index_names,
                   std::vector<std::vector<std::string>> alphabets,
                   std::uint64_t max_tuples)
    : index_names_(std::move(index_names)),
      alphabets_(std::move(alphabets)),
      max_tuples_(max_tuples) {
    if (index_names_.size() > 64)
        throw InputError("universe has " + std::to_string(index_names_.size()) +
                         " indices; at most 64 are supported");
    if (alphabets_.size() != index_names_.size())
        throw InputError("universe declares " + std::to_string(index_names_.size()) +
                         " indices but " + std::to_string(alphabets_.size()) + " alphabets");

    for (int i = 0; i < size(); ++i) {
        if (!index_ids_.emplace(index_names_[i], i).second)
            throw InputError("duplicate index name '" + index_names_[i] + "'");
        if (alphabets_[i].empty())
            throw InputError("alphabet of index '" + index_names_[i] + "' is empty");
        auto& ids = value_ids_.emplace_back();
        for (Value v = 0; v < alphabets_[i].size(); ++v)
            if (!ids.emplace(alphabets_[i][v], v).second)
                throw InputError("duplicate value name '" + alphabets_[i][v] +
                                 "' in alphabet of index '" + index_names_[i] + "'");
    }
}

int Universe::index_of(std::string_view name) const {
    auto it = index_ids_.find(std::string(name));
    return it == index_ids_.end() ? -1 : it->second;
}

int Universe::value_of(int i, std::string_view name) const {
    auto it = value_ids_[i].find(std::string(name));
    return it == value_ids_[i].end() ? -1 : static_cast<int>(it->second);
}

std::uint64_t Universe::product_size(IndexSet j) const {
    std::uint64_t prod = 1;
    for (int i : j) {
        const auto a = static_cast<std::uint64_t>(alphabet_size(i));
        if (prod > kSizeSaturated / a) return kSizeSaturated;
        prod *= a;
    }
    return prod;
}

} // namespace conrel
