#pragma once

#include <span>
#include <string>
#include <vector>

#include "conrel/universe.hpp"

namespace conrel {

/// A partial tuple: one value from E_j for each index j of its domain.
/// Values sit in a dense vector over the full index range with kNoValue in
/// the slots outside the domain, so restriction and sum never allocate per
/// element. Immutable in practice: every operation returns a fresh value.
class Family {
public:
    explicit Family(const Universe& u)
        : u_(&u), values_(static_cast<std::size_t>(u.size()), kNoValue) {}

    Family(const Universe& u, IndexSet domain, std::vector<Value> dense_values);

    static Family empty(const Universe& u) { return Family(u); }

    const Universe& universe() const { return *u_; }
    IndexSet domain() const { return domain_; }

    Value value(int i) const;
    void set(int i, Value v);

    Family restricted_to(IndexSet k) const;
    bool coincides_on(const Family& y, IndexSet l) const;

    friend bool operator==(const Family& a, const Family& b) {
        return a.domain_ == b.domain_ && a.values_ == b.values_;
    }

private:
    const Universe* u_;
    IndexSet domain_;
    std::vector<Value> values_;
};

bool compatible(const Family& x, const Family& y);

/// x + y on the union of domains; throws IncompatibilityError when the
/// operands disagree on the shared indices.
Family sum(const Family& x, const Family& y);

inline Family operator+(const Family& x, const Family& y) { return sum(x, y); }

/// Fold of sum over the span; the empty span yields the empty family.
/// Any incompatible pair is reported by position before folding starts.
Family sum_many(const Universe& u, std::span<const Family> xs);

std::string to_string(const Family& x);

} // namespace conrel
