#include "conrel/family.hpp"

#include <cassert>

#include "conrel/errors.hpp"

namespace conrel {

Family::Family(const Universe& u, IndexSet domain, std::vector<Value> dense_values)
    : u_(&u), domain_(domain), values_(std::move(dense_values)) {
    assert(values_.size() == static_cast<std::size_t>(u.size()));
    assert(domain_.subset_of(u.all()));
#ifndef NDEBUG
    for (int i = 0; i < u.size(); ++i) {
        if (domain_.contains(i))
            assert(values_[i] < static_cast<Value>(u.alphabet_size(i)));
        else
            assert(values_[i] == kNoValue);
    }
#endif
}

Value Family::value(int i) const {
    if (!domain_.contains(i))
        throw DomainError("family has no value at index '" + u_->index_name(i) + "'");
    return values_[i];
}

void Family::set(int i, Value v) {
    if (v >= static_cast<Value>(u_->alphabet_size(i)))
        throw DomainError("value code out of range for index '" + u_->index_name(i) + "'");
    domain_ = domain_.with(i);
    values_[i] = v;
}

Family Family::restricted_to(IndexSet k) const {
    if (!k.subset_of(domain_))
        throw DomainError("restriction target is not a subset of the family's domain");
    Family r(*u_);
    r.domain_ = k;
    for (int i : k) r.values_[i] = values_[i];
    return r;
}

bool Family::coincides_on(const Family& y, IndexSet l) const {
    if (!l.subset_of(domain_) || !l.subset_of(y.domain_))
        throw DomainError("coincidence set is not contained in both domains");
    for (int i : l)
        if (values_[i] != y.values_[i]) return false;
    return true;
}

bool compatible(const Family& x, const Family& y) {
    return x.coincides_on(y, x.domain() & y.domain());
}

Family sum(const Family& x, const Family& y) {
    if (!compatible(x, y))
        throw IncompatibilityError("families " + to_string(x) + " and " + to_string(y) +
                                   " disagree on their shared indices");
    Family s = x;
    for (int i : y.domain() - x.domain()) s.set(i, y.value(i));
    return s;
}

Family sum_many(const Universe& u, std::span<const Family> xs) {
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (!compatible(xs[i], xs[j]))
                throw IncompatibilityError(
                    "families at positions " + std::to_string(i) + " and " + std::to_string(j) +
                    " are incompatible: " + to_string(xs[i]) + " vs " + to_string(xs[j]));
    Family acc = Family::empty(u);
    for (const Family& x : xs) acc = sum(acc, x);
    return acc;
}

std::string to_string(const Family& x) {
    std::string out = "{";
    bool first = true;
    for (int i : x.domain()) {
        if (!first) out += ",";
        first = false;
        out += x.universe().index_name(i);
        out += "=";
        out += x.universe().value_name(i, x.value(i));
    }
    out += "}";
    return out;
}

} // namespace conrel
