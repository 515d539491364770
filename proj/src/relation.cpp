#include "conrel/relation.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "conrel/errors.hpp"

namespace conrel {

namespace {

// Lexicographic order on fixed-width rows addressed by row number.
struct RowLess {
    const Value* data;
    std::size_t w;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
        const Value* pa = data + a * w;
        const Value* pb = data + b * w;
        return std::lexicographical_compare(pa, pa + w, pb, pb + w);
    }
};

bool row_equal(const Value* a, const Value* b, std::size_t w) {
    return std::memcmp(a, b, w * sizeof(Value)) == 0;
}

// Sort rows lexicographically and drop duplicates.
void canonicalize(std::vector<Value>& flat, std::size_t& nrows, int width) {
    if (width == 0 || nrows <= 1) return;
    const std::size_t w = static_cast<std::size_t>(width);
    std::vector<std::uint32_t> perm(nrows);
    std::iota(perm.begin(), perm.end(), 0u);
    std::sort(perm.begin(), perm.end(), RowLess{flat.data(), w});
    std::vector<Value> out;
    out.reserve(flat.size());
    for (std::size_t k = 0; k < nrows; ++k) {
        const Value* p = flat.data() + perm[k] * w;
        if (!out.empty() && row_equal(out.data() + out.size() - w, p, w)) continue;
        out.insert(out.end(), p, p + w);
    }
    flat = std::move(out);
    nrows = flat.size() / w;
}

std::uint64_t hash_row(const Value* p, std::size_t n) {
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t k = 0; k < n; ++k) {
        h ^= p[k];
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

Relation::Relation(const Universe& u, IndexSet domain, std::vector<Value> rows, bool presorted)
    : u_(&u), domain_(domain), width_(domain.count()), nrows_(0), rows_(std::move(rows)) {
    if (!domain.subset_of(u.all()))
        throw DomainError("relation domain " + set_to_string(u, domain) + " leaves the universe");
    if (width_ > 0) {
        if (rows_.size() % static_cast<std::size_t>(width_) != 0)
            throw DomainError("row buffer length is not a multiple of the relation width");
        nrows_ = rows_.size() / static_cast<std::size_t>(width_);
        for (Value v : rows_)
            if (v == kNoValue)
                throw DomainError("relation rows must hold total tuples");
        if (!presorted) canonicalize(rows_, nrows_, width_);
    }
}

Relation Relation::null(const Universe& u, IndexSet domain) {
    return Relation(u, domain, {}, true);
}

Relation Relation::trivial(const Universe& u, IndexSet domain) {
    if (!domain.subset_of(u.all()))
        throw DomainError("trivial: domain " + set_to_string(u, domain) + " leaves the universe");
    const std::uint64_t prod = u.product_size(domain);
    if (prod > u.max_tuples())
        throw CapacityError("trivial relation on " + set_to_string(u, domain) + " has " +
                            std::to_string(prod) + " tuples, above the cap of " +
                            std::to_string(u.max_tuples()));
    const int w = domain.count();
    if (w == 0) {
        Relation r(u, domain, {}, true);
        r.nrows_ = 1; // the graph {bullet}
        return r;
    }
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(w));
    for (int i : domain) idx.push_back(i);
    std::vector<Value> cur(static_cast<std::size_t>(w), 0);
    std::vector<Value> flat;
    flat.reserve(static_cast<std::size_t>(prod) * static_cast<std::size_t>(w));
    for (;;) {
        flat.insert(flat.end(), cur.begin(), cur.end());
        int c = w - 1;
        for (; c >= 0; --c) {
            if (++cur[static_cast<std::size_t>(c)] <
                static_cast<Value>(u.alphabet_size(idx[static_cast<std::size_t>(c)])))
                break;
            cur[static_cast<std::size_t>(c)] = 0;
        }
        if (c < 0) break;
    }
    return Relation(u, domain, std::move(flat), true); // odometer emits in lex order
}

Relation Relation::from_rows(const Universe& u, IndexSet domain, std::vector<Value> flat_rows) {
    if (domain.empty() && !flat_rows.empty())
        throw DomainError("an empty-domain relation has no columns; use unit() for the graph {bullet}");
    const int w = domain.count();
    if (w > 0)
        for (std::size_t k = 0; k + w <= flat_rows.size(); k += static_cast<std::size_t>(w)) {
            int c = 0;
            for (int i : domain) {
                Value v = flat_rows[k + static_cast<std::size_t>(c)];
                if (v >= static_cast<Value>(u.alphabet_size(i)))
                    throw DomainError("tuple value " + std::to_string(v) + " is outside the alphabet of index " +
                                      u.index_name(i));
                ++c;
            }
        }
    return Relation(u, domain, std::move(flat_rows), false);
}

Relation Relation::from_families(const Universe& u, IndexSet domain, std::span<const Family> graph) {
    const int w = domain.count();
    std::vector<Value> flat;
    flat.reserve(graph.size() * static_cast<std::size_t>(w));
    for (const Family& x : graph) {
        if (x.domain() != domain)
            throw DomainError("family domain " + set_to_string(u, x.domain()) +
                              " differs from the relation domain " + set_to_string(u, domain));
        for (int i : domain) flat.push_back(x.value(i));
    }
    if (w == 0 && !graph.empty()) return unit(u);
    return Relation(u, domain, std::move(flat), false);
}

bool Relation::is_trivial() const {
    return nrows_ == u_->product_size(domain_);
}

Family Relation::family_at(std::size_t k) const {
    if (k >= nrows_) throw DomainError("row index out of range");
    Family x(*u_);
    int c = 0;
    for (int i : domain_) x.set(i, row(k)[static_cast<std::size_t>(c++)]);
    return x;
}

int Relation::column_of(int i) const {
    if (!domain_.contains(i))
        throw DomainError("index " + u_->index_name(i) + " is outside the relation domain");
    return std::popcount(domain_.value() & ((std::uint64_t{1} << i) - 1));
}

bool Relation::contains_row(std::span<const Value> q) const {
    if (static_cast<int>(q.size()) != width_)
        throw DomainError("queried row width differs from the relation width");
    if (width_ == 0) return nrows_ > 0;
    const std::size_t w = static_cast<std::size_t>(width_);
    std::size_t lo = 0, hi = nrows_;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const Value* p = rows_.data() + mid * w;
        if (std::lexicographical_compare(p, p + w, q.data(), q.data() + w))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < nrows_ && row_equal(rows_.data() + lo * w, q.data(), w);
}

bool Relation::contains(const Family& x) const {
    if (x.domain() != domain_)
        throw DomainError("family domain differs from the relation domain");
    std::vector<Value> q;
    q.reserve(static_cast<std::size_t>(width_));
    for (int i : domain_) q.push_back(x.value(i));
    return contains_row(q);
}

Relation Relation::restricted_to(IndexSet k) const {
    if (!k.subset_of(domain_))
        throw DomainError("restriction set " + set_to_string(*u_, k) +
                          " is not contained in the domain " + set_to_string(*u_, domain_));
    if (k == domain_) return *this;
    if (k.empty()) {
        Relation r = null(*u_, IndexSet{});
        r.nrows_ = nrows_ > 0 ? 1 : 0;
        return r;
    }
    std::vector<int> cols;
    for (int i : k) cols.push_back(column_of(i));
    const std::size_t wk = cols.size();
    std::vector<Value> flat;
    flat.reserve(nrows_ * wk);
    for (std::size_t r = 0; r < nrows_; ++r) {
        const auto src = row(r);
        for (int c : cols) flat.push_back(src[static_cast<std::size_t>(c)]);
    }
    return Relation(*u_, k, std::move(flat), false);
}

Relation Relation::extended_to(IndexSet j) const {
    if (!domain_.subset_of(j))
        throw DomainError("extension target " + set_to_string(*u_, j) +
                          " does not contain the domain " + set_to_string(*u_, domain_));
    if (!j.subset_of(u_->all()))
        throw DomainError("extension target " + set_to_string(*u_, j) + " leaves the universe");
    const IndexSet added = j - domain_;
    if (added.empty()) return *this;
    if (nrows_ == 0) return null(*u_, j);
    const std::uint64_t prod = u_->product_size(added);
    if (prod == 0 || nrows_ > u_->max_tuples() / prod)
        throw CapacityError("extension to " + set_to_string(*u_, j) + " needs " +
                            std::to_string(nrows_) + " x " + std::to_string(prod) +
                            " tuples, above the cap of " + std::to_string(u_->max_tuples()));
    const int wj = j.count();
    // Merge plan: each output column reads either a base-row column or an
    // odometer slot running over the added indices.
    std::vector<int> from_base(static_cast<std::size_t>(wj), -1);
    std::vector<int> from_free(static_cast<std::size_t>(wj), -1);
    std::vector<int> free_idx;
    {
        int c = 0, f = 0;
        for (int i : j) {
            if (domain_.contains(i)) {
                from_base[static_cast<std::size_t>(c)] = column_of(i);
            } else {
                from_free[static_cast<std::size_t>(c)] = f++;
                free_idx.push_back(i);
            }
            ++c;
        }
    }
    std::vector<Value> flat;
    flat.reserve(nrows_ * static_cast<std::size_t>(prod) * static_cast<std::size_t>(wj));
    std::vector<Value> freev(free_idx.size(), 0);
    for (std::size_t r = 0; r < nrows_; ++r) {
        const auto base = row(r);
        std::fill(freev.begin(), freev.end(), 0);
        for (;;) {
            for (int c = 0; c < wj; ++c) {
                const std::size_t uc = static_cast<std::size_t>(c);
                flat.push_back(from_base[uc] >= 0 ? base[static_cast<std::size_t>(from_base[uc])]
                                                  : freev[static_cast<std::size_t>(from_free[uc])]);
            }
            int f = static_cast<int>(freev.size()) - 1;
            for (; f >= 0; --f) {
                if (++freev[static_cast<std::size_t>(f)] <
                    static_cast<Value>(u_->alphabet_size(free_idx[static_cast<std::size_t>(f)])))
                    break;
                freev[static_cast<std::size_t>(f)] = 0;
            }
            if (f < 0) break;
        }
    }
    return Relation(*u_, j, std::move(flat), false);
}

bool Relation::subset_of(const Relation& other) const {
    if (domain_ != other.domain_)
        throw DomainError("graph inclusion requires a common domain");
    if (nrows_ > other.nrows_) return false;
    if (width_ == 0) return nrows_ <= other.nrows_;
    for (std::size_t r = 0; r < nrows_; ++r)
        if (!other.contains_row(row(r))) return false;
    return true;
}

std::optional<Relation> join_bounded(const Relation& r, const Relation& s, std::uint64_t max_rows) {
    if (&r.universe() != &s.universe())
        throw DomainError("join requires relations over the same universe");
    const Universe& u = r.universe();
    const IndexSet dt = r.domain() | s.domain();
    if (r.is_null() || s.is_null()) return Relation::null(u, dt);

    const int wt = dt.count();
    if (wt == 0) {
        // Both are the unit: 1 join 1 = 1.
        return Relation::unit(u);
    }

    // Output columns read the left operand where possible; on the shared
    // indices both operands agree by construction of the matches.
    std::vector<std::pair<bool, int>> plan; // (from r?, source column)
    plan.reserve(static_cast<std::size_t>(wt));
    for (int i : dt) {
        if (r.domain().contains(i))
            plan.emplace_back(true, r.column_of(i));
        else
            plan.emplace_back(false, s.column_of(i));
    }

    const IndexSet shared = r.domain() & s.domain();
    std::vector<Value> flat;
    std::uint64_t emitted = 0;
    auto emit = [&](std::span<const Value> rrow, std::span<const Value> srow) {
        for (const auto& [from_r, col] : plan)
            flat.push_back(from_r ? rrow[static_cast<std::size_t>(col)]
                                  : srow[static_cast<std::size_t>(col)]);
        ++emitted;
    };

    if (shared.empty()) {
        if (s.size() != 0 && r.size() > max_rows / s.size()) return std::nullopt;
        flat.reserve(r.size() * s.size() * static_cast<std::size_t>(wt));
        for (std::size_t a = 0; a < r.size(); ++a)
            for (std::size_t b = 0; b < s.size(); ++b) emit(r.row(a), s.row(b));
    } else {
        const bool r_small = r.size() <= s.size();
        const Relation& build = r_small ? r : s;
        const Relation& probe = r_small ? s : r;
        std::vector<int> bcols, pcols;
        for (int i : shared) {
            bcols.push_back(build.column_of(i));
            pcols.push_back(probe.column_of(i));
        }
        std::vector<Value> key(bcols.size());
        auto load_key = [&](std::span<const Value> row, const std::vector<int>& cols) {
            for (std::size_t k = 0; k < cols.size(); ++k)
                key[k] = row[static_cast<std::size_t>(cols[k])];
        };
        std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
        buckets.reserve(build.size());
        for (std::size_t a = 0; a < build.size(); ++a) {
            load_key(build.row(a), bcols);
            buckets[hash_row(key.data(), key.size())].push_back(static_cast<std::uint32_t>(a));
        }
        auto keys_match = [&](std::span<const Value> brow) {
            for (std::size_t k = 0; k < bcols.size(); ++k)
                if (brow[static_cast<std::size_t>(bcols[k])] != key[k]) return false;
            return true;
        };
        for (std::size_t b = 0; b < probe.size(); ++b) {
            load_key(probe.row(b), pcols);
            auto it = buckets.find(hash_row(key.data(), key.size()));
            if (it == buckets.end()) continue;
            for (std::uint32_t a : it->second) {
                if (!keys_match(build.row(a))) continue; // hash collision
                if (emitted >= max_rows) return std::nullopt;
                if (r_small)
                    emit(build.row(a), probe.row(b));
                else
                    emit(probe.row(b), build.row(a));
            }
        }
    }
    if (emitted > max_rows) return std::nullopt;
    return Relation::from_rows(u, dt, std::move(flat));
}

Relation join(const Relation& r, const Relation& s) {
    auto res = join_bounded(r, s, r.universe().max_tuples());
    if (!res)
        throw CapacityError("join on " + set_to_string(r.universe(), r.domain() | s.domain()) +
                            " exceeds the cap of " + std::to_string(r.universe().max_tuples()) +
                            " tuples");
    return *res;
}

bool incompatible(const Relation& r, const Relation& s) {
    if (&r.universe() != &s.universe())
        throw DomainError("compatibility requires relations over the same universe");
    if (r.is_null() || s.is_null()) return true;
    const IndexSet shared = r.domain() & s.domain();
    if (shared.empty()) return false; // Cartesian product of nonempty graphs
    const bool r_small = r.size() <= s.size();
    const Relation& build = r_small ? r : s;
    const Relation& probe = r_small ? s : r;
    std::vector<int> bcols, pcols;
    for (int i : shared) {
        bcols.push_back(build.column_of(i));
        pcols.push_back(probe.column_of(i));
    }
    std::vector<Value> key(bcols.size());
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
    buckets.reserve(build.size());
    for (std::size_t a = 0; a < build.size(); ++a) {
        for (std::size_t k = 0; k < bcols.size(); ++k)
            key[k] = build.row(a)[static_cast<std::size_t>(bcols[k])];
        buckets[hash_row(key.data(), key.size())].push_back(static_cast<std::uint32_t>(a));
    }
    for (std::size_t b = 0; b < probe.size(); ++b) {
        for (std::size_t k = 0; k < pcols.size(); ++k)
            key[k] = probe.row(b)[static_cast<std::size_t>(pcols[k])];
        auto it = buckets.find(hash_row(key.data(), key.size()));
        if (it == buckets.end()) continue;
        for (std::uint32_t a : it->second) {
            bool match = true;
            for (std::size_t k = 0; k < bcols.size() && match; ++k)
                match = build.row(a)[static_cast<std::size_t>(bcols[k])] == key[k];
            if (match) return false;
        }
    }
    return true;
}

Relation compose(const Relation& f, const Relation& g) {
    if (f.domain().count() != 2 || g.domain().count() != 2)
        throw DomainError("composition needs two binary relations");
    const IndexSet shared = f.domain() & g.domain();
    if (shared.count() != 1 || f.domain() == g.domain())
        throw DomainError("composition needs domains sharing exactly one index");
    return join(f, g).restricted_to(f.domain() ^ g.domain());
}

std::string set_to_string(const Universe& u, IndexSet s) {
    std::string out = "{";
    bool first = true;
    for (int i : s) {
        if (!first) out += ",";
        // Sets in error messages may mention indices the universe does not
        // have; print those by position.
        if (i < u.size())
            out += u.index_name(i);
        else
            out += "#" + std::to_string(i);
        first = false;
    }
    out += "}";
    return out;
}

std::string to_string(const Relation& r) {
    const Universe& u = r.universe();
    std::ostringstream out;
    out << "domain " << set_to_string(u, r.domain()) << ", " << r.size()
        << (r.size() == 1 ? " tuple" : " tuples");
    for (std::size_t k = 0; k < r.size(); ++k) {
        out << "\n  (";
        int c = 0;
        for (int i : r.domain()) {
            if (c > 0) out << ",";
            out << u.value_name(i, r.row(k)[static_cast<std::size_t>(c)]);
            ++c;
        }
        out << ")";
    }
    return std::move(out).str();
}

} // namespace conrel
