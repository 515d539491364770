#include "conrel/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>

#include "conrel/errors.hpp"

namespace conrel {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw InputError(path + ": " + what);
}

const json& expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    return j;
}

const json& expect_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

std::string expect_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& path) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return key == k; }) == known.end())
            fail(path + "/" + key, "unknown key");
    }
}

std::unique_ptr<Universe> parse_universe(const json& j, std::uint64_t max_tuples) {
    const std::string path = "/universe";
    expect_object(j, path);
    reject_unknown_keys(j, {"indices"}, path);
    if (!j.contains("indices")) fail(path, "missing key 'indices'");
    const json& indices = expect_array(j.at("indices"), path + "/indices");
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> alphabets;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const std::string ipath = path + "/indices/" + std::to_string(i);
        const json& idx = expect_object(indices[i], ipath);
        reject_unknown_keys(idx, {"name", "values"}, ipath);
        if (!idx.contains("name")) fail(ipath, "missing key 'name'");
        if (!idx.contains("values")) fail(ipath, "missing key 'values'");
        names.push_back(expect_string(idx.at("name"), ipath + "/name"));
        const json& values = expect_array(idx.at("values"), ipath + "/values");
        std::vector<std::string> alphabet;
        for (std::size_t v = 0; v < values.size(); ++v)
            alphabet.push_back(expect_string(values[v], ipath + "/values/" + std::to_string(v)));
        alphabets.push_back(std::move(alphabet));
    }
    try {
        return std::make_unique<Universe>(std::move(names), std::move(alphabets), max_tuples);
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

int lookup_index(const Universe& u, const std::string& name, const std::string& path) {
    const int i = u.index_of(name);
    if (i < 0) fail(path, "unknown index '" + name + "'");
    return i;
}

Relation parse_relation(const Universe& u, const json& j, const std::string& path,
                        std::ostream* warnings, const std::string& name) {
    expect_object(j, path);
    reject_unknown_keys(j, {"domain", "tuples"}, path);
    if (!j.contains("domain")) fail(path, "missing key 'domain'");
    if (!j.contains("tuples")) fail(path, "missing key 'tuples'");

    const json& jdomain = expect_array(j.at("domain"), path + "/domain");
    std::vector<int> file_order;
    IndexSet domain;
    for (std::size_t k = 0; k < jdomain.size(); ++k) {
        const std::string kpath = path + "/domain/" + std::to_string(k);
        const int i = lookup_index(u, expect_string(jdomain[k], kpath), kpath);
        if (domain.contains(i)) fail(kpath, "duplicate index '" + u.index_name(i) + "'");
        domain |= IndexSet::single(i);
        file_order.push_back(i);
    }

    // Column permutation: canonical position of each file column.
    const int w = domain.count();
    std::vector<int> canon_col(file_order.size());
    for (std::size_t c = 0; c < file_order.size(); ++c) {
        int pos = 0;
        for (int i : domain) {
            if (i == file_order[c]) break;
            ++pos;
        }
        canon_col[c] = pos;
    }

    const json& jtuples = expect_array(j.at("tuples"), path + "/tuples");
    if (w == 0) {
        for (std::size_t t = 0; t < jtuples.size(); ++t) {
            const std::string tpath = path + "/tuples/" + std::to_string(t);
            if (!expect_array(jtuples[t], tpath).empty()) fail(tpath, "expected an empty tuple");
        }
        if (jtuples.size() > 1 && warnings)
            *warnings << "warning: " << path << "/tuples: " << (jtuples.size() - 1)
                      << " duplicate tuple(s) removed from '" << name << "'\n";
        return jtuples.empty() ? Relation::null(u, domain) : Relation::unit(u);
    }

    std::vector<Value> flat;
    flat.reserve(jtuples.size() * static_cast<std::size_t>(w));
    for (std::size_t t = 0; t < jtuples.size(); ++t) {
        const std::string tpath = path + "/tuples/" + std::to_string(t);
        const json& tup = expect_array(jtuples[t], tpath);
        if (static_cast<int>(tup.size()) != w)
            fail(tpath, "expected " + std::to_string(w) + " values");
        std::vector<Value> row(static_cast<std::size_t>(w));
        for (std::size_t c = 0; c < tup.size(); ++c) {
            const std::string cpath = tpath + "/" + std::to_string(c);
            const std::string vname = expect_string(tup[c], cpath);
            const int i = file_order[c];
            const int v = u.value_of(i, vname);
            if (v < 0)
                fail(cpath, "unknown value '" + vname + "' for index '" + u.index_name(i) + "'");
            row[static_cast<std::size_t>(canon_col[c])] = static_cast<Value>(v);
        }
        flat.insert(flat.end(), row.begin(), row.end());
    }
    Relation r = Relation::from_rows(u, domain, std::move(flat));
    if (r.size() < jtuples.size() && warnings)
        *warnings << "warning: " << path << "/tuples: " << (jtuples.size() - r.size())
                  << " duplicate tuple(s) removed from '" << name << "'\n";
    return r;
}

std::vector<IndexSet> parse_structure(const Universe& u, const json& j, const std::string& path) {
    expect_array(j, path);
    std::vector<IndexSet> members;
    for (std::size_t m = 0; m < j.size(); ++m) {
        const std::string mpath = path + "/" + std::to_string(m);
        const json& jset = expect_array(j[m], mpath);
        IndexSet set;
        for (std::size_t k = 0; k < jset.size(); ++k) {
            const std::string kpath = mpath + "/" + std::to_string(k);
            const int i = lookup_index(u, expect_string(jset[k], kpath), kpath);
            if (set.contains(i)) fail(kpath, "duplicate index '" + u.index_name(i) + "'");
            set |= IndexSet::single(i);
        }
        members.push_back(set);
    }
    std::sort(members.begin(), members.end(), card_value_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return members;
}

} // namespace

Workspace workspace_from_json(const json& doc, std::uint64_t max_tuples, std::ostream* warnings) {
    expect_object(doc, "/");
    reject_unknown_keys(doc, {"universe", "relations", "structures"}, "");
    if (!doc.contains("universe")) fail("/", "missing key 'universe'");

    Workspace w;
    w.universe = parse_universe(doc.at("universe"), max_tuples);

    if (doc.contains("relations")) {
        const json& rels = expect_object(doc.at("relations"), "/relations");
        for (const auto& [name, body] : rels.items())
            w.relations.emplace(name, parse_relation(*w.universe, body, "/relations/" + name,
                                                     warnings, name));
    }
    if (doc.contains("structures")) {
        const json& sts = expect_object(doc.at("structures"), "/structures");
        for (const auto& [name, body] : sts.items())
            w.structures.emplace(name, parse_structure(*w.universe, body, "/structures/" + name));
    }
    return w;
}

ordered_json workspace_to_json(const Workspace& w) {
    const Universe& u = *w.universe;
    ordered_json doc;

    ordered_json indices = ordered_json::array();
    for (int i = 0; i < u.size(); ++i) {
        ordered_json idx;
        idx["name"] = u.index_name(i);
        ordered_json values = ordered_json::array();
        for (int v = 0; v < u.alphabet_size(i); ++v)
            values.push_back(u.value_name(i, static_cast<Value>(v)));
        idx["values"] = std::move(values);
        indices.push_back(std::move(idx));
    }
    doc["universe"] = ordered_json{{"indices", std::move(indices)}};

    ordered_json rels = ordered_json::object();
    for (const auto& [name, r] : w.relations) {
        ordered_json domain = ordered_json::array();
        for (int i : r.domain()) domain.push_back(u.index_name(i));
        ordered_json tuples = ordered_json::array();
        for (std::size_t k = 0; k < r.size(); ++k) {
            ordered_json tup = ordered_json::array();
            int c = 0;
            for (int i : r.domain())
                tup.push_back(u.value_name(i, r.row(k)[static_cast<std::size_t>(c++)]));
            tuples.push_back(std::move(tup));
        }
        rels[name] = ordered_json{{"domain", std::move(domain)}, {"tuples", std::move(tuples)}};
    }
    doc["relations"] = std::move(rels);

    ordered_json sts = ordered_json::object();
    for (const auto& [name, raw_members] : w.structures) {
        std::vector<IndexSet> members = raw_members;
        std::sort(members.begin(), members.end(), card_value_less);
        members.erase(std::unique(members.begin(), members.end()), members.end());
        ordered_json arr = ordered_json::array();
        for (IndexSet s : members) {
            ordered_json set = ordered_json::array();
            for (int i : s) set.push_back(u.index_name(i));
            arr.push_back(std::move(set));
        }
        sts[name] = std::move(arr);
    }
    doc["structures"] = std::move(sts);
    return doc;
}

Workspace load_workspace(std::istream& in, std::uint64_t max_tuples, std::ostream* warnings) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return workspace_from_json(doc, max_tuples, warnings);
}

Workspace load_workspace_file(const std::string& path, std::uint64_t max_tuples,
                              std::ostream* warnings) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return load_workspace(in, max_tuples, warnings);
}

void save_workspace_file(const Workspace& w, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    out << workspace_to_json(w).dump(2) << "\n";
}

namespace {

// All binary-alphabet indices named "1".."n".
std::unique_ptr<Universe> binary_universe(int n, std::uint64_t max_tuples) {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> alphabets;
    for (int i = 1; i <= n; ++i) {
        names.push_back(std::to_string(i));
        alphabets.push_back({"0", "1"});
    }
    return std::make_unique<Universe>(std::move(names), std::move(alphabets), max_tuples);
}

// All 0/1 rows on `domain` passing `keep`.
Relation rows_where(const Universe& u, IndexSet domain,
                    const std::function<bool(const std::vector<Value>&)>& keep) {
    const int w = domain.count();
    std::vector<Value> row(static_cast<std::size_t>(w), 0);
    std::vector<Value> flat;
    for (;;) {
        if (keep(row)) flat.insert(flat.end(), row.begin(), row.end());
        int c = w - 1;
        for (; c >= 0; --c) {
            if (++row[static_cast<std::size_t>(c)] < 2) break;
            row[static_cast<std::size_t>(c)] = 0;
        }
        if (c < 0) break;
    }
    return Relation::from_rows(u, domain, std::move(flat));
}

std::vector<IndexSet> borromean_members(int n) {
    std::vector<IndexSet> members{IndexSet{}, IndexSet::range(n)};
    for (int i = 0; i < n; ++i) members.push_back(IndexSet::single(i));
    std::sort(members.begin(), members.end(), card_value_less);
    return members;
}

std::vector<IndexSet> discrete_members(int n) {
    std::vector<IndexSet> members{IndexSet{}};
    for (int i = 0; i < n; ++i) members.push_back(IndexSet::single(i));
    std::sort(members.begin(), members.end(), card_value_less);
    return members;
}

std::vector<IndexSet> coarse_members(int n) {
    std::vector<IndexSet> members;
    const IndexSet carrier = IndexSet::range(n);
    IndexSet sub{};
    for (;;) {
        members.push_back(sub);
        sub = next_subset(sub, carrier);
        if (sub.empty()) break;
    }
    std::sort(members.begin(), members.end(), card_value_less);
    return members;
}

} // namespace

Workspace make_fixture(const std::string& name, std::uint64_t max_tuples) {
    if (name == "borromean3") {
        Workspace w;
        w.universe = binary_universe(3, max_tuples);
        const IndexSet all = w.universe->all();
        w.relations.emplace("R", rows_where(*w.universe, all, [](const std::vector<Value>& r) {
                                return std::find(r.begin(), r.end(), Value{0}) != r.end();
                            }));
        w.relations.emplace("S", rows_where(*w.universe, all, [](const std::vector<Value>& r) {
                                return std::find(r.begin(), r.end(), Value{1}) != r.end();
                            }));
        w.structures.emplace("B3", borromean_members(3));
        // The connectivity structure of join(R,S), fixed by the exhaustive
        // reference computation.
        w.structures.emplace("join_structure", borromean_members(3));
        return w;
    }
    if (name == "counterexample17") {
        Workspace w;
        w.universe = binary_universe(4, max_tuples);
        const Universe& u = *w.universe;
        const int i2 = u.index_of("2");
        const IndexSet dr = parse_index_set(u, "1,2,3");
        const IndexSet ds = parse_index_set(u, "1,2,4");
        int col_r = 0, col_s = 0, c = 0;
        for (int i : dr) {
            if (i == i2) col_r = c;
            ++c;
        }
        c = 0;
        for (int i : ds) {
            if (i == i2) col_s = c;
            ++c;
        }
        w.relations.emplace("R", rows_where(u, dr, [col_r](const std::vector<Value>& r) {
                                return r[static_cast<std::size_t>(col_r)] == 0;
                            }));
        w.relations.emplace("S", rows_where(u, ds, [col_s](const std::vector<Value>& r) {
                                return r[static_cast<std::size_t>(col_s)] == 1;
                            }));
        return w;
    }
    if (name.rfind("brunn:", 0) == 0) {
        const std::string rest = name.substr(6);
        const auto digits = rest.find_first_of("0123456789");
        if (digits == std::string::npos || digits == 0)
            throw InputError("fixture '" + name + "': expected brunn:<kind><n>");
        const std::string kind = rest.substr(0, digits);
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(rest.substr(digits), &used);
            if (used != rest.size() - digits) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw InputError("fixture '" + name + "': bad carrier size");
        }
        if (n < 1 || n > 16) throw InputError("fixture '" + name + "': carrier size must be 1..16");
        std::vector<IndexSet> members;
        if (kind == "borromean") {
            if (n < 3) throw InputError("fixture '" + name + "': borromean needs n >= 3");
            members = borromean_members(n);
        } else if (kind == "discrete") {
            members = discrete_members(n);
        } else if (kind == "coarse") {
            members = coarse_members(n);
        } else {
            throw InputError("fixture '" + name + "': unknown kind '" + kind +
                             "' (borromean|discrete|coarse)");
        }
        Workspace w;
        w.universe = binary_universe(n, max_tuples);
        w.structures.emplace("K", std::move(members));
        return w;
    }
    throw InputError("unknown fixture '" + name +
                     "' (borromean3|counterexample17|brunn:<kind><n>)");
}

IndexSet parse_index_set(const Universe& u, const std::string& csv) {
    IndexSet out;
    std::size_t start = 0;
    if (csv.empty()) return out;
    while (true) {
        const std::size_t comma = csv.find(',', start);
        const std::string name = csv.substr(start, comma - start);
        const int i = u.index_of(name);
        if (i < 0) throw InputError("unknown index '" + name + "'");
        out |= IndexSet::single(i);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace conrel
