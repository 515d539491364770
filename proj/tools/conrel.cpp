#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "conrel/brunn.hpp"
#include "conrel/connectivity.hpp"
#include "conrel/errors.hpp"
#include "conrel/oracles.hpp"
#include "conrel/split.hpp"
#include "conrel/workspace.hpp"

namespace {

using conrel::Bipartition;
using conrel::BrunnUniverse;
using conrel::ConnectivityStructure;
using conrel::IndexSet;
using conrel::Relation;
using conrel::Universe;
using conrel::Value;
using conrel::Workspace;
using nlohmann::ordered_json;

struct Options {
    std::string workspace_path;
    std::string fixture;
    std::string format = "json";
    bool oracle = false;
    std::uint64_t cap = Universe::kDefaultCap;
};

ordered_json set_to_json(const Universe& u, IndexSet s) {
    ordered_json out = ordered_json::array();
    for (int i : s) out.push_back(u.index_name(i));
    return out;
}

ordered_json sets_to_json(const Universe& u, std::span<const IndexSet> sets) {
    ordered_json out = ordered_json::array();
    for (IndexSet s : sets) out.push_back(set_to_json(u, s));
    return out;
}

void emit_json(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

void emit_report(const Options& opt, const ordered_json& doc) {
    if (opt.format == "json") {
        emit_json(doc);
        return;
    }
    for (const auto& [key, value] : doc.items()) {
        std::cout << key << ": ";
        if (value.is_string())
            std::cout << value.get<std::string>();
        else
            std::cout << value.dump();
        std::cout << "\n";
    }
}

void emit_workspace(const Options& opt, const Workspace& w) {
    if (opt.format == "json") {
        emit_json(workspace_to_json(w));
        return;
    }
    const Universe& u = *w.universe;
    std::cout << "universe:";
    for (int i = 0; i < u.size(); ++i)
        std::cout << " " << u.index_name(i) << "(" << u.alphabet_size(i) << " values)";
    std::cout << "\n";
    for (const auto& [name, r] : w.relations)
        std::cout << "relation " << name << ": " << conrel::to_string(r) << "\n";
    for (const auto& [name, members] : w.structures) {
        std::cout << "structure " << name << ": {";
        bool first = true;
        for (IndexSet s : members) {
            if (!first) std::cout << ",";
            std::cout << conrel::set_to_string(u, s);
            first = false;
        }
        std::cout << "}\n";
    }
}

Workspace load_input(const Options& opt) {
    if (!opt.fixture.empty() && !opt.workspace_path.empty())
        throw conrel::InputError("--workspace and --fixture are mutually exclusive");
    if (!opt.fixture.empty()) return conrel::make_fixture(opt.fixture, opt.cap);
    if (!opt.workspace_path.empty()) {
        if (opt.workspace_path == "-")
            return conrel::load_workspace(std::cin, opt.cap, &std::cerr);
        return conrel::load_workspace_file(opt.workspace_path, opt.cap, &std::cerr);
    }
    throw conrel::InputError("no input workspace: pass --workspace <file> or --fixture <name>");
}

const Relation& named_relation(const Workspace& w, const std::string& name) {
    const auto it = w.relations.find(name);
    if (it == w.relations.end()) throw conrel::InputError("unknown relation '" + name + "'");
    return it->second;
}

const std::vector<IndexSet>& named_structure(const Workspace& w, const std::string& name) {
    const auto it = w.structures.find(name);
    if (it == w.structures.end()) throw conrel::InputError("unknown structure '" + name + "'");
    return it->second;
}

// Rebuild a universe-owned copy so a workspace can own what a synthesis
// universe produced.
std::unique_ptr<Universe> clone_universe(const Universe& u, std::uint64_t cap) {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> alphabets;
    for (int i = 0; i < u.size(); ++i) {
        names.push_back(u.index_name(i));
        std::vector<std::string> alphabet;
        for (int v = 0; v < u.alphabet_size(i); ++v)
            alphabet.push_back(u.value_name(i, static_cast<Value>(v)));
        alphabets.push_back(std::move(alphabet));
    }
    return std::make_unique<Universe>(std::move(names), std::move(alphabets), cap);
}

Relation copy_relation(const Universe& target, const Relation& r) {
    std::vector<Value> flat;
    flat.reserve(r.size() * static_cast<std::size_t>(r.width()));
    for (std::size_t k = 0; k < r.size(); ++k) {
        const auto row = r.row(k);
        flat.insert(flat.end(), row.begin(), row.end());
    }
    if (r.width() == 0 && r.size() > 0) return Relation::unit(target);
    return Relation::from_rows(target, r.domain(), std::move(flat));
}

// Canonical-order split search deciding each bipartition by the reference
// sum criterion.
std::optional<Bipartition> oracle_find_split(const Relation& t) {
    const IndexSet domain = t.domain();
    if (domain.count() < 2) return std::nullopt;
    const int m = domain.min();
    const IndexSet rest = domain.without(m);
    IndexSet sub{};
    for (;;) {
        if (sub != rest) {
            const Bipartition b(sub.with(m), domain - sub.with(m));
            if (conrel::oracle_splittable(t, b)) return b;
        }
        sub = conrel::next_subset(sub, rest);
        if (sub.empty()) break;
    }
    return std::nullopt;
}

int cmd_join(const Options& opt, const std::string& a, const std::string& b) {
    Workspace w = load_input(opt);
    const Relation& ra = named_relation(w, a);
    const Relation& rb = named_relation(w, b);
    const Relation r = opt.oracle ? conrel::oracle_join(ra, rb) : conrel::join(ra, rb);
    w.relations.insert_or_assign("join(" + a + "," + b + ")", r);
    emit_workspace(opt, w);
    return 0;
}

int cmd_restrict(const Options& opt, const std::string& name, const std::string& kcsv) {
    Workspace w = load_input(opt);
    const Relation& r = named_relation(w, name);
    const IndexSet k = conrel::parse_index_set(*w.universe, kcsv);
    const Relation res = r.restricted_to(k);
    w.relations.insert_or_assign("restrict(" + name + "," + set_to_string(*w.universe, k) + ")",
                                 res);
    emit_workspace(opt, w);
    return 0;
}

int cmd_extend(const Options& opt, const std::string& name) {
    Workspace w = load_input(opt);
    const Relation& r = named_relation(w, name);
    const Relation res = r.extended_to(w.universe->all());
    w.relations.insert_or_assign("extend(" + name + ")", res);
    emit_workspace(opt, w);
    return 0;
}

int cmd_split(const Options& opt, const std::string& name, const std::string* part_csv) {
    Workspace w = load_input(opt);
    const Universe& u = *w.universe;
    const Relation& r = named_relation(w, name);
    IndexSet part = r.domain();
    if (part_csv) {
        part = conrel::parse_index_set(u, *part_csv);
        if (!part.subset_of(r.domain()))
            throw conrel::InputError("part " + set_to_string(u, part) +
                                     " is not contained in the domain " +
                                     set_to_string(u, r.domain()));
    }
    const Relation t = r.restricted_to(part);
    const auto split = opt.oracle ? oracle_find_split(t) : conrel::find_split(t);
    ordered_json doc;
    doc["command"] = "split";
    doc["relation"] = name;
    doc["part"] = set_to_json(u, part);
    doc["splittable"] = split.has_value();
    if (split) {
        doc["bipartition"] =
            ordered_json{{"left", set_to_json(u, split->left())},
                         {"right", set_to_json(u, split->right())}};
    } else {
        doc["bipartition"] = nullptr;
    }
    emit_report(opt, doc);
    return 0;
}

int cmd_detachable(const Options& opt, const std::string& name, const std::string& jcsv) {
    Workspace w = load_input(opt);
    const Relation& r = named_relation(w, name);
    const IndexSet j = conrel::parse_index_set(*w.universe, jcsv);
    const bool res = opt.oracle ? conrel::oracle_detachable(r, j) : conrel::is_detachable(r, j);
    ordered_json doc;
    doc["command"] = "detachable";
    doc["relation"] = name;
    doc["part"] = set_to_json(*w.universe, j);
    doc["detachable"] = res;
    emit_report(opt, doc);
    return 0;
}

int cmd_socle(const Options& opt, const std::string& name) {
    Workspace w = load_input(opt);
    const Relation& r = named_relation(w, name);
    const IndexSet ex = opt.oracle ? conrel::oracle_external_part(r) : conrel::external_part(r);
    ordered_json doc;
    doc["command"] = "socle";
    doc["relation"] = name;
    doc["socle"] = set_to_json(*w.universe, r.domain() - ex);
    doc["external"] = set_to_json(*w.universe, ex);
    emit_report(opt, doc);
    return 0;
}

int cmd_classify(const Options& opt, const std::string& name) {
    Workspace w = load_input(opt);
    const Relation& r = named_relation(w, name);
    conrel::Classification c;
    if (opt.oracle) {
        c.external = conrel::oracle_external_part(r);
        c.socle = r.domain() - c.external;
        c.solid = c.external.empty();
        c.anchored = conrel::oracle_detachable(r, c.external);
        c.moving = !c.anchored;
        c.fluid = !r.is_trivial() && c.socle.empty() && c.moving;
    } else {
        c = conrel::classify(r);
    }
    ordered_json doc;
    doc["command"] = "classify";
    doc["relation"] = name;
    doc["solid"] = c.solid;
    doc["anchored"] = c.anchored;
    doc["moving"] = c.moving;
    doc["fluid"] = c.fluid;
    doc["external"] = set_to_json(*w.universe, c.external);
    doc["socle"] = set_to_json(*w.universe, c.socle);
    emit_report(opt, doc);
    return 0;
}

int cmd_structure(const Options& opt, const std::string& name) {
    Workspace w = load_input(opt);
    const Relation& r = named_relation(w, name);
    const ConnectivityStructure k =
        opt.oracle ? conrel::oracle_structure_of(r) : conrel::structure_of(r);
    ordered_json doc;
    doc["command"] = "structure";
    doc["relation"] = name;
    doc["carrier"] = set_to_json(*w.universe, k.carrier());
    doc["connected"] = sets_to_json(*w.universe, k.connected());
    doc["integral"] = k.is_integral();
    emit_report(opt, doc);
    return 0;
}

int cmd_generate(const Options& opt, const std::string& name, bool integral) {
    Workspace w = load_input(opt);
    const std::vector<IndexSet>& seed = named_structure(w, name);
    const ConnectivityStructure k = conrel::generate(seed, w.universe->all(), integral);
    w.structures.insert_or_assign(
        name, std::vector<IndexSet>(k.connected().begin(), k.connected().end()));
    emit_workspace(opt, w);
    return 0;
}

int cmd_components(const Options& opt, const std::string& name, const std::string& within_csv) {
    Workspace w = load_input(opt);
    const Universe& u = *w.universe;
    const ConnectivityStructure k(u.all(), named_structure(w, name));
    const IndexSet within = conrel::parse_index_set(u, within_csv);
    std::vector<IndexSet> parts;
    IndexSet left = within;
    while (!left.empty()) {
        const IndexSet c = conrel::component(k, left, left.min());
        parts.push_back(c);
        left -= c;
    }
    ordered_json doc;
    doc["command"] = "components";
    doc["structure"] = name;
    doc["within"] = set_to_json(u, within);
    doc["components"] = sets_to_json(u, parts);
    emit_report(opt, doc);
    return 0;
}

int cmd_brunn(const Options& opt, const std::string& name) {
    Workspace w = load_input(opt);
    const Universe& u = *w.universe;
    const ConnectivityStructure k(u.all(), named_structure(w, name));
    std::vector<std::string> names;
    for (int i : k.carrier()) names.push_back(u.index_name(i));
    const BrunnUniverse b(k, std::move(names), opt.cap);

    Workspace out;
    out.universe = clone_universe(b.universe(), opt.cap);
    out.relations.emplace("R", copy_relation(*out.universe, b.relation()));
    out.structures.emplace("K", std::vector<IndexSet>(b.structure().connected().begin(),
                                                      b.structure().connected().end()));
    emit_workspace(opt, out);
    return 0;
}

int cmd_verify_brunn(const Options& opt, const std::string& name) {
    Workspace w = load_input(opt);
    const Universe& u = *w.universe;
    const ConnectivityStructure k(u.all(), named_structure(w, name));
    const int n = k.carrier().count();
    bool verified = false;
    std::string tier;
    if (opt.oracle) {
        tier = "full";
        const BrunnUniverse b(k, {}, opt.cap);
        verified = conrel::oracle_structure_of(b.relation()) == b.structure();
    } else {
        tier = n <= 3 ? "full" : "witness";
        verified = conrel::verify_brunn(k, opt.cap);
    }
    ordered_json doc;
    doc["command"] = "verify-brunn";
    doc["structure"] = name;
    doc["carrier_points"] = n;
    doc["tier"] = tier;
    doc["verified"] = verified;
    emit_report(opt, doc);
    return verified ? 0 : 1;
}

// Self-contained randomized check of the join monoid laws; fixed seed, so
// output is reproducible.
int cmd_monoid_check(const Options& opt) {
    std::mt19937_64 rng(20250819);
    const int cases = 200;
    int failures = 0;
    std::string first_failure;

    for (int t = 0; t < cases && failures == 0; ++t) {
        std::uniform_int_distribution<int> nd(1, 4);
        const int n = nd(rng);
        std::vector<std::string> names;
        std::vector<std::vector<std::string>> alphabets;
        for (int i = 0; i < n; ++i) {
            names.push_back(std::to_string(i + 1));
            std::uniform_int_distribution<int> ad(1, 3);
            const int a = ad(rng);
            std::vector<std::string> alphabet;
            for (int v = 0; v < a; ++v) alphabet.push_back(std::to_string(v));
            alphabets.push_back(std::move(alphabet));
        }
        const Universe u(std::move(names), std::move(alphabets));

        auto random_relation = [&]() {
            std::uniform_int_distribution<std::uint64_t> sd(0, (std::uint64_t{1} << n) - 1);
            const IndexSet domain(IndexSet::range(n) & IndexSet(sd(rng)));
            const Relation full = Relation::trivial(u, domain);
            std::uniform_real_distribution<double> dd(0.0, 1.0);
            const double density = dd(rng);
            std::vector<Value> flat;
            for (std::size_t k = 0; k < full.size(); ++k)
                if (dd(rng) < density) {
                    const auto row = full.row(k);
                    flat.insert(flat.end(), row.begin(), row.end());
                }
            if (domain.empty() && !flat.empty()) return Relation::unit(u);
            Relation r = Relation::from_rows(u, domain, std::move(flat));
            if (domain.empty()) {
                std::uniform_int_distribution<int> bd(0, 1);
                return bd(rng) ? Relation::unit(u) : Relation::null(u, domain);
            }
            return r;
        };
        const Relation r = random_relation();
        const Relation s = random_relation();
        const Relation q = random_relation();
        auto jn = [&](const Relation& x, const Relation& y) {
            return opt.oracle ? conrel::oracle_join(x, y) : conrel::join(x, y);
        };
        const bool assoc = jn(jn(r, s), q) == jn(r, jn(s, q));
        const bool comm = jn(r, s) == jn(s, r);
        const bool idem = jn(r, r) == r;
        const bool unit = jn(r, Relation::unit(u)) == r;
        if (!(assoc && comm && idem && unit)) {
            ++failures;
            first_failure = std::string(!assoc   ? "associativity"
                                        : !comm  ? "commutativity"
                                        : !idem  ? "idempotence"
                                                 : "unit") +
                            " failed on case " + std::to_string(t);
        }
    }

    ordered_json doc;
    doc["command"] = "monoid-check";
    doc["mode"] = opt.oracle ? "oracle" : "engine";
    doc["cases"] = cases;
    doc["failures"] = failures;
    if (failures > 0) doc["first_failure"] = first_failure;
    emit_report(opt, doc);
    return failures == 0 ? 0 : 1;
}

std::uint64_t cap_from_env() {
    const char* env = std::getenv("CONREL_CAP");
    if (!env || !*env) return Universe::kDefaultCap;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
        throw conrel::InputError("CONREL_CAP must be a positive integer, got '" +
                                 std::string(env) + "'");
    return static_cast<std::uint64_t>(v);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite engine for the algebra of multiple relations"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--workspace", opt.workspace_path, "workspace JSON file, or '-' for stdin");
    app.add_option("--fixture", opt.fixture,
                   "built-in workspace: borromean3 | counterexample17 | brunn:<kind><n>");
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_flag("--oracle", opt.oracle, "use the reference implementations");

    std::string arg_a, arg_b, arg_set, arg_part;
    bool flag_integral = false;

    CLI::App* sc_join = app.add_subcommand("join", "join two relations");
    sc_join->add_option("A", arg_a)->required();
    sc_join->add_option("B", arg_b)->required();

    CLI::App* sc_restrict = app.add_subcommand("restrict", "restrict a relation to an index set");
    sc_restrict->add_option("R", arg_a)->required();
    sc_restrict->add_option("K", arg_set, "comma-separated index names")->required();

    CLI::App* sc_extend = app.add_subcommand("extend", "extend a relation to the full universe");
    sc_extend->add_option("R", arg_a)->required();

    CLI::App* sc_split = app.add_subcommand("split", "search for a splitting bipartition");
    sc_split->add_option("R", arg_a)->required();
    CLI::Option* split_part = sc_split->add_option("--part", arg_part, "restrict to this part first");

    CLI::App* sc_detachable = app.add_subcommand("detachable", "is an index set detachable?");
    sc_detachable->add_option("R", arg_a)->required();
    sc_detachable->add_option("J", arg_set, "comma-separated index names (may be empty: '')");

    CLI::App* sc_socle = app.add_subcommand("socle", "socle and external part");
    sc_socle->add_option("R", arg_a)->required();

    CLI::App* sc_classify = app.add_subcommand("classify", "solid/anchored/moving/fluid report");
    sc_classify->add_option("R", arg_a)->required();

    CLI::App* sc_structure = app.add_subcommand("structure", "connectivity structure of a relation");
    sc_structure->add_option("R", arg_a)->required();

    CLI::App* sc_generate =
        app.add_subcommand("generate", "close a seed family into a connectivity structure");
    sc_generate->add_option("K", arg_a)->required();
    sc_generate->add_flag("--integral", flag_integral, "add all singletons");

    CLI::App* sc_components = app.add_subcommand("components", "connected components within a part");
    sc_components->add_option("K", arg_a)->required();
    sc_components->add_option("--within", arg_set, "comma-separated index names")->required();

    CLI::App* sc_brunn =
        app.add_subcommand("brunn", "synthesize a relation with the given structure");
    sc_brunn->add_option("K", arg_a)->required();

    CLI::App* sc_verify =
        app.add_subcommand("verify-brunn", "verify the synthesized relation's structure");
    sc_verify->add_option("K", arg_a)->required();

    app.add_subcommand("monoid-check", "randomized check of the join monoid laws");

    for (CLI::App* sc : app.get_subcommands(nullptr)) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // command-line misuse is an input error
    }

    try {
        opt.cap = cap_from_env();
        if (sc_join->parsed()) return cmd_join(opt, arg_a, arg_b);
        if (sc_restrict->parsed()) return cmd_restrict(opt, arg_a, arg_set);
        if (sc_extend->parsed()) return cmd_extend(opt, arg_a);
        if (sc_split->parsed())
            return cmd_split(opt, arg_a, split_part->count() ? &arg_part : nullptr);
        if (sc_detachable->parsed()) return cmd_detachable(opt, arg_a, arg_set);
        if (sc_socle->parsed()) return cmd_socle(opt, arg_a);
        if (sc_classify->parsed()) return cmd_classify(opt, arg_a);
        if (sc_structure->parsed()) return cmd_structure(opt, arg_a);
        if (sc_generate->parsed()) return cmd_generate(opt, arg_a, flag_integral);
        if (sc_components->parsed()) return cmd_components(opt, arg_a, arg_set);
        if (sc_brunn->parsed()) return cmd_brunn(opt, arg_a);
        if (sc_verify->parsed()) return cmd_verify_brunn(opt, arg_a);
        return cmd_monoid_check(opt);
    } catch (const conrel::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
