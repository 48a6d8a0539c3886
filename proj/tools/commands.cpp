#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "cscheme/capture.hpp"
#include "cscheme/gap.hpp"
#include "cscheme/gap_analysis.hpp"
#include "cscheme/json_io.hpp"
#include "cscheme/scheme.hpp"
#include "cscheme/tree.hpp"

namespace cscheme::cli {

namespace {

using json::Json;

struct RunConfig {
    std::string command;
    std::vector<std::uint64_t> n;
    std::vector<std::uint64_t> r;
    std::string input;
    std::string out;
    std::string dot;
    std::vector<Ordinal> subset;
    std::string mode;
    std::string delta;
    std::uint32_t blocks = 3;
    bool json = false;
};

/// Raised for problems that map to the usage exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json read_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return json::parse(buf.str());
}

void emit(const RunConfig& cfg, const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
    (void)cfg;
}

/// Common summary shape for every command that runs checks.
struct Summary {
    std::string command;
    std::string format;
    std::vector<Json> checks;
    std::size_t invariant_failures = 0;
    std::size_t consequence_failures = 0;

    void add(const Report& r) {
        invariant_failures += r.failures.size();
        checks.push_back(json::to_json(r));
    }
    void add(const ConsequenceReport& r) {
        for (const auto& t : r.tallies) consequence_failures += t.violations;
        checks.push_back(json::to_json(r));
    }
    std::size_t total() const { return invariant_failures + consequence_failures; }

    Json to_json() const {
        return Json{{"command", command},
                    {"format", format},
                    {"failure_count", total()},
                    {"invariant_failure_count", invariant_failures},
                    {"consequence_failure_count", consequence_failures},
                    {"checks", checks}};
    }

    std::string to_text() const {
        std::ostringstream os;
        for (const auto& c : checks) {
            const auto count = c.at("failure_count").get<std::size_t>();
            os << c.at("name").get<std::string>() << ": " << (count == 0 ? "ok" : "FAIL");
            if (c.contains("checked")) os << " (" << c.at("checked").get<std::size_t>() << " checks)";
            if (c.contains("tallies")) {
                for (const auto& t : c.at("tallies")) {
                    os << "\n  " << t.at("name").get<std::string>() << ": " << t.at("violations").get<std::size_t>()
                       << "/" << t.at("checked").get<std::size_t>() << " violated";
                }
            }
            const auto& fails = c.contains("failures") ? c.at("failures") : c.at("violations");
            std::size_t shown = 0;
            for (const auto& f : fails) {
                if (++shown > 5) break;
                os << "\n  " << f.at("clause").get<std::string>() << ": " << f.value("detail", "");
            }
            os << '\n';
        }
        os << command << ": " << total() << " failure(s)\n";
        return os.str();
    }
};

void print_summary(const RunConfig& cfg, const Summary& s, std::ostream& os) {
    if (cfg.json) {
        os << json::dump(s.to_json());
    } else {
        os << s.to_text();
    }
}

ConstructionScheme load_verified_scheme(const RunConfig& cfg, std::ostream& err, bool& ok) {
    ConstructionScheme s = json::scheme_from_json(read_document(cfg.input));
    const Report rep = verify_scheme(s);
    ok = rep.ok();
    if (!ok) {
        Summary sum{cfg.command, json::kSchemeFormat, {}, 0, 0};
        sum.add(rep);
        print_summary(cfg, sum, err);
    }
    return s;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<std::uint64_t> r = cfg.r;
    if (r.empty()) r.assign(cfg.n.size(), 0);
    if (r.size() != cfg.n.size()) throw UsageError("--n and --r must have the same length");
    const SchemeType t = derive_type(cfg.n, r);
    const TypeReport rep = validate_type(t);
    if (!rep.ok()) {
        for (const auto& v : rep.violations) err << "invalid type: " << v.message << '\n';
        return kUsage;
    }
    emit(cfg, json::dump(json::to_json(generate_tower_scheme(t))), cfg.out, out);
    return kOk;
}

int cmd_tree(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    bool ok = false;
    const ConstructionScheme s = load_verified_scheme(cfg, err, ok);
    if (!ok) return kInvariantFailure;
    const LabeledScheme ls = build_labels(s);
    const TreeApprox tree = build_tree(ls);

    Summary sum{"tree", json::kLabelsFormat, {}, 0, 0};
    sum.add(verify_scheme(s));
    sum.add(check_label_invariants(ls));
    sum.add(check_tree_order(tree));
    sum.add(capture_tree_consequences(ls));

    Json doc = json::to_json(ls);
    doc["verification"] = sum.to_json();
    emit(cfg, json::dump(doc), cfg.out, out);
    if (!cfg.dot.empty()) emit(cfg, export_tree_dot(tree), cfg.dot, out);
    if (!cfg.out.empty()) print_summary(cfg, sum, out);
    return sum.invariant_failures == 0 ? kOk : kInvariantFailure;
}

int cmd_gap(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    bool ok = false;
    const ConstructionScheme s = load_verified_scheme(cfg, err, ok);
    if (!ok) return kInvariantFailure;
    const SideFamily sf = build_sides(s);

    Summary sum{"gap", json::kSidesFormat, {}, 0, 0};
    sum.add(verify_scheme(s));
    sum.add(check_side_invariants(sf));
    sum.add(check_limit_family(sf));
    sum.add(capture_gap_consequences(sf));

    Json doc = json::to_json(sf);
    doc["verification"] = sum.to_json();
    emit(cfg, json::dump(doc), cfg.out, out);
    if (!cfg.out.empty()) print_summary(cfg, sum, out);
    return sum.invariant_failures == 0 ? kOk : kInvariantFailure;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const Json doc = read_document(cfg.input);
    const std::string fmt = json::format_of(doc);
    Summary sum{"verify", fmt, {}, 0, 0};

    if (fmt == json::kSchemeFormat) {
        sum.add(verify_scheme(json::scheme_from_json(doc)));
    } else if (fmt == json::kLabelsFormat) {
        const LabeledScheme ls = json::labels_from_json(doc);
        const Report scheme_rep = verify_scheme(ls.scheme);
        sum.add(scheme_rep);
        const Report label_rep = check_label_invariants(ls);
        sum.add(label_rep);
        if (scheme_rep.ok() && !label_rep.has_clause("shape")) {
            sum.add(check_tree_order(build_tree(ls)));
            sum.add(capture_tree_consequences(ls));
        }
    } else if (fmt == json::kSidesFormat) {
        const SideFamily sf = json::sides_from_json(doc);
        const Report scheme_rep = verify_scheme(sf.scheme);
        sum.add(scheme_rep);
        const Report side_rep = check_side_invariants(sf);
        sum.add(side_rep);
        if (scheme_rep.ok() && !side_rep.has_clause("shape") && !side_rep.has_clause("cuts N_k=2k+2")) {
            sum.add(check_limit_family(sf));
            sum.add(capture_gap_consequences(sf));
        }
    } else {
        throw MalformedInput("unknown artifact format '" + fmt + "'");
    }
    print_summary(cfg, sum, out);
    return sum.total() == 0 ? kOk : kInvariantFailure;
}

Json pair_json(const std::optional<IndexPair>& p) {
    if (!p) return nullptr;
    return Json::array({p->first, p->second});
}

int cmd_gapcheck(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const FiniteGapFamily fam = json::family_from_json(read_document(cfg.input));
    const FinSet sub = cfg.subset.empty() ? fam.indices() : FinSet(cfg.subset);
    for (Ordinal x : sub) {
        if (!fam.contains(x)) throw UsageError("subset index " + std::to_string(x) + " is out of range");
    }
    Json rec{{"command", "gapcheck"}, {"mode", cfg.mode}, {"subset", json::to_json(sub)}};
    if (cfg.mode == "ramsey") {
        const auto p = ramsey_pair_search(fam, sub);
        rec["found"] = p.has_value();
        rec["pair"] = pair_json(p);
        if (p) rec["witness"] = {{"a_alpha_meet_b_beta", json::to_json(fam.a(p->first).intersect(fam.b(p->second)))}};
    } else if (cfg.mode == "s") {
        const auto p = s_pair_search(fam, sub);
        rec["found"] = p.has_value();
        rec["pair"] = pair_json(p);
    } else if (cfg.mode == "t") {
        const auto p = t_pair_search(fam, sub);
        rec["found"] = p.has_value();
        rec["pair"] = pair_json(p);
        if (p) {
            rec["witness"] = {{"a_alpha", json::to_json(fam.a(p->first))}, {"a_beta", json::to_json(fam.a(p->second))},
                              {"b_alpha", json::to_json(fam.b(p->first))}, {"b_beta", json::to_json(fam.b(p->second))}};
        }
    } else if (cfg.mode == "split") {
        if (sub.empty()) throw UsageError("split needs a nonempty subset");
        const SplitterResult res = union_splitter(fam, sub);
        rec["found"] = true;
        rec["c"] = json::to_json(res.c);
        Json residues = Json::array();
        for (const auto& [alpha, ab] : res.residues) {
            residues.push_back({{"index", alpha}, {"a_minus_c", json::to_json(ab.first)}, {"c_meet_b", json::to_json(ab.second)}});
        }
        rec["residues"] = std::move(residues);
    } else {
        throw UsageError("unknown mode '" + cfg.mode + "' (expected ramsey, s, t or split)");
    }
    emit(cfg, json::dump(rec), cfg.out, out);
    return kOk;
}

std::vector<FinSet> parse_delta(const std::string& text) {
    std::vector<FinSet> members;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<Ordinal> v;
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            if (item.empty()) continue;
            try {
                v.push_back(static_cast<Ordinal>(std::stoul(item)));
            } catch (const std::exception&) {
                throw UsageError("bad --delta element '" + item + "'");
            }
        }
        members.emplace_back(std::move(v));
    }
    return members;
}

int cmd_captures(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    bool ok = false;
    const ConstructionScheme s = load_verified_scheme(cfg, err, ok);
    if (!ok) return kInvariantFailure;
    Json rec{{"command", "captures"}, {"blocks", cfg.blocks}};
    if (cfg.delta.empty()) {
        if (cfg.blocks < 1) throw UsageError("--blocks must be at least 1");
        Json tuples = Json::array();
        for (const auto& t : enumerate_captured_tuples(s, cfg.blocks)) {
            tuples.push_back({{"node", t.node}, {"points", t.points}});
        }
        rec["tuples"] = std::move(tuples);
    } else {
        std::vector<FinSet> members = parse_delta(cfg.delta);
        std::optional<DeltaSystem> d;
        try {
            d.emplace(std::move(members));
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--delta: ") + e.what());
        }
        if (cfg.blocks < 1 || d->size() < cfg.blocks) throw UsageError("--blocks must be between 1 and the delta size");
        rec["root"] = json::to_json(d->root());
        Json ws = Json::array();
        for (const auto& w : find_captures(s, *d, cfg.blocks)) {
            ws.push_back({{"node", w.node}, {"members", w.member_indices}});
        }
        rec["witnesses"] = std::move(ws);
    }
    emit(cfg, json::dump(rec), cfg.out, out);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Finite construction schemes: generation, tree and gap recursions, verification"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto* gen = app.add_subcommand("gen", "Generate the tower scheme of a type");
    gen->add_option("--n", cfg.n, "n_1,...,n_K")->delimiter(',')->required();
    gen->add_option("--r", cfg.r, "r_1,...,r_K (default all 0)")->delimiter(',');
    gen->add_option("--out", cfg.out, "Output file (default stdout)");

    auto* tree = app.add_subcommand("tree", "Build tree labels and branch functions for a scheme");
    tree->add_option("scheme", cfg.input, "Scheme JSON")->required();
    tree->add_option("--out", cfg.out, "Output file (default stdout)");
    tree->add_option("--dot", cfg.dot, "Also write the tree as DOT to this file");

    auto* gap = app.add_subcommand("gap", "Build side sets and the limit family for a scheme");
    gap->add_option("scheme", cfg.input, "Scheme JSON")->required();
    gap->add_option("--out", cfg.out, "Output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "Run every applicable check on an artifact");
    verify->add_option("artifact", cfg.input, "Scheme, labels or sides JSON")->required();

    auto* gapcheck = app.add_subcommand("gapcheck", "Pair searches and the union splitter on a family");
    gapcheck->add_option("family", cfg.input, "Gap family or sides JSON")->required();
    gapcheck->add_option("--mode", cfg.mode, "ramsey | s | t | split")->required();
    gapcheck->add_option("--subset", cfg.subset, "Indices to search (default all)")->delimiter(',');
    gapcheck->add_option("--out", cfg.out, "Output file (default stdout)");

    auto* captures = app.add_subcommand("captures", "List captured tuples, or capture witnesses for --delta");
    captures->add_option("scheme", cfg.input, "Scheme JSON")->required();
    captures->add_option("--blocks", cfg.blocks, "Tuple length / members wanted (default 3)");
    captures->add_option("--delta", cfg.delta, "Delta-system as '1,2;1,3;...'");
    captures->add_option("--out", cfg.out, "Output file (default stdout)");

    app.add_flag("--json", cfg.json, "Machine-readable summaries");

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    try {
        if (cfg.command == "gen") return cmd_gen(cfg, out, err);
        if (cfg.command == "tree") return cmd_tree(cfg, out, err);
        if (cfg.command == "gap") return cmd_gap(cfg, out, err);
        if (cfg.command == "verify") return cmd_verify(cfg, out, err);
        if (cfg.command == "gapcheck") return cmd_gapcheck(cfg, out, err);
        if (cfg.command == "captures") return cmd_captures(cfg, out, err);
    } catch (const UsageError& e) {
        err << cfg.command << ": " << e.what() << '\n';
        return kUsage;
    } catch (const MalformedInput& e) {
        err << cfg.command << ": " << e.what() << '\n';
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        err << cfg.command << ": malformed JSON: " << e.what() << '\n';
        return kUsage;
    }
    err << "unknown command\n";
    return kUsage;
}

}  // namespace cscheme::cli
