#include "cscheme/json_io.hpp"

#include <limits>

namespace cscheme::json {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field '") + key + "'");
    return j.at(key);
}

template <class T>
T number(const Json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        throw MalformedInput(std::string(what) + " must be a non-negative integer");
    }
    const auto v = j.get<std::uint64_t>();
    if (v > std::numeric_limits<T>::max()) throw MalformedInput(std::string(what) + " is out of range");
    return static_cast<T>(v);
}

template <class T>
std::vector<T> numbers(const Json& j, const char* what) {
    if (!j.is_array()) throw MalformedInput(std::string(what) + " must be an array");
    std::vector<T> out;
    for (const auto& x : j) out.push_back(number<T>(x, what));
    return out;
}

void expect_format(const Json& j, const char* format) {
    if (format_of(j) != format) {
        throw MalformedInput(std::string("expected a '") + format + "' document, got '" + format_of(j) + "'");
    }
}

Json bits_to_json(const Bits& b) {
    Json out = Json::array();
    for (auto v : b) out.push_back(v);
    return out;
}

Bits bits_from_json(const Json& j) {
    Bits out;
    for (auto v : numbers<std::uint8_t>(j, "label bit")) out.push_back(v);
    return out;
}

Json tallies_to_json(const std::vector<Tally>& ts) {
    Json out = Json::array();
    for (const auto& t : ts) out.push_back({{"name", t.name}, {"checked", t.checked}, {"violations", t.violations}});
    return out;
}

Json failures_to_json(const std::vector<Failure>& fs) {
    Json out = Json::array();
    for (const auto& f : fs) out.push_back(to_json(f));
    return out;
}

// Reorders flat (node, alpha) records into per-node tables aligned with elements.
template <class Record, class Make>
std::vector<std::vector<Record>> place_records(const ConstructionScheme& s, const Json& list, const char* what,
                                               Make make) {
    if (!list.is_array()) throw MalformedInput(std::string(what) + " must be an array");
    std::vector<std::vector<std::optional<Record>>> slots(s.nodes.size());
    for (NodeId id = 0; id < s.nodes.size(); ++id) slots[id].resize(s.nodes[id].elements.size());
    for (const auto& rec : list) {
        const auto node = number<NodeId>(field(rec, "node"), "node");
        const auto alpha = number<Ordinal>(field(rec, "alpha"), "alpha");
        if (node >= s.nodes.size()) throw MalformedInput(std::string(what) + ": node id out of range");
        const auto p = s.nodes[node].elements.position(alpha);
        if (p == s.nodes[node].elements.size()) throw MalformedInput(std::string(what) + ": alpha not in node");
        if (slots[node][p]) throw MalformedInput(std::string(what) + ": duplicate record");
        slots[node][p] = make(node, alpha, rec);
    }
    std::vector<std::vector<Record>> out(s.nodes.size());
    for (NodeId id = 0; id < s.nodes.size(); ++id) {
        for (auto& r : slots[id]) {
            if (!r) throw MalformedInput(std::string(what) + ": missing record for node " + std::to_string(id));
            out[id].push_back(std::move(*r));
        }
    }
    return out;
}

}  // namespace

Json to_json(const FinSet& s) {
    Json out = Json::array();
    for (Ordinal x : s) out.push_back(x);
    return out;
}

FinSet fin_set_from_json(const Json& j) {
    try {
        return FinSet::from_sorted(numbers<Ordinal>(j, "set element"));
    } catch (const MalformedInput&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw MalformedInput(e.what());
    }
}

Json to_json(const SchemeType& t) {
    return Json{{"K", t.max_rank()}, {"m", t.m}, {"n", t.n}, {"r", t.r}};
}

SchemeType type_from_json(const Json& j) {
    SchemeType t;
    t.m = numbers<std::uint64_t>(field(j, "m"), "m");
    t.n = numbers<std::uint64_t>(field(j, "n"), "n");
    t.r = numbers<std::uint64_t>(field(j, "r"), "r");
    if (j.contains("K") && number<std::uint64_t>(j.at("K"), "K") != t.n.size()) {
        throw MalformedInput("K disagrees with the length of n");
    }
    if (t.n.size() != t.r.size() || t.m.size() != t.n.size() + 1) {
        throw MalformedInput("type sequences must satisfy |m| = |n| + 1 = |r| + 1");
    }
    return t;
}

Json to_json(const ConstructionScheme& s) {
    Json nodes = Json::array();
    for (NodeId id = 0; id < s.nodes.size(); ++id) {
        const SchemeNode& n = s.nodes[id];
        nodes.push_back({{"id", id},
                         {"rank", n.rank},
                         {"elements", to_json(n.elements)},
                         {"root", to_json(n.root)},
                         {"children", n.children}});
    }
    return Json{{"format", kSchemeFormat}, {"version", kVersion},   {"type", to_json(s.type)},
                {"universe", s.universe},  {"top", s.top},          {"nodes", std::move(nodes)}};
}

ConstructionScheme scheme_from_json(const Json& j) {
    expect_format(j, kSchemeFormat);
    ConstructionScheme s;
    s.type = type_from_json(field(j, "type"));
    s.universe = number<std::uint32_t>(field(j, "universe"), "universe");
    s.top = number<NodeId>(field(j, "top"), "top");
    const Json& nodes = field(j, "nodes");
    if (!nodes.is_array()) throw MalformedInput("nodes must be an array");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Json& n = nodes[i];
        if (number<std::size_t>(field(n, "id"), "id") != i) throw MalformedInput("node ids must be 0..N-1 in order");
        s.nodes.push_back(SchemeNode{fin_set_from_json(field(n, "elements")),
                                     number<std::uint32_t>(field(n, "rank"), "rank"),
                                     fin_set_from_json(field(n, "root")),
                                     numbers<NodeId>(field(n, "children"), "children")});
    }
    return s;
}

Json to_json(const LabeledScheme& ls) {
    Json labels = Json::array();
    for (const auto& per_node : ls.labels) {
        for (const auto& lp : per_node) {
            labels.push_back({{"node", lp.node}, {"alpha", lp.alpha}, {"f", bits_to_json(lp.f)}, {"g", bits_to_json(lp.g)}});
        }
    }
    return Json{{"format", kLabelsFormat}, {"version", kVersion}, {"scheme", to_json(ls.scheme)},
                {"labels", std::move(labels)}};
}

LabeledScheme labels_from_json(const Json& j) {
    expect_format(j, kLabelsFormat);
    LabeledScheme ls;
    ls.scheme = scheme_from_json(field(j, "scheme"));
    ls.labels = place_records<LabelPair>(ls.scheme, field(j, "labels"), "labels",
                                         [](NodeId node, Ordinal alpha, const Json& rec) {
                                             return LabelPair{node, alpha, bits_from_json(field(rec, "f")),
                                                              bits_from_json(field(rec, "g"))};
                                         });
    return ls;
}

Json to_json(const SideFamily& sf) {
    Json pairs = Json::array();
    for (const auto& per_node : sf.pairs) {
        for (const auto& sp : per_node) {
            pairs.push_back({{"node", sp.node}, {"alpha", sp.alpha}, {"a", to_json(sp.a)}, {"b", to_json(sp.b)}});
        }
    }
    Json limit = Json::array();
    if (sf.scheme.top < sf.pairs.size() && sf.pairs[sf.scheme.top].size() == sf.scheme.universe) {
        const LimitGapFamily lim = limit_family(sf);
        for (std::size_t a = 0; a < lim.size(); ++a) {
            limit.push_back({{"alpha", a}, {"a", to_json(lim.a[a])}, {"b", to_json(lim.b[a])}});
        }
    }
    return Json{{"format", kSidesFormat}, {"version", kVersion}, {"scheme", to_json(sf.scheme)},
                {"N", sf.cuts},           {"pairs", std::move(pairs)}, {"limit", std::move(limit)}};
}

SideFamily sides_from_json(const Json& j) {
    expect_format(j, kSidesFormat);
    SideFamily sf;
    sf.scheme = scheme_from_json(field(j, "scheme"));
    sf.cuts = numbers<std::uint32_t>(field(j, "N"), "N");
    sf.pairs = place_records<SidePair>(sf.scheme, field(j, "pairs"), "pairs",
                                       [](NodeId node, Ordinal alpha, const Json& rec) {
                                           return SidePair{node, alpha, fin_set_from_json(field(rec, "a")),
                                                           fin_set_from_json(field(rec, "b"))};
                                       });
    return sf;
}

Json to_json(const FiniteGapFamily& fam) {
    Json list = Json::array();
    for (const auto& [alpha, s] : fam.sides()) list.push_back({{"index", alpha}, {"a", to_json(s.a)}, {"b", to_json(s.b)}});
    return Json{{"format", kFamilyFormat}, {"version", kVersion}, {"family", std::move(list)}};
}

FiniteGapFamily family_from_json(const Json& j) {
    const std::string fmt = format_of(j);
    const char* index_key = "index";
    const Json* list = nullptr;
    if (fmt == kFamilyFormat) {
        list = &field(j, "family");
    } else if (fmt == kSidesFormat) {
        list = &field(j, "limit");
        index_key = "alpha";
    } else {
        throw MalformedInput("expected a 'gap-family' or 'gap-sides' document, got '" + fmt + "'");
    }
    if (!list->is_array()) throw MalformedInput("family must be an array");
    std::map<Ordinal, FiniteGapFamily::Sides> sides;
    for (const auto& rec : *list) {
        const auto alpha = number<Ordinal>(field(rec, index_key), index_key);
        if (!sides.emplace(alpha, FiniteGapFamily::Sides{fin_set_from_json(field(rec, "a")),
                                                         fin_set_from_json(field(rec, "b"))})
                 .second) {
            throw MalformedInput("duplicate family index " + std::to_string(alpha));
        }
    }
    try {
        return FiniteGapFamily(std::move(sides));
    } catch (const std::invalid_argument& e) {
        throw MalformedInput(e.what());
    }
}

Json to_json(const Failure& f) {
    Json out{{"clause", f.clause}, {"detail", f.detail}};
    if (f.node) out["node"] = *f.node;
    if (f.other) out["other"] = *f.other;
    if (f.alpha) out["alpha"] = *f.alpha;
    if (f.beta) out["beta"] = *f.beta;
    if (f.rank) out["rank"] = *f.rank;
    return out;
}

Json to_json(const Report& r) {
    return Json{{"name", r.name},
                {"ok", r.ok()},
                {"checked", r.checked},
                {"failure_count", r.failures.size()},
                {"failures", failures_to_json(r.failures)},
                {"flags", failures_to_json(r.flags)}};
}

Json to_json(const ConsequenceReport& r) {
    std::size_t failures = 0;
    for (const auto& t : r.tallies) failures += t.violations;
    return Json{{"name", r.name},
                {"ok", r.ok()},
                {"failure_count", failures},
                {"tallies", tallies_to_json(r.tallies)},
                {"diagnostics", tallies_to_json(r.diagnostics)},
                {"violations", failures_to_json(r.violations)}};
}

Json to_json(const TypeReport& r) {
    Json v = Json::array();
    for (const auto& x : r.violations) v.push_back({{"clause", x.clause}, {"rank", x.rank}, {"message", x.message}});
    return Json{{"name", "validate_type"}, {"ok", r.ok()}, {"failure_count", r.violations.size()}, {"failures", v}};
}

std::string format_of(const Json& j) {
    if (j.is_object() && j.contains("format") && j.at("format").is_string()) return j.at("format").get<std::string>();
    return {};
}

std::string dump(const Json& j) {
    return j.dump(2) + "\n";
}

Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("JSON parse error: ") + e.what());
    }
}

}  // namespace cscheme::json
