#include "ghom/json_io.hh"

#include <map>

namespace ghom {
namespace {

[[noreturn]] void bad(const std::string& msg) { throw DomainError("InvalidJson", msg); }

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) bad(std::string("missing field '") + name + "'");
    return j.at(name);
}

// id list -> id value -> dense index, sorted order
std::map<Json, int> densify(const Json& ids, const char* what) {
    if (!ids.is_array()) bad(std::string(what) + " must be an array");
    std::map<Json, int> out;
    for (const Json& id : ids) {
        if (!id.is_number_integer() && !id.is_string()) bad(std::string(what) + ": bad id");
        if (out.count(id)) bad(std::string(what) + ": duplicate id");
        out[id] = 0;
    }
    int idx = 0;
    for (auto& [id, dense] : out) dense = idx++;
    return out;
}

int lookup(const std::map<Json, int>& ids, const Json& id, const char* what) {
    auto it = ids.find(id);
    if (it == ids.end()) bad(std::string(what) + ": unknown id " + id.dump());
    return it->second;
}

// object key for an id (JSON object keys are strings)
std::string key_of(const Json& id) {
    return id.is_string() ? id.get<std::string>() : std::to_string(id.get<long long>());
}

int parse_label(const std::string& s) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) bad("bad label key '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        bad("bad label key '" + s + "'");
    } catch (const std::out_of_range&) {
        bad("bad label key '" + s + "'");
    }
}

Json assoc_nodes_to_json(const Assoc& a) {
    Json out = Json::object();
    for (auto& [label, node] : a) out[std::to_string(label)] = node;
    return out;
}

Assoc assoc_from_json(const Json& j, const std::map<Json, int>* ids, const char* what) {
    if (!j.is_object()) bad(std::string(what) + " must be an object");
    Assoc out;
    for (auto& [k, v] : j.items()) {
        int label = parse_label(k);
        int val = ids ? lookup(*ids, v, what)
                      : (v.is_number_integer() ? v.get<int>() : (bad(std::string(what) + ": bad value"), 0));
        if (assoc_get(out, label)) bad(std::string(what) + ": duplicate label");
        assoc_set(out, label, val);
    }
    return out;
}

Json range_ids(int n) {
    Json out = Json::array();
    for (int i = 0; i < n; ++i) out.push_back(i);
    return out;
}

}  // namespace

std::string rat_to_string(const Rat& r) {
    std::string s = boost::multiprecision::numerator(r).str();
    if (boost::multiprecision::denominator(r) != 1)
        s += "/" + boost::multiprecision::denominator(r).str();
    return s;
}

Rat rat_from_string(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Big(s));
        Big num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) bad("zero denominator in '" + s + "'");
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const DomainError*>(&e)) throw;
        bad("bad rational '" + s + "'");
    }
}

Json incidence_to_json(const IncidenceGraph& g) {
    Json out;
    out["red"] = range_ids(g.n_red);
    out["blue"] = range_ids(g.n_blue);
    Json edges = Json::array();
    for (auto& [e, v] : g.edges) edges.push_back(Json::array({e, v}));
    out["edges"] = edges;
    return out;
}

IncidenceGraph incidence_from_json(const Json& j) {
    auto red = densify(field(j, "red"), "red");
    auto blue = densify(field(j, "blue"), "blue");
    IncidenceGraph g;
    g.n_red = (int)red.size();
    g.n_blue = (int)blue.size();
    const Json& edges = field(j, "edges");
    if (!edges.is_array()) bad("edges must be an array");
    for (const Json& e : edges) {
        if (!e.is_array() || e.size() != 2) bad("edge must be a [blue, red] pair");
        g.edges.emplace_back(lookup(blue, e[0], "edge"), lookup(red, e[1], "edge"));
    }
    g.normalize();
    return g;
}

Json hypergraph_to_json(const Hypergraph& h) {
    Json out;
    out["vertices"] = range_ids(h.n_vertices);
    Json edges = Json::object();
    for (size_t e = 0; e < h.edges.size(); ++e) edges[std::to_string(e)] = h.edges[e];
    out["edges"] = edges;
    return out;
}

Hypergraph hypergraph_from_json(const Json& j) {
    auto verts = densify(field(j, "vertices"), "vertices");
    Hypergraph h;
    h.n_vertices = (int)verts.size();
    const Json& edges = field(j, "edges");
    if (!edges.is_object()) bad("edges must be an object");
    for (auto& [id, inc] : edges.items()) {
        if (!inc.is_array()) bad("edge incidence must be an array");
        std::vector<int> set;
        for (const Json& v : inc) set.push_back(lookup(verts, v, "edge"));
        h.edges.push_back(std::move(set));
    }
    h.normalize();
    return h;
}

Json decomp_to_json(const TreeDecomp& d) {
    Json out;
    out["nodes"] = range_ids(d.n_nodes);
    Json edges = Json::array();
    for (auto& [s, t] : d.edges) edges.push_back(Json::array({s, t}));
    out["edges"] = edges;
    Json bag = Json::object(), cover = Json::object();
    for (int t = 0; t < d.n_nodes; ++t) {
        bag[std::to_string(t)] = d.bag[t];
        cover[std::to_string(t)] = d.cover[t];
    }
    out["bag"] = bag;
    out["cover"] = cover;
    if (d.root) out["root"] = *d.root;
    return out;
}

TreeDecomp decomp_from_json(const Json& j) {
    const Json& node_ids = field(j, "nodes");
    auto nodes = densify(node_ids, "nodes");
    TreeDecomp d;
    d.n_nodes = (int)nodes.size();
    const Json& edges = field(j, "edges");
    if (!edges.is_array()) bad("edges must be an array");
    for (const Json& e : edges) {
        if (!e.is_array() || e.size() != 2) bad("tree edge must be a pair");
        d.edges.emplace_back(lookup(nodes, e[0], "tree edge"), lookup(nodes, e[1], "tree edge"));
    }
    const Json& bag = field(j, "bag");
    const Json& cover = field(j, "cover");
    if (!bag.is_object() || !cover.is_object()) bad("bag and cover must be objects");
    d.bag.resize(d.n_nodes);
    d.cover.resize(d.n_nodes);
    for (const Json& id : node_ids) {
        int t = nodes.at(id);
        std::string key = key_of(id);
        if (!bag.contains(key)) bad("bag missing node " + key);
        if (!cover.contains(key)) bad("cover missing node " + key);
        for (const Json& r : bag.at(key)) {
            if (!r.is_number_integer()) bad("bag entries must be red ids");
            d.bag[t].push_back(r.get<int>());
        }
        for (const Json& b : cover.at(key)) {
            if (!b.is_number_integer()) bad("cover entries must be blue ids");
            d.cover[t].push_back(b.get<int>());
        }
        std::sort(d.bag[t].begin(), d.bag[t].end());
        std::sort(d.cover[t].begin(), d.cover[t].end());
    }
    if (j.contains("root")) d.root = lookup(nodes, j.at("root"), "root");
    return d;
}

Json labeled_to_json(const LabeledGraph& l) {
    Json out = incidence_to_json(l.g);
    out["r"] = assoc_nodes_to_json(l.r);
    out["b"] = assoc_nodes_to_json(l.b);
    out["g"] = assoc_nodes_to_json(l.gd);
    return out;
}

LabeledGraph labeled_from_json(const Json& j) {
    LabeledGraph l;
    l.g = incidence_from_json(j);
    auto red = densify(field(j, "red"), "red");
    auto blue = densify(field(j, "blue"), "blue");
    l.r = assoc_from_json(field(j, "r"), &red, "r");
    l.b = assoc_from_json(field(j, "b"), &blue, "b");
    l.gd = assoc_from_json(field(j, "g"), nullptr, "g");
    return l;
}

Json cert_to_json(const GliCertPtr& c) {
    if (!c) bad("null certificate");
    Json out;
    switch (c->op) {
        case GliCert::Op::Base:
            out["op"] = "base";
            out["graph"] = labeled_to_json(c->base);
            break;
        case GliCert::Op::ReclaimR:
            out["op"] = "reclaimR";
            out["X"] = c->X;
            out["c"] = cert_to_json(c->c1);
            break;
        case GliCert::Op::ReclaimB:
            out["op"] = "reclaimB";
            out["X"] = c->X;
            out["c"] = cert_to_json(c->c1);
            break;
        case GliCert::Op::Switch:
            out["op"] = "switch";
            out["f"] = assoc_nodes_to_json(c->f);
            out["c"] = cert_to_json(c->c1);
            break;
        case GliCert::Op::Glue:
            out["op"] = "glue";
            out["c1"] = cert_to_json(c->c1);
            out["c2"] = cert_to_json(c->c2);
            break;
    }
    return out;
}

GliCertPtr cert_from_json(const Json& j) {
    const Json& op = field(j, "op");
    if (!op.is_string()) bad("op must be a string");
    std::string tag = op.get<std::string>();
    auto int_list = [&](const char* name) {
        std::vector<int> out;
        const Json& arr = field(j, name);
        if (!arr.is_array()) bad(std::string(name) + " must be an array");
        for (const Json& x : arr) {
            if (!x.is_number_integer()) bad(std::string(name) + " entries must be integers");
            out.push_back(x.get<int>());
        }
        return out;
    };
    if (tag == "base") return cert_base(labeled_from_json(field(j, "graph")));
    if (tag == "reclaimR") return cert_reclaim_r(cert_from_json(field(j, "c")), int_list("X"));
    if (tag == "reclaimB") return cert_reclaim_b(cert_from_json(field(j, "c")), int_list("X"));
    if (tag == "switch")
        return cert_switch(cert_from_json(field(j, "c")),
                           assoc_from_json(field(j, "f"), nullptr, "f"));
    if (tag == "glue") return cert_glue(cert_from_json(field(j, "c1")), cert_from_json(field(j, "c2")));
    bad("unknown op '" + tag + "'");
}

Json quantum_to_json(const QuantumGraph& q) {
    Json terms = Json::array();
    for (auto& [coef, component] : q.terms)
        terms.push_back({{"coef", rat_to_string(coef)}, {"component", labeled_to_json(component)}});
    return Json{{"terms", terms}};
}

QuantumGraph quantum_from_json(const Json& j) {
    const Json& terms = field(j, "terms");
    if (!terms.is_array() || terms.empty()) bad("terms must be a non-empty array");
    QuantumGraph q;
    for (const Json& t : terms) {
        const Json& coef = field(t, "coef");
        if (!coef.is_string()) bad("coef must be a 'p/q' string");
        q.terms.emplace_back(rat_from_string(coef.get<std::string>()),
                             labeled_from_json(field(t, "component")));
    }
    return q;
}

}  // namespace ghom
