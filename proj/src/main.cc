#include "ghom/bridge.hh"
#include "ghom/json_io.hh"

#include "CLI11.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ghom;

namespace {

struct Cli {
    bool json = false;
    unsigned seed = 0;
    int k = 2;
    Caps caps;
    std::function<int()> action;

    Json envelope() const { return Json{{"seed", seed}}; }

    void emit(const Json& payload, const std::string& text) const {
        if (json) {
            Json out = envelope();
            out.update(payload);
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << text << "\n";
        }
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("FileError", "cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

Json read_json(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw DomainError("InvalidJson", path + ": " + e.what());
    }
}

// accepts either schema; hypergraphs are converted to their incidence graph
IncidenceGraph read_incidence(const std::string& path) {
    Json j = read_json(path);
    if (j.is_object() && j.contains("vertices")) return to_incidence(hypergraph_from_json(j));
    return incidence_from_json(j);
}
LabeledGraph read_labeled(const std::string& path) { return labeled_from_json(read_json(path)); }
TreeDecomp read_decomp(const std::string& path) { return decomp_from_json(read_json(path)); }
GliCertPtr read_cert(const std::string& path) { return cert_from_json(read_json(path)); }
FormulaPtr read_formula(const std::string& path) { return parse_formula(read_file(path)); }

Json verdict_json(bool ok, const std::vector<DecompViolation>& violations) {
    Json v = Json::array();
    for (auto& viol : violations) v.push_back({{"condition", viol.condition}, {"detail", viol.detail}});
    return Json{{"ok", ok}, {"violations", v}};
}

std::string verdict_text(bool ok, const std::vector<DecompViolation>& violations) {
    if (ok) return "ok";
    std::string out = "invalid";
    for (auto& v : violations) out += "\n" + v.condition + ": " + v.detail;
    return out;
}

void register_hom_count(CLI::App& app, Cli& cli) {
    auto* sub = app.add_subcommand("hom-count", "exact homomorphism count, pattern into host");
    auto pattern = std::make_shared<std::string>();
    auto host = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("incidence");
    sub->add_option("--pattern", *pattern, "pattern JSON file")->required();
    sub->add_option("--host", *host, "host JSON file")->required();
    sub->add_option("--mode", *mode)->check(CLI::IsMember({"hypergraph", "incidence", "labeled"}));
    sub->callback([&cli, pattern, host, mode] {
        cli.action = [&cli, pattern, host, mode] {
            Big count;
            if (*mode == "hypergraph")
                count = count_homs_hypergraph(hypergraph_from_json(read_json(*pattern)),
                                              hypergraph_from_json(read_json(*host)), cli.caps);
            else if (*mode == "labeled")
                count = count_homs_labeled(read_labeled(*pattern), read_labeled(*host), cli.caps);
            else
                count = count_homs_incidence(read_incidence(*pattern), read_incidence(*host),
                                             cli.caps);
            cli.emit({{"count", count.str()}}, count.str());
            return 0;
        };
    });
}

void register_decomp(CLI::App& app, Cli& cli) {
    auto* grp = app.add_subcommand("decomp", "tree decomposition tools");
    grp->require_subcommand(1);

    auto graph = std::make_shared<std::string>();
    auto decomp = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("ehd");
    auto engine = std::make_shared<std::string>("exact");
    auto cap = std::make_shared<int>(8);
    auto host_a = std::make_shared<std::string>();
    auto host_b = std::make_shared<std::string>();

    auto* val = grp->add_subcommand("validate", "check the decomposition conditions");
    val->add_option("--graph", *graph)->required();
    val->add_option("--decomp", *decomp)->required();
    val->add_option("--mode", *mode)->check(CLI::IsMember({"ghd", "ehd"}));
    val->callback([&cli, graph, decomp, mode] {
        cli.action = [&cli, graph, decomp, mode] {
            TreeDecomp d = read_decomp(*decomp);
            auto v = validate(d, read_incidence(*graph),
                              *mode == "ghd" ? DecompMode::ghd : DecompMode::ehd);
            Json out = verdict_json(v.ok, v.violations);
            out["width"] = width(d);
            cli.emit(out, verdict_text(v.ok, v.violations) + "\nwidth " + std::to_string(width(d)));
            return 0;
        };
    });

    auto* sea = grp->add_subcommand("search", "find a decomposition of width <= k");
    sea->add_option("--graph", *graph)->required();
    sea->add_option("--mode", *mode)->check(CLI::IsMember({"ghd", "ehd"}));
    sea->add_option("--engine", *engine)->check(CLI::IsMember({"exact", "greedy"}));
    sea->add_option("--cap", *cap)->check(CLI::PositiveNumber);
    sea->callback([&cli, graph, mode, engine, cap] {
        cli.action = [&cli, graph, mode, engine, cap] {
            auto d = search_width(read_incidence(*graph), cli.k,
                                  *mode == "ghd" ? DecompMode::ghd : DecompMode::ehd,
                                  *engine == "greedy" ? SearchEngine::greedy : SearchEngine::exact,
                                  *cap);
            if (!d) {
                cli.emit({{"found", false}}, "none");
                return 0;
            }
            cli.emit({{"found", true}, {"decomp", decomp_to_json(*d)}, {"width", width(*d)}},
                     decomp_to_json(*d).dump(2));
            return 0;
        };
    });

    auto* nor = grp->add_subcommand("normalize", "root, binarize and make covers monotone");
    nor->add_option("--graph", *graph)->required();
    nor->add_option("--decomp", *decomp)->required();
    nor->callback([&cli, graph, decomp] {
        cli.action = [&cli, graph, decomp] {
            TreeDecomp out = normalize_binary_monotone(read_decomp(*decomp), read_incidence(*graph));
            cli.emit({{"decomp", decomp_to_json(out)}}, decomp_to_json(out).dump(2));
            return 0;
        };
    });

    auto* g2e = grp->add_subcommand("ghd2ehd", "repair a ghd into an ehd, preserving a hom gap");
    g2e->add_option("--graph", *graph)->required();
    g2e->add_option("--decomp", *decomp)->required();
    g2e->add_option("--host-a", *host_a)->required();
    g2e->add_option("--host-b", *host_b)->required();
    g2e->callback([&cli, graph, decomp, host_a, host_b] {
        cli.action = [&cli, graph, decomp, host_a, host_b] {
            auto out = ghd_to_ehd(read_incidence(*graph), read_decomp(*decomp),
                                  read_incidence(*host_a), read_incidence(*host_b));
            Json payload{{"graph", incidence_to_json(out.j2)}, {"decomp", decomp_to_json(out.d2)}};
            cli.emit(payload, payload.dump(2));
            return 0;
        };
    });
}

void register_logic(CLI::App& app, Cli& cli) {
    auto* grp = app.add_subcommand("logic", "counting-logic tools");
    grp->require_subcommand(1);

    auto graph = std::make_shared<std::string>();
    auto formula = std::make_shared<std::string>();
    auto assign = std::make_shared<std::string>();
    auto guard = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("ngck");

    auto* ev = grp->add_subcommand("eval", "evaluate a formula on a graph");
    ev->add_option("--graph", *graph)->required();
    ev->add_option("--formula", *formula)->required();
    ev->add_option("--assign", *assign, "JSON {\"red\":{i:node},\"blue\":{j:node}}");
    ev->callback([&cli, graph, formula, assign] {
        cli.action = [&cli, graph, formula, assign] {
            Interpretation m;
            m.graph = read_incidence(*graph);
            if (!assign->empty()) {
                Json a = read_json(*assign);
                for (auto& [key, v] : a.value("red", Json::object()).items())
                    m.red_assign[std::stoi(key)] = v.get<int>();
                for (auto& [key, v] : a.value("blue", Json::object()).items())
                    m.blue_assign[std::stoi(key)] = v.get<int>();
            }
            bool verdict = eval(m, read_formula(*formula));
            cli.emit({{"value", verdict}}, verdict ? "true" : "false");
            return 0;
        };
    });

    auto* nf = grp->add_subcommand("nf", "compile to the guarded normal form");
    nf->add_option("--formula", *formula)->required();
    nf->add_option("--guard", *guard, "JSON {red-index: blue-index} with domain = free reds");
    nf->callback([&cli, formula, guard] {
        cli.action = [&cli, formula, guard] {
            GuardFn f;
            if (!guard->empty())
                for (auto& [key, v] : read_json(*guard).items())
                    f[std::stoi(key)] = v.get<int>();
            auto phi = read_formula(*formula);
            auto chi = f_and(guard_formula(f), to_normal_form(phi, f, cli.k));
            cli.emit({{"formula", render_formula(chi)}}, render_formula(chi));
            return 0;
        };
    });

    auto* ck = grp->add_subcommand("check", "syntax membership check");
    ck->add_option("--formula", *formula)->required();
    ck->add_option("--mode", *mode)->check(CLI::IsMember({"gck", "ngck"}));
    ck->callback([&cli, formula, mode] {
        cli.action = [&cli, formula, mode] {
            auto v = check_syntax(read_formula(*formula), cli.k,
                                  *mode == "gck" ? LogicMode::gck : LogicMode::ngck);
            Json out{{"ok", v.ok}, {"violations", v.violations}};
            std::string text = v.ok ? "ok" : "invalid";
            for (auto& viol : v.violations) text += "\n" + viol;
            cli.emit(out, text);
            return 0;
        };
    });
}

void register_labeled(CLI::App& app, Cli& cli) {
    auto* grp = app.add_subcommand("labeled", "label-calculus certificates");
    grp->require_subcommand(1);

    auto cert = std::make_shared<std::string>();
    auto graph = std::make_shared<std::string>();
    auto decomp = std::make_shared<std::string>();

    auto* ev = grp->add_subcommand("eval-cert", "evaluate a derivation certificate");
    ev->add_option("--cert", *cert)->required();
    ev->callback([&cli, cert] {
        cli.action = [&cli, cert] {
            std::vector<std::string> warnings;
            LabeledGraph l = eval_cert(read_cert(*cert), &warnings);
            Json payload{{"graph", labeled_to_json(l)}, {"warnings", warnings}};
            cli.emit(payload, labeled_to_json(l).dump(2));
            return 0;
        };
    });

    auto* c2e = grp->add_subcommand("cert2ehd", "entangled decomposition of a certificate");
    c2e->add_option("--cert", *cert)->required();
    c2e->callback([&cli, cert] {
        cli.action = [&cli, cert] {
            auto [d, omega] = cert_to_ehd(read_cert(*cert));
            Json payload{{"decomp", decomp_to_json(d)}, {"omega", omega}, {"width", width(d)}};
            cli.emit(payload, payload.dump(2));
            return 0;
        };
    });

    auto* e2c = grp->add_subcommand("ehd2cert", "certificate from an entangled decomposition");
    e2c->add_option("--graph", *graph)->required();
    e2c->add_option("--decomp", *decomp)->required();
    e2c->callback([&cli, graph, decomp] {
        cli.action = [&cli, graph, decomp] {
            auto c = ehd_to_cert(read_incidence(*graph), read_decomp(*decomp));
            cli.emit({{"cert", cert_to_json(c)}}, cert_to_json(c).dump(2));
            return 0;
        };
    });
}

void register_quantum(CLI::App& app, Cli& cli) {
    auto* grp = app.add_subcommand("quantum", "rational combinations of labeled graphs");
    grp->require_subcommand(1);

    auto quantum = std::make_shared<std::string>();
    auto host = std::make_shared<std::string>();
    auto X = std::make_shared<std::vector<int>>();
    auto Y = std::make_shared<std::vector<int>>();

    auto* qh = grp->add_subcommand("hom", "linear hom count into a host");
    qh->add_option("--quantum", *quantum)->required();
    qh->add_option("--host", *host)->required();
    qh->callback([&cli, quantum, host] {
        cli.action = [&cli, quantum, host] {
            QuantumGraph q = quantum_from_json(read_json(*quantum));
            check_quantum(q, cli.k);
            Rat v = qhom(q, read_labeled(*host), cli.caps);
            cli.emit({{"value", rat_to_string(v)}}, rat_to_string(v));
            return 0;
        };
    });

    auto* ind = grp->add_subcommand("indicator", "interpolated 0/1 normalization");
    ind->add_option("--quantum", *quantum)->required();
    ind->add_option("--X", *X, "hom values forced to 0")->delimiter(',');
    ind->add_option("--Y", *Y, "hom values forced to 1")->delimiter(',');
    ind->callback([&cli, quantum, X, Y] {
        cli.action = [&cli, quantum, X, Y] {
            QuantumGraph q = quantum_from_json(read_json(*quantum));
            check_quantum(q, cli.k);
            QuantumGraph out = normalize_indicator(q, *X, *Y);
            cli.emit({{"quantum", quantum_to_json(out)}}, quantum_to_json(out).dump(2));
            return 0;
        };
    });
}

void register_bridge(CLI::App& app, Cli& cli) {
    auto* grp = app.add_subcommand("bridge", "compilers between counts, formulas and graphs");
    grp->require_subcommand(1);

    auto cert = std::make_shared<std::string>();
    auto formula = std::make_shared<std::string>();
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto m = std::make_shared<long long>(1);
    auto d = std::make_shared<long long>(0);
    auto max_blue = std::make_shared<int>(2);
    auto max_red = std::make_shared<int>(2);
    auto sentence = std::make_shared<std::string>();

    auto* ffc = grp->add_subcommand("formula-from-cert", "hom-count-pinning formula");
    ffc->add_option("--cert", *cert)->required();
    ffc->add_option("--m", *m)->required();
    ffc->callback([&cli, cert, m] {
        cli.action = [&cli, cert, m] {
            auto phi = formula_from_cert(read_cert(*cert), *m);
            cli.emit({{"formula", render_formula(phi)}}, render_formula(phi));
            return 0;
        };
    });

    auto* qff = grp->add_subcommand("quantum-from-formula", "satisfaction-indicating quantum graph");
    qff->add_option("--formula", *formula)->required();
    qff->add_option("--m", *m, "blue-node count of the intended hosts")->required();
    qff->add_option("--d", *d, "max blue neighbourhood size of the intended hosts")->required();
    qff->callback([&cli, formula, m, d] {
        cli.action = [&cli, formula, m, d] {
            auto cq = quantum_from_formula(read_formula(*formula), cli.k, {*m, *d});
            Json certs = Json::array();
            for (auto& c : cq.certs) certs.push_back(cert_to_json(c));
            Json payload{{"quantum", quantum_to_json(cq.q)}, {"certs", certs}};
            cli.emit(payload, quantum_to_json(cq.q).dump(2));
            return 0;
        };
    });

    auto* dis = grp->add_subcommand("distinguish", "least low-width graph separating two hosts");
    dis->add_option("--a", *a)->required();
    dis->add_option("--b", *b)->required();
    dis->add_option("--max-blue", *max_blue)->check(CLI::NonNegativeNumber);
    dis->add_option("--max-red", *max_red)->check(CLI::NonNegativeNumber);
    dis->callback([&cli, a, b, max_blue, max_red] {
        cli.action = [&cli, a, b, max_blue, max_red] {
            auto r = distinguish_by_ehw(read_incidence(*a), read_incidence(*b), cli.k, *max_blue,
                                        *max_red);
            if (!r) {
                cli.emit({{"found", false}}, "none");
                return 0;
            }
            Json payload{{"found", true},
                         {"witness", incidence_to_json(r->j)},
                         {"decomp", decomp_to_json(r->d)},
                         {"count_a", r->count_a.str()},
                         {"count_b", r->count_b.str()}};
            cli.emit(payload, payload.dump(2));
            return 0;
        };
    });

    auto* cc = grp->add_subcommand("crosscheck", "run both correspondence directions on a pair");
    cc->add_option("--a", *a)->required();
    cc->add_option("--b", *b)->required();
    cc->add_option("--max-blue", *max_blue)->check(CLI::NonNegativeNumber);
    cc->add_option("--max-red", *max_red)->check(CLI::NonNegativeNumber);
    cc->add_option("--sentence", *sentence, "separating sentence file for the forward direction");
    cc->callback([&cli, a, b, max_blue, max_red, sentence] {
        cli.action = [&cli, a, b, max_blue, max_red, sentence] {
            FormulaPtr supplied = sentence->empty() ? nullptr : read_formula(*sentence);
            auto r = crosscheck_main_theorem(read_incidence(*a), read_incidence(*b), cli.k,
                                             *max_blue, *max_red, supplied);
            Json assertions = Json::array();
            assertions.push_back({{"name", "witness found"}, {"ok", r.witness.has_value()}});
            assertions.push_back({{"name", "sentence separates"}, {"ok", r.sentence_separates}});
            assertions.push_back({{"name", "quantum component separates"}, {"ok", r.quantum_separates}});
            assertions.push_back({{"name", "component admits low-width ehd"}, {"ok", r.component_in_class}});
            Json payload{{"assertions", assertions}, {"notes", r.notes}};
            if (r.witness) {
                payload["witness"] = incidence_to_json(r.witness->j);
                payload["count_a"] = r.witness->count_a.str();
                payload["count_b"] = r.witness->count_b.str();
            }
            if (r.sentence) payload["sentence"] = render_formula(r.sentence);
            if (r.component_index >= 0) payload["component_index"] = r.component_index;
            std::string text;
            for (auto& as : assertions)
                text += as["name"].get<std::string>() + ": " +
                        (as["ok"].get<bool>() ? "yes" : "no") + "\n";
            for (auto& note : r.notes) text += "note: " + note + "\n";
            if (!text.empty()) text.pop_back();
            cli.emit(payload, text);
            return 0;
        };
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tools for guarded counting logic, entangled decompositions and "
                 "homomorphism counts"};
    app.fallthrough();
    app.require_subcommand(1);

    Cli cli;
    app.add_flag("--json", cli.json, "machine-readable JSON output");
    app.add_option("--seed", cli.seed, "seed recorded in reports");
    app.add_option("--k", cli.k, "blue-variable / width budget")->check(CLI::PositiveNumber);
    app.add_option("--cap-pat-red", cli.caps.pat_red)->check(CLI::PositiveNumber);
    app.add_option("--cap-pat-blue", cli.caps.pat_blue)->check(CLI::PositiveNumber);
    app.add_option("--cap-host-red", cli.caps.host_red)->check(CLI::PositiveNumber);
    app.add_option("--cap-host-blue", cli.caps.host_blue)->check(CLI::PositiveNumber);
    app.set_config("--config", "", "flat key=value config file; flags override");

    register_hom_count(app, cli);
    register_decomp(app, cli);
    register_logic(app, cli);
    register_labeled(app, cli);
    register_quantum(app, cli);
    register_bridge(app, cli);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return cli.action ? cli.action() : 2;
    } catch (const DomainError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
