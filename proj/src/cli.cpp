#include "qtor/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qtor/closedness.hpp"
#include "qtor/relations.hpp"
#include "qtor/tableaux.hpp"
#include "qtor/unity.hpp"

namespace qtor {

namespace {

struct Leaf {
    CLI::App* app;
    std::vector<std::string> path;
};

void add_module_opts(CLI::App* a, RunConfig& c) {
    a->add_option("--n", c.n, "rank n (odd, >= 3)");
    a->add_option("--ell", c.ell, "fundamental index l");
}

void add_window_opts(CLI::App* a, RunConfig& c) {
    a->add_option("--lmin", c.lmin, "smallest spectral index");
    a->add_option("--lmax", c.lmax, "largest spectral index");
}

void add_out_opts(CLI::App* a, RunConfig& c, std::vector<std::string> formats) {
    a->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
    a->add_option("--out", c.out, "output file (default stdout)");
}

void add_relation_opts(CLI::App* a, RunConfig& c) {
    a->add_option("--rmax", c.rmax, "|r| bound for loop indices");
    a->add_option("--ms", c.ms, "h indices m")->delimiter(',');
    a->add_option("--rel", c.rels, "relation families (default all)")
        ->delimiter(',')
        ->check(CLI::IsMember({"kx", "hh", "hx", "xpxm", "xx", "serre", "comm"}));
    a->add_flag("--all", c.all, "report every residual, not only nonzero ones");
}

std::vector<Leaf> build_app(CLI::App& app, RunConfig& c) {
    app.require_subcommand(1);
    std::vector<Leaf> leaves;
    auto leaf = [&](CLI::App* a, std::vector<std::string> path) {
        leaves.push_back({a, std::move(path)});
        return a;
    };

    auto* crystal = app.add_subcommand("crystal", "monomial crystals")->require_subcommand(1);
    for (std::string name : {"gen", "export"}) {
        auto* a = leaf(crystal->add_subcommand(name, name == "gen" ? "generate a crystal" : "write a crystal to --out"),
                       {"crystal", name});
        add_module_opts(a, c);
        add_window_opts(a, c);
        a->add_option("--level2-smax", c.level2_smax, "n=3 level-2 crystals M_s, s <= smax");
        add_out_opts(a, c, {"json", "dot", "text"});
    }

    auto* tab = app.add_subcommand("tableaux", "tableau realization")->require_subcommand(1);
    {
        auto* a = leaf(tab->add_subcommand("list", "list tableaux and their monomials"), {"tableaux", "list"});
        add_module_opts(a, c);
        a->add_option("--jmin", c.jmin, "first shift j");
        a->add_option("--jmax", c.jmax, "last shift j");
        add_out_opts(a, c, {"json", "text"});
    }

    {
        auto* a = leaf(app.add_subcommand("closed", "closedness report for M(varpi_l)"), {"closed"});
        add_module_opts(a, c);
        add_window_opts(a, c);
        add_out_opts(a, c, {"json", "text"});
    }

    auto* rep = app.add_subcommand("rep", "loop modules over the crystal")->require_subcommand(1);
    {
        auto* b = leaf(rep->add_subcommand("build", "build the thin module"), {"rep", "build"});
        add_module_opts(b, c);
        add_window_opts(b, c);
        add_out_opts(b, c, {"json"});
        auto* k = leaf(rep->add_subcommand("check", "relation suite and FR comparison"), {"rep", "check"});
        add_module_opts(k, c);
        add_window_opts(k, c);
        add_relation_opts(k, c);
        k->add_option("--order", c.order, "phi series order");
        add_out_opts(k, c, {"json"});
        auto* q = leaf(rep->add_subcommand("qchar", "q-character in the window"), {"rep", "qchar"});
        add_module_opts(q, c);
        add_window_opts(q, c);
        add_out_opts(q, c, {"json", "text"});
        auto* s5 = rep->add_subcommand("s5", "the n=3 level-2 module")->require_subcommand(1);
        auto* sb = leaf(s5->add_subcommand("build", "build"), {"rep", "s5", "build"});
        sb->add_option("--smax", c.smax, "largest s");
        add_window_opts(sb, c);
        add_out_opts(sb, c, {"json"});
        auto* sk = leaf(s5->add_subcommand("check", "relation suite and FR comparison"), {"rep", "s5", "check"});
        sk->add_option("--smax", c.smax, "largest s");
        add_window_opts(sk, c);
        add_relation_opts(sk, c);
        sk->add_option("--order", c.order, "phi series order");
        add_out_opts(sk, c, {"json"});
    }

    auto* un = app.add_subcommand("unity", "specialization at roots of unity")->require_subcommand(1);
    {
        auto* t = leaf(un->add_subcommand("thin", "thin module at a primitive pL-th root"), {"unity", "thin"});
        add_module_opts(t, c);
        t->add_option("--L", c.L, "L >= 1");
        t->add_flag("--check", c.check, "run relations and cyclic generation");
        add_relation_opts(t, c);
        add_out_opts(t, c, {"json", "text"});
        auto* s = leaf(un->add_subcommand("s5", "level-2 quotient at a primitive 4L-th root"), {"unity", "s5"});
        s->add_option("--L", c.L, "L >= 1");
        s->add_flag("--check", c.check, "run relations and cyclic generation");
        add_relation_opts(s, c);
        add_out_opts(s, c, {"json", "text"});
    }
    return leaves;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(no) + ": expected key=value");
        kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

bool given(const std::vector<std::string>& args, const std::string& flag) {
    for (auto& a : args)
        if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
}

const Leaf* selected(const std::vector<Leaf>& leaves) {
    for (auto& l : leaves)
        if (l.app->parsed()) return &l;
    return nullptr;
}

RunConfig parse_once(std::vector<std::string> args, const std::string& config) {
    RunConfig c;
    CLI::App app{"qtor: monomial crystals and loop modules of quantum toroidal sl_{n+1}"};
    auto leaves = build_app(app, c);
    std::reverse(args.begin(), args.end());  // CLI11 takes them reversed
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        throw;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    const Leaf* l = selected(leaves);
    if (!l) throw UsageError("no command given");
    c.command = l->path;
    c.config = config;
    return c;
}

void validate(RunConfig& c) {
    bool fixed_n = c.command.size() >= 2 && ((c.command[0] == "rep" && c.command[1] == "s5") ||
                                             (c.command[0] == "unity" && c.command[1] == "s5"));
    if (c.level2_smax) fixed_n = true;
    if (fixed_n) c.n = 3;
    if (c.n < 3 || c.n % 2 == 0)
        throw UsageError("--n must be odd and >= 3 (the construction assumes n = 2r+1); got " + std::to_string(c.n));
    bool uses_ell = !fixed_n;
    if (uses_ell && (c.ell < 1 || c.ell > c.n))
        throw UsageError("--ell must lie in [1, n]; got " + std::to_string(c.ell));
    if (c.lmin && c.lmax && *c.lmin > *c.lmax) throw UsageError("empty window: lmin > lmax");
    if (c.rmax < 0) throw UsageError("--rmax must be >= 0");
    for (int m : c.ms)
        if (m == 0) throw UsageError("--ms entries must be nonzero");
    if (c.order < 1) throw UsageError("--order must be >= 1");
    if (c.L < 1) throw UsageError("--L must be >= 1");
    if (c.command == std::vector<std::string>{"crystal", "export"} && c.out.empty())
        throw UsageError("crystal export needs --out");
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& in) {
    std::vector<std::string> args;
    std::string config;
    for (std::size_t k = 0; k < in.size(); ++k) {
        if (in[k] == "--config") {
            if (k + 1 >= in.size()) throw UsageError("--config needs a file");
            config = in[++k];
        } else if (in[k].rfind("--config=", 0) == 0) {
            config = in[k].substr(9);
        } else {
            args.push_back(in[k]);
        }
    }
    RunConfig c = parse_once(args, config);
    if (!config.empty()) {
        auto kv = read_config(config);
        // flags win; the config fills in what is left
        RunConfig probe;
        CLI::App app;
        auto leaves = build_app(app, probe);
        const Leaf* l = nullptr;
        for (auto& x : leaves)
            if (x.path == c.command) l = &x;
        std::vector<std::string> merged = args;
        for (auto& [k, v] : kv) {
            std::string flag = "--" + k;
            CLI::Option* opt = l->app->get_option_no_throw(flag);
            if (!opt) throw UsageError("config key '" + k + "' is not an option of " + c.command.back());
            if (given(args, flag)) continue;
            if (opt->get_expected_min() == 0) {
                if (v == "true" || v == "1") merged.push_back(flag);
                else if (v != "false" && v != "0") throw UsageError("config key '" + k + "' expects true/false");
            } else {
                merged.push_back(flag);
                merged.push_back(v);
            }
        }
        c = parse_once(merged, config);
    }
    validate(c);
    return c;
}

namespace {

Window window_of(const RunConfig& c, nlohmann::json& meta) {
    std::int64_t d = 4 * (c.n + 1);
    Window w{c.lmin.value_or(-d), c.lmax.value_or(d)};
    meta["window"] = {{"lmin", w.lmin}, {"lmax", w.lmax}, {"defaulted", !c.lmin || !c.lmax}};
    return w;
}

nlohmann::json meta_of(const RunConfig& c) {
    nlohmann::json m;
    std::string cmd;
    for (auto& s : c.command) cmd += (cmd.empty() ? "" : " ") + s;
    m["command"] = cmd;
    return m;
}

void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
    if (c.out.empty()) {
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw std::runtime_error("cannot write " + c.out);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

std::vector<Rel> rels_of(const RunConfig& c) {
    if (c.rels.empty()) return all_relations();
    std::vector<Rel> r;
    for (auto& s : c.rels) r.push_back(parse_rel(s));
    return r;
}

nlohmann::json fr_json(const LoopModule& M, const FrReport& f) {
    nlohmann::json j;
    j["checked"] = f.checked;
    j["skipped"] = f.skipped;
    nlohmann::json d = nlohmann::json::array();
    for (auto& x : f.discrepancies)
        d.push_back({{"node", M.graph.nodes[x.node].str()},
                     {"i", x.i},
                     {"sign", sgn(x.sign)},
                     {"s", x.s},
                     {"module", x.module.str()},
                     {"fr", x.fr.str()}});
    j["discrepancies"] = d;
    return j;
}

int check_module(const RunConfig& c, const LoopModule& M, nlohmann::json meta, std::ostream& out) {
    auto rep = relation_suite(M, rels_of(c), RelRanges{c.rmax, c.ms}, c.all);
    auto fr = compare_fr(M, c.order);
    nlohmann::json j;
    j["metadata"] = meta;
    j["relations"] = to_json(M, rep);
    j["fr"] = fr_json(M, fr);
    bool ok = rep.ok() && fr.discrepancies.empty();
    j["ok"] = ok;
    emit(c, out, j.dump(2));
    return ok ? exit_ok : exit_check_failed;
}

int run_unity(const RunConfig& c, const SpecializedModule& S, nlohmann::json meta, std::ostream& out) {
    nlohmann::json j;
    j["metadata"] = meta;
    j["module"] = unity_summary(S);
    bool ok = true;
    if (c.check) {
        auto rep = relation_check_eps(S, rels_of(c), RelRanges{c.rmax, c.ms}, c.all);
        auto cyc = cyclic_generation_check(S);
        j["relations"] = to_json(S, rep);
        nlohmann::json cy{{"ok", cyc.ok}, {"rank", cyc.rank}};
        if (cyc.failing) cy["failing"] = ypart_str(S.basis[*cyc.failing]);
        j["cyclic_generation"] = cy;
        ok = rep.ok() && cyc.ok;
        j["ok"] = ok;
    }
    if (c.format == "text") {
        std::ostringstream os;
        os << "dimension " << S.dim() << "\n";
        os << "root order " << S.N << "\n";
        if (c.check) {
            os << "relations " << (j["relations"]["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
            os << "cyclic generation " << (j["cyclic_generation"]["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
        }
        emit(c, out, os.str());
    } else {
        emit(c, out, j.dump(2));
    }
    return ok ? exit_ok : exit_check_failed;
}

std::string crystal_text(const CrystalGraph& g) {
    std::ostringstream os;
    os << "nodes " << g.size() << "\n";
    for (std::size_t k = 0; k < g.size(); ++k) os << k << " " << g.nodes[k].str() << (g.interior[k] ? "" : " *") << "\n";
    os << "edges " << g.edges.size() << "\n";
    for (auto& e : g.edges) os << e.src << " -" << e.i << "-> " << e.dst << "\n";
    return os.str();
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (const char* dir = std::getenv("QTOR_CYCLO_CACHE")) set_cyclotomic_cache_dir(dir);
    nlohmann::json meta = meta_of(c);
    const auto& cmd = c.command;
    auto is = [&](std::vector<std::string> v) { return cmd == v; };

    if (is({"crystal", "gen"}) || is({"crystal", "export"})) {
        Window w = window_of(c, meta);
        CrystalGraph g;
        if (c.level2_smax) {
            RootSystem rs(3, 0);
            std::vector<Monomial> anchors;
            for (int s = 0; s <= *c.level2_smax; ++s) anchors.push_back(level2_anchor(rs, s));
            g = generate(rs, anchors, w);
            meta["level2_smax"] = *c.level2_smax;
        } else {
            RootSystem rs = RootSystem::for_anchor(c.n, c.ell);
            g = generate(rs, {fundamental_anchor(rs, c.ell)}, w);
            meta["n"] = c.n;
            meta["ell"] = c.ell;
        }
        if (c.format == "dot") {
            emit(c, out, to_dot(g));
        } else if (c.format == "text") {
            emit(c, out, crystal_text(g));
        } else {
            nlohmann::json j = to_json(g);
            j["metadata"] = meta;
            emit(c, out, j.dump(2));
        }
        return exit_ok;
    }
    if (is({"tableaux", "list"})) {
        RootSystem rs = RootSystem::for_anchor(c.n, c.ell);
        nlohmann::json list = nlohmann::json::array();
        std::ostringstream os;
        for (auto& T : all_tableaux(c.n, c.ell))
            for (std::int64_t j = c.jmin; j <= c.jmax; ++j) {
                Monomial m = tab_monomial(rs, c.ell, T, j);
                list.push_back({{"tableau", tableau_str(T)}, {"j", j}, {"monomial", m.str()}});
                os << tableau_str(T) << " j=" << j << " " << m.str() << "\n";
            }
        if (c.format == "text") {
            emit(c, out, os.str());
        } else {
            nlohmann::json j;
            j["metadata"] = meta;
            j["tableaux"] = list;
            emit(c, out, j.dump(2));
        }
        return exit_ok;
    }
    if (is({"closed"})) {
        Window w = window_of(c, meta);
        auto r = closed_report(RootSystem::for_anchor(c.n, c.ell), c.ell, w);
        bool closed = r.verdict == QVerdict::closed;
        for (auto& d : r.directions)
            if (d.witness_from && d.witness_missing)
                err << "direction " << d.i << ": " << ypart_str(*d.witness_from) << " needs "
                    << ypart_str(*d.witness_missing) << "\n";
        if (!r.kashiwara.closed && r.kashiwara.from && r.kashiwara.missing)
            err << "kashiwara " << r.kashiwara.i << ": " << ypart_str(*r.kashiwara.from) << " -> "
                << ypart_str(*r.kashiwara.missing) << "\n";
        if (c.format == "text") {
            emit(c, out, "n=" + std::to_string(c.n) + " l=" + std::to_string(c.ell) + " " + qverdict_str(r.verdict));
        } else {
            nlohmann::json j = to_json(r);
            j["metadata"] = meta;
            emit(c, out, j.dump(2));
        }
        return closed ? exit_ok : exit_check_failed;
    }
    if (is({"rep", "build"}) || is({"rep", "check"}) || is({"rep", "qchar"})) {
        Window w = window_of(c, meta);
        LoopModule M = build_thin(RootSystem::for_anchor(c.n, c.ell), c.ell, w);
        if (is({"rep", "check"})) return check_module(c, M, meta, out);
        if (is({"rep", "qchar"})) {
            auto ch = qcharacter(M);
            if (c.format == "text") {
                std::ostringstream os;
                for (auto& [m, k] : ch) os << k << " " << m.str() << "\n";
                emit(c, out, os.str());
            } else {
                nlohmann::json list = nlohmann::json::array();
                for (auto& [m, k] : ch) list.push_back({{"monomial", m.str()}, {"multiplicity", k}});
                nlohmann::json j{{"metadata", meta}, {"qcharacter", list}};
                emit(c, out, j.dump(2));
            }
            return exit_ok;
        }
        nlohmann::json j{{"metadata", meta}, {"module", module_summary(M)}};
        emit(c, out, j.dump(2));
        return exit_ok;
    }
    if (is({"rep", "s5", "build"}) || is({"rep", "s5", "check"})) {
        Window w = window_of(c, meta);
        meta["smax"] = c.smax;
        LoopModule M = build_section5(c.smax, w);
        if (is({"rep", "s5", "check"})) return check_module(c, M, meta, out);
        nlohmann::json j{{"metadata", meta}, {"module", module_summary(M)}};
        emit(c, out, j.dump(2));
        return exit_ok;
    }
    if (is({"unity", "thin"})) return run_unity(c, specialize_thin(RootSystem::for_anchor(c.n, c.ell), c.ell, c.L), meta, out);
    if (is({"unity", "s5"})) return run_unity(c, specialize_section5(c.L), meta, out);
    throw UsageError("unknown command");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    try {
        c = parse_args(args);
    } catch (const CLI::CallForHelp&) {
        RunConfig dummy;
        CLI::App app{"qtor: monomial crystals and loop modules of quantum toroidal sl_{n+1}"};
        build_app(app, dummy);
        // help of the deepest subcommand named on the command line
        CLI::App* at = &app;
        for (auto& a : args) {
            if (a.empty() || a[0] == '-') continue;
            auto subs = at->get_subcommands([&](CLI::App* s) { return s->get_name() == a; });
            if (subs.empty()) continue;
            at = subs.front();
        }
        out << at->help();
        return exit_ok;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }
    try {
        return run(c, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const NotClosedError& e) {
        err << "not closed: " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
}

}  // namespace qtor
