#include "coarsedim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "coarsedim/json_io.hpp"
#include "coarsedim/service.hpp"

namespace coarsedim {

namespace {

std::string read_text(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error(Errc::not_found, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

Json read_json(const std::string& path, std::istream& in) { return parse_json(read_text(path, in)); }

FiniteMetricSpace read_space(const std::string& path, std::istream& in) { return space_from_json(read_json(path, in)); }

SolveMode to_mode(const std::string& name) {
    if (name == "exact") return SolveMode::exact;
    if (name == "heuristic") return SolveMode::heuristic;
    throw Error(Errc::invalid_input, "mode must be 'exact' or 'heuristic'");
}

TreeVariant to_variant(const std::string& name) {
    auto v = parse_variant(name);
    if (!v) throw Error(Errc::invalid_input, "unknown variant '" + name + "'");
    return *v;
}

Json violation_to_json(const Violation& v, const FiniteMetricSpace& space) {
    Json j = {{"predicate", std::string(predicate_name(v.predicate))},
              {"family", v.family},
              {"set_a", v.set_a},
              {"set_b", v.set_b},
              {"value", v.value},
              {"detail", v.detail}};
    j["p"] = v.p && *v.p < space.size() ? Json(space.id(*v.p)) : Json(nullptr);
    j["q"] = v.q && *v.q < space.size() ? Json(space.id(*v.q)) : Json(nullptr);
    return j;
}

Json report_to_json(const CoverReport& rep, const FiniteMetricSpace& space) {
    return {{"ok", rep.ok()}, {"violation", rep.violation ? violation_to_json(*rep.violation, space) : Json(nullptr)}};
}

struct Context {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;

    void emit(const Json& j) const { out << canonical_dump(j) << "\n"; }
};

using Action = std::function<int()>;

struct Registry {
    std::vector<std::pair<CLI::App*, Action>> leaves;
    void add(CLI::App* app, Action a) { leaves.emplace_back(app, std::move(a)); }
};

// ---- space ---------------------------------------------------------------

void add_space_commands(CLI::App& app, Registry& reg, const Context& ctx) {
    auto* space = app.add_subcommand("space", "Build and validate finite metric spaces");
    space->require_subcommand(1);
    auto* build = space->add_subcommand("build", "Construct a space and print its JSON");
    build->require_subcommand(1);

    auto* grid = build->add_subcommand("grid", "[-s,s]^n cap kZ^n");
    auto g = std::make_shared<std::tuple<std::size_t, Dist, Dist, std::string, std::size_t>>(1, 1, 2, "taxicab",
                                                                                             kDefaultPointCap);
    grid->add_option("--n", std::get<0>(*g), "dimension")->required();
    grid->add_option("--k", std::get<1>(*g), "lattice step")->default_val(1);
    grid->add_option("--s", std::get<2>(*g), "half width")->required();
    grid->add_option("--metric", std::get<3>(*g), "taxicab or chebyshev")->default_val("taxicab");
    grid->add_option("--point-cap", std::get<4>(*g))->default_val(kDefaultPointCap);
    reg.add(grid, [g, &ctx] {
        auto metric = parse_metric(std::get<3>(*g));
        if (!metric || *metric == MetricKind::matrix)
            throw Error(Errc::invalid_input, "metric must be 'taxicab' or 'chebyshev'");
        ctx.emit(space_to_json(build_grid_space(std::get<0>(*g), std::get<1>(*g), std::get<2>(*g), std::get<4>(*g), *metric)));
        return 0;
    });

    auto* cupc = build->add_subcommand("cupc", "union of scaled lattices c_k Z^k, k = 1..|c|, in a box");
    auto c = std::make_shared<std::tuple<std::vector<Dist>, Dist, std::size_t>>(std::vector<Dist>{}, 16, kDefaultPointCap);
    cupc->add_option("--c", std::get<0>(*c), "strictly increasing scales")->delimiter(',')->required();
    cupc->add_option("--box", std::get<1>(*c))->default_val(16);
    cupc->add_option("--point-cap", std::get<2>(*c))->default_val(kDefaultPointCap);
    reg.add(cupc, [c, &ctx] {
        const auto& scales = std::get<0>(*c);
        ctx.emit(space_to_json(build_cup_c_space(scales, scales.size(), std::get<1>(*c), std::get<2>(*c))));
        return 0;
    });

    auto* sum = build->add_subcommand("sum", "asymptotic sum of parts joined at basepoints");
    auto sm = std::make_shared<std::tuple<std::vector<std::string>, std::vector<std::string>, std::vector<Dist>>>();
    sum->add_option("--part", std::get<0>(*sm), "space JSON file (repeatable)")->required();
    sum->add_option("--basepoints", std::get<1>(*sm), "one point id per part")->delimiter(',')->required();
    sum->add_option("--gaps", std::get<2>(*sm), "gap between consecutive basepoints")->delimiter(',')->required();
    reg.add(sum, [sm, &ctx] {
        const auto& [files, base_ids, gaps] = *sm;
        if (base_ids.size() != files.size())
            throw Error(Errc::invalid_input, "need one basepoint per part");
        std::vector<FiniteMetricSpace> parts;
        std::vector<PointIndex> base;
        for (std::size_t i = 0; i < files.size(); ++i) {
            parts.push_back(read_space(files[i], ctx.in));
            base.push_back(parts.back().index_of(base_ids[i]));
        }
        ctx.emit(space_to_json(build_asymptotic_sum(parts, base, gaps)));
        return 0;
    });

    auto* net = build->add_subcommand("net", "greedy maximal r-separated subset");
    auto nt = std::make_shared<std::pair<std::string, Dist>>("-", 1);
    net->add_option("--in", nt->first, "space JSON file, '-' for stdin")->default_val("-");
    net->add_option("--r", nt->second)->required();
    reg.add(net, [nt, &ctx] {
        ctx.emit(space_to_json(greedy_r_net(read_space(nt->first, ctx.in), nt->second).net));
        return 0;
    });

    auto* validate = space->add_subcommand("validate", "exhaustive check of the metric axioms");
    auto vpath = std::make_shared<std::string>("-");
    validate->add_option("--in", *vpath)->default_val("-");
    reg.add(validate, [vpath, &ctx] {
        Json j = read_json(*vpath, ctx.in);
        FiniteMetricSpace s;
        try {
            s = space_from_json(j);
        } catch (const Error& e) {
            ctx.emit({{"ok", false}, {"violation", e.what()}, {"witness", Json::array()}});
            return 1;
        }
        auto rep = validate_metric(s);
        Json witness = Json::array();
        for (PointIndex p : rep.witness) witness.push_back(s.id(p));
        ctx.emit({{"ok", rep.ok}, {"violation", rep.ok ? Json(nullptr) : Json(rep.violation)}, {"witness", witness}});
        return rep.ok ? 0 : 1;
    });
}

// ---- cover ---------------------------------------------------------------

void add_cover_commands(CLI::App& app, Registry& reg, const Context& ctx) {
    auto* cover = app.add_subcommand("cover", "Solve, check and transform s-covers");
    cover->require_subcommand(1);

    struct SolveArgs {
        std::string space = "-";
        std::vector<Dist> s;
        Dist bound = 0;
        std::string mode = "exact";
        std::uint64_t nodes = 20'000'000;
        std::uint64_t seed = 0;
    };
    auto sa = std::make_shared<SolveArgs>();
    auto* solve = cover->add_subcommand("solve", "decide whether a D-bounded s-cover exists");
    solve->add_option("--space", sa->space, "space JSON file, '-' for stdin")->default_val("-");
    solve->add_option("--s", sa->s, "demand sequence")->delimiter(',')->required();
    solve->add_option("--bound", sa->bound, "diameter bound D")->required();
    solve->add_option("--mode", sa->mode)->default_val("exact");
    solve->add_option("--budget-nodes", sa->nodes)->default_val(20'000'000);
    solve->add_option("--seed", sa->seed)->default_val(0);
    reg.add(solve, [sa, &ctx] {
        auto space = read_space(sa->space, ctx.in);
        SolveOptions opts;
        opts.mode = to_mode(sa->mode);
        opts.node_budget = sa->nodes;
        opts.seed = sa->seed;
        ctx.emit(solve_result_to_json(solve_s_cover(space, sa->s, sa->bound, opts), space));
        return 0;
    });

    auto ca = std::make_shared<std::pair<std::string, std::string>>("-", "");
    auto* check = cover->add_subcommand("check", "validate a cover against its space");
    check->add_option("--space", ca->first)->required();
    check->add_option("--cover", ca->second)->required();
    reg.add(check, [ca, &ctx] {
        auto space = read_space(ca->first, ctx.in);
        auto rep = check_s_cover(space, cover_from_json(read_json(ca->second, ctx.in), space));
        ctx.emit(report_to_json(rep, space));
        return rep.ok() ? 0 : 1;
    });

    struct TransportArgs {
        std::string source, target, cover, map;
        Dist expand = 0;
    };
    auto ta = std::make_shared<TransportArgs>();
    auto* transport = cover->add_subcommand("transport", "push a cover forward along a coarse equivalence");
    transport->add_option("--source", ta->source)->required();
    transport->add_option("--target", ta->target)->required();
    transport->add_option("--cover", ta->cover, "cover of the source")->required();
    transport->add_option("--map", ta->map, "{\"map\", \"controls\"}")->required();
    transport->add_option("--expand", ta->expand, "bound E of the input cover's sets")->required();
    reg.add(transport, [ta, &ctx] {
        auto src = read_space(ta->source, ctx.in);
        auto dst = read_space(ta->target, ctx.in);
        auto map = coarse_map_from_json(read_json(ta->map, ctx.in), src, dst);
        auto res = transport_cover(cover_from_json(read_json(ta->cover, ctx.in), src), map, ta->expand);
        ctx.emit({{"cover", cover_to_json(res.cover, dst)}, {"degenerate", res.degenerate}});
        return 0;
    });

    auto ga = std::make_shared<std::pair<std::string, std::string>>("-", "");
    auto* glue = cover->add_subcommand("glue", "select consistent candidate covers on subsets and glue them");
    glue->add_option("--space", ga->first)->required();
    glue->add_option("--in", ga->second, "{\"subsets\": [[id...]...], \"candidates\": [[cover...]...], \"mode\"}")
        ->required();
    reg.add(glue, [ga, &ctx] {
        auto space = read_space(ga->first, ctx.in);
        Json j = read_json(ga->second, ctx.in);
        if (!j.is_object() || !j.contains("subsets") || !j.contains("candidates"))
            throw Error(Errc::invalid_input, "glue input needs 'subsets' and 'candidates'");
        std::vector<PointSet> subsets;
        for (const auto& ids : j["subsets"]) {
            PointSet set;
            for (const auto& id : ids) set.push_back(space.index_of(id.get<std::string>()));
            std::sort(set.begin(), set.end());
            subsets.push_back(std::move(set));
        }
        std::vector<std::vector<SCover>> candidates;
        for (const auto& list : j["candidates"]) {
            candidates.emplace_back();
            for (const auto& c : list) candidates.back().push_back(cover_from_json(c, space));
        }
        const std::string mode = j.value("mode", "chain");
        if (mode != "chain" && mode != "finite_sums")
            throw Error(Errc::invalid_input, "mode must be 'chain' or 'finite_sums'");
        auto res = glue_covers(space, subsets, candidates, mode == "chain" ? GlueMode::chain : GlueMode::finite_sums);
        ctx.emit({{"cover", res.cover ? cover_to_json(*res.cover, space) : Json(nullptr)},
                  {"selection", res.selection},
                  {"nodes", res.nodes}});
        return res.cover ? 0 : 1;
    });

    struct BrickArgs {
        std::size_t n = 1;
        Dist r = 1, box = 8;
        std::size_t cap = kDefaultPointCap;
        bool emit_cover = false;
    };
    auto ba = std::make_shared<BrickArgs>();
    auto* brick = cover->add_subcommand("brick", "shifted-cube cover of a lattice box by n+1 families");
    brick->add_option("--n", ba->n)->required();
    brick->add_option("--r", ba->r)->required();
    brick->add_option("--box", ba->box)->required();
    brick->add_option("--point-cap", ba->cap)->default_val(kDefaultPointCap);
    brick->add_flag("--emit-cover", ba->emit_cover, "include the cover itself");
    reg.add(brick, [ba, &ctx] {
        auto b = brick_cover(ba->n, ba->r, ba->box, ba->cap);
        auto rep = check_s_cover(b.space, b.cover);
        Json j = {{"space", b.space.label()},
                  {"points", b.space.size()},
                  {"families", b.cover.families.size()},
                  {"D", b.cover.D},
                  {"c_n", b.c_n},
                  {"check", report_to_json(rep, b.space)}};
        if (ba->emit_cover) j["cover"] = cover_to_json(b.cover, b.space);
        ctx.emit(j);
        return rep.ok() ? 0 : 1;
    });
}

// ---- tree ----------------------------------------------------------------

Sequence parse_sequence(const std::string& text) {
    Sequence s;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) continue;
        try {
            std::size_t used = 0;
            s.push_back(std::stoll(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw Error(Errc::invalid_input, "bad sequence entry '" + part + "'");
        }
    }
    return s;
}

void add_tree_commands(CLI::App& app, Registry& reg, const Context& ctx) {
    auto* tree = app.add_subcommand("tree", "Ranks and orders of finite trees");
    tree->require_subcommand(1);

    auto ra = std::make_shared<std::pair<std::string, std::string>>("-", "recursive");
    auto* rank = tree->add_subcommand("rank", "rank of every node");
    rank->add_option("--in", ra->first)->default_val("-");
    rank->add_option("--method", ra->second, "recursive, levels or kb")->default_val("recursive")
        ->check(CLI::IsMember({"recursive", "levels", "kb"}));
    reg.add(rank, [ra, &ctx] {
        auto t = tree_from_json(read_json(ra->first, ctx.in));
        auto r = ra->second == "levels" ? rank_levels(t) : ra->second == "kb" ? rank_kb_order(t) : rank_recursive(t);
        ctx.emit(rank_to_json(r));
        return 0;
    });

    auto ka = std::make_shared<std::string>("-");
    auto* kb = tree->add_subcommand("kb-sort", "nodes in Kleene-Brouwer order");
    kb->add_option("--in", *ka)->default_val("-");
    reg.add(kb, [ka, &ctx] {
        ctx.emit({{"order", kb_sorted(tree_from_json(read_json(*ka, ctx.in)))}});
        return 0;
    });

    struct EmpArgs {
        std::string space = "-";
        std::int64_t rmax = 1;
        std::size_t lmax = 1;
        Dist bound = 0;
        std::string variant = "any";
        std::string mode = "exact";
    };
    auto ea = std::make_shared<EmpArgs>();
    auto* emp = tree->add_subcommand("empirical", "infeasible demand sequences up to the caps");
    emp->add_option("--space", ea->space)->default_val("-");
    emp->add_option("--rmax", ea->rmax)->required();
    emp->add_option("--lmax", ea->lmax)->required();
    emp->add_option("--bound", ea->bound)->required();
    emp->add_option("--variant", ea->variant, "any, nondecreasing or strictly_increasing")->default_val("any");
    emp->add_option("--mode", ea->mode)->default_val("exact");
    reg.add(emp, [ea, &ctx] {
        auto space = read_space(ea->space, ctx.in);
        EmpiricalTreeConfig cfg;
        cfg.rmax = ea->rmax;
        cfg.lmax = ea->lmax;
        cfg.D = ea->bound;
        cfg.variant = to_variant(ea->variant);
        cfg.mode = to_mode(ea->mode);
        ctx.emit(empirical_report_to_json(empirical_dim_tree(space, cfg), space));
        return 0;
    });

    auto ma = std::make_shared<std::pair<std::string, std::string>>("-", "");
    auto* matrix = tree->add_subcommand("matrix", "suffix tree below a node");
    matrix->add_option("--in", ma->first)->default_val("-");
    matrix->add_option("--root", ma->second, "comma separated node")->required();
    reg.add(matrix, [ma, &ctx] {
        ctx.emit(tree_to_json(subtree_matrix(tree_from_json(read_json(ma->first, ctx.in)), parse_sequence(ma->second))));
        return 0;
    });
}

// ---- game ----------------------------------------------------------------

void add_game_commands(CLI::App& app, Registry& reg, const Context& ctx) {
    auto* game = app.add_subcommand("game", "The dimension game with A playing the least k");
    game->require_subcommand(1);

    struct PlayArgs {
        std::string space = "-";
        Dist bound = 1;
        std::size_t kcap = 1;
        Dist rmax = 1;
        std::vector<Dist> script;
        bool interactive = false;
        std::string mode = "exact";
        std::uint64_t nodes = 20'000'000;
    };
    auto pa = std::make_shared<PlayArgs>();
    auto* play = game->add_subcommand("play", "play B's radii and print the transcript");
    play->add_option("--space", pa->space)->required();
    play->add_option("--bound", pa->bound)->required();
    play->add_option("--kcap", pa->kcap)->required();
    play->add_option("--rmax", pa->rmax)->required();
    auto* script = play->add_option("--b-script", pa->script, "B's radii")->delimiter(',');
    auto* inter = play->add_flag("--interactive", pa->interactive, "read B's radii from standard input");
    script->excludes(inter);
    play->add_option("--mode", pa->mode)->default_val("exact");
    play->add_option("--budget-nodes", pa->nodes)->default_val(20'000'000);
    reg.add(play, [pa, &ctx] {
        if (!pa->interactive && pa->script.empty())
            throw CLI::RequiredError("--b-script or --interactive");
        if (pa->interactive && pa->space == "-")
            throw Error(Errc::invalid_input, "--interactive reads radii from stdin; pass the space as a file");
        auto space = read_space(pa->space, ctx.in);
        GameConfig cfg;
        cfg.space = space.label();
        cfg.bound = pa->bound;
        cfg.kcap = pa->kcap;
        cfg.rmax = pa->rmax;
        cfg.mode = to_mode(pa->mode);
        cfg.node_budget = pa->nodes;
        if (!pa->interactive) {
            ctx.emit(transcript_to_json(play_script(space, cfg, pa->script), space));
            return 0;
        }
        GameTranscript g = new_game(space, cfg);
        std::string line;
        while (g.status == GameStatus::ongoing) {
            ctx.err << "round " << g.rounds.size() + 1 << ", r = " << std::flush;
            if (!std::getline(ctx.in, line) || line.empty()) break;
            try {
                g = a_respond(b_move(g, std::stoll(line)), space);
            } catch (const Error& e) {
                ctx.err << e.code_name() << ": " << e.what() << "\n";
                continue;
            } catch (const std::exception&) {
                ctx.err << "not an integer\n";
                continue;
            }
            const Round& last = g.rounds.back();
            ctx.err << "A answers k = " << (last.k ? std::to_string(*last.k) : "none") << " ("
                    << game_status_name(g.status) << ")\n";
        }
        ctx.emit(transcript_to_json(g, space));
        return 0;
    });
}

// ---- oracle, experiment, serve --------------------------------------------

void add_oracle_commands(CLI::App& app, Registry& reg, const Context& ctx) {
    auto* oracle = app.add_subcommand("oracle", "Brute-force cross-checks");
    oracle->require_subcommand(1);
    struct RunArgs {
        std::string suite = "all";
        std::uint64_t seed = 7;
        std::size_t trials = 200;
        bool json = false;
    };
    auto ra = std::make_shared<RunArgs>();
    auto* run = oracle->add_subcommand("run", "run one suite or all of them");
    run->add_option("--suite", ra->suite)->default_val("all");
    run->add_option("--seed", ra->seed)->default_val(7);
    run->add_option("--trials", ra->trials)->default_val(200);
    run->add_flag("--json", ra->json);
    reg.add(run, [ra, &ctx] {
        auto reports = run_suites(ra->suite, ra->seed, ra->trials);
        bool all = std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.passed(); });
        if (ra->json) {
            Json list = Json::array();
            for (const auto& r : reports) list.push_back(suite_report_to_json(r));
            ctx.emit({{"passed", all}, {"suites", std::move(list)}});
        } else {
            for (const auto& r : reports) {
                ctx.out << (r.passed() ? "PASS " : "FAIL ") << r.suite << " trials=" << r.trials
                        << " failures=" << r.failures.size() << "\n";
                for (const auto& f : r.failures)
                    ctx.out << "  " << f.digest << " expected " << f.expected << " got " << f.got << "\n    "
                            << f.repro << "\n";
            }
        }
        return all ? 0 : 1;
    });
}

void add_experiment_commands(CLI::App& app, Registry& reg, const Context& ctx) {
    auto* exp = app.add_subcommand("experiment", "Exploratory harnesses");
    exp->require_subcommand(1);
    auto ca = std::make_shared<std::pair<CupcConfig, bool>>();
    auto* cupc = exp->add_subcommand("cupc", "least k over (r1, r2) grids on a union of scaled lattices");
    cupc->add_option("--c", ca->first.c)->delimiter(',')->required();
    cupc->add_option("--box", ca->first.box)->default_val(16);
    cupc->add_option("--bound", ca->first.bounds, "diameter bounds")->delimiter(',')->default_str("4,8,16");
    cupc->add_option("--rmax", ca->first.rmax)->default_val(5);
    cupc->add_option("--kcap", ca->first.kcap)->default_val(12);
    cupc->add_option("--solver-points", ca->first.solver_point_limit, "use the exact solver up to this size")
        ->default_val(200);
    cupc->add_option("--point-cap", ca->first.point_cap)->default_val(kDefaultPointCap);
    cupc->add_flag("--json", ca->second);
    reg.add(cupc, [ca, &ctx] {
        CupcConfig cfg = ca->first;
        if (cfg.bounds.empty()) cfg.bounds = {4, 8, 16};
        auto rep = run_cupc(cfg);
        if (ca->second) ctx.emit(cupc_report_to_json(rep));
        else ctx.out << format_cupc_table(rep);
        return 0;
    });
}

void add_serve_command(CLI::App& app, Registry& reg, const Context& ctx) {
    struct ServeArgs {
        std::string host = "127.0.0.1";
        int port = 8080;
        std::vector<std::string> spaces;
    };
    auto sa = std::make_shared<ServeArgs>();
    auto* serve_cmd = app.add_subcommand("serve", "HTTP/JSON game service");
    serve_cmd->add_option("--host", sa->host)->default_val("127.0.0.1");
    serve_cmd->add_option("--port", sa->port)->default_val(8080)->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--space", sa->spaces, "extra space JSON files to register");
    reg.add(serve_cmd, [sa, &ctx] {
        SessionService service;
        for (const auto& s : default_spaces()) service.add_space(s);
        for (const auto& path : sa->spaces) service.add_space(read_space(path, ctx.in));
        bool ok = serve(service, sa->host, sa->port, [&](int port, const std::function<void()>&) {
            ctx.err << "listening on " << sa->host << ":" << port << std::endl;
        });
        if (!ok) ctx.err << "cannot bind " << sa->host << ":" << sa->port << "\n";
        return ok ? 0 : 1;
    });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Workbench for finite shadows of transfinite asymptotic dimension", "coarsedim"};
    app.require_subcommand(1);
    Context ctx{in, out, err};
    Registry reg;
    add_space_commands(app, reg, ctx);
    add_cover_commands(app, reg, ctx);
    add_tree_commands(app, reg, ctx);
    add_game_commands(app, reg, ctx);
    add_oracle_commands(app, reg, ctx);
    add_experiment_commands(app, reg, ctx);
    add_serve_command(app, reg, ctx);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        for (auto& [leaf, action] : reg.leaves)
            if (leaf->parsed()) return action();
        return 2;
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    } catch (const Error& e) {
        err << canonical_dump({{"error", std::string(e.code_name())}, {"detail", e.what()}}) << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << canonical_dump({{"error", "internal"}, {"detail", e.what()}}) << "\n";
        return 1;
    }
}

}  // namespace coarsedim
