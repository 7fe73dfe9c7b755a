// Thin bindings: spaces, covers, trees and transcripts cross the boundary as
// canonical JSON text; the Python package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "coarsedim/cli.hpp"
#include "coarsedim/json_io.hpp"
#include "coarsedim/oracle.hpp"
#include "coarsedim/service.hpp"

namespace py = pybind11;
using namespace coarsedim;

namespace {

FiniteMetricSpace load_space(const std::string& text) { return space_from_json(parse_json(text)); }

MetricKind metric_of(const std::string& name) {
    auto m = parse_metric(name);
    if (!m) throw Error(Errc::invalid_input, "unknown metric: " + name);
    return *m;
}

TreeVariant variant_of(const std::string& name) {
    auto v = parse_variant(name);
    if (!v) throw Error(Errc::invalid_input, "unknown variant: " + name);
    return *v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    static py::handle error = py::exception<Error>(m, "CoarsedimError", PyExc_ValueError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = error(std::string(e.code_name()) + ": " + e.what());
            exc.attr("code") = std::string(e.code_name());
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    m.def("run_cli", [](const std::vector<std::string>& args, const std::string& stdin_text) {
        std::istringstream in(stdin_text);
        std::ostringstream out, err;
        int code;
        {
            py::gil_scoped_release release;
            code = run_cli(args, in, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), py::arg("stdin") = "");

    m.def("grid_space", [](std::size_t n, Dist k, Dist s, const std::string& metric) {
        return canonical_dump(space_to_json(build_grid_space(n, k, s, kDefaultPointCap, metric_of(metric))));
    }, py::arg("n"), py::arg("k"), py::arg("s"), py::arg("metric") = "taxicab");

    m.def("coords_space", [](const std::string& label, const std::vector<std::vector<Dist>>& coords,
                             const std::string& metric) {
        return canonical_dump(space_to_json(FiniteMetricSpace::from_coords(label, coords, {}, metric_of(metric))));
    }, py::arg("label"), py::arg("coords"), py::arg("metric") = "taxicab");

    m.def("solve", [](const std::string& space, const std::vector<Dist>& s, Dist D, std::uint64_t budget) {
        auto sp = load_space(space);
        SolveOptions opt;
        opt.node_budget = budget;
        SolveResult r;
        {
            py::gil_scoped_release release;
            r = solve_s_cover(sp, s, D, opt);
        }
        return canonical_dump(solve_result_to_json(r, sp));
    }, py::arg("space"), py::arg("s"), py::arg("D"), py::arg("budget_nodes") = 20'000'000);

    m.def("oracle", [](const std::string& space, const std::vector<Dist>& s, Dist D) {
        return std::string(status_name(exhaustive_cover_oracle(load_space(space), s, D)));
    });

    m.def("check_cover", [](const std::string& space, const std::string& cover) {
        auto sp = load_space(space);
        auto rep = check_s_cover(sp, cover_from_json(parse_json(cover), sp));
        if (rep.ok()) return py::make_tuple(true, std::string());
        return py::make_tuple(false, std::string(predicate_name(rep.violation->predicate)));
    });

    m.def("tree_rank", [](const std::string& tree, const std::string& method) {
        auto t = tree_from_json(parse_json(tree));
        if (method == "recursive") return canonical_dump(rank_to_json(rank_recursive(t)));
        if (method == "levels") return canonical_dump(rank_to_json(rank_levels(t)));
        if (method == "kb") return canonical_dump(rank_to_json(rank_kb_order(t)));
        throw Error(Errc::invalid_input, "unknown method: " + method);
    }, py::arg("tree"), py::arg("method") = "recursive");

    m.def("empirical_tree", [](const std::string& space, std::int64_t rmax, std::size_t lmax, Dist bound,
                               const std::string& variant) {
        auto sp = load_space(space);
        return canonical_dump(
            empirical_report_to_json(empirical_dim_tree(sp, EmpiricalTreeConfig{rmax, lmax, bound, variant_of(variant), SolveMode::exact}), sp));
    }, py::arg("space"), py::arg("rmax"), py::arg("lmax"), py::arg("bound"), py::arg("variant") = "nondecreasing");

    m.def("play", [](const std::string& space, Dist bound, std::size_t kcap, Dist rmax, const std::vector<Dist>& script) {
        auto sp = load_space(space);
        GameConfig cfg;
        cfg.space = sp.label();
        cfg.bound = bound;
        cfg.kcap = kcap;
        cfg.rmax = rmax;
        return canonical_dump(transcript_to_json(play_script(sp, cfg, script), sp));
    });

    m.def("run_suite", [](const std::string& name, std::uint64_t seed, std::size_t trials) {
        return canonical_dump(suite_report_to_json(run_suite(name, seed, trials)));
    }, py::arg("name"), py::arg("seed") = 7, py::arg("trials") = 50);

    py::class_<SessionService>(m, "Service")
        .def(py::init([](bool preload) {
            auto svc = std::make_unique<SessionService>();
            if (preload)
                for (const auto& s : default_spaces()) svc->add_space(s);
            return svc;
        }), py::arg("preload") = true)
        .def("handle", [](SessionService& svc, const std::string& method, const std::string& path,
                          const std::map<std::string, std::string>& query, const std::string& body) {
            auto r = svc.handle(method, path, query, body);
            return py::make_tuple(r.status, r.body);
        }, py::arg("method"), py::arg("path"), py::arg("query") = std::map<std::string, std::string>{},
           py::arg("body") = "");
}
