#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tdasp/analyze.hpp"
#include "tdasp/oracle.hpp"

namespace py = pybind11;
using namespace tdasp;

namespace {

struct Pipeline {
    CnfFormula f;
    OrderingAugmentedTd atd;
    Encoding enc;
};

Pipeline run_pipeline(const std::string& cnf_text, const std::string& mode, int iota,
                      const std::string& heuristic, const std::string& td_text,
                      std::uint64_t node_cap) {
    Pipeline p;
    p.f = parse_dimacs(cnf_text);
    TreeDecomposition td;
    if (!td_text.empty()) {
        td = parse_td(td_text);
        auto bad = validate_td(primal_graph(p.f), td);
        if (bad) throw std::invalid_argument("td check failed: " + bad->detail);
    } else {
        td = heuristic_td(primal_graph(p.f), heuristic == "min-fill" ? TdStrategy::MinFill
                                                                     : TdStrategy::MinDegree);
    }
    Mode m = mode == "rprime" ? Mode::RPrime : Mode::R;
    p.atd = augment(make_nice(td), m, m == Mode::RPrime ? iota : 0, node_cap);
    assign_edges(p.atd);
    p.enc = m == Mode::RPrime ? encode_r_prime(p.f, p.atd) : encode_r(p.f, p.atd);
    return p;
}

}  // namespace

PYBIND11_MODULE(_tdasp, m) {
    m.doc() = "treewidth-decreasing SAT-to-ASP encoder";

    m.def("group_size", &group_size, py::arg("bag_size"));
    m.def("group_size_iota", &group_size_iota, py::arg("bag_size"), py::arg("iota"));
    m.def("rank_perm", &rank_perm, py::arg("perm"));
    m.def("unrank_perm", &unrank_perm, py::arg("rank"), py::arg("n"));

    m.def(
        "count_models",
        [](const std::string& cnf_text) {
            return enumerate_models(parse_dimacs(cnf_text)).size();
        },
        py::arg("cnf"));

    m.def(
        "heuristic_td",
        [](const std::string& cnf_text, const std::string& strategy) {
            CnfFormula f = parse_dimacs(cnf_text);
            return emit_td(heuristic_td(primal_graph(f), strategy == "min-fill"
                                                             ? TdStrategy::MinFill
                                                             : TdStrategy::MinDegree));
        },
        py::arg("cnf"), py::arg("strategy") = "min-degree");

    m.def(
        "nicify_td",
        [](const std::string& td_text) { return emit_td(make_nice(parse_td(td_text)).td); },
        py::arg("td"));

    m.def(
        "encode",
        [](const std::string& cnf_text, const std::string& mode, int iota,
           const std::string& heuristic, const std::string& td_text, std::uint64_t node_cap,
           bool provenance) {
            Pipeline p = run_pipeline(cnf_text, mode, iota, heuristic, td_text, node_cap);
            return emit_text(p.enc.program, provenance);
        },
        py::arg("cnf"), py::arg("mode") = "r", py::arg("iota") = 2,
        py::arg("heuristic") = "min-degree", py::arg("td") = "",
        py::arg("node_cap") = 1000000, py::arg("provenance") = false);

    m.def(
        "baseline",
        [](const std::string& cnf_text) {
            return emit_text(encode_clark(parse_dimacs(cnf_text)));
        },
        py::arg("cnf"));

    m.def(
        "verify",
        [](const std::string& cnf_text, const std::string& mode, int iota,
           const std::string& heuristic, const std::string& td_text,
           std::uint64_t node_cap) {
            Pipeline p = run_pipeline(cnf_text, mode, iota, heuristic, td_text, node_cap);
            auto models = enumerate_models(p.f);
            auto sets = enumerate_structured(p.f, p.atd, p.enc);
            py::dict out;
            out["models"] = models.size();
            out["answer_sets"] = sets.size();
            out["ok"] = models.size() == sets.size();
            return out;
        },
        py::arg("cnf"), py::arg("mode") = "r", py::arg("iota") = 2,
        py::arg("heuristic") = "min-degree", py::arg("td") = "",
        py::arg("node_cap") = 1000000);

    m.def(
        "analyze",
        [](const std::string& cnf_text, const std::string& mode, int iota,
           const std::string& heuristic, const std::string& td_text,
           std::uint64_t node_cap) {
            Pipeline p = run_pipeline(cnf_text, mode, iota, heuristic, td_text, node_cap);
            return metrics(p.f, p.atd, p.enc).to_json();
        },
        py::arg("cnf"), py::arg("mode") = "r", py::arg("iota") = 2,
        py::arg("heuristic") = "min-degree", py::arg("td") = "",
        py::arg("node_cap") = 1000000);
}
