#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tdasp/analyze.hpp"
#include "tdasp/oracle.hpp"

using namespace tdasp;

namespace {

struct PipelineOpts {
    std::string cnf_path;
    std::string mode = "r";
    int iota = 2;
    std::string td_path;
    std::string heuristic = "min-degree";
    std::uint64_t node_cap = 1000000;
};

void add_pipeline_flags(CLI::App* cmd, PipelineOpts& o) {
    cmd->add_option("cnf", o.cnf_path, "DIMACS CNF input")->required();
    cmd->add_option("--mode", o.mode, "reduction: r or rprime")
        ->check(CLI::IsMember({"r", "rprime"}));
    cmd->add_option("--iota", o.iota, "block size for rprime (>= 2)");
    cmd->add_option("--td", o.td_path, "PACE .td file for the primal graph");
    cmd->add_option("--heuristic", o.heuristic, "td heuristic when no --td is given")
        ->check(CLI::IsMember({"min-degree", "min-fill"}));
    cmd->add_option("--node-cap", o.node_cap, "augmented-node count guard");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out.good()) throw std::runtime_error("cannot write " + path);
    out << text;
}

struct Pipeline {
    CnfFormula f;
    TreeDecomposition td;
    OrderingAugmentedTd atd;
    Encoding enc;
};

Pipeline run_pipeline(const PipelineOpts& o) {
    Pipeline p;
    p.f = parse_dimacs(slurp(o.cnf_path));
    if (!o.td_path.empty()) {
        p.td = parse_td(slurp(o.td_path));
        auto bad = validate_td(primal_graph(p.f), p.td);
        if (bad)
            throw std::runtime_error("td check failed, condition " +
                                     std::to_string(bad->condition) + ": " + bad->detail);
    } else {
        p.td = heuristic_td(primal_graph(p.f), o.heuristic == "min-fill"
                                                   ? TdStrategy::MinFill
                                                   : TdStrategy::MinDegree);
    }
    Mode mode = o.mode == "rprime" ? Mode::RPrime : Mode::R;
    p.atd = augment(make_nice(p.td), mode, mode == Mode::RPrime ? o.iota : 0, o.node_cap);
    assign_edges(p.atd);
    p.enc = mode == Mode::RPrime ? encode_r_prime(p.f, p.atd) : encode_r(p.f, p.atd);
    return p;
}

int cmd_encode(const PipelineOpts& o, const std::string& out, bool provenance) {
    Pipeline p = run_pipeline(o);
    write_out(out, emit_text(p.enc.program, provenance));
    std::cerr << "encoded " << o.cnf_path << ": mode=" << o.mode << " width=" << p.td.width()
              << " nodes=" << p.atd.nodes.size() << " atoms=" << p.enc.program.num_atoms()
              << " rules=" << p.enc.program.rules.size() << "\n";
    return 0;
}

int cmd_baseline(const std::string& cnf, const std::string& out) {
    CnfFormula f = parse_dimacs(slurp(cnf));
    write_out(out, emit_text(encode_clark(f)));
    return 0;
}

int cmd_verify(const PipelineOpts& o) {
    Pipeline p = run_pipeline(o);
    if (p.f.num_vars > 24) throw std::runtime_error("verify: too many variables");
    auto models = enumerate_models(p.f);
    auto sets = enumerate_structured(p.f, p.atd, p.enc);
    std::map<Assignment, int> multiplicity;
    for (const auto& m : sets) ++multiplicity[decode(m, p.atd, p.enc)];
    bool multi = false;
    for (const auto& [a, c] : multiplicity)
        if (c != 1) multi = true;
    bool ok = models.size() == sets.size() && !multi;
    const char* solver = std::getenv("TDASP_SOLVER");
    std::optional<long long> external;
    if (solver && *solver) {
        external = external_count(p.enc.program, solver);
        if (external && *external != static_cast<long long>(sets.size())) ok = false;
    }
    std::cout << "models=" << models.size() << " answer_sets=" << sets.size();
    if (external) std::cout << " solver=" << *external;
    if (multi) std::cout << " multiplicity!=1";
    std::cout << (ok ? " OK" : " MISMATCH") << "\n";
    return ok ? 0 : 1;
}

int cmd_analyze(const PipelineOpts& o, const std::string& out, bool csv) {
    Pipeline p = run_pipeline(o);
    AnalysisReport rep = metrics(p.f, p.atd, p.enc);
    write_out(out, csv ? rep.to_csv_row() + "\n" : rep.to_json() + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"treewidth-decreasing SAT-to-ASP encoder"};
    app.require_subcommand(1);

    PipelineOpts enc_o;
    std::string enc_out;
    bool provenance = false;
    CLI::App* enc = app.add_subcommand("encode", "emit the ground program of R or R'");
    add_pipeline_flags(enc, enc_o);
    enc->add_option("--out", enc_out, "output file (default stdout)");
    enc->add_flag("--provenance", provenance, "annotate rules with formula tags");

    std::string base_cnf, base_out;
    CLI::App* base = app.add_subcommand("baseline", "emit the guess-and-check program");
    base->add_option("cnf", base_cnf, "DIMACS CNF input")->required();
    base->add_option("--out", base_out, "output file (default stdout)");

    PipelineOpts verify_o;
    CLI::App* verify = app.add_subcommand("verify", "compare model and answer-set counts");
    add_pipeline_flags(verify, verify_o);

    PipelineOpts ana_o;
    std::string ana_out;
    bool ana_csv = false;
    CLI::App* ana = app.add_subcommand("analyze", "emit the structural report");
    add_pipeline_flags(ana, ana_o);
    ana->add_option("--out", ana_out, "output file (default stdout)");
    ana->add_flag("--csv", ana_csv, "one CSV row instead of JSON");

    CLI::App* td = app.add_subcommand("td", "tree decomposition utilities");
    td->require_subcommand(1);
    std::string tdc_cnf, tdc_out, tdc_strategy = "min-degree";
    CLI::App* tdc = td->add_subcommand("compute", "heuristic td of the primal graph");
    tdc->add_option("cnf", tdc_cnf)->required();
    tdc->add_option("--strategy", tdc_strategy)
        ->check(CLI::IsMember({"min-degree", "min-fill"}));
    tdc->add_option("--out", tdc_out);
    std::string tdk_cnf, tdk_td;
    CLI::App* tdk = td->add_subcommand("check", "validate a td against the primal graph");
    tdk->add_option("cnf", tdk_cnf)->required();
    tdk->add_option("--td", tdk_td)->required();
    std::string tdn_td, tdn_out;
    CLI::App* tdn = td->add_subcommand("nicify", "turn a td into a nice td");
    tdn->add_option("--td", tdn_td)->required();
    tdn->add_option("--out", tdn_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (*enc) return cmd_encode(enc_o, enc_out, provenance);
        if (*base) return cmd_baseline(base_cnf, base_out);
        if (*verify) return cmd_verify(verify_o);
        if (*ana) return cmd_analyze(ana_o, ana_out, ana_csv);
        if (*tdc) {
            CnfFormula f = parse_dimacs(slurp(tdc_cnf));
            TreeDecomposition t = heuristic_td(primal_graph(f), tdc_strategy == "min-fill"
                                                                    ? TdStrategy::MinFill
                                                                    : TdStrategy::MinDegree);
            write_out(tdc_out, emit_td(t));
            std::cerr << "width=" << t.width() << " bags=" << t.size() << "\n";
            return 0;
        }
        if (*tdk) {
            CnfFormula f = parse_dimacs(slurp(tdk_cnf));
            TreeDecomposition t = parse_td(slurp(tdk_td));
            auto bad = validate_td(primal_graph(f), t);
            if (bad) {
                std::cout << "violation: condition " << bad->condition << ": " << bad->detail
                          << "\n";
                return 1;
            }
            std::cout << "ok: width=" << t.width() << "\n";
            return 0;
        }
        if (*tdn) {
            NiceTreeDecomposition n = make_nice(parse_td(slurp(tdn_td)));
            write_out(tdn_out, emit_td(n.td));
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
