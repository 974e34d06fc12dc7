// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 10 passes with a skip note when no solver is configured.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "tdasp/analyze.hpp"
#include "tdasp/oracle.hpp"

using namespace tdasp;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

std::string read_file(const std::string& name) {
    std::ifstream in(std::string(TDASP_TEST_DATA) + "/" + name);
    if (!in.good()) throw std::runtime_error("missing test data: " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Lcg {
    std::uint64_t state;
    explicit Lcg(std::uint64_t seed) : state(seed) {}
    std::uint32_t next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<std::uint32_t>(state >> 33);
    }
    int range(int lo, int hi) { return lo + static_cast<int>(next() % (hi - lo + 1)); }
};

// fixed-seed instance family: 3-6 variables, 2-8 clauses, every variable
// occurring, heuristic width at most 3
std::vector<CnfFormula> make_fixtures() {
    std::vector<CnfFormula> out;
    out.push_back(parse_dimacs(read_file("example2.cnf")));
    Lcg rng(20240911);
    while (out.size() < 201) {
        int n = rng.range(3, 6);
        int m = rng.range(2, 8);
        CnfFormula f;
        f.num_vars = n;
        bool ok = true;
        for (int ci = 0; ci < m; ++ci) {
            int len = rng.range(1, 3);
            std::set<int> vars;
            while (static_cast<int>(vars.size()) < len) vars.insert(rng.range(1, n));
            std::vector<Lit> clause;
            for (int v : vars) clause.push_back(rng.next() % 2 ? v : -v);
            f.clauses.push_back(clause);
        }
        std::set<Var> occ = f.variables();
        if (static_cast<int>(occ.size()) != n) ok = false;
        if (ok && heuristic_td(primal_graph(f)).width() > 3) ok = false;
        if (ok) out.push_back(std::move(f));
    }
    return out;
}

struct Built {
    OrderingAugmentedTd atd;
    Encoding enc;
};

Built build(const CnfFormula& f, Mode mode, int iota) {
    Built b;
    TreeDecomposition td = heuristic_td(primal_graph(f));
    b.atd = augment(make_nice(td), mode, iota);
    assign_edges(b.atd);
    b.enc = mode == Mode::R ? encode_r(f, b.atd) : encode_r_prime(f, b.atd);
    return b;
}

int max_group_size(const OrderingAugmentedTd& atd) {
    int k = 0;
    for (const auto& g : atd.groups) k = std::max(k, g.k_prime());
    return k;
}

}  // namespace

int main() {
    auto fixtures = make_fixtures();
    std::cout << "fixtures: " << fixtures.size() << " (1 running example + "
              << fixtures.size() - 1 << " generated)" << std::endl;

    struct ModeRun {
        Mode mode;
        int iota;
        const char* label;
    };
    const std::vector<ModeRun> runs = {
        {Mode::R, 0, "r"}, {Mode::RPrime, 2, "rprime2"}, {Mode::RPrime, 3, "rprime3"}};

    // per-mode artifacts reused across criteria
    bool bij_ok[3] = {true, true, true};
    std::string bij_detail[3];
    bool roundtrip_ok = true;
    std::string roundtrip_detail;
    bool checks_ok = true;
    std::string checks_detail;
    bool ctd_ok = true;
    std::string ctd_detail;
    bool scc_ok = true;
    std::string scc_detail;
    bool tight_ok = true;
    std::string tight_detail;
    long long max_structured_sets = 0;
    bool naive_checked = false;

    auto t0 = std::chrono::steady_clock::now();
    for (size_t run_i = 0; run_i < runs.size(); ++run_i) {
        const ModeRun& run = runs[run_i];
        for (size_t fi = 0; fi < fixtures.size(); ++fi) {
            const CnfFormula& f = fixtures[fi];
            Built b = build(f, run.mode, run.iota);
            auto models = enumerate_models(f);
            auto sets = enumerate_structured(f, b.atd, b.enc);
            max_structured_sets =
                std::max(max_structured_sets, static_cast<long long>(sets.size()));
            if (sets.size() != models.size() && bij_ok[run_i]) {
                bij_ok[run_i] = false;
                bij_detail[run_i] = "fixture " + std::to_string(fi) + ": models " +
                                    std::to_string(models.size()) + " vs answer sets " +
                                    std::to_string(sets.size());
            }
            if (b.enc.program.num_atoms() <= 22) {
                naive_checked = true;
                if (enumerate_naive(b.enc.program).size() != sets.size())
                    bij_ok[run_i] = false;
            }
            // criterion 3: witness/decode round trip per model
            for (const Assignment& i : models) {
                InterpSet w = witness(i, b.atd, b.enc, f);
                if (!is_answer_set(b.enc.program, w) || !(decode(w, b.atd, b.enc) == i)) {
                    if (roundtrip_ok) {
                        roundtrip_ok = false;
                        roundtrip_detail = std::string(run.label) + " fixture " +
                                           std::to_string(fi);
                    }
                    break;
                }
            }
            // criterion 9: per-answer-set checks
            for (const InterpSet& m : sets)
                if (!check_decidability(m, b.atd, b.enc) ||
                    !check_compatibility(m, b.atd, b.enc)) {
                    if (checks_ok) {
                        checks_ok = false;
                        checks_detail =
                            std::string(run.label) + " fixture " + std::to_string(fi);
                    }
                    break;
                }
            // criteria 6/7/8: structural certificates
            try {
                TreeDecomposition ctd = constructed_td(b.enc, b.atd);
                int bound = kCertificateBagFactor * (max_group_size(b.atd) + 1);
                if (ctd.width() + 1 > bound && ctd_ok) {
                    ctd_ok = false;
                    ctd_detail = std::string(run.label) + " fixture " + std::to_string(fi) +
                                 ": bag " + std::to_string(ctd.width() + 1) + " > " +
                                 std::to_string(bound);
                }
                if (run.mode == Mode::RPrime) {
                    int tw = tightness_width(ctd, b.enc.program);
                    if (tw > kTightnessFactor * run.iota && tight_ok) {
                        tight_ok = false;
                        tight_detail = std::string(run.label) + " fixture " +
                                       std::to_string(fi) + ": " + std::to_string(tw);
                    }
                }
            } catch (const std::exception& e) {
                if (ctd_ok) {
                    ctd_ok = false;
                    ctd_detail = std::string(run.label) + " fixture " + std::to_string(fi) +
                                 ": " + e.what();
                }
            }
            auto comps = sccs(dependency_graph(b.enc.program));
            auto groups = atom_groups(b.enc, b.atd);
            std::vector<long long> carriers(b.atd.groups.size(), 0);
            for (const AugNode& n : b.atd.nodes) {
                std::set<int> touched;
                if (n.group >= 0 && (n.phi_rank || n.original)) touched.insert(n.group);
                if (n.psi_group >= 0) touched.insert(n.psi_group);
                for (int g : touched) ++carriers[g];
            }
            for (const auto& comp : comps) {
                if (comp.size() < 2) continue;
                int g = groups[comp[0]];
                bool confined = g >= 0;
                for (int a : comp)
                    if (groups[a] != g) confined = false;
                long long bound = 0;
                if (confined) {
                    int block = 0;
                    for (auto [s, e] : b.atd.groups[g].blocks)
                        block = std::max(block, e - s);
                    bound = scc_size_bound(block, carriers[g]);
                }
                if ((!confined || static_cast<long long>(comp.size()) > bound) && scc_ok) {
                    scc_ok = false;
                    scc_detail = std::string(run.label) + " fixture " + std::to_string(fi);
                }
            }
        }
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    report(1, bij_ok[0],
           bij_detail[0].empty()
               ? "count equality on " + std::to_string(fixtures.size()) +
                     " fixtures, max answer sets " + std::to_string(max_structured_sets) +
                     (naive_checked ? ", naive cross-checked" : "")
               : bij_detail[0]);
    report(2, bij_ok[1] && bij_ok[2],
           bij_detail[1].empty() && bij_detail[2].empty()
               ? "iota 2 and 3 exact on the same suite"
               : bij_detail[1] + " " + bij_detail[2]);
    report(3, roundtrip_ok, roundtrip_detail.empty() ? "witness/decode round trip exact"
                                                     : roundtrip_detail);

    bool sizing = group_size(2) == 3 && group_size(3) == 4 && group_size(1) == 2;
    report(4, sizing, "group_size(2)=3 group_size(3)=4 group_size(1)=2");

    // criterion 5: golden t* fixture, byte-exact
    bool golden_ok = false;
    std::string golden_detail;
    try {
        CnfFormula f = parse_dimacs(read_file("example2.cnf"));
        TreeDecomposition td = parse_td(read_file("example2.td"));
        OrderingAugmentedTd atd = augment(make_nice(td), Mode::R);
        assign_edges(atd);
        Encoding enc = encode_r(f, atd);
        int tstar = -1;
        for (int t = 0; t < static_cast<int>(atd.nodes.size()); ++t) {
            const AugNode& n = atd.nodes[t];
            if (n.original || !n.phi_rank || *n.phi_rank != 0 || !n.children.empty())
                continue;
            if (atd.groups[n.group].bag == std::vector<int>{1, 2}) {
                tstar = t;
                break;
            }
        }
        GroundProgram sub;
        sub.atom_names = enc.program.atom_names;
        sub.atom_ids = enc.program.atom_ids;
        for (const Rule& r : enc.program.rules)
            if (r.node == tstar) sub.add_rule(r.head, r.pos, r.neg, r.prov, r.node);
        golden_ok = emit_text(sub) == read_file("example6_tstar.lp");
        if (!golden_ok) golden_detail = "emitted t* rules differ from the stored fixture";
    } catch (const std::exception& e) {
        golden_detail = e.what();
    }
    report(5, golden_ok, golden_detail.empty() ? "t* rule subset byte-exact" : golden_detail);

    bool sizing_prop = true;
    for (int bsz = 1; bsz <= 30; ++bsz) {
        int k = group_size(bsz);
        if (k * std::log2(static_cast<double>(k)) < static_cast<double>(bsz))
            sizing_prop = false;
    }
    report(6, ctd_ok && sizing_prop,
           ctd_detail.empty() ? "certificate TDs valid, bags within 16*(k'+1), sizing bound "
                                "holds to 30"
                              : ctd_detail);
    report(7, scc_ok,
           scc_detail.empty() ? "components confined per group, audited size bound holds"
                              : scc_detail);

    // criterion 8: baseline tightness on every fixture, R' factor from above
    bool clark_ok = true;
    std::string clark_detail;
    for (size_t fi = 0; fi < fixtures.size(); ++fi) {
        GroundProgram p = encode_clark(fixtures[fi]);
        TreeDecomposition td = heuristic_td(program_primal_graph(p));
        if (tightness_width(td, p) != 1) {
            clark_ok = false;
            clark_detail = "fixture " + std::to_string(fi);
            break;
        }
    }
    report(8, clark_ok && tight_ok,
           clark_detail.empty() && tight_detail.empty()
               ? "baseline tightness 1, rprime within 10*iota"
               : clark_detail + " " + tight_detail);
    report(9, checks_ok,
           checks_detail.empty() ? "decidability and compatibility on every answer set"
                                 : checks_detail);

    const char* solver = std::getenv("TDASP_SOLVER");
    if (solver && *solver) {
        bool solver_ok = true;
        std::string solver_detail = "agreement with configured solver";
        for (size_t fi = 0; fi < fixtures.size() && solver_ok; ++fi) {
            Built b = build(fixtures[fi], Mode::R, 0);
            auto got = external_count(b.enc.program, solver);
            if (!got) {
                solver_detail = "solver unavailable mid-run, treated as skip";
                break;
            }
            auto sets = enumerate_structured(fixtures[fi], b.atd, b.enc);
            if (*got != static_cast<long long>(sets.size())) {
                solver_ok = false;
                solver_detail = "fixture " + std::to_string(fi);
            }
        }
        report(10, solver_ok, solver_detail);
    } else {
        report(10, true, "no solver configured, skipped");
    }

    std::cout << "total wall time: " << elapsed << "s" << std::endl;
    return failures == 0 ? 0 : 1;
}
