#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <set>
#include <sstream>

#include "tdasp/analyze.hpp"
#include "tdasp/oracle.hpp"

using namespace tdasp;

namespace {

std::string read_file(const std::string& name) {
    std::ifstream in(std::string(TDASP_TEST_DATA) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Built {
    CnfFormula f;
    OrderingAugmentedTd atd;
    Encoding enc;
};

Built build(const std::string& dimacs, Mode mode = Mode::R, int iota = 0) {
    Built b;
    b.f = parse_dimacs(dimacs);
    TreeDecomposition td = heuristic_td(primal_graph(b.f));
    b.atd = augment(make_nice(td), mode, iota);
    assign_edges(b.atd);
    b.enc = mode == Mode::R ? encode_r(b.f, b.atd) : encode_r_prime(b.f, b.atd);
    return b;
}

const char* kF0 = "p cnf 2 1\n1 2 0\n";

}  // namespace

TEST_CASE("constructed td validates and respects the bag bound") {
    for (auto mi : std::vector<std::pair<Mode, int>>{
             {Mode::R, 0}, {Mode::RPrime, 2}, {Mode::RPrime, 3}}) {
        for (const char* dimacs : {kF0, "p cnf 1 2\n1 0\n-1 0\n"}) {
            Built b = build(dimacs, mi.first, mi.second);
            TreeDecomposition ctd = constructed_td(b.enc, b.atd);  // throws on violation
            int kmax = 0;
            for (const auto& g : b.atd.groups) kmax = std::max(kmax, g.k_prime());
            CHECK(ctd.width() + 1 <= kCertificateBagFactor * (kmax + 1));
        }
        Built e2 = build(read_file("example2.cnf"), mi.first, mi.second);
        TreeDecomposition ctd = constructed_td(e2.enc, e2.atd);
        int kmax = 0;
        for (const auto& g : e2.atd.groups) kmax = std::max(kmax, g.k_prime());
        CHECK(ctd.width() + 1 <= kCertificateBagFactor * (kmax + 1));
    }
}

TEST_CASE("empty-bag nodes give empty certificate bags") {
    // formula with an isolated variable: its bag machinery stays trivial
    Built b = build("p cnf 2 1\n1 0\n");
    TreeDecomposition ctd = constructed_td(b.enc, b.atd);
    CHECK(ctd.size() == static_cast<int>(b.atd.nodes.size()));
}

TEST_CASE("tightness width of a two-atom loop") {
    GroundProgram p;
    int a = p.intern("a"), b = p.intern("b");
    p.add_rule(a, {b}, {}, "t");
    p.add_rule(b, {a}, {}, "t");
    TreeDecomposition td;
    td.bags = {{a, b}};
    td.parent = {-1};
    td.root = 0;
    td.num_graph_vertices = 2;
    td.rebuild_children();
    CHECK(tightness_width(td, p) == 2);
}

TEST_CASE("clark baseline is tight on any td") {
    CnfFormula f = parse_dimacs(read_file("example2.cnf"));
    GroundProgram p = encode_clark(f);
    for (TdStrategy s : {TdStrategy::MinDegree, TdStrategy::MinFill}) {
        TreeDecomposition td = heuristic_td(program_primal_graph(p), s);
        REQUIRE(validate_td(program_primal_graph(p), td) == std::nullopt);
        CHECK(tightness_width(td, p) == 1);
    }
}

TEST_CASE("rprime tightness within the audited factor") {
    for (int iota : {2, 3}) {
        for (const char* dimacs : {kF0, "p cnf 3 2\n1 2 0\n-2 3 0\n"}) {
            Built b = build(dimacs, Mode::RPrime, iota);
            TreeDecomposition ctd = constructed_td(b.enc, b.atd);
            CHECK(tightness_width(ctd, b.enc.program) <= kTightnessFactor * iota);
        }
        Built e2 = build(read_file("example2.cnf"), Mode::RPrime, iota);
        TreeDecomposition ctd = constructed_td(e2.enc, e2.atd);
        CHECK(tightness_width(ctd, e2.enc.program) <= kTightnessFactor * iota);
    }
}

TEST_CASE("sccs are confined to one group and obey the audited bound") {
    for (auto mi : std::vector<std::pair<Mode, int>>{{Mode::R, 0}, {Mode::RPrime, 2}}) {
        Built b = build(read_file("example2.cnf"), mi.first, mi.second);
        auto groups = atom_groups(b.enc, b.atd);
        auto comps = sccs(dependency_graph(b.enc.program));
        // carriers per group: nodes whose orderings or original bag touch it
        std::vector<long long> carriers(b.atd.groups.size(), 0);
        for (int t = 0; t < static_cast<int>(b.atd.nodes.size()); ++t) {
            const AugNode& n = b.atd.nodes[t];
            std::set<int> touched;
            if (n.group >= 0 && (n.phi_rank || n.original)) touched.insert(n.group);
            if (n.psi_group >= 0) touched.insert(n.psi_group);
            for (int g : touched) ++carriers[g];
        }
        for (const auto& comp : comps) {
            if (comp.size() < 2) continue;
            int g = groups[comp[0]];
            CHECK(g >= 0);
            for (int a : comp) CHECK(groups[a] == g);
            int block = 0;
            for (auto [s, e] : b.atd.groups[g].blocks)
                block = std::max(block, e - s);
            CHECK(static_cast<long long>(comp.size()) <=
                  scc_size_bound(block, carriers[g]));
        }
    }
}

TEST_CASE("metrics report") {
    Built b = build(read_file("example2.cnf"));
    AnalysisReport rep = metrics(b.f, b.atd, b.enc);
    CHECK(rep.input_width == 2);
    CHECK(rep.max_group_size == 4);
    CHECK(rep.output_width >= 1);
    CHECK(rep.width_ratio ==
          doctest::Approx(static_cast<double>(rep.output_width) / rep.input_width));
    CHECK(rep.largest_scc >= 2);
    CHECK(rep.atom_count == b.enc.program.num_atoms());
    CHECK(rep.rule_count == static_cast<long long>(b.enc.program.rules.size()));
    long long sum = 0;
    for (const auto& [tag, c] : rep.rules_per_formula) sum += c;
    CHECK(sum == rep.rule_count);
    std::string js = rep.to_json();
    CHECK(js.find("\"largest_scc\"") != std::string::npos);
    CHECK(!rep.to_csv_row().empty());
}

TEST_CASE("baseline largest scc is one") {
    CnfFormula f = parse_dimacs(std::string(kF0));
    GroundProgram p = encode_clark(f);
    for (const auto& comp : sccs(dependency_graph(p))) CHECK(comp.size() == 1);
}
