#include "tdasp/analyze.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tdasp/ordaug.hpp"

namespace tdasp {

long long scc_size_bound(int block_size, long long carrier_nodes) {
    long long s = block_size;
    return 3 * s + s * (s - 1) + 2 * carrier_nodes * s;
}

std::string AnalysisReport::to_json() const {
    nlohmann::json j;
    j["input_width"] = input_width;
    j["max_group_size"] = max_group_size;
    j["output_width"] = output_width;
    j["width_ratio"] = width_ratio;
    j["largest_scc"] = largest_scc;
    nlohmann::json gs = nlohmann::json::object();
    for (const auto& [g, s] : group_largest_scc) gs[std::to_string(g)] = s;
    j["group_largest_scc"] = gs;
    j["tightness_width"] = tightness_width;
    j["atom_count"] = atom_count;
    j["rule_count"] = rule_count;
    nlohmann::json rf = nlohmann::json::object();
    for (const auto& [tag, c] : rules_per_formula) rf[tag] = c;
    j["rules_per_formula"] = rf;
    j["wall_seconds"] = wall_seconds;
    return j.dump(2);
}

std::string AnalysisReport::to_csv_row() const {
    std::ostringstream out;
    out << input_width << "," << max_group_size << "," << output_width << "," << width_ratio
        << "," << largest_scc << "," << tightness_width << "," << atom_count << ","
        << rule_count << "," << wall_seconds;
    return out.str();
}

UndirectedGraph program_primal_graph(const GroundProgram& p) {
    UndirectedGraph g;
    for (int a = 0; a < p.num_atoms(); ++a) g.add_vertex(a);
    for (const Rule& r : p.rules) {
        std::vector<int> at;
        if (r.head >= 0) at.push_back(r.head);
        at.insert(at.end(), r.pos.begin(), r.pos.end());
        at.insert(at.end(), r.neg.begin(), r.neg.end());
        std::sort(at.begin(), at.end());
        at.erase(std::unique(at.begin(), at.end()), at.end());
        for (size_t i = 0; i < at.size(); ++i)
            for (size_t j = i + 1; j < at.size(); ++j) g.add_edge(at[i], at[j]);
    }
    return g;
}

TreeDecomposition constructed_td(const Encoding& enc, const OrderingAugmentedTd& atd) {
    const int nn = static_cast<int>(atd.nodes.size());
    const int na = enc.program.num_atoms();

    // Every rule is anchored at its emitting node; an atom's bag region is the
    // minimal subtree connecting its anchors, which is the union of the paths
    // from each anchor to their common ancestor.
    std::vector<std::vector<int>> occ(na);
    for (const Rule& r : enc.program.rules) {
        if (r.node < 0) throw std::logic_error("constructed_td: rule without a node");
        auto touch = [&](int a) {
            if (occ[a].empty() || occ[a].back() != r.node) occ[a].push_back(r.node);
        };
        if (r.head >= 0) touch(r.head);
        for (int a : r.pos) touch(a);
        for (int a : r.neg) touch(a);
    }

    std::vector<int> depth(nn, 0);
    std::vector<int> order;
    order.reserve(nn);
    order.push_back(atd.root);
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : atd.nodes[order[i]].children) {
            depth[c] = depth[order[i]] + 1;
            order.push_back(c);
        }
    int levels = 1;
    while ((1 << levels) < nn + 1) ++levels;
    std::vector<std::vector<int>> up(levels, std::vector<int>(nn, -1));
    for (int v = 0; v < nn; ++v) up[0][v] = atd.nodes[v].parent;
    for (int k = 1; k < levels; ++k)
        for (int v : order)
            up[k][v] = up[k - 1][v] < 0 ? -1 : up[k - 1][up[k - 1][v]];
    auto lca = [&](int a, int b) {
        if (depth[a] < depth[b]) std::swap(a, b);
        int diff = depth[a] - depth[b];
        for (int k = 0; k < levels; ++k)
            if (diff & (1 << k)) a = up[k][a];
        if (a == b) return a;
        for (int k = levels - 1; k >= 0; --k)
            if (up[k][a] != up[k][b]) {
                a = up[k][a];
                b = up[k][b];
            }
        return up[0][a];
    };

    std::vector<std::set<int>> bag(nn);
    for (int a = 0; a < na; ++a) {
        if (occ[a].empty()) throw std::logic_error("constructed_td: unused atom");
        int meet = occ[a][0];
        for (int s : occ[a]) meet = lca(meet, s);
        for (int s : occ[a]) {
            int v = s;
            while (true) {
                if (!bag[v].insert(a).second) break;  // path suffix already marked
                if (v == meet) break;
                v = atd.nodes[v].parent;
            }
        }
    }

    TreeDecomposition td;
    td.num_graph_vertices = na;
    td.bags.resize(nn);
    td.parent.resize(nn);
    for (int t = 0; t < nn; ++t) {
        td.bags[t] = std::vector<int>(bag[t].begin(), bag[t].end());
        td.parent[t] = atd.nodes[t].parent;
    }
    td.root = atd.root;
    td.rebuild_children();
    auto violation = validate_td(program_primal_graph(enc.program), td);
    if (violation)
        throw std::logic_error("constructed_td: condition " +
                               std::to_string(violation->condition) + ": " +
                               violation->detail);
    return td;
}

int tightness_width(const TreeDecomposition& td, const GroundProgram& p) {
    auto ids = scc_ids(dependency_graph(p));
    int best = 0;
    std::map<int, int> count;
    for (const auto& b : td.bags) {
        count.clear();
        for (int a : b) ++count[ids[a]];
        for (int a : b) best = std::max(best, count[ids[a]]);
    }
    return best;
}

std::vector<int> atom_groups(const Encoding& enc, const OrderingAugmentedTd& atd) {
    std::vector<int> group(enc.program.num_atoms(), -1);
    std::vector<int> vertex_group(1, -1);
    for (const OrderingGroup& g : atd.groups)
        for (int v : g.vertices) {
            if (v >= static_cast<int>(vertex_group.size()))
                vertex_group.resize(v + 1, -1);
            vertex_group[v] = g.id;
        }
    auto of_vertex = [&](int v) { return v < static_cast<int>(vertex_group.size()) ? vertex_group[v] : -1; };
    for (const auto& [v, a] : enc.r_atom) group[a] = of_vertex(v);
    for (const auto& [v, a] : enc.pe_atom) group[a] = of_vertex(v);
    for (const auto& [k, a] : enc.p_atom) group[a] = of_vertex(k.second);
    for (const auto& [k, a] : enc.q_atom) group[a] = of_vertex(k.second);
    for (const auto& [k, a] : enc.o_atom) group[a] = of_vertex(k.second);
    for (const auto& [k, a] : enc.rs_atom) group[a] = k.first;
    for (const auto& [k, a] : enc.rd_atom) group[a] = k.first;
    for (const auto& [k, a] : enc.os_atom) group[a] = std::get<1>(k);
    for (const auto& [ed, atoms] : enc.edge_atom) {
        group[atoms.first] = ed.group;
        group[atoms.second] = ed.group;
    }
    return group;
}

AnalysisReport metrics(const CnfFormula& f, const OrderingAugmentedTd& atd,
                       const Encoding& enc) {
    auto start = std::chrono::steady_clock::now();
    AnalysisReport rep;
    for (const OrderingGroup& g : atd.groups) {
        rep.input_width = std::max(rep.input_width, static_cast<int>(g.bag.size()) - 1);
        rep.max_group_size = std::max(rep.max_group_size, g.k_prime());
    }
    TreeDecomposition ctd = constructed_td(enc, atd);
    rep.output_width = ctd.width();
    rep.width_ratio = rep.input_width > 0
                          ? static_cast<double>(rep.output_width) / rep.input_width
                          : 0.0;
    auto comps = sccs(dependency_graph(enc.program));
    auto groups = atom_groups(enc, atd);
    for (const auto& comp : comps) {
        rep.largest_scc = std::max(rep.largest_scc, static_cast<long long>(comp.size()));
        if (comp.size() >= 2) {
            int g = groups[comp[0]];
            auto& slot = rep.group_largest_scc[g + 1];
            slot = std::max(slot, static_cast<long long>(comp.size()));
        }
    }
    rep.tightness_width = tightness_width(ctd, enc.program);
    rep.atom_count = enc.program.num_atoms();
    rep.rule_count = static_cast<long long>(enc.program.rules.size());
    for (const Rule& r : enc.program.rules) ++rep.rules_per_formula[r.prov];
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    (void)f;
    return rep;
}

}  // namespace tdasp
