#include "tdasp/treedec.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <queue>
#include <sstream>

namespace tdasp {

int TreeDecomposition::width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
}

void TreeDecomposition::rebuild_children() {
    children.assign(bags.size(), {});
    for (int v = 0; v < size(); ++v)
        if (parent[v] >= 0) children[parent[v]].push_back(v);
}

void TreeDecomposition::reroot(int new_root) {
    std::vector<int> path;
    for (int v = new_root; v != -1; v = parent[v]) path.push_back(v);
    for (size_t i = path.size(); i-- > 1;) parent[path[i]] = path[i - 1];
    parent[new_root] = -1;
    root = new_root;
    rebuild_children();
}

TreeDecomposition parse_td(std::istream& in) {
    std::string line;
    long nbags = -1, wplus1 = -1, nverts = -1;
    std::map<int, std::vector<int>> bags_by_id;
    std::vector<std::pair<int, int>> tree_edges;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 's') {
            std::string s, td;
            ls >> s >> td >> nbags >> wplus1 >> nverts;
            if (ls.fail() || td != "td" || nbags < 0 || wplus1 < 0 || nverts < 0)
                throw ParseError("td: malformed header: " + line);
            continue;
        }
        if (nbags < 0) throw ParseError("td: content before header");
        if (line[0] == 'b') {
            char b;
            int id;
            ls >> b >> id;
            if (ls.fail() || id < 1 || id > nbags)
                throw ParseError("td: bag id out of range: " + line);
            if (bags_by_id.count(id)) throw ParseError("td: duplicate bag id");
            std::vector<int> bag;
            int v;
            while (ls >> v) {
                if (v < 1 || v > nverts)
                    throw ParseError("td: bag vertex out of range: " + std::to_string(v));
                bag.push_back(v);
            }
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            bags_by_id[id] = bag;
            continue;
        }
        int u, v;
        std::istringstream es(line);
        es >> u >> v;
        if (es.fail() || u < 1 || u > nbags || v < 1 || v > nbags)
            throw ParseError("td: bad tree edge: " + line);
        tree_edges.push_back({u, v});
    }
    if (nbags < 0) throw ParseError("td: missing header");
    if (static_cast<long>(bags_by_id.size()) != nbags)
        throw ParseError("td: header mismatch: expected " + std::to_string(nbags) + " bags");

    TreeDecomposition td;
    td.num_graph_vertices = static_cast<int>(nverts);
    td.bags.resize(nbags);
    for (auto& [id, bag] : bags_by_id) td.bags[id - 1] = std::move(bag);
    if (nbags > 0 && static_cast<long>(tree_edges.size()) != nbags - 1)
        throw ParseError("td: tree must have exactly #bags-1 edges");
    // root at bag id 1, orient by BFS
    std::vector<std::vector<int>> adj(nbags);
    for (auto [u, v] : tree_edges) {
        adj[u - 1].push_back(v - 1);
        adj[v - 1].push_back(u - 1);
    }
    td.parent.assign(nbags, -2);
    td.root = 0;
    std::queue<int> q;
    q.push(0);
    td.parent[0] = -1;
    int seen = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        ++seen;
        for (int w : adj[u])
            if (td.parent[w] == -2) {
                td.parent[w] = u;
                q.push(w);
            }
    }
    if (seen != nbags) throw ParseError("td: disconnected tree");
    int mw = -1;
    for (auto& b : td.bags) mw = std::max(mw, static_cast<int>(b.size()));
    if (nbags > 0 && mw != wplus1)
        throw ParseError("td: header mismatch: width+1 is " + std::to_string(mw) +
                         ", header says " + std::to_string(wplus1));
    td.rebuild_children();
    return td;
}

TreeDecomposition parse_td(const std::string& text) {
    std::istringstream in(text);
    return parse_td(in);
}

std::string emit_td(const TreeDecomposition& td) {
    std::ostringstream out;
    int mw = 0;
    for (const auto& b : td.bags) mw = std::max(mw, static_cast<int>(b.size()));
    // bag ids are assigned so that the root gets id 1 (parse re-roots there)
    std::vector<int> order;
    order.push_back(td.root);
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : td.children[order[i]]) order.push_back(c);
    std::vector<int> id_of(td.size());
    for (size_t i = 0; i < order.size(); ++i) id_of[order[i]] = static_cast<int>(i) + 1;
    out << "s td " << td.size() << " " << mw << " " << td.num_graph_vertices << "\n";
    for (int i = 0; i < td.size(); ++i) {
        int node = order[i];
        out << "b " << (i + 1);
        for (int v : td.bags[node]) out << " " << v;
        out << "\n";
    }
    for (int v = 0; v < td.size(); ++v)
        if (td.parent[v] >= 0) out << id_of[td.parent[v]] << " " << id_of[v] << "\n";
    return out.str();
}

namespace {

// Fill count of v in the working graph, for min-fill scoring.
long fill_of(const std::map<int, std::set<int>>& adj, int v) {
    const auto& ns = adj.at(v);
    long fill = 0;
    for (auto i = ns.begin(); i != ns.end(); ++i)
        for (auto j = std::next(i); j != ns.end(); ++j)
            if (!adj.at(*i).count(*j)) ++fill;
    return fill;
}

}  // namespace

TreeDecomposition heuristic_td(const UndirectedGraph& g, TdStrategy strategy) {
    TreeDecomposition td;
    if (g.vertices.empty()) {
        td.bags.push_back({});
        td.parent = {-1};
        td.root = 0;
        td.rebuild_children();
        return td;
    }
    td.num_graph_vertices = *g.vertices.rbegin();

    std::map<int, std::set<int>> adj;
    for (int v : g.vertices) adj[v];
    for (auto [a, b] : g.edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }

    std::vector<int> elim_order;
    std::map<int, int> node_of;  // vertex -> td node created at its elimination
    std::map<int, int> elim_pos;
    std::vector<std::vector<int>> elim_bag;
    while (!adj.empty()) {
        int best = -1;
        long best_score = -1;
        for (const auto& [v, ns] : adj) {
            long score = strategy == TdStrategy::MinDegree ? static_cast<long>(ns.size())
                                                           : fill_of(adj, v);
            if (best == -1 || score < best_score) {
                best = v;
                best_score = score;
            }
        }
        std::vector<int> bag;
        bag.push_back(best);
        for (int n : adj[best]) bag.push_back(n);
        std::sort(bag.begin(), bag.end());
        elim_pos[best] = static_cast<int>(elim_order.size());
        elim_order.push_back(best);
        elim_bag.push_back(bag);
        // connect the neighborhood, then remove
        const auto ns = adj[best];
        for (int a : ns)
            for (int b : ns)
                if (a < b) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
        for (int n : ns) adj[n].erase(best);
        adj.erase(best);
    }

    const int n = static_cast<int>(elim_order.size());
    td.bags = elim_bag;
    td.parent.assign(n, -1);
    for (int i = 0; i < n; ++i) node_of[elim_order[i]] = i;
    for (int i = 0; i < n; ++i) {
        // attach to the earliest-eliminated vertex of the bag remainder
        int attach = -1;
        for (int v : elim_bag[i]) {
            if (v == elim_order[i]) continue;
            if (attach == -1 || elim_pos[v] < elim_pos[attach]) attach = v;
        }
        if (attach != -1)
            td.parent[i] = node_of[attach];
        else if (i != n - 1)
            td.parent[i] = n - 1;  // isolated component: hang off the last bag
    }
    td.root = n - 1;
    td.rebuild_children();
    // absorb bags subsumed by a tree neighbor
    bool merged = true;
    while (merged) {
        merged = false;
        for (int v = 0; v < td.size() && !merged; ++v) {
            int p = td.parent[v];
            if (p < 0) continue;
            bool child_sub = std::includes(td.bags[p].begin(), td.bags[p].end(),
                                           td.bags[v].begin(), td.bags[v].end());
            bool parent_sub = std::includes(td.bags[v].begin(), td.bags[v].end(),
                                            td.bags[p].begin(), td.bags[p].end());
            if (!child_sub && !parent_sub) continue;
            if (parent_sub) td.bags[p] = td.bags[v];
            TreeDecomposition nt;
            nt.num_graph_vertices = td.num_graph_vertices;
            std::vector<int> remap(td.size(), -1);
            for (int u = 0; u < td.size(); ++u) {
                if (u == v) continue;
                remap[u] = static_cast<int>(nt.bags.size());
                nt.bags.push_back(td.bags[u]);
            }
            nt.parent.assign(nt.bags.size(), -1);
            for (int u = 0; u < td.size(); ++u) {
                if (u == v) continue;
                int pu = td.parent[u] == v ? p : td.parent[u];
                nt.parent[remap[u]] = pu < 0 ? -1 : remap[pu];
            }
            nt.root = remap[td.root == v ? p : td.root];
            nt.rebuild_children();
            td = std::move(nt);
            merged = true;
        }
    }
    // fixed root rule: maximum bag cardinality, ties by node id
    int best_node = 0;
    for (int v = 1; v < td.size(); ++v)
        if (td.bags[v].size() > td.bags[best_node].size()) best_node = v;
    td.reroot(best_node);
    return td;
}

std::optional<TdViolation> validate_td(const UndirectedGraph& g, const TreeDecomposition& td) {
    std::set<int> covered;
    for (const auto& b : td.bags) covered.insert(b.begin(), b.end());
    for (int v : g.vertices)
        if (!covered.count(v))
            return TdViolation{1, "vertex " + std::to_string(v) + " in no bag"};
    for (auto [a, b] : g.edges) {
        bool found = false;
        for (const auto& bag : td.bags)
            if (std::binary_search(bag.begin(), bag.end(), a) &&
                std::binary_search(bag.begin(), bag.end(), b)) {
                found = true;
                break;
            }
        if (!found)
            return TdViolation{2, "edge {" + std::to_string(a) + "," + std::to_string(b) +
                                      "} in no bag"};
    }
    // condition (iii): occurrence set of each vertex is connected
    std::map<int, std::vector<int>> occ;
    for (int t = 0; t < td.size(); ++t)
        for (int v : td.bags[t]) occ[v].push_back(t);
    for (const auto& [v, nodes] : occ) {
        std::set<int> in_set(nodes.begin(), nodes.end());
        std::set<int> reached;
        std::queue<int> q;
        q.push(nodes[0]);
        reached.insert(nodes[0]);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            std::vector<int> nbrs = td.children[u];
            if (td.parent[u] >= 0) nbrs.push_back(td.parent[u]);
            for (int w : nbrs)
                if (in_set.count(w) && !reached.count(w)) {
                    reached.insert(w);
                    q.push(w);
                }
        }
        if (reached.size() != in_set.size())
            return TdViolation{3, "occurrences of vertex " + std::to_string(v) +
                                      " are disconnected"};
    }
    return std::nullopt;
}

NiceTreeDecomposition make_nice(const TreeDecomposition& src) {
    // collapse child-into-parent for identical bags until fixpoint
    TreeDecomposition td = src;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < td.size() && !changed; ++v) {
            int p = td.parent[v];
            if (p >= 0 && td.bags[v] == td.bags[p]) {
                // splice v out: its children move to p
                std::vector<int> keep;
                TreeDecomposition nt;
                nt.num_graph_vertices = td.num_graph_vertices;
                std::vector<int> remap(td.size(), -1);
                for (int u = 0; u < td.size(); ++u) {
                    if (u == v) continue;
                    remap[u] = static_cast<int>(nt.bags.size());
                    nt.bags.push_back(td.bags[u]);
                }
                nt.parent.assign(nt.bags.size(), -1);
                for (int u = 0; u < td.size(); ++u) {
                    if (u == v) continue;
                    int pu = td.parent[u];
                    if (pu == v) pu = p;
                    nt.parent[remap[u]] = pu < 0 ? -1 : remap[pu];
                }
                nt.root = remap[td.root == v ? p : td.root];
                nt.rebuild_children();
                td = std::move(nt);
                changed = true;
            }
        }
    }
    // binarize: cascade joins, duplicated bags
    bool grew = true;
    while (grew) {
        grew = false;
        for (int v = 0; v < td.size(); ++v) {
            if (td.children[v].size() > 2) {
                std::vector<int> cs = td.children[v];
                int fresh = td.size();
                td.bags.push_back(td.bags[v]);
                td.parent.push_back(v);
                // first child stays, the rest move under the fresh join
                for (size_t i = 1; i < cs.size(); ++i) td.parent[cs[i]] = fresh;
                td.rebuild_children();
                grew = true;
                break;
            }
        }
    }
    NiceTreeDecomposition nice;
    nice.td = td;
    nice.kind.resize(td.size());
    for (int v = 0; v < td.size(); ++v) {
        size_t c = td.children[v].size();
        nice.kind[v] = c == 0 ? NodeKind::Leaf : c == 1 ? NodeKind::Inner : NodeKind::Join;
    }
    return nice;
}

std::vector<int> bag_clauses(const CnfFormula& f, const std::vector<int>& bag) {
    std::vector<int> out;
    for (int ci = 0; ci < static_cast<int>(f.clauses.size()); ++ci) {
        bool inside = true;
        for (Lit l : f.clauses[ci])
            if (!std::binary_search(bag.begin(), bag.end(), std::abs(l))) {
                inside = false;
                break;
            }
        if (inside) out.push_back(ci);
    }
    return out;
}

}  // namespace tdasp
