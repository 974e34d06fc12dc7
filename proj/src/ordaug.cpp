#include "tdasp/ordaug.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace tdasp {

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

int group_size(int bag_size) {
    if (bag_size == 0) return 0;
    if (bag_size > 60) throw GuardError("group_size: bag too large");
    const unsigned __int128 need = static_cast<unsigned __int128>(1) << bag_size;
    unsigned __int128 fact = 1;
    for (int k = 1;; ++k) {
        fact *= static_cast<unsigned>(k);
        if (fact >= need) return k;
    }
}

std::pair<int, int> group_size_iota(int bag_size, int iota) {
    if (iota < 2) throw std::invalid_argument("group_size_iota: iota must be >= 2");
    if (bag_size == 0) return {0, 0};
    if (bag_size > 60) throw GuardError("group_size_iota: bag too large");
    const unsigned __int128 need = static_cast<unsigned __int128>(1) << bag_size;
    for (int k = 1;; ++k) {
        unsigned __int128 prod = 1;
        int rest = k;
        while (rest > 0) {
            int b = std::min(rest, iota);
            prod *= static_cast<unsigned __int128>(factorial(b));
            rest -= b;
            if (prod >= need) break;
        }
        if (prod >= need) return {k, (k + iota - 1) / iota};
    }
}

std::uint64_t rank_perm(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (perm[j] < perm[i]) ++smaller;
        rank += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
    }
    return rank;
}

std::vector<int> unrank_perm(std::uint64_t rank, int n) {
    if (n > 20 || rank >= factorial(n))
        throw std::out_of_range("unrank_perm: rank out of range");
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<int> perm;
    for (int i = n; i >= 1; --i) {
        std::uint64_t f = factorial(i - 1);
        int idx = static_cast<int>(rank / f);
        rank %= f;
        perm.push_back(pool[idx]);
        pool.erase(pool.begin() + idx);
    }
    return perm;
}

int OrderingGroup::block_of_index(int idx) const {
    for (int j = 0; j < num_blocks(); ++j)
        if (idx >= blocks[j].first && idx < blocks[j].second) return j;
    throw std::out_of_range("block_of_index");
}

std::vector<int> ordering_sequence(const OrderingGroup& g, std::uint64_t rank) {
    if (rank >= g.num_orderings) throw std::out_of_range("ordering_sequence: rank");
    // split the mixed-radix rank, first block most significant
    std::vector<std::uint64_t> parts(g.num_blocks());
    for (int j = g.num_blocks() - 1; j >= 0; --j) {
        std::uint64_t f = factorial(g.blocks[j].second - g.blocks[j].first);
        parts[j] = rank % f;
        rank /= f;
    }
    std::vector<int> seq;
    for (int j = 0; j < g.num_blocks(); ++j) {
        auto [b, e] = g.blocks[j];
        for (int p : unrank_perm(parts[j], e - b)) seq.push_back(g.vertices[b + p]);
    }
    return seq;
}

std::uint64_t ordering_rank(const OrderingGroup& g, const std::vector<int>& seq) {
    if (static_cast<int>(seq.size()) != g.k_prime())
        throw std::invalid_argument("ordering_rank: wrong length");
    std::uint64_t rank = 0;
    int pos = 0;
    for (int j = 0; j < g.num_blocks(); ++j) {
        auto [b, e] = g.blocks[j];
        std::vector<int> perm;
        for (int i = b; i < e; ++i) {
            int v = seq[pos++];
            auto it = std::find(g.vertices.begin() + b, g.vertices.begin() + e, v);
            if (it == g.vertices.end() + 0 || it >= g.vertices.begin() + e)
                throw std::invalid_argument("ordering_rank: vertex not in block");
            perm.push_back(static_cast<int>(it - (g.vertices.begin() + b)));
        }
        rank = rank * factorial(e - b) + rank_perm(perm);
    }
    return rank;
}

std::optional<Assignment> assignment_of(const OrderingGroup& g, std::uint64_t rank) {
    if (rank >= g.num_orderings) throw std::out_of_range("assignment_of: rank");
    if (g.bag.size() < 64 && rank >= (static_cast<std::uint64_t>(1) << g.bag.size()))
        return std::nullopt;
    Assignment a;
    for (size_t j = 0; j < g.bag.size(); ++j) a.set(g.bag[j], (rank >> j) & 1u);
    return a;
}

std::uint64_t rank_of_assignment(const OrderingGroup& g, const Assignment& a) {
    std::uint64_t rank = 0;
    for (size_t j = 0; j < g.bag.size(); ++j)
        if (a.value(g.bag[j])) rank |= static_cast<std::uint64_t>(1) << j;
    return rank;
}

TreeDecomposition OrderingAugmentedTd::as_td(int num_graph_vertices) const {
    TreeDecomposition td;
    td.num_graph_vertices = num_graph_vertices;
    td.bags.resize(nodes.size());
    td.parent.resize(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
        td.parent[i] = nodes[i].parent;
        const OrderingGroup* g = group_of(static_cast<int>(i));
        if (g) td.bags[i] = std::vector<int>(g->bag.begin(), g->bag.end());
    }
    td.root = root;
    td.rebuild_children();
    return td;
}

namespace {

struct GroupBuild {
    std::vector<int> region_of;  // nice node -> region id
    std::vector<int> group_of_region;
};

GroupBuild compute_regions(const NiceTreeDecomposition& ntd) {
    const auto& td = ntd.td;
    GroupBuild gb;
    gb.region_of.assign(td.size(), -1);
    int next = 0;
    for (int v = 0; v < td.size(); ++v) {
        if (gb.region_of[v] != -1) continue;
        // flood equal bags through tree edges
        gb.region_of[v] = next;
        std::vector<int> stack{v};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            std::vector<int> nbrs = td.children[u];
            if (td.parent[u] >= 0) nbrs.push_back(td.parent[u]);
            for (int w : nbrs)
                if (gb.region_of[w] == -1 && td.bags[w] == td.bags[u]) {
                    gb.region_of[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    gb.group_of_region.assign(next, -1);
    return gb;
}

}  // namespace

OrderingAugmentedTd augment(const NiceTreeDecomposition& ntd, Mode mode, int iota,
                            std::uint64_t node_cap) {
    if (mode == Mode::RPrime && iota < 2)
        throw std::invalid_argument("augment: R' needs iota >= 2");
    const auto& td = ntd.td;
    OrderingAugmentedTd atd;
    atd.mode = mode;
    atd.iota = mode == Mode::RPrime ? iota : 0;

    GroupBuild gb = compute_regions(ntd);
    int next_vertex = 1;
    std::vector<int> group_of_nice(td.size(), -1);
    for (int v = 0; v < td.size(); ++v) {
        int r = gb.region_of[v];
        if (gb.group_of_region[r] == -1 && !td.bags[v].empty()) {
            OrderingGroup g;
            g.id = static_cast<int>(atd.groups.size());
            g.bag = td.bags[v];
            int k;
            if (mode == Mode::R) {
                k = group_size(static_cast<int>(g.bag.size()));
            } else {
                k = group_size_iota(static_cast<int>(g.bag.size()), iota).first;
            }
            if (k > 20) throw GuardError("augment: group size too large");
            for (int i = 0; i < k; ++i) g.vertices.push_back(next_vertex++);
            int step = mode == Mode::R ? k : iota;
            for (int b = 0; b < k; b += step)
                g.blocks.push_back({b, std::min(k, b + step)});
            g.num_orderings = 1;
            for (auto [b, e] : g.blocks) g.num_orderings *= factorial(e - b);
            gb.group_of_region[r] = g.id;
            atd.groups.push_back(std::move(g));
        }
        group_of_nice[v] = gb.group_of_region[r];
    }

    auto ord_count = [&](int nice_node) -> std::uint64_t {
        int g = group_of_nice[nice_node];
        return g < 0 ? 1 : atd.groups[g].num_orderings;
    };

    // size guard before building anything
    unsigned __int128 estimate = td.size();
    for (int v = 0; v < td.size(); ++v) {
        for (int c : td.children[v])
            if (gb.region_of[v] != gb.region_of[c])
                estimate += static_cast<unsigned __int128>(ord_count(v)) * ord_count(c);
        if (td.children[v].empty() && group_of_nice[v] >= 0) estimate += ord_count(v);
        if (estimate > node_cap)
            throw GuardError("augment: estimated node count exceeds cap (" +
                             std::to_string(node_cap) + ")");
    }

    // materialize original nodes first, preserving indices
    atd.nodes.resize(td.size());
    for (int v = 0; v < td.size(); ++v) {
        atd.nodes[v].original = true;
        atd.nodes[v].group = group_of_nice[v];
        atd.nodes[v].parent = -1;
    }
    atd.root = td.root;

    auto add_chain = [&](int parent_orig, int child_orig) {
        // pair chain, lexicographic by (phi rank, psi rank), index 0 at the bottom
        int pg = group_of_nice[parent_orig];
        int cg = group_of_nice[child_orig];
        std::uint64_t np = pg < 0 ? 1 : atd.groups[pg].num_orderings;
        std::uint64_t nc = cg < 0 ? 1 : atd.groups[cg].num_orderings;
        int below = child_orig >= 0 ? child_orig : -1;
        int top = -1;
        for (std::uint64_t i = 0; i < np * nc; ++i) {
            AugNode n;
            n.original = false;
            n.group = pg;
            n.chain_base = child_orig;
            if (pg >= 0) {
                n.phi_rank = i / nc;
                n.phi_seq = ordering_sequence(atd.groups[pg], *n.phi_rank);
            }
            if (cg >= 0) {
                n.psi_group = cg;
                n.psi_rank = i % nc;
                n.psi_seq = ordering_sequence(atd.groups[cg], *n.psi_rank);
            }
            int id = static_cast<int>(atd.nodes.size());
            atd.nodes.push_back(std::move(n));
            if (below >= 0) atd.nodes[below].parent = id;
            below = id;
            top = id;
        }
        return top;  // -1 when the chain is empty (cannot happen here)
    };

    for (int v = 0; v < td.size(); ++v) {
        for (int c : td.children[v]) {
            if (gb.region_of[v] == gb.region_of[c]) {
                atd.nodes[c].parent = v;  // region-internal edge: no chain
            } else {
                int top = add_chain(v, c);
                atd.nodes[top].parent = v;
            }
        }
        if (td.children[v].empty() && group_of_nice[v] >= 0) {
            // leaf chain: phi only, rank increasing upward
            const OrderingGroup& g = atd.groups[group_of_nice[v]];
            int below = -1, top = -1;
            for (std::uint64_t i = 0; i < g.num_orderings; ++i) {
                AugNode n;
                n.original = false;
                n.group = g.id;
                n.phi_rank = i;
                n.phi_seq = ordering_sequence(g, i);
                int id = static_cast<int>(atd.nodes.size());
                atd.nodes.push_back(std::move(n));
                if (below >= 0) atd.nodes[below].parent = id;
                below = id;
                top = id;
            }
            atd.nodes[top].parent = v;
        }
    }

    // children lists + deterministic post-order + stable names
    for (auto& n : atd.nodes) n.children.clear();
    for (int i = 0; i < static_cast<int>(atd.nodes.size()); ++i)
        if (atd.nodes[i].parent >= 0) atd.nodes[atd.nodes[i].parent].children.push_back(i);
    for (auto& n : atd.nodes) std::sort(n.children.begin(), n.children.end());
    atd.post_order.clear();
    std::vector<std::pair<int, size_t>> stack{{atd.root, 0}};
    while (!stack.empty()) {
        auto& [u, ci] = stack.back();
        if (ci < atd.nodes[u].children.size()) {
            int c = atd.nodes[u].children[ci++];
            stack.push_back({c, 0});
        } else {
            atd.post_order.push_back(u);
            stack.pop_back();
        }
    }
    atd.node_name.assign(atd.nodes.size(), 0);
    for (size_t i = 0; i < atd.post_order.size(); ++i)
        atd.node_name[atd.post_order[i]] = static_cast<int>(i) + 1;
    return atd;
}

void assign_edges(OrderingAugmentedTd& atd) {
    std::set<OrdEdge> claimed;
    for (int t : atd.post_order) {
        AugNode& n = atd.nodes[t];
        n.claimed.clear();
        if (!n.phi_rank || n.group < 0) continue;
        const OrderingGroup& g = atd.groups[n.group];
        int pos = 0;
        for (int j = 0; j < g.num_blocks(); ++j) {
            auto [b, e] = g.blocks[j];
            std::vector<OrdEdge> cand;
            cand.push_back({g.id, -(j + 1), n.phi_seq[pos]});
            for (int i = 0; i + 1 < e - b; ++i)
                cand.push_back({g.id, n.phi_seq[pos + i], n.phi_seq[pos + i + 1]});
            cand.push_back({g.id, n.phi_seq[pos + (e - b) - 1], -(j + 1)});
            for (const OrdEdge& ed : cand)
                if (claimed.insert(ed).second) n.claimed.push_back(ed);
            pos += e - b;
        }
    }
    // coverage: all within-block ordered pairs plus per-block sources and
    // destinations, each exactly once
    std::map<int, std::size_t> per_group;
    for (const OrdEdge& ed : claimed) ++per_group[ed.group];
    for (const OrderingGroup& g : atd.groups) {
        std::size_t expect = 0;
        for (auto [b, e] : g.blocks) {
            std::size_t s = e - b;
            expect += s * (s - 1) + 2 * s;
        }
        if (per_group[g.id] != expect)
            throw std::logic_error("assign_edges: incomplete edge coverage for group " +
                                   std::to_string(g.id + 1));
    }
    atd.edges_assigned = true;
}

std::vector<int> pred(const OrderingAugmentedTd& atd, int x, int node) {
    std::vector<int> out;
    for (int c : atd.nodes[node].children) {
        const AugNode& cn = atd.nodes[c];
        if (cn.group >= 0) {
            const auto& vs = atd.groups[cn.group].vertices;
            if (std::find(vs.begin(), vs.end(), x) != vs.end()) {
                out.push_back(c);
                continue;
            }
        }
        if (cn.psi_group >= 0) {
            const auto& vs = atd.groups[cn.psi_group].vertices;
            if (std::find(vs.begin(), vs.end(), x) != vs.end())
                out.push_back(cn.chain_base);
        }
    }
    return out;
}

std::string dump_json(const OrderingAugmentedTd& atd) {
    nlohmann::json j;
    j["mode"] = atd.mode == Mode::R ? "r" : "rprime";
    j["iota"] = atd.iota;
    j["root"] = atd.node_name[atd.root];
    auto& groups = j["groups"] = nlohmann::json::array();
    for (const auto& g : atd.groups) {
        nlohmann::json gj;
        gj["id"] = g.id + 1;
        gj["bag"] = g.bag;
        gj["vertices"] = g.vertices;
        gj["orderings"] = g.num_orderings;
        groups.push_back(gj);
    }
    auto& nodes = j["nodes"] = nlohmann::json::array();
    for (int t : atd.post_order) {
        const AugNode& n = atd.nodes[t];
        nlohmann::json nj;
        nj["id"] = atd.node_name[t];
        nj["parent"] = n.parent < 0 ? 0 : atd.node_name[n.parent];
        nj["original"] = n.original;
        nj["group"] = n.group + 1;
        if (n.phi_rank) nj["phi"] = *n.phi_rank;
        if (n.psi_rank) {
            nj["psi"] = *n.psi_rank;
            nj["psi_group"] = n.psi_group + 1;
        }
        auto& edges = nj["edges"] = nlohmann::json::array();
        for (const OrdEdge& e : n.claimed)
            edges.push_back({e.group + 1, e.tail, e.head});
        nodes.push_back(nj);
    }
    return j.dump(2);
}

}  // namespace tdasp
