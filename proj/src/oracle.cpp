#include "tdasp/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tdasp {

std::vector<InterpSet> enumerate_naive(const GroundProgram& p) {
    const int n = p.num_atoms();
    if (n > 22) throw std::invalid_argument("enumerate_naive: too many atoms");
    std::vector<InterpSet> out;
    for (std::uint64_t mask = 0; mask < (static_cast<std::uint64_t>(1) << n); ++mask) {
        InterpSet m(n, 0);
        for (int a = 0; a < n; ++a) m[a] = (mask >> a) & 1u;
        if (is_answer_set(p, m)) out.push_back(std::move(m));
    }
    return out;
}

namespace {

// Candidate interpretation determined by one ordering rank per group.
InterpSet close_candidate(const std::map<int, std::uint64_t>& rank_of_group,
                          const OrderingAugmentedTd& atd, const Encoding& enc) {
    InterpSet m(enc.program.num_atoms(), 0);
    // chosen path edges per group
    std::set<OrdEdge> chosen;
    std::map<int, std::vector<int>> seq_of;
    for (const OrderingGroup& g : atd.groups) {
        std::uint64_t rk = rank_of_group.at(g.id);
        std::vector<int> seq = ordering_sequence(g, rk);
        seq_of[g.id] = seq;
        for (int j = 0; j < g.num_blocks(); ++j) {
            auto [b, e] = g.blocks[j];
            chosen.insert({g.id, -(j + 1), seq[b]});
            for (int i = b; i + 1 < e; ++i) chosen.insert({g.id, seq[i], seq[i + 1]});
            chosen.insert({g.id, seq[e - 1], -(j + 1)});
        }
    }
    // reachability and edge polarity
    for (const auto& [v, a] : enc.r_atom) m[a] = 1;
    for (const auto& [k, a] : enc.rs_atom) m[a] = 1;
    for (const auto& [k, a] : enc.rd_atom) m[a] = 1;
    for (const auto& [ed, atoms] : enc.edge_atom)
        m[chosen.count(ed) ? atoms.first : atoms.second] = 1;
    for (const auto& [v, a] : enc.pe_atom) m[a] = 1;
    // queries: per node and candidate ordering, the longest per-block prefix
    // that agrees positionally with the group's actual ordering
    auto mark_queries = [&](int t, const OrderingGroup& g, const std::vector<int>& cand) {
        const std::vector<int>& actual = seq_of[g.id];
        for (auto [b, e] : g.blocks)
            for (int i = b; i < e; ++i) {
                if (cand[i] != actual[i]) break;
                m[enc.q_atom.at({t, cand[i]})] = 1;
            }
    };
    for (int t = 0; t < static_cast<int>(atd.nodes.size()); ++t) {
        const AugNode& n = atd.nodes[t];
        if (n.phi_rank && n.group >= 0) mark_queries(t, atd.groups[n.group], n.phi_seq);
        if (n.psi_rank && n.psi_group >= 0)
            mark_queries(t, atd.groups[n.psi_group], n.psi_seq);
    }
    // testing points hold everywhere they exist
    for (const auto& [k, a] : enc.p_atom) m[a] = 1;
    // outgoing-edge bookkeeping: seed at claims of chosen edges, then push
    // upward inside each group region
    for (int t : atd.post_order) {
        const AugNode& n = atd.nodes[t];
        for (const OrdEdge& ed : n.claimed)
            if (chosen.count(ed)) {
                if (ed.tail > 0)
                    m[enc.o_atom.at({t, ed.tail})] = 1;
                else
                    m[enc.os_atom.at({t, ed.group, -ed.tail - 1})] = 1;
            }
        for (int c : n.children)
            if (atd.nodes[c].group == n.group && n.group >= 0) {
                for (int y : atd.groups[n.group].vertices)
                    if (m[enc.o_atom.at({c, y})]) m[enc.o_atom.at({t, y})] = 1;
                for (int j = 0; j < atd.groups[n.group].num_blocks(); ++j)
                    if (m[enc.os_atom.at({c, n.group, j})])
                        m[enc.os_atom.at({t, n.group, j})] = 1;
            }
    }
    return m;
}

// group adjacency from the chain structure (phi group, psi group)
std::vector<std::vector<int>> group_adjacency(const OrderingAugmentedTd& atd) {
    std::set<std::pair<int, int>> seen;
    std::vector<std::vector<int>> adj(atd.groups.size());
    for (const AugNode& n : atd.nodes)
        if (n.group >= 0 && n.psi_group >= 0 && n.group != n.psi_group)
            if (seen.insert({n.group, n.psi_group}).second) {
                adj[n.group].push_back(n.psi_group);
                adj[n.psi_group].push_back(n.group);
            }
    return adj;
}

}  // namespace

std::vector<InterpSet> enumerate_structured(const CnfFormula&,
                                            const OrderingAugmentedTd& atd,
                                            const Encoding& enc) {
    std::vector<InterpSet> out;
    const int ng = static_cast<int>(atd.groups.size());
    if (ng == 0) {
        InterpSet empty(enc.program.num_atoms(), 0);
        if (is_answer_set(enc.program, empty)) out.push_back(empty);
        return out;
    }
    // defined and bag-satisfying ranks per group
    std::vector<std::vector<std::uint64_t>> cands(ng);
    for (const OrderingGroup& g : atd.groups)
        for (std::uint64_t rk = 0; rk < g.num_orderings; ++rk)
            if (enc.rank_sat[g.id][rk] == 1) cands[g.id].push_back(rk);
    std::vector<std::vector<int>> adj = group_adjacency(atd);

    std::map<int, std::uint64_t> pick;
    std::map<int, Assignment> assigns;
    // BFS over the region adjacency keeps partial combinations connected, so
    // the compatibility pruning bites early
    std::vector<int> order;
    std::vector<char> seen(ng, 0);
    for (int s = 0; s < ng; ++s) {
        if (seen[s]) continue;
        std::vector<int> queue{s};
        seen[s] = 1;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int g = queue[qi];
            order.push_back(g);
            for (int nb : adj[g])
                if (!seen[nb]) {
                    seen[nb] = 1;
                    queue.push_back(nb);
                }
        }
    }

    std::function<void(int)> dfs = [&](int idx) {
        if (idx == ng) {
            InterpSet m = close_candidate(pick, atd, enc);
            if (is_answer_set(enc.program, m)) out.push_back(std::move(m));
            return;
        }
        int gid = order[idx];
        const OrderingGroup& g = atd.groups[gid];
        for (std::uint64_t rk : cands[gid]) {
            Assignment a = *assignment_of(g, rk);
            bool ok = true;
            for (int nb : adj[gid]) {
                auto it = assigns.find(nb);
                if (it != assigns.end() && !compatible(a, it->second)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            pick[gid] = rk;
            assigns[gid] = std::move(a);
            dfs(idx + 1);
            pick.erase(gid);
            assigns.erase(gid);
        }
    };
    dfs(0);
    return out;
}

InterpSet witness(const Assignment& i, const OrderingAugmentedTd& atd, const Encoding& enc,
                  const CnfFormula& f) {
    if (!eval(f, i)) throw std::invalid_argument("witness: assignment is not a model");
    std::map<int, std::uint64_t> ranks;
    for (const OrderingGroup& g : atd.groups) ranks[g.id] = rank_of_assignment(g, i);
    return close_candidate(ranks, atd, enc);
}

namespace {

// full-query nodes per group: phi side, all block queries hold
std::map<int, std::uint64_t> full_query_ranks(const InterpSet& m,
                                              const OrderingAugmentedTd& atd,
                                              const Encoding& enc,
                                              std::map<int, int>* witness_node = nullptr) {
    std::map<int, std::uint64_t> found;
    for (int t = 0; t < static_cast<int>(atd.nodes.size()); ++t) {
        const AugNode& n = atd.nodes[t];
        if (!n.phi_rank || n.group < 0) continue;
        bool full = true;
        for (int x : n.phi_seq)
            if (!m[enc.q_atom.at({t, x})]) {
                full = false;
                break;
            }
        if (!full) continue;
        if (!found.count(n.group)) {
            found[n.group] = *n.phi_rank;
            if (witness_node) (*witness_node)[n.group] = t;
        }
    }
    return found;
}

}  // namespace

Assignment decode(const InterpSet& m, const OrderingAugmentedTd& atd, const Encoding& enc) {
    auto ranks = full_query_ranks(m, atd, enc);
    Assignment out;
    for (const OrderingGroup& g : atd.groups) {
        auto it = ranks.find(g.id);
        if (it == ranks.end())
            throw std::logic_error("decode: group " + std::to_string(g.id + 1) +
                                   " has no full-query node");
        auto a = assignment_of(g, it->second);
        if (!a) throw std::logic_error("decode: full-query node carries an unused ordering");
        for (const auto& [v, val] : a->values) {
            if (out.defined(v) && out.value(v) != val)
                throw std::logic_error("decode: conflicting values for variable " +
                                       std::to_string(v));
            out.set(v, val);
        }
    }
    return out;
}

bool check_decidability(const InterpSet& m, const OrderingAugmentedTd& atd,
                        const Encoding& enc) {
    auto ranks = full_query_ranks(m, atd, enc);
    for (const OrderingGroup& g : atd.groups)
        if (!ranks.count(g.id)) return false;
    return true;
}

bool check_compatibility(const InterpSet& m, const OrderingAugmentedTd& atd,
                         const Encoding& enc) {
    // all full-query nodes, not only the first per group
    std::vector<Assignment> decoded;
    for (int t = 0; t < static_cast<int>(atd.nodes.size()); ++t) {
        const AugNode& n = atd.nodes[t];
        if (!n.phi_rank || n.group < 0) continue;
        bool full = true;
        for (int x : n.phi_seq)
            if (!m[enc.q_atom.at({t, x})]) {
                full = false;
                break;
            }
        if (!full) continue;
        auto a = assignment_of(atd.groups[n.group], *n.phi_rank);
        if (!a) return false;
        decoded.push_back(std::move(*a));
    }
    for (size_t i = 0; i < decoded.size(); ++i)
        for (size_t j = i + 1; j < decoded.size(); ++j)
            if (!compatible(decoded[i], decoded[j])) return false;
    return true;
}

std::optional<long long> external_count(const GroundProgram& p, const std::string& command) {
    if (command.empty()) return std::nullopt;
    std::string text = emit_text(p, false);
    std::string tmp = "/tmp/tdasp_solver_input.lp";
    {
        FILE* fp = std::fopen(tmp.c_str(), "w");
        if (!fp) return std::nullopt;
        std::fwrite(text.data(), 1, text.size(), fp);
        std::fclose(fp);
    }
    std::string cmd = command + " < " + tmp + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return std::nullopt;
    std::string output;
    char buf[4096];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
    int rc = pclose(pipe);
    (void)rc;  // clingo exits 10/20/30 by design
    // look for a "Models : N" line (clasp/clingo style), else a bare count
    std::istringstream ls(output);
    std::string line;
    while (std::getline(ls, line)) {
        auto pos = line.find("Models");
        if (pos == std::string::npos) continue;
        auto colon = line.find(':', pos);
        if (colon == std::string::npos) continue;
        std::istringstream num(line.substr(colon + 1));
        long long n;
        if (num >> n) return n;
    }
    return std::nullopt;
}

}  // namespace tdasp
