#include "tdasp/asp.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdasp {

InterpSet make_interp(const GroundProgram& p) { return InterpSet(p.num_atoms(), 0); }

bool is_model(const GroundProgram& p, const InterpSet& m) {
    for (const Rule& r : p.rules) {
        if (r.head >= 0 && m[r.head]) continue;
        bool neg_hit = false;
        for (int a : r.neg)
            if (m[a]) {
                neg_hit = true;
                break;
            }
        if (neg_hit) continue;
        bool pos_missing = false;
        for (int a : r.pos)
            if (!m[a]) {
                pos_missing = true;
                break;
            }
        if (!pos_missing) return false;
    }
    return true;
}

GroundProgram reduct(const GroundProgram& p, const InterpSet& m) {
    GroundProgram out;
    out.atom_names = p.atom_names;
    out.atom_ids = p.atom_ids;
    for (const Rule& r : p.rules) {
        bool drop = false;
        for (int a : r.neg)
            if (m[a]) {
                drop = true;
                break;
            }
        if (!drop) out.add_rule(r.head, r.pos, {}, r.prov, r.node);
    }
    return out;
}

namespace {

// Shared propagation core over the positive parts of the surviving rules.
InterpSet propagate(const GroundProgram& p, const InterpSet* m) {
    InterpSet value(p.num_atoms(), 0);
    std::vector<int> missing(p.rules.size(), 0);
    std::vector<std::vector<int>> watchers(p.num_atoms());
    std::vector<int> queue;
    for (size_t ri = 0; ri < p.rules.size(); ++ri) {
        const Rule& r = p.rules[ri];
        if (r.head < 0) continue;
        if (m) {
            bool drop = false;
            for (int a : r.neg)
                if ((*m)[a]) {
                    drop = true;
                    break;
                }
            if (drop) continue;
        } else if (!r.neg.empty()) {
            throw std::invalid_argument("lfp: program not definite");
        }
        missing[ri] = static_cast<int>(r.pos.size());
        for (int a : r.pos) watchers[a].push_back(static_cast<int>(ri));
        if (missing[ri] == 0 && !value[r.head]) {
            value[r.head] = 1;
            queue.push_back(r.head);
        }
    }
    while (!queue.empty()) {
        int a = queue.back();
        queue.pop_back();
        for (int ri : watchers[a])
            if (--missing[ri] == 0) {
                int h = p.rules[ri].head;
                if (!value[h]) {
                    value[h] = 1;
                    queue.push_back(h);
                }
            }
    }
    return value;
}

}  // namespace

InterpSet lfp(const GroundProgram& p) { return propagate(p, nullptr); }

InterpSet lfp_reduct(const GroundProgram& p, const InterpSet& m) { return propagate(p, &m); }

bool is_answer_set(const GroundProgram& p, const InterpSet& m) {
    if (!is_model(p, m)) return false;
    return lfp_reduct(p, m) == m;
}

DependencyGraph dependency_graph(const GroundProgram& p) {
    DependencyGraph g;
    g.n = p.num_atoms();
    g.out.resize(g.n);
    for (const Rule& r : p.rules) {
        if (r.head < 0) continue;
        for (int a : r.pos) g.out[a].push_back(r.head);
    }
    for (auto& v : g.out) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return g;
}

std::vector<std::vector<int>> sccs(const DependencyGraph& g) {
    // iterative Tarjan
    std::vector<int> index(g.n, -1), low(g.n, 0), on_stack(g.n, 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int next_index = 0;
    struct Frame {
        int v;
        size_t child;
    };
    for (int start = 0; start < g.n; ++start) {
        if (index[start] != -1) continue;
        std::vector<Frame> call{{start, 0}};
        index[start] = low[start] = next_index++;
        stack.push_back(start);
        on_stack[start] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.child < g.out[f.v].size()) {
                int w = g.out[f.v][f.child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                        if (w == f.v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comps.push_back(std::move(comp));
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    return comps;
}

std::vector<int> scc_ids(const DependencyGraph& g) {
    auto comps = sccs(g);
    std::vector<int> id(g.n, -1);
    for (size_t i = 0; i < comps.size(); ++i)
        for (int v : comps[i]) id[v] = static_cast<int>(i);
    return id;
}

}  // namespace tdasp
