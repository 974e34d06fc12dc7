#include "tdasp/encoder.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace tdasp {

namespace {

struct Namer {
    const OrderingAugmentedTd& atd;
    bool primed;  // R' carries block indices on sources/destinations

    std::string group(int gid) const { return "g" + std::to_string(gid + 1); }
    std::string vertex(int v) const { return "v" + std::to_string(v); }
    std::string node(int t) const { return "n" + std::to_string(atd.node_name[t]); }
    std::string blocks_suffix(int j) const {
        return primed ? "," + std::to_string(j + 1) : "";
    }
    std::string endpoint(int gid, int code, bool tail) const {
        if (code > 0) return vertex(code);
        int j = -code - 1;
        return (tail ? "s(" : "d(") + group(gid) + blocks_suffix(j) + ")";
    }
    std::string e(const OrdEdge& ed) const {
        return "e(" + endpoint(ed.group, ed.tail, true) + "," +
               endpoint(ed.group, ed.head, false) + ")";
    }
    std::string ehat(const OrdEdge& ed) const {
        return "ehat(" + endpoint(ed.group, ed.tail, true) + "," +
               endpoint(ed.group, ed.head, false) + ")";
    }
};

class RuleBuilder {
   public:
    RuleBuilder(const CnfFormula& f, const OrderingAugmentedTd& atd, Encoding& enc)
        : f_(f), atd_(atd), enc_(enc), nm_{atd, atd.mode == Mode::RPrime} {}

    void run() {
        build_group_caches();
        intern_edge_atoms();
        const std::string p1 = tag("1"), p2 = tag("2"), p5 = tag("5"), p8 = tag("8"),
                          p10 = tag("10");
        for (int t : atd_.post_order) {
            const AugNode& n = atd_.nodes[t];
            const OrderingGroup* g = atd_.group_of(t);
            // (1) source facts, (2) reachability constraints
            if (g) {
                for (int j = 0; j < g->num_blocks(); ++j)
                    enc_.program.add_rule(rs(g->id, j), {}, {}, p1, t);
                for (int y : g->vertices) enc_.program.add_rule(-1, {}, {r(y)}, p2, t);
                for (int j = 0; j < g->num_blocks(); ++j)
                    enc_.program.add_rule(-1, {}, {rd(g->id, j)}, p2, t);
            }
            // (3) shifted edge choice, (4) initial testing points, (5) destinations
            for (const OrdEdge& ed : n.claimed) {
                auto [ea, eh] = enc_.edge_atom.at(ed);
                int rt = tail_r(ed);
                enc_.program.add_rule(ea, {rt}, {eh}, "3", t);
                enc_.program.add_rule(eh, {rt}, {ea}, "3", t);
                if (ed.head > 0)
                    enc_.program.add_rule(pe(ed.head), {ea}, {}, "4", t);
                else
                    enc_.program.add_rule(rd(ed.group, -ed.head - 1), {ea}, {}, p5, t);
            }
            // (6) closing a child group at its boundary: the group's testing
            // points are read at its region's top node
            if (n.original)
                for (int c : n.children) {
                    const AugNode& cn = atd_.nodes[c];
                    if (cn.psi_group >= 0 && cn.psi_group != n.group) {
                        int base = cn.chain_base;
                        for (int x : atd_.groups[cn.psi_group].vertices)
                            enc_.program.add_rule(r(x), {p(base, x)}, {}, "6", base);
                    }
                }
            // (7) closing the root group
            if (t == atd_.root && g)
                for (int x : g->vertices) enc_.program.add_rule(r(x), {p(t, x)}, {}, "7", t);
            // (8) outgoing-edge bookkeeping, propagated within a group
            if (g)
                for (int c : n.children)
                    if (atd_.nodes[c].group == n.group) {
                        for (int y : g->vertices)
                            enc_.program.add_rule(o(t, y), {o(c, y)}, {}, p8, t);
                        for (int j = 0; j < g->num_blocks(); ++j)
                            enc_.program.add_rule(os(t, g->id, j), {os(c, g->id, j)}, {}, p8,
                                                  t);
                    }
            // (9) an edge choice marks its tail
            for (const OrdEdge& ed : n.claimed) {
                int ea = enc_.edge_atom.at(ed).first;
                if (ed.tail > 0)
                    enc_.program.add_rule(o(t, ed.tail), {ea}, {}, "9", t);
                else
                    enc_.program.add_rule(os(t, ed.group, -ed.tail - 1), {ea}, {}, "9", t);
            }
            // (10) at most one outgoing edge across the group's region
            for (const OrdEdge& ed : n.claimed) {
                int ea = enc_.edge_atom.at(ed).first;
                for (int c : n.children)
                    if (atd_.nodes[c].group == n.group) {
                        int oc = ed.tail > 0 ? o(c, ed.tail) : os(c, ed.group, -ed.tail - 1);
                        enc_.program.add_rule(-1, {oc, ea}, {}, p10, t);
                    }
            }
            // (11) conjunction copy at ordering-free nodes
            if (n.original && g)
                for (int x : g->vertices) {
                    std::vector<int> preds = pred(atd_, x, t);
                    assert(!preds.empty());
                    std::vector<int> body;
                    for (int c : preds) body.push_back(p(c, x));
                    enc_.program.add_rule(p(t, x), body, {}, "11", t);
                }
            // (12)-(16) per candidate ordering
            emit_chain(t, n);
            // (17) compatibility of the two candidate orderings
            if (n.phi_rank && n.psi_rank && g && n.psi_group >= 0) {
                const OrderingGroup& h = atd_.groups[n.psi_group];
                auto ig = assignment_of(*g, *n.phi_rank);
                auto ih = assignment_of(h, *n.psi_rank);
                if (ig && ih && !compatible(*ig, *ih)) {
                    std::vector<int> body = last_queries(t, *g, n.phi_seq);
                    for (int a : last_queries(t, h, n.psi_seq)) body.push_back(a);
                    enc_.program.add_rule(-1, body, {}, "17", t);
                }
            }
            // (18) bag clauses, (19) unused orderings
            if (n.phi_rank && g) {
                if (enc_.rank_sat[g->id][*n.phi_rank] == 2)
                    enc_.program.add_rule(-1, last_queries(t, *g, n.phi_seq), {}, "19", t);
                else if (enc_.rank_sat[g->id][*n.phi_rank] == 0)
                    enc_.program.add_rule(-1, last_queries(t, *g, n.phi_seq), {}, "18", t);
            }
        }
    }

   private:
    std::string tag(const char* base) const {
        static const std::set<std::string> primed_set{"1", "2", "5", "8", "10"};
        if (atd_.mode == Mode::RPrime && primed_set.count(base))
            return std::string(base) + "p";
        return base;
    }

    void build_group_caches() {
        enc_.rank_sat.resize(atd_.groups.size());
        enc_.group_clauses.resize(atd_.groups.size());
        for (const OrderingGroup& g : atd_.groups) {
            std::vector<int> bag(g.bag.begin(), g.bag.end());
            enc_.group_clauses[g.id] = bag_clauses(f_, bag);
            auto& sat = enc_.rank_sat[g.id];
            sat.assign(g.num_orderings, 2);  // 2 = undefined
            std::uint64_t defined =
                g.bag.size() < 64 ? (static_cast<std::uint64_t>(1) << g.bag.size())
                                  : g.num_orderings;
            for (std::uint64_t rk = 0; rk < g.num_orderings && rk < defined; ++rk) {
                Assignment a = *assignment_of(g, rk);
                bool ok = true;
                for (int ci : enc_.group_clauses[g.id]) {
                    bool s = false;
                    for (Lit l : f_.clauses[ci]) {
                        bool v = a.value(std::abs(l));
                        if ((l > 0 && v) || (l < 0 && !v)) {
                            s = true;
                            break;
                        }
                    }
                    if (!s) {
                        ok = false;
                        break;
                    }
                }
                sat[rk] = ok ? 1 : 0;
            }
        }
    }

    void intern_edge_atoms() {
        for (int t : atd_.post_order)
            for (const OrdEdge& ed : atd_.nodes[t].claimed)
                enc_.edge_atom.emplace(
                    ed, std::make_pair(enc_.program.intern(nm_.e(ed)),
                                       enc_.program.intern(nm_.ehat(ed))));
    }

    // (12)-(16) for the candidate orderings at a chain node. Queries run for
    // both orderings; the bypass and query-to-testing-point rules only for
    // the node's own ordering — the child group's testing points live at its
    // region and are read from there.
    void emit_chain(int t, const AugNode& n) {
        struct Fam {
            const OrderingGroup* g;
            const std::vector<int>* seq;
        };
        std::vector<Fam> fams;
        if (n.phi_rank && n.group >= 0) fams.push_back({&atd_.groups[n.group], &n.phi_seq});
        if (n.psi_rank && n.psi_group >= 0)
            fams.push_back({&atd_.groups[n.psi_group], &n.psi_seq});
        // (12)/(13): self-guarded bypass per own-ordering element
        if (n.phi_rank && n.group >= 0) {
            const OrderingGroup& g = atd_.groups[n.group];
            for (int j = 0; j < g.num_blocks(); ++j) {
                auto [b, e] = g.blocks[j];
                for (int i = b; i < e; ++i) {
                    int x = n.phi_seq[i];
                    enc_.program.add_rule(p(t, x), {pred_p(t, x)}, {q(t, x)},
                                          i + 1 == e ? "13" : "12", t);
                }
            }
        }
        // (14): block-first queries, gated on the block's source edge
        for (const Fam& fm : fams)
            for (int j = 0; j < fm.g->num_blocks(); ++j) {
                int x = (*fm.seq)[fm.g->blocks[j].first];
                int ea = enc_.edge_atom.at(OrdEdge{fm.g->id, -(j + 1), x}).first;
                enc_.program.add_rule(q(t, x), {pred_p(t, x), ea}, {}, "14", t);
            }
        // (15): chained queries, gated on the consecutive edge
        for (const Fam& fm : fams)
            for (int j = 0; j < fm.g->num_blocks(); ++j) {
                auto [b, e] = fm.g->blocks[j];
                for (int i = b; i + 1 < e; ++i) {
                    int y = (*fm.seq)[i], x = (*fm.seq)[i + 1];
                    int ea = enc_.edge_atom.at(OrdEdge{fm.g->id, y, x}).first;
                    enc_.program.add_rule(q(t, x), {pred_p(t, x), q(t, y), ea}, {}, "15", t);
                }
            }
        // (16)
        if (n.phi_rank && n.group >= 0)
            for (int x : n.phi_seq) enc_.program.add_rule(p(t, x), {q(t, x)}, {}, "16", t);
    }

    std::vector<int> last_queries(int t, const OrderingGroup& g, const std::vector<int>& seq) {
        std::vector<int> qs;
        for (auto [b, e] : g.blocks) qs.push_back(q(t, seq[e - 1]));
        return qs;
    }

    int pred_p(int t, int x) {
        std::vector<int> preds = pred(atd_, x, t);
        if (preds.empty()) return pe(x);
        assert(preds.size() == 1);  // chain nodes have a single child
        return p(preds[0], x);
    }

    int tail_r(const OrdEdge& ed) {
        return ed.tail > 0 ? r(ed.tail) : rs(ed.group, -ed.tail - 1);
    }

    int r(int v) {
        auto it = enc_.r_atom.find(v);
        if (it != enc_.r_atom.end()) return it->second;
        int id = enc_.program.intern("r(" + nm_.vertex(v) + ")");
        enc_.r_atom.emplace(v, id);
        return id;
    }
    int rs(int gid, int j) {
        auto key = std::make_pair(gid, j);
        auto it = enc_.rs_atom.find(key);
        if (it != enc_.rs_atom.end()) return it->second;
        int id = enc_.program.intern("r_s(" + nm_.group(gid) + nm_.blocks_suffix(j) + ")");
        enc_.rs_atom.emplace(key, id);
        return id;
    }
    int rd(int gid, int j) {
        auto key = std::make_pair(gid, j);
        auto it = enc_.rd_atom.find(key);
        if (it != enc_.rd_atom.end()) return it->second;
        int id = enc_.program.intern("r_d(" + nm_.group(gid) + nm_.blocks_suffix(j) + ")");
        enc_.rd_atom.emplace(key, id);
        return id;
    }
    int pe(int v) {
        auto it = enc_.pe_atom.find(v);
        if (it != enc_.pe_atom.end()) return it->second;
        int id = enc_.program.intern("p_e(" + nm_.vertex(v) + ")");
        enc_.pe_atom.emplace(v, id);
        return id;
    }
    int p(int t, int x) {
        auto key = std::make_pair(t, x);
        auto it = enc_.p_atom.find(key);
        if (it != enc_.p_atom.end()) return it->second;
        int id = enc_.program.intern("p(" + nm_.node(t) + "," + nm_.vertex(x) + ")");
        enc_.p_atom.emplace(key, id);
        return id;
    }
    int q(int t, int x) {
        auto key = std::make_pair(t, x);
        auto it = enc_.q_atom.find(key);
        if (it != enc_.q_atom.end()) return it->second;
        int id = enc_.program.intern("q(" + nm_.node(t) + "," + nm_.vertex(x) + ")");
        enc_.q_atom.emplace(key, id);
        return id;
    }
    int o(int t, int y) {
        auto key = std::make_pair(t, y);
        auto it = enc_.o_atom.find(key);
        if (it != enc_.o_atom.end()) return it->second;
        int id = enc_.program.intern("o(" + nm_.node(t) + "," + nm_.vertex(y) + ")");
        enc_.o_atom.emplace(key, id);
        return id;
    }
    int os(int t, int gid, int j) {
        auto key = std::make_tuple(t, gid, j);
        auto it = enc_.os_atom.find(key);
        if (it != enc_.os_atom.end()) return it->second;
        int id = enc_.program.intern("o_s(" + nm_.node(t) + "," + nm_.group(gid) +
                                     nm_.blocks_suffix(j) + ")");
        enc_.os_atom.emplace(key, id);
        return id;
    }

    const CnfFormula& f_;
    const OrderingAugmentedTd& atd_;
    Encoding& enc_;
    Namer nm_;
};

Encoding encode_impl(const CnfFormula& f, const OrderingAugmentedTd& atd) {
    if (!atd.edges_assigned)
        throw std::invalid_argument("encode: assign_edges must run first");
    Encoding enc;
    enc.mode = atd.mode;
    RuleBuilder(f, atd, enc).run();
    return enc;
}

}  // namespace

Encoding encode_r(const CnfFormula& f, const OrderingAugmentedTd& atd) {
    if (atd.mode != Mode::R) throw std::invalid_argument("encode_r: TD not in R mode");
    return encode_impl(f, atd);
}

Encoding encode_r_prime(const CnfFormula& f, const OrderingAugmentedTd& atd) {
    if (atd.mode != Mode::RPrime)
        throw std::invalid_argument("encode_r_prime: TD not in R' mode");
    return encode_impl(f, atd);
}

GroundProgram encode_clark(const CnfFormula& f) {
    GroundProgram p;
    std::vector<int> pos_atom(f.num_vars + 1), neg_atom(f.num_vars + 1);
    for (Var v = 1; v <= f.num_vars; ++v) {
        pos_atom[v] = p.intern("v(" + std::to_string(v) + ")");
        neg_atom[v] = p.intern("vhat(" + std::to_string(v) + ")");
        p.add_rule(pos_atom[v], {}, {neg_atom[v]}, "clark");
        p.add_rule(neg_atom[v], {}, {pos_atom[v]}, "clark");
    }
    for (const auto& c : f.clauses) {
        std::vector<int> body;
        for (Lit l : c) body.push_back(l < 0 ? pos_atom[-l] : neg_atom[l]);
        p.add_rule(-1, body, {}, "clark");
    }
    return p;
}

}  // namespace tdasp
