#include "tdasp/cnf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <sstream>

namespace tdasp {

std::set<Var> CnfFormula::variables() const {
    std::set<Var> vs;
    for (const auto& c : clauses)
        for (Lit l : c) vs.insert(std::abs(l));
    return vs;
}

bool compatible(const Assignment& a, const Assignment& b) {
    // walk the smaller map
    const Assignment& s = a.values.size() <= b.values.size() ? a : b;
    const Assignment& t = a.values.size() <= b.values.size() ? b : a;
    for (const auto& [v, val] : s.values) {
        auto it = t.values.find(v);
        if (it != t.values.end() && it->second != val) return false;
    }
    return true;
}

void UndirectedGraph::add_edge(int a, int b) {
    if (a == b) throw std::invalid_argument("graph: self-loop");
    vertices.insert(a);
    vertices.insert(b);
    edges.insert({std::min(a, b), std::max(a, b)});
}

bool UndirectedGraph::has_edge(int a, int b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) != 0;
}

std::set<int> UndirectedGraph::neighbors(int v) const {
    std::set<int> ns;
    for (const auto& [a, b] : edges) {
        if (a == v) ns.insert(b);
        if (b == v) ns.insert(a);
    }
    return ns;
}

CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula f;
    long declared_clauses = -1;
    std::string line;
    std::vector<Lit> cur;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == 'c' || line[0] == '%') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            long nv = -1, nc = -1;
            ls >> p >> fmt >> nv >> nc;
            if (ls.fail() || fmt != "cnf" || nv < 0 || nc < 0)
                throw ParseError("dimacs: malformed header: " + line);
            if (header_seen) throw ParseError("dimacs: duplicate header");
            header_seen = true;
            f.num_vars = static_cast<int>(nv);
            declared_clauses = nc;
            continue;
        }
        if (!header_seen) throw ParseError("dimacs: clause before header");
        Lit l;
        while (ls >> l) {
            if (l == 0) {
                std::sort(cur.begin(), cur.end());
                cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
                for (size_t i = 0; i + 1 < cur.size(); ++i)
                    if (cur[i] == -cur[i + 1])
                        throw ParseError("dimacs: tautological clause");
                f.clauses.push_back(cur);
                cur.clear();
            } else {
                if (std::abs(l) > f.num_vars)
                    throw ParseError("dimacs: literal out of range: " + std::to_string(l));
                cur.push_back(l);
            }
        }
    }
    if (!header_seen) throw ParseError("dimacs: missing header");
    if (!cur.empty()) throw ParseError("dimacs: missing clause terminator");
    if (declared_clauses != static_cast<long>(f.clauses.size()))
        throw ParseError("dimacs: clause count mismatch: declared " +
                         std::to_string(declared_clauses) + ", got " +
                         std::to_string(f.clauses.size()));
    return f;
}

CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

UndirectedGraph primal_graph(const CnfFormula& f) {
    UndirectedGraph g;
    for (Var v : f.variables()) g.add_vertex(v);
    for (const auto& c : f.clauses)
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = i + 1; j < c.size(); ++j) {
                Var a = std::abs(c[i]), b = std::abs(c[j]);
                if (a != b) g.add_edge(a, b);
            }
    return g;
}

bool eval(const CnfFormula& f, const Assignment& i) {
    for (const auto& c : f.clauses)
        for (Lit l : c)
            if (!i.defined(std::abs(l)))
                throw std::out_of_range("eval: variable " + std::to_string(std::abs(l)) +
                                        " not in assignment domain");
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (Lit l : c) {
            bool v = i.value(std::abs(l));
            if ((l > 0 && v) || (l < 0 && !v)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

std::vector<Assignment> enumerate_models(const CnfFormula& f) {
    if (f.num_vars > 24)
        throw std::invalid_argument("enumerate_models: formula too large for brute force");
    std::vector<Assignment> out;
    const int n = f.num_vars;
    for (unsigned long m = 0; m < (1ul << n); ++m) {
        Assignment a;
        // v1 is the most significant bit so the order is lexicographic
        for (int v = 1; v <= n; ++v) a.set(v, (m >> (n - v)) & 1u);
        if (eval(f, a)) out.push_back(std::move(a));
    }
    return out;
}

}  // namespace tdasp
