#ifndef TDASP_CNF_HPP
#define TDASP_CNF_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tdasp {

using Var = int;  // 1-based
using Lit = int;  // signed, never 0

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Clauses keep their parse order; duplicate clauses are kept, duplicate
// literals inside a clause are dropped, tautological clauses are rejected.
struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<Lit>> clauses;

    std::set<Var> variables() const;  // variables actually occurring
};

// Assignment with an explicit domain; reading outside the domain throws.
struct Assignment {
    std::map<Var, bool> values;

    bool defined(Var v) const { return values.count(v) != 0; }
    bool value(Var v) const {
        auto it = values.find(v);
        if (it == values.end())
            throw std::out_of_range("assignment: variable " + std::to_string(v) + " not in domain");
        return it->second;
    }
    void set(Var v, bool b) { values[v] = b; }
    bool operator==(const Assignment& o) const { return values == o.values; }
    bool operator<(const Assignment& o) const { return values < o.values; }
};

// Agree on every shared variable.
bool compatible(const Assignment& a, const Assignment& b);

struct UndirectedGraph {
    std::set<int> vertices;
    std::set<std::pair<int, int>> edges;  // normalized a < b

    void add_vertex(int v) { vertices.insert(v); }
    void add_edge(int a, int b);
    bool has_edge(int a, int b) const;
    std::set<int> neighbors(int v) const;
};

CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(const std::string& text);

UndirectedGraph primal_graph(const CnfFormula& f);

// True iff every clause has a satisfied literal; i must cover vars(f).
bool eval(const CnfFormula& f, const Assignment& i);

// All models by brute force, lexicographic in (v1,...,vn) with false < true.
// Guarded: num_vars <= 24.
std::vector<Assignment> enumerate_models(const CnfFormula& f);

}  // namespace tdasp

#endif
