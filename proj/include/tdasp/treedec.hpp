#ifndef TDASP_TREEDEC_HPP
#define TDASP_TREEDEC_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tdasp/cnf.hpp"

namespace tdasp {

// Rooted tree decomposition. Nodes are 0-based internally; PACE ids are
// node index + 1 on emit.
struct TreeDecomposition {
    int root = 0;
    std::vector<int> parent;                 // -1 at root
    std::vector<std::vector<int>> children;  // derived from parent
    std::vector<std::vector<int>> bags;      // sorted, unique
    int num_graph_vertices = 0;              // declared universe (PACE header)

    int size() const { return static_cast<int>(bags.size()); }
    int width() const;
    void rebuild_children();
    void reroot(int new_root);
};

enum class NodeKind { Leaf, Inner, Join };

struct NiceTreeDecomposition {
    TreeDecomposition td;
    std::vector<NodeKind> kind;
};

TreeDecomposition parse_td(std::istream& in);
TreeDecomposition parse_td(const std::string& text);
std::string emit_td(const TreeDecomposition& td);

enum class TdStrategy { MinDegree, MinFill };

// Elimination-ordering heuristic; ties broken by smallest vertex id.
// Root: bag of maximum cardinality, ties by node id.
TreeDecomposition heuristic_td(const UndirectedGraph& g, TdStrategy strategy = TdStrategy::MinDegree);

struct TdViolation {
    int condition;  // 1, 2 or 3
    std::string detail;
};

// First violated TD condition with a witness, or nullopt if valid.
std::optional<TdViolation> validate_td(const UndirectedGraph& g, const TreeDecomposition& td);

// Collapses adjacent equal bags, then binarizes; width is never increased.
NiceTreeDecomposition make_nice(const TreeDecomposition& td);

// Indices of clauses whose atoms all lie in the bag.
std::vector<int> bag_clauses(const CnfFormula& f, const std::vector<int>& bag);

}  // namespace tdasp

#endif
