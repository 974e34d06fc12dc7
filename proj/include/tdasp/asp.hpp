#ifndef TDASP_ASP_HPP
#define TDASP_ASP_HPP

#include <vector>

#include "tdasp/program.hpp"

namespace tdasp {

// Interpretation as a membership vector over the program's atom table.
using InterpSet = std::vector<char>;

InterpSet make_interp(const GroundProgram& p);

bool is_model(const GroundProgram& p, const InterpSet& m);

// GL reduct: drops rules whose negative body meets m, strips the rest.
GroundProgram reduct(const GroundProgram& p, const InterpSet& m);

// Least model of a definite program (negative bodies must be empty);
// counting-based propagation, linear in the program size.
InterpSet lfp(const GroundProgram& p);

// Least model of the reduct without materializing it.
InterpSet lfp_reduct(const GroundProgram& p, const InterpSet& m);

bool is_answer_set(const GroundProgram& p, const InterpSet& m);

struct DependencyGraph {
    int n = 0;
    std::vector<std::vector<int>> out;  // edge (a,b): a in B+, b in head
};

DependencyGraph dependency_graph(const GroundProgram& p);

// Tarjan, iterative; components in a deterministic order.
std::vector<std::vector<int>> sccs(const DependencyGraph& g);
std::vector<int> scc_ids(const DependencyGraph& g);  // atom -> component index

}  // namespace tdasp

#endif
