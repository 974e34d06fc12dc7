#ifndef TDASP_ENCODER_HPP
#define TDASP_ENCODER_HPP

#include <map>

#include "tdasp/cnf.hpp"
#include "tdasp/ordaug.hpp"
#include "tdasp/program.hpp"

namespace tdasp {

// Ground program of the reduction plus the atom tables the oracle and the
// analyzer navigate by.
struct Encoding {
    GroundProgram program;
    Mode mode = Mode::R;

    std::map<int, int> r_atom;                      // vertex -> r(x)
    std::map<std::pair<int, int>, int> rs_atom;     // (group, block) -> r_s
    std::map<std::pair<int, int>, int> rd_atom;     // (group, block) -> r_d
    std::map<OrdEdge, std::pair<int, int>> edge_atom;  // -> (e, ehat)
    std::map<int, int> pe_atom;                     // vertex -> p_eps
    std::map<std::pair<int, int>, int> p_atom;      // (node, vertex)
    std::map<std::pair<int, int>, int> q_atom;      // (node, vertex)
    std::map<std::pair<int, int>, int> o_atom;      // (node, vertex)
    std::map<std::tuple<int, int, int>, int> os_atom;  // (node, group, block)

    // defined-and-bag-satisfying cache, one flag vector per group, indexed by rank
    std::vector<std::vector<char>> rank_sat;
    std::vector<std::vector<int>> group_clauses;  // bag clause indices per group
};

// Reduction R over an R-mode ordering-augmented TD (edges must be assigned).
Encoding encode_r(const CnfFormula& f, const OrderingAugmentedTd& atd);

// Reduction R' over an R'-mode ordering-augmented TD.
Encoding encode_r_prime(const CnfFormula& f, const OrderingAugmentedTd& atd);

// Clark-style guess-and-check baseline.
GroundProgram encode_clark(const CnfFormula& f);

}  // namespace tdasp

#endif
