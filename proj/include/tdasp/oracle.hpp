#ifndef TDASP_ORACLE_HPP
#define TDASP_ORACLE_HPP

#include <optional>
#include <string>

#include "tdasp/asp.hpp"
#include "tdasp/encoder.hpp"

namespace tdasp {

// All answer sets by subset enumeration; guarded to programs with <= 22 atoms.
std::vector<InterpSet> enumerate_naive(const GroundProgram& p);

// Answer sets of an R/R' encoding: per group the defined, bag-satisfying
// orderings are combined along the region tree (adjacent groups must decode
// to compatible assignments), each combination is closed into a candidate
// interpretation and kept iff it passes the exact stability check.
std::vector<InterpSet> enumerate_structured(const CnfFormula& f,
                                            const OrderingAugmentedTd& atd,
                                            const Encoding& enc);

// The interpretation induced by a model of F: per group the ordering encoding
// the restricted assignment, its path edges, the query prefixes agreeing with
// it, and the closure of testing points and markers. Always an answer set of
// the encoding.
InterpSet witness(const Assignment& i, const OrderingAugmentedTd& atd, const Encoding& enc,
                  const CnfFormula& f);

// Reads the model back from the full-query nodes of an answer set.
Assignment decode(const InterpSet& m, const OrderingAugmentedTd& atd, const Encoding& enc);

// Every group with ordering vertices has a node whose full query set holds.
bool check_decidability(const InterpSet& m, const OrderingAugmentedTd& atd,
                        const Encoding& enc);

// Assignments decoded at any two full-query nodes are compatible.
bool check_compatibility(const InterpSet& m, const OrderingAugmentedTd& atd,
                         const Encoding& enc);

// Pipes the program to an external grounder/solver command and parses the
// reported answer-set count; nullopt when the solver is unavailable.
std::optional<long long> external_count(const GroundProgram& p, const std::string& command);

}  // namespace tdasp

#endif
