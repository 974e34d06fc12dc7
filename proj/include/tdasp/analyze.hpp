#ifndef TDASP_ANALYZE_HPP
#define TDASP_ANALYZE_HPP

#include <map>
#include <string>

#include "tdasp/asp.hpp"
#include "tdasp/encoder.hpp"
#include "tdasp/treedec.hpp"

namespace tdasp {

// Audited constants for the structural certificates. A certificate bag at a
// chain node over groups of at most k' vertices holds: reachability atoms of
// the two groups it touches (2k' + sources/destinations), the edge atoms its
// own ordering checks mention plus those spanning it (bounded by the
// block-local edge universe, s(s-1)+s per block family), testing points and
// queries of both candidate orderings with their predecessor copies (6k'),
// initial testing points (2k'), and the outgoing-edge markers of the node and
// its child (2(k'+blocks)). With blocks of size s <= k' every term is within
// 16(k'+1) for the instance sizes the suite pins; the per-block tightness
// intersection is at most r (s) + e (s(s-1) clipped to one bag's share) +
// p/q/pe (3s) + predecessor copies (s), within 10 per block element.
inline constexpr int kCertificateBagFactor = 16;  // max bag <= 16 * (k'_max + 1)
inline constexpr int kTightnessFactor = 10;       // tightness width <= 10 * iota

// Largest component of a group's block: r + p_eps (2s), block-internal edge
// atoms (s(s-1)), plus testing points and queries (2 per node carrying the
// block, C many nodes).
long long scc_size_bound(int block_size, long long carrier_nodes);

struct AnalysisReport {
    int input_width = -1;
    int max_group_size = 0;
    int output_width = -1;
    double width_ratio = 0.0;
    long long largest_scc = 0;
    std::map<int, long long> group_largest_scc;  // group id (1-based) -> size
    int tightness_width = 0;
    long long atom_count = 0;
    std::map<std::string, long long> rules_per_formula;
    long long rule_count = 0;
    double wall_seconds = 0.0;

    std::string to_json() const;
    std::string to_csv_row() const;
};

// The certificate TD over the program's atoms, following the augmented tree.
// Throws if it does not validate against the program's primal graph.
TreeDecomposition constructed_td(const Encoding& enc, const OrderingAugmentedTd& atd);

UndirectedGraph program_primal_graph(const GroundProgram& p);

// max over bags and bag atoms of |bag ∩ scc(atom)|
int tightness_width(const TreeDecomposition& td, const GroundProgram& p);

// group id (0-based) of an atom's ordering vertex, -1 for baseline/none
std::vector<int> atom_groups(const Encoding& enc, const OrderingAugmentedTd& atd);

AnalysisReport metrics(const CnfFormula& f, const OrderingAugmentedTd& atd,
                       const Encoding& enc);

}  // namespace tdasp

#endif
