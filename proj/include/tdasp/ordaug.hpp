#ifndef TDASP_ORDAUG_HPP
#define TDASP_ORDAUG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdasp/cnf.hpp"
#include "tdasp/treedec.hpp"

namespace tdasp {

enum class Mode { R, RPrime };

struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Smallest k' with k'! >= 2^bag_size; 0 for an empty bag.
int group_size(int bag_size);

// Smallest k' such that the product of factorials of consecutive iota-blocks
// (last block possibly smaller) reaches 2^bag_size. Returns (k', #blocks).
std::pair<int, int> group_size_iota(int bag_size, int iota);

std::uint64_t factorial(int n);

// Lexicographic permutation ranking over 0..n-1 via Lehmer codes.
std::uint64_t rank_perm(const std::vector<int>& perm);
std::vector<int> unrank_perm(std::uint64_t rank, int n);

// One ordering-vertex group per maximal connected equal-bag region.
struct OrderingGroup {
    int id = -1;
    std::vector<Var> bag;                    // sorted formula variables
    std::vector<int> vertices;               // global ordering-vertex ids
    std::vector<std::pair<int, int>> blocks; // [begin,end) index ranges into vertices
    std::uint64_t num_orderings = 1;         // product of block-size factorials

    int k_prime() const { return static_cast<int>(vertices.size()); }
    int num_blocks() const { return static_cast<int>(blocks.size()); }
    int block_of_index(int idx) const;
};

// An ordering of a group is addressed by its rank: mixed radix over the
// blocks' Lehmer ranks, first block most significant. With one block this is
// the plain lexicographic permutation rank.
std::vector<int> ordering_sequence(const OrderingGroup& g, std::uint64_t rank);
std::uint64_t ordering_rank(const OrderingGroup& g, const std::vector<int>& seq);

// I_t: defined ranks (< 2^|bag|) map to the assignment whose j-th bit over
// the sorted bag equals bit j of the rank.
std::optional<Assignment> assignment_of(const OrderingGroup& g, std::uint64_t rank);
std::uint64_t rank_of_assignment(const OrderingGroup& g, const Assignment& a);

// Endpoint encoding for ordering edges: vertex ids are positive, the source
// (as tail) or destination (as head) of block j is -(j+1).
struct OrdEdge {
    int group;
    int tail;
    int head;
    bool operator<(const OrdEdge& o) const {
        return std::tie(group, tail, head) < std::tie(o.group, o.tail, o.head);
    }
    bool operator==(const OrdEdge& o) const {
        return group == o.group && tail == o.tail && head == o.head;
    }
};

struct AugNode {
    int parent = -1;
    std::vector<int> children;
    bool original = false;
    int group = -1;      // group of the node's bag; -1 for empty bags
    int psi_group = -1;  // group ordered by psi, when present
    int chain_base = -1; // original node below this chain node, -1 at leaf chains
    std::optional<std::uint64_t> phi_rank;
    std::optional<std::uint64_t> psi_rank;
    std::vector<int> phi_seq;  // materialized ordering sequences
    std::vector<int> psi_seq;
    std::vector<OrdEdge> claimed;  // E_t, filled by assign_edges
};

struct OrderingAugmentedTd {
    Mode mode = Mode::R;
    int iota = 0;  // 0 in R mode
    int root = -1;
    std::vector<AugNode> nodes;
    std::vector<OrderingGroup> groups;
    std::vector<int> node_name;   // node -> 1-based deterministic id (post-order)
    std::vector<int> post_order;  // traversal used for edge claiming and emission
    bool edges_assigned = false;

    const OrderingGroup* group_of(int node) const {
        int g = nodes[node].group;
        return g < 0 ? nullptr : &groups[g];
    }
    // TD view over the formula's primal graph (chain bags repeat region bags).
    TreeDecomposition as_td(int num_graph_vertices) const;
};

// Definition-1 augmentation over a nice TD. Chains are inserted on edges that
// cross region boundaries and below non-empty leaves; rank pairs increase
// upward, the bottom chain node is adjacent to the child.
OrderingAugmentedTd augment(const NiceTreeDecomposition& ntd, Mode mode, int iota = 0,
                            std::uint64_t node_cap = 1000000);

// Post-order pass filling each E_t with the still-unclaimed successor edges
// of phi_t (per-block sources and destinations included). Verifies that every
// ordering edge of every group ends up claimed exactly once.
void assign_edges(OrderingAugmentedTd& atd);

// Testing points of x preceding t: the children whose own group contains x,
// or the original node below the chain when x belongs to the chain's psi
// group (the child group's testing points all live in its region), or empty
// meaning the epsilon marker.
std::vector<int> pred(const OrderingAugmentedTd& atd, int x, int node);

std::string dump_json(const OrderingAugmentedTd& atd);

}  // namespace tdasp

#endif
