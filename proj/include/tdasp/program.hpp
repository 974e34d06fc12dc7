#ifndef TDASP_PROGRAM_HPP
#define TDASP_PROGRAM_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace tdasp {

struct Rule {
    int head = -1;  // -1: integrity constraint
    std::vector<int> pos;
    std::vector<int> neg;
    std::string prov;  // formula tag: "1".."19", primed "1p".., or "clark"
    int node = -1;     // emitting augmented-tree node, -1 if none
};

// Normal ground program over interned atoms. Rules form a set: duplicates
// (same head and bodies) are dropped, the first emitter keeps the provenance.
struct GroundProgram {
    std::vector<std::string> atom_names;
    std::unordered_map<std::string, int> atom_ids;
    std::vector<Rule> rules;

    int intern(const std::string& name);
    const std::string& name(int id) const { return atom_names[id]; }
    int num_atoms() const { return static_cast<int>(atom_names.size()); }
    bool add_rule(int head, std::vector<int> pos, std::vector<int> neg, std::string prov,
                  int node = -1);

   private:
    std::map<std::tuple<int, std::vector<int>, std::vector<int>>, int> seen_;
};

// Grounder-compatible text: `h.`, `h :- b1, not b2.`, `:- ...`.
// With provenance each line carries its formula tag as a trailing comment.
std::string emit_text(const GroundProgram& p, bool provenance = false);

}  // namespace tdasp

#endif
