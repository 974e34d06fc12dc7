#include "tdasp/program.hpp"

#include <algorithm>
#include <sstream>

namespace tdasp {

int GroundProgram::intern(const std::string& name) {
    auto it = atom_ids.find(name);
    if (it != atom_ids.end()) return it->second;
    int id = static_cast<int>(atom_names.size());
    atom_names.push_back(name);
    atom_ids.emplace(name, id);
    return id;
}

bool GroundProgram::add_rule(int head, std::vector<int> pos, std::vector<int> neg,
                             std::string prov, int node) {
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    std::sort(neg.begin(), neg.end());
    neg.erase(std::unique(neg.begin(), neg.end()), neg.end());
    if (head >= 0) {
        // head never occurs in its own body
        if (std::binary_search(pos.begin(), pos.end(), head) ||
            std::binary_search(neg.begin(), neg.end(), head))
            throw std::logic_error("rule: head in body: " + name(head));
    }
    for (int a : pos)
        if (std::binary_search(neg.begin(), neg.end(), a))
            throw std::logic_error("rule: atom both positive and negative: " + name(a));
    auto key = std::make_tuple(head, pos, neg);
    if (seen_.count(key)) return false;
    seen_.emplace(std::move(key), static_cast<int>(rules.size()));
    rules.push_back(Rule{head, std::move(pos), std::move(neg), std::move(prov), node});
    return true;
}

std::string emit_text(const GroundProgram& p, bool provenance) {
    std::ostringstream out;
    for (const Rule& r : p.rules) {
        bool first = true;
        if (r.head >= 0) out << p.name(r.head);
        if (!r.pos.empty() || !r.neg.empty()) {
            out << (r.head >= 0 ? " :- " : ":- ");
            for (int a : r.pos) {
                if (!first) out << ", ";
                out << p.name(a);
                first = false;
            }
            for (int a : r.neg) {
                if (!first) out << ", ";
                out << "not " << p.name(a);
                first = false;
            }
        }
        out << ".";
        if (provenance) out << " % f" << r.prov;
        out << "\n";
    }
    return out.str();
}

}  // namespace tdasp
