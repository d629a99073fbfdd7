#include "oracle.hpp"

#include <algorithm>

namespace wcausal::testing {

namespace {

bool in_set(const std::vector<std::uint32_t>& sorted, std::uint32_t id) {
    return std::binary_search(sorted.begin(), sorted.end(), id);
}

}  // namespace

bool verify_stable(const GroundProgram& program, const std::vector<std::uint32_t>& model) {
    // Constraints must hold under the candidate.
    for (const auto& r : program.rules) {
        if (r.cr) continue;
        bool body_sat = true;
        for (auto p : r.pos)
            if (!in_set(model, p)) body_sat = false;
        for (auto n : r.neg)
            if (in_set(model, n)) body_sat = false;
        if (r.head < 0 && body_sat) return false;
    }
    // Least model of the reduct.
    std::vector<char> derived(program.atoms.size(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : program.rules) {
            if (r.cr || r.head < 0) continue;
            bool blocked = false;
            for (auto n : r.neg)
                if (in_set(model, n)) blocked = true;
            if (blocked) continue;
            bool fires = true;
            for (auto p : r.pos)
                if (!derived[p]) fires = false;
            if (fires && !derived[r.head]) {
                derived[r.head] = 1;
                changed = true;
            }
        }
    }
    for (std::uint32_t a = 0; a < program.atoms.size(); ++a)
        if ((derived[a] == 1) != in_set(model, a)) return false;
    return true;
}

std::vector<std::vector<std::uint32_t>> brute_force_answer_sets(const GroundProgram& program) {
    std::size_t n = program.atoms.size();
    if (n > 22) throw std::runtime_error("atom universe too large for brute force");
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        std::vector<std::uint32_t> candidate;
        for (std::uint32_t a = 0; a < n; ++a)
            if (mask & (1ULL << a)) candidate.push_back(a);
        if (verify_stable(program, candidate)) out.push_back(std::move(candidate));
    }
    std::sort(out.begin(), out.end());
    return out;
}

GroundProgram random_program(std::mt19937& rng, int n_atoms, int n_rules) {
    GroundProgram p;
    std::vector<std::uint32_t> ids;
    for (int i = 0; i < n_atoms; ++i)
        ids.push_back(p.atoms.value_atom("p" + std::to_string(i), {}, -1, false, "true"));
    std::uniform_int_distribution<int> atom_pick(0, n_atoms - 1);
    std::uniform_int_distribution<int> len_pick(0, 2);
    std::uniform_int_distribution<int> kind_pick(0, 9);
    for (int i = 0; i < n_rules; ++i) {
        GroundRule r;
        r.head = kind_pick(rng) == 0 ? -1 : static_cast<std::int32_t>(ids[atom_pick(rng)]);
        int pos_len = len_pick(rng);
        int neg_len = len_pick(rng);
        for (int j = 0; j < pos_len; ++j) r.pos.push_back(ids[atom_pick(rng)]);
        for (int j = 0; j < neg_len; ++j) r.neg.push_back(ids[atom_pick(rng)]);
        r.prov.kind = Provenance::Kind::Fact;
        p.rules.push_back(std::move(r));
    }
    return p;
}

}  // namespace wcausal::testing
