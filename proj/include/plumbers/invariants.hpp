#pragma once

// Functionals on top cells: constants, the degree-two knot invariant
// evaluated on representative curves, and indicators used as
// counterexamples. Component indicators are honest invariants; single-cell
// indicators are not.

#include "vassiliev.hpp"

namespace plumbers {

// Flat ids of the cells of a space in export order.
inline std::vector<std::uint64_t> sorted_bases(const stratification& s, space_tag space) {
    std::vector<std::pair<detail::cell_sort_key, std::uint64_t>> order;
    for (std::uint64_t id = 0; id < s.cells(); ++id) {
        if (space == space_tag::S && !s.singular(id)) continue;
        order.emplace_back(detail::sort_key(s, id, 0, nullptr), id);
    }
    std::sort(order.begin(), order.end());
    std::vector<std::uint64_t> out;
    out.reserve(order.size());
    for (auto& [k, id] : order) out.push_back(id);
    return out;
}

struct invariant_context {
    std::shared_ptr<stratification> strat;
    component_labels comps;
    mutable std::unordered_map<std::int32_t, rat> v2_memo; // by component label

    explicit invariant_context(std::shared_ptr<stratification> s)
        : strat(std::move(s)), comps(knot_component_labels(*strat)) {}
};

struct invariant {
    std::string name;
    std::function<rat(std::uint64_t)> eval; // top cell flat id -> value
    bool component_invariant = true;
};

inline rat v2_of_cell(const invariant_context& ctx, std::uint64_t flat_id) {
    const auto lab = ctx.comps.label[flat_id];
    if (lab < 0) throw std::domain_error("cell is singular, no knot type");
    auto it = ctx.v2_memo.find(lab);
    if (it == ctx.v2_memo.end())
        it = ctx.v2_memo.emplace(lab, v2_of(representative(ctx.strat->name_of(flat_id)))).first;
    return it->second;
}

inline invariant make_invariant(const invariant_context& ctx, const std::string& spec) {
    invariant inv;
    inv.name = spec;
    if (spec.rfind("const:", 0) == 0) {
        rat q = parse_rat(spec.substr(6));
        inv.eval = [q](std::uint64_t) { return q; };
        return inv;
    }
    if (spec == "v2") {
        inv.eval = [&ctx](std::uint64_t id) { return v2_of_cell(ctx, id); };
        return inv;
    }
    if (spec.rfind("indicator:", 0) == 0 || spec.rfind("component:", 0) == 0) {
        const bool by_component = spec[0] == 'c';
        long long want = std::stoll(spec.substr(spec.find(':') + 1));
        auto bases = sorted_bases(*ctx.strat, space_tag::P);
        if (want < 0 || want >= static_cast<long long>(bases.size()))
            throw std::invalid_argument("cell id out of range: " + spec);
        std::uint64_t target = bases[want];
        if (by_component) {
            if (ctx.comps.label[target] < 0)
                throw std::invalid_argument("component indicator needs a nonsingular cell");
            auto lab = ctx.comps.label[target];
            inv.eval = [&ctx, lab](std::uint64_t id) { return rat(ctx.comps.label[id] == lab ? 1 : 0); };
        } else {
            inv.eval = [target](std::uint64_t id) { return rat(id == target ? 1 : 0); };
            inv.component_invariant = false;
        }
        return inv;
    }
    throw std::invalid_argument("unknown invariant: " + spec);
}

// Exhaustive constancy check across face-adjacent nonsingular cells.
inline bool check_invariance(const invariant_context& ctx, const invariant& inv) {
    const auto& s = *ctx.strat;
    std::unordered_map<std::int32_t, rat> per_comp;
    for (std::uint64_t id = 0; id < s.cells(); ++id) {
        if (s.singular(id)) continue;
        if (s.dim(id) != 3 * s.m - 3) continue;
        rat v = inv.eval(id);
        auto lab = ctx.comps.label[id];
        auto it = per_comp.find(lab);
        if (it == per_comp.end())
            per_comp.emplace(lab, v);
        else if (it->second != v)
            return false;
    }
    return true;
}

// Constancy of the curve-level evaluation across every nonsingular cell,
// not only top ones; bypasses the per-component memo.
inline bool check_v2_invariance(const invariant_context& ctx) {
    const auto& s = *ctx.strat;
    std::unordered_map<std::int32_t, rat> per_comp;
    for (std::uint64_t id = 0; id < s.cells(); ++id) {
        if (s.singular(id)) continue;
        rat v = v2_of(representative(s.name_of(id)));
        auto lab = ctx.comps.label[id];
        auto it = per_comp.find(lab);
        if (it == per_comp.end())
            per_comp.emplace(lab, v);
        else if (it->second != v)
            return false;
    }
    return true;
}

} // namespace plumbers
