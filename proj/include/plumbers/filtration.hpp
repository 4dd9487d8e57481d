#pragma once

// Complexity of singular cells and connected components of the knot part.
//
// A singular cell whose contact report consists of transverse crossings at
// pairwise distinct points gets the crossing count. Anything else takes the
// maximum over its singular refinement cofaces, which are already resolved
// when cells are processed by descending dimension. Cells with no singular
// coface at all fall back to the component count of their contact locus and
// are flagged.

#include "complexes.hpp"

namespace plumbers {

inline basic_report<int> value_report(const stratification& s, std::uint64_t id) {
    auto [ix, iy, iz] = s.split(id);
    const auto &ex = s.t.e[ix], &ey = s.t.e[iy], &ez = s.t.e[iz];
    std::vector<point3<int>> w(s.m + 1);
    w[0] = {};
    w[s.m][axis::x] = ex.r + 1;
    w[s.m][axis::y] = ey.r + 1;
    w[s.m][axis::z] = ez.r + 1;
    for (int j = 1; j < s.m; ++j) {
        w[j][axis::x] = ex.val[j];
        w[j][axis::y] = ey.val[j];
        w[j][axis::z] = ez.val[j];
    }
    return report_from_waypoints(w);
}

template <class T>
bool simple_report(const basic_report<T>& rep) {
    if (rep.entries.empty()) return false;
    std::vector<point3<T>> pts;
    for (const auto& e : rep.entries) {
        if (e.kind != contact_kind::crossing) return false;
        pts.push_back(e.lo);
    }
    std::sort(pts.begin(), pts.end(), [](const point3<T>& a, const point3<T>& b) { return a.c < b.c; });
    return std::adjacent_find(pts.begin(), pts.end(), [](const point3<T>& a, const point3<T>& b) {
               return a.c == b.c;
           }) == pts.end();
}

// Three pairwise crossings at one common point and nothing else.
template <class T>
bool isolated_triple_report(const basic_report<T>& rep) {
    if (rep.entries.size() != 3) return false;
    for (const auto& e : rep.entries)
        if (e.kind != contact_kind::crossing || !(e.lo.c == rep.entries[0].lo.c)) return false;
    return true;
}

struct complexity_table {
    std::vector<int> cx;      // by flat id; 0 on nonsingular cells
    std::vector<bool> orphan; // fallback to locus component count
    int max_cx = 0;
};

inline complexity_table complexity(const stratification& s) {
    complexity_table t;
    t.cx.assign(s.cells(), 0);
    t.orphan.assign(s.cells(), false);

    std::vector<std::uint64_t> sing;
    for (std::uint64_t id = 0; id < s.cells(); ++id)
        if (s.singular(id)) sing.push_back(id);
    std::stable_sort(sing.begin(), sing.end(), [&](std::uint64_t a, std::uint64_t b) {
        return s.dim(a) > s.dim(b);
    });

    const int top = 3 * s.m - 4;
    for (std::uint64_t id : sing) {
        if (s.dim(id) == top) {
            // top cells of the singular part separate knot chambers like a
            // single transverse crossing, corner touches and double-contact
            // walls included
            t.cx[id] = 1;
            t.max_cx = std::max(t.max_cx, 1);
            continue;
        }
        auto rep = value_report(s, id);
        if (simple_report(rep)) {
            t.cx[id] = static_cast<int>(rep.entries.size());
        } else {
            auto [ix, iy, iz] = s.split(id);
            const int id3[3] = {ix, iy, iz};
            int best = -1;
            for (int d = 0; d < 3; ++d)
                for (int cf : s.t.e[id3[d]].cofaces) {
                    int c3[3] = {ix, iy, iz};
                    c3[d] = cf;
                    std::uint64_t cid = s.flat(c3[0], c3[1], c3[2]);
                    if (s.singular(cid)) best = std::max(best, t.cx[cid]);
                }
            if (best < 0) {
                t.cx[id] = rep.components;
                t.orphan[id] = true;
            } else {
                t.cx[id] = best;
            }
        }
        t.max_cx = std::max(t.max_cx, t.cx[id]);
    }
    return t;
}

namespace detail {

struct union_find {
    std::vector<std::int32_t> p;
    explicit union_find(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::int32_t find(std::int32_t a) {
        while (p[a] != a) a = p[a] = p[p[a]];
        return a;
    }
    void unite(std::int32_t a, std::int32_t b) { p[find(a)] = find(b); }
};

} // namespace detail

// Connected components of the complement of the singular part: cells are
// joined across face relations that stay nonsingular. Returns a label per
// flat id (-1 on singular cells) and the component count.
struct component_labels {
    std::vector<std::int32_t> label;
    int count = 0;
};

inline component_labels knot_component_labels(const stratification& s) {
    detail::union_find uf(s.cells());
    for (std::uint64_t id = 0; id < s.cells(); ++id) {
        if (s.singular(id)) continue;
        auto [ix, iy, iz] = s.split(id);
        const int id3[3] = {ix, iy, iz};
        for (int d = 0; d < 3; ++d)
            for (auto [fid, j] : s.t.e[id3[d]].faces) {
                int f3[3] = {ix, iy, iz};
                f3[d] = fid;
                std::uint64_t fbase = s.flat(f3[0], f3[1], f3[2]);
                if (!s.singular(fbase)) uf.unite(static_cast<std::int32_t>(id), static_cast<std::int32_t>(fbase));
            }
    }
    component_labels out;
    out.label.assign(s.cells(), -1);
    std::unordered_map<std::int32_t, std::int32_t> rename;
    for (std::uint64_t id = 0; id < s.cells(); ++id) {
        if (s.singular(id)) continue;
        auto root = uf.find(static_cast<std::int32_t>(id));
        auto it = rename.find(root);
        if (it == rename.end()) it = rename.emplace(root, out.count++).first;
        out.label[id] = it->second;
    }
    return out;
}

inline int knot_components(const stratification& s) { return knot_component_labels(s).count; }

} // namespace plumbers
