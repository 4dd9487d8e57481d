#pragma once

// Interned enumeration of the stratification at fixed m and materialized
// chain complexes: the full curve space (P), its singular part (S), and the
// blowup of the singular part (B). Cell ids in a materialized complex are
// ranks in the global lexicographic order (permutation triple, then class
// list, then rho), which makes every export deterministic.

#include "cells.hpp"
#include "curves.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <unordered_map>

namespace plumbers {

struct capacity_error : std::runtime_error {
    std::uint64_t count;
    capacity_error(const std::string& what, std::uint64_t n)
        : std::runtime_error(what), count(n) {}
};

// All ordered set partitions of 1..n, shared by the three axes.
struct osp_table {
    int n = 0;
    struct entry {
        axis_order ord;
        std::vector<int> perm;              // concatenated blocks
        std::vector<int> val;               // val[v] = 1-based block position, v in 1..n
        int r = 0;                          // block count
        int perm_rank = 0;                  // rank of perm among the n! permutations
        std::vector<std::vector<int>> cls;  // blocks of size >= 2, sorted list
        std::vector<std::pair<int, int>> faces;   // (entry id after merging j,j+1; j)
        std::vector<int> cofaces;                 // entry ids one block finer
        int pair_count = 0;                 // sum over blocks of C(size,2)
    };
    std::vector<entry> e;
    std::map<std::vector<std::vector<int>>, int> index;

    int id_of(const axis_order& o) const {
        auto it = index.find(o.blocks);
        if (it == index.end()) throw std::domain_error("unknown ordered set partition");
        return it->second;
    }
};

inline osp_table build_osp_table(int n) {
    osp_table t;
    t.n = n;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<int>> all_perms;
    do all_perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    for (int pr = 0; pr < static_cast<int>(all_perms.size()); ++pr) {
        const auto& p = all_perms[pr];
        for (unsigned cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
            axis_order o;
            std::vector<int> blk{p[0]};
            bool canon = true;
            for (int i = 1; i < n; ++i) {
                if (cuts >> (i - 1) & 1) {
                    o.blocks.push_back(blk);
                    blk = {p[i]};
                } else {
                    if (p[i] < blk.back()) canon = false; // block not ascending
                    blk.push_back(p[i]);
                }
            }
            o.blocks.push_back(blk);
            if (!canon) continue;
            osp_table::entry en;
            en.ord = o;
            en.perm = p;
            en.perm_rank = pr;
            en.r = o.block_count();
            en.val.assign(n + 1, 0);
            int k = 0;
            for (const auto& b : o.blocks) {
                ++k;
                for (int v : b) en.val[v] = k;
                if (b.size() >= 2) {
                    en.cls.push_back(b);
                    en.pair_count += static_cast<int>(b.size() * (b.size() - 1) / 2);
                }
            }
            std::sort(en.cls.begin(), en.cls.end());
            t.e.push_back(std::move(en));
        }
    }
    // id order: permutation first, then class list
    std::sort(t.e.begin(), t.e.end(), [](const osp_table::entry& a, const osp_table::entry& b) {
        if (a.perm != b.perm) return a.perm < b.perm;
        return a.cls < b.cls;
    });
    for (int i = 0; i < static_cast<int>(t.e.size()); ++i) t.index[t.e[i].ord.blocks] = i;
    // faces and cofaces by lookup
    for (int i = 0; i < static_cast<int>(t.e.size()); ++i) {
        auto& en = t.e[i];
        for (int j = 0; j + 1 < en.r; ++j) {
            axis_order f = en.ord;
            std::vector<int> merged;
            std::merge(f.blocks[j].begin(), f.blocks[j].end(), f.blocks[j + 1].begin(),
                       f.blocks[j + 1].end(), std::back_inserter(merged));
            f.blocks[j] = std::move(merged);
            f.blocks.erase(f.blocks.begin() + j + 1);
            t.e[i].faces.emplace_back(t.id_of(f), j);
        }
        for (size_t jb = 0; jb < en.ord.blocks.size(); ++jb) {
            const auto& blk = en.ord.blocks[jb];
            const int k = static_cast<int>(blk.size());
            if (k < 2) continue;
            for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
                axis_order g = en.ord;
                std::vector<int> first, second;
                for (int q = 0; q < k; ++q) (mask >> q & 1 ? first : second).push_back(blk[q]);
                g.blocks[jb] = std::move(first);
                g.blocks.insert(g.blocks.begin() + jb + 1, std::move(second));
                t.e[i].cofaces.push_back(t.id_of(g));
            }
        }
        std::sort(en.cofaces.begin(), en.cofaces.end());
        en.cofaces.erase(std::unique(en.cofaces.begin(), en.cofaces.end()), en.cofaces.end());
    }
    return t;
}

// The full stratification at fixed m: flat ids over ordered-set-partition
// triples, with a precomputed singularity bitmask.
struct stratification {
    int m = 0, n = 0;
    std::uint64_t F = 0; // ordered set partitions per axis
    osp_table t;
    std::vector<bool> singular_;

    std::uint64_t cells() const { return F * F * F; }

    std::uint64_t flat(int ix, int iy, int iz) const { return (std::uint64_t(ix) * F + iy) * F + iz; }

    std::array<int, 3> split(std::uint64_t id) const {
        return {static_cast<int>(id / (F * F)), static_cast<int>(id / F % F),
                static_cast<int>(id % F)};
    }

    cell_name name_of(std::uint64_t id) const {
        auto [ix, iy, iz] = split(id);
        cell_name c;
        c.m = m;
        c[axis::x] = t.e[ix].ord;
        c[axis::y] = t.e[iy].ord;
        c[axis::z] = t.e[iz].ord;
        return c;
    }

    std::uint64_t id_of(const cell_name& c) const {
        if (!is_canonical(c)) throw std::domain_error("cell name not canonical");
        return flat(t.id_of(c[axis::x]), t.id_of(c[axis::y]), t.id_of(c[axis::z]));
    }

    int dim(std::uint64_t id) const {
        auto [ix, iy, iz] = split(id);
        return t.e[ix].r + t.e[iy].r + t.e[iz].r;
    }

    bool singular(std::uint64_t id) const { return singular_[id]; }

    // at least one coordinate equality among the vertices
    bool coincident(std::uint64_t id) const {
        auto [ix, iy, iz] = split(id);
        return t.e[ix].pair_count + t.e[iy].pair_count + t.e[iz].pair_count > 0;
    }
};

namespace detail {

// First-contact test on integer waypoint values; early exit.
inline bool has_distant_contact(const std::vector<point3<int>>& w) {
    auto pipes = pipes_from_waypoints(w);
    const int np = static_cast<int>(pipes.size());
    for (int i = 0; i < np; ++i)
        for (int j = i + 4; j < np; ++j)
            if (classify_pair(pipes[i], pipes[j])) return true;
    return false;
}

} // namespace detail

inline stratification build_stratification(int m, std::uint64_t max_cells = 2'000'000) {
    if (m < 3) throw std::domain_error("need m >= 3");
    stratification s;
    s.m = m;
    s.n = m - 1;
    // Fubini numbers grow fast; guard before enumerating.
    std::uint64_t F = 0;
    {
        std::vector<std::uint64_t> fub{1, 1};
        for (int k = 2; k <= s.n; ++k) {
            std::uint64_t a = 0, c; // a(k) = sum C(k,j) a(k-j)
            std::vector<std::uint64_t> binom(k + 1, 1);
            for (int j = 1; j <= k; ++j) binom[j] = binom[j - 1] * (k - j + 1) / j;
            c = 0;
            for (int j = 1; j <= k; ++j) c += binom[j] * fub[k - j];
            a = c;
            fub.push_back(a);
        }
        F = fub[s.n];
    }
    if (F * F * F > max_cells)
        throw capacity_error("stratification exceeds the cell budget", F * F * F);
    s.t = build_osp_table(s.n);
    s.F = s.t.e.size();
    s.singular_.assign(s.cells(), false);
    std::vector<point3<int>> w(m + 1);
    for (std::uint64_t ix = 0; ix < s.F; ++ix) {
        for (std::uint64_t iy = 0; iy < s.F; ++iy) {
            for (std::uint64_t iz = 0; iz < s.F; ++iz) {
                const auto &ex = s.t.e[ix], &ey = s.t.e[iy], &ez = s.t.e[iz];
                w[0] = {};
                w[m][axis::x] = ex.r + 1;
                w[m][axis::y] = ey.r + 1;
                w[m][axis::z] = ez.r + 1;
                for (int j = 1; j < m; ++j) {
                    w[j][axis::x] = ex.val[j];
                    w[j][axis::y] = ey.val[j];
                    w[j][axis::z] = ez.val[j];
                }
                if (detail::has_distant_contact(w))
                    s.singular_[s.flat(ix, iy, iz)] = true;
            }
        }
    }
    return s;
}

// ---- materialized chain complexes ---------------------------------------

enum class space_tag { P, S, B };

inline char space_char(space_tag s) { return s == space_tag::P ? 'P' : s == space_tag::S ? 'S' : 'B'; }

// One cell of a materialized complex. Base cells carry rho_mask = 0; blowup
// cells a nonempty bitmask over the base's within-class pairs in global
// order.
struct complex_cell {
    std::uint64_t base = 0; // flat id in the stratification
    std::uint32_t rho_mask = 0;
    int dim = 0;
    std::vector<std::pair<std::int32_t, std::int8_t>> boundary; // (cell id, sign)
};

struct cell_complex {
    int m = 0;
    space_tag space = space_tag::P;
    std::shared_ptr<stratification> strat;
    std::vector<complex_cell> cells;                       // sorted lexicographically
    std::unordered_map<std::uint64_t, std::int32_t> index; // key -> id
    int top_dim = 0;

    static std::uint64_t key(std::uint64_t base, std::uint32_t mask) {
        return base << 20 | mask;
    }

    std::int32_t id_of(std::uint64_t base, std::uint32_t mask = 0) const {
        auto it = index.find(key(base, mask));
        return it == index.end() ? -1 : it->second;
    }

    cell_name name_of(std::int32_t id) const { return strat->name_of(cells[id].base); }

    blowup_name blowup_name_of(std::int32_t id) const {
        const auto& c = cells[id];
        blowup_name bn{strat->name_of(c.base), {}};
        auto pairs = class_pairs(bn.base);
        for (size_t i = 0; i < pairs.size(); ++i)
            if (c.rho_mask >> i & 1) bn.rho.push_back(pairs[i]);
        return bn;
    }

    std::vector<std::int32_t> cells_of_dim(int d) const {
        std::vector<std::int32_t> out;
        for (std::int32_t i = 0; i < static_cast<std::int32_t>(cells.size()); ++i)
            if (cells[i].dim == d) out.push_back(i);
        return out;
    }
};

namespace detail {

// global order key for sorting cells: permutation ranks, then class list,
// then rho. Class/rho lists are encoded as flat byte strings.
struct cell_sort_key {
    std::array<int, 3> pr{};
    std::string tail;

    bool operator<(const cell_sort_key& o) const {
        if (pr != o.pr) return pr < o.pr;
        return tail < o.tail;
    }
};

inline cell_sort_key sort_key(const stratification& s, std::uint64_t base, std::uint32_t mask,
                              const std::vector<swap_label>* pairs) {
    auto [ix, iy, iz] = s.split(base);
    cell_sort_key k;
    k.pr = {s.t.e[ix].perm_rank, s.t.e[iy].perm_rank, s.t.e[iz].perm_rank};
    const osp_table::entry* ents[3] = {&s.t.e[ix], &s.t.e[iy], &s.t.e[iz]};
    for (int d = 0; d < 3; ++d)
        for (const auto& cls : ents[d]->cls) {
            k.tail += static_cast<char>(d + 1);
            for (int v : cls) k.tail += static_cast<char>(v + 64);
            k.tail += '\0';
        }
    if (mask && pairs) {
        k.tail += '\1';
        for (size_t i = 0; i < pairs->size(); ++i)
            if (mask >> i & 1) {
                k.tail += static_cast<char>(static_cast<int>((*pairs)[i].d) + 1);
                k.tail += static_cast<char>((*pairs)[i].a + 64);
                k.tail += static_cast<char>((*pairs)[i].b + 64);
            }
    }
    return k;
}

} // namespace detail

// Builds the chain complex of the full space (every stratum) or of the
// singular part (strata with nonempty singularity report).
inline cell_complex build_complex(std::shared_ptr<stratification> strat, space_tag space) {
    if (space == space_tag::B) throw std::domain_error("use build_blowup for the blowup complex");
    cell_complex cx;
    cx.m = strat->m;
    cx.space = space;
    cx.strat = strat;
    const auto& s = *strat;

    std::vector<std::pair<detail::cell_sort_key, std::uint64_t>> order;
    for (std::uint64_t id = 0; id < s.cells(); ++id) {
        if (space == space_tag::S && !s.singular(id)) continue;
        order.emplace_back(detail::sort_key(s, id, 0, nullptr), id);
    }
    std::sort(order.begin(), order.end());

    cx.cells.resize(order.size());
    cx.index.reserve(order.size() * 2);
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(order.size()); ++i) {
        auto base = order[i].second;
        cx.cells[i].base = base;
        cx.cells[i].dim = s.dim(base);
        cx.index[cell_complex::key(base, 0)] = i;
        cx.top_dim = std::max(cx.top_dim, cx.cells[i].dim);
    }
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(cx.cells.size()); ++i) {
        auto [ix, iy, iz] = s.split(cx.cells[i].base);
        const int r[3] = {s.t.e[ix].r, s.t.e[iy].r, s.t.e[iz].r};
        const int id3[3] = {ix, iy, iz};
        int prefix = 0;
        for (int d = 0; d < 3; ++d) {
            for (auto [fid, j] : s.t.e[id3[d]].faces) {
                int f3[3] = {ix, iy, iz};
                f3[d] = fid;
                std::uint64_t fbase = s.flat(f3[0], f3[1], f3[2]);
                std::int32_t tgt = cx.id_of(fbase);
                if (tgt < 0) continue; // cannot happen: closures stay in the space
                int sign = (prefix + j) % 2 == 0 ? 1 : -1;
                cx.cells[i].boundary.emplace_back(tgt, static_cast<std::int8_t>(sign));
            }
            prefix += r[d];
        }
    }
    return cx;
}

// Homotopical blowup: one cell per (base cell carrying at least one
// coordinate equality, nonempty set of within-class transpositions).
// External boundary terms coarsen the base keeping rho; internal terms drop
// one transposition. Bases range over every cell with a nontrivial class,
// singular or not; boundary cancellation for derivative chains needs both
// refinements of a split class, and one of the two can be an embedded cell.
inline cell_complex build_blowup(std::shared_ptr<stratification> strat,
                                 std::uint64_t max_cells = 2'000'000) {
    cell_complex cx;
    cx.m = strat->m;
    cx.space = space_tag::B;
    cx.strat = strat;
    const auto& s = *strat;

    std::uint64_t total = 0;
    for (std::uint64_t id = 0; id < s.cells(); ++id) {
        if (!s.coincident(id)) continue;
        auto [ix, iy, iz] = s.split(id);
        int t = s.t.e[ix].pair_count + s.t.e[iy].pair_count + s.t.e[iz].pair_count;
        total += (std::uint64_t(1) << t) - 1;
    }
    if (total > max_cells) throw capacity_error("blowup exceeds the cell budget", total);

    std::vector<std::pair<detail::cell_sort_key, std::pair<std::uint64_t, std::uint32_t>>> order;
    order.reserve(total);
    std::unordered_map<std::uint64_t, std::vector<swap_label>> pairs_of; // base -> global pair list
    for (std::uint64_t id = 0; id < s.cells(); ++id) {
        if (!s.coincident(id)) continue;
        auto pairs = class_pairs(s.name_of(id));
        for (std::uint32_t mask = 1; mask < (1u << pairs.size()); ++mask)
            order.emplace_back(detail::sort_key(s, id, mask, &pairs), std::make_pair(id, mask));
        pairs_of[id] = std::move(pairs);
    }
    std::sort(order.begin(), order.end());

    cx.cells.resize(order.size());
    cx.index.reserve(order.size() * 2);
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(order.size()); ++i) {
        auto [base, mask] = order[i].second;
        cx.cells[i].base = base;
        cx.cells[i].rho_mask = mask;
        cx.cells[i].dim = s.dim(base) + __builtin_popcount(mask) - 1;
        cx.index[cell_complex::key(base, mask)] = i;
        cx.top_dim = std::max(cx.top_dim, cx.cells[i].dim);
    }
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(cx.cells.size()); ++i) {
        auto& cc = cx.cells[i];
        const auto& pairs = pairs_of[cc.base];
        const int base_dim = s.dim(cc.base);
        // internal terms
        if (__builtin_popcount(cc.rho_mask) >= 2) {
            int pos = 0;
            for (size_t b = 0; b < pairs.size(); ++b) {
                if (!(cc.rho_mask >> b & 1)) continue;
                std::uint32_t sub = cc.rho_mask & ~(1u << b);
                int sign = (base_dim + pos) % 2 == 0 ? 1 : -1;
                cc.boundary.emplace_back(cx.id_of(cc.base, sub), static_cast<std::int8_t>(sign));
                ++pos;
            }
        }
        // external terms: remap rho into the face's pair list
        auto [ix, iy, iz] = s.split(cc.base);
        const int id3[3] = {ix, iy, iz};
        const int r[3] = {s.t.e[ix].r, s.t.e[iy].r, s.t.e[iz].r};
        int prefix = 0;
        for (int d = 0; d < 3; ++d) {
            for (auto [fid, j] : s.t.e[id3[d]].faces) {
                int f3[3] = {ix, iy, iz};
                f3[d] = fid;
                std::uint64_t fbase = s.flat(f3[0], f3[1], f3[2]);
                const auto& fpairs = pairs_of.at(fbase);
                std::uint32_t fmask = 0;
                for (size_t b = 0; b < pairs.size(); ++b)
                    if (cc.rho_mask >> b & 1) {
                        auto it = std::lower_bound(fpairs.begin(), fpairs.end(), pairs[b]);
                        fmask |= 1u << (it - fpairs.begin());
                    }
                int sign = (prefix + j) % 2 == 0 ? 1 : -1;
                cc.boundary.emplace_back(cx.id_of(fbase, fmask), static_cast<std::int8_t>(sign));
            }
            prefix += r[d];
        }
    }
    return cx;
}

// d(d(cell)) accumulated over signed faces; empty result means d^2 = 0.
inline std::map<std::int32_t, int> d_squared(const cell_complex& cx, std::int32_t id) {
    std::map<std::int32_t, int> acc;
    for (auto [f, s1] : cx.cells[id].boundary)
        for (auto [g, s2] : cx.cells[f].boundary) {
            auto it = acc.emplace(g, 0).first;
            it->second += int(s1) * int(s2);
            if (it->second == 0) acc.erase(it);
        }
    return acc;
}

} // namespace plumbers
