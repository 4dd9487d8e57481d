#pragma once

// Resolutions of singular cells and derivatives of knot invariants.
//
// A class C of size k resolved along a chosen path order contributes two
// strict orderings: the path read from its smaller endpoint and the
// reversal, entering with coefficients +1 and (-1)^{k+1}. Resolving every
// class of a cell yields 2^{#classes} top cells. The derivative of a
// functional on top cells at a sequential blowup cell is the matching
// signed sum of its values.

#include "filtration.hpp"
#include "homology.hpp"

#include <optional>

namespace plumbers {

inline int perm_parity(const std::vector<int>& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

// reconstructs the visiting order if the edges form a path covering cls
inline std::optional<std::vector<int>> path_order(const std::vector<int>& cls,
                                                  const std::vector<std::pair<int, int>>& edges) {
    const int k = static_cast<int>(cls.size());
    if (static_cast<int>(edges.size()) != k - 1) return std::nullopt;
    std::map<int, std::vector<int>> adj;
    for (int v : cls) adj[v];
    for (auto [a, b] : edges) {
        if (!adj.count(a) || !adj.count(b)) return std::nullopt;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    int start = -1;
    for (auto& [v, nb] : adj) {
        if (nb.size() > 2) return std::nullopt;
        if (nb.size() == 1 && start < 0) start = v; // smaller endpoint comes first
    }
    if (k == 1) return std::vector<int>{cls[0]};
    if (start < 0) return std::nullopt; // a cycle
    std::vector<int> order{start};
    int prev = -1, cur = start;
    while (static_cast<int>(order.size()) < k) {
        int nxt = -1;
        for (int nb : adj[cur])
            if (nb != prev) nxt = nb;
        if (nxt < 0) return std::nullopt;
        order.push_back(nxt);
        prev = cur;
        cur = nxt;
    }
    std::vector<int> seen = order;
    std::sort(seen.begin(), seen.end());
    if (seen != cls) return std::nullopt; // disconnected
    return order;
}

// rho restricted to one class, as plain pairs
inline std::vector<std::pair<int, int>> rho_on_class(const blowup_name& bn, axis d,
                                                     const std::vector<int>& cls) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& sw : bn.rho)
        if (sw.d == d && std::binary_search(cls.begin(), cls.end(), sw.a) &&
            std::binary_search(cls.begin(), cls.end(), sw.b))
            edges.emplace_back(sw.a, sw.b);
    return edges;
}

// every class carries a full path
inline bool is_sequential(const blowup_name& bn) {
    size_t used = 0;
    for (axis d : all_axes)
        for (const auto& blk : bn.base[d].blocks) {
            if (blk.size() < 2) continue;
            auto edges = rho_on_class(bn, d, blk);
            if (!path_order(blk, edges)) return false;
            used += edges.size();
        }
    return used == bn.rho.size(); // no stray pairs outside the paths
}

// splits the block holding cls into singletons ordered by ord
inline cell_name split_block(const cell_name& c, axis d, const std::vector<int>& cls,
                             const std::vector<int>& ord) {
    cell_name out = c;
    auto& blocks = out[d].blocks;
    for (size_t jb = 0; jb < blocks.size(); ++jb)
        if (blocks[jb] == cls) {
            blocks.erase(blocks.begin() + jb);
            for (size_t q = 0; q < ord.size(); ++q)
                blocks.insert(blocks.begin() + jb + q, std::vector<int>{ord[q]});
            return out;
        }
    throw std::domain_error("class is not a block of the cell");
}

// the two one-class resolutions with their coefficients
inline std::array<std::pair<cell_name, int>, 2> resolve_class(const cell_name& c, axis d,
                                                              const std::vector<int>& cls,
                                                              const std::vector<int>& ord) {
    auto rev = ord;
    std::reverse(rev.begin(), rev.end());
    const auto& fwd = ord.front() < ord.back() ? ord : rev;
    const auto& bwd = ord.front() < ord.back() ? rev : ord;
    const int k = static_cast<int>(cls.size());
    const int back_coef = k % 2 == 0 ? -1 : 1; // (-1)^{k+1}
    return {std::make_pair(split_block(c, d, cls, fwd), 1),
            std::make_pair(split_block(c, d, cls, bwd), back_coef)};
}

// all 2^{#classes} top cells of a sequential blowup cell, with coefficients
inline std::vector<std::pair<cell_name, int>> resolutions_of(const blowup_name& bn) {
    struct item {
        axis d;
        std::vector<int> cls, ord;
    };
    std::vector<item> classes;
    for (axis d : all_axes)
        for (const auto& blk : bn.base[d].blocks) {
            if (blk.size() < 2) continue;
            auto ord = path_order(blk, rho_on_class(bn, d, blk));
            if (!ord) throw std::domain_error("cell is not sequential");
            classes.push_back({d, blk, *ord});
        }
    std::vector<std::pair<cell_name, int>> out{{bn.base, 1}};
    for (const auto& it : classes) {
        std::vector<std::pair<cell_name, int>> next;
        next.reserve(out.size() * 2);
        for (const auto& [c, coef] : out) {
            auto two = resolve_class(c, it.d, it.cls, it.ord);
            next.emplace_back(two[0].first, coef * two[0].second);
            next.emplace_back(two[1].first, coef * two[1].second);
        }
        out = std::move(next);
    }
    return out;
}

// ---- interned resolution tables -----------------------------------------

// Per ordered set partition: every way to route a path through each class,
// with the 2^{#classes} resolved strict orders precomputed. The mask covers
// the partition's within-class pairs in (a, b) order.
struct resolution_option {
    std::uint32_t mask = 0;
    std::vector<std::pair<int, std::int8_t>> branches; // bit i set = class i reversed
};

struct resolution_tables {
    std::vector<std::vector<resolution_option>> per_osp;
    std::vector<std::int8_t> parity; // permutation parity per osp
};

inline resolution_tables build_resolution_tables(const osp_table& t) {
    resolution_tables rt;
    rt.per_osp.resize(t.e.size());
    rt.parity.resize(t.e.size());
    for (size_t o = 0; o < t.e.size(); ++o) {
        rt.parity[o] = static_cast<std::int8_t>(perm_parity(t.e[o].perm));
        const auto& en = t.e[o];
        // within-axis pair list in (a, b) order, with class index per pair
        std::vector<std::pair<std::pair<int, int>, int>> pair_pos;
        for (size_t ci = 0; ci < en.cls.size(); ++ci)
            for (size_t i = 0; i < en.cls[ci].size(); ++i)
                for (size_t j = i + 1; j < en.cls[ci].size(); ++j)
                    pair_pos.push_back({{en.cls[ci][i], en.cls[ci][j]}, static_cast<int>(ci)});
        std::sort(pair_pos.begin(), pair_pos.end());
        auto pair_bit = [&](int a, int b) {
            for (size_t i = 0; i < pair_pos.size(); ++i)
                if (pair_pos[i].first == std::make_pair(a, b)) return static_cast<int>(i);
            throw std::logic_error("pair not in table");
        };

        if (en.cls.empty()) {
            resolution_option id;
            id.branches.emplace_back(static_cast<int>(o), 1);
            rt.per_osp[o].push_back(std::move(id));
            continue;
        }
        // path choices per class: permutations starting at the smaller endpoint
        std::vector<std::vector<std::vector<int>>> paths(en.cls.size());
        for (size_t ci = 0; ci < en.cls.size(); ++ci) {
            auto p = en.cls[ci];
            do {
                if (p.front() < p.back()) paths[ci].push_back(p);
            } while (std::next_permutation(p.begin(), p.end()));
        }
        std::vector<size_t> pick(en.cls.size(), 0);
        while (true) {
            resolution_option opt;
            for (size_t ci = 0; ci < en.cls.size(); ++ci)
                for (size_t q = 0; q + 1 < paths[ci][pick[ci]].size(); ++q) {
                    auto [a, b] = std::minmax(paths[ci][pick[ci]][q], paths[ci][pick[ci]][q + 1]);
                    opt.mask |= 1u << pair_bit(a, b);
                }
            const auto nc = en.cls.size();
            for (std::uint32_t eps = 0; eps < (1u << nc); ++eps) {
                axis_order ro = en.ord;
                int coef = 1;
                // split classes back-to-front so block positions stay valid
                for (size_t ci = nc; ci-- > 0;) {
                    auto ord = paths[ci][pick[ci]];
                    if (eps >> ci & 1) {
                        std::reverse(ord.begin(), ord.end());
                        coef *= en.cls[ci].size() % 2 == 0 ? -1 : 1;
                    }
                    for (size_t jb = 0; jb < ro.blocks.size(); ++jb)
                        if (ro.blocks[jb] == en.cls[ci]) {
                            ro.blocks.erase(ro.blocks.begin() + jb);
                            for (size_t q = 0; q < ord.size(); ++q)
                                ro.blocks.insert(ro.blocks.begin() + jb + q,
                                                 std::vector<int>{ord[q]});
                            break;
                        }
                }
                opt.branches.emplace_back(t.id_of(ro), static_cast<std::int8_t>(coef));
            }
            rt.per_osp[o].push_back(std::move(opt));
            size_t ci = 0;
            while (ci < en.cls.size() && ++pick[ci] == paths[ci].size()) pick[ci++] = 0;
            if (ci == en.cls.size()) break;
        }
    }
    return rt;
}

// One top-dimensional blowup cell whose classes are all routed, with its
// orientation sign and full resolution list.
struct sequential_cell {
    std::uint64_t base = 0;
    std::uint32_t mask = 0;
    int sign = 0;
    std::vector<std::pair<std::uint64_t, int>> resolutions; // (top flat id, coefficient)
};

// Each base cell's global pair list, cached; blowup masks index into it.
struct pair_list_cache {
    const stratification* s = nullptr;
    std::unordered_map<std::uint64_t, std::vector<swap_label>> map;

    const std::vector<swap_label>& of(std::uint64_t base) {
        auto it = map.find(base);
        if (it == map.end()) it = map.emplace(base, class_pairs(s->name_of(base))).first;
        return it->second;
    }
};

// Orientation signs of sequential cells. Dropping one routed pair from a
// cell leaves a face whose broken class contributes, on each resolved top,
// exactly two incident cells; their signed coefficients must cancel, which
// pins every sign relative to the single-pair walls. sign() resolves a cell
// by splitting the last vertex off the final class (matching one such face
// equation) until only a wall remains; a wall's sign compares the block
// coordinate orientation against the side its forward resolution lies on,
// giving -parity * (-1)^(blocks before the class).
struct taylor_signs {
    const stratification* s = nullptr;
    const resolution_tables* rt = nullptr;
    pair_list_cache cache;
    std::unordered_map<std::uint64_t, std::int8_t> memo;

    taylor_signs(const stratification& st, const resolution_tables& r)
        : s(&st), rt(&r), cache{&st, {}} {}

    int sign(std::uint64_t base, std::uint32_t mask) {
        const std::uint64_t key = cell_complex::key(base, mask);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const auto& pairs = cache.of(base);
        auto bn = s->name_of(base);

        struct cls_ref { int d, q; const std::vector<int>* blk; };
        std::vector<cls_ref> classes;
        for (int d = 0; d < 3; ++d) {
            const auto& blocks = bn.ord[d].blocks;
            for (size_t q = 0; q < blocks.size(); ++q)
                if (blocks[q].size() >= 2) classes.push_back({d, static_cast<int>(q), &blocks[q]});
        }
        int result;
        if (__builtin_popcount(mask) == 1) {
            auto [ix, iy, iz] = s->split(base);
            const int par = rt->parity[ix] * rt->parity[iy] * rt->parity[iz];
            const auto& c = classes[0];
            int before = c.q;
            for (int d = 0; d < c.d; ++d) before += static_cast<int>(bn.ord[d].blocks.size());
            result = before % 2 == 0 ? -par : par;
        } else {
            const auto& c = classes.back();
            const int k = static_cast<int>(c.blk->size());
            std::vector<std::pair<int, int>> edges;
            for (size_t b = 0; b < pairs.size(); ++b)
                if ((mask >> b & 1) && static_cast<int>(pairs[b].d) == c.d &&
                    std::find(c.blk->begin(), c.blk->end(), pairs[b].a) != c.blk->end() &&
                    std::find(c.blk->begin(), c.blk->end(), pairs[b].b) != c.blk->end())
                    edges.emplace_back(pairs[b].a, pairs[b].b);
            auto path = *path_order(*c.blk, edges);
            const int last = path[k - 1], prev = path[k - 2];
            const swap_label tau{static_cast<axis>(c.d), std::min(prev, last),
                                 std::max(prev, last)};
            const int tbit = static_cast<int>(
                std::lower_bound(pairs.begin(), pairs.end(), tau) - pairs.begin());
            int pos = 0;
            for (int b = 0; b < tbit; ++b)
                if (mask >> b & 1) ++pos;
            const int e_int = (s->dim(base) + pos) % 2 == 0 ? 1 : -1;
            // reversal coefficient when the split head is not smallest-first
            int head_coef = 1;
            if (k >= 3 && path[0] > path[k - 2]) head_coef = k % 2 == 0 ? 1 : -1;
            cell_name fn = bn;
            auto& fblocks = fn.ord[c.d].blocks;
            std::vector<int> head(path.begin(), path.end() - 1);
            std::sort(head.begin(), head.end());
            fblocks[c.q] = std::move(head);
            fblocks.insert(fblocks.begin() + c.q + 1, std::vector<int>{last});
            const std::uint64_t fid = s->id_of(fn);
            const auto& fpairs = cache.of(fid);
            std::uint32_t fmask = 0;
            for (size_t b = 0; b < pairs.size(); ++b) {
                if (!(mask >> b & 1) || b == static_cast<size_t>(tbit)) continue;
                auto jt = std::lower_bound(fpairs.begin(), fpairs.end(), pairs[b]);
                fmask |= std::uint32_t(1) << (jt - fpairs.begin());
            }
            int prefix = 0;
            for (int d = 0; d < c.d; ++d) prefix += static_cast<int>(fn.ord[d].blocks.size());
            const int e_ext = (prefix + c.q) % 2 == 0 ? 1 : -1;
            result = -sign(fid, fmask) * head_coef * e_int * e_ext;
        }
        memo.emplace(key, static_cast<std::int8_t>(result));
        return result;
    }

    // Sign used by invariant chains. A cell over a nonsingular base with an
    // even class has zero total weight under any functional constant on knot
    // components, so its orientation is free; flipping exactly those cells
    // keeps every invariant chain a cycle while letting the boundary check
    // reject functionals that are not invariants.
    int chain_sign(std::uint64_t base, std::uint32_t mask) {
        const int sg = sign(base, mask);
        if (s->singular(base)) return sg;
        auto [ix, iy, iz] = s->split(base);
        for (int o : {ix, iy, iz})
            for (const auto& blk : s->t.e[o].cls)
                if (blk.size() % 2 == 0) return -sg;
        return sg;
    }
};

// Streams every sequential top cell of the blowup: each base with at least
// one class, each rho that restricts to a Hamiltonian path on every class.
template <class F>
void for_each_sequential_cell(const stratification& s, const resolution_tables& rt,
                              taylor_signs& signs, F&& f) {
    const auto& t = s.t;
    sequential_cell sc;
    for (std::uint64_t id = 0; id < s.cells(); ++id) {
        if (!s.coincident(id)) continue;
        auto [ix, iy, iz] = s.split(id);
        const int o3[3] = {ix, iy, iz};
        const int shift_y = t.e[ix].pair_count;
        const int shift_z = shift_y + t.e[iy].pair_count;
        for (const auto& ox : rt.per_osp[o3[0]])
            for (const auto& oy : rt.per_osp[o3[1]])
                for (const auto& oz : rt.per_osp[o3[2]]) {
                    sc.base = id;
                    sc.mask = ox.mask | oy.mask << shift_y | oz.mask << shift_z;
                    sc.resolutions.clear();
                    for (auto [bx, cx_] : ox.branches)
                        for (auto [by, cy] : oy.branches)
                            for (auto [bz, cz] : oz.branches)
                                sc.resolutions.emplace_back(s.flat(bx, by, bz),
                                                            int(cx_) * cy * cz);
                    sc.sign = signs.chain_sign(sc.base, sc.mask);
                    f(sc);
                }
    }
}

template <class F>
void for_each_sequential_cell(const stratification& s, const resolution_tables& rt, F&& f) {
    taylor_signs signs(s, rt);
    for_each_sequential_cell(s, rt, signs, std::forward<F>(f));
}

// ---- boundary at the flat-key level -------------------------------------

// Signed faces of a blowup cell addressed by (base, mask), without a
// materialized complex.
template <class Emit>
void blowup_faces_flat(const stratification& s, std::uint64_t base, std::uint32_t mask,
                       pair_list_cache& cache, Emit&& emit) {
    const auto& pairs = cache.of(base);
    const int base_dim = s.dim(base);
    if (__builtin_popcount(mask) >= 2) {
        int pos = 0;
        for (size_t b = 0; b < pairs.size(); ++b) {
            if (!(mask >> b & 1)) continue;
            emit(base, mask & ~(std::uint32_t(1) << b), (base_dim + pos) % 2 == 0 ? 1 : -1);
            ++pos;
        }
    }
    auto [ix, iy, iz] = s.split(base);
    const int id3[3] = {ix, iy, iz};
    const int r[3] = {s.t.e[ix].r, s.t.e[iy].r, s.t.e[iz].r};
    int prefix = 0;
    for (int d = 0; d < 3; ++d) {
        for (auto [fid, j] : s.t.e[id3[d]].faces) {
            int f3[3] = {ix, iy, iz};
            f3[d] = fid;
            std::uint64_t fbase = s.flat(f3[0], f3[1], f3[2]);
            const auto& fpairs = cache.of(fbase);
            std::uint32_t fmask = 0;
            for (size_t b = 0; b < pairs.size(); ++b)
                if (mask >> b & 1) {
                    auto it = std::lower_bound(fpairs.begin(), fpairs.end(), pairs[b]);
                    fmask |= std::uint32_t(1) << (it - fpairs.begin());
                }
            emit(fbase, fmask, (prefix + j) % 2 == 0 ? 1 : -1);
        }
        prefix += r[d];
    }
}

// ---- derivatives and the chain of a functional ---------------------------

// alpha maps a top cell (flat id) to a rational; the derivative at a
// sequential cell is the signed sum over its resolutions.
inline rat derivative_at(const sequential_cell& sc, const std::function<rat(std::uint64_t)>& alpha) {
    rat acc = 0;
    for (auto [top, coef] : sc.resolutions) acc += rat(coef) * alpha(top);
    return acc;
}

struct taylor_result {
    std::map<std::uint64_t, rat> chain; // cell key -> coefficient
    bool verified = false;              // boundary vanished exactly
};

inline taylor_result taylor_chain(const stratification& s, const resolution_tables& rt,
                                  const std::function<rat(std::uint64_t)>& alpha,
                                  bool verify = true) {
    taylor_result res;
    for_each_sequential_cell(s, rt, [&](const sequential_cell& sc) {
        rat d = derivative_at(sc, alpha);
        if (d != 0) res.chain[cell_complex::key(sc.base, sc.mask)] = rat(sc.sign) * d;
    });
    if (verify) {
        pair_list_cache cache{&s, {}};
        std::map<std::uint64_t, rat> acc;
        for (const auto& [key, coef] : res.chain) {
            std::uint64_t base = key >> 20;
            std::uint32_t mask = static_cast<std::uint32_t>(key & 0xfffff);
            blowup_faces_flat(s, base, mask, cache, [&](std::uint64_t fb, std::uint32_t fm, int sg) {
                auto it = acc.emplace(cell_complex::key(fb, fm), rat(0)).first;
                it->second += coef * sg;
                if (it->second == 0) acc.erase(it);
            });
        }
        res.verified = acc.empty();
    }
    return res;
}

// Vector-valued variant: coefficients live in the free module over knot
// component labels, so one vanishing boundary certifies the chain of every
// functional that is constant on components.
inline bool taylor_cycle_all_invariants(const stratification& s, const resolution_tables& rt,
                                        const component_labels& comps) {
    std::map<std::uint64_t, std::map<std::int32_t, long long>> chain;
    for_each_sequential_cell(s, rt, [&](const sequential_cell& sc) {
        auto& vec = chain[cell_complex::key(sc.base, sc.mask)];
        for (auto [top, coef] : sc.resolutions) vec[comps.label[top]] += sc.sign * coef;
        for (auto it = vec.begin(); it != vec.end();)
            it = it->second == 0 ? vec.erase(it) : std::next(it);
        if (vec.empty()) chain.erase(cell_complex::key(sc.base, sc.mask));
    });
    pair_list_cache cache{&s, {}};
    std::map<std::uint64_t, std::map<std::int32_t, long long>> acc;
    for (const auto& [key, vec] : chain) {
        std::uint64_t base = key >> 20;
        std::uint32_t mask = static_cast<std::uint32_t>(key & 0xfffff);
        blowup_faces_flat(s, base, mask, cache, [&](std::uint64_t fb, std::uint32_t fm, int sg) {
            auto& tgt = acc[cell_complex::key(fb, fm)];
            for (const auto& [lab, c] : vec) tgt[lab] += sg * c;
        });
    }
    for (const auto& [key, vec] : acc)
        for (const auto& [lab, c] : vec)
            if (c != 0) return false;
    return true;
}

// ---- stability and chord diagrams ---------------------------------------

template <class T>
int pipe_move(const basic_pipe<T>& p) { return (p.index + 2) / 3; }

// Singular points are transverse doubles or triples and no two distinct
// contact points touch the same move.
template <class T>
bool is_stable_report(const basic_report<T>& rep, const std::vector<basic_pipe<T>>& pipes) {
    if (rep.entries.empty()) return false;
    std::map<std::array<T, 3>, std::vector<const contact<T>*>> by_point;
    for (const auto& e : rep.entries) {
        if (e.kind != contact_kind::crossing) return false;
        by_point[e.lo.c].push_back(&e);
    }
    std::vector<std::pair<std::array<T, 3>, std::vector<int>>> moves_at;
    for (const auto& [pt, es] : by_point) {
        if (es.size() != 1 && es.size() != 3) return false;
        std::vector<int> mv;
        for (const auto* e : es) {
            mv.push_back(pipe_move(pipes[e->pa - 1]));
            mv.push_back(pipe_move(pipes[e->pb - 1]));
        }
        std::sort(mv.begin(), mv.end());
        mv.erase(std::unique(mv.begin(), mv.end()), mv.end());
        if (es.size() == 3 && mv.size() != 3) return false;
        moves_at.emplace_back(pt, std::move(mv));
    }
    for (size_t i = 0; i < moves_at.size(); ++i)
        for (size_t j = i + 1; j < moves_at.size(); ++j)
            for (int a : moves_at[i].second)
                if (std::binary_search(moves_at[j].second.begin(), moves_at[j].second.end(), a))
                    return false;
    return true;
}

struct chord {
    int pipe_a = 0, pipe_b = 0;
    int move_a = 0, move_b = 0;
};

template <class T>
std::vector<chord> chord_diagram_of_report(const basic_report<T>& rep,
                                           const std::vector<basic_pipe<T>>& pipes) {
    std::vector<chord> out;
    for (const auto& e : rep.entries) {
        chord c;
        c.pipe_a = e.pa;
        c.pipe_b = e.pb;
        c.move_a = pipe_move(pipes[e.pa - 1]);
        c.move_b = pipe_move(pipes[e.pb - 1]);
        out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [](const chord& a, const chord& b) {
        return std::tie(a.pipe_a, a.pipe_b) < std::tie(b.pipe_a, b.pipe_b);
    });
    return out;
}

// ---- the smallest cycle through one cell at fixed complexity -------------

// Restricted boundary keeping only faces of the same complexity, spanning
// the component of `seed` in the same-dimension adjacency graph; returns
// the unique cycle supported there, scaled to coefficient 1 at seed.
inline sparse_vec minimal_cycle(const cell_complex& B, const complexity_table& cxt,
                                std::int32_t seed) {
    const int p = cxt.cx[B.cells[seed].base];
    const int D = B.cells[seed].dim;
    auto d0 = [&](std::int32_t id) {
        sparse_vec v;
        for (auto [f, sg] : B.cells[id].boundary)
            if (cxt.cx[B.cells[f].base] == p) {
                auto it = v.emplace(f, rat(0)).first;
                it->second += sg;
                if (it->second == 0) v.erase(it);
            }
        return v;
    };
    // faces -> cofaces adjacency within the same complexity and dimension
    std::unordered_map<std::int32_t, std::vector<std::int32_t>> coface;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(B.cells.size()); ++i) {
        if (B.cells[i].dim != D || cxt.cx[B.cells[i].base] != p) continue;
        for (const auto& [f, c] : d0(i)) coface[f].push_back(i);
    }
    std::vector<std::int32_t> reach{seed};
    std::unordered_map<std::int32_t, bool> seen{{seed, true}};
    for (size_t h = 0; h < reach.size(); ++h)
        for (const auto& [f, c] : d0(reach[h]))
            for (std::int32_t nb : coface[f])
                if (!seen[nb]) {
                    seen[nb] = true;
                    reach.push_back(nb);
                }
    std::sort(reach.begin(), reach.end());
    std::vector<sparse_vec> cols;
    for (std::int32_t id : reach) cols.push_back(d0(id));
    auto ker = kernel_basis(cols);
    if (ker.size() != 1) throw std::runtime_error("restricted cycle is not unique");
    sparse_vec cyc;
    for (const auto& [t, c] : ker[0]) cyc[reach[t]] = c;
    auto at = cyc.find(seed);
    if (at == cyc.end()) throw std::runtime_error("cycle misses the seed cell");
    rat scale = at->second;
    for (auto& [i, c] : cyc) c /= scale;
    return cyc;
}

} // namespace plumbers
