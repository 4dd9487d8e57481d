#pragma once

// Cell names for the coordinate stratification of the space of plumbers'
// curves with m moves. A cell records, per axis, the ordered set partition
// of the vertex indices 1..m-1: blocks listed in increasing coordinate
// order, a block of size >= 2 meaning those vertices share the coordinate.
// The canonical name sorts each block's contents numerically.

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plumbers {

enum class axis : std::uint8_t { x = 0, y = 1, z = 2 };

inline constexpr std::array<axis, 3> all_axes{axis::x, axis::y, axis::z};

inline char axis_char(axis d) { return "xyz"[static_cast<int>(d)]; }

inline std::optional<axis> axis_from_char(char c) {
    switch (c) {
    case 'x': return axis::x;
    case 'y': return axis::y;
    case 'z': return axis::z;
    default: return std::nullopt;
    }
}

// One axis of a cell name: ordered blocks partitioning 1..m-1.
struct axis_order {
    std::vector<std::vector<int>> blocks;

    int block_count() const { return static_cast<int>(blocks.size()); }

    std::vector<int> perm() const {
        std::vector<int> p;
        for (const auto& b : blocks) p.insert(p.end(), b.begin(), b.end());
        return p;
    }

    bool operator==(const axis_order& o) const { return blocks == o.blocks; }
};

struct cell_name {
    int m = 0;
    std::array<axis_order, 3> ord;

    const axis_order& operator[](axis d) const { return ord[static_cast<int>(d)]; }
    axis_order& operator[](axis d) { return ord[static_cast<int>(d)]; }

    bool operator==(const cell_name& o) const { return m == o.m && ord == o.ord; }
};

// A transposition (a b)_d: an unordered vertex pair decorated with an axis.
struct swap_label {
    axis d;
    int a, b; // a < b

    bool operator==(const swap_label& o) const { return d == o.d && a == o.a && b == o.b; }
    bool operator<(const swap_label& o) const {
        if (d != o.d) return d < o.d;
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
};

inline swap_label make_swap(axis d, int a, int b) {
    if (a == b) throw std::domain_error("transposition needs distinct vertices");
    if (a > b) std::swap(a, b);
    return swap_label{d, a, b};
}

inline bool well_formed(const cell_name& c) {
    if (c.m < 3) return false;
    const int n = c.m - 1;
    for (axis d : all_axes) {
        std::vector<char> seen(n + 1, 0);
        int total = 0;
        for (const auto& b : c[d].blocks) {
            if (b.empty()) return false;
            for (int v : b) {
                if (v < 1 || v > n || seen[v]) return false;
                seen[v] = 1;
                ++total;
            }
        }
        if (total != n) return false;
    }
    return true;
}

inline int cell_dim(const cell_name& c) {
    int r = 0;
    for (axis d : all_axes) r += c[d].block_count();
    return r;
}

inline int cell_codim(const cell_name& c) { return 3 * (c.m - 1) - cell_dim(c); }

inline bool is_canonical(const cell_name& c) {
    for (axis d : all_axes)
        for (const auto& b : c[d].blocks)
            if (!std::is_sorted(b.begin(), b.end())) return false;
    return true;
}

inline cell_name canonicalize(cell_name c) {
    for (axis d : all_axes)
        for (auto& b : c[d].blocks) std::sort(b.begin(), b.end());
    return c;
}

// positions (0-based) of the given indices in perm; nullopt unless they are
// consecutive there.
inline bool is_admissible(const std::vector<int>& indices, const std::vector<int>& perm) {
    if (indices.empty()) return false;
    std::vector<int> pos;
    for (size_t p = 0; p < perm.size(); ++p)
        if (std::find(indices.begin(), indices.end(), perm[p]) != indices.end())
            pos.push_back(static_cast<int>(p));
    if (pos.size() != indices.size()) return false; // some index missing
    return pos.back() - pos.front() + 1 == static_cast<int>(pos.size());
}

inline bool is_admissible(const std::vector<int>& indices, axis d, const cell_name& c) {
    for (int v : indices)
        if (v < 1 || v > c.m - 1) throw std::domain_error("vertex index out of range");
    return is_admissible(indices, c[d].perm());
}

// The |C|-1 adjacent transpositions of an admissible set, in block order.
inline std::vector<swap_label> tau_of(const std::vector<int>& indices, axis d,
                                      const std::vector<int>& perm) {
    if (!is_admissible(indices, perm)) throw std::domain_error("set not admissible");
    std::vector<int> in_order;
    for (int v : perm)
        if (std::find(indices.begin(), indices.end(), v) != indices.end()) in_order.push_back(v);
    std::vector<swap_label> out;
    for (size_t i = 0; i + 1 < in_order.size(); ++i)
        out.push_back(make_swap(d, in_order[i], in_order[i + 1]));
    return out;
}

inline std::vector<swap_label> tau_of(const std::vector<int>& indices, axis d, const cell_name& c) {
    return tau_of(indices, d, c[d].perm());
}

// Builds a (possibly non-canonical) name from per-axis permutations plus the
// classes, verifying admissibility. Class blocks keep their permutation order.
inline cell_name from_perm_classes(int m, const std::array<std::vector<int>, 3>& perms,
                                   const std::vector<std::pair<axis, std::vector<int>>>& classes) {
    cell_name c;
    c.m = m;
    const int n = m - 1;
    for (axis d : all_axes) {
        const auto& perm = perms[static_cast<int>(d)];
        if (static_cast<int>(perm.size()) != n) throw std::domain_error("bad permutation length");
        std::vector<int> cls_at(n, -1); // position -> class id or -1
        int cls_id = 0;
        for (const auto& [cd, idx] : classes) {
            if (cd != d) { ++cls_id; continue; }
            if (idx.size() < 2) throw std::domain_error("class needs >= 2 indices");
            if (!is_admissible(idx, perm)) throw std::domain_error("class not admissible");
            for (size_t p = 0; p < perm.size(); ++p)
                if (std::find(idx.begin(), idx.end(), perm[p]) != idx.end()) {
                    if (cls_at[p] != -1) throw std::domain_error("classes overlap");
                    cls_at[p] = cls_id;
                }
            ++cls_id;
        }
        auto& ax = c[d];
        for (int p = 0; p < n;) {
            if (cls_at[p] == -1) {
                ax.blocks.push_back({perm[p]});
                ++p;
            } else {
                std::vector<int> blk;
                int id = cls_at[p];
                while (p < n && cls_at[p] == id) blk.push_back(perm[p++]);
                ax.blocks.push_back(std::move(blk));
            }
        }
    }
    if (!well_formed(c)) throw std::domain_error("malformed cell name");
    return c;
}

// Classes of the name as (axis, sorted indices), sorted; used for ordering
// and serialization.
inline std::vector<std::pair<axis, std::vector<int>>> class_list(const cell_name& c) {
    std::vector<std::pair<axis, std::vector<int>>> out;
    for (axis d : all_axes)
        for (const auto& b : c[d].blocks)
            if (b.size() >= 2) {
                auto s = b;
                std::sort(s.begin(), s.end());
                out.emplace_back(d, std::move(s));
            }
    std::sort(out.begin(), out.end());
    return out;
}

// Global order: permutation triple first, then the class list.
inline bool lex_less(const cell_name& a, const cell_name& b) {
    for (axis d : all_axes) {
        auto pa = a[d].perm(), pb = b[d].perm();
        if (pa != pb) return pa < pb;
    }
    return class_list(a) < class_list(b);
}

// Codimension-one faces with incidence signs. Merging blocks j, j+1 (0-based)
// of axis d carries the sign (-1)^(prefix(d) + j), prefix counting blocks of
// earlier axes. Faces where a coordinate would reach 0 or 1 leave the open
// cube and do not occur in this model.
inline std::vector<std::pair<cell_name, int>> faces_with_signs(const cell_name& c) {
    assert(is_canonical(c));
    std::vector<std::pair<cell_name, int>> out;
    int prefix = 0;
    for (axis d : all_axes) {
        const auto& blocks = c[d].blocks;
        for (int j = 0; j + 1 < static_cast<int>(blocks.size()); ++j) {
            cell_name f = c;
            auto& fb = f[d].blocks;
            std::vector<int> merged;
            std::merge(blocks[j].begin(), blocks[j].end(), blocks[j + 1].begin(),
                       blocks[j + 1].end(), std::back_inserter(merged));
            fb[j] = std::move(merged);
            fb.erase(fb.begin() + j + 1);
            out.emplace_back(std::move(f), (prefix + j) % 2 == 0 ? 1 : -1);
        }
        prefix += c[d].block_count();
    }
    return out;
}

inline std::vector<cell_name> coarsenings(const cell_name& c) {
    std::vector<cell_name> out;
    for (auto& [f, s] : faces_with_signs(c)) out.push_back(std::move(f));
    return out;
}

// Cells one dimension higher having c as a codimension-one face: split one
// block of size k into an ordered pair of nonempty sub-blocks (2^k - 2 ways).
inline std::vector<cell_name> refinement_cofaces(const cell_name& c) {
    assert(is_canonical(c));
    std::vector<cell_name> out;
    for (axis d : all_axes) {
        const auto& blocks = c[d].blocks;
        for (size_t j = 0; j < blocks.size(); ++j) {
            const auto& blk = blocks[j];
            const int k = static_cast<int>(blk.size());
            if (k < 2) continue;
            for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
                std::vector<int> first, second;
                for (int i = 0; i < k; ++i)
                    (mask >> i & 1 ? first : second).push_back(blk[i]);
                cell_name g = c;
                auto& gb = g[d].blocks;
                gb[j] = std::move(first);
                gb.insert(gb.begin() + j + 1, std::move(second));
                out.push_back(std::move(g));
            }
        }
    }
    return out;
}

// ---- blowup cells -------------------------------------------------------

// A blowup cell over a singular base: the base name plus a nonempty set rho
// of transpositions, each supported inside one class of the base. Dimension
// is dim(base) + |rho| - 1.
struct blowup_name {
    cell_name base;
    std::vector<swap_label> rho; // sorted by (axis, a, b)

    bool operator==(const blowup_name& o) const { return base == o.base && rho == o.rho; }
};

// All within-class transpositions of the base, in global order.
inline std::vector<swap_label> class_pairs(const cell_name& c) {
    std::vector<swap_label> out;
    for (axis d : all_axes)
        for (const auto& b : c[d].blocks)
            for (size_t i = 0; i + 1 < b.size(); ++i)
                for (size_t j = i + 1; j < b.size(); ++j)
                    out.push_back(make_swap(d, b[i], b[j]));
    std::sort(out.begin(), out.end());
    return out;
}

inline bool valid_blowup(const blowup_name& bn) {
    if (bn.rho.empty() || !is_canonical(bn.base)) return false;
    if (!std::is_sorted(bn.rho.begin(), bn.rho.end())) return false;
    if (std::adjacent_find(bn.rho.begin(), bn.rho.end()) != bn.rho.end()) return false;
    auto t = class_pairs(bn.base);
    for (const auto& s : bn.rho)
        if (!std::binary_search(t.begin(), t.end(), s)) return false;
    return true;
}

inline int blowup_dim(const blowup_name& bn) {
    return cell_dim(bn.base) + static_cast<int>(bn.rho.size()) - 1;
}

inline bool lex_less(const blowup_name& a, const blowup_name& b) {
    if (!(a.base == b.base)) return lex_less(a.base, b.base);
    return a.rho < b.rho;
}

// Boundary of a blowup cell: external terms coarsen the base and keep rho
// (classes only grow, so rho stays supported); internal terms delete one
// transposition, signed by (-1)^(dim base) times the alternating position
// sign in the global order of rho. |rho| = 1 contributes no internal terms.
inline std::vector<std::pair<blowup_name, int>> blowup_faces_with_signs(const blowup_name& bn) {
    std::vector<std::pair<blowup_name, int>> out;
    for (auto& [f, s] : faces_with_signs(bn.base)) out.push_back({blowup_name{std::move(f), bn.rho}, s});
    if (bn.rho.size() >= 2) {
        const int base_dim = cell_dim(bn.base);
        for (size_t i = 0; i < bn.rho.size(); ++i) {
            blowup_name g{bn.base, bn.rho};
            g.rho.erase(g.rho.begin() + i);
            int s = (base_dim + static_cast<int>(i)) % 2 == 0 ? 1 : -1;
            out.push_back({std::move(g), s});
        }
    }
    return out;
}

inline cell_name project(const blowup_name& bn) { return bn.base; }

// ---- hashing ------------------------------------------------------------

inline std::size_t hash_combine(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

struct cell_hash {
    std::size_t operator()(const cell_name& c) const {
        std::size_t h = std::hash<int>()(c.m);
        for (axis d : all_axes) {
            h = hash_combine(h, 0xa5);
            for (const auto& b : c[d].blocks) {
                h = hash_combine(h, b.size());
                for (int v : b) h = hash_combine(h, static_cast<std::size_t>(v));
            }
        }
        return h;
    }
};

struct blowup_hash {
    std::size_t operator()(const blowup_name& bn) const {
        std::size_t h = cell_hash()(bn.base);
        for (const auto& s : bn.rho)
            h = hash_combine(h, (static_cast<std::size_t>(s.d) << 16) |
                                    (static_cast<std::size_t>(s.a) << 8) |
                                    static_cast<std::size_t>(s.b));
        return h;
    }
};

inline std::string cell_to_string(const cell_name& c) {
    std::string s = "e(";
    for (axis d : all_axes) {
        if (d != axis::x) s += ',';
        for (int v : c[d].perm()) s += std::to_string(v);
        s += axis_char(d);
    }
    auto cls = class_list(c);
    for (const auto& [d, idx] : cls) {
        s += ";{";
        for (size_t i = 0; i < idx.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(idx[i]);
        }
        s += '}';
        s += axis_char(d);
    }
    s += ')';
    return s;
}

inline std::string blowup_to_string(const blowup_name& bn) {
    std::string s = cell_to_string(bn.base);
    s.back() = ';';
    bool first = true;
    for (const auto& t : bn.rho) {
        if (!first) s += ',';
        first = false;
        s += '(' + std::to_string(t.a) + ' ' + std::to_string(t.b) + ')';
        s += axis_char(t.d);
    }
    s += ')';
    return s;
}

} // namespace plumbers
