#pragma once

// Spectral sequence of the complexity filtration on the blowup complex.
//
// With G_p spanned by cells of complexity >= p the boundary preserves G_p,
// and Z_r^p(D) = {x in G_p C_D : dx in G_{p+r}} gives page entries
// E_r^p(D) = Z_r^p(D) / (Z_{r-1}^{p+1}(D) + d Z_{r-1}^{p-r+1}(D+1)).
// Differentials drop the dimension by one and raise complexity by r.
// Entries are indexed below by (p, D); exports translate to the grading
// with q = D + p.

#include "filtration.hpp"
#include "homology.hpp"
#include "vassiliev.hpp"

#include <tuple>

namespace plumbers {

namespace detail {

// Echelon span whose rows remember their expression over tagged
// generators; untagged generators are absorbed silently.
struct spanner {
    std::map<std::int32_t, std::pair<sparse_vec, sparse_vec>> rows; // pivot -> (row, combo)

    void reduce(sparse_vec& v, sparse_vec& combo) const {
        auto it = v.begin();
        while (it != v.end()) {
            auto r = rows.find(it->first);
            if (r == rows.end()) {
                ++it;
                continue;
            }
            const std::int32_t piv = it->first;
            rat c = it->second / r->second.first.begin()->second;
            axpy(v, -c, r->second.first);
            axpy(combo, -c, r->second.second);
            it = v.upper_bound(piv);
        }
    }

    void add(sparse_vec v, sparse_vec combo) {
        reduce(v, combo);
        if (v.empty()) return;
        const std::int32_t piv = v.begin()->first;
        rows.emplace(piv, std::make_pair(std::move(v), std::move(combo)));
    }

    // expression of v over the tagged generators, if v lies in the span
    std::optional<sparse_vec> express(sparse_vec v) const {
        sparse_vec combo;
        reduce(v, combo);
        if (!v.empty()) return std::nullopt;
        for (auto& [t, c] : combo) c = -c;
        return combo;
    }
};

} // namespace detail

struct spectral_sequence {
    const cell_complex& B;
    std::vector<int> cx_of; // complexity by complex id
    int pmax = 0;
    std::vector<std::vector<std::int32_t>> by_dim;

    struct entry_data {
        std::vector<sparse_vec> basis; // representatives, independent mod denom
        echelon denom;
    };

    std::map<std::tuple<int, int, int>, std::vector<sparse_vec>> zcache;
    std::map<std::tuple<int, int, int>, entry_data> ecache;

    spectral_sequence(const cell_complex& blowup, const complexity_table& cxt) : B(blowup) {
        cx_of.resize(B.cells.size());
        by_dim.assign(B.top_dim + 2, {});
        for (std::int32_t i = 0; i < static_cast<std::int32_t>(B.cells.size()); ++i) {
            cx_of[i] = cxt.cx[B.cells[i].base];
            pmax = std::max(pmax, cx_of[i]);
            by_dim[B.cells[i].dim].push_back(i);
        }
    }

    std::vector<std::int32_t> g_cells(int p, int D) const {
        std::vector<std::int32_t> out;
        if (D < 0 || D >= static_cast<int>(by_dim.size())) return out;
        for (std::int32_t i : by_dim[D])
            if (cx_of[i] >= p) out.push_back(i);
        return out;
    }

    // generators of Z_r^p(D)
    const std::vector<sparse_vec>& zr(int r, int p, int D) {
        auto key = std::make_tuple(r, p, D);
        auto it = zcache.find(key);
        if (it != zcache.end()) return it->second;
        std::vector<sparse_vec> gens;
        auto cols = g_cells(p, D);
        // boundaries never lower complexity, so the condition is vacuous for
        // r <= 0; it is also vacuous when G_{p+r} is the whole complex
        if (r <= 0 || p + r <= 0) {
            for (auto id : cols) gens.push_back({{id, rat(1)}});
        } else {
            // kernel of the boundary followed by projection off G_{p+r}
            std::vector<sparse_vec> proj;
            proj.reserve(cols.size());
            for (auto id : cols) {
                sparse_vec v;
                for (auto [f, sg] : B.cells[id].boundary)
                    if (cx_of[f] < p + r) {
                        auto jt = v.emplace(f, rat(0)).first;
                        jt->second += sg;
                        if (jt->second == 0) v.erase(jt);
                    }
                proj.push_back(std::move(v));
            }
            for (auto& dep : kernel_basis(proj)) {
                sparse_vec g;
                for (const auto& [t, c] : dep) g[cols[t]] = c;
                gens.push_back(std::move(g));
            }
        }
        return zcache.emplace(key, std::move(gens)).first->second;
    }

    const entry_data& entry(int r, int p, int D) {
        auto key = std::make_tuple(r, p, D);
        auto it = ecache.find(key);
        if (it != ecache.end()) return it->second;
        entry_data e;
        for (const auto& g : zr(r - 1, p + 1, D)) e.denom.add(g);
        for (const auto& g : zr(r - 1, p - r + 1, D + 1)) e.denom.add(boundary_of_chain(B, g));
        echelon combined = e.denom;
        for (const auto& g : zr(r, p, D))
            if (combined.add(g)) e.basis.push_back(g);
        return ecache.emplace(key, std::move(e)).first->second;
    }

    // matrix of d_r from (p, D) to (p + r, D - 1) in the entry bases;
    // basis vectors map to columns
    std::vector<std::vector<rat>> d_matrix(int r, int p, int D) {
        const auto& src = entry(r, p, D);
        const auto& tgt = entry(r, p + r, D - 1);
        detail::spanner sp;
        for (const auto& row : tgt.denom.rows) sp.add(row.second, {});
        for (std::int32_t j = 0; j < static_cast<std::int32_t>(tgt.basis.size()); ++j)
            sp.add(tgt.basis[j], {{j, rat(1)}});
        std::vector<std::vector<rat>> mat(tgt.basis.size(),
                                          std::vector<rat>(src.basis.size(), rat(0)));
        for (std::int32_t i = 0; i < static_cast<std::int32_t>(src.basis.size()); ++i) {
            auto combo = sp.express(boundary_of_chain(B, src.basis[i]));
            if (!combo) throw std::logic_error("differential leaves the target entry");
            for (const auto& [j, c] : *combo) mat[j][i] = c;
        }
        return mat;
    }
};

inline int matrix_rank(const std::vector<std::vector<rat>>& mat) {
    std::vector<sparse_vec> cols;
    if (mat.empty()) return 0;
    for (size_t j = 0; j < mat[0].size(); ++j) {
        sparse_vec v;
        for (size_t i = 0; i < mat.size(); ++i)
            if (mat[i][j] != 0) v[static_cast<std::int32_t>(i)] = mat[i][j];
        cols.push_back(std::move(v));
    }
    return rank_of(cols);
}

struct ss_pages {
    int m = 0, pmax = 0, last_r = 0, top_dim = 0;
    // ranks[r] maps (p, D) to the entry dimension; zero entries omitted
    std::vector<std::map<std::pair<int, int>, int>> ranks;
};

inline ss_pages compute_pages(spectral_sequence& ss, int max_page = -1) {
    ss_pages out;
    out.m = ss.B.m;
    out.pmax = ss.pmax;
    out.top_dim = ss.B.top_dim;
    out.last_r = max_page < 0 ? ss.pmax + 1 : max_page;
    for (int r = 0; r <= out.last_r; ++r) {
        std::map<std::pair<int, int>, int> rk;
        for (int p = 0; p <= ss.pmax; ++p)
            for (int D = 0; D <= ss.B.top_dim; ++D) {
                int dim = static_cast<int>(ss.entry(r, p, D).basis.size());
                if (dim > 0) rk[{p, D}] = dim;
            }
        out.ranks.push_back(std::move(rk));
    }
    return out;
}

} // namespace plumbers
