#pragma once

// Sparse exact linear algebra over the rationals: echelon spans with
// optional combination tracking, kernels, ranks, and Betti numbers of a
// materialized complex. Everything works on column vectors indexed by cell
// id.

#include "complexes.hpp"
#include "rational.hpp"

namespace plumbers {

using sparse_vec = std::map<std::int32_t, rat>;

inline void axpy(sparse_vec& y, const rat& c, const sparse_vec& x) {
    if (c == 0) return;
    for (const auto& [i, a] : x) {
        auto it = y.emplace(i, rat(0)).first;
        it->second += c * a;
        if (it->second == 0) y.erase(it);
    }
}

inline sparse_vec boundary_vec(const cell_complex& cx, std::int32_t id) {
    sparse_vec v;
    for (auto [f, s] : cx.cells[id].boundary) {
        auto it = v.emplace(f, rat(0)).first;
        it->second += s;
        if (it->second == 0) v.erase(it);
    }
    return v;
}

inline sparse_vec boundary_of_chain(const cell_complex& cx, const sparse_vec& chain) {
    sparse_vec v;
    for (const auto& [id, c] : chain)
        for (auto [f, s] : cx.cells[id].boundary) {
            auto it = v.emplace(f, rat(0)).first;
            it->second += c * s;
            if (it->second == 0) v.erase(it);
        }
    return v;
}

// Row-echelon span. Stored rows are keyed by their leading index; reducing
// a vector eliminates leading entries until none matches a pivot.
struct echelon {
    std::map<std::int32_t, sparse_vec> rows;

    int rank() const { return static_cast<int>(rows.size()); }

    sparse_vec reduce(sparse_vec v) const {
        auto it = v.begin();
        while (it != v.end()) {
            auto r = rows.find(it->first);
            if (r == rows.end()) {
                ++it;
                continue;
            }
            const std::int32_t piv = it->first;
            rat c = it->second / r->second.begin()->second;
            axpy(v, -c, r->second);
            it = v.upper_bound(piv);
        }
        return v;
    }

    bool contains(sparse_vec v) const { return reduce(std::move(v)).empty(); }

    // false if v was already in the span
    bool add(sparse_vec v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        const std::int32_t piv = v.begin()->first;
        rows.emplace(piv, std::move(v));
        return true;
    }
};

inline int rank_of(const std::vector<sparse_vec>& vecs) {
    echelon e;
    for (const auto& v : vecs) e.add(v);
    return e.rank();
}

// Echelon span remembering how each row was formed from the fed columns.
// Feeding a dependent column yields the dependency over the tags.
struct tracked_echelon {
    std::map<std::int32_t, std::pair<sparse_vec, sparse_vec>> rows; // pivot -> (row, combo)

    int rank() const { return static_cast<int>(rows.size()); }

    // returns the combination over tags if v is dependent, otherwise inserts
    std::optional<sparse_vec> add(sparse_vec v, std::int32_t tag) {
        sparse_vec combo{{tag, rat(1)}};
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
        if (v.empty()) return combo;
        const std::int32_t piv = v.begin()->first;
        rows.emplace(piv, std::make_pair(std::move(v), std::move(combo)));
        return std::nullopt;
    }
};

// Kernel of the linear map sending tag t to columns[t].
inline std::vector<sparse_vec> kernel_basis(const std::vector<sparse_vec>& columns) {
    tracked_echelon e;
    std::vector<sparse_vec> out;
    for (std::int32_t t = 0; t < static_cast<std::int32_t>(columns.size()); ++t)
        if (auto dep = e.add(columns[t], t)) out.push_back(std::move(*dep));
    return out;
}

// Betti numbers by degree, 0..top_dim.
inline std::vector<int> homology_ranks(const cell_complex& cx) {
    std::vector<int> cells_d(cx.top_dim + 2, 0), rank_d(cx.top_dim + 2, 0);
    std::vector<echelon> ech(cx.top_dim + 2);
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(cx.cells.size()); ++i) {
        const int d = cx.cells[i].dim;
        ++cells_d[d];
        if (auto col = boundary_vec(cx, i); !col.empty())
            if (ech[d].add(std::move(col))) ++rank_d[d];
    }
    std::vector<int> betti(cx.top_dim + 1, 0);
    for (int d = 0; d <= cx.top_dim; ++d) betti[d] = cells_d[d] - rank_d[d] - rank_d[d + 1];
    return betti;
}

} // namespace plumbers
