#pragma once

// Exact geometry of plumbers' curves: the pipe decomposition, intersection
// classification of distant pipes, the cell of a curve, generic cell
// representatives, and Gauss diagrams of embedded curves.
//
// All predicates are order/equality comparisons of coordinates within one
// axis, so the same code runs on exact rationals (real curves) and on the
// small integer coordinate values of a cell representative (bulk scans).

#include "cells.hpp"
#include "rational.hpp"

#include <array>
#include <optional>
#include <vector>

namespace plumbers {

template <typename T> struct point3 {
    std::array<T, 3> c{};
    T& operator[](axis d) { return c[static_cast<int>(d)]; }
    const T& operator[](axis d) const { return c[static_cast<int>(d)]; }
    bool operator==(const point3& o) const { return c == o.c; }
};

// One axis-parallel segment of the curve, travelling a -> b.
template <typename T> struct basic_pipe {
    int index = 0; // 1..3m
    axis dir = axis::x;
    point3<T> a, b;

    bool degenerate() const { return a == b; }
    const T& lo(axis d) const { return std::min(a[d], b[d]); }
    const T& hi(axis d) const { return std::max(a[d], b[d]); }
};

// Waypoints w_0 = origin, w_m = (1,1,1), w_j = vertex j. Move j walks x,
// then y, then z from w_{j-1} to w_j; pipe indices 3(j-1)+1..3(j-1)+3.
template <typename T>
std::vector<basic_pipe<T>> pipes_from_waypoints(const std::vector<point3<T>>& w) {
    const int m = static_cast<int>(w.size()) - 1;
    std::vector<basic_pipe<T>> out;
    out.reserve(3 * m);
    for (int j = 1; j <= m; ++j) {
        point3<T> p = w[j - 1];
        for (axis d : all_axes) {
            point3<T> q = p;
            q[d] = w[j][d];
            out.push_back({3 * (j - 1) + 1 + static_cast<int>(d), d, p, q});
            p = q;
        }
    }
    return out;
}

// Pipes whose indices differ by at least 4; only their intersections make
// the curve singular.
inline bool distant(int i, int j) { return std::abs(i - j) >= 4; }

enum class contact_kind { crossing, corner, overlap };

template <typename T> struct contact {
    int pa = 0, pb = 0; // pipe indices, pa < pb
    contact_kind kind = contact_kind::corner;
    point3<T> lo, hi; // bounding box of the locus; lo == hi for a point
};

// Axis-parallel segments coincide with their bounding boxes, so the
// intersection locus is the box overlap. A point locus is a transverse
// crossing exactly when the pipes run along different axes, neither is
// degenerate, and the point is interior to both spans.
template <typename T>
std::optional<contact<T>> classify_pair(const basic_pipe<T>& p, const basic_pipe<T>& q) {
    point3<T> lo, hi;
    for (axis d : all_axes) {
        lo[d] = std::max(p.lo(d), q.lo(d));
        hi[d] = std::min(p.hi(d), q.hi(d));
        if (hi[d] < lo[d]) return std::nullopt;
    }
    contact<T> c;
    c.pa = std::min(p.index, q.index);
    c.pb = std::max(p.index, q.index);
    c.lo = lo;
    c.hi = hi;
    if (!(lo == hi)) {
        c.kind = contact_kind::overlap;
        return c;
    }
    if (p.dir != q.dir && !p.degenerate() && !q.degenerate() &&
        p.lo(p.dir) < lo[p.dir] && lo[p.dir] < p.hi(p.dir) &&
        q.lo(q.dir) < lo[q.dir] && lo[q.dir] < q.hi(q.dir))
        c.kind = contact_kind::crossing;
    else
        c.kind = contact_kind::corner;
    return c;
}

template <typename T> struct basic_report {
    std::vector<contact<T>> entries;
    int components = 0;

    bool empty() const { return entries.empty(); }
};

namespace detail {
inline int uf_find(std::vector<int>& p, int i) {
    while (p[i] != i) i = p[i] = p[p[i]];
    return i;
}
inline void uf_union(std::vector<int>& p, int a, int b) { p[uf_find(p, a)] = uf_find(p, b); }
} // namespace detail

template <typename T> bool boxes_touch(const contact<T>& a, const contact<T>& b) {
    for (axis d : all_axes)
        if (b.hi[d] < a.lo[d] || a.hi[d] < b.lo[d]) return false;
    return true;
}

// Self-intersection report: every contact between distant pipes, plus the
// number of connected components of the union of the loci.
template <typename T>
basic_report<T> report_from_waypoints(const std::vector<point3<T>>& w) {
    auto pipes = pipes_from_waypoints(w);
    basic_report<T> rep;
    for (size_t i = 0; i < pipes.size(); ++i)
        for (size_t j = i + 4; j < pipes.size(); ++j)
            if (auto c = classify_pair(pipes[i], pipes[j])) rep.entries.push_back(*c);
    const int n = static_cast<int>(rep.entries.size());
    std::vector<int> uf(n);
    for (int i = 0; i < n; ++i) uf[i] = i;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (boxes_touch(rep.entries[i], rep.entries[j])) detail::uf_union(uf, i, j);
    int comps = 0;
    for (int i = 0; i < n; ++i)
        if (detail::uf_find(uf, i) == i) ++comps;
    rep.components = comps;
    return rep;
}

// ---- curves with rational vertices --------------------------------------

struct curve {
    int m = 0;
    std::vector<point3<rat>> v; // m-1 vertices, coordinates in (0,1)
};

inline bool well_formed(const curve& c) {
    if (c.m < 3 || static_cast<int>(c.v.size()) != c.m - 1) return false;
    for (const auto& p : c.v)
        for (axis d : all_axes)
            if (p[d] <= 0 || p[d] >= 1) return false;
    return true;
}

inline std::vector<point3<rat>> waypoints(const curve& c) {
    std::vector<point3<rat>> w;
    w.reserve(c.m + 1);
    w.push_back({});
    for (const auto& p : c.v) w.push_back(p);
    w.push_back({rat(1), rat(1), rat(1)});
    return w;
}

inline std::vector<basic_pipe<rat>> pipes_of(const curve& c) {
    return pipes_from_waypoints(waypoints(c));
}

inline basic_report<rat> singularity_report(const curve& c) {
    return report_from_waypoints(waypoints(c));
}

// The cell containing the curve: per axis, vertices sorted by coordinate,
// ties forming the classes. Canonical by construction.
inline cell_name cell_of(const curve& c) {
    cell_name out;
    out.m = c.m;
    const int n = c.m - 1;
    for (axis d : all_axes) {
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 1);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            const rat &va = c.v[a - 1][d], &vb = c.v[b - 1][d];
            if (va != vb) return va < vb;
            return a < b;
        });
        auto& blocks = out[d].blocks;
        for (int i = 0; i < n;) {
            std::vector<int> blk{idx[i]};
            int j = i + 1;
            while (j < n && c.v[idx[j] - 1][d] == c.v[idx[i] - 1][d]) blk.push_back(idx[j++]);
            blocks.push_back(std::move(blk));
            i = j;
        }
    }
    return out;
}

// Integer waypoint coordinates of a cell's generic point: vertex value =
// 1-based position of its block, bounds 0 and block_count+1. Comparisons
// never mix axes, so these are faithful for all intersection predicates.
inline std::vector<point3<int>> value_waypoints(const cell_name& c) {
    const int n = c.m - 1;
    std::vector<point3<int>> w(c.m + 1);
    for (axis d : all_axes) {
        w[0][d] = 0;
        w[c.m][d] = c[d].block_count() + 1;
        std::vector<int> val(n + 1, 0);
        int k = 0;
        for (const auto& b : c[d].blocks) {
            ++k;
            for (int v : b) val[v] = k;
        }
        for (int j = 1; j < c.m; ++j) w[j][d] = val[j];
    }
    return w;
}

inline basic_report<int> singularity_report(const cell_name& c) {
    return report_from_waypoints(value_waypoints(c));
}

inline bool is_knot(const cell_name& c) { return singularity_report(c).empty(); }

// Generic representative: vertex coordinates k/(r+1) with k the block
// position, equal exactly within classes.
inline curve representative(const cell_name& c) {
    assert(is_canonical(c));
    auto w = value_waypoints(c);
    curve out;
    out.m = c.m;
    out.v.resize(c.m - 1);
    for (axis d : all_axes) {
        const rat denom(c[d].block_count() + 1);
        for (int j = 1; j < c.m; ++j) out.v[j - 1][d] = rat(w[j][d]) / denom;
    }
    return out;
}

// ---- Gauss diagrams ------------------------------------------------------

struct gauss_arrow {
    rat t_over, t_under; // parameters in (0, 3m + 1); (3m, 3m + 1) is the closure
    int sign = 0;
};

struct gauss_diagram {
    std::vector<gauss_arrow> arrows;
};

struct nongeneric_projection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct proj2 {
    rat u, v;
};

inline rat cross2(const proj2& a, const proj2& b) { return a.u * b.v - a.v * b.u; }

} // namespace detail

// Projects along dir (viewer on the +dir side) and reads off the crossing
// data of the diagram. Throws nongeneric_projection when a crossing falls on
// a pipe endpoint, two projected pipes overlap collinearly, or parameters
// collide; callers perturb dir deterministically and retry.
inline gauss_diagram gauss_diagram_of(const curve& c, const point3<rat>& dir) {
    auto pipes = pipes_of(c);
    // knots may pause for up to two zero-length pipes; pipes separated only
    // by such pauses share a corner like true neighbours
    auto effectively_adjacent = [&](int i, int j) {
        for (int k = i + 1; k < j; ++k)
            if (!pipes[k].degenerate()) return false;
        return true;
    };
    auto moving_axis = [](const basic_pipe<rat>& p) {
        for (int k = 0; k < 3; ++k)
            if (p.a.c[k] != p.b.c[k]) return k;
        return -1;
    };
    // plane basis: u = dir x e_z unless degenerate, v = dir x u
    point3<rat> uvec, vvec;
    auto cross = [](const point3<rat>& a, const point3<rat>& b) {
        point3<rat> r;
        r.c[0] = a.c[1] * b.c[2] - a.c[2] * b.c[1];
        r.c[1] = a.c[2] * b.c[0] - a.c[0] * b.c[2];
        r.c[2] = a.c[0] * b.c[1] - a.c[1] * b.c[0];
        return r;
    };
    point3<rat> ez;
    ez.c[2] = 1;
    uvec = cross(dir, ez);
    if (uvec.c[0] == 0 && uvec.c[1] == 0 && uvec.c[2] == 0) {
        ez.c[2] = 0;
        ez.c[0] = 1;
        uvec = cross(dir, ez);
    }
    vvec = cross(dir, uvec);
    auto project = [&](const point3<rat>& p) {
        detail::proj2 q;
        q.u = p.c[0] * uvec.c[0] + p.c[1] * uvec.c[1] + p.c[2] * uvec.c[2];
        q.v = p.c[0] * vvec.c[0] + p.c[1] * vvec.c[1] + p.c[2] * vvec.c[2];
        return q;
    };
    auto depth = [&](const point3<rat>& p) {
        return p.c[0] * dir.c[0] + p.c[1] * dir.c[1] + p.c[2] * dir.c[2];
    };

    gauss_diagram gd;
    std::vector<std::pair<int, rat>> params; // (pipe, local fraction) for collision checks
    const int np = static_cast<int>(pipes.size());
    for (int i = 0; i < np; ++i) {
        for (int j = i + 2; j < np; ++j) {
            const auto& P = pipes[i];
            const auto& Q = pipes[j];
            if (P.degenerate() || Q.degenerate()) continue;
            detail::proj2 a = project(P.a), b = project(P.b);
            detail::proj2 e = project(Q.a), f = project(Q.b);
            detail::proj2 ab{b.u - a.u, b.v - a.v}, ef{f.u - e.u, f.v - e.v};
            detail::proj2 ae{e.u - a.u, e.v - a.v};
            rat den = detail::cross2(ab, ef);
            if (den == 0) {
                // parallel in projection: collinear overlap is non-generic
                if (detail::cross2(ab, ae) == 0) {
                    int ax = moving_axis(P);
                    if (ax == moving_axis(Q)) {
                        bool same_line = true;
                        for (int k = 0; k < 3; ++k)
                            if (k != ax && P.a.c[k] != Q.a.c[k]) same_line = false;
                        if (same_line) {
                            // collinear in space: a point touch is the curve
                            // passing straight on, an overlap is singular
                            rat plo = std::min(P.a.c[ax], P.b.c[ax]), phi = std::max(P.a.c[ax], P.b.c[ax]);
                            rat qlo = std::min(Q.a.c[ax], Q.b.c[ax]), qhi = std::max(Q.a.c[ax], Q.b.c[ax]);
                            if (std::max(plo, qlo) < std::min(phi, qhi))
                                throw std::domain_error("collinear pipes overlap");
                            continue;
                        }
                    }
                    rat len2 = ab.u * ab.u + ab.v * ab.v;
                    rat s0 = (ae.u * ab.u + ae.v * ab.v) / len2;
                    rat s1 = s0 + (ef.u * ab.u + ef.v * ab.v) / len2;
                    if (std::max(rat(0), std::min(s0, s1)) <= std::min(rat(1), std::max(s0, s1)))
                        throw nongeneric_projection("collinear projected pipes");
                }
                continue;
            }
            rat t = detail::cross2(ae, ef) / den; // along P
            rat s = detail::cross2(ae, ab) / den; // along Q
            if (t < 0 || t > 1 || s < 0 || s > 1) continue;
            if (t == 0 || t == 1 || s == 0 || s == 1) {
                // adjacent pipes meet at their shared corner; anything else
                // touching an endpoint is non-generic
                bool shared_corner = effectively_adjacent(i, j) && t == 1 && s == 0;
                if (!shared_corner) throw nongeneric_projection("crossing at pipe endpoint");
                continue;
            }
            if (effectively_adjacent(i, j))
                throw nongeneric_projection("adjacent pipes cross in projection");
            point3<rat> p3, q3;
            for (int k = 0; k < 3; ++k) {
                p3.c[k] = P.a.c[k] + t * (P.b.c[k] - P.a.c[k]);
                q3.c[k] = Q.a.c[k] + s * (Q.b.c[k] - Q.a.c[k]);
            }
            rat dp = depth(p3), dq = depth(q3);
            if (dp == dq) throw nongeneric_projection("projected crossing at equal depth");
            rat tp = rat(P.index - 1) + t;
            rat tq = rat(Q.index - 1) + s;
            detail::proj2 dover = dp > dq ? ab : ef;
            detail::proj2 dunder = dp > dq ? ef : ab;
            gauss_arrow ar;
            ar.t_over = dp > dq ? tp : tq;
            ar.t_under = dp > dq ? tq : tp;
            ar.sign = detail::cross2(dover, dunder) > 0 ? 1 : -1;
            gd.arrows.push_back(ar);
            params.emplace_back(P.index, t);
            params.emplace_back(Q.index, s);
        }
    }
    // The knot closes outside the cube. The end corner leaves toward the
    // viewer along dir and the origin can only be reached from behind along
    // -dir, so the closure shows as two legs: up from the end image to a
    // point above the whole picture, passing over everything, then a dive
    // behind the picture outside its hull, then down to the start image
    // passing under everything.
    {
        point3<rat> one;
        one.c[0] = one.c[1] = one.c[2] = 1;
        detail::proj2 pe = project(one); // start image is the origin (0, 0)
        if (pe.v == 0) throw nongeneric_projection("closure exit degenerate");
        rat umax = pe.u;
        for (int j = 0; j < np; ++j) {
            umax = std::max(umax, project(pipes[j].a).u);
            umax = std::max(umax, project(pipes[j].b).u);
        }
        detail::proj2 side{umax + 1, pe.v};
        struct closure_leg {
            detail::proj2 a, b;
            bool over;
        };
        closure_leg legs[2] = {{pe, side, true}, {side, detail::proj2{0, 0}, false}};
        for (int li = 0; li < 2; ++li) {
            detail::proj2 g{legs[li].b.u - legs[li].a.u, legs[li].b.v - legs[li].a.v};
            for (int j = 0; j < np; ++j) {
                const auto& Q = pipes[j];
                if (Q.degenerate()) continue;
                detail::proj2 e = project(Q.a), f = project(Q.b);
                detail::proj2 ef{f.u - e.u, f.v - e.v};
                detail::proj2 ae{e.u - legs[li].a.u, e.v - legs[li].a.v};
                rat den = detail::cross2(g, ef);
                if (den == 0) {
                    if (detail::cross2(g, ae) == 0)
                        throw nongeneric_projection("closure collinear with pipe");
                    continue;
                }
                rat t = detail::cross2(ae, ef) / den; // along the leg
                rat s = detail::cross2(ae, g) / den;  // along Q
                if (t < 0 || t > 1 || s < 0 || s > 1) continue;
                if (t == 0 || t == 1 || s == 0 || s == 1) {
                    bool end_corner = li == 0 && j == np - 1 && t == 0 && s == 1;
                    bool start_corner = li == 1 && j == 0 && t == 1 && s == 0;
                    if (!(start_corner || end_corner))
                        throw nongeneric_projection("closure hits pipe endpoint");
                    continue;
                }
                gauss_arrow ar;
                rat tc = rat(np) + (rat(li) + t) / 2;
                rat tq = rat(Q.index - 1) + s;
                ar.t_over = legs[li].over ? tc : tq;
                ar.t_under = legs[li].over ? tq : tc;
                detail::proj2 dov = legs[li].over ? g : ef;
                detail::proj2 dun = legs[li].over ? ef : g;
                ar.sign = detail::cross2(dov, dun) > 0 ? 1 : -1;
                gd.arrows.push_back(ar);
                params.emplace_back(np + 1 + li, t);
                params.emplace_back(Q.index, s);
            }
        }
    }
    std::sort(params.begin(), params.end());
    for (size_t k = 0; k + 1 < params.size(); ++k)
        if (params[k] == params[k + 1])
            throw nongeneric_projection("two crossings share a parameter");
    return gd;
}

inline point3<rat> default_projection() {
    point3<rat> d;
    d.c[0] = 1;
    d.c[1] = rat(5, 7);
    d.c[2] = rat(17, 31);
    return d;
}

inline gauss_diagram gauss_diagram_of(const curve& c) {
    point3<rat> dir = default_projection();
    for (int attempt = 0; attempt < 64; ++attempt) {
        try {
            return gauss_diagram_of(c, dir);
        } catch (const nongeneric_projection&) {
            dir.c[2] *= rat(102, 101);
        }
    }
    throw nongeneric_projection("no generic projection found");
}

// Degree-2 invariant of a long knot from its Gauss diagram: signed count of
// interleaved pairs with pattern under(A) < over(B) < over(A) < under(B).
inline rat v2_of(const gauss_diagram& gd) {
    rat total = 0;
    for (const auto& A : gd.arrows)
        for (const auto& B : gd.arrows)
            if (A.t_under < B.t_over && B.t_over < A.t_over && A.t_over < B.t_under)
                total += A.sign * B.sign;
    return total;
}

inline rat v2_of(const curve& c) { return v2_of(gauss_diagram_of(c)); }

} // namespace plumbers
