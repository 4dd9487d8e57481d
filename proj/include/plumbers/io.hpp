#pragma once

// JSON encodings: cells, curves, complexes (one line per cell), the
// complexity table, chains of functionals, and spectral sequence pages.

#include "invariants.hpp"
#include "spectral.hpp"

#include <json.hpp>

#include <iostream>

namespace plumbers {

using nlohmann::json;

inline axis need_axis(const std::string& s) {
    if (s.size() == 1)
        if (auto d = axis_from_char(s[0])) return *d;
    throw std::invalid_argument("bad axis: " + s);
}

inline json to_json(const cell_name& c) {
    json j;
    j["m"] = c.m;
    for (axis d : all_axes) j["perm"][std::string(1, axis_char(d))] = c[d].perm();
    j["classes"] = json::array();
    for (const auto& [d, idx] : class_list(c))
        j["classes"].push_back({{"dir", std::string(1, axis_char(d))}, {"idx", idx}});
    return j;
}

inline cell_name cell_from_json(const json& j) {
    if (!j.contains("m") || !j.contains("perm")) throw std::invalid_argument("cell needs m and perm");
    const int m = j.at("m").get<int>();
    std::array<std::vector<int>, 3> perms;
    for (axis d : all_axes)
        perms[static_cast<int>(d)] =
            j.at("perm").at(std::string(1, axis_char(d))).get<std::vector<int>>();
    std::vector<std::pair<axis, std::vector<int>>> classes;
    if (j.contains("classes"))
        for (const auto& e : j.at("classes"))
            classes.emplace_back(need_axis(e.at("dir").get<std::string>()),
                                 e.at("idx").get<std::vector<int>>());
    return from_perm_classes(m, perms, classes);
}

inline std::vector<swap_label> rho_from_json(const json& j) {
    std::vector<swap_label> rho;
    for (const auto& e : j) {
        auto pr = e.at("pair").get<std::vector<int>>();
        if (pr.size() != 2) throw std::invalid_argument("rho pair needs two vertices");
        rho.push_back(make_swap(need_axis(e.at("dir").get<std::string>()), pr[0], pr[1]));
    }
    std::sort(rho.begin(), rho.end());
    return rho;
}

inline json to_json(const curve& c) {
    json j;
    j["m"] = c.m;
    j["vertices"] = json::array();
    for (const auto& v : c.v)
        j["vertices"].push_back({format_rat(v.c[0]), format_rat(v.c[1]), format_rat(v.c[2])});
    return j;
}

inline curve curve_from_json(const json& j) {
    curve c;
    c.m = j.at("m").get<int>();
    for (const auto& v : j.at("vertices")) {
        if (v.size() != 3) throw std::invalid_argument("vertex needs three coordinates");
        point3<rat> p;
        for (int d = 0; d < 3; ++d) p.c[d] = parse_rat(v.at(d).get<std::string>());
        c.v.push_back(p);
    }
    if (static_cast<int>(c.v.size()) != c.m - 1)
        throw std::invalid_argument("vertex count must be m-1");
    if (!well_formed(c)) throw std::invalid_argument("vertex coordinates must lie strictly in (0,1)");
    return c;
}

// one cell per line: id, dim, name, signed boundary ids
inline void write_complex_jsonl(std::ostream& os, const cell_complex& cx) {
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(cx.cells.size()); ++i) {
        json j;
        j["id"] = i;
        j["dim"] = cx.cells[i].dim;
        j["name"] = cx.space == space_tag::B ? blowup_to_string(cx.blowup_name_of(i))
                                             : cell_to_string(cx.name_of(i));
        auto bd = json::array();
        for (auto [f, s] : cx.cells[i].boundary) bd.push_back({f, static_cast<int>(s)});
        j["boundary"] = std::move(bd);
        os << j.dump() << "\n";
    }
}

inline void write_filtration_json(std::ostream& os, const cell_complex& scx,
                                  const complexity_table& t) {
    json j;
    j["m"] = scx.m;
    auto arr = json::array();
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(scx.cells.size()); ++i) {
        auto base = scx.cells[i].base;
        arr.push_back({i, t.cx[base], t.orphan[base] ? "orphan-fallback" : ""});
    }
    j["cx"] = std::move(arr);
    os << j.dump(2) << "\n";
}

inline void write_taylor_json(std::ostream& os, const stratification& s,
                              const taylor_result& res, const std::string& invariant_name) {
    json j;
    j["invariant"] = invariant_name;
    j["m"] = s.m;
    auto arr = json::array();
    for (const auto& [key, coef] : res.chain) {
        std::uint64_t base = key >> 20;
        std::uint32_t mask = static_cast<std::uint32_t>(key & 0xfffff);
        blowup_name bn{s.name_of(base), {}};
        auto pairs = class_pairs(bn.base);
        for (size_t b = 0; b < pairs.size(); ++b)
            if (mask >> b & 1) bn.rho.push_back(pairs[b]);
        arr.push_back({blowup_to_string(bn), format_rat(coef)});
    }
    j["terms"] = std::move(arr);
    j["verified_cycle"] = res.verified;
    os << j.dump(2) << "\n";
}

inline void write_ss_json(std::ostream& os, const ss_pages& pp, bool reindex) {
    json j;
    j["m"] = pp.m;
    j["reindexed"] = reindex;
    auto pages = json::array();
    for (int r = 0; r <= pp.last_r; ++r) {
        json pg;
        pg["r"] = r;
        auto entries = json::array();
        for (const auto& [pd, rank] : pp.ranks[r]) {
            const int p = pd.first, D = pd.second;
            if (reindex)
                entries.push_back({-p, (3 * pp.m - 4) - (D + p) + 2 * p, rank});
            else
                entries.push_back({p, D + p, rank});
        }
        pg["entries"] = std::move(entries);
        pages.push_back(std::move(pg));
    }
    j["pages"] = std::move(pages);
    os << j.dump(2) << "\n";
}

template <class T>
json report_to_json(const basic_report<T>& rep) {
    auto fmt = [](const T& x) {
        if constexpr (std::is_same_v<T, rat>) return format_rat(x);
        else return std::to_string(x);
    };
    json arr = json::array();
    for (const auto& e : rep.entries) {
        json c;
        c["pipes"] = {e.pa, e.pb};
        c["kind"] = e.kind == contact_kind::crossing ? "crossing"
                    : e.kind == contact_kind::corner ? "corner"
                                                     : "overlap";
        c["lo"] = {fmt(e.lo.c[0]), fmt(e.lo.c[1]), fmt(e.lo.c[2])};
        c["hi"] = {fmt(e.hi.c[0]), fmt(e.hi.c[1]), fmt(e.hi.c[2])};
        arr.push_back(std::move(c));
    }
    return arr;
}

} // namespace plumbers
