#include "plumbing/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "plumbing/error.hpp"

namespace plumbing {

namespace {

struct Rooted {
    const WeightedDualGraph& g;
    const Colors& colors;

    std::string code(int v, int parent) const {
        std::vector<std::string> kids;
        for (int w : g.neighbors(v))
            if (w != parent) kids.push_back(code(w, v));
        std::sort(kids.begin(), kids.end());
        std::string s = "(" + colors[static_cast<std::size_t>(v)];
        for (auto& k : kids) s += k;
        return s + ")";
    }
};

// One or two central vertices of a tree component.
std::vector<int> centers(const WeightedDualGraph& g, const std::vector<int>& comp) {
    if (comp.size() <= 2) return comp;
    std::map<int, std::size_t> deg;
    std::vector<int> layer;
    for (int v : comp) {
        deg[v] = g.degree(v);
        if (deg[v] <= 1) layer.push_back(v);
    }
    std::size_t remaining = comp.size();
    while (remaining > 2) {
        remaining -= layer.size();
        std::vector<int> next;
        for (int v : layer)
            for (int w : g.neighbors(v))
                if (--deg[w] == 1) next.push_back(w);
        layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

struct ComponentCode {
    std::string code;
    std::vector<int> roots;            // one or two centres
    std::vector<std::string> halves;   // rooted code per centre (bicentric) or whole (unicentric)
};

ComponentCode component_code(const WeightedDualGraph& g, const Colors& colors, const std::vector<int>& comp) {
    Rooted r{g, colors};
    auto cs = centers(g, comp);
    ComponentCode out;
    out.roots = cs;
    if (cs.size() == 1) {
        out.halves = {r.code(cs[0], -1)};
        out.code = "U" + out.halves[0];
    } else {
        out.halves = {r.code(cs[0], cs[1]), r.code(cs[1], cs[0])};
        out.code = "B" + std::min(out.halves[0], out.halves[1]) + std::max(out.halves[0], out.halves[1]);
    }
    return out;
}

void require_forest(const WeightedDualGraph& g) {
    if (!is_forest(g)) throw Error("NotForest", "canonical forms need a forest");
}

} // namespace

Colors weight_colors(const WeightedDualGraph& g) {
    Colors c;
    for (std::size_t v = 0; v < g.size(); ++v) c.push_back(std::to_string(g.weight(static_cast<int>(v))));
    return c;
}

Colors weight_block_colors(const WeightedDualGraph& g) {
    Colors c;
    for (std::size_t v = 0; v < g.size(); ++v) {
        int i = static_cast<int>(v);
        c.push_back(std::to_string(g.weight(i)) + "#" + g.orbit(i));
    }
    return c;
}

std::string forest_code(const WeightedDualGraph& g, const Colors& colors) {
    require_forest(g);
    std::vector<std::string> parts;
    for (const auto& comp : connected_components(g)) parts.push_back(component_code(g, colors, comp).code);
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (auto& p : parts) s += p + "|";
    return s;
}

std::vector<int> forest_orbits(const WeightedDualGraph& g, const Colors& colors) {
    require_forest(g);
    Rooted r{g, colors};
    std::vector<std::string> key(g.size());
    for (const auto& comp : connected_components(g)) {
        auto cc = component_code(g, colors, comp);
        std::function<void(int, int, const std::string&)> walk = [&](int v, int parent, const std::string& k) {
            key[static_cast<std::size_t>(v)] = k;
            for (int w : g.neighbors(v))
                if (w != parent) walk(w, v, k + "/" + r.code(w, v));
        };
        if (cc.roots.size() == 1) {
            walk(cc.roots[0], -1, cc.code + "@" + cc.halves[0]);
        } else {
            walk(cc.roots[0], cc.roots[1], cc.code + "@" + cc.halves[0]);
            walk(cc.roots[1], cc.roots[0], cc.code + "@" + cc.halves[1]);
        }
    }
    std::map<std::string, int> ids;
    std::vector<int> out;
    for (auto& k : key) {
        auto [it, fresh] = ids.emplace(k, static_cast<int>(ids.size()));
        out.push_back(it->second);
    }
    return out;
}

std::optional<std::vector<int>> forest_isomorphism(const WeightedDualGraph& g, const Colors& cg,
                                                   const WeightedDualGraph& h, const Colors& ch) {
    if (g.size() != h.size() || g.edge_count() != h.edge_count()) return std::nullopt;
    if (!is_forest(g) || !is_forest(h)) return std::nullopt;
    Rooted rg{g, cg}, rh{h, ch};
    auto comps_g = connected_components(g);
    auto comps_h = connected_components(h);
    if (comps_g.size() != comps_h.size()) return std::nullopt;
    std::vector<ComponentCode> codes_g, codes_h;
    for (auto& c : comps_g) codes_g.push_back(component_code(g, cg, c));
    for (auto& c : comps_h) codes_h.push_back(component_code(h, ch, c));

    std::vector<int> map(g.size(), -1);
    std::function<void(int, int, int, int)> pair_up = [&](int v, int pv, int w, int pw) {
        map[static_cast<std::size_t>(v)] = w;
        std::vector<std::pair<std::string, int>> kv, kw;
        for (int x : g.neighbors(v))
            if (x != pv) kv.emplace_back(rg.code(x, v), x);
        for (int y : h.neighbors(w))
            if (y != pw) kw.emplace_back(rh.code(y, w), y);
        std::sort(kv.begin(), kv.end());
        std::sort(kw.begin(), kw.end());
        for (std::size_t i = 0; i < kv.size(); ++i) pair_up(kv[i].second, v, kw[i].second, w);
    };

    std::vector<bool> used(comps_h.size(), false);
    for (std::size_t i = 0; i < comps_g.size(); ++i) {
        std::size_t j = 0;
        while (j < comps_h.size() && (used[j] || codes_h[j].code != codes_g[i].code)) ++j;
        if (j == comps_h.size()) return std::nullopt;
        used[j] = true;
        const auto& a = codes_g[i];
        const auto& b = codes_h[j];
        if (a.roots.size() == 1) {
            pair_up(a.roots[0], -1, b.roots[0], -1);
        } else {
            bool straight = a.halves[0] == b.halves[0];
            int b0 = straight ? b.roots[0] : b.roots[1];
            int b1 = straight ? b.roots[1] : b.roots[0];
            pair_up(a.roots[0], a.roots[1], b0, b1);
            pair_up(a.roots[1], a.roots[0], b1, b0);
        }
    }
    return map;
}

std::vector<int> automorphism_orbits_bruteforce(const WeightedDualGraph& g, const Colors& colors) {
    const int n = static_cast<int>(g.size());
    std::vector<int> parent(g.size());
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    std::function<int(int)> root = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    auto same_kind = [&](int a, int b) {
        return colors[static_cast<std::size_t>(a)] == colors[static_cast<std::size_t>(b)] && g.degree(a) == g.degree(b);
    };

    // Does some automorphism send `from` to `to`?
    auto exists = [&](int from, int to) {
        std::vector<int> order{from};
        std::vector<bool> seen(g.size(), false);
        seen[static_cast<std::size_t>(from)] = true;
        for (int start = 0; start <= n; ++start) {
            for (std::size_t i = 0; i < order.size(); ++i)
                for (int w : g.neighbors(order[i]))
                    if (!seen[static_cast<std::size_t>(w)]) {
                        seen[static_cast<std::size_t>(w)] = true;
                        order.push_back(w);
                    }
            if (start < n && !seen[static_cast<std::size_t>(start)]) {
                seen[static_cast<std::size_t>(start)] = true;
                order.push_back(start);
            }
        }
        std::vector<int> img(g.size(), -1);
        std::vector<bool> taken(g.size(), false);
        std::function<bool(std::size_t)> extend = [&](std::size_t k) {
            if (k == order.size()) return true;
            int x = order[k];
            std::vector<int> cands;
            if (k == 0) {
                cands = {to};
            } else {
                int anchor = -1;
                for (int y : g.neighbors(x))
                    if (img[static_cast<std::size_t>(y)] >= 0) { anchor = y; break; }
                if (anchor >= 0)
                    cands = g.neighbors(img[static_cast<std::size_t>(anchor)]);
                else
                    for (int c = 0; c < n; ++c) cands.push_back(c);
            }
            for (int c : cands) {
                if (taken[static_cast<std::size_t>(c)] || !same_kind(x, c)) continue;
                bool ok = true;
                for (std::size_t j = 0; j < k && ok; ++j) {
                    int z = order[j];
                    ok = g.adjacent(x, z) == g.adjacent(c, img[static_cast<std::size_t>(z)]);
                }
                if (!ok) continue;
                img[static_cast<std::size_t>(x)] = c;
                taken[static_cast<std::size_t>(c)] = true;
                if (extend(k + 1)) return true;
                img[static_cast<std::size_t>(x)] = -1;
                taken[static_cast<std::size_t>(c)] = false;
            }
            return false;
        };
        return extend(0);
    };

    for (int v = 0; v < n; ++v)
        for (int w = v + 1; w < n; ++w)
            if (root(v) != root(w) && same_kind(v, w) && exists(v, w))
                parent[static_cast<std::size_t>(root(w))] = root(v);

    std::map<int, int> ids;
    std::vector<int> out;
    for (int v = 0; v < n; ++v) {
        auto [it, fresh] = ids.emplace(root(v), static_cast<int>(ids.size()));
        out.push_back(it->second);
    }
    return out;
}

void assign_canonical_orbits(WeightedDualGraph& g) {
    auto cls = forest_orbits(g, weight_colors(g));
    // Label blocks o1, o2, ... in order of their lexicographically smallest id.
    std::map<int, int> label;
    for (int v : g.sorted_by_id()) label.emplace(cls[static_cast<std::size_t>(v)], static_cast<int>(label.size()) + 1);
    for (std::size_t v = 0; v < g.size(); ++v)
        g.set_orbit(static_cast<int>(v), "o" + std::to_string(label[cls[v]]));
}

} // namespace plumbing
