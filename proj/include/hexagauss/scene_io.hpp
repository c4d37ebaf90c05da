#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "classical.hpp"
#include "hexagon.hpp"
#include "random.hpp"

namespace hexagauss {

enum class Space { H3, H4, TriangleSpherical, TriangleHyperbolic, PlanarHexagon };

inline const char* space_name(Space s) {
    switch (s) {
        case Space::H3: return "h3";
        case Space::H4: return "h4";
        case Space::TriangleSpherical: return "triangle-spherical";
        case Space::TriangleHyperbolic: return "triangle-hyperbolic";
        case Space::PlanarHexagon: return "planar-hexagon";
    }
    return "";
}

inline Space parse_space(const std::string& s) {
    for (Space x : {Space::H3, Space::H4, Space::TriangleSpherical, Space::TriangleHyperbolic, Space::PlanarHexagon})
        if (s == space_name(x)) return x;
    throw Error("unknown space '" + s + "'");
}

inline bool is_hexagon_space(Space s) { return s == Space::H3 || s == Space::H4 || s == Space::PlanarHexagon; }

// Hexagon sides (lines or flags) or triangle vertices (unit vectors, or hyperboloid points).
struct Scene {
    Space space = Space::H4;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    std::vector<Side> sides;
    std::vector<std::array<double, 3>> vertices;
};

inline Scene generate_scene(Space space, std::uint64_t seed, std::uint64_t index) {
    Rng rng = Rng::for_instance(seed, index);
    Scene s{space, seed, index, {}, {}};
    switch (space) {
        case Space::H3:
            for (const auto& l : random_hexagon_h3(rng).sides) s.sides.emplace_back(l);
            break;
        case Space::H4:
            for (const auto& x : random_augmented_hexagon_h4(rng).sides) s.sides.push_back(x);
            break;
        case Space::PlanarHexagon:
            for (const auto& l : random_planar_hexagon(rng).hex.sides) s.sides.emplace_back(l);
            break;
        case Space::TriangleSpherical:
            for (const auto& v : random_spherical_vertices(rng)) s.vertices.push_back(v);
            break;
        case Space::TriangleHyperbolic:
            for (const auto& v : random_hyperbolic_vertices(rng)) s.vertices.push_back(v);
            break;
    }
    return s;
}

inline std::vector<Scene> generate_scenes(Space space, std::uint64_t seed, std::uint64_t count) {
    std::vector<Scene> out;
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(generate_scene(space, seed, i));
    return out;
}

// ---------------------------------------------------------------- verification

struct SceneReport {
    std::uint64_t index = 0;
    Space space = Space::H4;
    std::vector<std::pair<std::string, double>> formulas;
    int epsilon = 1;
    bool epsilon_tie = false;
    std::vector<int> branches;
    std::vector<std::string> half_lengths;
    std::optional<std::string> error;
    bool pass = false;

    std::vector<std::string> failing(double tol) const {
        std::vector<std::string> f;
        for (const auto& [k, v] : formulas)
            if (!(v < tol)) f.push_back(k);
        return f;
    }
};

inline AugmentedHexagonH4 as_h4(const Scene& s) {
    if (s.sides.size() != 6) throw Error("h4 scene needs six sides");
    AugmentedHexagonH4 h;
    for (std::size_t i = 0; i < 6; ++i) h.sides[i] = s.sides[i];
    for (int n = 0; n < 6; ++n)
        if (is_flag(h.sides[idx(n)]) == is_flag(h.sides[idx(n + 1)]))
            throw Error("h4 scene: lines and flags must alternate");
    return h;
}

inline std::array<OrientedLine, 6> as_lines(const Scene& s) {
    if (s.sides.size() != 6) throw Error(std::string(space_name(s.space)) + " scene needs six sides");
    std::array<OrientedLine, 6> l;
    for (std::size_t i = 0; i < 6; ++i) {
        if (is_flag(s.sides[i])) throw Error(std::string(space_name(s.space)) + " scene: sides must be lines");
        l[i] = std::get<OrientedLine>(s.sides[i]);
    }
    return l;
}

inline SceneReport verify_scene(const Scene& s, double tol, unsigned mask = 0) {
    SceneReport r;
    r.index = s.index;
    r.space = s.space;
    try {
        auto take = [&](const VerificationReport& v, const std::array<HalfLength, 6>& hl) {
            r.formulas = v.residuals;
            r.epsilon = v.epsilon;
            r.epsilon_tie = v.epsilon_tie;
            r.pass = v.pass;
            auto d = choose_branches(hl, mask);
            for (int n = 0; n < 6; ++n) {
                r.branches.push_back(static_cast<int>((mask >> n) & 1u));
                r.half_lengths.push_back(to_string(d[idx(n)]));
            }
        };
        switch (s.space) {
            case Space::H4: {
                auto h = as_h4(s);
                take(verify_hexagon(h, tol, mask), half_lengths(h, {false, tol}));
                break;
            }
            case Space::H3: {
                HexagonH3 h{as_lines(s)};
                take(verify_hexagon(h, tol, mask), half_lengths(h, {false, tol}));
                break;
            }
            case Space::PlanarHexagon: {
                auto l = as_lines(s);
                r.formulas = planar_hexagon_formulas(planar_lengths(l));
                for (int n = 0; n < 6; ++n)
                    r.formulas.emplace_back("orthogonality_" + std::to_string(n + 1),
                                            perpendicular_foot(l[idx(n)], l[idx(n + 1)]).second);
                r.pass = max_of(r.formulas) < tol;
                break;
            }
            case Space::TriangleSpherical:
            case Space::TriangleHyperbolic: {
                if (s.vertices.size() != 3) throw Error("triangle scene needs three vertices");
                const bool hyp = s.space == Space::TriangleHyperbolic;
                const auto& v = s.vertices;
                Triangle t = hyp ? hyperbolic_triangle(v[0], v[1], v[2]) : spherical_triangle(v[0], v[1], v[2]);
                r.formulas = triangle_formulas(t, hyp);
                r.pass = max_of(r.formulas) < tol;
                break;
            }
        }
    } catch (const Error& e) {
        r.error = e.what();
        r.pass = false;
    }
    return r;
}

// ---------------------------------------------------------------- json

using nlohmann::json;

inline json to_json(const BoundaryPoint& p) {
    if (p.is_infinity()) return "inf";
    return json::array({p[0], p[1], p[2]});
}

inline json to_json(const OrientedLine& l) { return {{"src", to_json(l.src)}, {"dst", to_json(l.dst)}}; }

inline json to_json(const Side& s) {
    if (const auto* f = std::get_if<OrientedFlag>(&s)) return {{"line", to_json(f->line)}, {"p", to_json(f->p)}};
    return to_json(std::get<OrientedLine>(s));
}

inline json to_json(const Scene& s) {
    json j{{"space", space_name(s.space)}, {"seed", s.seed}, {"index", s.index}};
    if (is_hexagon_space(s.space)) {
        j["sides"] = json::array();
        for (const auto& x : s.sides) j["sides"].push_back(to_json(x));
    } else {
        j["vertices"] = s.vertices;
    }
    return j;
}

inline BoundaryPoint point_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() != "inf") throw Error("point: expected \"inf\" or [x0, x1, x2]");
        return BoundaryPoint::infinity();
    }
    if (!j.is_array() || j.size() != 3) throw Error("point: expected \"inf\" or [x0, x1, x2]");
    for (const auto& x : j)
        if (!x.is_number()) throw Error("point: coordinates must be numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline OrientedLine line_from_json(const json& j) {
    if (!j.is_object() || !j.contains("src") || !j.contains("dst")) throw Error("line: expected {\"src\", \"dst\"}");
    OrientedLine l{point_from_json(j.at("src")), point_from_json(j.at("dst"))};
    if (approx_equal(l.src, l.dst, 1e-12)) throw Error("line: endpoints coincide");
    return l;
}

inline Side side_from_json(const json& j) {
    if (j.is_object() && j.contains("line")) return OrientedFlag{line_from_json(j.at("line")), point_from_json(j.at("p"))};
    return line_from_json(j);
}

inline Scene scene_from_json(const json& j) {
    if (!j.is_object() || !j.contains("space")) throw Error("scene: missing \"space\"");
    Scene s;
    s.space = parse_space(j.at("space").get<std::string>());
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("index")) s.index = j.at("index").get<std::uint64_t>();
    if (is_hexagon_space(s.space)) {
        if (!j.contains("sides") || !j.at("sides").is_array() || j.at("sides").size() != 6)
            throw Error("scene: \"sides\" must list six sides");
        for (const auto& x : j.at("sides")) s.sides.push_back(side_from_json(x));
    } else {
        if (!j.contains("vertices") || !j.at("vertices").is_array() || j.at("vertices").size() != 3)
            throw Error("scene: \"vertices\" must list three points");
        for (const auto& v : j.at("vertices")) {
            if (!v.is_array() || v.size() != 3) throw Error("scene: vertex must have three coordinates");
            s.vertices.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
        }
    }
    return s;
}

// A scene file holds either one scene or {"rng", "scenes": [...]}.
inline std::vector<Scene> scenes_from_json(const json& j) {
    std::vector<Scene> out;
    if (j.is_object() && j.contains("scenes")) {
        for (const auto& x : j.at("scenes")) out.push_back(scene_from_json(x));
    } else if (j.is_array()) {
        for (const auto& x : j) out.push_back(scene_from_json(x));
    } else {
        out.push_back(scene_from_json(j));
    }
    return out;
}

inline json scenes_to_json(const std::vector<Scene>& scenes, std::uint64_t seed) {
    json j{{"format", "hexagauss-scenes"}, {"version", 1}, {"rng", kRngName}, {"seed", seed}, {"count", scenes.size()}};
    j["scenes"] = json::array();
    for (const auto& s : scenes) j["scenes"].push_back(to_json(s));
    return j;
}

inline json to_json(const SceneReport& r, double tol) {
    json f = json::object();
    for (const auto& [k, v] : r.formulas) f[k] = v;
    json j{{"index", r.index}, {"space", space_name(r.space)}, {"formulas", f}, {"pass", r.pass}};
    if (r.space == Space::H3 || r.space == Space::H4) {
        j["epsilon"] = r.epsilon;
        j["epsilon_tie"] = r.epsilon_tie;
        j["branches"] = r.branches;
        j["half_lengths"] = r.half_lengths;
    }
    j["failing"] = r.failing(tol);
    if (r.error) j["error"] = *r.error;
    return j;
}

// ---------------------------------------------------------------- text

// Points are written with the multivector grammar, bracketed: [1 - 0.5*e1] or [inf].
inline std::string point_text(const BoundaryPoint& p) {
    return "[" + (p.is_infinity() ? std::string("inf") : to_string(p.to_multivector(2))) + "]";
}

inline std::string scenes_to_text(const std::vector<Scene>& scenes, std::uint64_t seed) {
    std::ostringstream o;
    o << "hexagauss-scenes rng=" << kRngName << " seed=" << seed << " count=" << scenes.size() << "\n";
    for (const auto& s : scenes) {
        o << "scene space=" << space_name(s.space) << " seed=" << s.seed << " index=" << s.index << "\n";
        for (const auto& x : s.sides) {
            if (const auto* f = std::get_if<OrientedFlag>(&x))
                o << "flag " << point_text(f->line.src) << " " << point_text(f->line.dst) << " " << point_text(f->p) << "\n";
            else {
                const auto& l = std::get<OrientedLine>(x);
                o << "line " << point_text(l.src) << " " << point_text(l.dst) << "\n";
            }
        }
        for (const auto& v : s.vertices)
            o << "vertex " << format_double(v[0]) << " " << format_double(v[1]) << " " << format_double(v[2]) << "\n";
        o << "end\n";
    }
    return o.str();
}

inline std::vector<Scene> scenes_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Scene> out;
    std::optional<Scene> cur;
    int lineno = 0;
    auto fail = [&](const std::string& what) { return Error("line " + std::to_string(lineno) + ": " + what); };
    auto points = [&](const std::string& rest) {
        std::vector<BoundaryPoint> p;
        std::size_t i = 0;
        while ((i = rest.find('[', i)) != std::string::npos) {
            std::size_t k = rest.find(']', i);
            if (k == std::string::npos) throw fail("unterminated point");
            std::string body = rest.substr(i + 1, k - i - 1);
            if (body == "inf")
                p.push_back(BoundaryPoint::infinity());
            else
                p.push_back(BoundaryPoint::from_multivector(parse_multivector(body, 2), 1e-12));
            i = k + 1;
        }
        return p;
    };
    auto field = [&](const std::string& l, const std::string& key) -> std::optional<std::string> {
        std::istringstream ws(l);
        std::string w;
        while (ws >> w)
            if (w.rfind(key + "=", 0) == 0) return w.substr(key.size() + 1);
        return std::nullopt;
    };
    try {
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ws(line);
            std::string kw;
            if (!(ws >> kw) || kw[0] == '#' || kw == "hexagauss-scenes") continue;
            std::string rest = line.substr(line.find(kw) + kw.size());
            if (kw == "scene") {
                if (cur) throw fail("missing 'end'");
                cur = Scene{};
                auto sp = field(line, "space");
                if (!sp) throw fail("scene without space");
                cur->space = parse_space(*sp);
                if (auto v = field(line, "seed")) cur->seed = std::stoull(*v);
                if (auto v = field(line, "index")) cur->index = std::stoull(*v);
            } else if (!cur) {
                throw fail("'" + kw + "' outside a scene");
            } else if (kw == "line") {
                auto p = points(rest);
                if (p.size() != 2) throw fail("line needs two points");
                cur->sides.emplace_back(OrientedLine{p[0], p[1]});
            } else if (kw == "flag") {
                auto p = points(rest);
                if (p.size() != 3) throw fail("flag needs three points");
                cur->sides.emplace_back(OrientedFlag{{p[0], p[1]}, p[2]});
            } else if (kw == "vertex") {
                std::array<double, 3> v{};
                std::istringstream vs(rest);
                if (!(vs >> v[0] >> v[1] >> v[2])) throw fail("vertex needs three numbers");
                cur->vertices.push_back(v);
            } else if (kw == "end") {
                if (is_hexagon_space(cur->space) ? cur->sides.size() != 6 : cur->vertices.size() != 3)
                    throw fail("scene has the wrong number of sides or vertices");
                out.push_back(*cur);
                cur.reset();
            } else {
                throw fail("unknown keyword '" + kw + "'");
            }
        }
    } catch (const std::invalid_argument&) {
        throw fail("bad number");
    } catch (const std::out_of_range&) {
        throw fail("number out of range");
    }
    if (cur) throw Error("scene file ends inside a scene");
    return out;
}

// Dispatches on the first non-blank character.
inline std::vector<Scene> parse_scenes(const std::string& text) {
    const auto i = text.find_first_not_of(" \t\r\n");
    if (i == std::string::npos) throw Error("empty scene input");
    if (text[i] == '{' || text[i] == '[') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw Error(std::string("invalid JSON: ") + e.what());
        }
        try {
            return scenes_from_json(j);
        } catch (const json::exception& e) {
            throw Error(std::string("invalid scene: ") + e.what());
        }
    }
    return scenes_from_text(text);
}

}  // namespace hexagauss
