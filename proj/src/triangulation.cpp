#include "famedkit/triangulation.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace famedkit {

InputError::InputError(const std::string& what, int line, int column)
    : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ")"
                                  : what),
      line_(line),
      column_(column) {}

int edge_slot_index(int i, int j) {
    if (i > j) std::swap(i, j);
    for (int e = 0; e < 6; ++e)
        if (kEdgeVertices[e].first == i && kEdgeVertices[e].second == j) return e;
    throw std::invalid_argument("bad vertex pair");
}

std::vector<int> OrderedTriangulation::signs() const {
    std::vector<int> s;
    for (const auto& t : tets) s.push_back(t.sign);
    return s;
}

const PeripheralCurve* OrderedTriangulation::curve(const std::string& n) const {
    for (const auto& c : curves)
        if (c.name == n) return &c;
    return nullptr;
}

int OrderedTriangulation::face_class_of(int tet, int face) const {
    for (size_t i = 0; i < faces.size(); ++i) {
        const auto& f = faces[i];
        if ((f.first.tet == tet && f.first.face == face) || (f.second.tet == tet && f.second.face == face))
            return static_cast<int>(i);
    }
    return -1;
}

namespace {

struct Token {
    std::string text;
    int column;
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

long parse_long(const std::string& s, int line, int col) {
    if (s.empty()) throw InputError("syntax error: expected integer", line, col);
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (...) {
        throw InputError("syntax error: expected integer, got '" + s + "'", line, col);
    }
    if (pos != s.size()) throw InputError("syntax error: expected integer, got '" + s + "'", line, col);
    return v;
}

std::string value_of(const Token& t, const std::string& key, int line) {
    auto prefix = key + "=";
    if (t.text.rfind(prefix, 0) != 0)
        throw InputError("syntax error: expected '" + prefix + "'", line, t.column);
    return t.text.substr(prefix.size());
}

std::vector<long> parse_list(const std::string& s, int line, int col) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_long(item, line, col));
    return out;
}

FaceRef parse_faceref(const std::string& s, int line, int col) {
    auto dot = s.find('.');
    if (dot == std::string::npos) throw InputError("syntax error: expected <tet>.<face>", line, col);
    return {static_cast<int>(parse_long(s.substr(0, dot), line, col)),
            static_cast<int>(parse_long(s.substr(dot + 1), line, col))};
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

std::array<int, 3> face_vertices(int k) {
    std::array<int, 3> v{};
    int n = 0;
    for (int i = 0; i < 4; ++i)
        if (i != k) v[n++] = i;
    return v;
}

}

std::vector<EdgeClass> edge_classes(const OrderedTriangulation& tri) {
    const int n = tri.size();
    UnionFind uf(6 * n);
    for (const auto& t : tri.tets)
        for (int k = 0; k < 4; ++k) {
            const auto& g = t.glue[k];
            if (g.tet < 0 || g.tet >= n || g.face < 0 || g.face > 3) continue;
            auto src = face_vertices(k);
            auto dst = face_vertices(g.face);
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b)
                    uf.unite(6 * t.index + edge_slot_index(src[a], src[b]),
                             6 * g.tet + edge_slot_index(dst[a], dst[b]));
        }
    std::map<int, std::vector<int>> groups;
    for (int s = 0; s < 6 * n; ++s) groups[uf.find(s)].push_back(s);
    std::vector<EdgeClass> out;
    for (auto& [root, slots] : groups) out.push_back({slots});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.slots[0] < b.slots[0]; });
    return out;
}

void finalize(OrderedTriangulation& tri, bool validate) {
    const int n = tri.size();
    for (int i = 0; i < n; ++i)
        if (tri.tets[i].index != i) throw InputError("tetrahedra must be numbered 0.." + std::to_string(n - 1));
    if (validate) {
        for (const auto& t : tri.tets)
            for (int k = 0; k < 4; ++k) {
                const auto& g = t.glue[k];
                std::string where = "face " + std::to_string(t.index) + "." + std::to_string(k);
                if (g.tet < 0) throw InputError("unpaired face: " + where);
                if (g.tet >= n || g.face < 0 || g.face > 3)
                    throw InputError("gluing target out of range: " + where);
                if (g.tet == t.index && g.face == k) throw InputError("face glued to itself: " + where);
                const auto& back = tri.tets[g.tet].glue[g.face];
                if (back.tet != t.index || back.face != k)
                    throw InputError("unpaired face: " + where + " is not glued back by its partner");
            }
    }
    tri.edge_classes = edge_classes(tri);
    tri.slot_class.assign(6 * n, -1);
    for (size_t c = 0; c < tri.edge_classes.size(); ++c)
        for (int s : tri.edge_classes[c].slots) tri.slot_class[s] = static_cast<int>(c);
    if (validate && tri.knot_complement && static_cast<int>(tri.edge_classes.size()) != n)
        throw InputError("knot complement must have " + std::to_string(n) + " edge classes, found " +
                         std::to_string(tri.edge_classes.size()));
    for (const auto& c : tri.curves)
        if (static_cast<int>(c.C.size()) != n || static_cast<int>(c.Cp.size()) != n ||
            static_cast<int>(c.Cpp.size()) != n)
            throw InputError("curve " + c.name + ": vectors must have length " + std::to_string(n));

    if (!validate) return;
    // face classes: either the declared order or ascending smallest slot
    std::vector<FaceClass> canonical;
    for (const auto& t : tri.tets)
        for (int k = 0; k < 4; ++k) {
            FaceRef self{t.index, k};
            FaceRef other = t.glue[k];
            if (other.tet * 4 + other.face < self.tet * 4 + self.face) continue;
            canonical.push_back({"", self, other});
        }
    if (!tri.explicit_face_order) {
        for (size_t i = 0; i < canonical.size(); ++i) canonical[i].name = "F" + std::to_string(i);
        tri.faces = canonical;
        return;
    }
    if (tri.faces.size() != canonical.size())
        throw InputError("faces directive must list " + std::to_string(canonical.size()) + " face classes");
    std::vector<FaceClass> ordered;
    std::vector<bool> used(canonical.size(), false);
    for (const auto& f : tri.faces) {
        bool found = false;
        for (size_t i = 0; i < canonical.size(); ++i) {
            if (canonical[i].first == f.first || canonical[i].second == f.first) {
                if (used[i]) throw InputError("faces directive names face class " + f.name + " twice");
                used[i] = true;
                ordered.push_back({f.name, canonical[i].first, canonical[i].second});
                found = true;
                break;
            }
        }
        if (!found) throw InputError("faces directive: unknown face for " + f.name);
    }
    tri.faces = ordered;
}

OrderedTriangulation parse_triangulation(const std::string& text, const ParseOptions& opt) {
    OrderedTriangulation tri;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_header = false;
    int declared = -1;
    std::vector<bool> seen;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        auto tok = tokenize(line);
        if (tok.empty()) continue;
        const auto& kw = tok[0].text;
        if (!have_header) {
            if (kw != "triangulation" || tok.size() != 4)
                throw InputError("syntax error: expected 'triangulation <name> tets=<N> kind=<kind>'", lineno,
                                 tok[0].column);
            tri.name = tok[1].text;
            declared = static_cast<int>(parse_long(value_of(tok[2], "tets", lineno), lineno, tok[2].column));
            if (declared <= 0) throw InputError("tets must be positive", lineno, tok[2].column);
            auto kind = value_of(tok[3], "kind", lineno);
            if (kind == "knot-complement")
                tri.knot_complement = true;
            else if (kind != "generic")
                throw InputError("syntax error: unknown kind '" + kind + "'", lineno, tok[3].column);
            tri.tets.resize(declared);
            seen.assign(declared, false);
            have_header = true;
            continue;
        }
        if (kw == "tet") {
            if (tok.size() < 4) throw InputError("syntax error: incomplete tet line", lineno, tok[0].column);
            int idx = static_cast<int>(parse_long(tok[1].text, lineno, tok[1].column));
            if (idx < 0 || idx >= declared)
                throw InputError("tetrahedron index out of range", lineno, tok[1].column);
            if (seen[idx]) throw InputError("duplicate tetrahedron " + std::to_string(idx), lineno, tok[1].column);
            seen[idx] = true;
            Tetrahedron t;
            t.index = idx;
            long s = parse_long(value_of(tok[2], "sign", lineno), lineno, tok[2].column);
            if (s != 1 && s != -1) throw InputError("sign must be +1 or -1", lineno, tok[2].column);
            t.sign = static_cast<int>(s);
            if (tok[3].text != "glue") throw InputError("syntax error: expected 'glue'", lineno, tok[3].column);
            std::array<bool, 4> set{};
            for (size_t i = 4; i < tok.size(); ++i) {
                const auto& g = tok[i].text;
                auto arrow = g.find("->");
                if (arrow == std::string::npos)
                    throw InputError("syntax error: expected <face>-><tet>.<face>", lineno, tok[i].column);
                long k = parse_long(g.substr(0, arrow), lineno, tok[i].column);
                if (k < 0 || k > 3) throw InputError("face index must be 0..3", lineno, tok[i].column);
                if (set[k]) throw InputError("face listed twice", lineno, tok[i].column);
                set[k] = true;
                auto target = g.substr(arrow + 2);
                if (target == "-") continue;
                t.glue[k] = parse_faceref(target, lineno, tok[i].column + static_cast<int>(arrow) + 2);
            }
            tri.tets[idx] = t;
        } else if (kw == "curve") {
            if (tok.size() != 6) throw InputError("syntax error: curve needs name, nu, C, Cp, Cpp", lineno, tok[0].column);
            PeripheralCurve c;
            c.name = tok[1].text;
            c.nu = parse_long(value_of(tok[2], "nu", lineno), lineno, tok[2].column);
            c.C = parse_list(value_of(tok[3], "C", lineno), lineno, tok[3].column);
            c.Cp = parse_list(value_of(tok[4], "Cp", lineno), lineno, tok[4].column);
            c.Cpp = parse_list(value_of(tok[5], "Cpp", lineno), lineno, tok[5].column);
            if (tri.curve(c.name)) throw InputError("duplicate curve " + c.name, lineno, tok[1].column);
            tri.curves.push_back(c);
        } else if (kw == "faces") {
            for (size_t i = 1; i < tok.size(); ++i) {
                auto eq = tok[i].text.find('=');
                if (eq == std::string::npos || eq == 0)
                    throw InputError("syntax error: expected <name>=<tet>.<face>", lineno, tok[i].column);
                tri.faces.push_back({tok[i].text.substr(0, eq),
                                     parse_faceref(tok[i].text.substr(eq + 1), lineno, tok[i].column), {}});
            }
            tri.explicit_face_order = true;
        } else {
            throw InputError("syntax error: unknown directive '" + kw + "'", lineno, tok[0].column);
        }
    }
    if (!have_header) throw InputError("syntax error: missing header", lineno, 1);
    for (int i = 0; i < declared; ++i)
        if (!seen[i]) throw InputError("missing tetrahedron " + std::to_string(i));
    finalize(tri, opt.validate);
    return tri;
}

OrderedTriangulation load_triangulation(const std::string& path, const ParseOptions& opt) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_triangulation(ss.str(), opt);
}

namespace {
std::string join(const std::vector<long>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}
}

std::string serialize(const OrderedTriangulation& tri) {
    std::ostringstream out;
    out << "triangulation " << tri.name << " tets=" << tri.size()
        << " kind=" << (tri.knot_complement ? "knot-complement" : "generic") << "\n";
    if (tri.explicit_face_order) {
        out << "faces";
        for (const auto& f : tri.faces) out << " " << f.name << "=" << f.first.tet << "." << f.first.face;
        out << "\n";
    }
    for (const auto& t : tri.tets) {
        out << "tet " << t.index << " sign=" << (t.sign > 0 ? "+1" : "-1") << " glue";
        for (int k = 0; k < 4; ++k) {
            out << " " << k << "->";
            if (t.glue[k].tet < 0)
                out << "-";
            else
                out << t.glue[k].tet << "." << t.glue[k].face;
        }
        out << "\n";
    }
    for (const auto& c : tri.curves)
        out << "curve " << c.name << " nu=" << c.nu << " C=" << join(c.C) << " Cp=" << join(c.Cp)
            << " Cpp=" << join(c.Cpp) << "\n";
    return out.str();
}

bool isomorphic_identity(const OrderedTriangulation& a, const OrderedTriangulation& b) {
    if (a.size() != b.size() || a.knot_complement != b.knot_complement) return false;
    for (int i = 0; i < a.size(); ++i) {
        if (a.tets[i].sign != b.tets[i].sign) return false;
        for (int k = 0; k < 4; ++k)
            if (!(a.tets[i].glue[k] == b.tets[i].glue[k])) return false;
    }
    if (a.curves.size() != b.curves.size()) return false;
    for (size_t i = 0; i < a.curves.size(); ++i) {
        const auto &x = a.curves[i], &y = b.curves[i];
        if (x.name != y.name || x.nu != y.nu || x.C != y.C || x.Cp != y.Cp || x.Cpp != y.Cpp) return false;
    }
    if (a.faces.size() != b.faces.size()) return false;
    for (size_t i = 0; i < a.faces.size(); ++i)
        if (a.faces[i].name != b.faces[i].name || !(a.faces[i].first == b.faces[i].first)) return false;
    return a.slot_class == b.slot_class;
}

std::string preset_dir() {
    if (const char* env = std::getenv("FAMEDKIT_PRESET_DIR")) return env;
#ifdef FAMEDKIT_DEFAULT_PRESET_DIR
    return FAMEDKIT_DEFAULT_PRESET_DIR;
#else
    return "presets";
#endif
}

std::string resolve_triangulation_path(const std::string& s) {
    namespace fs = std::filesystem;
    if (fs::exists(s)) return s;
    fs::path p = fs::path(preset_dir()) / s;
    if (fs::exists(p)) return p.string();
    p += ".tri";
    if (fs::exists(p)) return p.string();
    return s;
}

std::vector<std::string> preset_names() {
    namespace fs = std::filesystem;
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(preset_dir(), ec))
        if (e.path().extension() == ".tri") out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

}
