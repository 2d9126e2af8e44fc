#include "trishoot/scene.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace trishoot {

namespace {

Rat need_rat(const std::string& tok, const char* what) {
    auto r = rat_parse(tok);
    if (!r) throw std::runtime_error(std::string("scene: bad ") + what + " '" + tok + "'");
    return *r;
}

// Reads the next non-empty, non-comment line.
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line[i] == '#') continue;
        return true;
    }
    return false;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

Scene load_tsoup(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw std::runtime_error("scene: missing count");
    std::size_t n = std::stoul(line);
    Scene sc;
    sc.tris.reserve(n);
    for (std::size_t i = 0; i < n; i++) {
        if (!next_line(in, line)) throw std::runtime_error("scene: truncated soup");
        auto toks = split_ws(line);
        if (toks.size() != 9) throw std::runtime_error("scene: expected 9 coordinates");
        Triangle3 t;
        for (int v = 0; v < 3; v++) {
            t.v[v] = Point3(need_rat(toks[3 * v], "x"), need_rat(toks[3 * v + 1], "y"),
                            need_rat(toks[3 * v + 2], "z"));
        }
        sc.tris.push_back(std::move(t));
    }
    sc.finalize();
    return sc;
}

Scene load_off(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw std::runtime_error("OFF: missing counts");
    auto counts = split_ws(line);
    if (counts.size() < 2) throw std::runtime_error("OFF: bad counts line");
    std::size_t nv = std::stoul(counts[0]), nf = std::stoul(counts[1]);
    std::vector<Point3> verts;
    verts.reserve(nv);
    for (std::size_t i = 0; i < nv; i++) {
        if (!next_line(in, line)) throw std::runtime_error("OFF: truncated vertices");
        auto toks = split_ws(line);
        if (toks.size() < 3) throw std::runtime_error("OFF: bad vertex");
        verts.emplace_back(need_rat(toks[0], "x"), need_rat(toks[1], "y"), need_rat(toks[2], "z"));
    }
    Scene sc;
    for (std::size_t i = 0; i < nf; i++) {
        if (!next_line(in, line)) throw std::runtime_error("OFF: truncated faces");
        auto toks = split_ws(line);
        if (toks.empty()) throw std::runtime_error("OFF: bad face");
        std::size_t k = std::stoul(toks[0]);
        if (toks.size() < k + 1 || k < 3) throw std::runtime_error("OFF: bad face arity");
        std::vector<std::size_t> idx(k);
        for (std::size_t j = 0; j < k; j++) {
            idx[j] = std::stoul(toks[j + 1]);
            if (idx[j] >= nv) throw std::runtime_error("OFF: vertex index out of range");
        }
        for (std::size_t j = 1; j + 1 < k; j++) {  // fan triangulation
            Triangle3 t;
            t.v = {verts[idx[0]], verts[idx[j]], verts[idx[j + 1]]};
            sc.tris.push_back(std::move(t));
        }
    }
    sc.finalize();
    return sc;
}

}  // namespace

void Scene::finalize() {
    for (std::size_t i = 0; i < tris.size(); i++) {
        tris[i].id = static_cast<int>(i);
        tris[i].finalize();
    }
    if (tris.empty()) {
        for (int k = 0; k < 3; k++) {
            bbox.lo[k] = Rat(-1);
            bbox.hi[k] = Rat(1);
        }
        return;
    }
    Rat lo[3], hi[3];
    for (int k = 0; k < 3; k++) {
        const Rat& first = k == 0 ? tris[0].v[0].x : (k == 1 ? tris[0].v[0].y : tris[0].v[0].z);
        lo[k] = first;
        hi[k] = first;
    }
    for (const Triangle3& t : tris) {
        for (const Point3& p : t.v) {
            const Rat* c[3] = {&p.x, &p.y, &p.z};
            for (int k = 0; k < 3; k++) {
                if (*c[k] < lo[k]) lo[k] = *c[k];
                if (*c[k] > hi[k]) hi[k] = *c[k];
            }
        }
    }
    for (int k = 0; k < 3; k++) {
        bbox.lo[k] = Rat(lo[k] - 1);
        bbox.hi[k] = Rat(hi[k] + 1);
    }
}

Scene load_scene(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw std::runtime_error("scene: empty input");
    auto toks = split_ws(line);
    if (toks.empty()) throw std::runtime_error("scene: empty header");
    if (toks[0] == "TSOUP") return load_tsoup(in);
    if (toks[0] == "OFF") return load_off(in);
    throw std::runtime_error("scene: unknown header '" + toks[0] + "'");
}

Scene load_scene_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("scene: cannot open " + path);
    return load_scene(in);
}

void save_scene(std::ostream& out, const Scene& scene) {
    out << "TSOUP\n" << scene.tris.size() << "\n";
    for (const Triangle3& t : scene.tris) {
        for (int v = 0; v < 3; v++) {
            out << rat_str(t.v[v].x) << ' ' << rat_str(t.v[v].y) << ' ' << rat_str(t.v[v].z);
            out << (v == 2 ? '\n' : ' ');
        }
    }
}

void save_scene_file(const std::string& path, const Scene& scene) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("scene: cannot write " + path);
    save_scene(out, scene);
    out.flush();
    if (!out) throw std::runtime_error("scene: write failed for " + path);
}

Segment3 clip_ray_to_box(const Ray3& ray, const Box3& box) {
    // Intersect the parameter ray t >= 0 with all six slabs.
    Rat t_in(0), t_out(-1);
    bool have_out = false;
    const Rat* o[3] = {&ray.origin.x, &ray.origin.y, &ray.origin.z};
    const Rat* d[3] = {&ray.dir.x, &ray.dir.y, &ray.dir.z};
    for (int k = 0; k < 3; k++) {
        if (*d[k] == 0) {
            if (*o[k] < box.lo[k] || *o[k] > box.hi[k]) return {ray.origin, ray.origin};
            continue;
        }
        Rat t1((box.lo[k] - *o[k]) / *d[k]);
        Rat t2((box.hi[k] - *o[k]) / *d[k]);
        if (t1 > t2) std::swap(t1, t2);
        if (t1 > t_in) t_in = t1;
        if (!have_out || t2 < t_out) {
            t_out = t2;
            have_out = true;
        }
    }
    if (!have_out || t_out < t_in) return {ray.origin, ray.origin};
    Point3 a = ray.origin + (t_in * ray.dir);
    Point3 b = ray.origin + (t_out * ray.dir);
    return {a, b};
}

}  // namespace trishoot
