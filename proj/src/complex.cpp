#include "finecurve/complex.hpp"

#include "finecurve/errors.hpp"
#include "finecurve/intersection.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace finecurve {

namespace {

void add_faces(std::set<Simplex>& out, const Simplex& sigma) {
    const int k = static_cast<int>(sigma.size());
    if (k > 20) throw ContractError("simplex too large to close downward");
    for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
        Simplex face;
        for (int i = 0; i < k; ++i) {
            if (mask & (1ul << i)) face.push_back(sigma[i]);
        }
        out.insert(std::move(face));
    }
}

void bron_kerbosch(std::vector<int>& r, std::vector<int> p, std::vector<int> x,
                   const std::vector<std::vector<bool>>& adj, std::vector<Simplex>& out) {
    if (p.empty() && x.empty()) {
        Simplex s = r;
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
        return;
    }
    while (!p.empty()) {
        int v = p.back();
        std::vector<int> p2, x2;
        for (int w : p) {
            if (adj[v][w]) p2.push_back(w);
        }
        for (int w : x) {
            if (adj[v][w]) x2.push_back(w);
        }
        r.push_back(v);
        bron_kerbosch(r, p2, x2, adj, out);
        r.pop_back();
        p.pop_back();
        x.push_back(v);
    }
}

SimplicialComplex restricted(const SimplicialComplex& x, const std::vector<Simplex>& maximal) {
    std::set<int> used;
    for (const Simplex& s : maximal) used.insert(s.begin(), s.end());
    std::map<int, int> renumber;
    std::vector<std::string> names;
    for (int v : used) {
        renumber[v] = static_cast<int>(names.size());
        names.push_back(x.vertices()[v]);
    }
    std::vector<Simplex> mapped;
    for (const Simplex& s : maximal) {
        Simplex t;
        for (int v : s) t.push_back(renumber[v]);
        mapped.push_back(std::move(t));
    }
    return SimplicialComplex(std::move(names), mapped);
}

bool connected(int n, const std::vector<Simplex>& edges) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (const Simplex& e : edges) parent[find(e[0])] = find(e[1]);
    for (int v = 0; v < n; ++v) {
        if (find(v) != find(0)) return false;
    }
    return true;
}

bool is_cycle(const SimplicialComplex& x) {
    if (x.vertex_count() < 3 || x.dimension() != 1) return false;
    std::vector<int> degree(x.vertex_count(), 0);
    auto edges = x.simplices_of_dimension(1);
    for (const Simplex& e : edges) {
        ++degree[e[0]];
        ++degree[e[1]];
    }
    if (std::any_of(degree.begin(), degree.end(), [](int d) { return d != 2; })) return false;
    return connected(x.vertex_count(), edges);
}

Simplex image_of(const Simplex& sigma, const std::vector<int>& f) {
    Simplex out;
    for (int v : sigma) out.push_back(f[v]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<std::string> vertices, const std::vector<Simplex>& maximal)
    : vertices_(std::move(vertices)) {
    std::set<std::string> seen(vertices_.begin(), vertices_.end());
    if (seen.size() != vertices_.size()) throw ContractError("duplicate vertex handle");
    for (int v = 0; v < vertex_count(); ++v) simplices_.insert({v});
    for (Simplex sigma : maximal) {
        std::sort(sigma.begin(), sigma.end());
        if (sigma.empty() || std::adjacent_find(sigma.begin(), sigma.end()) != sigma.end()) {
            throw ContractError("malformed simplex");
        }
        if (sigma.front() < 0 || sigma.back() >= vertex_count()) throw ContractError("simplex uses an unknown vertex");
        add_faces(simplices_, sigma);
    }
}

int SimplicialComplex::index_of(const std::string& handle) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), handle);
    if (it == vertices_.end()) throw ContractError("unknown vertex handle " + handle);
    return static_cast<int>(it - vertices_.begin());
}

bool SimplicialComplex::contains(const Simplex& sigma) const { return simplices_.count(sigma) > 0; }

int SimplicialComplex::dimension() const {
    int d = -1;
    for (const Simplex& s : simplices_) d = std::max(d, static_cast<int>(s.size()) - 1);
    return d;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
    std::vector<Simplex> out;
    for (const Simplex& s : simplices_) {
        bool maximal = true;
        for (int v = 0; v < vertex_count() && maximal; ++v) {
            if (std::binary_search(s.begin(), s.end(), v)) continue;
            Simplex bigger = s;
            bigger.insert(std::lower_bound(bigger.begin(), bigger.end(), v), v);
            if (simplices_.count(bigger)) maximal = false;
        }
        if (maximal) out.push_back(s);
    }
    return out;
}

std::vector<Simplex> SimplicialComplex::simplices_of_dimension(int k) const {
    std::vector<Simplex> out;
    for (const Simplex& s : simplices_) {
        if (static_cast<int>(s.size()) == k + 1) out.push_back(s);
    }
    return out;
}

std::vector<int> SimplicialComplex::f_vector() const {
    std::vector<int> f(dimension() + 1, 0);
    for (const Simplex& s : simplices_) ++f[s.size() - 1];
    return f;
}

long SimplicialComplex::euler_characteristic() const {
    long chi = 0;
    for (const Simplex& s : simplices_) chi += s.size() % 2 == 1 ? 1 : -1;
    return chi;
}

std::vector<std::vector<std::string>> named_maximal(const SimplicialComplex& x) {
    std::vector<std::vector<std::string>> out;
    for (const Simplex& s : x.maximal_simplices()) {
        std::vector<std::string> names;
        for (int v : s) names.push_back(x.vertices()[v]);
        out.push_back(std::move(names));
    }
    return out;
}

SimplicialComplex flag_complex(const std::vector<std::string>& vertices,
                               const std::function<bool(int, int)>& adjacent) {
    const int n = static_cast<int>(vertices.size());
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) adj[i][j] = adj[j][i] = adjacent(i, j);
    }
    std::vector<int> r, p(n);
    std::iota(p.rbegin(), p.rend(), 0);
    std::vector<Simplex> cliques;
    if (n > 0) bron_kerbosch(r, p, {}, adj, cliques);
    return SimplicialComplex(vertices, cliques);
}

SimplicialComplex fine_subcomplex(const Surface& s, const std::vector<PolyCurve>& curves,
                                  std::vector<std::string> handles) {
    const int n = static_cast<int>(curves.size());
    if (handles.empty()) {
        for (int i = 0; i < n; ++i) handles.push_back("c" + std::to_string(i));
    }
    if (static_cast<int>(handles.size()) != n) throw ContractError("one handle per curve is required");
    for (int i = 0; i < n; ++i) {
        require_valid(s, curves[i], handles[i]);
        if (curves[i].kind != curves[0].kind) throw ContractError("fine complexes cannot mix curves and arcs");
    }
    std::vector<std::vector<bool>> apart(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            IntersectionReport r = intersect_curves(s, curves[i], curves[j]);
            if (r.identical) throw ContractError("curves " + handles[i] + " and " + handles[j] + " coincide");
            apart[i][j] = apart[j][i] = r.empty();
        }
    }
    return flag_complex(handles, [&](int i, int j) { return apart[i][j]; });
}

SimplicialComplex star(const SimplicialComplex& x, const std::string& v) {
    const int idx = x.index_of(v);
    std::vector<Simplex> maximal;
    for (const Simplex& s : x.maximal_simplices()) {
        if (std::binary_search(s.begin(), s.end(), idx)) maximal.push_back(s);
    }
    return restricted(x, maximal);
}

SimplicialComplex link(const SimplicialComplex& x, const std::string& v) {
    const int idx = x.index_of(v);
    std::vector<Simplex> maximal;
    for (const Simplex& s : x.maximal_simplices()) {
        if (!std::binary_search(s.begin(), s.end(), idx) || s.size() == 1) continue;
        Simplex t;
        for (int w : s) {
            if (w != idx) t.push_back(w);
        }
        maximal.push_back(std::move(t));
    }
    return restricted(x, maximal);
}

SimplicialComplex boundary_of_simplex(int n) {
    std::vector<std::string> names;
    for (int i = 0; i <= n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<Simplex> facets;
    for (int skip = 0; skip <= n; ++skip) {
        Simplex f;
        for (int i = 0; i <= n; ++i) {
            if (i != skip) f.push_back(i);
        }
        facets.push_back(std::move(f));
    }
    return SimplicialComplex(names, facets);
}

SimplicialComplex octahedron() {
    // Antipodal pairs (0,1), (2,3), (4,5).
    std::vector<Simplex> facets;
    for (int a : {0, 1}) {
        for (int b : {2, 3}) {
            for (int c : {4, 5}) facets.push_back({a, b, c});
        }
    }
    return SimplicialComplex({"x+", "x-", "y+", "y-", "z+", "z-"}, facets);
}

SimplicialComplex cycle_complex(int n) {
    std::vector<std::string> names;
    std::vector<Simplex> edges;
    for (int i = 0; i < n; ++i) {
        names.push_back("v" + std::to_string(i));
        edges.push_back({i, (i + 1) % n});
    }
    return SimplicialComplex(names, edges);
}

SphereCheck check_sphere(const SimplicialComplex& x, int k) {
    SphereCheck out;
    auto fail = [&](std::string why) {
        out.valid = false;
        out.message = std::move(why);
        return out;
    };
    if (k < 0) return fail("negative sphere dimension");
    if (x.dimension() != k) return fail("complex has dimension " + std::to_string(x.dimension()));
    out.validated = k <= 2;
    if (k == 0) {
        if (x.vertex_count() != 2) return fail("a 0-sphere has exactly two vertices");
    } else if (k == 1) {
        if (!is_cycle(x)) return fail("a 1-sphere must be a single cycle");
    } else if (k == 2) {
        auto edges = x.simplices_of_dimension(1);
        auto triangles = x.simplices_of_dimension(2);
        std::map<Simplex, int> uses;
        for (const Simplex& t : triangles) {
            uses[{t[0], t[1]}]++;
            uses[{t[0], t[2]}]++;
            uses[{t[1], t[2]}]++;
        }
        for (const Simplex& e : edges) {
            if (uses[e] != 2) return fail("edge not shared by exactly two triangles");
        }
        for (const std::string& v : x.vertices()) {
            if (!is_cycle(link(x, v))) return fail("link of " + v + " is not a cycle");
        }
        if (!connected(x.vertex_count(), edges)) return fail("complex is disconnected");
        if (x.euler_characteristic() != 2) return fail("Euler characteristic differs from 2");
    } else {
        HomologyReport h = homology(x, Coefficients::Mod2);
        for (int d = 0; d < static_cast<int>(h.betti.size()); ++d) {
            if (h.betti[d] != (d == k ? 1 : 0)) return fail("homology is not that of a sphere");
        }
        out.message = "unvalidated: only homology was checked above dimension 2";
    }
    out.valid = true;
    return out;
}

bool check_simplicial(const SimplicialMap& f) {
    if (static_cast<int>(f.image.size()) != f.source.vertex_count()) return false;
    for (int v : f.image) {
        if (v < 0 || v >= f.target.vertex_count()) return false;
    }
    for (const Simplex& s : f.source.maximal_simplices()) {
        if (!f.target.contains(image_of(s, f.image))) return false;
    }
    return true;
}

bool straight_line_homotopy_valid(const SimplicialMap& phi, const SimplicialMap& psi) {
    if (phi.source.vertices() != psi.source.vertices() || phi.source.simplices() != psi.source.simplices()) {
        return false;
    }
    if (!check_simplicial(phi) || !check_simplicial(psi)) return false;
    for (const Simplex& s : phi.source.maximal_simplices()) {
        Simplex joint = image_of(s, phi.image);
        Simplex other = image_of(s, psi.image);
        joint.insert(joint.end(), other.begin(), other.end());
        std::sort(joint.begin(), joint.end());
        joint.erase(std::unique(joint.begin(), joint.end()), joint.end());
        // phi and psi must share their target for the union to be meaningful.
        if (!phi.target.contains(joint)) return false;
    }
    return true;
}

std::vector<mpz_class> smith_diagonal(std::vector<std::vector<mpz_class>> m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<mpz_class> diag;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        bool exhausted = false;
        for (;;) {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = t; i < rows; ++i) {
                for (std::size_t j = t; j < cols; ++j) {
                    if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
                }
            }
            if (pr == rows) {
                exhausted = true;
                break;
            }
            std::swap(m[t], m[pr]);
            for (auto& row : m) std::swap(row[t], row[pc]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                mpz_class qt = m[i][t] / m[t][t];
                for (std::size_t j = t; j < cols; ++j) m[i][j] -= qt * m[t][j];
                if (m[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                mpz_class qt = m[t][j] / m[t][t];
                for (std::size_t i = t; i < rows; ++i) m[i][j] -= qt * m[i][t];
                if (m[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
        if (exhausted) break;
        diag.push_back(abs(m[t][t]));
    }
    // Diagonal entries up to order; gcd/lcm swaps give the divisibility chain.
    for (std::size_t a = 0; a < diag.size(); ++a) {
        for (std::size_t b = a + 1; b < diag.size(); ++b) {
            mpz_class g, l;
            mpz_gcd(g.get_mpz_t(), diag[a].get_mpz_t(), diag[b].get_mpz_t());
            mpz_lcm(l.get_mpz_t(), diag[a].get_mpz_t(), diag[b].get_mpz_t());
            diag[a] = g;
            diag[b] = l;
        }
    }
    return diag;
}

long rank_mod2(std::vector<std::vector<unsigned char>> m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    long rank = 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && !m[p][c]) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != r && m[i][c]) {
                for (std::size_t j = c; j < cols; ++j) m[i][j] ^= m[r][j];
            }
        }
        ++r;
        ++rank;
    }
    return rank;
}

HomologyReport homology(const SimplicialComplex& x, Coefficients coefficients) {
    HomologyReport out;
    out.coefficients = coefficients;
    const int dim = x.dimension();
    if (dim < 0) return out;
    std::vector<std::vector<Simplex>> cells(dim + 1);
    std::vector<std::map<Simplex, std::size_t>> position(dim + 1);
    for (int k = 0; k <= dim; ++k) {
        cells[k] = x.simplices_of_dimension(k);
        for (std::size_t i = 0; i < cells[k].size(); ++i) position[k][cells[k][i]] = i;
    }
    // rank[k] is the rank of the boundary C_k -> C_{k-1}; degree 0 maps onto
    // the augmentation.
    std::vector<long> rank(dim + 2, 0);
    out.torsion.assign(dim + 1, {});
    for (int k = 0; k <= dim; ++k) {
        const std::size_t nrows = k == 0 ? 1 : cells[k - 1].size();
        const std::size_t ncols = cells[k].size();
        std::vector<std::vector<mpz_class>> m(nrows, std::vector<mpz_class>(ncols, 0));
        for (std::size_t j = 0; j < ncols; ++j) {
            const Simplex& s = cells[k][j];
            if (k == 0) {
                m[0][j] = 1;
                continue;
            }
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex face = s;
                face.erase(face.begin() + i);
                m[position[k - 1][face]][j] = i % 2 == 0 ? 1 : -1;
            }
        }
        if (coefficients == Coefficients::Integers) {
            auto diag = smith_diagonal(std::move(m));
            rank[k] = static_cast<long>(diag.size());
            if (k > 0) {
                for (const mpz_class& d : diag) {
                    if (d > 1) out.torsion[k - 1].push_back(d);
                }
            }
        } else {
            std::vector<std::vector<unsigned char>> bits(nrows, std::vector<unsigned char>(ncols, 0));
            for (std::size_t i = 0; i < nrows; ++i) {
                for (std::size_t j = 0; j < ncols; ++j) bits[i][j] = m[i][j] != 0 ? 1 : 0;
            }
            rank[k] = rank_mod2(std::move(bits));
        }
    }
    for (int k = 0; k <= dim; ++k) {
        out.betti.push_back(static_cast<long>(cells[k].size()) - rank[k] - rank[k + 1]);
    }
    return out;
}

}  // namespace finecurve
