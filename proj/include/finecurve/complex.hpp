#pragma once

#include "finecurve/surface.hpp"

#include <gmpxx.h>

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace finecurve {

// Sorted vertex indices.
using Simplex = std::vector<int>;

class SimplicialComplex {
public:
    SimplicialComplex() = default;
    // Closes the given simplices downward. Vertices without a simplex are
    // added as 0-simplices.
    SimplicialComplex(std::vector<std::string> vertices, const std::vector<Simplex>& maximal);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::set<Simplex>& simplices() const { return simplices_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int index_of(const std::string& handle) const;  // throws ContractError if unknown
    bool contains(const Simplex& sigma) const;
    int dimension() const;
    std::vector<Simplex> maximal_simplices() const;
    std::vector<Simplex> simplices_of_dimension(int k) const;
    std::vector<int> f_vector() const;
    long euler_characteristic() const;

private:
    std::vector<std::string> vertices_;
    std::set<Simplex> simplices_;
};

// Simplex names replaced by handles, maximal simplices only.
std::vector<std::vector<std::string>> named_maximal(const SimplicialComplex& x);

// Clique complex of a graph given by an adjacency predicate.
SimplicialComplex flag_complex(const std::vector<std::string>& vertices,
                               const std::function<bool(int, int)>& adjacent);

// Full subcomplex of the fine curve (or arc) complex on the given curves.
SimplicialComplex fine_subcomplex(const Surface& s, const std::vector<PolyCurve>& curves,
                                  std::vector<std::string> handles = {});

// Closed star and link of a vertex, on the vertices they use.
SimplicialComplex star(const SimplicialComplex& x, const std::string& v);
SimplicialComplex link(const SimplicialComplex& x, const std::string& v);

SimplicialComplex boundary_of_simplex(int n);  // n+1 vertices
SimplicialComplex octahedron();
SimplicialComplex cycle_complex(int n);

struct SphereCheck {
    bool valid = false;
    bool validated = false;  // false when k > 2: only dimension and homology were checked
    std::string message;
};

SphereCheck check_sphere(const SimplicialComplex& x, int k);

// A vertex map between complexes.
struct SimplicialMap {
    SimplicialComplex source;
    SimplicialComplex target;
    std::vector<int> image;  // target vertex per source vertex
};

bool check_simplicial(const SimplicialMap& f);

// For every source simplex the images under both maps together span a
// target simplex.
bool straight_line_homotopy_valid(const SimplicialMap& phi, const SimplicialMap& psi);

enum class Coefficients { Integers, Mod2 };

struct HomologyReport {
    Coefficients coefficients = Coefficients::Integers;
    std::vector<long> betti;                      // reduced, degrees 0..dim
    std::vector<std::vector<mpz_class>> torsion;  // invariant factors > 1 per degree
};

HomologyReport homology(const SimplicialComplex& x, Coefficients coefficients);

// Diagonal of the Smith normal form (nonzero entries, each dividing the next).
std::vector<mpz_class> smith_diagonal(std::vector<std::vector<mpz_class>> m);
long rank_mod2(std::vector<std::vector<unsigned char>> m);

}  // namespace finecurve
