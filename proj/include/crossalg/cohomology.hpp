// Group cohomology of finite groups with coefficients in finite modules (normalised bar complex).
#pragma once

#include "crossalg/group.hpp"
#include "crossalg/linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace crossalg {

// A finite abelian group  Z/d_1 x ... x Z/d_r  (d_i >= 2) with a left action of a finite group
// by integer matrices on the coordinates:  (g.m)_i = sum_j action[g](i,j) m_j  mod d_i.
// Matrix entries are stored mod the exponent.
struct GModule {
    std::vector<i64> factors;
    std::vector<ZmMatrix> action;  // one per group element

    int rank() const { return static_cast<int>(factors.size()); }
    i64 exponent() const;
    BigInt order() const;
    ZmVec act(int g, const ZmVec& m) const;
    ZmVec reduce(ZmVec m) const;
    ZmVec add(const ZmVec& a, const ZmVec& b) const;
    ZmVec neg(const ZmVec& a) const;
    bool is_trivial() const;
    std::vector<ZmVec> elements() const;  // all elements, mixed radix (first coordinate fastest)
};

GModule trivial_module(const FiniteGroup& G, std::vector<i64> factors);
// Z/l on which element g acts by u^{k(g)} where k: G -> Z/s is given per element.
GModule cyclic_twisted_module(const FiniteGroup& G, i64 l, const std::vector<i64>& exponent_of, i64 u);
void validate_module(const FiniteGroup& G, const GModule& M);

// An abelian FiniteGroup with a G-action by automorphisms, realised as a GModule.
struct RealizedModule {
    FiniteGroup A;
    AbelianCoords coords;
    GModule module;
    ZmVec to_vec(int a) const { return coords.coords[a]; }
    int to_elem(const ZmVec& v) const { return coords.element(v); }
};
RealizedModule realize_module(const FiniteGroup& G, const FiniteGroup& A, const GroupAction& action);

// n-cochain: full table over G^n (tuple (g_1..g_n) has index ((g_1 q + g_2) q + ...)) of module vectors.
struct Cochain {
    int degree = 0;
    int group_order = 1;
    int rank = 0;
    std::vector<i64> values;

    static Cochain zero(int degree, int group_order, int rank);
    size_t tuple_index(const std::vector<int>& g) const;
    ZmVec at(const std::vector<int>& g) const;
    ZmVec at_index(size_t t) const;
    void set(const std::vector<int>& g, const ZmVec& v);
    void set_index(size_t t, const ZmVec& v);
    size_t tuple_count() const;
    bool operator==(const Cochain&) const = default;
};

Cochain coboundary(const FiniteGroup& G, const GModule& M, const Cochain& c);
// first tuple (n+1 arguments) where the cocycle identity fails, if any
std::optional<std::vector<int>> cocycle_violation(const FiniteGroup& G, const GModule& M, const Cochain& z);
bool is_normalized(const FiniteGroup& G, const Cochain& c);
Cochain add_cochains(const GModule& M, const Cochain& a, const Cochain& b);
Cochain scale_cochain(const GModule& M, const Cochain& a, i64 k);

struct CohomologyOptions {
    i64 max_matrix_entries = 60'000'000;  // dense coboundary matrix budget
    int max_degree = 4;
};

class CohomologyGroup {
public:
    int degree() const;
    const std::vector<i64>& invariant_factors() const;
    BigInt order() const;
    // coordinates (entry k reduced mod invariant_factors()[k]); throws ValidationError if z is not a
    // normalised cocycle (message names the first violated instance)
    ZmVec class_of(const Cochain& z) const;
    Cochain representative(const ZmVec& coords) const;
    std::vector<ZmVec> all_classes(size_t cap = 1'000'000) const;
    ZmVec add(const ZmVec& a, const ZmVec& b) const;
    ZmVec scale(const ZmVec& a, i64 k) const;
    bool is_zero(const ZmVec& a) const;
    i64 class_order(const ZmVec& a) const;
    const FiniteGroup& group() const;
    const GModule& module() const;
    std::string describe() const { return factors_to_string(invariant_factors()); }

    struct Impl;
    std::shared_ptr<const Impl> impl;
};

CohomologyGroup cohomology(const FiniteGroup& G, const GModule& M, int n, const CohomologyOptions& opt = {});

// Pull back along phi: G' -> G and push along mu: M -> M' (matrix rank(M') x rank(M)); then class_of.
// Checks compatibility  mu(phi(g').m) = g'.mu(m).
struct ModuleMap {
    ZmMatrix matrix;  // entries mod exponent of target; column j = image of j-th generator
};
void check_module_map(const GModule& M, const GModule& Mp, const ModuleMap& mu);
Cochain pullback_cochain(const FiniteGroup& Gp, const GroupHom& phi, const GModule& M, const GModule& Mp,
                         const ModuleMap& mu, const Cochain& z);
ZmVec map_on_cohomology(const GroupHom& phi, const ModuleMap& mu, const CohomologyGroup& source,
                        const CohomologyGroup& target, const ZmVec& cls);
ModuleMap identity_module_map(const GModule& M);

// ---- cyclic groups

// Value of the periodic-resolution cochain attached to z, for G cyclic generated by x:
//   n = 1: z(x);   n = 2: sum_{i=1}^{s-1} z(x^i, x);   n = 3: sum_{i=1}^{s-1} z(x, x^i, x).
ZmVec periodic_value(const FiniteGroup& G, int x, const GModule& M, const Cochain& z);

// H^n(C_s, M) from the 2-periodic complex: odd n -> ker N / im(x-1), even n >= 2 -> ker(x-1) / im N.
class PeriodicCohomology {
public:
    PeriodicCohomology(const FiniteGroup& G, int x, const GModule& M, int n);
    const std::vector<i64>& invariant_factors() const { return factors_; }
    ZmVec class_of_value(const ZmVec& m) const;  // m must lie in the relevant kernel
    ZmVec class_of(const Cochain& z) const;      // via periodic_value
    bool in_kernel(const ZmVec& m) const;
    int degree() const { return n_; }

private:
    struct Core;
    std::shared_ptr<const Core> core_;
    std::vector<i64> factors_;
    FiniteGroup G_;
    GModule M_;
    int x_, n_;
};

// z(x^i, x^j, x^k) = (sum_{p<i} u^p) * m * [j + k >= s] on Z/l where x acts by u.
Cochain cyclic_cup_cocycle(int s, i64 l, i64 u, i64 m);
// The trivial-module case with m = l / gcd(l, s): class of exact order gcd(l, s).
Cochain cyclic_reference_generator(int s, i64 l);

}  // namespace crossalg
