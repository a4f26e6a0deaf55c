// Finite groups as explicit multiplication tables.
#pragma once

#include "crossalg/linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace crossalg {

// Immutable; copies share the table.  Constructors in this library always put the identity at index 0.
class FiniteGroup {
public:
    FiniteGroup();  // trivial group
    // Validates the table: identity, Latin square, associativity (exhaustive).
    static FiniteGroup from_table(int n, std::vector<int> mul, std::vector<std::string> labels = {});

    int order() const { return d_->n; }
    int mul(int a, int b) const { return d_->mul[static_cast<size_t>(a) * d_->n + b]; }
    int inv(int a) const { return d_->inv[a]; }
    int identity() const { return d_->id; }
    int conj(int x, int y) const { return mul(mul(x, y), inv(x)); }  // x y x^{-1}
    int pow(int a, long k) const;
    int element_order(int a) const { return d_->orders[a]; }
    const std::vector<int>& table() const { return d_->mul; }
    std::string label(int a) const;
    const std::vector<std::string>& labels() const { return d_->labels; }
    bool is_abelian() const;
    // Greedy small generating set (largest order first, lowest index on ties).  Deterministic.
    const std::vector<int>& generators() const;
    std::vector<int> order_profile() const;  // count of elements of each order, indexed by order
    bool same_table(const FiniteGroup& o) const { return d_ == o.d_ || d_->mul == o.d_->mul; }

private:
    struct Data {
        int n = 1;
        int id = 0;
        std::vector<int> mul, inv, orders;
        std::vector<std::string> labels;
        std::vector<int> gens;
    };
    std::shared_ptr<const Data> d_;
};

struct GroupHom {
    FiniteGroup source, target;
    std::vector<int> images;

    int operator()(int x) const { return images[x]; }
    bool injective() const;
    bool surjective() const;
    std::vector<int> kernel() const;  // sorted element list
    std::vector<int> image() const;
};

// Throws ValidationError with a witness if images do not respect multiplication.
void check_hom(const GroupHom& h);
GroupHom compose(const GroupHom& g, const GroupHom& f);  // g o f
GroupHom identity_hom(const FiniteGroup& G);

struct GroupExtension {
    GroupHom kernel_hom;    // N >-> G
    GroupHom quotient_hom;  // G ->> Q
    const FiniteGroup& N() const { return kernel_hom.source; }
    const FiniteGroup& G() const { return kernel_hom.target; }
    const FiniteGroup& Q() const { return quotient_hom.target; }
    // index of x in N when x lies in the image of kernel_hom, else -1
    int kernel_preimage(int x) const;
    // a normalised set section Q -> G (s(1) = 1, smallest element of each fibre otherwise)
    std::vector<int> canonical_section() const;
};
void validate_extension(const GroupExtension& e);

// Action of `actor` on a finite carrier of size n:  table[g * n + x] = g.x
struct GroupAction {
    FiniteGroup actor;
    int carrier_size = 0;
    std::vector<int> table;
    int act(int g, int x) const { return table[static_cast<size_t>(g) * carrier_size + x]; }
};
void validate_action(const GroupAction& a);
void validate_action_by_automorphisms(const GroupAction& a, const FiniteGroup& carrier);
GroupAction trivial_action(const FiniteGroup& actor, int carrier_size);
GroupAction conjugation_action(const FiniteGroup& G);

// ---- constructions

FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int n);  // order 2n
FiniteGroup quaternion_group();     // 1,-1,i,-i,j,-j,k,-k
FiniteGroup symmetric_group(int n);
FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B);  // index a + |A| b

struct Metacyclic {
    FiniteGroup G;
    GroupExtension ext;  // C_r >-> G ->> C_s
    int r, s, t, f;
    int y() const { return 1 % (r * s); }
    int x() const { return r; }
    int elem(int i, int j) const { return ((i % r + r) % r) + r * ((j % s + s) % s); }
};
// G(r,s,t,f) = <x, y | y^r, x^s = y^f, x y x^{-1} = y^t>, element y^i x^j has index i + r j.
Metacyclic metacyclic(int r, int s, int t, int f);

struct Subgroup {
    FiniteGroup H;
    std::vector<int> embed;  // H index -> G index
    int index_of(int g) const;  // G index -> H index or -1
};
std::vector<int> subgroup_closure(const FiniteGroup& G, const std::vector<int>& gens);
Subgroup make_subgroup(const FiniteGroup& G, const std::vector<int>& elements);
bool is_normal(const FiniteGroup& G, const std::vector<int>& elements);

struct Quotient {
    FiniteGroup Q;
    std::vector<int> proj;                // G -> Q
    std::vector<int> rep;                 // Q -> smallest G element of the coset
};
Quotient quotient_group(const FiniteGroup& G, const std::vector<int>& normal_elements);

// Fibre product of a: A -> Q and b: B -> Q, as a subgroup of A x B.
Subgroup fiber_product(const GroupHom& a, const GroupHom& b);

// Extend generator images to a homomorphism, if possible.
std::optional<std::vector<int>> extend_hom(const FiniteGroup& src, const std::vector<int>& gens,
                                           const std::vector<int>& images, const FiniteGroup& tgt);

std::optional<GroupHom> find_isomorphism(const FiniteGroup& G, const FiniteGroup& H, int cap = 128);

struct AutomorphismGroup {
    FiniteGroup group;
    std::vector<std::vector<int>> perms;  // perms[0] is the identity
};
AutomorphismGroup automorphism_group(const FiniteGroup& G, int cap = 64);

// Abelian group coordinates (invariant factors) for an abelian FiniteGroup.
struct AbelianCoords {
    std::vector<i64> factors;
    std::vector<std::vector<i64>> coords;  // element -> coordinates
    std::vector<int> basis;                // element realising each unit vector
    int element(const std::vector<i64>& c) const;
    std::vector<int> lookup;               // mixed-radix code -> element
    size_t code(const std::vector<i64>& c) const;
};
AbelianCoords abelian_coords(const FiniteGroup& A);

// E = M x Q with (m,p)(m',q) = (m * p.m' * f(p,q), pq); index m + |M| q.
// f is a table Q x Q -> M (element indices), normalised.  Throws if not a 2-cocycle.
GroupExtension group_from_2cocycle(const FiniteGroup& Q, const FiniteGroup& M, const GroupAction& action,
                                   const std::vector<int>& f);
// f(p,q) = s(p) s(q) s(pq)^{-1}, read in the kernel (kernel indices).
std::vector<int> extract_2cocycle(const GroupExtension& e, const std::vector<int>& section);

}  // namespace crossalg
