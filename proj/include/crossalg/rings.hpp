// Finite algebras over Z/m given by structure constants, optionally structured over a commutative base ring.
#pragma once

#include "crossalg/group.hpp"
#include "crossalg/linalg.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace crossalg {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Flat Z/m basis of size n = d*k.  When `base` is set (a commutative Z/m-algebra S of Z/m-rank d),
// flat index i*d + a stands for sigma_a * b_i, where sigma_a is the a-th flat basis element of S and
// b_0..b_{k-1} is an S-basis; S acts blockwise.  Without a base, d = 1 and the base is Z/m.
class Algebra {
public:
    i64 m = 2;
    AlgebraPtr base;
    int d = 1, k = 0;
    std::vector<std::vector<std::pair<int, i64>>> table;  // flat products, index i*n + j
    ZmVec one;
    std::string name;

    int n() const { return d * k; }
    ZmVec zero() const { return ZmVec(n(), 0); }
    ZmVec unit_vector(int i) const;
    ZmVec mul(const ZmVec& x, const ZmVec& y) const;
    ZmVec add(const ZmVec& x, const ZmVec& y) const;
    ZmVec sub(const ZmVec& x, const ZmVec& y) const;
    ZmVec neg(const ZmVec& x) const;
    ZmVec scale(const ZmVec& x, i64 c) const;
    ZmVec smul(const ZmVec& s, const ZmVec& x) const;  // base element times x
    ZmVec from_base(const ZmVec& s) const { return smul(s, one); }
    ZmVec base_one() const;                            // 1 of the base in its own coordinates
    ZmVec sbasis(int i) const;                         // b_i
    ZmVec block(const ZmVec& x, int i) const;          // base coordinate of x on b_i
    ZmVec pow(ZmVec x, i64 e) const;
    BigInt order() const;
    bool is_commutative() const;
    ZmMatrix left_mult(const ZmVec& x) const;
    ZmMatrix right_mult(const ZmVec& x) const;
    std::optional<ZmVec> inverse(const ZmVec& x) const;
    bool is_unit(const ZmVec& x) const { return inverse(x).has_value(); }
    bool is_zero(const ZmVec& x) const;
    // mixed radix enumeration (first coordinate fastest)
    size_t code(const ZmVec& x) const;
    ZmVec decode(size_t c) const;
    std::vector<ZmVec> elements(size_t cap = 1u << 16) const;
};

// Throws ValidationError naming the first failing instance (associativity / unit / base linearity).
void validate_algebra(const Algebra& A);

// ---- constructors
// dense flat constants c[(i*n + j)*n + l] over Z/m (base Z/m)
AlgebraPtr algebra_from_table(i64 m, int n, const std::vector<i64>& c, const ZmVec& one, std::string name = "");
// over a base S: b_i b_j = sum_l c[(i*k + j)*k + l] b_l with c entries elements of S; unit = sum u_l b_l
AlgebraPtr algebra_over(const AlgebraPtr& S, int k, const std::vector<ZmVec>& c, const std::vector<ZmVec>& unit,
                        std::string name = "");

struct RingSpec {
    enum Kind { ZMod, GF, GaloisRing, Product, MapRing } kind = ZMod;
    i64 m = 2;          // zmod modulus
    i64 p = 2;          // prime
    int e = 1;          // exponent (Galois ring Z/p^e)
    int degree = 1;
    std::vector<RingSpec> factors;  // product
    int points = 1;                 // map ring
};
AlgebraPtr build_ring(const RingSpec& spec);
AlgebraPtr zmod(i64 m);
AlgebraPtr gf(i64 p, int k);
AlgebraPtr galois_ring(i64 p, int e, int degree);
AlgebraPtr product_ring(const std::vector<AlgebraPtr>& rings);
AlgebraPtr map_ring(int points, const AlgebraPtr& k);
// monic polynomial (low coefficient first, leading 1 omitted) used for gf / galois_ring
std::vector<i64> ring_modulus_polynomial(i64 p, int degree);

AlgebraPtr base_algebra(const AlgebraPtr& S);  // S over itself
AlgebraPtr matrix_algebra(const AlgebraPtr& A, int size);
AlgebraPtr opposite(const AlgebraPtr& A);
AlgebraPtr tensor_product(const AlgebraPtr& A, const AlgebraPtr& B);
AlgebraPtr upper_triangular(const AlgebraPtr& S, int size);
AlgebraPtr forget_base(const AlgebraPtr& A);  // same table viewed over Z/m
// structure constants b_i b_j over the base (size k*k*k)
std::vector<ZmVec> base_constants(const Algebra& A);

// Find an R-basis of X (base Z/m) with R embedded centrally by `embed` (n_X x d_R); the result has base R
// and `change` maps old flat coordinates to new ones (new = change * old).
struct Rebased {
    AlgebraPtr algebra;
    ZmMatrix change, change_inv;
};
std::optional<Rebased> rebase(const AlgebraPtr& X, const AlgebraPtr& R, const ZmMatrix& embed, size_t cap = 1u << 16);

// ---- maps
// Z/m-linear map between flat coordinates (rows = target n, cols = source n)
ZmVec apply(const ZmMatrix& f, const ZmVec& x);
bool is_ring_hom(const Algebra& A, const Algebra& B, const ZmMatrix& f);
// f is kappa-semilinear over the base: f(s x) = kappa(s) f(x)
bool is_semilinear(const Algebra& A, const ZmMatrix& f, const ZmMatrix& kappa);
// w(s b_i) = kappa(s) img[i] extended additively: builds the flat matrix of a semilinear map
ZmMatrix semilinear_map(const Algebra& A, const ZmMatrix& kappa, const std::vector<ZmVec>& images_of_basis);
ZmMatrix inner_automorphism(const Algebra& A, const ZmVec& u);

// Greedy generating set (flat basis elements) of A as a Z/m-algebra.
std::vector<ZmVec> algebra_generators(const Algebra& A);
// Search over images of algebra_generators(A) in B (at most `cap` candidate tuples).
std::optional<ZmMatrix> find_algebra_isomorphism(const Algebra& A, const Algebra& B, size_t cap = 1u << 20);

// ---- units
struct UnitsGroup {
    FiniteGroup group;
    std::vector<ZmVec> elements;   // group index -> algebra element
    std::vector<int> index;        // algebra code -> group index or -1
    int index_of(const Algebra& A, const ZmVec& x) const { return index[A.code(x)]; }
};
UnitsGroup units_group(const Algebra& A, size_t cap = 1u << 16);

// Solutions u of alpha(a) u = u a for every a, as a Z/m-kernel; then the first invertible one
// (or a seeded random one) when the solution space has at most `cap` elements.
ModKernel conjugator_space(const Algebra& A, const ZmMatrix& alpha);
std::optional<ZmVec> find_conjugator(const Algebra& A, const ZmMatrix& alpha, size_t cap = 1u << 16,
                                     std::optional<std::uint64_t> seed = std::nullopt);
std::vector<ZmVec> kernel_elements(const ModKernel& K, int n, i64 m, size_t cap);  // reduced mod m

// ---- center / Azumaya
ModKernel center(const Algebra& A);
struct AzumayaReport {
    bool azumaya = false;
    bool eta_invertible = false;
    bool central = false;
    std::string diagnostic;
};
AzumayaReport is_azumaya(const Algebra& A);

// ---- group actions on rings and Galois extensions
struct RingAction {
    FiniteGroup N;
    std::vector<ZmMatrix> maps;  // one per element, on flat coordinates
};
void validate_ring_action(const Algebra& T, const RingAction& act);
ModKernel fixed_points(const Algebra& T, const RingAction& act);

// maximal ideal {x : x e nilpotent} for each primitive idempotent e (finite commutative T)
std::vector<ZmVec> primitive_idempotents(const Algebra& T, size_t cap = 1u << 16);
bool is_nilpotent(const Algebra& T, const ZmVec& x);

struct GaloisReport {
    bool fixed_ring_ok = false;
    bool free = false;
    bool crit_i = false, crit_iii = false, crit_iv = false;
    bool crit_ii_spot = false;  // spot check only
    std::vector<std::string> notes;
    bool consistent() const { return crit_i == crit_iii && crit_iii == crit_iv; }
};
// S embedded in commutative T by `embed` (n_T x n_S); N acts on T fixing S.
GaloisReport galois_check(const AlgebraPtr& T, const AlgebraPtr& S, const ZmMatrix& embed, const RingAction& act);

struct GaloisData {
    AlgebraPtr T, S;
    ZmMatrix embed;
    RingAction action;
};
// P = {0..points-1} with N acting by perm[g*points + x]; must be free.
GaloisData galois_from_free_action(const FiniteGroup& N, int points, const std::vector<int>& perm, const AlgebraPtr& k);
// N acting on map_ring(points, k) by translation of points (need not be free); S = fixed ring.
GaloisData map_ring_action(const FiniteGroup& N, int points, const std::vector<int>& perm, const AlgebraPtr& k);
// Frobenius-type automorphism of gf / galois_ring: x -> x^p on the polynomial generator
ZmMatrix frobenius(const Algebra& T, i64 p);

}  // namespace crossalg
