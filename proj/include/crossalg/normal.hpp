// Q-normal algebras, the Teichmueller cocycle, crossed product algebras and Deuring embeddings.
#pragma once

#include "crossalg/cohomology.hpp"
#include "crossalg/rings.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crossalg {

// U(S) for a commutative S with a group acting by ring automorphisms, as a GModule.
struct UnitsModule {
    UnitsGroup units;
    AbelianCoords coords;
    GModule module;
    ZmVec vec_of(const Algebra& S, const ZmVec& unit) const;  // algebra element -> module coordinates
    ZmVec unit_of(const ZmVec& v) const;                      // module coordinates -> algebra element
};
UnitsModule units_module(const Algebra& S, const FiniteGroup& Q, const std::vector<ZmMatrix>& kappa,
                         size_t cap = 1u << 16);

// s -> s.1 from the base of A into A (n_A x n_S)
ZmMatrix base_embedding(const Algebra& A);
// the base element s with s.1 = x, if x is a base scalar
std::optional<ZmVec> as_base_element(const Algebra& A, const ZmVec& x);

// A with base S; kappa[q] acts on S (flat S coordinates), lifts[q] is a kappa[q]-semilinear
// automorphism of A with lifts[1] = id and w_p w_q w_pq^-1 inner.
struct OutRep {
    FiniteGroup Q;
    AlgebraPtr A;
    std::vector<ZmMatrix> kappa;
    std::vector<ZmMatrix> lifts;
};
// structural checks only (inner-ness is decided by teichmuller_cocycle)
void validate_outrep(const OutRep& rep);
bool is_equivariant(const OutRep& rep);  // w_p w_q = w_pq exactly
void validate_ring_group_action(const Algebra& S, const FiniteGroup& Q, const std::vector<ZmMatrix>& kappa);

struct TeichWitness {
    OutRep rep;
    std::vector<ZmVec> f;  // index p*|Q| + q: unit of A with w_p w_q = Inn(f) w_pq
    UnitsModule US;
    Cochain xi;            // 3-cocycle with values in US.module
    CohomologyGroup H3;
    ZmVec cls;
};
// xi(p,q,r) = f(p,q) f(pq,r) f(p,qr)^-1 w_p(f(q,r))^-1, the orientation used for crossed 2-fold extensions.
TeichWitness teichmuller_cocycle(const OutRep& rep, std::optional<std::uint64_t> seed = std::nullopt,
                                 size_t cap = 1u << 16);

// (S, kappa) over itself
OutRep base_rep(const AlgebraPtr& S, const FiniteGroup& Q, const std::vector<ZmMatrix>& kappa);
// w'_q = Inn(u_q) w_q for random units u_q (u_1 = 1): same Q-normal structure, different lifts
OutRep perturb_lifts(const OutRep& rep, std::uint64_t seed);

enum class NormalOp { Opposite, Matrix, Tensor };
OutRep opposite_rep(const OutRep& rep);
OutRep matrix_rep(const OutRep& rep, int size);
OutRep tensor_rep(const OutRep& a, const OutRep& b);
OutRep transform_normal(const OutRep& rep, NormalOp op, int size = 2, const OutRep* other = nullptr);
// restriction along phi: Q' -> Q
OutRep pullback_rep(const OutRep& rep, const GroupHom& phi);

// coordinates of x (x) y in tensor_product(A, B)
ZmVec tensor_elem(const Algebra& T, const Algebra& A, const Algebra& B, const ZmVec& x, const ZmVec& y);

// ---- crossed products

// v_q a = theta_q(a) v_q,  v_p v_q = phi(p,q) v_pq  (phi indexed p*|Q| + q, units of A)
struct CrossedProductData {
    AlgebraPtr A;
    FiniteGroup Q;
    std::vector<ZmMatrix> theta;
    std::vector<ZmVec> phi;
};
void validate_crossed_product_data(const CrossedProductData& d);

// K >-> Gamma ->> Q with i: K -> U(A) and theta: Gamma -> Aut(A) a morphism of crossed modules
struct CrossedProductSpec {
    AlgebraPtr A;
    GroupExtension ext;
    std::vector<ZmVec> i;         // per K element
    std::vector<ZmMatrix> theta;  // per Gamma element
};
void validate_crossed_product_spec(const CrossedProductSpec& s);
CrossedProductData data_from_spec(const CrossedProductSpec& s, const std::vector<int>& section);
// trivial K, theta an honest action of Q
CrossedProductSpec spec_from_action(const AlgebraPtr& A, const FiniteGroup& Q, const std::vector<ZmMatrix>& theta);

enum class CrossedForm { V1, V2 };
struct CrossedProduct {
    AlgebraPtr C;           // over Z/m; for v2 flat index q*n_A + a is e_a v_q
    ZmMatrix embed_A;       // n_C x n_A
    std::vector<ZmVec> v;   // v_q
    ZmMatrix lift;          // v1 only: basis representatives in A^t Gamma (index gamma*n_A + a)
};
CrossedProduct crossed_product_v2(const CrossedProductData& d);
// A^t Gamma modulo the ideal generated by k - i(k); v_q is the class of section[q]
CrossedProduct crossed_product_v1(const CrossedProductSpec& s, const std::vector<int>& section);
CrossedProduct crossed_product(const CrossedProductSpec& s, CrossedForm form);
// x -> (x v_{pi(x)}^-1) v_{pi(x)} from v1 to v2; throws unless a ring isomorphism
ZmMatrix crossed_product_isomorphism(const CrossedProductSpec& s, const std::vector<int>& section,
                                     const CrossedProduct& v1, const CrossedProduct& v2);

ModKernel centralizer(const Algebra& C, const std::vector<ZmVec>& elems);

// End_A(C) for C a v2 crossed product: the Q-fixed part of the conjugation action by the v_q, compared
// with the right multiplications f_u(b) = b u.
struct FixedEndReport {
    BigInt end_order, fixed_order, image_order, algebra_order;
    bool right_mults_fixed = false;  // every f_u is A-linear and fixed
    bool anti_hom = false;           // f_u f_u' = f_{u'u}
    bool identified() const { return right_mults_fixed && anti_hom && image_order == algebra_order && fixed_order == algebra_order; }
};
FixedEndReport fixed_endomorphisms(const CrossedProduct& C, const CrossedProductData& d);

// ---- Deuring embeddings

// units u of C with u e(a) = e(theta(a)) u for all a in A
std::optional<ZmVec> find_intertwiner(const Algebra& C, const ZmMatrix& embed, const ZmMatrix& theta,
                                      size_t cap = 1u << 16);

struct DeuringWitness {
    CrossedProductData data;
    CrossedProduct C;
    std::vector<ZmVec> chi;  // per q: unit of C normalising A and inducing kappa_q on S
    OutRep end_rep;          // equivariant structure on End_A(C) = M_|Q|(A)^op
};
DeuringWitness deuring_embedding_from_splitting(const OutRep& rep, const CrossedProductSpec& split,
                                                size_t cap = 1u << 16);
// Gamma = U(A) x Q with (u,p)(u',q) = (u w_p(u') f'(p,q), pq) when the Teichmueller class vanishes
std::optional<CrossedProductSpec> splitting_from_coboundary(const OutRep& rep, size_t cap = 1u << 12);

}  // namespace crossalg
