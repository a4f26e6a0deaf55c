#include "crossalg/normal.hpp"

#include "crossalg/crossed.hpp"
#include "crossalg/errors.hpp"

#include <random>
#include <set>

namespace crossalg {

// ------------------------------------------------------------------ units as a module

ZmVec UnitsModule::vec_of(const Algebra& S, const ZmVec& unit) const {
    int idx = units.index_of(S, unit);
    if (idx < 0) throw ValidationError("not a unit");
    return coords.coords[idx];
}

ZmVec UnitsModule::unit_of(const ZmVec& v) const { return units.elements[coords.element(v)]; }

UnitsModule units_module(const Algebra& S, const FiniteGroup& Q, const std::vector<ZmMatrix>& kappa, size_t cap) {
    UnitsModule U;
    U.units = units_group(S, cap);
    int n = U.units.group.order();
    GroupAction act{Q, n, std::vector<int>(static_cast<size_t>(Q.order()) * n)};
    for (int q = 0; q < Q.order(); ++q)
        for (int u = 0; u < n; ++u) {
            int j = U.units.index_of(S, crossalg::apply(kappa[q], U.units.elements[u]));
            if (j < 0) throw ValidationError("group does not act on the units");
            act.table[static_cast<size_t>(q) * n + u] = j;
        }
    U.coords = abelian_coords(U.units.group);
    U.module = module_from_action(Q, U.units.group, U.coords, act);
    return U;
}

ZmMatrix base_embedding(const Algebra& A) {
    int d = A.base ? A.base->n() : 1;
    ZmMatrix E(A.m, A.n(), d);
    for (int a = 0; a < d; ++a) E.set_col(a, A.from_base(A.base ? A.base->unit_vector(a) : ZmVec{1 % A.m}));
    return E;
}

std::optional<ZmVec> as_base_element(const Algebra& A, const ZmVec& x) { return mod_solve(base_embedding(A), x); }

// ------------------------------------------------------------------ Q-normal structures

void validate_ring_group_action(const Algebra& S, const FiniteGroup& Q, const std::vector<ZmMatrix>& kappa) {
    RingAction act{Q, kappa};
    validate_ring_action(S, act);
}

void validate_outrep(const OutRep& rep) {
    const Algebra& A = *rep.A;
    int q = rep.Q.order();
    if (!A.base) throw ValidationError("Q-normal algebra needs a base ring");
    if (static_cast<int>(rep.kappa.size()) != q || static_cast<int>(rep.lifts.size()) != q)
        throw ValidationError("Q-normal structure: one lift per group element");
    validate_ring_group_action(*A.base, rep.Q, rep.kappa);
    if (rep.lifts[rep.Q.identity()] != ZmMatrix::identity(A.m, A.n())) throw ValidationError("lift of 1 is not the identity");
    for (int p = 0; p < q; ++p) {
        const ZmMatrix& w = rep.lifts[p];
        if (!is_ring_hom(A, A, w) || !invertible_mod(w))
            throw ValidationError("lift of " + rep.Q.label(p) + " is not a ring automorphism");
        if (!is_semilinear(A, w, rep.kappa[p]))
            throw ValidationError("lift of " + rep.Q.label(p) + " does not restrict to the action on the base");
    }
}

bool is_equivariant(const OutRep& rep) {
    for (int p = 0; p < rep.Q.order(); ++p)
        for (int q = 0; q < rep.Q.order(); ++q)
            if (mul(rep.lifts[p], rep.lifts[q]) != rep.lifts[rep.Q.mul(p, q)]) return false;
    return true;
}

TeichWitness teichmuller_cocycle(const OutRep& rep, std::optional<std::uint64_t> seed, size_t cap) {
    validate_outrep(rep);
    const Algebra& A = *rep.A;
    const FiniteGroup& Q = rep.Q;
    int nq = Q.order();
    TeichWitness W;
    W.rep = rep;
    W.US = units_module(*A.base, Q, rep.kappa, cap);
    std::mt19937_64 rng(seed.value_or(0));
    std::vector<ZmMatrix> winv(nq);
    for (int p = 0; p < nq; ++p) winv[p] = inverse_mod(rep.lifts[p]);
    W.f.assign(static_cast<size_t>(nq) * nq, A.one);
    std::vector<ZmVec> finv(W.f.size(), A.one);
    for (int p = 0; p < nq; ++p)
        for (int q = 0; q < nq; ++q) {
            if (p == Q.identity() || q == Q.identity()) continue;
            ZmMatrix alpha = mul(mul(rep.lifts[p], rep.lifts[q]), winv[Q.mul(p, q)]);
            std::optional<std::uint64_t> s;
            if (seed) s = rng();
            auto f = find_conjugator(A, alpha, cap, s);
            if (!f) throw ValidationError("not Q-normal: w_" + Q.label(p) + " w_" + Q.label(q) + " w_" + Q.label(Q.mul(p, q)) +
                                          "^-1 is not inner");
            W.f[p * nq + q] = *f;
            finv[p * nq + q] = *A.inverse(*f);
        }
    int r = W.US.module.rank();
    W.xi = Cochain::zero(3, nq, r);
    for (int p = 0; p < nq; ++p)
        for (int q = 0; q < nq; ++q)
            for (int t = 0; t < nq; ++t) {
                int pq = Q.mul(p, q), qt = Q.mul(q, t);
                ZmVec x = A.mul(A.mul(W.f[p * nq + q], W.f[pq * nq + t]), finv[p * nq + qt]);
                ZmVec wf = crossalg::apply(rep.lifts[p], W.f[q * nq + t]);
                x = A.mul(x, *A.inverse(wf));
                auto s = as_base_element(A, x);
                if (!s) throw ValidationError("Teichmueller value at (" + Q.label(p) + "," + Q.label(q) + "," + Q.label(t) +
                                              ") is not central");
                W.xi.set({p, q, t}, W.US.vec_of(*A.base, *s));
            }
    W.H3 = cohomology(Q, W.US.module, 3);
    W.cls = W.H3.class_of(W.xi);
    return W;
}

OutRep base_rep(const AlgebraPtr& S, const FiniteGroup& Q, const std::vector<ZmMatrix>& kappa) {
    OutRep r{Q, base_algebra(S), kappa, kappa};
    validate_outrep(r);
    return r;
}

OutRep perturb_lifts(const OutRep& rep, std::uint64_t seed) {
    OutRep r = rep;
    const Algebra& A = *rep.A;
    std::mt19937_64 rng(seed);
    for (int q = 0; q < rep.Q.order(); ++q) {
        if (q == rep.Q.identity()) continue;
        for (int tries = 0; tries < 10000; ++tries) {
            ZmVec u(A.n());
            for (auto& x : u) x = static_cast<i64>(rng() % static_cast<std::uint64_t>(A.m));
            if (A.is_unit(u)) {
                r.lifts[q] = mul(inner_automorphism(A, u), rep.lifts[q]);
                break;
            }
        }
    }
    return r;
}

OutRep opposite_rep(const OutRep& rep) {
    OutRep r = rep;
    r.A = opposite(rep.A);
    return r;
}

OutRep matrix_rep(const OutRep& rep, int size) {
    OutRep r = rep;
    r.A = matrix_algebra(rep.A, size);
    int nA = rep.A->n(), N = size * size;
    for (int q = 0; q < rep.Q.order(); ++q) {
        ZmMatrix W(rep.A->m, N * nA, N * nA);
        for (int b = 0; b < N; ++b)
            for (int i = 0; i < nA; ++i)
                for (int j = 0; j < nA; ++j) W(b * nA + i, b * nA + j) = rep.lifts[q](i, j);
        r.lifts[q] = W;
    }
    validate_outrep(r);
    return r;
}

ZmVec tensor_elem(const Algebra& T, const Algebra& A, const Algebra& B, const ZmVec& x, const ZmVec& y) {
    ZmVec out(T.n(), 0);
    for (int i = 0; i < A.k; ++i)
        for (int j = 0; j < B.k; ++j) {
            ZmVec xi = A.block(x, i), yj = B.block(y, j);
            ZmVec s = A.base ? A.base->mul(xi, yj) : ZmVec{xi[0] * yj[0] % A.m};
            for (int t = 0; t < T.d; ++t) out[(i * B.k + j) * T.d + t] = s[t];
        }
    return out;
}

OutRep tensor_rep(const OutRep& a, const OutRep& b) {
    if (!a.Q.same_table(b.Q) || a.kappa != b.kappa) throw ValidationError("tensor of Q-normal algebras: base data differ");
    OutRep r = a;
    r.A = tensor_product(a.A, b.A);
    const Algebra &T = *r.A, &A = *a.A, &B = *b.A;
    for (int q = 0; q < a.Q.order(); ++q) {
        std::vector<ZmVec> img;
        for (int i = 0; i < A.k; ++i)
            for (int j = 0; j < B.k; ++j)
                img.push_back(tensor_elem(T, A, B, crossalg::apply(a.lifts[q], A.sbasis(i)), crossalg::apply(b.lifts[q], B.sbasis(j))));
        r.lifts[q] = semilinear_map(T, a.kappa[q], img);
    }
    validate_outrep(r);
    return r;
}

OutRep transform_normal(const OutRep& rep, NormalOp op, int size, const OutRep* other) {
    switch (op) {
        case NormalOp::Opposite: return opposite_rep(rep);
        case NormalOp::Matrix: return matrix_rep(rep, size);
        case NormalOp::Tensor:
            if (!other) throw ValidationError("tensor needs a second Q-normal algebra");
            return tensor_rep(rep, *other);
    }
    throw ValidationError("unknown operation");
}

OutRep pullback_rep(const OutRep& rep, const GroupHom& phi) {
    check_hom(phi);
    OutRep r;
    r.Q = phi.source;
    r.A = rep.A;
    for (int q = 0; q < r.Q.order(); ++q) {
        r.kappa.push_back(rep.kappa[phi(q)]);
        r.lifts.push_back(rep.lifts[phi(q)]);
    }
    validate_outrep(r);
    return r;
}

// ------------------------------------------------------------------ crossed products

void validate_crossed_product_data(const CrossedProductData& d) {
    const Algebra& A = *d.A;
    const FiniteGroup& Q = d.Q;
    int nq = Q.order();
    if (static_cast<int>(d.theta.size()) != nq || static_cast<int>(d.phi.size()) != nq * nq)
        throw ValidationError("crossed product data: table sizes");
    int e = Q.identity();
    if (d.theta[e] != ZmMatrix::identity(A.m, A.n())) throw ValidationError("crossed product data: theta(1) != id");
    for (int p = 0; p < nq; ++p) {
        if (!is_ring_hom(A, A, d.theta[p]) || !invertible_mod(d.theta[p]))
            throw ValidationError("crossed product data: theta(" + Q.label(p) + ") is not an automorphism");
        if (d.phi[p * nq + e] != A.one || d.phi[e * nq + p] != A.one)
            throw ValidationError("crossed product data: phi is not normalised at " + Q.label(p));
    }
    for (int p = 0; p < nq; ++p)
        for (int q = 0; q < nq; ++q) {
            const ZmVec& f = d.phi[p * nq + q];
            if (!A.is_unit(f)) throw ValidationError("crossed product data: phi(" + Q.label(p) + "," + Q.label(q) + ") is not a unit");
            if (mul(d.theta[p], d.theta[q]) != mul(inner_automorphism(A, f), d.theta[Q.mul(p, q)]))
                throw ValidationError("crossed product data: theta_p theta_q != Inn(phi) theta_pq at (" + Q.label(p) + "," +
                                      Q.label(q) + ")");
        }
    for (int p = 0; p < nq; ++p)
        for (int q = 0; q < nq; ++q)
            for (int r = 0; r < nq; ++r) {
                int pq = Q.mul(p, q), qr = Q.mul(q, r);
                ZmVec lhs = A.mul(d.phi[p * nq + q], d.phi[pq * nq + r]);
                ZmVec rhs = A.mul(crossalg::apply(d.theta[p], d.phi[q * nq + r]), d.phi[p * nq + qr]);
                if (lhs != rhs)
                    throw ValidationError("invalid 2-cocycle phi: associativity fails at (" + Q.label(p) + "," + Q.label(q) +
                                          "," + Q.label(r) + ")");
            }
}

void validate_crossed_product_spec(const CrossedProductSpec& s) {
    validate_extension(s.ext);
    const Algebra& A = *s.A;
    const FiniteGroup &K = s.ext.N(), &G = s.ext.G();
    if (static_cast<int>(s.i.size()) != K.order() || static_cast<int>(s.theta.size()) != G.order())
        throw ValidationError("crossed product spec: table sizes");
    std::set<ZmVec> seen;
    for (int k = 0; k < K.order(); ++k) {
        if (!A.is_unit(s.i[k])) throw ValidationError("crossed product spec: i(" + K.label(k) + ") is not a unit");
        seen.insert(s.i[k]);
        for (int l = 0; l < K.order(); ++l)
            if (A.mul(s.i[k], s.i[l]) != s.i[K.mul(k, l)]) throw ValidationError("crossed product spec: i is not a homomorphism");
    }
    if (static_cast<int>(seen.size()) != K.order()) throw ValidationError("crossed product spec: i is not injective");
    for (int g = 0; g < G.order(); ++g) {
        if (!is_ring_hom(A, A, s.theta[g]) || !invertible_mod(s.theta[g]))
            throw ValidationError("crossed product spec: theta(" + G.label(g) + ") is not an automorphism");
        for (int h = 0; h < G.order(); ++h)
            if (mul(s.theta[g], s.theta[h]) != s.theta[G.mul(g, h)])
                throw ValidationError("crossed product spec: theta is not a homomorphism at (" + G.label(g) + "," + G.label(h) + ")");
    }
    for (int k = 0; k < K.order(); ++k) {
        int gk = s.ext.kernel_hom(k);
        if (s.theta[gk] != inner_automorphism(A, s.i[k]))
            throw ValidationError("crossed product spec: theta(" + K.label(k) + ") is not conjugation by i(k)");
        for (int g = 0; g < G.order(); ++g) {
            int c = s.ext.kernel_preimage(G.conj(g, gk));
            if (s.i[c] != crossalg::apply(s.theta[g], s.i[k]))
                throw ValidationError("crossed product spec: i is not equivariant at (" + G.label(g) + "," + K.label(k) + ")");
        }
    }
}

CrossedProductData data_from_spec(const CrossedProductSpec& s, const std::vector<int>& section) {
    CrossedProductData d;
    d.A = s.A;
    d.Q = s.ext.Q();
    const FiniteGroup& G = s.ext.G();
    int nq = d.Q.order();
    for (int q = 0; q < nq; ++q) d.theta.push_back(s.theta[section[q]]);
    for (int p = 0; p < nq; ++p)
        for (int q = 0; q < nq; ++q) {
            int x = G.mul(G.mul(section[p], section[q]), G.inv(section[d.Q.mul(p, q)]));
            int k = s.ext.kernel_preimage(x);
            if (k < 0) throw ValidationError("section is not a section");
            d.phi.push_back(s.i[k]);
        }
    validate_crossed_product_data(d);
    return d;
}

CrossedProductSpec spec_from_action(const AlgebraPtr& A, const FiniteGroup& Q, const std::vector<ZmMatrix>& theta) {
    FiniteGroup one;
    CrossedProductSpec s;
    s.A = A;
    s.ext.kernel_hom = GroupHom{one, Q, {Q.identity()}};
    s.ext.quotient_hom = identity_hom(Q);
    s.i = {A->one};
    s.theta = theta;
    validate_crossed_product_spec(s);
    return s;
}

CrossedProduct crossed_product_v2(const CrossedProductData& d) {
    validate_crossed_product_data(d);
    const Algebra& A = *d.A;
    const FiniteGroup& Q = d.Q;
    int nq = Q.order(), nA = A.n(), n = nq * nA;
    std::vector<i64> c(static_cast<size_t>(n) * n * n, 0);
    for (int p = 0; p < nq; ++p)
        for (int a = 0; a < nA; ++a)
            for (int q = 0; q < nq; ++q)
                for (int b = 0; b < nA; ++b) {
                    ZmVec x = A.mul(A.mul(A.unit_vector(a), d.theta[p].col(b)), d.phi[p * nq + q]);
                    int pq = Q.mul(p, q);
                    size_t base = (static_cast<size_t>(p * nA + a) * n + (q * nA + b)) * n;
                    for (int l = 0; l < nA; ++l) c[base + pq * nA + l] = x[l];
                }
    ZmVec one(n, 0);
    for (int l = 0; l < nA; ++l) one[Q.identity() * nA + l] = A.one[l];
    CrossedProduct out;
    out.C = algebra_from_table(A.m, n, c, one, "(" + A.name + ", Q, phi, theta)");
    out.embed_A = ZmMatrix(A.m, n, nA);
    for (int a = 0; a < nA; ++a) out.embed_A(Q.identity() * nA + a, a) = 1 % A.m;
    for (int q = 0; q < nq; ++q) {
        ZmVec v(n, 0);
        for (int l = 0; l < nA; ++l) v[q * nA + l] = A.one[l];
        out.v.push_back(v);
    }
    return out;
}

namespace {

// product in A^t Gamma, index gamma*n_A + a
ZmVec twisted_mul(const Algebra& A, const FiniteGroup& G, const std::vector<ZmMatrix>& theta, const ZmVec& x, const ZmVec& y) {
    int nA = A.n(), ng = G.order();
    ZmVec out(x.size(), 0);
    for (int g = 0; g < ng; ++g) {
        ZmVec xg(x.begin() + g * nA, x.begin() + (g + 1) * nA);
        if (A.is_zero(xg)) continue;
        for (int h = 0; h < ng; ++h) {
            ZmVec yh(y.begin() + h * nA, y.begin() + (h + 1) * nA);
            if (A.is_zero(yh)) continue;
            ZmVec p = A.mul(xg, crossalg::apply(theta[g], yh));
            int gh = G.mul(g, h);
            for (int l = 0; l < nA; ++l) out[gh * nA + l] = (out[gh * nA + l] + p[l]) % A.m;
        }
    }
    return out;
}

}  // namespace

CrossedProduct crossed_product_v1(const CrossedProductSpec& s, const std::vector<int>& section) {
    validate_crossed_product_spec(s);
    const Algebra& A = *s.A;
    const FiniteGroup &K = s.ext.N(), &G = s.ext.G();
    int nA = A.n(), ng = G.order(), D = nA * ng;
    const auto& kg = K.generators();
    // left A-span of k.gamma - i(k) gamma, k over generators of K (enough: see the ideal argument in the notes)
    ZmMatrix rel(A.m, D, nA * static_cast<int>(kg.size()) * ng);
    int col = 0;
    for (int k : kg) {
        int gk = s.ext.kernel_hom(k);
        for (int g = 0; g < ng; ++g)
            for (int a = 0; a < nA; ++a, ++col) {
                int kgm = G.mul(gk, g);
                rel(kgm * nA + a, col) = (rel(kgm * nA + a, col) + 1) % A.m;
                ZmVec ai = A.mul(A.unit_vector(a), s.i[k]);
                for (int l = 0; l < nA; ++l) rel(g * nA + l, col) = mod_norm(rel(g * nA + l, col) - ai[l], A.m);
            }
    }
    ModQuotient Qt = mod_quotient(rel);
    int n = static_cast<int>(Qt.factors.size());
    for (i64 f : Qt.factors)
        if (f != A.m) throw ValidationError("crossed product quotient is not free");
    if (n != nA * s.ext.Q().order()) throw ValidationError("crossed product quotient has the wrong rank");
    CrossedProduct out;
    out.lift = ZmMatrix(A.m, D, n);
    for (int j = 0; j < n; ++j) {
        ZmVec e(n, 0);
        e[j] = 1;
        out.lift.set_col(j, Qt.lift(e));
    }
    std::vector<i64> c(static_cast<size_t>(n) * n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ZmVec p = Qt.coords(twisted_mul(A, G, s.theta, out.lift.col(i), out.lift.col(j)));
            for (int l = 0; l < n; ++l) c[(static_cast<size_t>(i) * n + j) * n + l] = p[l];
        }
    auto elem = [&](int g, const ZmVec& a) {
        ZmVec x(D, 0);
        for (int l = 0; l < nA; ++l) x[g * nA + l] = a[l];
        return Qt.coords(x);
    };
    out.C = algebra_from_table(A.m, n, c, elem(G.identity(), A.one), "(" + A.name + ", Q, e, theta)");
    out.embed_A = ZmMatrix(A.m, n, nA);
    for (int a = 0; a < nA; ++a) out.embed_A.set_col(a, elem(G.identity(), A.unit_vector(a)));
    for (int q = 0; q < s.ext.Q().order(); ++q) out.v.push_back(elem(section[q], A.one));
    return out;
}

CrossedProduct crossed_product(const CrossedProductSpec& s, CrossedForm form) {
    auto section = s.ext.canonical_section();
    if (form == CrossedForm::V1) return crossed_product_v1(s, section);
    return crossed_product_v2(data_from_spec(s, section));
}

ZmMatrix crossed_product_isomorphism(const CrossedProductSpec& s, const std::vector<int>& section, const CrossedProduct& v1,
                                     const CrossedProduct& v2) {
    const Algebra& A = *s.A;
    const FiniteGroup& G = s.ext.G();
    int nA = A.n(), n = v1.C->n();
    ZmMatrix F(A.m, v2.C->n(), n);
    for (int j = 0; j < n; ++j) {
        ZmVec x = v1.lift.col(j), img(v2.C->n(), 0);
        for (int g = 0; g < G.order(); ++g) {
            ZmVec a(x.begin() + g * nA, x.begin() + (g + 1) * nA);
            if (A.is_zero(a)) continue;
            int q = s.ext.quotient_hom(g);
            int k = s.ext.kernel_preimage(G.mul(g, G.inv(section[q])));
            ZmVec b = A.mul(a, s.i[k]);
            for (int l = 0; l < nA; ++l) img[q * nA + l] = (img[q * nA + l] + b[l]) % A.m;
        }
        F.set_col(j, img);
    }
    if (!is_ring_hom(*v1.C, *v2.C, F)) throw ValidationError("crossed product map is not multiplicative");
    if (!invertible_mod(F)) throw ValidationError("crossed product map is not bijective");
    return F;
}

ModKernel centralizer(const Algebra& C, const std::vector<ZmVec>& elems) {
    int n = C.n();
    ZmMatrix M(C.m, n * static_cast<int>(elems.size()), n);
    for (size_t e = 0; e < elems.size(); ++e) {
        ZmMatrix L = C.left_mult(elems[e]), R = C.right_mult(elems[e]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(static_cast<int>(e) * n + i, j) = mod_norm(R(i, j) - L(i, j), C.m);
    }
    return mod_kernel(M);
}

FixedEndReport fixed_endomorphisms(const CrossedProduct& cp, const CrossedProductData& d) {
    const Algebra& C = *cp.C;
    int n = C.n(), nA = d.A->n();
    i64 m = C.m;
    FixedEndReport rep;
    // variable F(i,j) at i*n + j; condition L F - F L = 0 for each listed element
    auto conditions = [&](const std::vector<ZmVec>& elems) {
        ZmMatrix M(m, static_cast<int>(elems.size()) * n * n, n * n);
        for (size_t e = 0; e < elems.size(); ++e) {
            ZmMatrix L = C.left_mult(elems[e]);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    int row = (static_cast<int>(e) * n + i) * n + j;
                    for (int k = 0; k < n; ++k) {
                        M(row, k * n + j) = mod_norm(M(row, k * n + j) + L(i, k), m);  // (L F)(i,j)
                        M(row, i * n + k) = mod_norm(M(row, i * n + k) - L(k, j), m);  // (F L)(i,j)
                    }
                }
        }
        return M;
    };
    std::vector<ZmVec> Aelems, all;
    for (int a = 0; a < nA; ++a) Aelems.push_back(cp.embed_A.col(a));
    all = Aelems;
    for (auto& v : cp.v) all.push_back(v);
    rep.end_order = mod_kernel(conditions(Aelems)).size();
    ZmMatrix fixc = conditions(all);
    rep.fixed_order = mod_kernel(fixc).size();
    rep.algebra_order = C.order();
    ZmMatrix img(m, n * n, n);
    rep.right_mults_fixed = true;
    for (int u = 0; u < n; ++u) {
        ZmMatrix R = C.right_mult(C.unit_vector(u));
        ZmVec flat(R.a.begin(), R.a.end());
        img.set_col(u, flat);
        if (!C.is_zero(mul(fixc, flat))) rep.right_mults_fixed = false;
    }
    rep.image_order = span_order(img);
    rep.anti_hom = true;
    for (int u = 0; u < n && rep.anti_hom; ++u)
        for (int w = 0; w < n; ++w) {
            ZmMatrix lhs = mul(C.right_mult(C.unit_vector(u)), C.right_mult(C.unit_vector(w)));
            if (lhs != C.right_mult(C.mul(C.unit_vector(w), C.unit_vector(u)))) {
                rep.anti_hom = false;
                break;
            }
        }
    return rep;
}

// ------------------------------------------------------------------ Deuring embeddings

std::optional<ZmVec> find_intertwiner(const Algebra& C, const ZmMatrix& embed, const ZmMatrix& theta, size_t cap) {
    int n = C.n(), na = embed.cols;
    ZmMatrix M(C.m, n * na, n);
    for (int a = 0; a < na; ++a) {
        ZmMatrix R = C.right_mult(embed.col(a));
        ZmMatrix L = C.left_mult(mul(embed, theta.col(a)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(a * n + i, j) = mod_norm(R(i, j) - L(i, j), C.m);
    }
    for (auto& u : kernel_elements(mod_kernel(M), n, C.m, cap))
        if (C.is_unit(u)) return u;
    return std::nullopt;
}

namespace {

// End_A(C) = M_|Q|(A)^op, f <-> (a_pr) with f(v_p) = sum_r a_pr v_r; tau(x) f = L_x f L_x^-1
ZmMatrix conjugate_endomorphisms(const Algebra& E, const CrossedProduct& cp, const Algebra& A, int nq, const ZmVec& x) {
    const Algebra& C = *cp.C;
    int n = E.n(), nA = A.n();
    ZmVec xinv = *C.inverse(x);
    std::vector<ZmVec> y;
    for (int p = 0; p < nq; ++p) y.push_back(C.mul(xinv, cp.v[p]));
    ZmMatrix T(E.m, n, n);
    for (int col = 0; col < n; ++col) {
        ZmVec f = E.unit_vector(col), g(n, 0);
        auto entry = [&](int r, int s) { return ZmVec(f.begin() + (r * nq + s) * nA, f.begin() + (r * nq + s + 1) * nA); };
        for (int p = 0; p < nq; ++p) {
            ZmVec h(C.n(), 0);
            for (int r = 0; r < nq; ++r) {
                ZmVec cr(y[p].begin() + r * nA, y[p].begin() + (r + 1) * nA);
                if (A.is_zero(cr)) continue;
                for (int s = 0; s < nq; ++s) {
                    ZmVec prod = A.mul(cr, entry(r, s));
                    for (int l = 0; l < nA; ++l) h[s * nA + l] = (h[s * nA + l] + prod[l]) % A.m;
                }
            }
            ZmVec z = C.mul(x, h);
            for (int s = 0; s < nq; ++s)
                for (int l = 0; l < nA; ++l) g[(p * nq + s) * nA + l] = z[s * nA + l];
        }
        T.set_col(col, g);
    }
    return T;
}

}  // namespace

DeuringWitness deuring_embedding_from_splitting(const OutRep& rep, const CrossedProductSpec& split, size_t cap) {
    validate_outrep(rep);
    validate_crossed_product_spec(split);
    const Algebra& A = *rep.A;
    const FiniteGroup& Q = rep.Q;
    if (split.A->table != A.table || split.A->one != A.one) throw ValidationError("splitting: algebra differs from the Q-normal algebra");
    if (!split.ext.Q().same_table(Q)) throw ValidationError("splitting: quotient group differs");
    int nq = Q.order(), nA = A.n();
    auto section = split.ext.canonical_section();
    DeuringWitness W;
    W.data = data_from_spec(split, section);
    W.data.A = rep.A;
    for (int q = 0; q < nq; ++q) {
        ZmMatrix d = mul(W.data.theta[q], inverse_mod(rep.lifts[q]));
        if (!find_conjugator(A, d, cap))
            throw ValidationError("splitting inconsistent with the Q-normal structure at " + Q.label(q));
    }
    W.C = crossed_product_v2(W.data);
    const Algebra& C = *W.C.C;
    ZmMatrix EA = W.C.embed_A;
    for (int q = 0; q < nq; ++q) {
        ZmVec v = W.C.v[q], vinv = *C.inverse(v);
        for (int a = 0; a < nA; ++a) {
            ZmVec conj = C.mul(C.mul(v, EA.col(a)), vinv);
            if (conj != mul(EA, W.data.theta[q].col(a)))
                throw ValidationError("Deuring embedding: v_" + Q.label(q) + " does not normalise A");
        }
        W.chi.push_back(v);
    }
    // equivariant structure on End_A(C)
    OutRep er;
    er.Q = Q;
    er.A = opposite(matrix_algebra(rep.A, nq));
    er.kappa = rep.kappa;
    for (int q = 0; q < nq; ++q) er.lifts.push_back(conjugate_endomorphisms(*er.A, W.C, A, nq, W.C.v[q]));
    validate_outrep(er);
    if (!is_equivariant(er)) throw ValidationError("Deuring embedding: induced action on End_A(C) is not a homomorphism");
    W.end_rep = er;
    return W;
}

std::optional<CrossedProductSpec> splitting_from_coboundary(const OutRep& rep, size_t cap) {
    TeichWitness W = teichmuller_cocycle(rep);
    if (!W.H3.is_zero(W.cls)) return std::nullopt;
    const Algebra& A = *rep.A;
    const FiniteGroup& Q = rep.Q;
    int nq = Q.order();
    const GModule& M = W.US.module;
    int r = M.rank();
    i64 E = std::max<i64>(2, M.exponent());  // U(S) may be trivial
    // solve d c = xi over normalised 2-cochains, coordinates scaled into Z/E
    std::vector<std::pair<int, int>> vars;
    for (int p = 0; p < nq; ++p)
        for (int q = 0; q < nq; ++q)
            if (p != Q.identity() && q != Q.identity()) vars.push_back({p, q});
    auto scaled = [&](const Cochain& z) {
        ZmVec v(z.values.size());
        for (size_t t = 0; t < z.tuple_count(); ++t)
            for (int j = 0; j < r; ++j) v[t * r + j] = mod_norm(z.values[t * r + j], M.factors[j]) * (E / M.factors[j]) % E;
        return v;
    };
    ZmMatrix D(E, static_cast<int>(W.xi.values.size()), static_cast<int>(vars.size()) * r);
    for (size_t v = 0; v < vars.size(); ++v)
        for (int j = 0; j < r; ++j) {
            Cochain c = Cochain::zero(2, nq, r);
            ZmVec e(r, 0);
            e[j] = 1;
            c.set({vars[v].first, vars[v].second}, e);
            D.set_col(static_cast<int>(v) * r + j, scaled(coboundary(Q, M, c)));
        }
    auto sol = mod_solve(D, scaled(W.xi));
    if (!sol) throw ValidationError("splitting: Teichmueller cocycle is not a coboundary");
    std::vector<ZmVec> fp = W.f;
    ZmMatrix emb = base_embedding(A);
    for (size_t v = 0; v < vars.size(); ++v) {
        ZmVec cv(r);
        for (int j = 0; j < r; ++j) cv[j] = mod_norm((*sol)[v * r + j], M.factors[j]);
        ZmVec c = mul(emb, W.US.unit_of(cv));
        auto [p, q] = vars[v];
        fp[p * nq + q] = A.mul(fp[p * nq + q], c);
    }
    UnitsGroup U = units_group(A, cap);
    int nu = U.group.order(), ng = nu * nq;
    std::vector<int> t(static_cast<size_t>(ng) * ng);
    for (int p = 0; p < nq; ++p)
        for (int u = 0; u < nu; ++u)
            for (int q = 0; q < nq; ++q)
                for (int w = 0; w < nu; ++w) {
                    ZmVec x = A.mul(A.mul(U.elements[u], crossalg::apply(rep.lifts[p], U.elements[w])), fp[p * nq + q]);
                    int idx = U.index_of(A, x);
                    if (idx < 0) throw ValidationError("splitting: product left the unit group");
                    t[static_cast<size_t>(u + nu * p) * ng + (w + nu * q)] = idx + nu * Q.mul(p, q);
                }
    CrossedProductSpec s;
    s.A = rep.A;
    FiniteGroup G = FiniteGroup::from_table(ng, std::move(t));
    std::vector<int> kimg(nu), qimg(ng);
    for (int u = 0; u < nu; ++u) kimg[u] = u + nu * Q.identity();
    for (int g = 0; g < ng; ++g) qimg[g] = g / nu;
    s.ext.kernel_hom = GroupHom{U.group, G, kimg};
    s.ext.quotient_hom = GroupHom{G, Q, qimg};
    s.i = U.elements;
    for (int g = 0; g < ng; ++g) s.theta.push_back(mul(inner_automorphism(A, U.elements[g % nu]), rep.lifts[g / nu]));
    validate_crossed_product_spec(s);
    return s;
}

}  // namespace crossalg
