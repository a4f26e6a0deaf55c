#include "crossalg/crossed_pairs.hpp"

#include "crossalg/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace crossalg {

namespace {

bool is_permutation(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    for (int x : p) {
        if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

bool same_module(const GModule& a, const GModule& b) {
    if (a.factors != b.factors || a.action.size() != b.action.size()) return false;
    for (size_t g = 0; g < a.action.size(); ++g)
        if (a.action[g].a != b.action[g].a) return false;
    return true;
}

// odometer over choice lists; stops when f returns true
bool for_each_choice(const std::vector<std::vector<int>>& cand, size_t cap,
                     const std::function<bool(const std::vector<int>&)>& f) {
    size_t total = 1;
    for (auto& c : cand) {
        if (c.empty()) return false;
        total *= c.size();
        if (total > cap) throw BudgetExceeded("search space exceeds " + std::to_string(cap) + " candidates");
    }
    std::vector<size_t> pos(cand.size(), 0);
    std::vector<int> cur(cand.size());
    for (;;) {
        for (size_t k = 0; k < cand.size(); ++k) cur[k] = cand[k][pos[k]];
        if (f(cur)) return true;
        size_t k = 0;
        while (k < cand.size() && ++pos[k] == cand[k].size()) pos[k++] = 0;
        if (k == cand.size()) return false;
    }
}

std::vector<ZmVec> sorted_unique(std::vector<ZmVec> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

// ------------------------------------------------------------------ modules and cochains

GModule restrict_module(const GModule& M, const GroupHom& phi) {
    GModule R;
    R.factors = M.factors;
    for (int n = 0; n < phi.source.order(); ++n) R.action.push_back(M.action[phi(n)]);
    return R;
}

std::vector<int> cochain_to_table(const GModule& M, const Cochain& f) {
    AbelianCoords ac = mixed_radix_coords(M.factors);
    size_t n = 1;
    for (int k = 0; k < f.degree; ++k) n *= static_cast<size_t>(f.group_order);
    std::vector<int> t(n);
    for (size_t i = 0; i < n; ++i) t[i] = static_cast<int>(ac.code(M.rank() ? f.at_index(i) : ZmVec{}));
    return t;
}

Cochain table_to_cochain(const GModule& M, int group_order, const std::vector<int>& table) {
    AbelianCoords ac = mixed_radix_coords(M.factors);
    int deg = 0;
    for (size_t n = 1; n < table.size(); n *= static_cast<size_t>(group_order)) ++deg;
    Cochain c = Cochain::zero(deg, group_order, M.rank());
    if (M.rank())
        for (size_t i = 0; i < table.size(); ++i) c.set_index(i, ac.coords[table[i]]);
    return c;
}

Cochain twist_cochain(const GroupExtension& amb, const GModule& M, const Cochain& z, int x) {
    const FiniteGroup& G = amb.G();
    const FiniteGroup& N = amb.N();
    std::vector<int> pre(G.order(), -1);
    for (int n = 0; n < N.order(); ++n) pre[amb.kernel_hom(n)] = n;
    std::vector<int> cx(N.order());  // n -> x^-1 n x
    for (int n = 0; n < N.order(); ++n) cx[n] = pre[G.conj(G.inv(x), amb.kernel_hom(n))];
    Cochain out = Cochain::zero(z.degree, z.group_order, z.rank);
    if (!z.rank) return out;
    size_t cnt = z.tuple_count();
    std::vector<int> tup(z.degree);
    for (size_t t = 0; t < cnt; ++t) {
        size_t k = t;
        for (int i = z.degree; i-- > 0;) {
            tup[i] = static_cast<int>(k % N.order());
            k /= N.order();
        }
        std::vector<int> src(z.degree);
        for (int i = 0; i < z.degree; ++i) src[i] = cx[tup[i]];
        out.set_index(t, M.act(x, z.at(src)));
    }
    return out;
}

bool class_is_q_fixed(const GroupExtension& amb, const GModule& M, const CohomologyGroup& HN, const Cochain& z) {
    ZmVec c = HN.class_of(z);
    for (int x = 0; x < amb.G().order(); ++x)
        if (HN.class_of(twist_cochain(amb, M, z, x)) != c) return false;
    return true;
}

// ------------------------------------------------------------------ abelian extensions

void validate_ab_extension(const AbExtension& ae) {
    validate_extension(ae.ambient);
    validate_module(ae.ambient.G(), ae.M);
    validate_extension(ae.e);
    const FiniteGroup& Gam = ae.e.G();
    const FiniteGroup& Mg = ae.e.N();
    if (!ae.e.Q().same_table(ae.ambient.N())) throw ValidationError("abelian extension: quotient is not the ambient kernel");
    GroupAction act = module_action(ae.ambient.G(), ae.M);
    if (Mg.order() != act.carrier_size) throw ValidationError("abelian extension: kernel is not the module");
    AbelianCoords mc = mixed_radix_coords(ae.M.factors);
    for (int a = 0; a < Mg.order(); ++a)
        for (int b = 0; b < Mg.order(); ++b)
            if (Mg.mul(a, b) != static_cast<int>(mc.code(ae.M.add(mc.coords[a], mc.coords[b]))))
                throw ValidationError("abelian extension: kernel group is not abelian_group(M.factors)");
    for (int g = 0; g < Gam.order(); ++g) {
        int x = ae.ambient.kernel_hom(ae.e.quotient_hom(g));
        for (int m = 0; m < Mg.order(); ++m)
            if (Gam.conj(g, ae.e.kernel_hom(m)) != ae.e.kernel_hom(act.act(x, m)))
                throw ValidationError("abelian extension: conjugation by " + Gam.label(g) + " does not induce the module action");
    }
    GModule MN = restrict_module(ae.M, ae.ambient.kernel_hom);
    CohomologyGroup H2 = cohomology(ae.ambient.N(), MN, 2);
    if (!class_is_q_fixed(ae.ambient, ae.M, H2, ab_extension_cocycle(ae)))
        throw ValidationError("abelian extension: class in H^2(N,M) is not Q-fixed");
}

AbExtension ab_extension_from_cocycle(const GroupExtension& amb, const GModule& M, const Cochain& f) {
    const FiniteGroup& N = amb.N();
    GModule MN = restrict_module(M, amb.kernel_hom);
    FiniteGroup Mg = abelian_group(M.factors);
    GroupExtension e = group_from_2cocycle(N, Mg, module_action(N, MN), cochain_to_table(M, f));
    AbExtension ae{amb, M, e};
    validate_ab_extension(ae);
    return ae;
}

Cochain ab_extension_cocycle(const AbExtension& ae) {
    auto f = extract_2cocycle(ae.e, ae.e.canonical_section());
    return table_to_cochain(ae.M, ae.ambient.N().order(), f);
}

// ------------------------------------------------------------------ Aut_G(e)

int AutGe::find(const std::vector<int>& a, int xx) const {
    auto it = index.find({a, xx});
    return it == index.end() ? -1 : it->second;
}

AutGe aut_g_of_e(const AbExtension& ae, int cap, size_t cap_elements) {
    const FiniteGroup& Gam = ae.e.G();
    const FiniteGroup& G = ae.ambient.G();
    const FiniteGroup& N = ae.ambient.N();
    const FiniteGroup& Mg = ae.e.N();
    if (Gam.order() > cap || G.order() > cap)
        throw BudgetExceeded("Aut_G(e): group order above cap " + std::to_string(cap));
    validate_ab_extension(ae);
    int ng = Gam.order(), nm = Mg.order();
    GroupAction act = module_action(G, ae.M);
    const auto& iM = ae.e.kernel_hom.images;
    const auto& piN = ae.e.quotient_hom.images;
    std::vector<int> preN(G.order(), -1);
    for (int n = 0; n < N.order(); ++n) preN[ae.ambient.kernel_hom(n)] = n;
    auto cN = [&](int x, int n) { return preN[G.conj(x, ae.ambient.kernel_hom(n))]; };
    std::vector<std::vector<int>> fibre(N.order());
    for (int g = 0; g < ng; ++g) fibre[piN[g]].push_back(g);
    auto sec = ae.e.canonical_section();

    std::vector<int> gens;
    for (int m : Mg.generators()) gens.push_back(iM[m]);
    for (int n : N.generators()) gens.push_back(sec[n]);

    AutGe A;
    A.ext = ae;
    for (int x = 0; x < G.order(); ++x) {
        std::vector<std::vector<int>> cand;
        for (int m : Mg.generators()) cand.push_back({iM[act.act(x, m)]});
        for (int n : N.generators()) cand.push_back(fibre[cN(x, n)]);
        for_each_choice(cand, 1u << 22, [&](const std::vector<int>& imgs) {
            auto img = extend_hom(Gam, gens, imgs, Gam);
            if (!img || !is_permutation(*img)) return false;
            for (int m = 0; m < nm; ++m)
                if ((*img)[iM[m]] != iM[act.act(x, m)]) return false;
            for (int g = 0; g < ng; ++g)
                if (piN[(*img)[g]] != cN(x, piN[g])) return false;
            if (A.index.count({*img, x})) return false;
            A.index[{*img, x}] = static_cast<int>(A.alpha.size());
            A.alpha.push_back(*img);
            A.x.push_back(x);
            if (A.alpha.size() > cap_elements) throw BudgetExceeded("Aut_G(e) has more than " + std::to_string(cap_elements) + " elements");
            return false;
        });
    }
    // identity first
    std::vector<int> id(ng);
    for (int g = 0; g < ng; ++g) id[g] = g;
    int i0 = A.find(id, G.identity());
    if (i0 < 0) throw ValidationError("Aut_G(e): identity missing");
    std::swap(A.alpha[0], A.alpha[i0]);
    std::swap(A.x[0], A.x[i0]);
    A.index.clear();
    for (size_t k = 0; k < A.alpha.size(); ++k) A.index[{A.alpha[k], A.x[k]}] = static_cast<int>(k);

    int na = static_cast<int>(A.alpha.size());
    std::vector<int> tab(static_cast<size_t>(na) * na);
    std::vector<int> comp(ng);
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b) {
            for (int g = 0; g < ng; ++g) comp[g] = A.alpha[a][A.alpha[b][g]];
            int c = A.find(comp, G.mul(A.x[a], A.x[b]));
            if (c < 0) throw ValidationError("Aut_G(e) not closed under composition");
            tab[static_cast<size_t>(a) * na + b] = c;
        }
    std::vector<std::string> lab(na);
    for (int a = 0; a < na; ++a) lab[a] = "a" + std::to_string(a) + "/" + G.label(A.x[a]);
    A.group = FiniteGroup::from_table(na, std::move(tab), std::move(lab));

    // beta
    A.beta.resize(ng);
    for (int g = 0; g < ng; ++g) {
        std::vector<int> p(ng);
        for (int h = 0; h < ng; ++h) p[h] = Gam.conj(g, h);
        A.beta[g] = A.find(p, ae.ambient.kernel_hom(piN[g]));
        if (A.beta[g] < 0) throw ValidationError("Aut_G(e): inner automorphism missing");
    }

    // derivations N -> M
    GModule MNm = restrict_module(ae.M, ae.ambient.kernel_hom);
    GroupAction actN = module_action(N, MNm);
    const auto& Ngens = N.generators();
    std::vector<std::vector<int>> dc(Ngens.size());
    for (auto& c : dc)
        for (int m = 0; m < nm; ++m) c.push_back(m);
    std::map<std::vector<int>, int> dindex;
    for_each_choice(dc, 1u << 22, [&](const std::vector<int>& vals) {
        std::vector<int> D(N.order(), -1);
        D[N.identity()] = Mg.identity();
        std::vector<int> queue{N.identity()};
        for (size_t i = 0; i < queue.size(); ++i) {
            int n = queue[i];
            for (size_t k = 0; k < Ngens.size(); ++k) {
                int y = N.mul(Ngens[k], n);
                int v = Mg.mul(vals[k], actN.act(Ngens[k], D[n]));
                if (D[y] < 0) {
                    D[y] = v;
                    queue.push_back(y);
                } else if (D[y] != v) {
                    return false;
                }
            }
        }
        for (int a = 0; a < N.order(); ++a)
            for (int b = 0; b < N.order(); ++b)
                if (D[N.mul(a, b)] != Mg.mul(D[a], actN.act(a, D[b]))) return false;
        dindex[D] = static_cast<int>(A.derivations.size());
        A.derivations.push_back(D);
        return false;
    });
    int nd = static_cast<int>(A.derivations.size());
    if (nd == 0 || *std::max_element(A.derivations[0].begin(), A.derivations[0].end()) != 0)
        throw ValidationError("Der(N,M): zero derivation not first");
    std::vector<int> dt(static_cast<size_t>(nd) * nd);
    for (int a = 0; a < nd; ++a)
        for (int b = 0; b < nd; ++b) {
            std::vector<int> s(N.order());
            for (int n = 0; n < N.order(); ++n) s[n] = Mg.mul(A.derivations[a][n], A.derivations[b][n]);
            dt[static_cast<size_t>(a) * nd + b] = dindex.at(s);
        }
    A.der = FiniteGroup::from_table(nd, std::move(dt));
    A.der_to_aut.resize(nd);
    for (int d = 0; d < nd; ++d) {
        std::vector<int> p(ng);
        for (int g = 0; g < ng; ++g) p[g] = Gam.mul(iM[A.derivations[d][piN[g]]], g);
        A.der_to_aut[d] = A.find(p, G.identity());
        if (A.der_to_aut[d] < 0) throw ValidationError("Aut_G(e): derivation automorphism missing");
    }
    A.zeta.resize(nm);
    for (int m = 0; m < nm; ++m) {
        std::vector<int> D(N.order());
        for (int n = 0; n < N.order(); ++n) D[n] = Mg.mul(m, Mg.inv(actN.act(n, m)));
        A.zeta[m] = dindex.at(D);
    }

    std::vector<int> bimg(A.beta);
    std::sort(bimg.begin(), bimg.end());
    bimg.erase(std::unique(bimg.begin(), bimg.end()), bimg.end());
    A.out = quotient_group(A.group, bimg);
    A.out_to_Q.resize(A.out.Q.order());
    for (int o = 0; o < A.out.Q.order(); ++o) A.out_to_Q[o] = ae.ambient.quotient_hom(A.x[A.out.rep[o]]);
    return A;
}

int h1_order_from_der(const AutGe& A) {
    std::set<int> z(A.zeta.begin(), A.zeta.end());
    return A.der.order() / static_cast<int>(z.size());
}

std::vector<std::string> check_diag1(const AutGe& A) {
    std::vector<std::string> bad;
    const AbExtension& ae = A.ext;
    const FiniteGroup& Gam = ae.e.G();
    const FiniteGroup& G = ae.ambient.G();
    const FiniteGroup& Q = ae.ambient.Q();
    const FiniteGroup& Mg = ae.e.N();
    int na = A.group.order(), nd = A.der.order();
    const auto& iM = ae.e.kernel_hom.images;
    const auto& piN = ae.e.quotient_hom.images;
    // homomorphisms
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b) {
            if (A.x[A.group.mul(a, b)] != G.mul(A.x[a], A.x[b])) bad.push_back("Aut -> G not a homomorphism");
            if (A.out.proj[A.group.mul(a, b)] != A.out.Q.mul(A.out.proj[a], A.out.proj[b])) bad.push_back("Aut -> Out not a homomorphism");
        }
    for (int g = 0; g < Gam.order(); ++g)
        for (int h = 0; h < Gam.order(); ++h)
            if (A.beta[Gam.mul(g, h)] != A.group.mul(A.beta[g], A.beta[h])) bad.push_back("beta not a homomorphism");
    for (int a = 0; a < nd; ++a)
        for (int b = 0; b < nd; ++b)
            if (A.der_to_aut[A.der.mul(a, b)] != A.group.mul(A.der_to_aut[a], A.der_to_aut[b]))
                bad.push_back("Der -> Aut not a homomorphism");
    for (int m = 0; m < Mg.order(); ++m)
        for (int k = 0; k < Mg.order(); ++k)
            if (A.zeta[Mg.mul(m, k)] != A.der.mul(A.zeta[m], A.zeta[k])) bad.push_back("zeta not a homomorphism");
    // middle column: Der >-> Aut ->> G
    std::set<int> dimg(A.der_to_aut.begin(), A.der_to_aut.end());
    if (static_cast<int>(dimg.size()) != nd) bad.push_back("Der -> Aut not injective");
    std::set<int> kx, xs;
    for (int a = 0; a < na; ++a) {
        if (A.x[a] == G.identity()) kx.insert(a);
        xs.insert(A.x[a]);
    }
    if (kx != dimg) bad.push_back("middle column not exact at Aut_G(e)");
    if (static_cast<int>(xs.size()) != G.order()) bad.push_back("Aut_G(e) -> G not surjective");
    // right column: H^1 >-> Out ->> Q
    std::set<int> outQ(A.out_to_Q.begin(), A.out_to_Q.end());
    if (static_cast<int>(outQ.size()) != Q.order()) bad.push_back("Out_G(e) -> Q not surjective");
    std::set<int> kq, dout, zout;
    for (int o = 0; o < A.out.Q.order(); ++o)
        if (A.out_to_Q[o] == Q.identity()) kq.insert(o);
    for (int d = 0; d < nd; ++d) dout.insert(A.out.proj[A.der_to_aut[d]]);
    if (kq != dout) bad.push_back("right column not exact at Out_G(e)");
    if (static_cast<int>(dout.size()) != h1_order_from_der(A)) bad.push_back("H^1(N,M) -> Out_G(e) not injective");
    for (int d = 0; d < nd; ++d) {
        bool inzeta = std::find(A.zeta.begin(), A.zeta.end(), d) != A.zeta.end();
        if ((A.out.proj[A.der_to_aut[d]] == A.out.Q.identity()) != inzeta) {
            bad.push_back("kernel of Der -> Out is not zeta(M)");
            break;
        }
    }
    // rows: ker beta = i(ker zeta); image beta = ker(Aut -> Out) by construction
    for (int m = 0; m < Mg.order(); ++m) {
        bool zz = A.zeta[m] == A.der.identity();
        bool bb = A.beta[iM[m]] == A.group.identity();
        if (zz != bb) bad.push_back("ker beta differs from ker zeta at " + Mg.label(m));
    }
    for (int g = 0; g < Gam.order(); ++g)
        if (A.beta[g] == A.group.identity() && ae.e.kernel_preimage(g) < 0) bad.push_back("ker beta outside M");
    // squares
    for (int m = 0; m < Mg.order(); ++m)
        if (A.der_to_aut[A.zeta[m]] != A.beta[iM[m]]) bad.push_back("square M/Gamma/Der/Aut does not commute");
    for (int g = 0; g < Gam.order(); ++g)
        if (A.x[A.beta[g]] != ae.ambient.kernel_hom(piN[g])) bad.push_back("square Gamma/N/Aut/G does not commute");
    for (int a = 0; a < na; ++a)
        if (A.out_to_Q[A.out.proj[a]] != ae.ambient.quotient_hom(A.x[a])) bad.push_back("square Aut/G/Out/Q does not commute");
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    return bad;
}

// ------------------------------------------------------------------ crossed pairs

void validate_crossed_pair(const CrossedPair& cp) {
    const AutGe& A = *cp.aut;
    const FiniteGroup& Q = A.ext.ambient.Q();
    if (static_cast<int>(cp.psi.size()) != Q.order()) throw ValidationError("crossed pair: psi has wrong size");
    for (int p = 0; p < Q.order(); ++p) {
        if (A.out_to_Q[cp.psi[p]] != p) throw ValidationError("crossed pair: psi does not split Out_G(e) ->> Q at " + Q.label(p));
        for (int q = 0; q < Q.order(); ++q)
            if (cp.psi[Q.mul(p, q)] != A.out.Q.mul(cp.psi[p], cp.psi[q]))
                throw ValidationError("crossed pair: psi is not a homomorphism at (" + Q.label(p) + "," + Q.label(q) + ")");
    }
}

std::vector<std::vector<int>> crossed_pair_sections(const AutGe& A, size_t cap) {
    const FiniteGroup& Q = A.ext.ambient.Q();
    const auto& gens = Q.generators();
    std::vector<std::vector<int>> cand(gens.size());
    for (size_t k = 0; k < gens.size(); ++k)
        for (int o = 0; o < A.out.Q.order(); ++o)
            if (A.out_to_Q[o] == gens[k]) cand[k].push_back(o);
    std::vector<std::vector<int>> out;
    if (gens.empty()) {
        out.push_back({A.out.Q.identity()});
        return out;
    }
    for_each_choice(cand, cap, [&](const std::vector<int>& imgs) {
        auto h = extend_hom(Q, gens, imgs, A.out.Q);
        if (!h) return false;
        for (int q = 0; q < Q.order(); ++q)
            if (A.out_to_Q[(*h)[q]] != q) return false;
        out.push_back(*h);
        return false;
    });
    std::sort(out.begin(), out.end());
    return out;
}

// ------------------------------------------------------------------ M^N and Delta

ZmVec FixedSubmodule::to_vec(int code) const {
    int k = sub.index_of(code);
    if (k < 0) throw ValidationError("element is not fixed by N");
    return coords.coords[k];
}

FixedSubmodule fixed_submodule(const GroupExtension& amb, const GModule& M) {
    const FiniteGroup& G = amb.G();
    const FiniteGroup& Q = amb.Q();
    FiniteGroup Mg = abelian_group(M.factors);
    GroupAction act = module_action(G, M);
    std::vector<int> el;
    for (int m = 0; m < Mg.order(); ++m) {
        bool fixed = true;
        for (int n = 0; n < amb.N().order() && fixed; ++n) fixed = act.act(amb.kernel_hom(n), m) == m;
        if (fixed) el.push_back(m);
    }
    FixedSubmodule F;
    F.sub = make_subgroup(Mg, el);
    F.coords = abelian_coords(F.sub.H);
    auto sec = amb.canonical_section();
    int k = F.sub.H.order();
    GroupAction qa{Q, k, std::vector<int>(static_cast<size_t>(Q.order()) * k)};
    for (int q = 0; q < Q.order(); ++q)
        for (int a = 0; a < k; ++a) qa.table[static_cast<size_t>(q) * k + a] = F.sub.index_of(act.act(sec[q], F.sub.embed[a]));
    F.module = module_from_action(Q, F.sub.H, F.coords, qa);
    AbelianCoords mc = mixed_radix_coords(M.factors);
    i64 e = std::max<i64>(2, M.exponent());
    ZmMatrix inc(e, M.rank(), F.module.rank());
    for (int j = 0; j < F.module.rank(); ++j) inc.set_col(j, mc.coords[F.sub.embed[F.coords.basis[j]]]);
    F.inclusion = ModuleMap{inc};
    return F;
}

DeltaResult delta(const CrossedPair& cp, std::optional<std::uint64_t> seed) {
    validate_crossed_pair(cp);
    const AutGe& A = *cp.aut;
    const AbExtension& ae = A.ext;
    const FiniteGroup& Gam = ae.e.G();
    const FiniteGroup& Q = ae.ambient.Q();
    int na = A.group.order();
    DeltaResult R;
    R.MN = fixed_submodule(ae.ambient, ae.M);
    Subgroup B = fiber_product(GroupHom{A.group, A.out.Q, A.out.proj}, GroupHom{Q, A.out.Q, cp.psi});
    int nb = B.H.order();
    std::vector<int> pos(static_cast<size_t>(na) * Q.order(), -1);
    for (int b = 0; b < nb; ++b) pos[B.embed[b]] = b;
    std::vector<int> d(Gam.order());
    for (int g = 0; g < Gam.order(); ++g) d[g] = pos[A.beta[g]];
    GroupAction act{B.H, Gam.order(), std::vector<int>(static_cast<size_t>(nb) * Gam.order())};
    std::vector<int> p(nb);
    for (int b = 0; b < nb; ++b) {
        const auto& al = A.alpha[B.embed[b] % na];
        std::copy(al.begin(), al.end(), act.table.begin() + static_cast<long>(b) * Gam.order());
        p[b] = B.embed[b] / na;
    }
    Crossed2Extension& e = R.e_psi;
    e.M = R.MN.sub.H;
    e.coords = R.MN.coords;
    std::vector<int> iimg(e.M.order());
    for (int a = 0; a < e.M.order(); ++a) iimg[a] = ae.e.kernel_hom(R.MN.sub.embed[a]);
    e.i = GroupHom{e.M, Gam, iimg};
    e.cm = CrossedModule{Gam, B.H, GroupHom{Gam, B.H, d}, act};
    e.p = GroupHom{B.H, Q, p};
    auto errs = validate_crossed2(e);
    if (!errs.empty()) throw ValidationError("e_psi is not a crossed 2-fold extension: " + errs.front());
    if (!same_module(crossed2_module(e), R.MN.module)) throw ValidationError("e_psi: module differs from M^N");
    R.xi = cocycle_of_crossed2(e, seed);
    R.H3 = cohomology(Q, R.MN.module, 3);
    R.cls = R.H3.class_of(R.xi);
    return R;
}

// ------------------------------------------------------------------ congruence, j

std::optional<std::vector<int>> find_congruence(const CrossedPair& a, const CrossedPair& b, size_t cap) {
    const AbExtension &ea = a.ext(), &eb = b.ext();
    const FiniteGroup &Ga = ea.e.G(), &Gb = eb.e.G();
    const FiniteGroup& N = ea.ambient.N();
    const FiniteGroup& Q = ea.ambient.Q();
    if (Ga.order() != Gb.order() || !same_module(ea.M, eb.M) || !ea.ambient.G().same_table(eb.ambient.G())) return std::nullopt;
    const FiniteGroup& Mg = ea.e.N();
    auto seca = ea.e.canonical_section();
    std::vector<std::vector<int>> fibre(N.order());
    for (int g = 0; g < Gb.order(); ++g) fibre[eb.e.quotient_hom(g)].push_back(g);
    std::vector<int> gens;
    std::vector<std::vector<int>> cand;
    for (int m : Mg.generators()) {
        gens.push_back(ea.e.kernel_hom(m));
        cand.push_back({eb.e.kernel_hom(m)});
    }
    for (int n : N.generators()) {
        gens.push_back(seca[n]);
        cand.push_back(fibre[n]);
    }
    std::optional<std::vector<int>> found;
    int ng = Ga.order();
    for_each_choice(cand, cap, [&](const std::vector<int>& imgs) {
        auto phi = extend_hom(Ga, gens, imgs, Gb);
        if (!phi || !is_permutation(*phi)) return false;
        for (int m = 0; m < Mg.order(); ++m)
            if ((*phi)[ea.e.kernel_hom(m)] != eb.e.kernel_hom(m)) return false;
        for (int g = 0; g < ng; ++g)
            if (eb.e.quotient_hom((*phi)[g]) != ea.e.quotient_hom(g)) return false;
        std::vector<int> perm(ng);
        for (int q : Q.generators()) {
            int l = a.lift(q);
            const auto& al = a.aut->alpha[l];
            for (int g = 0; g < ng; ++g) perm[(*phi)[g]] = (*phi)[al[g]];
            int k = b.aut->find(perm, a.aut->x[l]);
            if (k < 0 || b.aut->out.proj[k] != b.psi[q]) return false;
        }
        found = *phi;
        return true;
    });
    return found;
}

CrossedPair j_map(const GroupExtension& amb, const GModule& M, const Cochain& h, int cap) {
    const FiniteGroup& G = amb.G();
    const FiniteGroup& Q = amb.Q();
    FiniteGroup Mg = abelian_group(M.factors);
    int nm = Mg.order();
    GroupExtension E = group_from_2cocycle(G, Mg, module_action(G, M), cochain_to_table(M, h));
    std::vector<int> el;
    for (int n = 0; n < amb.N().order(); ++n)
        for (int m = 0; m < nm; ++m) el.push_back(m + nm * amb.kernel_hom(n));
    Subgroup S = make_subgroup(E.G(), el);
    std::vector<int> pos(E.G().order(), -1);
    for (int k = 0; k < S.H.order(); ++k) pos[S.embed[k]] = k;
    std::vector<int> inc(nm), proj(S.H.order());
    for (int m = 0; m < nm; ++m) inc[m] = pos[m];
    for (int k = 0; k < S.H.order(); ++k) proj[k] = amb.kernel_preimage(S.embed[k] / nm);
    AbExtension ae{amb, M, GroupExtension{GroupHom{Mg, S.H, inc}, GroupHom{S.H, amb.N(), proj}}};
    auto A = std::make_shared<AutGe>(aut_g_of_e(ae, cap));
    auto sec = amb.canonical_section();
    CrossedPair cp{A, std::vector<int>(Q.order())};
    for (int q = 0; q < Q.order(); ++q) {
        int s = nm * sec[q];  // (0, s(q)) in E
        std::vector<int> perm(S.H.order());
        for (int k = 0; k < S.H.order(); ++k) perm[k] = pos[E.G().conj(s, S.embed[k])];
        int a = A->find(perm, sec[q]);
        if (a < 0) throw ValidationError("j: conjugation is not in Aut_G(e)");
        cp.psi[q] = A->out.proj[a];
    }
    validate_crossed_pair(cp);
    return cp;
}

CrossedPair split_pair(const GroupExtension& amb, const GModule& M, int cap) {
    return j_map(amb, M, Cochain::zero(2, amb.G().order(), M.rank()), cap);
}

Cochain transgression(const GroupExtension& amb, const GModule& M, const FixedSubmodule& MN, const Cochain& d) {
    const FiniteGroup& G = amb.G();
    const FiniteGroup& N = amb.N();
    const FiniteGroup& Q = amb.Q();
    auto sec = amb.canonical_section();
    auto elems = M.elements();
    std::vector<int> preN(G.order(), -1);
    for (int n = 0; n < N.order(); ++n) preN[amb.kernel_hom(n)] = n;
    auto dv = [&](int n) { return M.rank() ? d.at({n}) : ZmVec{}; };
    // c_q with s.d(s^-1 n s) - d(n) = n.c - c
    std::vector<ZmVec> c(Q.order());
    for (int q = 0; q < Q.order(); ++q) {
        int s = sec[q];
        if (q == Q.identity()) {
            c[q] = ZmVec(M.rank(), 0);
            continue;
        }
        bool ok = false;
        for (const auto& cand : elems) {
            ok = true;
            for (int n = 0; n < N.order() && ok; ++n) {
                int gn = amb.kernel_hom(n);
                ZmVec lhs = M.add(M.act(s, dv(preN[G.conj(G.inv(s), gn)])), M.neg(dv(n)));
                ZmVec rhs = M.add(M.act(gn, cand), M.neg(cand));
                ok = lhs == rhs;
            }
            if (ok) {
                c[q] = cand;
                break;
            }
        }
        if (!ok) throw ValidationError("transgression: derivation class is not Q-fixed");
    }
    // D(n s(q)) = d(n) + n.c_q
    std::vector<ZmVec> D(G.order());
    for (int g = 0; g < G.order(); ++g) {
        int q = amb.quotient_hom(g);
        int n = preN[G.mul(g, G.inv(sec[q]))];
        D[g] = M.add(dv(n), M.act(amb.kernel_hom(n), c[q]));
    }
    AbelianCoords mc = mixed_radix_coords(M.factors);
    Cochain z = Cochain::zero(2, Q.order(), MN.module.rank());
    for (int p = 0; p < Q.order(); ++p)
        for (int q = 0; q < Q.order(); ++q) {
            int a = sec[p], b = sec[q];
            ZmVec v = M.add(M.add(M.act(a, D[b]), M.neg(D[G.mul(a, b)])), D[a]);
            ZmVec w = MN.to_vec(static_cast<int>(mc.code(v)));
            if (MN.module.rank()) z.set({p, q}, w);
        }
    return z;
}

// ------------------------------------------------------------------ Xpext

bool XpextReport::right_exact() const {
    for (const auto& v : verdicts)
        if (v.term >= 4 && v.term <= 7 && !v.exact) return false;
    return verdicts.size() >= 7;
}

XpextReport xpext_enumerate(const GroupExtension& amb, const GModule& M, const XpextOptions& opt) {
    validate_extension(amb);
    validate_module(amb.G(), M);
    const FiniteGroup& G = amb.G();
    const FiniteGroup& N = amb.N();
    const FiniteGroup& Q = amb.Q();
    if (G.order() > opt.cap_group) throw BudgetExceeded("xpext: |G| above cap");
    XpextReport R;
    FixedSubmodule MN = fixed_submodule(amb, M);
    GModule MNm = restrict_module(M, amb.kernel_hom);
    CohomologyGroup H2N = cohomology(N, MNm, 2);
    ModuleMap idM = identity_module_map(M);

    // crossed pairs, bucketed by congruence
    std::vector<std::shared_ptr<const AutGe>> auts;
    size_t examined = 0;
    auto bucket = [&](const CrossedPair& cp, int ecls) -> int {
        for (size_t k = 0; k < R.classes.size(); ++k)
            if (R.classes[k].e_class == ecls && find_congruence(cp, R.classes[k].rep)) return static_cast<int>(k);
        return -1;
    };
    auto e_class_of = [&](const AbExtension& ae) {
        ZmVec c = H2N.class_of(ab_extension_cocycle(ae));
        auto it = std::find(R.h2N_fixed.begin(), R.h2N_fixed.end(), c);
        if (it == R.h2N_fixed.end()) throw ValidationError("xpext: extension class not among the fixed classes");
        return static_cast<int>(it - R.h2N_fixed.begin());
    };
    auto add_pair = [&](const CrossedPair& cp, int ecls) -> int {
        ZmVec dl = delta(cp, opt.seed).cls;
        int k = bucket(cp, ecls);
        if (k < 0) {
            R.classes.push_back(XpextClass{cp, ecls, 1, dl, true});
            return static_cast<int>(R.classes.size()) - 1;
        }
        R.classes[k].members++;
        if (R.classes[k].delta != dl) R.classes[k].delta_consistent = false;
        return k;
    };

    std::vector<ZmVec> h2n_all = H2N.all_classes();
    for (const auto& c : h2n_all) {
        if (class_is_q_fixed(amb, M, H2N, H2N.representative(c)))
            R.h2N_fixed.push_back(c);
        else
            R.rejected_classes++;
    }
    // the split pair first, so that class 0 is the distinguished zero
    {
        CrossedPair sp = split_pair(amb, M, opt.cap_group);
        add_pair(sp, e_class_of(sp.ext()));
    }
    for (size_t ci = 0; ci < R.h2N_fixed.size() && !R.truncated; ++ci) {
        AbExtension ae = ab_extension_from_cocycle(amb, M, H2N.representative(R.h2N_fixed[ci]));
        auto A = std::make_shared<AutGe>(aut_g_of_e(ae, opt.cap_group));
        for (auto& psi : crossed_pair_sections(*A)) {
            if (++examined > opt.cap_enum) {
                R.truncated = true;
                break;
            }
            add_pair(CrossedPair{A, psi}, static_cast<int>(ci));
        }
    }

    // cohomology groups
    R.H1Q = cohomology(Q, MN.module, 1);
    R.H2Q = cohomology(Q, MN.module, 2);
    R.H3Q = cohomology(Q, MN.module, 3);
    R.H1G = cohomology(G, M, 1);
    R.H2G = cohomology(G, M, 2);
    R.H3G = cohomology(G, M, 3);
    R.H1N = cohomology(N, MNm, 1);

    // j and Delta o j
    R.h2G = R.H2G.all_classes();
    for (const auto& h : R.h2G) {
        CrossedPair jp = j_map(amb, M, R.H2G.representative(h), opt.cap_group);
        if (!R.H3Q.is_zero(delta(jp, opt.seed).cls)) R.delta_j_zero = false;
        int k = bucket(jp, e_class_of(jp.ext()));
        if (k < 0) throw ValidationError("xpext: j(h) is not congruent to any enumerated crossed pair");
        R.j_image.push_back(k);
    }

    auto verdict = [&](int term, const std::string& name, const std::vector<ZmVec>& ker, const std::vector<ZmVec>& im) {
        auto a = sorted_unique(ker), b = sorted_unique(im);
        std::string det = "ker " + std::to_string(a.size()) + ", im " + std::to_string(b.size());
        R.verdicts.push_back({term, name, a == b, det});
    };
    auto zero_of = [](const CohomologyGroup& H) { return ZmVec(H.invariant_factors().size(), 0); };

    // 1: H^1(Q,M^N) -> H^1(G,M) injective
    std::vector<ZmVec> ker1, im1;
    for (const auto& c : R.H1Q.all_classes()) {
        ZmVec v = map_on_cohomology(amb.quotient_hom, MN.inclusion, R.H1Q, R.H1G, c);
        im1.push_back(v);
        if (R.H1G.is_zero(v)) ker1.push_back(c);
    }
    verdict(1, "H^1(Q,M^N)", ker1, {zero_of(R.H1Q)});
    // 2: ker res = im inf
    std::vector<ZmVec> ker2, im2;
    for (const auto& c : R.H1G.all_classes()) {
        ZmVec v = map_on_cohomology(amb.kernel_hom, idM, R.H1G, R.H1N, c);
        im2.push_back(v);
        if (R.H1N.is_zero(v)) ker2.push_back(c);
    }
    verdict(2, "H^1(G,M)", ker2, im1);
    // 3: ker transgression = im res (inside the fixed classes)
    std::vector<ZmVec> ker3, im3;
    for (const auto& c : R.H1N.all_classes()) {
        Cochain d = R.H1N.representative(c);
        if (!class_is_q_fixed(amb, M, R.H1N, d)) continue;
        ZmVec v = R.H2Q.class_of(transgression(amb, M, MN, d));
        im3.push_back(v);
        if (R.H2Q.is_zero(v)) ker3.push_back(c);
    }
    verdict(3, "H^1(N,M)^Q", ker3, im2);
    // 4: ker inf2 = im transgression
    std::vector<ZmVec> ker4, im4;
    for (const auto& c : R.H2Q.all_classes()) {
        ZmVec v = map_on_cohomology(amb.quotient_hom, MN.inclusion, R.H2Q, R.H2G, c);
        im4.push_back(v);
        if (R.H2G.is_zero(v)) ker4.push_back(c);
    }
    verdict(4, "H^2(Q,M^N)", ker4, im3);
    // 5: ker j = im inf2
    std::vector<ZmVec> ker5;
    for (size_t i = 0; i < R.h2G.size(); ++i)
        if (R.j_image[i] == 0) ker5.push_back(R.h2G[i]);
    verdict(5, "H^2(G,M)", ker5, im4);
    // 6: ker Delta = im j (as sets of Xpext classes; encoded as 1-vectors)
    std::vector<ZmVec> ker6, im6;
    for (size_t k = 0; k < R.classes.size(); ++k)
        if (R.H3Q.is_zero(R.classes[k].delta)) ker6.push_back({static_cast<i64>(k)});
    for (int k : R.j_image) im6.push_back({static_cast<i64>(k)});
    verdict(6, "Xpext(G,N;M)", ker6, im6);
    // 7: ker inf3 = im Delta
    for (const auto& c : R.H3Q.all_classes())
        if (R.H3G.is_zero(map_on_cohomology(amb.quotient_hom, MN.inclusion, R.H3Q, R.H3G, c))) R.ker_inf3.push_back(c);
    for (const auto& k : R.classes) R.delta_image.push_back(k.delta);
    R.delta_image = sorted_unique(R.delta_image);
    verdict(7, "H^3(Q,M^N)", R.ker_inf3, R.delta_image);
    for (const auto& k : R.classes)
        if (!k.delta_consistent) R.verdicts[6].detail += "; Delta not constant on a congruence class";
    if (R.truncated)
        for (auto& v : R.verdicts)
            if (v.term >= 5) v.detail += " (truncated)";
    return R;
}

// ------------------------------------------------------------------ metacyclic pipeline

MetacyclicInstance metacyclic_instance(int r, int s, int t, int f, int l) {
    MetacyclicInstance I;
    I.crossed12 = metacyclic_crossed2(r, s, t, f, l);  // validates the divisibility condition
    I.mc = metacyclic(r, s, t, f);
    I.l = l;
    const FiniteGroup& G = I.mc.G;
    std::vector<i64> expo(G.order());
    for (int g = 0; g < G.order(); ++g) expo[g] = g / r;
    I.M = cyclic_twisted_module(G, l, expo, t);
    int n = l * r;
    FiniteGroup Gam = cyclic_group(n);
    FiniteGroup Mg = abelian_group({l});
    std::vector<int> inc(l), proj(n);
    for (int m = 0; m < l; ++m) inc[m] = r * m;
    for (int k = 0; k < n; ++k) proj[k] = k % r;
    AbExtension ae{I.mc.ext, I.M, GroupExtension{GroupHom{Mg, Gam, inc}, GroupHom{Gam, I.mc.ext.N(), proj}}};
    auto A = std::make_shared<AutGe>(aut_g_of_e(ae, std::max(96, n)));
    I.cp = CrossedPair{A, std::vector<int>(s)};
    long tq = 1;
    for (int q = 0; q < s; ++q) {
        std::vector<int> perm(n);
        for (int k = 0; k < n; ++k) perm[k] = static_cast<int>(k * tq % n);
        int a = A->find(perm, I.mc.elem(0, q));
        if (a < 0) throw ValidationError("metacyclic: x^q action not in Aut_G(e)");
        I.cp.psi[q] = A->out.proj[a];
        tq = tq * t % n;
    }
    validate_crossed_pair(I.cp);
    I.delta = delta(I.cp);
    GModule Mq = crossed2_module(I.crossed12);
    I.H3 = cohomology(I.crossed12.G(), Mq, 3);
    I.crossed12_class = I.H3.class_of(cocycle_of_crossed2(I.crossed12));
    I.delta_class = map_on_cohomology(identity_hom(I.crossed12.G()), I.delta.MN.inclusion, I.delta.H3, I.H3, I.delta.cls);
    return I;
}

// ------------------------------------------------------------------ crossed-pair algebras

void validate_normal_galois(const NormalGaloisData& d) {
    validate_extension(d.ambient);
    validate_ring_group_action(*d.T, d.ambient.G(), d.kappa);
    std::vector<ZmMatrix> kn;
    for (int n = 0; n < d.ambient.N().order(); ++n) kn.push_back(d.kappa[d.ambient.kernel_hom(n)]);
    auto rep = galois_check(d.T, d.S, d.embed, RingAction{d.ambient.N(), kn});
    if (!(rep.fixed_ring_ok && rep.crit_i && rep.crit_iii && rep.crit_iv))
        throw ValidationError("T|S is not Galois with group N");
    kappa_on_base(d);
}

std::vector<ZmMatrix> kappa_on_base(const NormalGaloisData& d) {
    auto sec = d.ambient.canonical_section();
    std::vector<ZmMatrix> out;
    int ns = d.S->n();
    for (int q = 0; q < d.ambient.Q().order(); ++q) {
        ZmMatrix K(d.S->m, ns, ns);
        ZmMatrix img = mul(d.kappa[sec[q]], d.embed);
        for (int j = 0; j < ns; ++j) {
            auto y = mod_solve(d.embed, img.col(j));
            if (!y) throw ValidationError("G does not preserve S");
            K.set_col(j, *y);
        }
        out.push_back(K);
    }
    return out;
}

UnitsModule units_of_T(const NormalGaloisData& d, size_t cap) { return units_module(*d.T, d.ambient.G(), d.kappa, cap); }

UnitsModule units_of_S(const NormalGaloisData& d, size_t cap) {
    return units_module(*d.S, d.ambient.Q(), kappa_on_base(d), cap);
}

ModuleMap fixed_units_map(const NormalGaloisData& d, const UnitsModule& UT, const FixedSubmodule& MN, const UnitsModule& US) {
    AbelianCoords mc = mixed_radix_coords(UT.module.factors);
    i64 e = std::max<i64>(2, US.module.exponent());
    ZmMatrix F(e, US.module.rank(), MN.module.rank());
    for (int j = 0; j < MN.module.rank(); ++j) {
        ZmVec u = UT.unit_of(mc.coords[MN.sub.embed[MN.coords.basis[j]]]);
        auto s = mod_solve(d.embed, u);
        if (!s) throw ValidationError("fixed unit not in S");
        F.set_col(j, US.vec_of(*d.S, *s));
    }
    return ModuleMap{F};
}

ModuleMap units_inclusion(const NormalGaloisData& d, const UnitsModule& US, const UnitsModule& UT) {
    i64 e = std::max<i64>(2, UT.module.exponent());
    ZmMatrix F(e, UT.module.rank(), US.module.rank());
    for (int j = 0; j < US.module.rank(); ++j) {
        ZmVec ej(US.module.rank(), 0);
        ej[j] = 1;
        F.set_col(j, UT.vec_of(*d.T, mul(d.embed, US.unit_of(ej))));
    }
    return ModuleMap{F};
}

CrossedPairAlgebra crossed_pair_algebra(const NormalGaloisData& d, const UnitsModule& UT, const CrossedPair& cp) {
    validate_crossed_pair(cp);
    const AutGe& Aut = *cp.aut;
    const AbExtension& ae = Aut.ext;
    if (!same_module(ae.M, UT.module)) throw ValidationError("crossed pair module is not U(T)");
    if (!ae.ambient.G().same_table(d.ambient.G())) throw ValidationError("crossed pair over a different ambient group");
    const Algebra& T = *d.T;
    const FiniteGroup& Gam = ae.e.G();
    const FiniteGroup& N = ae.ambient.N();
    const FiniteGroup& Q = ae.ambient.Q();
    AbelianCoords mc = mixed_radix_coords(UT.module.factors);

    CrossedPairAlgebra R;
    R.spec.A = base_algebra(d.T);
    R.spec.ext = ae.e;
    for (int k = 0; k < ae.e.N().order(); ++k) R.spec.i.push_back(UT.unit_of(mc.coords[k]));
    for (int g = 0; g < Gam.order(); ++g) R.spec.theta.push_back(d.kappa[ae.ambient.kernel_hom(ae.e.quotient_hom(g))]);
    validate_crossed_product_spec(R.spec);
    auto sec = ae.e.canonical_section();
    R.C = crossed_product_v2(data_from_spec(R.spec, sec));
    const Algebra& C = *R.C.C;
    int nT = T.n(), nC = C.n();

    for (int q = 0; q < Q.order(); ++q) {
        int l = cp.lift(q);
        const auto& al = Aut.alpha[l];
        const ZmMatrix& kx = d.kappa[Aut.x[l]];
        ZmMatrix W(C.m, nC, nC);
        for (int n = 0; n < N.order(); ++n) {
            int ag = al[sec[n]];
            int np = ae.e.quotient_hom(ag);
            int k = ae.e.kernel_preimage(Gam.mul(ag, Gam.inv(sec[np])));
            const ZmVec& u = R.spec.i[k];
            for (int a = 0; a < nT; ++a) {
                ZmVec t = T.mul(kx.col(a), u);
                ZmVec col(nC, 0);
                for (int b = 0; b < nT; ++b) col[np * nT + b] = t[b];
                W.set_col(n * nT + a, col);
            }
        }
        R.flat_lifts.push_back(W);
    }
    ZmMatrix emb = mul(R.C.embed_A, d.embed);
    auto rb = rebase(R.C.C, d.S, emb);
    if (!rb) throw ValidationError("crossed-pair algebra is not free over S");
    R.rebased = *rb;
    R.rep.Q = Q;
    R.rep.A = rb->algebra;
    R.rep.kappa = kappa_on_base(d);
    for (const auto& W : R.flat_lifts) R.rep.lifts.push_back(mul(mul(rb->change, W), rb->change_inv));
    validate_outrep(R.rep);
    return R;
}

}  // namespace crossalg
