#include "crossalg/crossed.hpp"

#include "crossalg/errors.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace crossalg {

FiniteGroup abelian_group(const std::vector<i64>& factors) {
    int n = 1;
    for (i64 f : factors) n *= static_cast<int>(f);
    AbelianCoords ac = mixed_radix_coords(factors);
    std::vector<int> t(static_cast<size_t>(n) * n);
    std::vector<std::string> lab(n);
    for (int a = 0; a < n; ++a) {
        std::ostringstream os;
        os << "(";
        for (size_t i = 0; i < factors.size(); ++i) os << (i ? "," : "") << ac.coords[a][i];
        os << ")";
        lab[a] = os.str();
        for (int b = 0; b < n; ++b) {
            std::vector<i64> c(factors.size());
            for (size_t i = 0; i < factors.size(); ++i) c[i] = ac.coords[a][i] + ac.coords[b][i];
            t[static_cast<size_t>(a) * n + b] = static_cast<int>(ac.code(c));
        }
    }
    return FiniteGroup::from_table(n, std::move(t), std::move(lab));
}

AbelianCoords mixed_radix_coords(const std::vector<i64>& factors) {
    AbelianCoords ac;
    ac.factors = factors;
    size_t n = 1;
    for (i64 f : factors) n *= static_cast<size_t>(f);
    ac.coords.resize(n);
    ac.lookup.resize(n);
    for (size_t x = 0; x < n; ++x) {
        size_t k = x;
        for (i64 f : factors) {
            ac.coords[x].push_back(static_cast<i64>(k % f));
            k /= f;
        }
        ac.lookup[x] = static_cast<int>(x);
    }
    size_t stride = 1;
    for (i64 f : factors) {
        ac.basis.push_back(static_cast<int>(stride));
        stride *= static_cast<size_t>(f);
    }
    return ac;
}

GModule module_from_action(const FiniteGroup& G, const FiniteGroup& A, const AbelianCoords& coords,
                           const GroupAction& action) {
    validate_action_by_automorphisms(action, A);
    GModule M;
    M.factors = coords.factors;
    i64 e = std::max<i64>(2, M.exponent());
    int r = M.rank();
    for (int g = 0; g < G.order(); ++g) {
        ZmMatrix Mg(e, r, r);
        for (int j = 0; j < r; ++j) {
            const auto& c = coords.coords[action.act(g, coords.basis[j])];
            for (int i = 0; i < r; ++i) Mg(i, j) = c[i];
        }
        M.action.push_back(Mg);
    }
    validate_module(G, M);
    return M;
}

GroupAction module_action(const FiniteGroup& G, const GModule& M) {
    AbelianCoords ac = mixed_radix_coords(M.factors);
    int n = static_cast<int>(ac.coords.size());
    GroupAction a{G, n, std::vector<int>(static_cast<size_t>(G.order()) * n)};
    for (int g = 0; g < G.order(); ++g)
        for (int x = 0; x < n; ++x) a.table[static_cast<size_t>(g) * n + x] = static_cast<int>(ac.code(M.act(g, ac.coords[x])));
    return a;
}

// ------------------------------------------------------------------ validation

std::vector<std::string> validate_crossed_module(const CrossedModule& cm, size_t max_report) {
    std::vector<std::string> out;
    auto report = [&](const std::string& s) {
        if (out.size() < max_report) out.push_back(s);
    };
    const FiniteGroup &C = cm.C, &Gm = cm.Gamma;
    if (cm.d.source.order() != C.order() || cm.d.target.order() != Gm.order()) {
        out.push_back("boundary map has wrong source/target");
        return out;
    }
    if (cm.action.actor.order() != Gm.order() || cm.action.carrier_size != C.order()) {
        out.push_back("action has wrong actor/carrier");
        return out;
    }
    try {
        check_hom(cm.d);
    } catch (const ValidationError& e) {
        report(std::string("boundary is not a homomorphism: ") + e.what());
    }
    try {
        validate_action_by_automorphisms(cm.action, C);
    } catch (const ValidationError& e) {
        report(std::string("action: ") + e.what());
    }
    for (int g = 0; g < Gm.order(); ++g)
        for (int c = 0; c < C.order(); ++c)
            if (cm.d(cm.action.act(g, c)) != Gm.conj(g, cm.d(c)))
                report("equivariance fails at (" + Gm.label(g) + "," + C.label(c) + ")");
    for (int b = 0; b < C.order(); ++b)
        for (int c = 0; c < C.order(); ++c)
            if (C.conj(b, c) != cm.action.act(cm.d(b), c))
                report("Peiffer identity fails at (" + C.label(b) + "," + C.label(c) + ")");
    return out;
}

std::vector<std::string> validate_crossed2(const Crossed2Extension& e, size_t max_report) {
    std::vector<std::string> out = validate_crossed_module(e.cm, max_report);
    auto report = [&](const std::string& s) {
        if (out.size() < max_report) out.push_back(s);
    };
    if (!e.M.is_abelian()) report("M is not abelian");
    if (e.i.source.order() != e.M.order() || e.i.target.order() != e.cm.C.order()) {
        report("M -> C has wrong source/target");
        return out;
    }
    if (e.p.source.order() != e.cm.Gamma.order()) {
        report("Gamma -> G has wrong source");
        return out;
    }
    if (e.coords.coords.size() != static_cast<size_t>(e.M.order())) report("coordinates do not match M");
    try {
        check_hom(e.i);
        check_hom(e.p);
    } catch (const ValidationError& x) {
        report(x.what());
        return out;
    }
    if (!e.i.injective()) report("M -> C is not injective");
    if (!e.p.surjective()) report("Gamma -> G is not surjective");
    if (e.i.image() != e.cm.d.kernel()) report("image(M) != kernel(d)");
    if (e.cm.d.image() != e.p.kernel()) report("image(d) != kernel(Gamma -> G)");
    for (int m : e.i.image())
        for (int c = 0; c < e.cm.C.order(); ++c)
            if (e.cm.C.mul(m, c) != e.cm.C.mul(c, m)) report("M is not central in C at " + e.cm.C.label(c));
    return out;
}

namespace {

void require_valid(const Crossed2Extension& e) {
    auto rep = validate_crossed2(e, 1);
    if (!rep.empty()) throw ValidationError("invalid crossed 2-fold extension: " + rep.front());
}

std::vector<int> m_preimage(const Crossed2Extension& e) {
    std::vector<int> pre(e.cm.C.order(), -1);
    for (int m = 0; m < e.M.order(); ++m) pre[e.i(m)] = m;
    return pre;
}

}  // namespace

GModule crossed2_module(const Crossed2Extension& e) {
    const FiniteGroup& G = e.G();
    std::vector<int> sec(G.order(), -1);
    for (int g = 0; g < e.cm.Gamma.order(); ++g)
        if (sec[e.p(g)] < 0) sec[e.p(g)] = g;
    auto pre = m_preimage(e);
    GroupAction a{G, e.M.order(), std::vector<int>(static_cast<size_t>(G.order()) * e.M.order())};
    for (int g = 0; g < G.order(); ++g)
        for (int m = 0; m < e.M.order(); ++m) a.table[static_cast<size_t>(g) * e.M.order() + m] = pre[e.cm.action.act(sec[g], e.i(m))];
    return module_from_action(G, e.M, e.coords, a);
}

Cochain cocycle_of_crossed2(const Crossed2Extension& e, std::optional<std::uint64_t> seed) {
    require_valid(e);
    const FiniteGroup &G = e.G(), &Gm = e.cm.Gamma, &C = e.cm.C;
    int q = G.order();
    std::mt19937_64 rng(seed.value_or(0));
    std::vector<std::vector<int>> fibre(q), dpre(Gm.order());
    for (int g = 0; g < Gm.order(); ++g) fibre[e.p(g)].push_back(g);
    for (int c = 0; c < C.order(); ++c) dpre[e.cm.d(c)].push_back(c);
    auto pick = [&](const std::vector<int>& v) { return seed ? v[rng() % v.size()] : v.front(); };
    std::vector<int> s(q);
    for (int x = 0; x < q; ++x) s[x] = x == G.identity() ? Gm.identity() : pick(fibre[x]);
    std::vector<int> f(static_cast<size_t>(q) * q);
    for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) {
            if (x == G.identity() || y == G.identity()) {
                f[x * q + y] = C.identity();
                continue;
            }
            int w = Gm.mul(Gm.mul(s[x], s[y]), Gm.inv(s[G.mul(x, y)]));
            if (dpre[w].empty()) throw ValidationError("cocycle_of_crossed2: section defect has no preimage");
            f[x * q + y] = pick(dpre[w]);
        }
    auto pre = m_preimage(e);
    GModule M = crossed2_module(e);
    Cochain xi = Cochain::zero(3, q, M.rank());
    for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y)
            for (int z = 0; z < q; ++z) {
                int a = C.mul(f[x * q + y], f[G.mul(x, y) * q + z]);
                a = C.mul(a, C.inv(f[x * q + G.mul(y, z)]));
                a = C.mul(a, C.inv(e.cm.action.act(s[x], f[y * q + z])));
                int m = pre[a];
                if (m < 0) throw std::logic_error("cocycle_of_crossed2: value outside M");
                xi.set({x, y, z}, e.coords.coords[m]);
            }
    return xi;
}

Crossed2Extension trivial_crossed2(const FiniteGroup& Q, const GModule& M) {
    validate_module(Q, M);
    Crossed2Extension e;
    e.M = abelian_group(M.factors);
    e.coords = mixed_radix_coords(M.factors);
    e.i = identity_hom(e.M);
    std::vector<int> zero(e.M.order(), Q.identity());
    e.cm = CrossedModule{e.M, Q, GroupHom{e.M, Q, zero}, module_action(Q, M)};
    e.p = identity_hom(Q);
    return e;
}

Crossed2Extension baer_sum(const Crossed2Extension& a, const Crossed2Extension& b) {
    require_valid(a);
    require_valid(b);
    if (!a.G().same_table(b.G())) throw ValidationError("baer_sum: different groups G");
    if (!a.M.same_table(b.M) || a.coords.coords != b.coords.coords) throw ValidationError("baer_sum: different modules M");
    GModule Ma = crossed2_module(a), Mb = crossed2_module(b);
    for (size_t g = 0; g < Ma.action.size(); ++g)
        for (int i = 0; i < Ma.rank(); ++i)
            for (int j = 0; j < Ma.rank(); ++j)
                if (mod_norm(Ma.action[g](i, j) - Mb.action[g](i, j), Ma.factors[i]))
                    throw ValidationError("baer_sum: different actions on M");
    const FiniteGroup &Ca = a.cm.C, &Cb = b.cm.C;
    int na = Ca.order();
    FiniteGroup CC = direct_product(Ca, Cb);
    // antidiagonal {(m, -m)}
    std::vector<int> anti;
    for (int m = 0; m < a.M.order(); ++m) anti.push_back(a.i(m) + na * b.i(a.M.inv(m)));
    std::sort(anti.begin(), anti.end());
    Quotient qc = quotient_group(CC, anti);
    Subgroup gam = fiber_product(a.p, b.p);
    int nga = a.cm.Gamma.order();
    Crossed2Extension e;
    e.M = a.M;
    e.coords = a.coords;
    std::vector<int> iimg(a.M.order());
    for (int m = 0; m < a.M.order(); ++m) iimg[m] = qc.proj[a.i(m) + na * Cb.identity()];
    e.i = GroupHom{a.M, qc.Q, iimg};
    std::vector<int> dimg(qc.Q.order());
    for (int c = 0; c < qc.Q.order(); ++c) {
        int rep = qc.rep[c];
        int pair = a.cm.d(rep % na) + nga * b.cm.d(rep / na);
        dimg[c] = gam.index_of(pair);
    }
    int nq = qc.Q.order();
    GroupAction act{gam.H, nq, std::vector<int>(static_cast<size_t>(gam.H.order()) * nq)};
    for (int g = 0; g < gam.H.order(); ++g) {
        int pg = gam.embed[g];
        for (int c = 0; c < nq; ++c) {
            int rep = qc.rep[c];
            int img = a.cm.action.act(pg % nga, rep % na) + na * b.cm.action.act(pg / nga, rep / na);
            act.table[static_cast<size_t>(g) * nq + c] = qc.proj[img];
        }
    }
    e.cm = CrossedModule{qc.Q, gam.H, GroupHom{qc.Q, gam.H, dimg}, act};
    std::vector<int> pimg(gam.H.order());
    for (int g = 0; g < gam.H.order(); ++g) pimg[g] = a.p(gam.embed[g] % nga);
    e.p = GroupHom{gam.H, a.G(), pimg};
    require_valid(e);
    return e;
}

Crossed2Extension metacyclic_crossed2(int r, int s, int t, int f, int l) {
    Metacyclic mc = metacyclic(r, s, t, f);
    if (l < 2) throw ValidationError("metacyclic_crossed2: need l >= 2");
    long ts = 1;  // t^s mod lr
    for (int i = 0; i < s; ++i) ts = ts * t % (static_cast<long>(l) * r);
    if (r % l != 0 || ((ts - 1 + static_cast<long>(l) * r) % (static_cast<long>(l) * r)) / r % l != 0)
        throw ValidationError("metacyclic_crossed2: l must divide gcd((t^s-1)/r, r)");
    int n = l * r;
    FiniteGroup C = cyclic_group(n);
    std::vector<int> dimg(n);
    for (int k = 0; k < n; ++k) dimg[k] = mc.elem(k, 0);
    std::vector<long> tp(s);
    tp[0] = 1;
    for (int j = 1; j < s; ++j) tp[j] = tp[j - 1] * t % n;
    int N = mc.G.order();
    GroupAction act{mc.G, n, std::vector<int>(static_cast<size_t>(N) * n)};
    for (int g = 0; g < N; ++g)
        for (int k = 0; k < n; ++k) act.table[static_cast<size_t>(g) * n + k] = static_cast<int>(k * tp[g / r] % n);
    Crossed2Extension e;
    e.M = cyclic_group(l);
    e.coords = mixed_radix_coords({l});
    std::vector<int> iimg(l);
    for (int m = 0; m < l; ++m) iimg[m] = r * m;
    e.i = GroupHom{e.M, C, iimg};
    e.cm = CrossedModule{C, mc.G, GroupHom{C, mc.G, dimg}, act};
    e.p = mc.ext.quotient_hom;
    require_valid(e);
    return e;
}

}  // namespace crossalg
