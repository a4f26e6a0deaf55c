#include "crossalg/cohomology.hpp"

#include "crossalg/errors.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <map>
#include <numeric>
#include <sstream>

namespace crossalg {

// ------------------------------------------------------------------ modules

i64 GModule::exponent() const {
    i64 e = 1;
    for (i64 f : factors) e = lcm64(e, f);
    return e;
}

BigInt GModule::order() const {
    BigInt o = 1;
    for (i64 f : factors) o *= f;
    return o;
}

ZmVec GModule::reduce(ZmVec m) const {
    for (size_t i = 0; i < m.size(); ++i) m[i] = mod_norm(m[i], factors[i]);
    return m;
}

ZmVec GModule::act(int g, const ZmVec& m) const {
    const ZmMatrix& A = action[g];
    int r = rank();
    ZmVec out(r, 0);
    for (int i = 0; i < r; ++i) {
        i64 s = 0, d = factors[i];
        for (int j = 0; j < r; ++j) s = (s + A(i, j) % d * mod_norm(m[j], d)) % d;
        out[i] = s;
    }
    return out;
}

ZmVec GModule::add(const ZmVec& a, const ZmVec& b) const {
    ZmVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mod_norm(a[i] + b[i], factors[i]);
    return r;
}

ZmVec GModule::neg(const ZmVec& a) const {
    ZmVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mod_norm(-a[i], factors[i]);
    return r;
}

bool GModule::is_trivial() const {
    for (size_t g = 0; g < action.size(); ++g)
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j)
                if (mod_norm(action[g](i, j) - (i == j), factors[i]) != 0) return false;
    return true;
}

std::vector<ZmVec> GModule::elements() const {
    std::vector<ZmVec> out;
    ZmVec cur(rank(), 0);
    for (;;) {
        out.push_back(cur);
        int i = 0;
        while (i < rank()) {
            if (++cur[i] < factors[i]) break;
            cur[i] = 0;
            ++i;
        }
        if (i == rank()) break;
    }
    return out;
}

GModule trivial_module(const FiniteGroup& G, std::vector<i64> factors) {
    GModule M;
    M.factors = std::move(factors);
    i64 e = M.exponent();
    if (e < 2) e = 2;
    M.action.assign(G.order(), ZmMatrix::identity(e, M.rank()));
    return M;
}

GModule cyclic_twisted_module(const FiniteGroup& G, i64 l, const std::vector<i64>& k, i64 u) {
    GModule M;
    M.factors = {l};
    for (int g = 0; g < G.order(); ++g) {
        ZmMatrix A(l, 1, 1);
        i64 v = 1 % l;
        for (i64 t = 0; t < k[g]; ++t) v = v * mod_norm(u, l) % l;
        A(0, 0) = v;
        M.action.push_back(A);
    }
    return M;
}

void validate_module(const FiniteGroup& G, const GModule& M) {
    for (i64 f : M.factors)
        if (f < 2) throw ValidationError("module factors must be >= 2");
    if (static_cast<int>(M.action.size()) != G.order()) throw ValidationError("need one action matrix per group element");
    int r = M.rank();
    for (const auto& A : M.action)
        if (A.rows != r || A.cols != r) throw ValidationError("action matrix has wrong shape");
    for (int g = 0; g < G.order(); ++g)
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if ((M.action[g](i, j) * M.factors[j]) % M.factors[i] != 0)
                    throw ValidationError("action matrix of element " + std::to_string(g) +
                                          " is not well defined on the factors");
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (mod_norm(M.action[G.identity()](i, j) - (i == j), M.factors[i]))
                throw ValidationError("identity does not act trivially");
    for (int g = 0; g < G.order(); ++g)
        for (int h = 0; h < G.order(); ++h) {
            const auto &A = M.action[g], &B = M.action[h], &C = M.action[G.mul(g, h)];
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    i64 s = 0, d = M.factors[i];
                    for (int k = 0; k < r; ++k) s = (s + A(i, k) % d * (B(k, j) % d)) % d;
                    if (mod_norm(s - C(i, j), d))
                        throw ValidationError("action is not a homomorphism at (" + std::to_string(g) + "," +
                                              std::to_string(h) + ")");
                }
        }
}

RealizedModule realize_module(const FiniteGroup& G, const FiniteGroup& A, const GroupAction& action) {
    validate_action_by_automorphisms(action, A);
    RealizedModule R{A, abelian_coords(A), {}};
    R.module.factors = R.coords.factors;
    i64 e = std::max<i64>(2, R.module.exponent());
    int r = R.module.rank();
    for (int g = 0; g < G.order(); ++g) {
        ZmMatrix Mg(e, r, r);
        for (int j = 0; j < r; ++j) {
            const auto& c = R.coords.coords[action.act(g, R.coords.basis[j])];
            for (int i = 0; i < r; ++i) Mg(i, j) = c[i];
        }
        R.module.action.push_back(Mg);
    }
    validate_module(G, R.module);
    return R;
}

// ------------------------------------------------------------------ cochains

Cochain Cochain::zero(int degree, int q, int rank) {
    Cochain c;
    c.degree = degree;
    c.group_order = q;
    c.rank = rank;
    size_t t = 1;
    for (int i = 0; i < degree; ++i) t *= static_cast<size_t>(q);
    c.values.assign(t * rank, 0);
    return c;
}

size_t Cochain::tuple_count() const { return rank ? values.size() / rank : 0; }

size_t Cochain::tuple_index(const std::vector<int>& g) const {
    size_t t = 0;
    for (int x : g) t = t * group_order + x;
    return t;
}

ZmVec Cochain::at_index(size_t t) const {
    return ZmVec(values.begin() + static_cast<long>(t * rank), values.begin() + static_cast<long>((t + 1) * rank));
}

ZmVec Cochain::at(const std::vector<int>& g) const { return at_index(tuple_index(g)); }

void Cochain::set_index(size_t t, const ZmVec& v) { std::copy(v.begin(), v.end(), values.begin() + static_cast<long>(t * rank)); }

void Cochain::set(const std::vector<int>& g, const ZmVec& v) { set_index(tuple_index(g), v); }

namespace {

std::vector<int> decode_tuple(size_t t, int n, int q) {
    std::vector<int> g(n);
    for (int i = n - 1; i >= 0; --i) {
        g[i] = static_cast<int>(t % q);
        t /= q;
    }
    return g;
}

}  // namespace

Cochain coboundary(const FiniteGroup& G, const GModule& M, const Cochain& c) {
    int n = c.degree, q = G.order(), r = M.rank();
    Cochain d = Cochain::zero(n + 1, q, r);
    size_t T = d.tuple_count();
    std::vector<int> g(n + 1), h(n);
    for (size_t t = 0; t < T; ++t) {
        g = decode_tuple(t, n + 1, q);
        std::vector<i64> acc(r, 0);
        // g1 . c(g2..)
        for (int i = 0; i < n; ++i) h[i] = g[i + 1];
        ZmVec v = M.act(g[0], c.at(h));
        for (int i = 0; i < r; ++i) acc[i] += v[i];
        for (int k = 1; k <= n; ++k) {
            for (int i = 0, j = 0; i <= n; ++i) {
                if (i == k) continue;
                h[j++] = (i == k - 1) ? G.mul(g[k - 1], g[k]) : g[i];
            }
            ZmVec w = c.at(h);
            for (int i = 0; i < r; ++i) acc[i] += (k % 2 ? -w[i] : w[i]);
        }
        for (int i = 0; i < n; ++i) h[i] = g[i];
        ZmVec w = c.at(h);
        for (int i = 0; i < r; ++i) acc[i] += ((n + 1) % 2 ? -w[i] : w[i]);
        d.set_index(t, M.reduce(acc));
    }
    return d;
}

std::optional<std::vector<int>> cocycle_violation(const FiniteGroup& G, const GModule& M, const Cochain& z) {
    Cochain d = coboundary(G, M, z);
    for (size_t t = 0; t < d.tuple_count(); ++t)
        for (int i = 0; i < d.rank; ++i)
            if (d.values[t * d.rank + i]) return decode_tuple(t, d.degree, d.group_order);
    return std::nullopt;
}

bool is_normalized(const FiniteGroup& G, const Cochain& c) {
    for (size_t t = 0; t < c.tuple_count(); ++t) {
        auto g = decode_tuple(t, c.degree, c.group_order);
        if (std::find(g.begin(), g.end(), G.identity()) == g.end()) continue;
        for (int i = 0; i < c.rank; ++i)
            if (c.values[t * c.rank + i]) return false;
    }
    return true;
}

Cochain add_cochains(const GModule& M, const Cochain& a, const Cochain& b) {
    Cochain c = a;
    for (size_t k = 0; k < c.values.size(); ++k) c.values[k] = mod_norm(a.values[k] + b.values[k], M.factors[k % M.rank()]);
    return c;
}

Cochain scale_cochain(const GModule& M, const Cochain& a, i64 k) {
    Cochain c = a;
    for (size_t i = 0; i < c.values.size(); ++i) c.values[i] = mod_norm(a.values[i] * k, M.factors[i % M.rank()]);
    return c;
}

// ------------------------------------------------------------------ subquotient core

namespace {

// ker(D) / (im(Dprev) + R) inside F = (Z/e)^k, where a middle coordinate j carries Z/mid[j]
// (R = sum mid[j] F e_j) and row i of D is read mod row_mod[i].
struct Subquotient {
    i64 e = 1;
    std::vector<i64> mid;
    ZmMatrix V;                 // k x k
    ZmMatrix VinvKeptT;         // k x kept  (transpose of the kept rows of V^{-1})
    std::vector<int> kept;
    std::vector<i64> g;         // per kept coordinate: y_i ranges over (e/g_i) Z/e
    ModQuotient q;

    ZmVec c_of(const ZmVec& x) const {
        int K = static_cast<int>(kept.size());
        ZmVec y(K, 0);
        for (size_t j = 0; j < x.size(); ++j) {
            i64 v = mod_norm(x[j], e);
            if (!v) continue;
            const i64* row = &VinvKeptT.a[j * K];
            for (int i = 0; i < K; ++i) y[i] = (y[i] + v * row[i]) % e;
        }
        for (int i = 0; i < K; ++i) {
            i64 step = e / g[i];
            if (y[i] % step) throw std::logic_error("subquotient: vector is not in the kernel");
            y[i] /= step;
        }
        return y;
    }
    ZmVec coords(const ZmVec& x) const { return q.coords(c_of(x)); }
    ZmVec lift(const ZmVec& coords) const {
        ZmVec c = q.lift(coords);
        int k = V.rows;
        ZmVec x(k, 0);
        for (size_t i = 0; i < kept.size(); ++i) {
            i64 yi = c[i] % g[i] * (e / g[i]) % e;
            if (!yi) continue;
            for (int r = 0; r < k; ++r) x[r] = (x[r] + V(r, kept[i]) * yi) % e;
        }
        for (int r = 0; r < k; ++r) x[r] %= mid[r];
        return x;
    }
};

Subquotient build_subquotient(i64 e, const std::vector<i64>& mid, const std::vector<i64>& row_mod, ZmMatrix D,
                              const ZmMatrix* Dprev) {
    Subquotient s;
    s.e = e;
    s.mid = mid;
    int k = static_cast<int>(mid.size());
    for (int i = 0; i < D.rows; ++i) {
        i64 sc = e / row_mod[i];
        if (sc == 1) continue;
        for (int j = 0; j < D.cols; ++j) D(i, j) = D(i, j) * sc % e;
    }
    ZmMatrix Vinv;
    std::vector<i64> diag;
    if (D.rows == 0) {
        s.V = ZmMatrix::identity(e, k);
        Vinv = s.V;
    } else {
        ModSnf sn = mod_snf(D, false);
        s.V = std::move(sn.V);
        Vinv = std::move(sn.Vinv);
        diag = std::move(sn.diag);
    }
    for (int i = 0; i < k; ++i) {
        i64 gi = (i < static_cast<int>(diag.size()) && diag[i] != 0) ? diag[i] : e;
        if (gi == 1) continue;
        s.kept.push_back(i);
        s.g.push_back(gi);
    }
    int K = static_cast<int>(s.kept.size());
    s.VinvKeptT = ZmMatrix(e, k, K);
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < k; ++j) s.VinvKeptT(j, i) = Vinv(s.kept[i], j);
    // relations in c-coordinates
    std::vector<ZmVec> rels;
    if (Dprev)
        for (int j = 0; j < Dprev->cols; ++j) {
            ZmVec col = Dprev->col(j);
            bool nz = false;
            for (auto v : col) nz = nz || v;
            if (!nz) continue;
            ZmVec c = s.c_of(col);
            bool cz = true;
            for (auto v : c) cz = cz && !v;
            if (!cz) rels.push_back(std::move(c));
        }
    for (int j = 0; j < k; ++j) {
        if (mid[j] == e) continue;
        ZmVec col(k, 0);
        col[j] = mid[j];
        ZmVec c = s.c_of(col);
        bool cz = true;
        for (auto v : c) cz = cz && !v;
        if (!cz) rels.push_back(std::move(c));
    }
    for (int i = 0; i < K; ++i) {
        if (s.g[i] == e) continue;
        ZmVec c(K, 0);
        c[i] = s.g[i];
        rels.push_back(std::move(c));
    }
    ZmMatrix R(e, K, static_cast<int>(rels.size()));
    for (size_t j = 0; j < rels.size(); ++j)
        for (int i = 0; i < K; ++i) R(i, static_cast<int>(j)) = rels[j][i];
    s.q = mod_quotient(R);
    return s;
}

size_t ipow(size_t b, int n) {
    size_t r = 1;
    for (int i = 0; i < n; ++i) r *= b;
    return r;
}

// coboundary matrix on normalised cochains, degree n -> n+1, entries mod e (integer lifts)
ZmMatrix bar_matrix(const FiniteGroup& G, const GModule& M, int n, i64 e, const std::vector<int>& nonid,
                    const std::vector<int>& pos, i64 budget) {
    int q1 = static_cast<int>(nonid.size()), r = M.rank();
    size_t rows = ipow(q1, n + 1) * r, cols = ipow(q1, n) * r;
    if (static_cast<double>(rows) * static_cast<double>(cols) > static_cast<double>(budget))
        throw BudgetExceeded("cohomology: coboundary matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                             " exceeds budget");
    ZmMatrix D(e, static_cast<int>(rows), static_cast<int>(cols));
    std::vector<int> g(n + 1), h(n);
    auto norm_index = [&](const std::vector<int>& t) -> long {
        long idx = 0;
        for (int x : t) {
            if (x == G.identity()) return -1;
            idx = idx * q1 + pos[x];
        }
        return idx;
    };
    size_t T = ipow(q1, n + 1);
    for (size_t t = 0; t < T; ++t) {
        size_t tt = t;
        for (int i = n; i >= 0; --i) {
            g[i] = nonid[tt % q1];
            tt /= q1;
        }
        auto add = [&](long col_tuple, int i, int j, i64 v) {
            if (col_tuple < 0) return;
            i64& x = D(static_cast<int>(t * r + i), static_cast<int>(col_tuple * r + j));
            x = mod_norm(x + v, e);
        };
        for (int i = 0; i < n; ++i) h[i] = g[i + 1];
        long c0 = norm_index(h);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) add(c0, i, j, M.action[g[0]](i, j));
        for (int k = 1; k <= n; ++k) {
            for (int i = 0, j = 0; i <= n; ++i) {
                if (i == k) continue;
                h[j++] = (i == k - 1) ? G.mul(g[k - 1], g[k]) : g[i];
            }
            long ck = norm_index(h);
            for (int i = 0; i < r; ++i) add(ck, i, i, k % 2 ? -1 : 1);
        }
        for (int i = 0; i < n; ++i) h[i] = g[i];
        long cl = norm_index(h);
        for (int i = 0; i < r; ++i) add(cl, i, i, (n + 1) % 2 ? -1 : 1);
    }
    return D;
}

GModule sub_module(const GModule& M, const std::vector<int>& idx) {
    GModule S;
    for (int i : idx) S.factors.push_back(M.factors[i]);
    i64 e = std::max<i64>(2, S.exponent());
    for (const auto& A : M.action) {
        ZmMatrix B(e, static_cast<int>(idx.size()), static_cast<int>(idx.size()));
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = 0; b < idx.size(); ++b) B(static_cast<int>(a), static_cast<int>(b)) = mod_norm(A(idx[a], idx[b]), e);
        S.action.push_back(B);
    }
    return S;
}

}  // namespace

// ------------------------------------------------------------------ bar cohomology

struct CohomologyGroup::Impl {
    FiniteGroup G;
    GModule M;
    int n = 0;
    std::vector<int> nonid, pos;
    struct Block {
        std::vector<int> idx;  // module coordinates
        std::shared_ptr<const Subquotient> sq;
        int offset = 0;        // position of its coordinates in the concatenated vector
    };
    std::vector<Block> blocks;
    i64 E = 1;
    std::vector<i64> wfac;  // concatenated block factors
    ModQuotient fin;
    std::vector<i64> factors;
};

int CohomologyGroup::degree() const { return impl->n; }
const std::vector<i64>& CohomologyGroup::invariant_factors() const { return impl->factors; }
const FiniteGroup& CohomologyGroup::group() const { return impl->G; }
const GModule& CohomologyGroup::module() const { return impl->M; }

BigInt CohomologyGroup::order() const {
    BigInt o = 1;
    for (i64 f : impl->factors) o *= f;
    return o;
}

CohomologyGroup cohomology(const FiniteGroup& G, const GModule& M, int n, const CohomologyOptions& opt) {
    if (n < 0 || n > opt.max_degree) throw BudgetExceeded("cohomology degree " + std::to_string(n) + " out of range");
    validate_module(G, M);
    auto impl = std::make_shared<CohomologyGroup::Impl>();
    impl->G = G;
    impl->M = M;
    impl->n = n;
    impl->pos.assign(G.order(), -1);
    for (int g = 0; g < G.order(); ++g)
        if (g != G.identity()) {
            impl->pos[g] = static_cast<int>(impl->nonid.size());
            impl->nonid.push_back(g);
        }
    // split the module into blocks that the action does not mix
    int r = M.rank();
    std::vector<int> comp(r);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int a) { return comp[a] == a ? a : comp[a] = find(comp[a]); };
    for (const auto& A : M.action)
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (i != j && mod_norm(A(i, j), M.factors[i])) comp[find(i)] = find(j);
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < r; ++i) groups[find(i)].push_back(i);
    std::map<std::pair<std::vector<i64>, std::vector<i64>>, std::shared_ptr<const Subquotient>> cache;
    for (auto& [root, idx] : groups) {
        GModule S = sub_module(M, idx);
        std::vector<i64> key_act;
        for (const auto& A : S.action)
            for (int i = 0; i < S.rank(); ++i)
                for (int j = 0; j < S.rank(); ++j) key_act.push_back(mod_norm(A(i, j), S.factors[i]));
        auto key = std::make_pair(S.factors, key_act);
        auto it = cache.find(key);
        std::shared_ptr<const Subquotient> sq;
        if (it != cache.end()) {
            sq = it->second;
        } else {
            i64 e = S.exponent();
            int rs = S.rank();
            size_t kn = ipow(impl->nonid.size(), n);
            std::vector<i64> mid(kn * rs), rowm(kn * impl->nonid.size() * rs);
            for (size_t t = 0; t < mid.size(); ++t) mid[t] = S.factors[t % rs];
            for (size_t t = 0; t < rowm.size(); ++t) rowm[t] = S.factors[t % rs];
            ZmMatrix D = bar_matrix(G, S, n, e, impl->nonid, impl->pos, opt.max_matrix_entries);
            if (n > 0) {
                ZmMatrix Dp = bar_matrix(G, S, n - 1, e, impl->nonid, impl->pos, opt.max_matrix_entries);
                sq = std::make_shared<Subquotient>(build_subquotient(e, mid, rowm, std::move(D), &Dp));
            } else {
                sq = std::make_shared<Subquotient>(build_subquotient(e, mid, rowm, std::move(D), nullptr));
            }
            cache[key] = sq;
        }
        CohomologyGroup::Impl::Block b{idx, sq, static_cast<int>(impl->wfac.size())};
        for (i64 f : sq->q.factors) impl->wfac.push_back(f);
        impl->blocks.push_back(std::move(b));
    }
    impl->E = 2;
    for (i64 f : impl->wfac) impl->E = lcm64(impl->E, f);
    int K = static_cast<int>(impl->wfac.size());
    ZmMatrix R(impl->E, K, K);
    for (int i = 0; i < K; ++i) R(i, i) = impl->wfac[i] % impl->E;
    impl->fin = mod_quotient(R);
    impl->factors = impl->fin.factors;
    CohomologyGroup H;
    H.impl = impl;
    return H;
}

ZmVec CohomologyGroup::class_of(const Cochain& z) const {
    const Impl& I = *impl;
    if (z.degree != I.n || z.group_order != I.G.order() || z.rank != I.M.rank())
        throw ValidationError("class_of: cochain shape does not match the cohomology group");
    if (!is_normalized(I.G, z)) throw ValidationError("class_of: cochain is not normalised");
    if (auto v = cocycle_violation(I.G, I.M, z)) {
        std::ostringstream os;
        os << "not a cocycle: identity fails at (";
        for (size_t i = 0; i < v->size(); ++i) os << (i ? "," : "") << I.G.label((*v)[i]);
        os << ")";
        throw ValidationError(os.str());
    }
    int q1 = static_cast<int>(I.nonid.size());
    size_t kn = ipow(q1, I.n);
    ZmVec w(I.wfac.size(), 0);
    std::vector<int> g(I.n);
    for (const auto& b : I.blocks) {
        int rs = static_cast<int>(b.idx.size());
        ZmVec x(kn * rs);
        for (size_t t = 0; t < kn; ++t) {
            size_t tt = t;
            for (int i = I.n - 1; i >= 0; --i) {
                g[i] = I.nonid[tt % q1];
                tt /= q1;
            }
            size_t full = z.tuple_index(g);
            for (int j = 0; j < rs; ++j) x[t * rs + j] = z.values[full * z.rank + b.idx[j]];
        }
        ZmVec c = b.sq->coords(x);
        for (size_t k = 0; k < c.size(); ++k) w[b.offset + k] = c[k];
    }
    return I.fin.coords(w);
}

Cochain CohomologyGroup::representative(const ZmVec& coords) const {
    const Impl& I = *impl;
    if (coords.size() != I.factors.size()) throw ValidationError("representative: wrong coordinate count");
    ZmVec w = I.fin.lift(coords);
    Cochain z = Cochain::zero(I.n, I.G.order(), I.M.rank());
    int q1 = static_cast<int>(I.nonid.size());
    size_t kn = ipow(q1, I.n);
    std::vector<int> g(I.n);
    for (const auto& b : I.blocks) {
        ZmVec c(b.sq->q.factors.size());
        for (size_t k = 0; k < c.size(); ++k) c[k] = w[b.offset + k] % b.sq->q.factors[k];
        ZmVec x = b.sq->lift(c);
        int rs = static_cast<int>(b.idx.size());
        for (size_t t = 0; t < kn; ++t) {
            size_t tt = t;
            for (int i = I.n - 1; i >= 0; --i) {
                g[i] = I.nonid[tt % q1];
                tt /= q1;
            }
            size_t full = z.tuple_index(g);
            for (int j = 0; j < rs; ++j) z.values[full * z.rank + b.idx[j]] = x[t * rs + j] % I.M.factors[b.idx[j]];
        }
    }
    return z;
}

std::vector<ZmVec> CohomologyGroup::all_classes(size_t cap) const {
    const auto& f = impl->factors;
    BigInt total = order();
    if (total > cap) throw BudgetExceeded("all_classes: group too large to enumerate");
    std::vector<ZmVec> out;
    ZmVec cur(f.size(), 0);
    for (;;) {
        out.push_back(cur);
        size_t i = 0;
        while (i < f.size()) {
            if (++cur[i] < f[i]) break;
            cur[i] = 0;
            ++i;
        }
        if (i == f.size()) break;
    }
    return out;
}

ZmVec CohomologyGroup::add(const ZmVec& a, const ZmVec& b) const {
    ZmVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mod_norm(a[i] + b[i], impl->factors[i]);
    return r;
}

ZmVec CohomologyGroup::scale(const ZmVec& a, i64 k) const {
    ZmVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mod_norm(a[i] * k, impl->factors[i]);
    return r;
}

bool CohomologyGroup::is_zero(const ZmVec& a) const {
    for (i64 v : a)
        if (v) return false;
    return true;
}

i64 CohomologyGroup::class_order(const ZmVec& a) const {
    i64 o = 1;
    for (size_t i = 0; i < a.size(); ++i) o = lcm64(o, impl->factors[i] / gcd64(a[i], impl->factors[i]));
    return o;
}

// ------------------------------------------------------------------ functoriality

ModuleMap identity_module_map(const GModule& M) {
    return {ZmMatrix::identity(std::max<i64>(2, M.exponent()), M.rank())};
}

void check_module_map(const GModule& M, const GModule& Mp, const ModuleMap& mu) {
    const ZmMatrix& A = mu.matrix;
    if (A.rows != Mp.rank() || A.cols != M.rank()) throw ValidationError("module map has wrong shape");
    for (int j = 0; j < M.rank(); ++j)
        for (int i = 0; i < Mp.rank(); ++i)
            if ((A(i, j) * M.factors[j]) % Mp.factors[i])
                throw ValidationError("module map is not well defined on generator " + std::to_string(j));
}

Cochain pullback_cochain(const FiniteGroup& Gp, const GroupHom& phi, const GModule& M, const GModule& Mp,
                         const ModuleMap& mu, const Cochain& z) {
    Cochain out = Cochain::zero(z.degree, Gp.order(), Mp.rank());
    std::vector<int> gp(z.degree), g(z.degree);
    for (size_t t = 0; t < out.tuple_count(); ++t) {
        size_t tt = t;
        for (int i = z.degree - 1; i >= 0; --i) {
            gp[i] = static_cast<int>(tt % Gp.order());
            tt /= Gp.order();
        }
        for (int i = 0; i < z.degree; ++i) g[i] = phi(gp[i]);
        ZmVec v = z.at(g);
        ZmVec w(Mp.rank(), 0);
        for (int i = 0; i < Mp.rank(); ++i) {
            i64 s = 0, d = Mp.factors[i];
            for (int j = 0; j < M.rank(); ++j) s = (s + mu.matrix(i, j) % d * v[j]) % d;
            w[i] = s;
        }
        out.set_index(t, w);
    }
    (void)M;
    return out;
}

ZmVec map_on_cohomology(const GroupHom& phi, const ModuleMap& mu, const CohomologyGroup& source,
                        const CohomologyGroup& target, const ZmVec& cls) {
    const GModule& M = source.module();
    const GModule& Mp = target.module();
    const FiniteGroup& Gp = target.group();
    if (phi.source.order() != Gp.order() || phi.target.order() != source.group().order())
        throw ValidationError("map_on_cohomology: group hom does not match");
    if (source.degree() != target.degree()) throw ValidationError("map_on_cohomology: degree mismatch");
    check_module_map(M, Mp, mu);
    // mu(phi(g').m) = g'.mu(m) on generators
    for (int gp = 0; gp < Gp.order(); ++gp)
        for (int j = 0; j < M.rank(); ++j) {
            ZmVec e(M.rank(), 0);
            e[j] = 1;
            ZmVec a = M.act(phi(gp), e);
            ZmVec lhs(Mp.rank(), 0), mu_e(Mp.rank(), 0);
            for (int i = 0; i < Mp.rank(); ++i) {
                i64 s = 0, d = Mp.factors[i];
                for (int k = 0; k < M.rank(); ++k) s = (s + mu.matrix(i, k) % d * a[k]) % d;
                lhs[i] = s;
                mu_e[i] = mu.matrix(i, j) % d;
            }
            if (lhs != Mp.act(gp, mu_e))
                throw ValidationError("module map not compatible with the group hom at element " + std::to_string(gp));
        }
    Cochain z = source.representative(cls);
    return target.class_of(pullback_cochain(Gp, phi, M, Mp, mu, z));
}

// ------------------------------------------------------------------ cyclic groups

ZmVec periodic_value(const FiniteGroup& G, int x, const GModule& M, const Cochain& z) {
    int s = G.element_order(x);
    if (s != G.order()) throw ValidationError("periodic_value: element does not generate the group");
    ZmVec acc(M.rank(), 0);
    auto xp = [&](int i) { return G.pow(x, i); };
    switch (z.degree) {
        case 1: return M.reduce(z.at({x}));
        case 2:
            for (int i = 1; i < s; ++i) acc = M.add(acc, z.at({xp(i), x}));
            return acc;
        case 3:
            for (int i = 1; i < s; ++i) acc = M.add(acc, z.at({x, xp(i), x}));
            return acc;
        default: throw ValidationError("periodic_value: degree must be 1, 2 or 3");
    }
}

struct PeriodicCohomology::Core {
    Subquotient sq;
    ZmMatrix kernel_map;  // the map whose kernel is taken (unscaled)
};

PeriodicCohomology::PeriodicCohomology(const FiniteGroup& G, int x, const GModule& M, int n)
    : G_(G), M_(M), x_(x), n_(n) {
    validate_module(G, M);
    if (G.element_order(x) != G.order()) throw ValidationError("PeriodicCohomology: group not generated by x");
    int r = M.rank();
    i64 e = std::max<i64>(2, M.exponent());
    ZmMatrix Nm(e, r, r), Xm(e, r, r);
    for (int i = 0; i < G.order(); ++i) {
        const ZmMatrix& A = M.action[G.pow(x, i)];
        for (int a = 0; a < r * r; ++a) Nm.a[a] = (Nm.a[a] + mod_norm(A.a[a], e)) % e;
    }
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) Xm(a, b) = mod_norm(M.action[x](a, b) - (a == b), e);
    auto core = std::make_shared<Core>();
    if (n == 0) {
        core->sq = build_subquotient(e, M.factors, M.factors, Xm, nullptr);
        core->kernel_map = Xm;
    } else if (n % 2 == 1) {
        core->sq = build_subquotient(e, M.factors, M.factors, Nm, &Xm);
        core->kernel_map = Nm;
    } else {
        core->sq = build_subquotient(e, M.factors, M.factors, Xm, &Nm);
        core->kernel_map = Xm;
    }
    factors_ = core->sq.q.factors;
    core_ = core;
}

bool PeriodicCohomology::in_kernel(const ZmVec& m) const {
    ZmVec v = mul(core_->kernel_map, M_.reduce(m));
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] % M_.factors[i]) return false;
    return true;
}

ZmVec PeriodicCohomology::class_of_value(const ZmVec& m) const {
    if (!in_kernel(m)) throw ValidationError("periodic value is not in the kernel");
    return core_->sq.coords(M_.reduce(m));
}

ZmVec PeriodicCohomology::class_of(const Cochain& z) const {
    if (z.degree != n_) throw ValidationError("PeriodicCohomology::class_of: degree mismatch");
    if (auto v = cocycle_violation(G_, M_, z)) throw ValidationError("PeriodicCohomology::class_of: not a cocycle");
    return class_of_value(periodic_value(G_, x_, M_, z));
}

Cochain cyclic_cup_cocycle(int s, i64 l, i64 u, i64 m) {
    Cochain z = Cochain::zero(3, s, 1);
    std::vector<i64> partial(s + 1, 0);  // partial[i] = sum_{p<i} u^p
    i64 up = 1 % l;
    for (int i = 0; i < s; ++i) {
        partial[i + 1] = (partial[i] + up) % l;
        up = up * mod_norm(u, l) % l;
    }
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            for (int k = 0; k < s; ++k)
                if (j + k >= s) z.set({i, j, k}, {partial[i] * mod_norm(m, l) % l});
    return z;
}

Cochain cyclic_reference_generator(int s, i64 l) { return cyclic_cup_cocycle(s, l, 1, l / gcd64(l, s)); }

}  // namespace crossalg
