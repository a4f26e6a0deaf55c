#include "crossalg/rings.hpp"

#include "crossalg/errors.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace crossalg {

// ------------------------------------------------------------------ element arithmetic

ZmVec Algebra::unit_vector(int i) const {
    ZmVec v(n(), 0);
    v[i] = 1 % m;
    return v;
}

ZmVec Algebra::mul(const ZmVec& x, const ZmVec& y) const {
    int N = n();
    ZmVec out(N, 0);
    for (int i = 0; i < N; ++i) {
        if (!x[i]) continue;
        for (int j = 0; j < N; ++j) {
            if (!y[j]) continue;
            i64 c = x[i] * y[j] % m;
            for (auto [l, v] : table[static_cast<size_t>(i) * N + j]) out[l] = (out[l] + c * v) % m;
        }
    }
    return out;
}

ZmVec Algebra::add(const ZmVec& x, const ZmVec& y) const {
    ZmVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = (x[i] + y[i]) % m;
    return r;
}

ZmVec Algebra::sub(const ZmVec& x, const ZmVec& y) const {
    ZmVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = mod_norm(x[i] - y[i], m);
    return r;
}

ZmVec Algebra::neg(const ZmVec& x) const {
    ZmVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = mod_norm(-x[i], m);
    return r;
}

ZmVec Algebra::scale(const ZmVec& x, i64 c) const {
    ZmVec r(x.size());
    c = mod_norm(c, m);
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] * c % m;
    return r;
}

ZmVec Algebra::base_one() const { return base ? base->one : ZmVec{1 % m}; }

ZmVec Algebra::smul(const ZmVec& s, const ZmVec& x) const {
    if (!base) return scale(x, s[0]);
    ZmVec out(n(), 0);
    for (int i = 0; i < k; ++i) {
        ZmVec b = base->mul(s, block(x, i));
        std::copy(b.begin(), b.end(), out.begin() + static_cast<long>(i) * d);
    }
    return out;
}

ZmVec Algebra::sbasis(int i) const {
    ZmVec v(n(), 0);
    ZmVec o = base_one();
    std::copy(o.begin(), o.end(), v.begin() + static_cast<long>(i) * d);
    return v;
}

ZmVec Algebra::block(const ZmVec& x, int i) const {
    return ZmVec(x.begin() + static_cast<long>(i) * d, x.begin() + static_cast<long>(i + 1) * d);
}

ZmVec Algebra::pow(ZmVec x, i64 e) const {
    ZmVec r = one;
    while (e > 0) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

BigInt Algebra::order() const {
    BigInt o = 1;
    for (int i = 0; i < n(); ++i) o *= m;
    return o;
}

bool Algebra::is_commutative() const {
    int N = n();
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (mul(unit_vector(i), unit_vector(j)) != mul(unit_vector(j), unit_vector(i))) return false;
    return true;
}

ZmMatrix Algebra::left_mult(const ZmVec& x) const {
    ZmMatrix L(m, n(), n());
    for (int j = 0; j < n(); ++j) L.set_col(j, mul(x, unit_vector(j)));
    return L;
}

ZmMatrix Algebra::right_mult(const ZmVec& x) const {
    ZmMatrix R(m, n(), n());
    for (int j = 0; j < n(); ++j) R.set_col(j, mul(unit_vector(j), x));
    return R;
}

std::optional<ZmVec> Algebra::inverse(const ZmVec& x) const {
    ZmMatrix L = left_mult(x);
    if (!invertible_mod(L)) return std::nullopt;
    return crossalg::mul(inverse_mod(L), one);
}

bool Algebra::is_zero(const ZmVec& x) const {
    return std::all_of(x.begin(), x.end(), [](i64 v) { return v == 0; });
}

size_t Algebra::code(const ZmVec& x) const {
    size_t c = 0;
    for (int i = n(); i-- > 0;) c = c * static_cast<size_t>(m) + static_cast<size_t>(mod_norm(x[i], m));
    return c;
}

ZmVec Algebra::decode(size_t c) const {
    ZmVec x(n());
    for (int i = 0; i < n(); ++i) {
        x[i] = static_cast<i64>(c % m);
        c /= m;
    }
    return x;
}

std::vector<ZmVec> Algebra::elements(size_t cap) const {
    if (order() > cap) throw BudgetExceeded("algebra too large to enumerate (" + name + ")");
    size_t total = static_cast<size_t>(order());
    std::vector<ZmVec> out;
    out.reserve(total);
    for (size_t c = 0; c < total; ++c) out.push_back(decode(c));
    return out;
}

void validate_algebra(const Algebra& A) {
    int N = A.n();
    if (static_cast<int>(A.table.size()) != N * N || static_cast<int>(A.one.size()) != N)
        throw ValidationError("algebra: structure constant table has wrong size");
    if (A.base && A.base->n() != A.d) throw ValidationError("algebra: base rank mismatch");
    std::vector<ZmVec> prod(static_cast<size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) prod[i * N + j] = A.mul(A.unit_vector(i), A.unit_vector(j));
    for (int i = 0; i < N; ++i) {
        if (A.mul(A.one, A.unit_vector(i)) != A.unit_vector(i) || A.mul(A.unit_vector(i), A.one) != A.unit_vector(i))
            throw ValidationError("algebra: unit fails on basis element " + std::to_string(i));
        for (int j = 0; j < N; ++j)
            for (int l = 0; l < N; ++l)
                if (A.mul(prod[i * N + j], A.unit_vector(l)) != A.mul(A.unit_vector(i), prod[j * N + l]))
                    throw ValidationError("algebra: associativity fails at basis triple (" + std::to_string(i) + "," +
                                          std::to_string(j) + "," + std::to_string(l) + ")");
    }
    if (A.base) {
        for (int a = 0; a < A.d; ++a) {
            ZmVec s = A.base->unit_vector(a);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    ZmVec lhs = A.smul(s, prod[i * N + j]);
                    if (A.mul(A.smul(s, A.unit_vector(i)), A.unit_vector(j)) != lhs ||
                        A.mul(A.unit_vector(i), A.smul(s, A.unit_vector(j))) != lhs)
                        throw ValidationError("algebra: base is not central/bilinear at (" + std::to_string(a) + "," +
                                              std::to_string(i) + "," + std::to_string(j) + ")");
                }
        }
        if (A.from_base(A.base_one()) != A.one) throw ValidationError("algebra: base unit is not the unit");
    }
}

// ------------------------------------------------------------------ constructors

AlgebraPtr algebra_from_table(i64 m, int n, const std::vector<i64>& c, const ZmVec& one, std::string name) {
    auto A = std::make_shared<Algebra>();
    A->m = m;
    A->d = 1;
    A->k = n;
    A->name = std::move(name);
    A->table.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                i64 v = mod_norm(c[(static_cast<size_t>(i) * n + j) * n + l], m);
                if (v) A->table[i * n + j].push_back({l, v});
            }
    A->one = one;
    for (auto& v : A->one) v = mod_norm(v, m);
    validate_algebra(*A);
    return A;
}

namespace {

// k x k x k constants over S (or over Z/m when S is null)
AlgebraPtr build_over(i64 m, const AlgebraPtr& S, int k, const std::vector<ZmVec>& c, const std::vector<ZmVec>& unit,
                      std::string name) {
    auto A = std::make_shared<Algebra>();
    A->m = m;
    A->base = S;
    A->d = S ? S->n() : 1;
    A->k = k;
    A->name = std::move(name);
    int d = A->d, N = d * k;
    auto smul = [&](const ZmVec& x, const ZmVec& y) { return S ? S->mul(x, y) : ZmVec{x[0] * y[0] % m}; };
    auto sbasis = [&](int a) { return S ? S->unit_vector(a) : ZmVec{1 % m}; };
    A->table.resize(static_cast<size_t>(N) * N);
    std::vector<ZmVec> sprod(static_cast<size_t>(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) sprod[a * d + b] = smul(sbasis(a), sbasis(b));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l) {
                const ZmVec& cij = c[(static_cast<size_t>(i) * k + j) * k + l];
                if (std::all_of(cij.begin(), cij.end(), [](i64 v) { return v == 0; })) continue;
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b) {
                        ZmVec v = smul(sprod[a * d + b], cij);
                        for (int t = 0; t < d; ++t)
                            if (v[t]) A->table[(i * d + a) * N + (j * d + b)].push_back({l * d + t, v[t]});
                    }
            }
    // merge duplicate targets
    for (auto& e : A->table) {
        std::map<int, i64> acc;
        for (auto [l, v] : e) acc[l] = (acc[l] + v) % m;
        e.clear();
        for (auto [l, v] : acc)
            if (v) e.push_back({l, v});
    }
    A->one.assign(N, 0);
    for (int l = 0; l < k; ++l)
        for (int t = 0; t < d; ++t) A->one[l * d + t] = mod_norm(unit[l][t], m);
    validate_algebra(*A);
    return A;
}

std::vector<ZmVec> constants_of(const Algebra& A) {
    int k = A.k;
    std::vector<ZmVec> c(static_cast<size_t>(k) * k * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            ZmVec p = A.mul(A.sbasis(i), A.sbasis(j));
            for (int l = 0; l < k; ++l) c[(static_cast<size_t>(i) * k + j) * k + l] = A.block(p, l);
        }
    return c;
}

std::vector<ZmVec> unit_of(const Algebra& A) {
    std::vector<ZmVec> u;
    for (int l = 0; l < A.k; ++l) u.push_back(A.block(A.one, l));
    return u;
}

bool same_base(const Algebra& A, const Algebra& B) {
    if (A.m != B.m || A.d != B.d) return false;
    if (!A.base || !B.base) return !A.base && !B.base;
    return A.base == B.base || (A.base->table == B.base->table && A.base->one == B.base->one);
}

// polynomial helpers mod q (low coefficient first)
std::vector<i64> poly_mod(std::vector<i64> a, const std::vector<i64>& f, i64 p) {
    // f monic over F_p
    while (a.size() >= f.size()) {
        i64 lead = mod_norm(a.back(), p);
        size_t shift = a.size() - f.size();
        for (size_t i = 0; i < f.size(); ++i) a[shift + i] = mod_norm(a[shift + i] - lead * f[i], p);
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

bool irreducible_mod_p(const std::vector<i64>& f, i64 p) {
    int deg = static_cast<int>(f.size()) - 1;
    for (int dg = 1; dg <= deg / 2; ++dg) {
        // all monic g of degree dg
        i64 count = 1;
        for (int i = 0; i < dg; ++i) count *= p;
        for (i64 c = 0; c < count; ++c) {
            std::vector<i64> g(dg + 1);
            i64 t = c;
            for (int i = 0; i < dg; ++i) {
                g[i] = t % p;
                t /= p;
            }
            g[dg] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

AlgebraPtr poly_quotient(i64 q, const std::vector<i64>& low, std::string name) {
    int k = static_cast<int>(low.size());
    // x^t for t < 2k-1 as coefficient vectors
    std::vector<ZmVec> xp(2 * k - 1, ZmVec(k, 0));
    for (int t = 0; t < k; ++t) xp[t][t] = 1 % q;
    for (int t = k; t < 2 * k - 1; ++t) {
        // x * x^{t-1}
        const ZmVec& prev = xp[t - 1];
        ZmVec cur(k, 0);
        for (int i = 0; i + 1 < k; ++i) cur[i + 1] = prev[i];
        i64 top = prev[k - 1];
        for (int i = 0; i < k; ++i) cur[i] = mod_norm(cur[i] - top * low[i], q);
        xp[t] = cur;
    }
    std::vector<i64> c(static_cast<size_t>(k) * k * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l) c[(static_cast<size_t>(i) * k + j) * k + l] = xp[i + j][l];
    ZmVec one(k, 0);
    one[0] = 1 % q;
    return algebra_from_table(q, k, c, one, std::move(name));
}

}  // namespace

AlgebraPtr algebra_over(const AlgebraPtr& S, int k, const std::vector<ZmVec>& c, const std::vector<ZmVec>& unit,
                        std::string name) {
    if (!S) throw ValidationError("algebra_over: base required");
    if (!S->is_commutative()) throw ValidationError("algebra_over: base must be commutative");
    return build_over(S->m, S, k, c, unit, std::move(name));
}

std::vector<ZmVec> base_constants(const Algebra& A) { return constants_of(A); }

std::vector<i64> ring_modulus_polynomial(i64 p, int degree) {
    if (prime_divisors(p) != std::vector<i64>{p}) throw ValidationError("characteristic must be prime");
    if (degree == 1) return {0};
    i64 count = 1;
    for (int i = 0; i < degree; ++i) count *= p;
    for (i64 c = 0; c < count; ++c) {
        std::vector<i64> f(degree + 1);
        i64 t = c;
        for (int i = 0; i < degree; ++i) {
            f[i] = t % p;
            t /= p;
        }
        f[degree] = 1;
        if (f[0] != 0 && irreducible_mod_p(f, p)) return std::vector<i64>(f.begin(), f.end() - 1);
    }
    throw ValidationError("no irreducible polynomial found");
}

AlgebraPtr zmod(i64 m) {
    if (m < 2) throw ValidationError("zmod: modulus must be >= 2");
    return algebra_from_table(m, 1, {1}, {1}, "Z/" + std::to_string(m));
}

AlgebraPtr gf(i64 p, int k) {
    if (k < 1) throw ValidationError("gf: degree must be >= 1");
    return poly_quotient(p, ring_modulus_polynomial(p, k), "GF(" + std::to_string(p) + "^" + std::to_string(k) + ")");
}

AlgebraPtr galois_ring(i64 p, int e, int degree) {
    if (e < 1 || degree < 1) throw ValidationError("galois_ring: bad parameters");
    i64 q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    auto low = ring_modulus_polynomial(p, degree);
    return poly_quotient(q, low, "GR(" + std::to_string(q) + "," + std::to_string(degree) + ")");
}

AlgebraPtr product_ring(const std::vector<AlgebraPtr>& rings) {
    if (rings.empty()) throw ValidationError("product of no rings");
    i64 m = rings[0]->m;
    int N = 0;
    for (auto& r : rings) {
        if (r->m != m) throw ValidationError("product: factors must share the modulus");
        if (r->base) throw ValidationError("product: factors must be Z/m-rings");
        N += r->n();
    }
    auto A = std::make_shared<Algebra>();
    A->m = m;
    A->k = N;
    A->table.resize(static_cast<size_t>(N) * N);
    A->one.assign(N, 0);
    int off = 0;
    std::string nm;
    for (auto& r : rings) {
        int n = r->n();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (auto [l, v] : r->table[i * n + j]) A->table[(off + i) * N + off + j].push_back({off + l, v});
        for (int i = 0; i < n; ++i) A->one[off + i] = r->one[i];
        nm += (nm.empty() ? "" : " x ") + r->name;
        off += n;
    }
    A->name = nm;
    validate_algebra(*A);
    return A;
}

AlgebraPtr map_ring(int points, const AlgebraPtr& k) {
    if (points < 1) throw ValidationError("map_ring: need at least one point");
    std::vector<AlgebraPtr> f(points, k);
    auto A = product_ring(f);
    auto B = std::make_shared<Algebra>(*A);
    B->name = "Map(" + std::to_string(points) + "," + k->name + ")";
    return B;
}

AlgebraPtr build_ring(const RingSpec& s) {
    switch (s.kind) {
        case RingSpec::ZMod: return zmod(s.m);
        case RingSpec::GF: return gf(s.p, s.degree);
        case RingSpec::GaloisRing: return galois_ring(s.p, s.e, s.degree);
        case RingSpec::Product: {
            std::vector<AlgebraPtr> f;
            for (auto& x : s.factors) f.push_back(build_ring(x));
            return product_ring(f);
        }
        case RingSpec::MapRing: {
            if (s.factors.size() != 1) throw ValidationError("map_ring spec needs exactly one coefficient ring");
            return map_ring(s.points, build_ring(s.factors[0]));
        }
    }
    throw ValidationError("unknown ring spec");
}

AlgebraPtr base_algebra(const AlgebraPtr& S) {
    return build_over(S->m, S, 1, {S->one}, {S->one}, S->name + " over itself");
}

AlgebraPtr matrix_algebra(const AlgebraPtr& A, int sz) {
    int kA = A->k, k = sz * sz * kA;
    auto cA = constants_of(*A);
    auto uA = unit_of(*A);
    ZmVec zero(A->d, 0);
    std::vector<ZmVec> c(static_cast<size_t>(k) * k * k, zero);
    auto idx = [&](int p, int q, int i) { return (p * sz + q) * kA + i; };
    for (int p = 0; p < sz; ++p)
        for (int q = 0; q < sz; ++q)
            for (int s = 0; s < sz; ++s)
                for (int i = 0; i < kA; ++i)
                    for (int j = 0; j < kA; ++j)
                        for (int l = 0; l < kA; ++l)
                            c[(static_cast<size_t>(idx(p, q, i)) * k + idx(q, s, j)) * k + idx(p, s, l)] =
                                cA[(static_cast<size_t>(i) * kA + j) * kA + l];
    std::vector<ZmVec> unit(k, zero);
    for (int p = 0; p < sz; ++p)
        for (int l = 0; l < kA; ++l) unit[idx(p, p, l)] = uA[l];
    return build_over(A->m, A->base, k, c, unit, "M_" + std::to_string(sz) + "(" + A->name + ")");
}

AlgebraPtr opposite(const AlgebraPtr& A) {
    auto B = std::make_shared<Algebra>(*A);
    int N = A->n();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) B->table[i * N + j] = A->table[j * N + i];
    B->name = A->name + "^op";
    validate_algebra(*B);
    return B;
}

AlgebraPtr tensor_product(const AlgebraPtr& A, const AlgebraPtr& B) {
    if (!same_base(*A, *B)) throw ValidationError("tensor_product: algebras over different bases");
    int ka = A->k, kb = B->k, k = ka * kb;
    auto cA = constants_of(*A), cB = constants_of(*B);
    auto uA = unit_of(*A), uB = unit_of(*B);
    auto smul = [&](const ZmVec& x, const ZmVec& y) { return A->base ? A->base->mul(x, y) : ZmVec{x[0] * y[0] % A->m}; };
    std::vector<ZmVec> c(static_cast<size_t>(k) * k * k);
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < kb; ++j)
            for (int i2 = 0; i2 < ka; ++i2)
                for (int j2 = 0; j2 < kb; ++j2)
                    for (int l = 0; l < ka; ++l)
                        for (int l2 = 0; l2 < kb; ++l2)
                            c[(static_cast<size_t>(i * kb + j) * k + (i2 * kb + j2)) * k + (l * kb + l2)] =
                                smul(cA[(static_cast<size_t>(i) * ka + i2) * ka + l], cB[(static_cast<size_t>(j) * kb + j2) * kb + l2]);
    std::vector<ZmVec> unit(k);
    for (int l = 0; l < ka; ++l)
        for (int l2 = 0; l2 < kb; ++l2) unit[l * kb + l2] = smul(uA[l], uB[l2]);
    return build_over(A->m, A->base, k, c, unit, A->name + " (x) " + B->name);
}

AlgebraPtr upper_triangular(const AlgebraPtr& S, int sz) {
    std::vector<std::pair<int, int>> pos;
    for (int p = 0; p < sz; ++p)
        for (int q = p; q < sz; ++q) pos.push_back({p, q});
    int k = static_cast<int>(pos.size());
    ZmVec zero(S->n(), 0);
    std::vector<ZmVec> c(static_cast<size_t>(k) * k * k, zero);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (pos[a].second == pos[b].first) {
                int l = static_cast<int>(std::find(pos.begin(), pos.end(), std::make_pair(pos[a].first, pos[b].second)) - pos.begin());
                c[(static_cast<size_t>(a) * k + b) * k + l] = S->one;
            }
    std::vector<ZmVec> unit(k, zero);
    for (int a = 0; a < k; ++a)
        if (pos[a].first == pos[a].second) unit[a] = S->one;
    return build_over(S->m, S, k, c, unit, "T_" + std::to_string(sz) + "(" + S->name + ")");
}

AlgebraPtr forget_base(const AlgebraPtr& A) {
    auto B = std::make_shared<Algebra>(*A);
    B->base = nullptr;
    B->k = A->n();
    B->d = 1;
    return B;
}

std::optional<Rebased> rebase(const AlgebraPtr& X, const AlgebraPtr& R, const ZmMatrix& embed, size_t cap) {
    if (X->base) throw ValidationError("rebase: source must be a Z/m-algebra");
    int n = X->n(), d = R->n();
    if (n % d) return std::nullopt;
    std::vector<ZmVec> rimg;
    for (int a = 0; a < d; ++a) rimg.push_back(crossalg::apply(embed, R->unit_vector(a)));
    BigInt Rord = R->order();
    std::vector<ZmVec> cols, chosen;
    auto try_add = [&](const ZmVec& b) {
        std::vector<ZmVec> c2 = cols;
        for (int a = 0; a < d; ++a) c2.push_back(X->mul(rimg[a], b));
        ZmMatrix M(X->m, n, static_cast<int>(c2.size()));
        for (size_t j = 0; j < c2.size(); ++j) M.set_col(static_cast<int>(j), c2[j]);
        BigInt want = 1;
        for (size_t i = 0; i <= chosen.size(); ++i) want *= Rord;
        if (span_order(M) != want) return false;
        cols = std::move(c2);
        chosen.push_back(b);
        return true;
    };
    // X->one first so that b_0 = 1 when possible
    try_add(X->one);
    for (int i = 0; i < n && static_cast<int>(cols.size()) < n; ++i) try_add(X->unit_vector(i));
    if (static_cast<int>(cols.size()) < n) {
        if (X->order() > cap) return std::nullopt;
        size_t total = static_cast<size_t>(X->order());
        for (size_t c = 1; c < total && static_cast<int>(cols.size()) < n; ++c) try_add(X->decode(c));
    }
    if (static_cast<int>(cols.size()) != n) return std::nullopt;
    ZmMatrix Cinv(X->m, n, n);
    for (int j = 0; j < n; ++j) Cinv.set_col(j, cols[j]);
    ZmMatrix C = inverse_mod(Cinv);
    auto A = std::make_shared<Algebra>();
    A->m = X->m;
    A->base = R;
    A->d = d;
    A->k = n / d;
    A->name = X->name;
    A->table.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ZmVec p = mul(C, X->mul(cols[i], cols[j]));
            for (int l = 0; l < n; ++l)
                if (p[l]) A->table[i * n + j].push_back({l, p[l]});
        }
    A->one = mul(C, X->one);
    validate_algebra(*A);
    return Rebased{A, C, Cinv};
}

// ------------------------------------------------------------------ maps

ZmVec apply(const ZmMatrix& f, const ZmVec& x) { return mul(f, x); }

bool is_ring_hom(const Algebra& A, const Algebra& B, const ZmMatrix& f) {
    if (f.rows != B.n() || f.cols != A.n()) return false;
    if (crossalg::apply(f, A.one) != B.one) return false;
    for (int i = 0; i < A.n(); ++i)
        for (int j = 0; j < A.n(); ++j)
            if (crossalg::apply(f, A.mul(A.unit_vector(i), A.unit_vector(j))) !=
                B.mul(f.col(i), f.col(j)))
                return false;
    return true;
}

bool is_semilinear(const Algebra& A, const ZmMatrix& f, const ZmMatrix& kappa) {
    if (!A.base) return true;
    for (int a = 0; a < A.d; ++a) {
        ZmVec s = A.base->unit_vector(a);
        ZmVec ks = crossalg::apply(kappa, s);
        for (int i = 0; i < A.n(); ++i)
            if (crossalg::apply(f, A.smul(s, A.unit_vector(i))) != A.smul(ks, f.col(i))) return false;
    }
    return true;
}

ZmMatrix semilinear_map(const Algebra& A, const ZmMatrix& kappa, const std::vector<ZmVec>& img) {
    ZmMatrix W(A.m, A.n(), A.n());
    for (int i = 0; i < A.k; ++i)
        for (int a = 0; a < A.d; ++a) {
            ZmVec s = A.base ? A.base->unit_vector(a) : ZmVec{1 % A.m};
            W.set_col(i * A.d + a, A.smul(A.base ? crossalg::apply(kappa, s) : s, img[i]));
        }
    return W;
}

ZmMatrix inner_automorphism(const Algebra& A, const ZmVec& u) {
    auto ui = A.inverse(u);
    if (!ui) throw ValidationError("inner_automorphism: element is not a unit");
    ZmMatrix W(A.m, A.n(), A.n());
    for (int j = 0; j < A.n(); ++j) W.set_col(j, A.mul(A.mul(u, A.unit_vector(j)), *ui));
    return W;
}

namespace {

// words in the generators (with images) until the A-side spans A; nullopt if they do not generate
struct WordBasis {
    std::vector<ZmVec> a, b;
};

std::optional<std::vector<int>> pick_basis(const Algebra& A, const std::vector<ZmVec>& words) {
    std::vector<int> chosen;
    std::vector<ZmVec> cols;
    for (size_t w = 0; w < words.size() && static_cast<int>(chosen.size()) < A.n(); ++w) {
        auto c2 = cols;
        c2.push_back(words[w]);
        ZmMatrix M(A.m, A.n(), static_cast<int>(c2.size()));
        for (size_t j = 0; j < c2.size(); ++j) M.set_col(static_cast<int>(j), c2[j]);
        BigInt want = 1;
        for (size_t j = 0; j < c2.size(); ++j) want *= A.m;
        if (span_order(M) == want) {
            cols = std::move(c2);
            chosen.push_back(static_cast<int>(w));
        }
    }
    if (static_cast<int>(chosen.size()) != A.n()) return std::nullopt;
    return chosen;
}

WordBasis words(const Algebra& A, const std::vector<ZmVec>& gens, const Algebra* B, const std::vector<ZmVec>* img) {
    WordBasis W;
    W.a.push_back(A.one);
    if (B) W.b.push_back(B->one);
    size_t frontier = 0;
    // breadth first up to length n
    for (int len = 0; len < A.n() && W.a.size() < 4096; ++len) {
        size_t end = W.a.size();
        for (size_t w = frontier; w < end; ++w)
            for (size_t g = 0; g < gens.size(); ++g) {
                W.a.push_back(A.mul(W.a[w], gens[g]));
                if (B) W.b.push_back(B->mul(W.b[w], (*img)[g]));
            }
        frontier = end;
    }
    return W;
}

}  // namespace

std::vector<ZmVec> algebra_generators(const Algebra& A) {
    std::vector<ZmVec> gens;
    for (int i = 0; i < A.n(); ++i) {
        auto W = words(A, gens, nullptr, nullptr);
        if (pick_basis(A, W.a)) break;
        gens.push_back(A.unit_vector(i));
    }
    return gens;
}

std::optional<ZmMatrix> find_algebra_isomorphism(const Algebra& A, const Algebra& B, size_t cap) {
    if (A.m != B.m || A.n() != B.n()) return std::nullopt;
    auto gens = algebra_generators(A);
    BigInt total = 1;
    for (size_t g = 0; g < gens.size(); ++g) total *= B.order();
    if (total > cap) throw BudgetExceeded("find_algebra_isomorphism: too many candidate images");
    auto W = words(A, gens, nullptr, nullptr);
    auto basis = pick_basis(A, W.a);
    if (!basis) return std::nullopt;
    int n = A.n();
    ZmMatrix Wa(A.m, n, n);
    for (int j = 0; j < n; ++j) Wa.set_col(j, W.a[(*basis)[j]]);
    ZmMatrix Wainv = inverse_mod(Wa);
    size_t count = static_cast<size_t>(total), bsize = static_cast<size_t>(B.order());
    std::vector<ZmVec> img(gens.size());
    for (size_t c = 0; c < count; ++c) {
        size_t t = c;
        for (auto& x : img) {
            x = B.decode(t % bsize);
            t /= bsize;
        }
        auto Wb = words(A, gens, &B, &img);
        ZmMatrix Wbm(B.m, n, n);
        for (int j = 0; j < n; ++j) Wbm.set_col(j, Wb.b[(*basis)[j]]);
        ZmMatrix F = mul(Wbm, Wainv);
        if (!invertible_mod(F) || !is_ring_hom(A, B, F)) continue;
        return F;
    }
    return std::nullopt;
}

// ------------------------------------------------------------------ units

UnitsGroup units_group(const Algebra& A, size_t cap) {
    UnitsGroup U;
    auto els = A.elements(cap);
    U.index.assign(els.size(), -1);
    // unit iff some y with xy = 1; found through the multiplication by candidates
    for (const auto& x : els)
        if (A.is_unit(x)) {
            U.index[A.code(x)] = static_cast<int>(U.elements.size());
            U.elements.push_back(x);
        }
    int u = static_cast<int>(U.elements.size());
    if (u > 1024) throw BudgetExceeded("units_group: more than 1024 units");
    // identity first
    int one_idx = U.index[A.code(A.one)];
    std::swap(U.elements[0], U.elements[one_idx]);
    for (int i = 0; i < u; ++i) U.index[A.code(U.elements[i])] = i;
    std::vector<int> t(static_cast<size_t>(u) * u);
    std::vector<std::string> lab(u);
    for (int i = 0; i < u; ++i) {
        std::ostringstream os;
        os << "[";
        for (int c = 0; c < A.n(); ++c) os << (c ? " " : "") << U.elements[i][c];
        os << "]";
        lab[i] = os.str();
        for (int j = 0; j < u; ++j) t[static_cast<size_t>(i) * u + j] = U.index[A.code(A.mul(U.elements[i], U.elements[j]))];
    }
    U.group = FiniteGroup::from_table(u, std::move(t), std::move(lab));
    return U;
}

std::vector<ZmVec> kernel_elements(const ModKernel& K, int n, i64 mod, size_t cap) {
    if (K.size() > cap) throw BudgetExceeded("solution space too large to scan");
    std::vector<ZmVec> out;
    std::vector<i64> c(K.gens.size(), 0);
    for (;;) {
        ZmVec v(n, 0);
        for (size_t g = 0; g < K.gens.size(); ++g)
            if (c[g])
                for (int i = 0; i < n; ++i) v[i] = (v[i] + c[g] * K.gens[g][i]) % mod;
        out.push_back(v);
        size_t g = 0;
        while (g < c.size()) {
            if (++c[g] < K.orders[g]) break;
            c[g] = 0;
            ++g;
        }
        if (g == c.size()) break;
    }
    return out;
}

ModKernel conjugator_space(const Algebra& A, const ZmMatrix& alpha) {
    int n = A.n();
    ZmMatrix M(A.m, n * n, n);
    for (int b = 0; b < n; ++b) {
        ZmMatrix L = A.left_mult(crossalg::apply(alpha, A.unit_vector(b)));
        ZmMatrix R = A.right_mult(A.unit_vector(b));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(b * n + i, j) = mod_norm(L(i, j) - R(i, j), A.m);
    }
    return mod_kernel(M);
}

std::optional<ZmVec> find_conjugator(const Algebra& A, const ZmMatrix& alpha, size_t cap,
                                     std::optional<std::uint64_t> seed) {
    ModKernel K = conjugator_space(A, alpha);
    auto els = kernel_elements(K, A.n(), A.m, cap);
    std::vector<ZmVec> units;
    for (auto& v : els) {
        if (A.is_unit(v)) {
            if (!seed) return v;
            units.push_back(v);
        }
    }
    if (units.empty()) return std::nullopt;
    std::mt19937_64 rng(*seed);
    return units[rng() % units.size()];
}

// ------------------------------------------------------------------ center / Azumaya

ModKernel center(const Algebra& A) {
    int n = A.n();
    ZmMatrix M(A.m, n * n, n);
    for (int b = 0; b < n; ++b) {
        ZmMatrix L = A.right_mult(A.unit_vector(b));  // x -> x e_b
        ZmMatrix R = A.left_mult(A.unit_vector(b));   // x -> e_b x
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(b * n + i, j) = mod_norm(L(i, j) - R(i, j), A.m);
    }
    return mod_kernel(M);
}

AzumayaReport is_azumaya(const Algebra& A) {
    AzumayaReport r;
    BigInt base_order = A.base ? A.base->order() : BigInt(A.m);
    BigInt zsize = center(A).size();
    r.central = zsize == base_order;
    int k = A.k, d = A.d, n = A.n();
    int N = d * k * k;
    ZmMatrix eta(A.m, N, N);
    // column (i, j, a): x -> sigma_a b_i x b_j, recorded on x = b_l
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int a = 0; a < d; ++a) {
                ZmVec left = A.smul(A.base ? A.base->unit_vector(a) : ZmVec{1 % A.m}, A.sbasis(i));
                int col = (i * k + j) * d + a;
                for (int l = 0; l < k; ++l) {
                    ZmVec v = A.mul(A.mul(left, A.sbasis(l)), A.sbasis(j));
                    for (int t = 0; t < n; ++t) eta(l * n + t, col) = v[t];
                }
            }
    r.eta_invertible = invertible_mod(eta);
    std::ostringstream os;
    os << "eta " << N << "x" << N << " over Z/" << A.m << ":";
    for (i64 p : prime_divisors(A.m)) os << " rank mod " << p << " = " << rank_mod_prime(eta, p);
    os << "; center order " << zsize << " vs base order " << base_order;
    r.diagnostic = os.str();
    r.azumaya = r.eta_invertible && r.central;
    return r;
}

// ------------------------------------------------------------------ actions and Galois extensions

void validate_ring_action(const Algebra& T, const RingAction& act) {
    const FiniteGroup& N = act.N;
    if (static_cast<int>(act.maps.size()) != N.order()) throw ValidationError("ring action: one map per element");
    for (int g = 0; g < N.order(); ++g) {
        if (!is_ring_hom(T, T, act.maps[g]))
            throw ValidationError("ring action: element " + std::to_string(g) + " is not a ring endomorphism");
    }
    if (act.maps[N.identity()] != ZmMatrix::identity(T.m, T.n())) throw ValidationError("ring action: identity acts nontrivially");
    for (int g = 0; g < N.order(); ++g)
        for (int h = 0; h < N.order(); ++h)
            if (mul(act.maps[g], act.maps[h]) != act.maps[N.mul(g, h)])
                throw ValidationError("ring action: not a homomorphism at (" + std::to_string(g) + "," + std::to_string(h) + ")");
}

ModKernel fixed_points(const Algebra& T, const RingAction& act) {
    int n = T.n(), q = act.N.order();
    ZmMatrix M(T.m, n * q, n);
    for (int g = 0; g < q; ++g)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(g * n + i, j) = mod_norm(act.maps[g](i, j) - (i == j), T.m);
    return mod_kernel(M);
}

bool is_nilpotent(const Algebra& T, const ZmVec& x) {
    ZmVec y = x;
    for (int i = 0; i < 10; ++i) y = T.mul(y, y);
    return T.is_zero(y);
}

std::vector<ZmVec> primitive_idempotents(const Algebra& T, size_t cap) {
    std::vector<ZmVec> idem;
    for (const auto& x : T.elements(cap))
        if (!T.is_zero(x) && T.mul(x, x) == x) idem.push_back(x);
    std::vector<ZmVec> prim;
    for (const auto& e : idem) {
        bool minimal = true;
        for (const auto& f : idem)
            if (f != e && T.mul(f, e) == f) {
                minimal = false;
                break;
            }
        if (minimal) prim.push_back(e);
    }
    return prim;
}

namespace {

std::string vec_str(const ZmVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

BigInt pow_big(const BigInt& b, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

GaloisReport galois_check(const AlgebraPtr& Tp, const AlgebraPtr& Sp, const ZmMatrix& embed, const RingAction& act) {
    const Algebra &T = *Tp, &S = *Sp;
    GaloisReport rep;
    if (!T.is_commutative() || !S.is_commutative()) throw ValidationError("galois_check: rings must be commutative");
    validate_ring_action(T, act);
    if (!is_ring_hom(S, T, embed)) throw ValidationError("galois_check: S -> T is not a ring homomorphism");
    int n = T.n(), q = act.N.order();
    i64 m = T.m;
    for (int g = 0; g < q; ++g)
        if (mul(act.maps[g], embed) != embed) throw ValidationError("galois_check: N does not fix the image of S");
    BigInt fixed = fixed_points(T, act).size();
    BigInt simg = span_order(embed);
    rep.fixed_ring_ok = simg == S.order() && fixed == simg;
    if (!rep.fixed_ring_ok) {
        rep.notes.push_back("fixed ring mismatch: |T^N| = " + fixed.str() + ", |S| = " + S.order().str());
        return rep;
    }
    rep.free = rebase(forget_base(Tp), Sp, embed).has_value();
    if (!rep.free) rep.notes.push_back("T is not free over S");
    BigInt mm = m;
    // (i) j: T^t N -> End_S(T)
    {
        // End_S(T) inside n x n matrices phi (variable phi_{rj} at r*n + j)
        int d = S.n();
        ZmMatrix cond(m, d * n * n, n * n);
        for (int a = 0; a < d; ++a) {
            ZmVec sa = crossalg::apply(embed, S.unit_vector(a));
            ZmMatrix L = T.left_mult(sa);
            for (int i = 0; i < n; ++i) {
                ZmVec sei = T.mul(sa, T.unit_vector(i));
                for (int r = 0; r < n; ++r) {
                    int row = (a * n + i) * n + r;
                    for (int j = 0; j < n; ++j) {
                        cond(row, r * n + j) = mod_norm(cond(row, r * n + j) + sei[j], m);
                        cond(row, j * n + i) = mod_norm(cond(row, j * n + i) - L(r, j), m);
                    }
                }
            }
        }
        BigInt end_order = mod_kernel(cond).size();
        ZmMatrix J(m, n * n, n * q);
        for (int c = 0; c < n; ++c)
            for (int g = 0; g < q; ++g) {
                ZmMatrix phi = mul(T.left_mult(T.unit_vector(c)), act.maps[g]);
                for (int r = 0; r < n; ++r)
                    for (int j = 0; j < n; ++j) J(r * n + j, c * q + g) = phi(r, j);
            }
        BigInt img = span_order(J);
        bool bij = img == pow_big(mm, n * q) && img == end_order;
        rep.crit_i = rep.free && bij;
        if (!bij) rep.notes.push_back("criterion (i): j has image of order " + img.str() + ", |End_S(T)| = " + end_order.str());
    }
    // (iii)
    {
        rep.crit_iii = true;
        auto prim = primitive_idempotents(T);
        for (const auto& e : prim)
            for (int g = 0; g < q; ++g) {
                if (g == act.N.identity()) continue;
                bool found = false;
                for (int j = 0; j < n && !found; ++j) {
                    ZmVec x = T.unit_vector(j);
                    ZmVec dlt = T.sub(x, crossalg::apply(act.maps[g], x));
                    if (!is_nilpotent(T, T.mul(dlt, e))) found = true;
                }
                if (!found) {
                    rep.crit_iii = false;
                    rep.notes.push_back("criterion (iii) fails at the maximal ideal {x : x*" + vec_str(e) +
                                        " nilpotent} for element " + act.N.label(g));
                }
            }
    }
    // (iv) h: T (x)_S T -> Map(N, T)
    {
        int d = S.n();
        ZmMatrix R(m, n * n, d * n * n);
        for (int a = 0; a < d; ++a) {
            ZmVec sa = crossalg::apply(embed, S.unit_vector(a));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    ZmVec x = T.mul(sa, T.unit_vector(i)), y = T.mul(sa, T.unit_vector(j));
                    int col = (a * n + i) * n + j;
                    for (int u = 0; u < n; ++u) {
                        R(u * n + j, col) = mod_norm(R(u * n + j, col) + x[u], m);
                        R(i * n + u, col) = mod_norm(R(i * n + u, col) - y[u], m);
                    }
                }
        }
        ZmMatrix H(m, q * n, n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int g = 0; g < q; ++g) {
                    ZmVec v = T.mul(T.unit_vector(i), act.maps[g].col(j));
                    for (int r = 0; r < n; ++r) H(g * n + r, i * n + j) = v[r];
                }
        BigInt ker = mod_kernel(H).size(), rel = span_order(R), img = span_order(H);
        rep.crit_iv = ker == rel && img == pow_big(mm, q * n);
        if (!rep.crit_iv)
            rep.notes.push_back("criterion (iv): |ker h| = " + ker.str() + " vs relations " + rel.str() +
                                ", |im h| = " + img.str());
    }
    // (ii) spot check: descent for V = T and V = Map(N, T) with (g.v)(h) = g(v(g^-1 h))
    {
        bool ok = true;
        for (int which = 0; which < 2; ++which) {
            int copies = which == 0 ? 1 : q;
            int nv = n * copies;
            ZmMatrix fix(m, nv * q, nv);
            for (int g = 0; g < q; ++g)
                for (int h = 0; h < copies; ++h) {
                    int src = which == 0 ? 0 : act.N.mul(act.N.inv(g), h);
                    for (int i = 0; i < n; ++i) {
                        for (int j = 0; j < n; ++j)
                            fix(g * nv + h * n + i, src * n + j) = mod_norm(fix(g * nv + h * n + i, src * n + j) + act.maps[g](i, j), m);
                        fix(g * nv + h * n + i, h * n + i) = mod_norm(fix(g * nv + h * n + i, h * n + i) - 1, m);
                    }
                }
            ModKernel inv = mod_kernel(fix);
            // image of T (x) V^N -> V
            std::vector<ZmVec> cols;
            for (const auto& w : inv.gens)
                for (int c = 0; c < n; ++c) {
                    ZmVec v(nv);
                    for (int h = 0; h < copies; ++h) {
                        ZmVec part(w.begin() + h * n, w.begin() + (h + 1) * n);
                        ZmVec pr = T.mul(T.unit_vector(c), part);
                        std::copy(pr.begin(), pr.end(), v.begin() + h * n);
                    }
                    cols.push_back(v);
                }
            ZmMatrix C(m, nv, static_cast<int>(cols.size()));
            for (size_t j = 0; j < cols.size(); ++j) C.set_col(static_cast<int>(j), cols[j]);
            bool surj = span_order(C) == pow_big(mm, nv);
            bool sized = inv.size() == pow_big(S.order(), copies);
            ok = ok && surj && sized;
        }
        rep.crit_ii_spot = ok;
        rep.notes.push_back("criterion (ii) is a spot check on T and Map(N,T) only");
    }
    return rep;
}

GaloisData map_ring_action(const FiniteGroup& N, int points, const std::vector<int>& perm, const AlgebraPtr& k) {
    GroupAction pa{N, points, perm};
    validate_action(pa);
    GaloisData gd;
    gd.T = map_ring(points, k);
    int nk = k->n(), n = points * nk;
    gd.action.N = N;
    for (int g = 0; g < N.order(); ++g) {
        ZmMatrix M(k->m, n, n);
        // (g f)(x) = f(g^-1 x)
        for (int x = 0; x < points; ++x) {
            int src = pa.act(N.inv(g), x);
            for (int c = 0; c < nk; ++c) M(x * nk + c, src * nk + c) = 1 % k->m;
        }
        gd.action.maps.push_back(M);
    }
    std::vector<int> orbit(points, -1);
    int no = 0;
    for (int x = 0; x < points; ++x) {
        if (orbit[x] >= 0) continue;
        for (int g = 0; g < N.order(); ++g) orbit[pa.act(g, x)] = no;
        ++no;
    }
    gd.S = map_ring(no, k);
    gd.embed = ZmMatrix(k->m, n, no * nk);
    for (int x = 0; x < points; ++x)
        for (int c = 0; c < nk; ++c) gd.embed(x * nk + c, orbit[x] * nk + c) = 1 % k->m;
    return gd;
}

GaloisData galois_from_free_action(const FiniteGroup& N, int points, const std::vector<int>& perm, const AlgebraPtr& k) {
    for (int g = 0; g < N.order(); ++g) {
        if (g == N.identity()) continue;
        for (int x = 0; x < points; ++x)
            if (perm[static_cast<size_t>(g) * points + x] == x)
                throw ValidationError("galois_from_free_action: point " + std::to_string(x) + " is fixed by " + N.label(g));
    }
    return map_ring_action(N, points, perm, k);
}

ZmMatrix frobenius(const Algebra& T, i64 p) {
    int n = T.n();
    ZmMatrix F(T.m, n, n);
    ZmVec x = n > 1 ? T.unit_vector(1) : T.one;
    ZmVec xp = T.pow(x, p);
    ZmVec cur = T.one;
    for (int i = 0; i < n; ++i) {
        F.set_col(i, cur);
        cur = T.mul(cur, xp);
    }
    return F;
}

}  // namespace crossalg
