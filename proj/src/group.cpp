#include "crossalg/group.hpp"

#include "crossalg/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace crossalg {

FiniteGroup::FiniteGroup() {
    auto d = std::make_shared<Data>();
    d->n = 1;
    d->mul = {0};
    d->inv = {0};
    d->orders = {1};
    d_ = d;
}

FiniteGroup FiniteGroup::from_table(int n, std::vector<int> mul, std::vector<std::string> labels) {
    if (n < 1) throw ValidationError("group order must be positive");
    if (mul.size() != static_cast<size_t>(n) * n) throw ValidationError("multiplication table has wrong size");
    for (int v : mul)
        if (v < 0 || v >= n) throw ValidationError("table entry out of range");
    auto d = std::make_shared<Data>();
    d->n = n;
    d->mul = std::move(mul);
    auto M = [&](int a, int b) { return d->mul[static_cast<size_t>(a) * n + b]; };
    d->id = -1;
    for (int e = 0; e < n && d->id < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = M(e, x) == x && M(x, e) == x;
        if (ok) d->id = e;
    }
    if (d->id < 0) throw ValidationError("no identity element");
    std::vector<char> seen(n);
    for (int a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < n; ++b) {
            if (seen[M(a, b)]) throw ValidationError("row " + std::to_string(a) + " is not a permutation");
            seen[M(a, b)] = 1;
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < n; ++b) {
            if (seen[M(b, a)]) throw ValidationError("column " + std::to_string(a) + " is not a permutation");
            seen[M(b, a)] = 1;
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int ab = M(a, b);
            for (int c = 0; c < n; ++c)
                if (M(ab, c) != M(a, M(b, c)))
                    throw ValidationError("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                                          "," + std::to_string(c) + ")");
        }
    d->inv.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (M(a, b) == d->id) { d->inv[a] = b; break; }
    d->orders.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        int k = 1, x = a;
        while (x != d->id) { x = M(x, a); ++k; }
        d->orders[a] = k;
    }
    if (!labels.empty() && static_cast<int>(labels.size()) != n) throw ValidationError("label count mismatch");
    d->labels = std::move(labels);
    // greedy generators
    std::vector<int> sub{d->id};
    std::vector<char> in(n, 0);
    in[d->id] = 1;
    while (static_cast<int>(sub.size()) < n) {
        int best = -1;
        for (int a = 0; a < n; ++a)
            if (!in[a] && (best < 0 || d->orders[a] > d->orders[best])) best = a;
        d->gens.push_back(best);
        // closure
        std::vector<int> all = sub;
        for (size_t i = 0; i < all.size(); ++i)
            for (int g : d->gens) {
                int y = M(all[i], g);
                if (!in[y]) { in[y] = 1; all.push_back(y); }
            }
        sub = all;
    }
    FiniteGroup G;
    G.d_ = d;
    return G;
}

int FiniteGroup::pow(int a, long k) const {
    int o = element_order(a);
    long e = ((k % o) + o) % o;
    int r = identity();
    for (long i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

std::string FiniteGroup::label(int a) const {
    if (!d_->labels.empty()) return d_->labels[a];
    return std::to_string(a);
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order(); ++a)
        for (int b = a + 1; b < order(); ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

const std::vector<int>& FiniteGroup::generators() const { return d_->gens; }

std::vector<int> FiniteGroup::order_profile() const {
    std::vector<int> p(order() + 1, 0);
    for (int a = 0; a < order(); ++a) p[element_order(a)]++;
    return p;
}

// ------------------------------------------------------------------ homs

bool GroupHom::injective() const {
    for (int x = 0; x < source.order(); ++x)
        if (x != source.identity() && images[x] == target.identity()) return false;
    return true;
}

bool GroupHom::surjective() const { return static_cast<int>(image().size()) == target.order(); }

std::vector<int> GroupHom::kernel() const {
    std::vector<int> k;
    for (int x = 0; x < source.order(); ++x)
        if (images[x] == target.identity()) k.push_back(x);
    return k;
}

std::vector<int> GroupHom::image() const {
    std::vector<int> im(images);
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return im;
}

void check_hom(const GroupHom& h) {
    if (static_cast<int>(h.images.size()) != h.source.order()) throw ValidationError("hom image table size mismatch");
    for (int v : h.images)
        if (v < 0 || v >= h.target.order()) throw ValidationError("hom image out of range");
    for (int a = 0; a < h.source.order(); ++a)
        for (int b = 0; b < h.source.order(); ++b)
            if (h.images[h.source.mul(a, b)] != h.target.mul(h.images[a], h.images[b]))
                throw ValidationError("not a homomorphism at (" + std::to_string(a) + "," + std::to_string(b) + ")");
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
    GroupHom r{f.source, g.target, std::vector<int>(f.source.order())};
    for (int x = 0; x < f.source.order(); ++x) r.images[x] = g.images[f.images[x]];
    return r;
}

GroupHom identity_hom(const FiniteGroup& G) {
    std::vector<int> im(G.order());
    std::iota(im.begin(), im.end(), 0);
    return {G, G, im};
}

int GroupExtension::kernel_preimage(int x) const {
    for (int n = 0; n < N().order(); ++n)
        if (kernel_hom.images[n] == x) return n;
    return -1;
}

std::vector<int> GroupExtension::canonical_section() const {
    std::vector<int> s(Q().order(), -1);
    for (int g = 0; g < G().order(); ++g) {
        int q = quotient_hom.images[g];
        if (s[q] < 0) s[q] = g;
    }
    s[Q().identity()] = G().identity();
    return s;
}

void validate_extension(const GroupExtension& e) {
    check_hom(e.kernel_hom);
    check_hom(e.quotient_hom);
    if (!e.kernel_hom.injective()) throw ValidationError("extension: kernel map not injective");
    if (!e.quotient_hom.surjective()) throw ValidationError("extension: quotient map not surjective");
    auto im = e.kernel_hom.image();
    auto ker = e.quotient_hom.kernel();
    if (im != ker) throw ValidationError("extension: image(N) != kernel(G -> Q)");
}

void validate_action(const GroupAction& a) {
    int n = a.carrier_size;
    if (a.table.size() != static_cast<size_t>(a.actor.order()) * n) throw ValidationError("action table size mismatch");
    for (int x = 0; x < n; ++x)
        if (a.act(a.actor.identity(), x) != x) throw ValidationError("identity does not act trivially");
    for (int g = 0; g < a.actor.order(); ++g)
        for (int h = 0; h < a.actor.order(); ++h)
            for (int x = 0; x < n; ++x)
                if (a.act(a.actor.mul(g, h), x) != a.act(g, a.act(h, x)))
                    throw ValidationError("action is not a homomorphism at (" + std::to_string(g) + "," +
                                          std::to_string(h) + "," + std::to_string(x) + ")");
}

void validate_action_by_automorphisms(const GroupAction& a, const FiniteGroup& C) {
    if (a.carrier_size != C.order()) throw ValidationError("action carrier size mismatch");
    validate_action(a);
    for (int g = 0; g < a.actor.order(); ++g)
        for (int x = 0; x < C.order(); ++x)
            for (int y = 0; y < C.order(); ++y)
                if (a.act(g, C.mul(x, y)) != C.mul(a.act(g, x), a.act(g, y)))
                    throw ValidationError("element " + std::to_string(g) + " does not act by an automorphism");
}

GroupAction trivial_action(const FiniteGroup& actor, int n) {
    GroupAction a{actor, n, std::vector<int>(static_cast<size_t>(actor.order()) * n)};
    for (int g = 0; g < actor.order(); ++g)
        for (int x = 0; x < n; ++x) a.table[static_cast<size_t>(g) * n + x] = x;
    return a;
}

GroupAction conjugation_action(const FiniteGroup& G) {
    int n = G.order();
    GroupAction a{G, n, std::vector<int>(static_cast<size_t>(n) * n)};
    for (int g = 0; g < n; ++g)
        for (int x = 0; x < n; ++x) a.table[static_cast<size_t>(g) * n + x] = G.conj(g, x);
    return a;
}

// ------------------------------------------------------------------ constructions

FiniteGroup cyclic_group(int n) {
    std::vector<int> t(static_cast<size_t>(n) * n);
    std::vector<std::string> lab(n);
    for (int a = 0; a < n; ++a) {
        lab[a] = a == 0 ? "1" : (a == 1 ? "g" : "g^" + std::to_string(a));
        for (int b = 0; b < n; ++b) t[static_cast<size_t>(a) * n + b] = (a + b) % n;
    }
    return FiniteGroup::from_table(n, std::move(t), std::move(lab));
}

FiniteGroup dihedral_group(int n) {
    // r^i s^j -> i + n j ; s r s = r^{-1}
    int N = 2 * n;
    std::vector<int> t(static_cast<size_t>(N) * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            int i = a % n, j = a / n, k = b % n, l = b / n;
            int ii = (j ? i - k : i + k) % n;
            ii = (ii + n) % n;
            t[static_cast<size_t>(a) * N + b] = ii + n * ((j + l) % 2);
        }
    return FiniteGroup::from_table(N, std::move(t));
}

FiniteGroup quaternion_group() {
    // index 2u + sgn, u in {1,i,j,k}, sgn 0 = +, 1 = -
    static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int unit_sgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<int> t(64);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int u = a / 2, v = b / 2;
            int s = (a % 2) ^ (b % 2) ^ unit_sgn[u][v];
            t[a * 8 + b] = 2 * unit_mul[u][v] + s;
        }
    return FiniteGroup::from_table(8, std::move(t), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

FiniteGroup symmetric_group(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> idx;
    for (size_t i = 0; i < perms.size(); ++i) idx[perms[i]] = static_cast<int>(i);
    int N = static_cast<int>(perms.size());
    std::vector<int> t(static_cast<size_t>(N) * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            std::vector<int> c(n);
            for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
            t[static_cast<size_t>(a) * N + b] = idx[c];
        }
    return FiniteGroup::from_table(N, std::move(t));
}

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
    int a = A.order(), b = B.order(), n = a * b;
    std::vector<int> t(static_cast<size_t>(n) * n);
    std::vector<std::string> lab(n);
    for (int x = 0; x < n; ++x) {
        lab[x] = "(" + A.label(x % a) + "," + B.label(x / a) + ")";
        for (int y = 0; y < n; ++y)
            t[static_cast<size_t>(x) * n + y] = A.mul(x % a, y % a) + a * B.mul(x / a, y / a);
    }
    return FiniteGroup::from_table(n, std::move(t), std::move(lab));
}

Metacyclic metacyclic(int r, int s, int t, int f) {
    if (r <= 1 || s <= 1) throw ValidationError("metacyclic: need r > 1 and s > 1");
    long tp = 1;
    for (int i = 0; i < s; ++i) tp = tp * t % r;
    if (((tp - 1) % r + r) % r != 0) throw ValidationError("metacyclic: t^s != 1 mod r");
    if (((static_cast<long>(t) * f - f) % r + r) % r != 0) throw ValidationError("metacyclic: t f != f mod r");
    int n = r * s;
    std::vector<long> tpow(s);
    tpow[0] = 1 % r;
    for (int j = 1; j < s; ++j) tpow[j] = tpow[j - 1] * t % r;
    std::vector<int> tab(static_cast<size_t>(n) * n);
    std::vector<std::string> lab(n);
    for (int a = 0; a < n; ++a) {
        int i = a % r, j = a / r;
        std::string ys = i == 0 ? "" : (i == 1 ? "y" : "y^" + std::to_string(i));
        std::string xs = j == 0 ? "" : (j == 1 ? "x" : "x^" + std::to_string(j));
        lab[a] = (ys.empty() && xs.empty()) ? "1" : ys + xs;
        for (int b = 0; b < n; ++b) {
            int k = b % r, l = b / r;
            long ii = i + k * tpow[j] + (j + l >= s ? f : 0);
            ii = ((ii % r) + r) % r;
            tab[static_cast<size_t>(a) * n + b] = static_cast<int>(ii) + r * ((j + l) % s);
        }
    }
    Metacyclic m{FiniteGroup::from_table(n, std::move(tab), std::move(lab)), {}, r, s, t, f};
    FiniteGroup Cr = cyclic_group(r), Cs = cyclic_group(s);
    std::vector<int> inc(r), proj(n);
    for (int i = 0; i < r; ++i) inc[i] = i;
    for (int a = 0; a < n; ++a) proj[a] = a / r;
    m.ext = GroupExtension{GroupHom{Cr, m.G, inc}, GroupHom{m.G, Cs, proj}};
    validate_extension(m.ext);
    return m;
}

// ------------------------------------------------------------------ subgroups & quotients

std::vector<int> subgroup_closure(const FiniteGroup& G, const std::vector<int>& gens) {
    std::vector<char> in(G.order(), 0);
    std::vector<int> all{G.identity()};
    in[G.identity()] = 1;
    for (size_t i = 0; i < all.size(); ++i)
        for (int g : gens) {
            int y = G.mul(all[i], g);
            if (!in[y]) { in[y] = 1; all.push_back(y); }
        }
    std::sort(all.begin(), all.end());
    return all;
}

int Subgroup::index_of(int g) const {
    auto it = std::find(embed.begin(), embed.end(), g);
    return it == embed.end() ? -1 : static_cast<int>(it - embed.begin());
}

Subgroup make_subgroup(const FiniteGroup& G, const std::vector<int>& elements) {
    std::vector<int> el(elements);
    std::sort(el.begin(), el.end());
    el.erase(std::unique(el.begin(), el.end()), el.end());
    auto it = std::find(el.begin(), el.end(), G.identity());
    if (it == el.end()) throw ValidationError("subgroup must contain the identity");
    std::rotate(el.begin(), it, it + 1);
    std::vector<int> pos(G.order(), -1);
    for (size_t i = 0; i < el.size(); ++i) pos[el[i]] = static_cast<int>(i);
    int n = static_cast<int>(el.size());
    std::vector<int> t(static_cast<size_t>(n) * n);
    std::vector<std::string> lab(n);
    for (int a = 0; a < n; ++a) {
        lab[a] = G.label(el[a]);
        for (int b = 0; b < n; ++b) {
            int c = pos[G.mul(el[a], el[b])];
            if (c < 0) throw ValidationError("element set is not closed under multiplication");
            t[static_cast<size_t>(a) * n + b] = c;
        }
    }
    return Subgroup{FiniteGroup::from_table(n, std::move(t), std::move(lab)), el};
}

bool is_normal(const FiniteGroup& G, const std::vector<int>& el) {
    std::vector<char> in(G.order(), 0);
    for (int x : el) in[x] = 1;
    for (int g = 0; g < G.order(); ++g)
        for (int x : el)
            if (!in[G.conj(g, x)]) return false;
    return true;
}

Quotient quotient_group(const FiniteGroup& G, const std::vector<int>& N) {
    if (!is_normal(G, N)) throw ValidationError("quotient by a non-normal subset");
    int n = G.order();
    Quotient q;
    q.proj.assign(n, -1);
    // coset of the identity first, then by smallest element
    std::vector<int> order_el(n);
    std::iota(order_el.begin(), order_el.end(), 0);
    std::stable_partition(order_el.begin(), order_el.end(), [&](int g) { return g == G.identity(); });
    for (int g : order_el) {
        if (q.proj[g] >= 0) continue;
        int c = static_cast<int>(q.rep.size());
        q.rep.push_back(g);
        for (int x : N) q.proj[G.mul(g, x)] = c;
    }
    int k = static_cast<int>(q.rep.size());
    std::vector<int> t(static_cast<size_t>(k) * k);
    std::vector<std::string> lab(k);
    for (int a = 0; a < k; ++a) {
        lab[a] = G.label(q.rep[a]) + "N";
        for (int b = 0; b < k; ++b) t[static_cast<size_t>(a) * k + b] = q.proj[G.mul(q.rep[a], q.rep[b])];
    }
    q.Q = FiniteGroup::from_table(k, std::move(t), std::move(lab));
    return q;
}

Subgroup fiber_product(const GroupHom& a, const GroupHom& b) {
    FiniteGroup P = direct_product(a.source, b.source);
    int na = a.source.order();
    std::vector<int> el;
    for (int x = 0; x < P.order(); ++x)
        if (a.images[x % na] == b.images[x / na]) el.push_back(x);
    return make_subgroup(P, el);
}

// ------------------------------------------------------------------ homomorphism search

std::optional<std::vector<int>> extend_hom(const FiniteGroup& src, const std::vector<int>& gens,
                                           const std::vector<int>& images, const FiniteGroup& tgt) {
    std::vector<int> img(src.order(), -1);
    img[src.identity()] = tgt.identity();
    std::vector<int> queue{src.identity()};
    for (size_t i = 0; i < queue.size(); ++i) {
        int x = queue[i];
        for (size_t k = 0; k < gens.size(); ++k) {
            int y = src.mul(x, gens[k]);
            int iy = tgt.mul(img[x], images[k]);
            if (img[y] < 0) {
                img[y] = iy;
                queue.push_back(y);
            } else if (img[y] != iy) {
                return std::nullopt;
            }
        }
    }
    if (static_cast<int>(queue.size()) != src.order()) return std::nullopt;  // gens do not generate
    return img;
}

namespace {

void enumerate_isos(const FiniteGroup& G, const FiniteGroup& H, bool first_only,
                    const std::function<bool(const std::vector<int>&)>& sink) {
    const auto& gens = G.generators();
    std::vector<std::vector<int>> cand(gens.size());
    for (size_t k = 0; k < gens.size(); ++k)
        for (int h = 0; h < H.order(); ++h)
            if (H.element_order(h) == G.element_order(gens[k])) cand[k].push_back(h);
    std::vector<int> choice(gens.size());
    std::function<bool(size_t)> rec = [&](size_t k) -> bool {
        if (k == gens.size()) {
            auto img = extend_hom(G, gens, choice, H);
            if (!img) return false;
            std::vector<char> hit(H.order(), 0);
            for (int v : *img) {
                if (hit[v]) return false;
                hit[v] = 1;
            }
            return sink(*img) && first_only;
        }
        for (int h : cand[k]) {
            // distinct generators need distinct images for an injective map
            bool dup = false;
            for (size_t j = 0; j < k && !dup; ++j) dup = choice[j] == h;
            if (dup) continue;
            choice[k] = h;
            if (rec(k + 1)) return true;
        }
        return false;
    };
    rec(0);
}

}  // namespace

std::optional<GroupHom> find_isomorphism(const FiniteGroup& G, const FiniteGroup& H, int cap) {
    if (G.order() > cap || H.order() > cap)
        throw BudgetExceeded("find_isomorphism: group order above cap " + std::to_string(cap));
    if (G.order() != H.order() || G.order_profile() != H.order_profile()) return std::nullopt;
    std::optional<GroupHom> found;
    enumerate_isos(G, H, true, [&](const std::vector<int>& img) {
        found = GroupHom{G, H, img};
        return true;
    });
    return found;
}

AutomorphismGroup automorphism_group(const FiniteGroup& G, int cap) {
    if (G.order() > cap) throw BudgetExceeded("automorphism_group: order above cap " + std::to_string(cap));
    std::vector<std::vector<int>> perms;
    enumerate_isos(G, G, false, [&](const std::vector<int>& img) {
        perms.push_back(img);
        return false;
    });
    const auto& gens = G.generators();
    auto key = [&](const std::vector<int>& p) {
        std::vector<int> k;
        for (int g : gens) k.push_back(p[g]);
        return k;
    };
    std::vector<int> id(G.order());
    std::iota(id.begin(), id.end(), 0);
    std::sort(perms.begin(), perms.end(), [&](const auto& a, const auto& b) {
        bool ia = a == id, ib = b == id;
        if (ia != ib) return ia;
        return key(a) < key(b);
    });
    std::map<std::vector<int>, int> idx;
    for (size_t i = 0; i < perms.size(); ++i) idx[key(perms[i])] = static_cast<int>(i);
    int n = static_cast<int>(perms.size());
    std::vector<int> t(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> k;
            for (int g : gens) k.push_back(perms[a][perms[b][g]]);
            t[static_cast<size_t>(a) * n + b] = idx.at(k);
        }
    return {FiniteGroup::from_table(n, std::move(t)), perms};
}

// ------------------------------------------------------------------ abelian coordinates

size_t AbelianCoords::code(const std::vector<i64>& c) const {
    size_t k = 0;
    for (size_t i = factors.size(); i-- > 0;) k = k * factors[i] + static_cast<size_t>(mod_norm(c[i], factors[i]));
    return k;
}

int AbelianCoords::element(const std::vector<i64>& c) const { return lookup[code(c)]; }

AbelianCoords abelian_coords(const FiniteGroup& A) {
    if (!A.is_abelian()) throw ValidationError("abelian_coords: group is not abelian");
    const auto& gens = A.generators();
    int k = static_cast<int>(gens.size());
    int n = A.order();
    AbelianCoords ac;
    if (k == 0) {
        ac.coords.assign(n, {});
        ac.lookup = {A.identity()};
        return ac;
    }
    std::vector<std::vector<i64>> word(n);
    word[A.identity()] = std::vector<i64>(k, 0);
    std::vector<int> queue{A.identity()};
    for (size_t i = 0; i < queue.size(); ++i)
        for (int g = 0; g < k; ++g) {
            int y = A.mul(queue[i], gens[g]);
            if (word[y].empty()) {
                word[y] = word[queue[i]];
                word[y][g] += 1;
                queue.push_back(y);
            }
        }
    std::vector<std::vector<i64>> rels;
    for (int x = 0; x < n; ++x)
        for (int g = 0; g < k; ++g) {
            int y = A.mul(x, gens[g]);
            std::vector<i64> r(k);
            bool nz = false;
            for (int i = 0; i < k; ++i) {
                r[i] = word[x][i] + (i == g) - word[y][i];
                nz = nz || r[i];
            }
            if (nz) rels.push_back(r);
        }
    IntMatrix R(k, static_cast<int>(rels.size()));
    for (size_t j = 0; j < rels.size(); ++j)
        for (int i = 0; i < k; ++i) R(i, static_cast<int>(j)) = rels[j][i];
    FinAbPresentation p = abelian_quotient(R, k);
    for (auto& f : p.invariant_factors) ac.factors.push_back(static_cast<i64>(f));
    ac.coords.resize(n);
    for (int x = 0; x < n; ++x) {
        std::vector<BigInt> w(word[x].begin(), word[x].end());
        auto c = p.coords(w);
        for (auto& v : c) ac.coords[x].push_back(static_cast<i64>(v));
    }
    size_t total = 1;
    for (i64 f : ac.factors) total *= static_cast<size_t>(f);
    if (total != static_cast<size_t>(n)) throw ValidationError("abelian_coords: order mismatch");
    ac.lookup.assign(total, -1);
    for (int x = 0; x < n; ++x) ac.lookup[ac.code(ac.coords[x])] = x;
    for (size_t i = 0; i < ac.factors.size(); ++i) {
        std::vector<i64> e(ac.factors.size(), 0);
        e[i] = 1;
        ac.basis.push_back(ac.element(e));
    }
    return ac;
}

// ------------------------------------------------------------------ extensions from cocycles

GroupExtension group_from_2cocycle(const FiniteGroup& Q, const FiniteGroup& M, const GroupAction& action,
                                   const std::vector<int>& f) {
    int q = Q.order(), m = M.order();
    if (action.carrier_size != m || action.actor.order() != q) throw ValidationError("action does not match groups");
    if (f.size() != static_cast<size_t>(q) * q) throw ValidationError("cocycle table has wrong size");
    auto F = [&](int a, int b) { return f[static_cast<size_t>(a) * q + b]; };
    for (int a = 0; a < q; ++a)
        if (F(a, Q.identity()) != M.identity() || F(Q.identity(), a) != M.identity())
            throw ValidationError("2-cocycle not normalised");
    // a.f(b,c) f(a,bc) = f(a,b) f(ab,c)
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c) {
                int lhs = M.mul(action.act(a, F(b, c)), F(a, Q.mul(b, c)));
                int rhs = M.mul(F(a, b), F(Q.mul(a, b), c));
                if (lhs != rhs)
                    throw ValidationError("2-cocycle identity fails at (" + std::to_string(a) + "," +
                                          std::to_string(b) + "," + std::to_string(c) + ")");
            }
    int n = q * m;
    std::vector<int> t(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int mx = x % m, px = x / m, my = y % m, py = y / m;
            int mm = M.mul(M.mul(mx, action.act(px, my)), F(px, py));
            t[static_cast<size_t>(x) * n + y] = mm + m * Q.mul(px, py);
        }
    FiniteGroup E = FiniteGroup::from_table(n, std::move(t));
    std::vector<int> inc(m), proj(n);
    for (int a = 0; a < m; ++a) inc[a] = a;
    for (int x = 0; x < n; ++x) proj[x] = x / m;
    GroupExtension e{GroupHom{M, E, inc}, GroupHom{E, Q, proj}};
    validate_extension(e);
    return e;
}

std::vector<int> extract_2cocycle(const GroupExtension& e, const std::vector<int>& s) {
    const FiniteGroup& G = e.G();
    const FiniteGroup& Q = e.Q();
    int q = Q.order();
    std::vector<int> pre(G.order(), -1);
    for (int n = 0; n < e.N().order(); ++n) pre[e.kernel_hom.images[n]] = n;
    std::vector<int> f(static_cast<size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            int x = G.mul(G.mul(s[a], s[b]), G.inv(s[Q.mul(a, b)]));
            if (pre[x] < 0) throw ValidationError("section defect not in the kernel");
            f[static_cast<size_t>(a) * q + b] = pre[x];
        }
    return f;
}

}  // namespace crossalg
