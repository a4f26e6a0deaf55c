#include "crossalg/linalg.hpp"

#include "crossalg/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace crossalg {

// ------------------------------------------------------------------ Z

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<i64>>& rows) {
    IntMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols) throw SchemaError("ragged matrix rows");
        for (int j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
        }
    return r;
}

BigInt determinant(const IntMatrix& m0) {
    if (m0.rows != m0.cols) throw std::invalid_argument("determinant of non-square matrix");
    int n = m0.rows;
    if (n == 0) return 1;
    IntMatrix m = m0;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

namespace {

struct ZSnfWork {
    IntMatrix A, U, Uinv, V;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < A.cols; ++c) std::swap(A(i, c), A(j, c));
        for (int c = 0; c < U.cols; ++c) std::swap(U(i, c), U(j, c));
        for (int r = 0; r < Uinv.rows; ++r) std::swap(Uinv(r, i), Uinv(r, j));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < A.rows; ++r) std::swap(A(r, i), A(r, j));
        for (int r = 0; r < V.rows; ++r) std::swap(V(r, i), V(r, j));
    }
    // row_i += q * row_t
    void add_row(int i, int t, const BigInt& q) {
        if (q == 0) return;
        for (int c = 0; c < A.cols; ++c) A(i, c) += q * A(t, c);
        for (int c = 0; c < U.cols; ++c) U(i, c) += q * U(t, c);
        for (int r = 0; r < Uinv.rows; ++r) Uinv(r, t) -= q * Uinv(r, i);
    }
    void add_col(int j, int t, const BigInt& q) {
        if (q == 0) return;
        for (int r = 0; r < A.rows; ++r) A(r, j) += q * A(r, t);
        for (int r = 0; r < V.rows; ++r) V(r, j) += q * V(r, t);
    }
    void negate_row(int i) {
        for (int c = 0; c < A.cols; ++c) A(i, c) = -A(i, c);
        for (int c = 0; c < U.cols; ++c) U(i, c) = -U(i, c);
        for (int r = 0; r < Uinv.rows; ++r) Uinv(r, i) = -Uinv(r, i);
    }
};

ZSnfWork z_snf(const IntMatrix& A0) {
    ZSnfWork w{A0, IntMatrix::identity(A0.rows), IntMatrix::identity(A0.rows), IntMatrix::identity(A0.cols)};
    IntMatrix& A = w.A;
    int n = std::min(A.rows, A.cols);
    for (int t = 0; t < n; ++t) {
        for (;;) {
            int pi = -1, pj = -1;
            BigInt best;
            for (int i = t; i < A.rows; ++i)
                for (int j = t; j < A.cols; ++j) {
                    if (A(i, j) == 0) continue;
                    BigInt v = abs(A(i, j));
                    if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
                }
            if (pi < 0) return w;
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            bool clean = true;
            for (int i = t + 1; i < A.rows; ++i) {
                if (A(i, t) == 0) continue;
                w.add_row(i, t, -(A(i, t) / A(t, t)));
                if (A(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < A.cols; ++j) {
                if (A(t, j) == 0) continue;
                w.add_col(j, t, -(A(t, j) / A(t, t)));
                if (A(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            int bad = -1;
            for (int i = t + 1; i < A.rows && bad < 0; ++i)
                for (int j = t + 1; j < A.cols; ++j)
                    if (A(i, j) % A(t, t) != 0) { bad = i; break; }
            if (bad >= 0) { w.add_row(t, bad, 1); continue; }
            break;
        }
        if (A(t, t) < 0) w.negate_row(t);
    }
    return w;
}

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& A) {
    ZSnfWork w = z_snf(A);
    return {std::move(w.U), std::move(w.A), std::move(w.V)};
}

BigInt FinAbPresentation::order() const {
    BigInt o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
}

std::vector<BigInt> FinAbPresentation::coords(const std::vector<BigInt>& v) const {
    std::vector<BigInt> c(invariant_factors.size());
    for (size_t k = 0; k < c.size(); ++k) {
        BigInt s = 0;
        for (int j = 0; j < to_coords.cols; ++j) s += to_coords(static_cast<int>(k), j) * v[j];
        s %= invariant_factors[k];
        if (s < 0) s += invariant_factors[k];
        c[k] = s;
    }
    return c;
}

FinAbPresentation abelian_quotient(const IntMatrix& rel, int rank) {
    if (rel.rows != rank) throw std::invalid_argument("relation matrix row count must equal ambient rank");
    ZSnfWork w = z_snf(rel);
    FinAbPresentation p;
    std::vector<int> keep;
    for (int i = 0; i < rank; ++i) {
        BigInt d = (i < rel.cols) ? w.A(i, i) : BigInt(0);
        if (d == 0) throw ValidationError("abelian quotient is infinite");
        if (d != 1) { keep.push_back(i); p.invariant_factors.push_back(d); }
    }
    p.to_coords = IntMatrix(static_cast<int>(keep.size()), rank);
    p.from_coords = IntMatrix(rank, static_cast<int>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k)
        for (int j = 0; j < rank; ++j) {
            p.to_coords(static_cast<int>(k), j) = w.U(keep[k], j);
            p.from_coords(j, static_cast<int>(k)) = w.Uinv(j, keep[k]);
        }
    return p;
}

std::optional<ModSolution> solve_mod(const IntMatrix& A, const std::vector<BigInt>& b, i64 m) {
    if (m < 2) throw std::invalid_argument("modulus must be >= 2");
    if (static_cast<int>(b.size()) != A.rows) throw std::invalid_argument("rhs length mismatch");
    ZmMatrix Am(m, A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            BigInt v = A(i, j) % m;
            if (v < 0) v += m;
            Am(i, j) = static_cast<i64>(v);
        }
    ZmVec bm(b.size());
    for (size_t i = 0; i < b.size(); ++i) {
        BigInt v = b[i] % m;
        if (v < 0) v += m;
        bm[i] = static_cast<i64>(v);
    }
    auto x = mod_solve(Am, bm);
    if (!x) return std::nullopt;
    ModKernel k = mod_kernel(Am);
    return ModSolution{*x, k.gens};
}

// ------------------------------------------------------------------ Z/m

i64 mod_norm(i64 a, i64 m) {
    a %= m;
    return a < 0 ? a + m : a;
}

i64 gcd64(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }
i64 lcm64(i64 a, i64 b) { return a / gcd64(a, b) * b; }

static i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) { x = 1; y = 0; return a; }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

i64 mod_inv(i64 a, i64 m) {
    i64 x, y;
    a = mod_norm(a, m);
    if (ext_gcd(a, m, x, y) != 1) throw std::domain_error("not a unit mod " + std::to_string(m));
    return mod_norm(x, m);
}

std::vector<i64> prime_divisors(i64 m) {
    std::vector<i64> ps;
    for (i64 p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            ps.push_back(p);
            while (m % p == 0) m /= p;
        }
    if (m > 1) ps.push_back(m);
    return ps;
}

ZmMatrix ZmMatrix::identity(i64 mod, int n) {
    ZmMatrix r(mod, n, n);
    for (int i = 0; i < n; ++i) r(i, i) = 1 % mod;
    return r;
}

ZmVec ZmMatrix::col(int j) const {
    ZmVec v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

ZmVec ZmMatrix::row(int i) const {
    return ZmVec(a.begin() + static_cast<long>(i) * cols, a.begin() + static_cast<long>(i + 1) * cols);
}

void ZmMatrix::set_col(int j, const ZmVec& v) {
    for (int i = 0; i < rows; ++i) (*this)(i, j) = mod_norm(v[i], m);
}

ZmMatrix mul(const ZmMatrix& x, const ZmMatrix& y) {
    if (x.cols != y.rows || x.m != y.m) throw std::invalid_argument("ZmMatrix product mismatch");
    ZmMatrix r(x.m, x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            i64 c = x(i, k);
            if (!c) continue;
            const i64* yr = &y.a[static_cast<size_t>(k) * y.cols];
            i64* rr = &r.a[static_cast<size_t>(i) * r.cols];
            for (int j = 0; j < y.cols; ++j) rr[j] = (rr[j] + c * yr[j]) % x.m;
        }
    return r;
}

ZmVec mul(const ZmMatrix& x, const ZmVec& v) {
    if (static_cast<int>(v.size()) != x.cols) throw std::invalid_argument("ZmMatrix*vector mismatch");
    ZmVec r(x.rows, 0);
    for (int i = 0; i < x.rows; ++i) {
        i64 s = 0;
        const i64* xr = &x.a[static_cast<size_t>(i) * x.cols];
        for (int j = 0; j < x.cols; ++j) s = (s + xr[j] * mod_norm(v[j], x.m)) % x.m;
        r[i] = s;
    }
    return r;
}

ZmMatrix transpose(const ZmMatrix& x) {
    ZmMatrix r(x.m, x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
    return r;
}

ZmMatrix hconcat(const ZmMatrix& x, const ZmMatrix& y) {
    if (x.rows != y.rows || x.m != y.m) throw std::invalid_argument("hconcat mismatch");
    ZmMatrix r(x.m, x.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) r(i, j) = x(i, j);
        for (int j = 0; j < y.cols; ++j) r(i, x.cols + j) = y(i, j);
    }
    return r;
}

ZmMatrix vconcat(const ZmMatrix& x, const ZmMatrix& y) {
    if (x.cols != y.cols || x.m != y.m) throw std::invalid_argument("vconcat mismatch");
    ZmMatrix r(x.m, x.rows + y.rows, x.cols);
    std::copy(x.a.begin(), x.a.end(), r.a.begin());
    std::copy(y.a.begin(), y.a.end(), r.a.begin() + static_cast<long>(x.a.size()));
    return r;
}

namespace {

// Working state of a Z/m Smith reduction.  2x2 transforms are unimodular over Z.
struct MSnfWork {
    i64 m;
    ZmMatrix A;
    bool tu = false, tv = true;
    ZmMatrix U, Uinv, V, Vinv;

    // rows (t, i) <- M * rows (t, i) with M = [[a, b], [c, d]], det M = 1
    void row_op(int t, int i, i64 a, i64 b, i64 c, i64 d) {
        auto apply = [&](ZmMatrix& X) {
            i64* rt = &X.a[static_cast<size_t>(t) * X.cols];
            i64* ri = &X.a[static_cast<size_t>(i) * X.cols];
            for (int k = 0; k < X.cols; ++k) {
                i64 x = rt[k], y = ri[k];
                if (!x && !y) continue;
                rt[k] = (a * x + b * y) % m;
                ri[k] = (c * x + d * y) % m;
            }
        };
        apply(A);
        if (tu) {
            apply(U);
            // Uinv <- Uinv * M^{-1},  M^{-1} = [[d, -b], [-c, a]]
            for (int r = 0; r < Uinv.rows; ++r) {
                i64 x = Uinv(r, t), y = Uinv(r, i);
                Uinv(r, t) = mod_norm(x * d - y * c, m);
                Uinv(r, i) = mod_norm(-x * b + y * a, m);
            }
        }
    }
    // cols (t, j) <- cols (t, j) * N with N = [[a, b], [c, d]], det N = 1
    void col_op(int t, int j, i64 a, i64 b, i64 c, i64 d) {
        auto apply = [&](ZmMatrix& X) {
            for (int r = 0; r < X.rows; ++r) {
                i64& x = X.a[static_cast<size_t>(r) * X.cols + t];
                i64& y = X.a[static_cast<size_t>(r) * X.cols + j];
                if (!x && !y) continue;
                i64 nx = (x * a + y * c) % m, ny = (x * b + y * d) % m;
                x = nx;
                y = ny;
            }
        };
        apply(A);
        if (tv) {
            apply(V);
            // Vinv <- N^{-1} * Vinv
            i64* rt = &Vinv.a[static_cast<size_t>(t) * Vinv.cols];
            i64* rj = &Vinv.a[static_cast<size_t>(j) * Vinv.cols];
            for (int k = 0; k < Vinv.cols; ++k) {
                i64 x = rt[k], y = rj[k];
                rt[k] = mod_norm(d * x - b * y, m);
                rj[k] = mod_norm(-c * x + a * y, m);
            }
        }
    }
    void swap_rows(int i, int j) {
        if (i == j) return;
        auto sw = [&](ZmMatrix& X) {
            std::swap_ranges(X.a.begin() + static_cast<long>(i) * X.cols, X.a.begin() + static_cast<long>(i + 1) * X.cols,
                             X.a.begin() + static_cast<long>(j) * X.cols);
        };
        sw(A);
        if (tu) {
            sw(U);
            for (int r = 0; r < Uinv.rows; ++r) std::swap(Uinv(r, i), Uinv(r, j));
        }
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < A.rows; ++r) std::swap(A(r, i), A(r, j));
        if (tv) {
            for (int r = 0; r < V.rows; ++r) std::swap(V(r, i), V(r, j));
            std::swap_ranges(Vinv.a.begin() + static_cast<long>(i) * Vinv.cols,
                             Vinv.a.begin() + static_cast<long>(i + 1) * Vinv.cols,
                             Vinv.a.begin() + static_cast<long>(j) * Vinv.cols);
        }
    }
    void scale_row(int i, i64 u) {  // u a unit
        i64 ui = mod_inv(u, m);
        for (int k = 0; k < A.cols; ++k) A(i, k) = A(i, k) * u % m;
        if (tu) {
            for (int k = 0; k < U.cols; ++k) U(i, k) = U(i, k) * u % m;
            for (int r = 0; r < Uinv.rows; ++r) Uinv(r, i) = Uinv(r, i) * ui % m;
        }
    }

    // q with q*p == a (mod m) if a in (p), else -1
    i64 quotient(i64 a, i64 p) const {
        i64 g = gcd64(p, m);
        if (a % g) return -1;
        i64 mg = m / g;
        if (mg == 1) return 0;
        return (a / g) % mg * mod_inv((p / g) % mg, mg) % mg;
    }

    // eliminate entry (i, t) using pivot row t
    void kill_in_col(int t, int i) {
        i64 p = A(t, t), x = A(i, t);
        i64 q = quotient(x, p);
        if (q >= 0) {
            if (q) row_op(t, i, 1, 0, mod_norm(-q, m), 1);
            return;
        }
        i64 s, r;
        i64 g = ext_gcd(p, x, s, r);
        row_op(t, i, mod_norm(s, m), mod_norm(r, m), mod_norm(-(x / g), m), mod_norm(p / g, m));
    }
    void kill_in_row(int t, int j) {
        i64 p = A(t, t), x = A(t, j);
        i64 q = quotient(x, p);
        if (q >= 0) {
            if (q) col_op(t, j, 1, mod_norm(-q, m), 0, 1);
            return;
        }
        i64 s, r;
        i64 g = ext_gcd(p, x, s, r);
        // [p x] * [[s, -x/g], [r, p/g]] = [g, 0]
        col_op(t, j, mod_norm(s, m), mod_norm(-(x / g), m), mod_norm(r, m), mod_norm(p / g, m));
    }
};

// Row echelon compaction (no transforms): afterwards rows >= returned count are zero.
int row_compact(MSnfWork& w) {
    ZmMatrix& A = w.A;
    int r = 0;
    for (int j = 0; j < A.cols && r < A.rows; ++j) {
        int best = -1;
        i64 bg = 0;
        for (int i = r; i < A.rows; ++i) {
            i64 x = A(i, j);
            if (!x) continue;
            i64 g = gcd64(x, w.m);
            if (best < 0 || g < bg) { best = i; bg = g; if (g == 1) break; }
        }
        if (best < 0) continue;
        w.swap_rows(r, best);
        // reuse elimination with pivot at (r, j): temporarily view as column j
        for (int i = r + 1; i < A.rows; ++i) {
            if (!A(i, j)) continue;
            i64 p = A(r, j), x = A(i, j);
            i64 q = w.quotient(x, p);
            if (q >= 0) {
                w.row_op(r, i, 1, 0, mod_norm(-q, w.m), 1);
            } else {
                i64 s, t2;
                i64 g = ext_gcd(p, x, s, t2);
                w.row_op(r, i, mod_norm(s, w.m), mod_norm(t2, w.m), mod_norm(-(x / g), w.m), mod_norm(p / g, w.m));
            }
        }
        ++r;
    }
    return r;
}

void snf_core(MSnfWork& w, std::vector<i64>& diag) {
    ZmMatrix& A = w.A;
    const i64 m = w.m;
    int n = std::min(A.rows, A.cols);
    diag.assign(n, 0);
    for (int t = 0; t < n; ++t) {
        for (;;) {
            int pi = -1, pj = -1;
            i64 bg = 0;
            for (int i = t; i < A.rows; ++i) {
                const i64* ri = &A.a[static_cast<size_t>(i) * A.cols];
                for (int j = t; j < A.cols; ++j) {
                    if (!ri[j]) continue;
                    i64 g = gcd64(ri[j], m);
                    if (pi < 0 || g < bg) { pi = i; pj = j; bg = g; }
                }
                if (bg == 1) break;
            }
            if (pi < 0) return;
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            for (int i = t + 1; i < A.rows; ++i)
                if (A(i, t)) w.kill_in_col(t, i);
            for (int j = t + 1; j < A.cols; ++j)
                if (A(t, j)) w.kill_in_row(t, j);
            bool clean = true;
            for (int i = t + 1; i < A.rows; ++i)
                if (A(i, t)) { clean = false; break; }
            if (!clean) continue;
            i64 g = gcd64(A(t, t), m);
            int bad = -1;
            if (g > 1)
                for (int i = t + 1; i < A.rows && bad < 0; ++i) {
                    const i64* ri = &A.a[static_cast<size_t>(i) * A.cols];
                    for (int j = t + 1; j < A.cols; ++j)
                        if (ri[j] % g) { bad = i; break; }
                }
            if (bad >= 0) { w.row_op(t, bad, 1, 1, 0, 1); continue; }
            break;
        }
        i64 p = A(t, t);
        i64 g = gcd64(p, m);
        if (p != g) {
            // p = g*u with u a unit of Z/m; scale the row by u^{-1}
            i64 mg = m / g, pp = (p / g) % mg;
            i64 u = pp;
            while (gcd64(u, m) != 1) u += mg;
            w.scale_row(t, mod_inv(u, m));
        }
        diag[t] = (A(t, t) == 0) ? 0 : A(t, t);
    }
}

}  // namespace

int ModSnf::rank() const {
    int r = 0;
    for (i64 d : diag) r += (d != 0);
    return r;
}

ModSnf mod_snf(const ZmMatrix& A0, bool want_u) {
    if (A0.m < 2 || A0.m >= (i64(1) << 31)) throw std::invalid_argument("modulus out of range");
    MSnfWork w;
    w.m = A0.m;
    w.A = A0;
    ModSnf res;
    res.m = A0.m;
    res.rows = A0.rows;
    res.cols = A0.cols;
    if (!want_u && A0.rows > A0.cols) {
        w.tu = false;
        w.tv = false;
        int r = row_compact(w);
        ZmMatrix C(A0.m, r, A0.cols);
        std::copy(w.A.a.begin(), w.A.a.begin() + static_cast<long>(r) * A0.cols, C.a.begin());
        w.A = std::move(C);
    }
    w.tu = want_u;
    w.tv = true;
    if (want_u) {
        w.U = ZmMatrix::identity(w.m, A0.rows);
        w.Uinv = w.U;
    }
    w.V = ZmMatrix::identity(w.m, A0.cols);
    w.Vinv = w.V;
    std::vector<i64> d;
    snf_core(w, d);
    res.diag.assign(std::min(A0.rows, A0.cols), 0);
    std::copy(d.begin(), d.end(), res.diag.begin());
    res.has_u = want_u;
    res.U = std::move(w.U);
    res.Uinv = std::move(w.Uinv);
    res.V = std::move(w.V);
    res.Vinv = std::move(w.Vinv);
    return res;
}

BigInt ModKernel::size() const {
    BigInt s = 1;
    for (i64 o : orders) s *= o;
    return s;
}

ModKernel mod_kernel(const ZmMatrix& A) {
    ModSnf s = mod_snf(A, false);
    ModKernel k;
    for (int i = 0; i < A.cols; ++i) {
        i64 d = i < static_cast<int>(s.diag.size()) ? s.diag[i] : 0;
        if (d == 1) continue;
        i64 step = d == 0 ? 1 : s.m / d;
        i64 order = d == 0 ? s.m : d;
        ZmVec g = s.V.col(i);
        for (auto& x : g) x = x * step % s.m;
        k.gens.push_back(std::move(g));
        k.orders.push_back(order);
    }
    return k;
}

BigInt span_order(const ZmMatrix& A) {
    ModSnf s = mod_snf(A, false);
    BigInt o = 1;
    for (i64 d : s.diag)
        if (d) o *= s.m / d;
    return o;
}

std::optional<ZmVec> mod_solve(const ZmMatrix& A, const ZmVec& b) {
    if (static_cast<int>(b.size()) != A.rows) throw std::invalid_argument("rhs length mismatch");
    ModSnf s = mod_snf(A, true);
    ZmVec c = mul(s.U, b);
    ZmVec y(A.cols, 0);
    for (int i = 0; i < A.rows; ++i) {
        i64 d = i < static_cast<int>(s.diag.size()) ? s.diag[i] : 0;
        if (d == 0) {
            if (c[i]) return std::nullopt;
            continue;
        }
        if (c[i] % d) return std::nullopt;
        y[i] = c[i] / d;  // d | m, so d*(c/d) == c
    }
    return mul(s.V, y);
}

int rank_mod_prime(const ZmMatrix& A0, i64 p) {
    std::vector<i64> a(A0.a.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = A0.a[i] % p;
    int R = A0.rows, C = A0.cols, r = 0;
    for (int j = 0; j < C && r < R; ++j) {
        int piv = -1;
        for (int i = r; i < R; ++i)
            if (a[static_cast<size_t>(i) * C + j]) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            std::swap_ranges(a.begin() + static_cast<long>(piv) * C, a.begin() + static_cast<long>(piv + 1) * C,
                             a.begin() + static_cast<long>(r) * C);
        i64 inv = mod_inv(a[static_cast<size_t>(r) * C + j], p);
        for (int i = r + 1; i < R; ++i) {
            i64 f = a[static_cast<size_t>(i) * C + j] * inv % p;
            if (!f) continue;
            for (int k = j; k < C; ++k)
                a[static_cast<size_t>(i) * C + k] = mod_norm(a[static_cast<size_t>(i) * C + k] - f * a[static_cast<size_t>(r) * C + k], p);
        }
        ++r;
    }
    return r;
}

bool invertible_mod(const ZmMatrix& A) {
    if (A.rows != A.cols) return false;
    for (i64 p : prime_divisors(A.m))
        if (rank_mod_prime(A, p) != A.rows) return false;
    return true;
}

ZmMatrix inverse_mod(const ZmMatrix& A) {
    if (!invertible_mod(A)) throw ValidationError("matrix not invertible mod " + std::to_string(A.m));
    ModSnf s = mod_snf(A, true);
    return mul(s.V, s.U);
}

ZmVec ModQuotient::coords(const ZmVec& v) const {
    ZmVec c = mul(P, v);
    for (size_t k = 0; k < c.size(); ++k) c[k] %= factors[k];
    return c;
}

ZmVec ModQuotient::lift(const ZmVec& c) const { return mul(Pinv, c); }

BigInt ModQuotient::order() const {
    BigInt o = 1;
    for (i64 f : factors) o *= f;
    return o;
}

ModQuotient mod_quotient(const ZmMatrix& rel) {
    ModQuotient q;
    q.e = rel.m;
    int n = rel.rows;
    std::vector<int> keep;
    std::vector<i64> fac;
    ZmMatrix U, Uinv;
    if (rel.cols == 0) {
        U = ZmMatrix::identity(rel.m, n);
        Uinv = U;
        for (int i = 0; i < n; ++i) { keep.push_back(i); fac.push_back(rel.m); }
    } else {
        ModSnf s = mod_snf(rel, true);
        U = s.U;
        Uinv = s.Uinv;
        for (int i = 0; i < n; ++i) {
            i64 d = i < static_cast<int>(s.diag.size()) ? s.diag[i] : 0;
            if (d == 1) continue;
            keep.push_back(i);
            fac.push_back(d == 0 ? rel.m : d);
        }
    }
    q.factors = fac;
    q.P = ZmMatrix(rel.m, static_cast<int>(keep.size()), n);
    q.Pinv = ZmMatrix(rel.m, n, static_cast<int>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k)
        for (int j = 0; j < n; ++j) {
            q.P(static_cast<int>(k), j) = U(keep[k], j);
            q.Pinv(j, static_cast<int>(k)) = Uinv(j, keep[k]);
        }
    return q;
}

std::string factors_to_string(const std::vector<i64>& f) {
    if (f.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < f.size(); ++i) os << (i ? " x " : "") << "Z/" << f[i];
    return os.str();
}

}  // namespace crossalg
