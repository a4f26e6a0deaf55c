// Exact linear algebra over Z (arbitrary precision) and over Z/m (machine words).
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crossalg {

using BigInt = boost::multiprecision::cpp_int;
using i64 = std::int64_t;

// ---------------------------------------------------------------- over Z

struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<BigInt> a;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<i64>>& rows);

    BigInt& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const BigInt& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    bool operator==(const IntMatrix&) const = default;
};

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
BigInt determinant(const IntMatrix& m);  // Bareiss, square only

struct SnfDecomposition {
    IntMatrix U, D, V;  // U*A*V = D
};

// Deterministic: pivot = smallest nonzero |entry|, ties broken by lowest (row, col).
SnfDecomposition smith_normal_form(const IntMatrix& A);

struct FinAbPresentation {
    std::vector<BigInt> invariant_factors;  // each >= 2, d_i | d_{i+1}
    IntMatrix to_coords;    // k x ambient: ambient vector -> coordinates (reduce mod factors)
    IntMatrix from_coords;  // ambient x k: coordinates -> ambient representative
    BigInt order() const;
    std::vector<BigInt> coords(const std::vector<BigInt>& ambient) const;
};

// Z^rank / (column span of relations). Throws if the quotient is infinite.
FinAbPresentation abelian_quotient(const IntMatrix& relations, int ambient_rank);

struct ModSolution {
    std::vector<i64> x;
    std::vector<std::vector<i64>> kernel;  // generators of the homogeneous solution module
};

// A x = b (mod m).  nullopt when inconsistent.
std::optional<ModSolution> solve_mod(const IntMatrix& A, const std::vector<BigInt>& b, i64 m);

// ---------------------------------------------------------------- over Z/m

i64 mod_norm(i64 a, i64 m);
i64 mod_inv(i64 a, i64 m);  // throws if not a unit
i64 gcd64(i64 a, i64 b);
i64 lcm64(i64 a, i64 b);
std::vector<i64> prime_divisors(i64 m);

// Dense matrix over Z/m.  Entries are kept in [0, m).  m < 2^31.
struct ZmMatrix {
    i64 m = 1;
    int rows = 0, cols = 0;
    std::vector<i64> a;

    ZmMatrix() = default;
    ZmMatrix(i64 mod, int r, int c) : m(mod), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    static ZmMatrix identity(i64 mod, int n);

    i64& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    i64 operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    std::vector<i64> col(int j) const;
    std::vector<i64> row(int i) const;
    void set_col(int j, const std::vector<i64>& v);
    bool operator==(const ZmMatrix&) const = default;
};

using ZmVec = std::vector<i64>;

ZmMatrix mul(const ZmMatrix& x, const ZmMatrix& y);
ZmVec mul(const ZmMatrix& x, const ZmVec& v);
ZmMatrix transpose(const ZmMatrix& x);
ZmMatrix hconcat(const ZmMatrix& x, const ZmMatrix& y);
ZmMatrix vconcat(const ZmMatrix& x, const ZmMatrix& y);

// Smith form over Z/m: U*A*V = diag(d_0,...), d_i = gcd(d_i, m) normalised divisors of m
// (0 stands for "m", i.e. a zero pivot), d_i | d_{i+1}.  Without want_u the left transform is
// not accumulated, which keeps tall matrices cheap.
struct ModSnf {
    i64 m = 1;
    int rows = 0, cols = 0;
    std::vector<i64> diag;  // length min(rows, cols); 0 means zero pivot
    bool has_u = false;
    ZmMatrix U, Uinv, V, Vinv;
    int rank() const;  // number of nonzero diagonal entries
};
ModSnf mod_snf(const ZmMatrix& A, bool want_u);

// Solution set of A x = 0: generators g_i with additive orders o_i such that the
// solution module is the internal direct sum of the cyclic groups <g_i>.
struct ModKernel {
    std::vector<ZmVec> gens;
    std::vector<i64> orders;
    BigInt size() const;
};
ModKernel mod_kernel(const ZmMatrix& A);

// Order of the subgroup of (Z/m)^rows spanned by the columns.
BigInt span_order(const ZmMatrix& cols);

std::optional<ZmVec> mod_solve(const ZmMatrix& A, const ZmVec& b);

// rank of A reduced mod a prime p (A entries reduced mod p first)
int rank_mod_prime(const ZmMatrix& A, i64 p);
bool invertible_mod(const ZmMatrix& A);  // square, invertible over Z/m
ZmMatrix inverse_mod(const ZmMatrix& A);  // throws if singular

// Finite abelian group given as a quotient of (Z/e)^n by a submodule, in invariant factor coordinates.
struct ModQuotient {
    i64 e = 1;
    std::vector<i64> factors;  // nontrivial factors (each >= 2), increasing divisibility
    ZmMatrix P;                // factors.size() x n: coordinates (reduce row k mod factors[k])
    ZmMatrix Pinv;             // n x factors.size(): representative of each coordinate generator
    ZmVec coords(const ZmVec& v) const;
    ZmVec lift(const ZmVec& c) const;
    BigInt order() const;
};
// (Z/e)^n / span(columns of rel)
ModQuotient mod_quotient(const ZmMatrix& rel);

std::string factors_to_string(const std::vector<i64>& f);  // "Z/2 x Z/4", "0" for trivial

}  // namespace crossalg
