#include "crossalg/cli.hpp"

#include "crossalg/cohomology.hpp"
#include "crossalg/crossed.hpp"
#include "crossalg/crossed_pairs.hpp"
#include "crossalg/errors.hpp"
#include "crossalg/normal.hpp"
#include "crossalg/rings.hpp"

#include <functional>
#include <map>

namespace crossalg {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& msg) { throw SchemaError(msg); }

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
    return j.at(key);
}

json vec_json(const ZmVec& v) { return json(std::vector<i64>(v.begin(), v.end())); }

// ---- groups

FiniteGroup parse_group(const json& j) {
    if (!j.is_object()) schema("group must be an object");
    if (j.contains("order")) {
        int n = j.at("order").get<int>();
        const json& rows = need(j, "mul");
        if (!rows.is_array() || static_cast<int>(rows.size()) != n) schema("group: 'mul' must have 'order' rows");
        std::vector<int> t;
        for (const auto& r : rows) {
            if (!r.is_array() || static_cast<int>(r.size()) != n) schema("group: ragged multiplication table");
            for (const auto& x : r) t.push_back(x.get<int>());
        }
        std::vector<std::string> lab;
        if (j.contains("labels")) lab = j.at("labels").get<std::vector<std::string>>();
        return FiniteGroup::from_table(n, std::move(t), std::move(lab));
    }
    if (j.contains("cyclic")) return cyclic_group(j.at("cyclic").get<int>());
    if (j.contains("dihedral")) return dihedral_group(j.at("dihedral").get<int>());
    if (j.contains("quaternion")) return quaternion_group();
    if (j.contains("symmetric")) return symmetric_group(j.at("symmetric").get<int>());
    if (j.contains("trivial")) return FiniteGroup();
    if (j.contains("metacyclic")) {
        auto p = j.at("metacyclic").get<std::vector<int>>();
        if (p.size() != 4) schema("metacyclic group needs [r,s,t,f]");
        return metacyclic(p[0], p[1], p[2], p[3]).G;
    }
    if (j.contains("product")) {
        const json& f = j.at("product");
        if (!f.is_array() || f.size() != 2) schema("product needs two groups");
        return direct_product(parse_group(f[0]), parse_group(f[1]));
    }
    schema("unknown group description");
}

GroupExtension parse_ambient(const json& j) {
    if (j.contains("metacyclic")) {
        auto p = j.at("metacyclic").get<std::vector<int>>();
        if (p.size() != 4) schema("metacyclic ambient needs [r,s,t,f]");
        return metacyclic(p[0], p[1], p[2], p[3]).ext;
    }
    FiniteGroup G = parse_group(need(j, "group"));
    auto el = need(j, "normal").get<std::vector<int>>();
    for (int x : el)
        if (x < 0 || x >= G.order()) schema("normal subgroup element out of range");
    Subgroup N = make_subgroup(G, subgroup_closure(G, el));
    Quotient q = quotient_group(G, N.embed);
    GroupExtension e{GroupHom{N.H, G, N.embed}, GroupHom{G, q.Q, q.proj}};
    validate_extension(e);
    return e;
}

ZmMatrix parse_matrix(const json& j, i64 m) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) schema("matrix must be a non-empty list of rows");
    int r = static_cast<int>(j.size()), c = static_cast<int>(j[0].size());
    ZmMatrix M(m, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(j[i].size()) != c) schema("ragged matrix");
        for (int k = 0; k < c; ++k) M(i, k) = mod_norm(j[i][k].get<i64>(), m);
    }
    return M;
}

GModule parse_module(const FiniteGroup& G, const json& j) {
    if (j.contains("twisted")) {
        const json& t = j.at("twisted");
        i64 l = need(t, "l").get<i64>(), u = need(t, "u").get<i64>();
        auto ex = need(t, "exponent_of").get<std::vector<i64>>();
        if (static_cast<int>(ex.size()) != G.order()) schema("twisted module: one exponent per group element");
        return cyclic_twisted_module(G, l, ex, u);
    }
    auto f = need(j, "factors").get<std::vector<i64>>();
    for (i64 x : f)
        if (x < 2) schema("module factors must be >= 2");
    const json& a = j.contains("action") ? j.at("action") : json("trivial");
    if (a.is_string()) {
        if (a.get<std::string>() != "trivial") schema("module action must be 'trivial' or a list of matrices");
        return trivial_module(G, f);
    }
    if (!a.is_array() || static_cast<int>(a.size()) != G.order()) schema("module action: one matrix per group element");
    GModule M;
    M.factors = f;
    i64 e = std::max<i64>(2, M.exponent());
    for (const auto& mj : a) M.action.push_back(parse_matrix(mj, e));
    validate_module(G, M);
    return M;
}

// ---- rings and algebras

AlgebraPtr parse_ring(const json& j) {
    if (!j.is_object()) schema("ring must be an object");
    if (j.contains("zmod")) return zmod(j.at("zmod").get<i64>());
    if (j.contains("gf")) {
        auto p = j.at("gf").get<std::vector<i64>>();
        if (p.size() != 2) schema("gf needs [p,k]");
        return gf(p[0], static_cast<int>(p[1]));
    }
    if (j.contains("galois_ring")) {
        auto p = j.at("galois_ring").get<std::vector<i64>>();
        if (p.size() != 3) schema("galois_ring needs [p,e,degree]");
        return galois_ring(p[0], static_cast<int>(p[1]), static_cast<int>(p[2]));
    }
    if (j.contains("product")) {
        std::vector<AlgebraPtr> f;
        for (const auto& x : j.at("product")) f.push_back(parse_ring(x));
        return product_ring(f);
    }
    if (j.contains("map_ring")) {
        const json& m = j.at("map_ring");
        return map_ring(need(m, "points").get<int>(), parse_ring(need(m, "ring")));
    }
    if (j.contains("table")) {
        const json& t = j.at("table");
        i64 m = need(t, "m").get<i64>();
        int n = need(t, "n").get<int>();
        auto c = need(t, "constants").get<std::vector<i64>>();
        auto one = need(t, "one").get<std::vector<i64>>();
        if (c.size() != static_cast<size_t>(n) * n * n || static_cast<int>(one.size()) != n) schema("table ring: wrong sizes");
        return algebra_from_table(m, n, c, one);
    }
    schema("unknown ring description");
}

AlgebraPtr parse_algebra(const json& j) {
    if (!j.is_object()) schema("algebra must be an object");
    if (j.contains("ring")) return base_algebra(parse_ring(j.at("ring")));
    if (j.contains("matrix")) {
        const json& m = j.at("matrix");
        return matrix_algebra(parse_algebra(need(m, "algebra")), need(m, "size").get<int>());
    }
    if (j.contains("opposite")) return opposite(parse_algebra(j.at("opposite")));
    if (j.contains("tensor")) {
        const json& t = j.at("tensor");
        if (!t.is_array() || t.size() != 2) schema("tensor needs two algebras");
        return tensor_product(parse_algebra(t[0]), parse_algebra(t[1]));
    }
    if (j.contains("upper_triangular")) {
        const json& u = j.at("upper_triangular");
        return upper_triangular(parse_ring(need(u, "ring")), need(u, "size").get<int>());
    }
    if (j.contains("forget_base")) return forget_base(parse_algebra(j.at("forget_base")));
    if (j.contains("over")) {
        // {"over": ring, "rank": k, "constants": [k^3 elements of the ring], "unit": [k elements]}
        AlgebraPtr S = parse_ring(j.at("over"));
        int k = need(j, "rank").get<int>();
        std::vector<ZmVec> c, u;
        for (const auto& x : need(j, "constants")) c.push_back(x.get<ZmVec>());
        for (const auto& x : need(j, "unit")) u.push_back(x.get<ZmVec>());
        if (c.size() != static_cast<size_t>(k) * k * k || static_cast<int>(u.size()) != k) schema("algebra over: wrong sizes");
        for (const auto& x : c)
            if (static_cast<int>(x.size()) != S->n()) schema("algebra over: constants must be ring elements");
        for (const auto& x : u)
            if (static_cast<int>(x.size()) != S->n()) schema("algebra over: unit entries must be ring elements");
        return algebra_over(S, k, c, u);
    }
    return parse_ring(j);
}

// maps per group element: "trivial", {"frobenius": p} (element k of a cyclic group acts by the k-th power),
// or an explicit list of matrices
std::vector<ZmMatrix> parse_maps(const Algebra& A, const FiniteGroup& G, const json& j) {
    std::vector<ZmMatrix> out;
    if (j.is_string()) {
        if (j.get<std::string>() != "trivial") schema("maps must be 'trivial', {'frobenius': p} or a list");
        return std::vector<ZmMatrix>(G.order(), ZmMatrix::identity(A.m, A.n()));
    }
    if (j.is_object() && j.contains("frobenius")) {
        ZmMatrix F = frobenius(A, j.at("frobenius").get<i64>());
        ZmMatrix P = ZmMatrix::identity(A.m, A.n());
        for (int k = 0; k < G.order(); ++k) {
            out.push_back(P);
            P = mul(F, P);
        }
        return out;
    }
    if (!j.is_array() || static_cast<int>(j.size()) != G.order()) schema("one map per group element");
    for (const auto& mj : j) out.push_back(parse_matrix(mj, A.m));
    return out;
}

// ---- commands

json cmd_cohomology(const JobSpec& job) {
    const json& in = job.input;
    FiniteGroup G = parse_group(need(in, "group"));
    if (G.order() > job.cap_group_order) throw BudgetExceeded("group order above --cap-group-order");
    GModule M = parse_module(G, need(in, "module"));
    int n = need(in, "degree").get<int>();
    if (n < 0 || n > 4) schema("degree must be between 0 and 4");
    CohomologyGroup H = cohomology(G, M, n);
    json out;
    out["invariant_factors"] = H.invariant_factors();
    out["group"] = H.describe();
    out["order"] = H.order().str();
    if (in.value("cocycles", false)) {
        json gens = json::array();
        for (size_t k = 0; k < H.invariant_factors().size(); ++k) {
            ZmVec e(H.invariant_factors().size(), 0);
            e[k] = 1;
            Cochain z = H.representative(e);
            gens.push_back(z.values);
        }
        out["generator_cocycles"] = gens;
    }
    return out;
}

json cmd_metacyclic(const JobSpec& job) {
    auto p = need(job.input, "params").get<std::vector<int>>();
    if (p.size() != 5) schema("metacyclic-class needs r s t f l");
    if (p[0] * p[1] > job.cap_group_order) throw BudgetExceeded("r*s above --cap-group-order");
    Crossed2Extension e = metacyclic_crossed2(p[0], p[1], p[2], p[3], p[4]);
    GModule M = crossed2_module(e);
    CohomologyGroup H = cohomology(e.G(), M, 3);
    ZmVec c = H.class_of(cocycle_of_crossed2(e, job.seed ? std::optional<std::uint64_t>(job.seed) : std::nullopt));
    json out;
    out["class"] = vec_json(c);
    out["group"] = H.describe();
    out["class_order"] = H.class_order(c);
    return out;
}

json cmd_azumaya(const JobSpec& job) {
    AlgebraPtr A = parse_algebra(need(job.input, "algebra"));
    auto r = is_azumaya(*A);
    return json{{"azumaya", r.azumaya}, {"central", r.central}, {"eta_invertible", r.eta_invertible}, {"diagnostic", r.diagnostic},
                {"rank", A->k}, {"modulus", A->m}};
}

json galois_json(const GaloisReport& r) {
    return json{{"fixed_ring_ok", r.fixed_ring_ok}, {"free", r.free},          {"crit_i", r.crit_i},
                {"crit_iii", r.crit_iii},           {"crit_iv", r.crit_iv},    {"crit_ii_spot", r.crit_ii_spot},
                {"consistent", r.consistent()},     {"notes", r.notes}};
}

json cmd_galois(const JobSpec& job) {
    const json& in = job.input;
    for (const char* key : {"free_action", "map_ring_action"})
        if (in.contains(key)) {
            const json& f = in.at(key);
            FiniteGroup N = parse_group(need(f, "group"));
            int pts = need(f, "points").get<int>();
            auto perm = need(f, "perm").get<std::vector<int>>();
            AlgebraPtr k = parse_ring(need(f, "ring"));
            GaloisData d = std::string(key) == "free_action" ? galois_from_free_action(N, pts, perm, k)
                                                             : map_ring_action(N, pts, perm, k);
            return galois_json(galois_check(d.T, d.S, d.embed, d.action));
        }
    AlgebraPtr T = parse_ring(need(in, "T"));
    AlgebraPtr S = parse_ring(need(in, "S"));
    ZmMatrix embed;
    const json& e = need(in, "embed");
    if (e.is_string() && e.get<std::string>() == "scalars") {
        embed = ZmMatrix(T->m, T->n(), 1);
        embed.set_col(0, T->one);
    } else {
        embed = parse_matrix(e, T->m);
    }
    FiniteGroup N = parse_group(need(in, "group"));
    RingAction act{N, parse_maps(*T, N, need(in, "action"))};
    return galois_json(galois_check(T, S, embed, act));
}

OutRep parse_rep(const json& in) {
    FiniteGroup Q = parse_group(need(in, "group"));
    OutRep rep;
    if (in.contains("algebra")) {
        AlgebraPtr A = parse_algebra(in.at("algebra"));
        if (!A->base) schema("algebra needs a base ring");
        rep = OutRep{Q, A, parse_maps(*A->base, Q, need(in, "kappa")), {}};
        const json& l = need(in, "lifts");
        if (!l.is_array() || static_cast<int>(l.size()) != Q.order()) schema("one lift per group element");
        for (const auto& mj : l) rep.lifts.push_back(parse_matrix(mj, A->m));
    } else {
        AlgebraPtr S = parse_ring(need(in, "base"));
        rep = base_rep(S, Q, parse_maps(*S, Q, need(in, "kappa")));
    }
    if (in.contains("transform"))
        for (const auto& t : in.at("transform")) {
            if (t == "opposite") rep = opposite_rep(rep);
            else if (t == "tensor_opposite") rep = tensor_rep(rep, opposite_rep(rep));
            else if (t.is_object() && t.contains("matrix")) rep = matrix_rep(rep, t.at("matrix").get<int>());
            else schema("unknown transform");
        }
    return rep;
}

json cmd_teichmuller(const JobSpec& job) {
    OutRep rep = parse_rep(job.input);
    if (rep.Q.order() > job.cap_group_order) throw BudgetExceeded("group order above --cap-group-order");
    if (job.input.contains("perturb")) rep = perturb_lifts(rep, job.input.at("perturb").get<std::uint64_t>());
    auto W = teichmuller_cocycle(rep, job.seed ? std::optional<std::uint64_t>(job.seed) : std::nullopt);
    json tab = json::array();
    int q = rep.Q.order();
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c) {
                ZmVec v = W.US.module.rank() ? W.xi.at({a, b, c}) : ZmVec{};
                bool zero = std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
                if (!zero) tab.push_back(json{{"args", {a, b, c}}, {"value", vec_json(v)}});
            }
    json out;
    out["class"] = vec_json(W.cls);
    out["group"] = W.H3.describe();
    out["cocycle_nonzero_values"] = tab;
    out["equivariant"] = is_equivariant(rep);
    out["units_of_base"] = W.US.units.group.order();
    return out;
}

json cmd_crossed_product(const JobSpec& job) {
    const json& in = job.input;
    AlgebraPtr A = parse_algebra(need(in, "algebra"));
    FiniteGroup Q = parse_group(need(in, "group"));
    if (Q.order() > job.cap_group_order) throw BudgetExceeded("group order above --cap-group-order");
    auto theta = parse_maps(*A, Q, need(in, "theta"));
    std::string form = in.value("form", std::string("both"));
    if (form != "v1" && form != "v2" && form != "both") schema("form must be v1, v2 or both");
    auto spec = spec_from_action(A, Q, theta);
    json out;
    CrossedProduct C = crossed_product(spec, form == "v1" ? CrossedForm::V1 : CrossedForm::V2);
    if (form == "both") {
        auto sec = spec.ext.canonical_section();
        CrossedProduct c1 = crossed_product_v1(spec, sec);
        bool ok = true;
        try {
            crossed_product_isomorphism(spec, sec, c1, C);
        } catch (const ValidationError&) {
            ok = false;
        }
        out["v1_v2_isomorphic"] = ok;
    }
    out["dimension"] = C.C->n();
    out["modulus"] = C.C->m;
    out["left_rank_over_A"] = Q.order();
    auto az = is_azumaya(*C.C);
    out["central_over_Z/m"] = az.central;
    out["azumaya_over_Z/m"] = az.azumaya;
    std::vector<ZmVec> gens;
    for (int a = 0; a < A->n(); ++a) gens.push_back(C.embed_A.col(a));
    out["centralizer_of_A_order"] = centralizer(*C.C, gens).size().str();
    if (in.value("compare_matrix_algebra", false)) {
        int n = C.C->n(), s = 1;
        while (s * s < n) ++s;
        out["isomorphic_to_matrix_algebra"] =
            s * s == n && find_algebra_isomorphism(*C.C, *matrix_algebra(zmod(C.C->m), s)).has_value();
    }
    return out;
}

json cmd_eight_term(const JobSpec& job) {
    GroupExtension amb = parse_ambient(need(job.input, "ambient"));
    if (amb.G().order() > job.cap_group_order) throw BudgetExceeded("group order above --cap-group-order");
    GModule M = parse_module(amb.G(), need(job.input, "module"));
    XpextOptions opt;
    opt.cap_group = job.cap_group_order;
    opt.cap_enum = job.cap_enum;
    if (job.seed) opt.seed = job.seed;
    XpextReport R = xpext_enumerate(amb, M, opt);
    json out;
    json v = json::array();
    for (const auto& x : R.verdicts) v.push_back(json{{"term", x.term}, {"name", x.name}, {"exact", x.exact}, {"detail", x.detail}});
    out["verdicts"] = v;
    out["exact_at_right_terms"] = R.right_exact();
    json cl = json::array();
    for (const auto& k : R.classes)
        cl.push_back(json{{"extension_class", vec_json(R.h2N_fixed[k.e_class])}, {"delta", vec_json(k.delta)},
                          {"members", k.members}, {"delta_consistent", k.delta_consistent}});
    out["xpext_classes"] = cl;
    out["j_image"] = R.j_image;
    json h2g = json::array(), di = json::array(), ki = json::array();
    for (const auto& c : R.h2G) h2g.push_back(vec_json(c));
    for (const auto& c : R.delta_image) di.push_back(vec_json(c));
    for (const auto& c : R.ker_inf3) ki.push_back(vec_json(c));
    out["h2_G_classes"] = h2g;
    out["delta_image"] = di;
    out["ker_inflation_h3"] = ki;
    out["rejected_extension_classes"] = R.rejected_classes;
    out["delta_j_zero"] = R.delta_j_zero;
    out["truncated"] = R.truncated;
    out["groups"] = json{{"H1(Q,M^N)", R.H1Q.describe()}, {"H1(G,M)", R.H1G.describe()}, {"H1(N,M)", R.H1N.describe()},
                         {"H2(Q,M^N)", R.H2Q.describe()}, {"H2(G,M)", R.H2G.describe()}, {"H3(Q,M^N)", R.H3Q.describe()},
                         {"H3(G,M)", R.H3G.describe()}};
    return out;
}

const std::map<std::string, std::function<json(const JobSpec&)>>& table() {
    static const std::map<std::string, std::function<json(const JobSpec&)>> t{
        {"cohomology", cmd_cohomology},     {"metacyclic-class", cmd_metacyclic}, {"teichmuller", cmd_teichmuller},
        {"crossed-product", cmd_crossed_product}, {"galois-check", cmd_galois},   {"azumaya", cmd_azumaya},
        {"eight-term", cmd_eight_term}};
    return t;
}

}  // namespace

const std::vector<std::string>& cli_commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, f] : table()) v.push_back(k);
        return v;
    }();
    return names;
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

JobResult run(const JobSpec& job) {
    JobResult r;
    json prov{{"command", job.command},
              {"version", kVersion},
              {"seed", job.seed},
              {"caps", {{"group_order", job.cap_group_order}, {"enum", job.cap_enum}}}};
    auto fail = [&](int status, const char* kind, const std::string& msg) {
        r.status = status;
        r.document = json{{"error", {{"kind", kind}, {"message", msg}}}, {"provenance", prov}};
    };
    auto it = table().find(job.command);
    if (it == table().end()) {
        fail(1, "schema", "unknown command '" + job.command + "'");
        return r;
    }
    try {
        r.document = it->second(job);
        r.document["provenance"] = prov;
    } catch (const SchemaError& e) {
        fail(1, "schema", e.what());
    } catch (const json::exception& e) {
        fail(1, "schema", e.what());
    } catch (const BudgetExceeded& e) {
        fail(2, "budget", e.what());
    } catch (const ValidationError& e) {
        fail(3, "validation", e.what());
    }
    return r;
}

}  // namespace crossalg
