// Crossed modules and crossed 2-fold extensions  M >-> C -> Gamma ->> G.
#pragma once

#include "crossalg/cohomology.hpp"
#include "crossalg/group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crossalg {

// Gamma acts on C (carrier C) by automorphisms.
struct CrossedModule {
    FiniteGroup C, Gamma;
    GroupHom d;           // C -> Gamma
    GroupAction action;   // actor Gamma, carrier |C|
};

// Every violated instance of: action by automorphisms, equivariance d(g.c) = g d(c) g^-1,
// Peiffer b c b^-1 = d(b).c.  Empty = valid.
std::vector<std::string> validate_crossed_module(const CrossedModule& cm, size_t max_report = 20);

struct Crossed2Extension {
    FiniteGroup M;          // abelian
    AbelianCoords coords;   // coordinates used for the module M
    GroupHom i;             // M -> C
    CrossedModule cm;
    GroupHom p;             // Gamma -> G
    const FiniteGroup& G() const { return p.target; }
};

std::vector<std::string> validate_crossed2(const Crossed2Extension& e, size_t max_report = 20);
// G acts on M through any section: g.m = s(g).m inside C
GModule crossed2_module(const Crossed2Extension& e);

// xi(x,y,z) = f(x,y) f(xy,z) f(x,yz)^-1 (s(x).f(y,z))^-1, read in M, where d f(x,y) = s(x)s(y)s(xy)^-1.
// Without a seed: smallest element of each fibre; with a seed, random normalised choices.
Cochain cocycle_of_crossed2(const Crossed2Extension& e, std::optional<std::uint64_t> seed = std::nullopt);

// 0 -> M = M -0-> Q = Q -> 1
Crossed2Extension trivial_crossed2(const FiniteGroup& Q, const GModule& M);
Crossed2Extension baer_sum(const Crossed2Extension& a, const Crossed2Extension& b);

// C_{lr} -> G(r,s,t,f) -> C_s with v -> y and x.v = v^t;  M = C_l = <v^r> with coordinate m <-> v^{rm}.
Crossed2Extension metacyclic_crossed2(int r, int s, int t, int f, int l);

// helpers
FiniteGroup abelian_group(const std::vector<i64>& factors);  // mixed radix, first coordinate fastest
AbelianCoords mixed_radix_coords(const std::vector<i64>& factors);
GModule module_from_action(const FiniteGroup& G, const FiniteGroup& A, const AbelianCoords& coords,
                           const GroupAction& action);
// the inverse: GModule -> action on abelian_group(factors)
GroupAction module_action(const FiniteGroup& G, const GModule& M);

}  // namespace crossalg
