#pragma once
//
// Minimal approximations by saguaro modules over left serial path algebras.
//
// A left serial algebra (at most one arrow leaves each vertex) has uniserial
// projectives, so every uniserial module is a truncated projective
// U(v, len) = Lambda e_v / J^len and is determined by its top vertex and its
// Loewy length.  A *saguaro* is a tree module obtained by gluing uniserial
// trunks along common lower segments so that the socle stays simple; the
// trunks embed canonically and their tops remain tops of the tree.
//
// The central operation builds, for a simple S and a bound d (or d = "any
// finite"), the minimal approximation of S by a module of projective
// dimension <= d: start from the smallest quotient Lambda e / J^k of finite
// (resp. bounded) projective dimension and greedily attach further trunks
// wherever an unused arrow enters an existing node, keeping the tree's exact
// projective dimension within the bound.  Saturation runs to a fixpoint, so
// the result does not depend on the attachment order.
//
// Projective dimensions of candidate trees are exact: the first syzygy of a
// tree module splits into uniserials whose multiset is computed by rank
// bookkeeping over the tree (see saguaro_syzygy), and uniserial pdims reduce
// to path modules.

#include <compare>
#include <string>
#include <vector>

#include "quiverhom/homology.hpp"
#include "quiverhom/presentation.hpp"
#include "quiverhom/rep_oracle.hpp"
#include "quiverhom/string_calculus.hpp"

namespace qh {

// ---- applicability gate ----

// True when every vertex has at most one outgoing arrow (so all projectives
// are uniserial) and the presentation is monomial.
bool left_serial_applicable(const Presentation& a);
void require_left_serial(const Presentation& a);  // throws DomainError

// ---- uniserial bookkeeping ----

// The unique maximal alive path out of `vertex`: the mast of Lambda e_v.
Path serial_chain(const Presentation& a, int vertex);

// Exact projective dimension of U(v, length) = Lambda e_v / J^length for
// 1 <= length <= |serial_chain(v)| + 1 (the upper end is Lambda e_v itself).
PdimResult uniserial_pdim(const Presentation& a, int vertex, int length);

// The smallest-length quotient Lambda e_v / J^length with finite projective
// dimension (bound_d = -1) resp. with pdim <= bound_d.  Always exists: the
// full projective qualifies.
struct TrunkFactor {
  int vertex = -1;
  int length = 0;  // Loewy length of the factor
  PdimResult pd;
};
TrunkFactor minimal_finite_pdim_factor(const Presentation& a, int vertex,
                                       int bound_d = -1);

// ---- saguaros ----

// Basis nodes of the tree, in attachment order.  Node 0 is the top of the
// first trunk; each node points down at its unique child (the socle has
// child == -1) via the stated arrow.
struct SaguaroNode {
  int vertex = -1;
  int child = -1;
  int arrow = -1;
  auto operator<=>(const SaguaroNode&) const = default;
};

// Consecutive trunks index and index+1 are glued below their tops: q_left
// and q_right are the upper segments (right subpaths of the two masts) that
// reach the highest node the trunks share.  Both are nontrivial.
struct Gluing {
  int index = -1;
  Path q_left;
  Path q_right;
  auto operator<=>(const Gluing&) const = default;
};

struct Saguaro {
  int anchor_vertex = -1;  // the approximated simple sits at this vertex
  int bound_d = -1;        // d of the request; -1 means "any finite pdim"
  std::vector<SaguaroNode> nodes;
  std::vector<int> tops;    // node indices of the trunk tops, in trunk order
  std::vector<Path> masts;  // per trunk: the full path top -> socle
  std::vector<Gluing> gluings;
  int pdim = 0;  // exact projective dimension of the tree module

  int dim() const { return static_cast<int>(nodes.size()); }
  int socle_node() const;
  // Loewy length of trunk t (number of nodes on its chain).
  int trunk_length(int t) const { return masts[t].length() + 1; }
  bool operator==(const Saguaro&) const = default;
};

// One uniserial summand U(vertex, length).
struct UniserialPart {
  int vertex = -1;
  int length = 0;
  auto operator<=>(const UniserialPart&) const = default;
};

// Exact first syzygy of the tree module: the kernel of the projective cover
// by the trunk tops' projectives is a direct sum of uniserials.  Returned
// sorted ascending (a multiset).
std::vector<UniserialPart> saguaro_syzygy(const Presentation& a,
                                          const Saguaro& s);

// Exact projective dimension of the tree module (0 when the syzygy is empty,
// else 1 + max over the summands).
PdimResult saguaro_pdim(const Presentation& a, const Saguaro& s);

// The minimal approximation of the simple at `vertex` by a module of
// projective dimension <= bound_d (bound_d = -1: finite).  Throws
// DomainError when the presentation is not left serial.
Saguaro saguaro_approximation(const Presentation& a, int vertex,
                              int bound_d = -1);

// Left-serial finitistic dimension: the maximum projective dimension of the
// finite-pdim approximations over all simples.
struct SerialFindimReport {
  std::vector<Saguaro> per_simple;  // indexed by vertex
  int lfindim = 0;
  bool operator==(const SerialFindimReport&) const = default;
};
SerialFindimReport serial_findim_report(const Presentation& a);

// ---- realization and rendering ----

// Tree module: one basis node per saguaro node (grouped by vertex in node
// order); each arrow maps a node onto its child when the labels match.
template <class F>
Module<F> realize_saguaro(F f, const Presentation& a, const Saguaro& s) {
  Module<F> m = zero_module(f, a);
  std::vector<int> pos(s.nodes.size());
  for (std::size_t i = 0; i < s.nodes.size(); ++i)
    pos[i] = m.dim[s.nodes[i].vertex]++;
  for (int ai = 0; ai < a.num_arrows(); ++ai)
    m.mat[ai] = Mat<F>(f, m.dim[a.arrows[ai].tgt], m.dim[a.arrows[ai].src]);
  for (std::size_t i = 0; i < s.nodes.size(); ++i)
    if (s.nodes[i].child >= 0)
      m.mat[s.nodes[i].arrow].at(pos[s.nodes[i].child], pos[i]) = f.one();
  return m;
}

// Layered drawing of the tree: depth = longest descent from a top, edges
// point downward.  Nodes appear in saguaro node order.
LayeredGraph saguaro_graph(const Presentation& a, const Saguaro& s);

}  // namespace qh
