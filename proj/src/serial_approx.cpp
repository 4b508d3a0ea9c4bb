#include "quiverhom/serial_approx.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>

namespace qh {

// ---- applicability gate ----

bool left_serial_applicable(const Presentation& a) {
  if (!a.is_monomial()) return false;
  for (int v = 0; v < a.num_vertices(); ++v)
    if (a.out_arrows(v).size() > 1) return false;
  return true;
}

void require_left_serial(const Presentation& a) {
  if (!left_serial_applicable(a))
    throw DomainError(
        "presentation is not left serial: every vertex may have at most one "
        "outgoing arrow, with monomial relations");
}

// ---- uniserial bookkeeping ----

Path serial_chain(const Presentation& a, int vertex) {
  Path p = a.trivial_path(vertex);
  for (;;) {
    const std::vector<int>& out = a.out_arrows(a.target(p));
    if (out.empty()) return p;
    Path q = a.extend(p, out[0]);
    if (!a.monomially_alive(q)) return p;
    p = q;
  }
}

PdimResult uniserial_pdim(const Presentation& a, int vertex, int length) {
  Path ch = serial_chain(a, vertex);
  if (length < 1 || length > ch.length() + 1)
    throw std::logic_error("uniserial_pdim: length out of range");
  if (length == ch.length() + 1) return PdimResult::fin(0);
  // The cover of U(v, length) is Lambda e_v and the kernel is J^length e_v,
  // the path module of the length-prefix of the mast.
  Path pref = a.trivial_path(vertex);
  for (int i = 0; i < length; ++i) pref = a.extend(pref, ch.arrows[i]);
  PdimResult r = path_pdim(a, pref);
  if (r.finite) return PdimResult::fin(r.value + 1);
  return r;
}

TrunkFactor minimal_finite_pdim_factor(const Presentation& a, int vertex,
                                       int bound_d) {
  require_left_serial(a);
  Path ch = serial_chain(a, vertex);
  for (int len = 1; len <= ch.length() + 1; ++len) {
    PdimResult r = uniserial_pdim(a, vertex, len);
    if (r.finite && (bound_d < 0 || r.value <= bound_d))
      return TrunkFactor{vertex, len, r};
  }
  throw std::logic_error("minimal_finite_pdim_factor: no quotient qualified");
}

// ---- tree syzygy ----

namespace {

struct TreeShape {
  std::vector<std::vector<int>> parents;
  std::vector<int> depth_down;  // distance to the socle
  std::vector<int> tops;        // parentless nodes, ascending index
  int socle = -1;
};

TreeShape shape_of(const std::vector<SaguaroNode>& nodes) {
  TreeShape t;
  int n = static_cast<int>(nodes.size());
  t.parents.assign(n, {});
  for (int i = 0; i < n; ++i) {
    if (nodes[i].child < 0) {
      if (t.socle >= 0) throw std::logic_error("saguaro tree: two socles");
      t.socle = i;
    } else {
      t.parents[nodes[i].child].push_back(i);
    }
  }
  if (t.socle < 0) throw std::logic_error("saguaro tree: no socle");
  t.depth_down.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    int d = 0;
    for (int z = i; nodes[z].child >= 0; z = nodes[z].child) ++d;
    t.depth_down[i] = d;
  }
  for (int i = 0; i < n; ++i)
    if (t.parents[i].empty()) t.tops.push_back(i);
  return t;
}

// The kernel of the cover (+) Lambda e_top ->> tree splits into uniserials.
// With cols(z) = trunks through node z and A_k = trunks whose projective
// survives k steps below the socle, the rank of the kernel part generated
// at-or-above z that is still alive k steps into the overflow is
//   r(z, k) = |cols(z) /\ A_k| - [cols(z) <= A_k],
// and generators born at z number #parents(z) - 1 (one linear relation per
// merge).  Matching births against the rank profile yields the multiset.
std::vector<UniserialPart> tree_syzygy_impl(
    const Presentation& a, const std::vector<SaguaroNode>& nodes) {
  TreeShape sh = shape_of(nodes);
  int n = static_cast<int>(nodes.size());
  int m = static_cast<int>(sh.tops.size());
  if (m > 63) throw std::logic_error("saguaro tree: too many trunks");

  std::vector<std::uint64_t> colmask(n, 0);
  for (int t = 0; t < m; ++t)
    for (int z = sh.tops[t]; z >= 0; z = nodes[z].child)
      colmask[z] |= std::uint64_t{1} << t;

  std::vector<int> rest(m);
  int K = 0;
  for (int t = 0; t < m; ++t) {
    int top = sh.tops[t];
    rest[t] =
        serial_chain(a, nodes[top].vertex).length() - sh.depth_down[top];
    if (rest[t] < 0)
      throw std::logic_error("saguaro tree: trunk dies above the socle");
    K = std::max(K, rest[t]);
  }
  std::vector<std::uint64_t> alive(K + 2, 0);
  for (int k = 1; k <= K; ++k)
    for (int t = 0; t < m; ++t)
      if (rest[t] >= k) alive[k] |= std::uint64_t{1} << t;

  auto rank = [&](int z, int k) -> int {
    if (k > K) return 0;
    if (k <= 0) return std::popcount(colmask[z]) - 1;
    int c = std::popcount(colmask[z] & alive[k]);
    if ((colmask[z] & ~alive[k]) == 0) --c;
    return c;
  };

  std::vector<UniserialPart> out;
  // Generators born at merge nodes.
  for (int z = 0; z < n; ++z) {
    if (sh.parents[z].empty()) continue;
    auto born_alive = [&](int k) {
      int v = rank(z, k);
      for (int p : sh.parents[z]) v -= rank(p, k);
      return v;
    };
    for (int k = 0; k <= K; ++k) {
      int cnt = born_alive(k) - born_alive(k + 1);
      if (cnt < 0)
        throw std::logic_error("saguaro tree: rank bookkeeping broke");
      for (int c = 0; c < cnt; ++c)
        out.push_back(
            UniserialPart{nodes[z].vertex, sh.depth_down[z] + 1 + k});
    }
  }
  // A pure-overflow generator is born one step below the socle exactly when
  // every trunk's projective survives that step.
  if (K >= 1) {
    Path below = serial_chain(a, nodes[sh.socle].vertex);
    int w1 = a.arrows[below.arrows[0]].tgt;
    for (int k = 1; k <= K; ++k) {
      int btk = std::popcount(alive[k]) - rank(sh.socle, k);
      int btk1 =
          (k + 1 > K) ? 0 : std::popcount(alive[k + 1]) - rank(sh.socle, k + 1);
      int cnt = btk - btk1;
      if (cnt < 0)
        throw std::logic_error("saguaro tree: overflow bookkeeping broke");
      for (int c = 0; c < cnt; ++c) out.push_back(UniserialPart{w1, k});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PdimResult tree_pdim(const Presentation& a,
                     const std::vector<SaguaroNode>& nodes) {
  std::vector<UniserialPart> parts = tree_syzygy_impl(a, nodes);
  if (parts.empty()) return PdimResult::fin(0);
  int mx = 0;
  for (const UniserialPart& u : parts) {
    PdimResult r = uniserial_pdim(a, u.vertex, u.length);
    if (!r.finite) return r;
    mx = std::max(mx, r.value);
  }
  return PdimResult::fin(mx + 1);
}

int depth_to_socle(const std::vector<SaguaroNode>& nodes, int z) {
  int d = 0;
  for (; nodes[z].child >= 0; z = nodes[z].child) ++d;
  return d;
}

}  // namespace

int Saguaro::socle_node() const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].child < 0) return static_cast<int>(i);
  throw std::logic_error("saguaro: no socle node");
}

std::vector<UniserialPart> saguaro_syzygy(const Presentation& a,
                                          const Saguaro& s) {
  return tree_syzygy_impl(a, s.nodes);
}

PdimResult saguaro_pdim(const Presentation& a, const Saguaro& s) {
  return tree_pdim(a, s.nodes);
}

// ---- greedy construction ----

Saguaro saguaro_approximation(const Presentation& a, int vertex, int bound_d) {
  require_left_serial(a);
  if (vertex < 0 || vertex >= a.num_vertices())
    throw std::logic_error("saguaro_approximation: bad vertex");

  TrunkFactor first = minimal_finite_pdim_factor(a, vertex, bound_d);
  Saguaro s;
  s.anchor_vertex = vertex;
  s.bound_d = bound_d;
  Path ch = serial_chain(a, vertex);
  int cur = vertex;
  for (int i = 0; i < first.length; ++i) {
    bool last = (i + 1 == first.length);
    s.nodes.push_back(SaguaroNode{cur, last ? -1 : i + 1,
                                  last ? -1 : ch.arrows[i]});
    if (!last) cur = a.arrows[ch.arrows[i]].tgt;
  }

  auto admits = [&](const std::vector<SaguaroNode>& ns) {
    PdimResult r = tree_pdim(a, ns);
    return r.finite && (bound_d < 0 || r.value <= bound_d);
  };

  // Attach single nodes wherever an unused arrow enters the tree, as long as
  // the exact pdim stays within the bound.  Rescanning to a fixpoint makes
  // the result independent of the scan order.
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t z = 0; z < s.nodes.size(); ++z) {
      if (z == 0) continue;  // the anchor must stay a top of its trunk
      for (int b : a.in_arrows(s.nodes[z].vertex)) {
        bool used = false;
        for (const SaguaroNode& nd : s.nodes)
          if (nd.child == static_cast<int>(z) && nd.arrow == b) {
            used = true;
            break;
          }
        if (used) continue;
        int w = a.arrows[b].src;
        // The new trunk must reach the common socle inside its projective.
        if (serial_chain(a, w).length() <
            depth_to_socle(s.nodes, static_cast<int>(z)) + 1)
          continue;
        s.nodes.push_back(SaguaroNode{w, static_cast<int>(z), b});
        if (admits(s.nodes))
          grew = true;
        else
          s.nodes.pop_back();
      }
    }
  }

  // Trunks: maximal chains from the parentless nodes, in attachment order.
  TreeShape sh = shape_of(s.nodes);
  s.tops = sh.tops;
  for (int t : s.tops) {
    Path p = a.trivial_path(s.nodes[t].vertex);
    for (int z = t; s.nodes[z].child >= 0; z = s.nodes[z].child)
      p = a.extend(p, s.nodes[z].arrow);
    s.masts.push_back(p);
  }
  // Gluings between consecutive trunks at their highest shared node.
  for (std::size_t i = 0; i + 1 < s.tops.size(); ++i) {
    std::vector<char> on_left(s.nodes.size(), 0);
    for (int z = s.tops[i]; z >= 0; z = s.nodes[z].child) on_left[z] = 1;
    int meet = -1;
    for (int z = s.tops[i + 1]; z >= 0; z = s.nodes[z].child)
      if (on_left[z]) {
        meet = z;
        break;
      }
    if (meet < 0) throw std::logic_error("saguaro: disconnected trunks");
    Gluing g;
    g.index = static_cast<int>(i);
    auto upper_segment = [&](int top) {
      Path p = a.trivial_path(s.nodes[top].vertex);
      for (int z = top; z != meet; z = s.nodes[z].child)
        p = a.extend(p, s.nodes[z].arrow);
      return p;
    };
    g.q_left = upper_segment(s.tops[i]);
    g.q_right = upper_segment(s.tops[i + 1]);
    if (g.q_left.length() == 0 || g.q_right.length() == 0)
      throw std::logic_error("saguaro: gluing at a trunk top");
    s.gluings.push_back(g);
  }

  PdimResult pd = tree_pdim(a, s.nodes);
  if (!pd.finite)
    throw std::logic_error("saguaro: infinite pdim after saturation");
  s.pdim = pd.value;
  return s;
}

SerialFindimReport serial_findim_report(const Presentation& a) {
  require_left_serial(a);
  SerialFindimReport rep;
  for (int v = 0; v < a.num_vertices(); ++v) {
    rep.per_simple.push_back(saguaro_approximation(a, v, -1));
    rep.lfindim = std::max(rep.lfindim, rep.per_simple.back().pdim);
  }
  return rep;
}

// ---- rendering ----

LayeredGraph saguaro_graph(const Presentation& a, const Saguaro& s) {
  (void)a;
  TreeShape sh = shape_of(s.nodes);
  int n = static_cast<int>(s.nodes.size());
  std::vector<int> depth(n, -1);
  std::function<int(int)> dep = [&](int z) -> int {
    if (depth[z] >= 0) return depth[z];
    int d = 0;
    for (int p : sh.parents[z]) d = std::max(d, dep(p) + 1);
    return depth[z] = d;
  };
  LayeredGraph g;
  for (int i = 0; i < n; ++i)
    g.nodes.push_back(LayeredGraph::Node{s.nodes[i].vertex, dep(i)});
  for (int i = 0; i < n; ++i)
    if (s.nodes[i].child >= 0)
      g.edges.push_back(LayeredGraph::Edge{i, s.nodes[i].child,
                                           s.nodes[i].arrow});
  return g;
}

}  // namespace qh
