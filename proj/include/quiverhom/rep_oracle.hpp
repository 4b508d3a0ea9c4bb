// Linear-algebra oracle for modules over a presented algebra.  Modules are
// explicit representations (a space per vertex, a matrix per arrow); every
// operation here is exact linear algebra over the chosen field and is
// independent of the walk combinatorics, so the two routes can be checked
// against each other.
#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "quiverhom/field.hpp"
#include "quiverhom/presentation.hpp"
#include "quiverhom/string_calculus.hpp"

namespace qh {

// A finite-dimensional left module: mat[ai] maps the source block into the
// target block of arrow ai.
template <class F>
struct Module {
  F f;
  std::vector<int> dim;     // per vertex
  std::vector<Mat<F>> mat;  // per arrow: dim[tgt] x dim[src]

  int total_dim() const {
    int t = 0;
    for (int d : dim) t += d;
    return t;
  }
};

// A map of modules, one block per vertex: blocks[v] is dimN[v] x dimM[v].
template <class F>
struct ModuleMap {
  std::vector<Mat<F>> blocks;
};

template <class F>
Module<F> zero_module(F f, const Presentation& a) {
  Module<F> m;
  m.f = f;
  m.dim.assign(a.num_vertices(), 0);
  for (int ai = 0; ai < a.num_arrows(); ++ai)
    m.mat.push_back(Mat<F>(f, 0, 0));
  return m;
}

// Matrix of the action of a path (arrows applied in application order).
template <class F>
Mat<F> path_action(const Presentation&, const Module<F>& m, const Path& p) {
  Mat<F> r = Mat<F>::identity(m.f, m.dim[p.source]);
  for (int ai : p.arrows) r = m.mat[ai].mul(r);
  return r;
}

// Every realizer below must produce a genuine module: all monomial relations
// act by zero and all linear relations sum to zero.
template <class F>
bool module_satisfies_relations(const Presentation& a, const Module<F>& m) {
  for (int ai = 0; ai < a.num_arrows(); ++ai) {
    const Mat<F>& mm = m.mat[ai];
    if (mm.rows != m.dim[a.arrows[ai].tgt] || mm.cols != m.dim[a.arrows[ai].src]) return false;
  }
  for (const Path& r : a.relations) {
    Mat<F> act = path_action(a, m, r);
    for (const auto& e : act.a)
      if (!m.f.is_zero(e)) return false;
  }
  for (const LinRel& lr : a.linrels) {
    const Path& first = lr.terms.front().second;
    Mat<F> sum(m.f, m.dim[a.target(first)], m.dim[first.source]);
    for (const auto& [coef, p] : lr.terms) {
      Mat<F> act = path_action(a, m, p);
      auto c = m.f.from_int(coef);
      for (size_t i = 0; i < act.a.size(); ++i)
        sum.a[i] = m.f.add(sum.a[i], m.f.mul(c, act.a[i]));
    }
    for (const auto& e : sum.a)
      if (!m.f.is_zero(e)) return false;
  }
  return true;
}

template <class F>
Module<F> realize_simple(F f, const Presentation& a, int v) {
  Module<F> m = zero_module(f, a);
  m.dim[v] = 1;
  for (int ai = 0; ai < a.num_arrows(); ++ai)
    m.mat[ai] = Mat<F>(f, m.dim[a.arrows[ai].tgt], m.dim[a.arrows[ai].src]);
  return m;
}

// String module of a word: one basis vector per node; each letter's arrow
// sends the upper node to the lower one.
template <class F>
Module<F> realize_word(F f, const Presentation& a, const Word& w) {
  LayeredGraph g = word_graph(a, w);
  Module<F> m = zero_module(f, a);
  std::vector<int> pos(g.nodes.size());  // index within the vertex block
  for (size_t i = 0; i < g.nodes.size(); ++i) pos[i] = m.dim[g.nodes[i].vertex]++;
  for (int ai = 0; ai < a.num_arrows(); ++ai)
    m.mat[ai] = Mat<F>(f, m.dim[a.arrows[ai].tgt], m.dim[a.arrows[ai].src]);
  for (const auto& e : g.edges)
    m.mat[e.arrow].at(pos[e.lower], pos[e.upper]) = f.one();
  return m;
}

// Band module of a cyclic word with an invertible parameter matrix `c`
// (s x s) attached to letter 0; all other letters act by the identity.
template <class F>
Module<F> realize_band(F f, const Presentation& a, const CyclicWord& w, const Mat<F>& c) {
  if (!cyclic_word_is_valid(a, w)) throw DomainError("realize_band: invalid cyclic word");
  const int n = static_cast<int>(w.letters.size());
  const int s = c.rows;
  if (c.rows != c.cols || s <= 0) throw std::logic_error("realize_band: parameter matrix must be square");
  std::vector<int> vtx(n);
  {
    int cur = w.base;
    for (int i = 0; i < n; ++i) {
      vtx[i] = cur;
      const Letter& l = w.letters[i];
      cur = l.inverse ? a.arrows[l.arrow].src : a.arrows[l.arrow].tgt;
    }
  }
  Module<F> m = zero_module(f, a);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) {
    pos[i] = m.dim[vtx[i]];
    m.dim[vtx[i]] += s;
  }
  for (int ai = 0; ai < a.num_arrows(); ++ai)
    m.mat[ai] = Mat<F>(f, m.dim[a.arrows[ai].tgt], m.dim[a.arrows[ai].src]);
  for (int i = 0; i < n; ++i) {
    const Letter& l = w.letters[i];
    const int left = i, right = (i + 1) % n;
    const int upper = l.inverse ? right : left;
    const int lower = l.inverse ? left : right;
    for (int r = 0; r < s; ++r)
      for (int cc = 0; cc < s; ++cc) {
        auto val = (i == 0) ? c.at(r, cc) : (r == cc ? f.one() : f.zero());
        if (!f.is_zero(val))
          m.mat[l.arrow].at(pos[lower] + r, pos[upper] + cc) = val;
      }
  }
  return m;
}

// The indecomposable projective at a vertex, valid for any presentation:
// basis paths of the reduced path space starting at v.
template <class F>
Module<F> realize_projective(F f, const Presentation& a, int v) {
  PathReduction<F> red(a, f);
  std::vector<int> mine;  // global basis indices of paths from v
  std::vector<int> local(red.basis().size(), -1);
  for (size_t i = 0; i < red.basis().size(); ++i)
    if (red.basis()[i].source == v) {
      local[i] = static_cast<int>(mine.size());
      mine.push_back(static_cast<int>(i));
    }
  Module<F> m = zero_module(f, a);
  std::vector<int> pos(mine.size());
  for (size_t i = 0; i < mine.size(); ++i)
    pos[i] = m.dim[a.target(red.basis()[mine[i]])]++;
  for (int ai = 0; ai < a.num_arrows(); ++ai)
    m.mat[ai] = Mat<F>(f, m.dim[a.arrows[ai].tgt], m.dim[a.arrows[ai].src]);
  for (size_t i = 0; i < mine.size(); ++i) {
    const Path& p = red.basis()[mine[i]];
    for (int ai : a.out_arrows(a.target(p))) {
      for (const auto& [coef, gidx] : red.normal_form(a.extend(p, ai))) {
        if (local[gidx] < 0) throw std::logic_error("realize_projective: reduction left the source class");
        m.mat[ai].at(pos[local[gidx]], pos[i]) = m.f.add(m.mat[ai].at(pos[local[gidx]], pos[i]), coef);
      }
    }
  }
  return m;
}

// The cyclic left module generated by an alive path p (monomial algebras):
// basis { mu : mu ∘ p alive }, arrows acting by composition.
template <class F>
Module<F> realize_path_module(F f, const Presentation& a, const Path& p) {
  if (!a.is_monomial()) throw DomainError("path modules need a monomial presentation");
  if (!a.monomially_alive(p)) throw DomainError("realize_path_module: dead path");
  std::vector<Path> mus;
  for (const Path& mu : a.alive_paths_from(a.target(p)))
    if (a.monomially_alive(a.compose(mu, p))) mus.push_back(mu);
  Module<F> m = zero_module(f, a);
  std::vector<int> pos(mus.size());
  for (size_t i = 0; i < mus.size(); ++i) pos[i] = m.dim[a.target(mus[i])]++;
  for (int ai = 0; ai < a.num_arrows(); ++ai)
    m.mat[ai] = Mat<F>(f, m.dim[a.arrows[ai].tgt], m.dim[a.arrows[ai].src]);
  for (size_t i = 0; i < mus.size(); ++i)
    for (int ai : a.out_arrows(a.target(mus[i]))) {
      Path q = a.extend(mus[i], ai);
      if (!a.monomially_alive(a.compose(q, p))) continue;
      for (size_t j = 0; j < mus.size(); ++j)
        if (mus[j] == q) {
          m.mat[ai].at(pos[j], pos[i]) = f.one();
          break;
        }
    }
  return m;
}

// Quotient of the projective at v by the paths of length >= k (monomial).
template <class F>
Module<F> realize_truncated_projective(F f, const Presentation& a, int v, int k) {
  if (!a.is_monomial()) throw DomainError("truncated projectives need a monomial presentation");
  if (k < 1) throw std::logic_error("realize_truncated_projective: k must be >= 1");
  std::vector<Path> ps;
  for (const Path& p : a.alive_paths_from(v))
    if (p.length() < k) ps.push_back(p);
  Module<F> m = zero_module(f, a);
  std::vector<int> pos(ps.size());
  for (size_t i = 0; i < ps.size(); ++i) pos[i] = m.dim[a.target(ps[i])]++;
  for (int ai = 0; ai < a.num_arrows(); ++ai)
    m.mat[ai] = Mat<F>(f, m.dim[a.arrows[ai].tgt], m.dim[a.arrows[ai].src]);
  for (size_t i = 0; i < ps.size(); ++i)
    for (int ai : a.out_arrows(a.target(ps[i]))) {
      Path q = a.extend(ps[i], ai);
      if (q.length() >= k || !a.monomially_alive(q)) continue;
      for (size_t j = 0; j < ps.size(); ++j)
        if (ps[j] == q) {
          m.mat[ai].at(pos[j], pos[i]) = f.one();
          break;
        }
    }
  return m;
}

template <class F>
Module<F> direct_sum(const Presentation& a, const std::vector<Module<F>>& parts) {
  if (parts.empty()) throw std::logic_error("direct_sum: empty list");
  Module<F> m = zero_module(parts.front().f, a);
  for (const auto& p : parts)
    for (int v = 0; v < a.num_vertices(); ++v) m.dim[v] += p.dim[v];
  for (int ai = 0; ai < a.num_arrows(); ++ai) {
    const int s = a.arrows[ai].src, t = a.arrows[ai].tgt;
    Mat<F> mm(m.f, m.dim[t], m.dim[s]);
    int ro = 0, co = 0;
    for (const auto& p : parts) {
      for (int r = 0; r < p.dim[t]; ++r)
        for (int c = 0; c < p.dim[s]; ++c) mm.at(ro + r, co + c) = p.mat[ai].at(r, c);
      ro += p.dim[t];
      co += p.dim[s];
    }
    m.mat[ai] = std::move(mm);
  }
  return m;
}

template <class F>
Module<F> direct_sum(const Presentation& a, const Module<F>& x, const Module<F>& y) {
  return direct_sum(a, std::vector<Module<F>>{x, y});
}

template <class F>
ModuleMap<F> identity_map(const Presentation& a, const Module<F>& m) {
  ModuleMap<F> f;
  for (int v = 0; v < a.num_vertices(); ++v)
    f.blocks.push_back(Mat<F>::identity(m.f, m.dim[v]));
  return f;
}

template <class F>
ModuleMap<F> compose_maps(const ModuleMap<F>& later, const ModuleMap<F>& first) {
  ModuleMap<F> r;
  for (size_t v = 0; v < first.blocks.size(); ++v)
    r.blocks.push_back(later.blocks[v].mul(first.blocks[v]));
  return r;
}

template <class F>
bool is_module_map(const Presentation& a, const Module<F>& m, const Module<F>& n,
                   const ModuleMap<F>& f) {
  for (int ai = 0; ai < a.num_arrows(); ++ai) {
    const int s = a.arrows[ai].src, t = a.arrows[ai].tgt;
    Mat<F> lhs = n.mat[ai].mul(f.blocks[s]);
    Mat<F> rhs = f.blocks[t].mul(m.mat[ai]);
    if (lhs.a != rhs.a) return false;
  }
  return true;
}

namespace detail {
// Layout of the flattened hom space: per vertex, row-major blocks.
template <class F>
int hom_space_cols(const Presentation& a, const Module<F>& m, const Module<F>& n) {
  int c = 0;
  for (int v = 0; v < a.num_vertices(); ++v) c += n.dim[v] * m.dim[v];
  return c;
}

template <class F>
ModuleMap<F> unflatten_hom(const Presentation& a, const Module<F>& m, const Module<F>& n,
                           const std::vector<typename F::Elem>& x) {
  ModuleMap<F> f;
  int off = 0;
  for (int v = 0; v < a.num_vertices(); ++v) {
    Mat<F> b(m.f, n.dim[v], m.dim[v]);
    for (auto& e : b.a) e = x[off++];
    f.blocks.push_back(std::move(b));
  }
  return f;
}

template <class F>
std::vector<typename F::Elem> flatten_hom(const Presentation& a, const ModuleMap<F>& f) {
  std::vector<typename F::Elem> x;
  for (int v = 0; v < a.num_vertices(); ++v)
    x.insert(x.end(), f.blocks[v].a.begin(), f.blocks[v].a.end());
  return x;
}
}  // namespace detail

// Basis of Hom(M, N), deterministic order.
template <class F>
std::vector<ModuleMap<F>> hom_basis(const Presentation& a, const Module<F>& m, const Module<F>& n) {
  const int cols = detail::hom_space_cols(a, m, n);
  std::vector<int> voff(a.num_vertices() + 1, 0);
  for (int v = 0; v < a.num_vertices(); ++v) voff[v + 1] = voff[v] + n.dim[v] * m.dim[v];
  int rows = 0;
  for (int ai = 0; ai < a.num_arrows(); ++ai)
    rows += n.dim[a.arrows[ai].tgt] * m.dim[a.arrows[ai].src];
  Mat<F> sys(m.f, rows, cols);
  int ro = 0;
  for (int ai = 0; ai < a.num_arrows(); ++ai) {
    const int s = a.arrows[ai].src, t = a.arrows[ai].tgt;
    // Equation N_a * f_s - f_t * M_a = 0, entry (i, j): i < n.dim[t], j < m.dim[s].
    for (int i = 0; i < n.dim[t]; ++i)
      for (int j = 0; j < m.dim[s]; ++j) {
        const int row = ro + i * m.dim[s] + j;
        for (int k = 0; k < n.dim[s]; ++k) {
          // coefficient of f_s(k, j)
          const int col = voff[s] + k * m.dim[s] + j;
          sys.at(row, col) = m.f.add(sys.at(row, col), n.mat[ai].at(i, k));
        }
        for (int k = 0; k < m.dim[t]; ++k) {
          const int col = voff[t] + i * m.dim[t] + k;
          sys.at(row, col) = m.f.sub(sys.at(row, col), m.mat[ai].at(k, j));
        }
      }
    ro += n.dim[t] * m.dim[s];
  }
  std::vector<ModuleMap<F>> basis;
  for (const auto& x : kernel_basis(sys)) basis.push_back(detail::unflatten_hom(a, m, n, x));
  return basis;
}

template <class F>
int hom_dim(const Presentation& a, const Module<F>& m, const Module<F>& n) {
  return static_cast<int>(hom_basis(a, m, n).size());
}

// Projective cover P -> M with its kernel.
template <class F>
struct CoverResult {
  std::vector<int> tops;   // cover summand vertices, deterministic order
  Module<F> cover;         // ⊕ Λe_v over tops
  ModuleMap<F> map;        // cover -> M
  Module<F> syzygy;        // kernel of map, with induced action
};

template <class F>
std::vector<int> top_multiplicities(const Presentation& a, const Module<F>& m) {
  std::vector<int> tops(a.num_vertices(), 0);
  for (int v = 0; v < a.num_vertices(); ++v) {
    int radcols = 0;
    for (int ai : a.in_arrows(v)) radcols += m.dim[a.arrows[ai].src];
    Mat<F> rad(m.f, m.dim[v], radcols);
    int co = 0;
    for (int ai : a.in_arrows(v)) {
      const Mat<F>& mm = m.mat[ai];
      for (int r = 0; r < mm.rows; ++r)
        for (int c = 0; c < mm.cols; ++c) rad.at(r, co + c) = mm.at(r, c);
      co += mm.cols;
    }
    tops[v] = m.dim[v] - rank(rad);
  }
  return tops;
}

template <class F>
CoverResult<F> cover_and_syzygy(const Presentation& a, const Module<F>& m) {
  F f = m.f;
  CoverResult<F> out;
  // 1. Generators: standard basis vectors completing rad M, per vertex.
  std::vector<std::pair<int, int>> gens;  // (vertex, coordinate)
  for (int v = 0; v < a.num_vertices(); ++v) {
    int radcols = 0;
    for (int ai : a.in_arrows(v)) radcols += m.dim[a.arrows[ai].src];
    Mat<F> span(f, m.dim[v], radcols + m.dim[v]);
    int co = 0;
    for (int ai : a.in_arrows(v)) {
      const Mat<F>& mm = m.mat[ai];
      for (int r = 0; r < mm.rows; ++r)
        for (int c = 0; c < mm.cols; ++c) span.at(r, co + c) = mm.at(r, c);
      co += mm.cols;
    }
    int cur = rank(span);
    for (int c = 0; c < m.dim[v]; ++c) {
      span.at(c, radcols + c) = f.one();
      int nr = rank(span);
      if (nr > cur) {
        gens.emplace_back(v, c);
        cur = nr;
      } else {
        span.at(c, radcols + c) = f.zero();
      }
    }
  }
  // 2. Cover and the lift.
  std::vector<Module<F>> parts;
  for (auto& [v, c] : gens) {
    out.tops.push_back(v);
    parts.push_back(realize_projective(f, a, v));
  }
  if (parts.empty()) {
    out.cover = zero_module(f, a);
    out.syzygy = zero_module(f, a);
    out.map = ModuleMap<F>{};
    for (int v = 0; v < a.num_vertices(); ++v)
      out.map.blocks.push_back(Mat<F>(f, m.dim[v], 0));
    return out;
  }
  out.cover = direct_sum(a, parts);
  // Columns of the map: basis paths of each summand, in the same layout that
  // direct_sum used (per part, per vertex block position).
  PathReduction<F> red(a, f);
  std::vector<int> coloff(a.num_vertices(), 0);  // running column offset per vertex block
  ModuleMap<F> phi;
  for (int v = 0; v < a.num_vertices(); ++v) phi.blocks.push_back(Mat<F>(f, m.dim[v], out.cover.dim[v]));
  for (size_t pi = 0; pi < parts.size(); ++pi) {
    const auto [gv, gc] = gens[pi];
    // Basis paths from gv in reduction order; their block positions mirror
    // realize_projective's layout.
    std::vector<int> pos(a.num_vertices(), 0);
    for (const Path& p : red.basis()) {
      if (p.source != gv) continue;
      const int t = a.target(p);
      // image of this basis path: act on the generator.
      std::vector<typename F::Elem> gvec(m.dim[gv], f.zero());
      gvec[gc] = f.one();
      auto img = path_action(a, m, p).apply(gvec);
      for (int r = 0; r < m.dim[t]; ++r) phi.blocks[t].at(r, coloff[t] + pos[t]) = img[r];
      pos[t]++;
    }
    for (int v = 0; v < a.num_vertices(); ++v) coloff[v] += parts[pi].dim[v];
  }
  out.map = phi;
  // 3. Kernel with induced action.
  std::vector<std::vector<std::vector<typename F::Elem>>> kb(a.num_vertices());
  for (int v = 0; v < a.num_vertices(); ++v) kb[v] = kernel_basis(phi.blocks[v]);
  Module<F> syz = zero_module(f, a);
  for (int v = 0; v < a.num_vertices(); ++v) syz.dim[v] = static_cast<int>(kb[v].size());
  for (int ai = 0; ai < a.num_arrows(); ++ai) {
    const int s = a.arrows[ai].src, t = a.arrows[ai].tgt;
    Mat<F> act(f, syz.dim[t], syz.dim[s]);
    Mat<F> basis_t(f, out.cover.dim[t], syz.dim[t]);
    for (int j = 0; j < syz.dim[t]; ++j)
      for (int r = 0; r < out.cover.dim[t]; ++r) basis_t.at(r, j) = kb[t][j][r];
    for (int j = 0; j < syz.dim[s]; ++j) {
      auto img = out.cover.mat[ai].apply(kb[s][j]);
      std::vector<typename F::Elem> coords;
      if (!solve(basis_t, img, coords))
        throw std::logic_error("cover_and_syzygy: kernel not closed under the action");
      for (int r = 0; r < syz.dim[t]; ++r) act.at(r, j) = coords[r];
    }
    syz.mat[ai] = std::move(act);
  }
  out.syzygy = std::move(syz);
  return out;
}

// Isomorphism oracle: equal dimension vectors, matching hom dimensions, then
// a deterministic randomized search for an invertible hom.  A `true` answer
// is certain; a `false` answer is certain whenever the necessary conditions
// fail and overwhelmingly likely otherwise (64 draws over the field).
template <class F>
bool is_isomorphic(const Presentation& a, const Module<F>& m, const Module<F>& n) {
  if (m.dim != n.dim) return false;
  if (m.total_dim() == 0) return true;
  auto homs = hom_basis(a, m, n);
  if (homs.empty()) return false;
  if (hom_dim(a, m, n) != hom_dim(a, n, m)) return false;
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(0, 100);
  for (int attempt = 0; attempt < 64; ++attempt) {
    ModuleMap<F> cand;
    for (int v = 0; v < a.num_vertices(); ++v) cand.blocks.push_back(Mat<F>(m.f, n.dim[v], m.dim[v]));
    for (const auto& h : homs) {
      auto c = m.f.from_int(coef(rng));
      for (int v = 0; v < a.num_vertices(); ++v)
        for (size_t i = 0; i < h.blocks[v].a.size(); ++i)
          cand.blocks[v].a[i] = m.f.add(cand.blocks[v].a[i], m.f.mul(c, h.blocks[v].a[i]));
    }
    bool inv = true;
    for (int v = 0; v < a.num_vertices() && inv; ++v)
      if (rank(cand.blocks[v]) != m.dim[v]) inv = false;
    if (inv) return true;
  }
  return false;
}

// Does every map X -> M factor through phi: Y -> M?  Exact: the composition
// map Hom(X, Y) -> Hom(X, M) must hit all of Hom(X, M).
template <class F>
bool all_homs_factor_through(const Presentation& a, const Module<F>& x, const Module<F>& y,
                             const Module<F>& m, const ModuleMap<F>& phi) {
  auto target_basis = hom_basis(a, x, m);
  if (target_basis.empty()) return true;
  auto lift_basis = hom_basis(a, x, y);
  Mat<F> img(x.f, static_cast<int>(lift_basis.size()), detail::hom_space_cols(a, x, m));
  for (size_t i = 0; i < lift_basis.size(); ++i) {
    auto flat = detail::flatten_hom(a, compose_maps(phi, lift_basis[i]));
    for (size_t j = 0; j < flat.size(); ++j) img.at(static_cast<int>(i), static_cast<int>(j)) = flat[j];
  }
  for (const auto& t : target_basis)
    if (!in_row_span(img, detail::flatten_hom(a, t))) return false;
  return true;
}

}  // namespace qh
