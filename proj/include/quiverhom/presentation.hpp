// Quiver-with-relations presentations of finite-dimensional path algebras:
// the text format, paths, the monomial basis, admissibility checking, and the
// linear-relation reduction of the path space.
//
// Conventions used throughout the library:
//   * modules are LEFT modules; in a composite "q∘p" the path p is applied
//     first and q last.  Internally a Path stores its arrows in application
//     order (arrows[0] leaves the source vertex).
//   * the text format writes composites in composition order, i.e. the
//     leftmost factor is applied last ("relation b*a" kills the composite
//     walk that travels along a first, then b).
#pragma once

#include <cstdint>
#include <compare>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "quiverhom/field.hpp"

namespace qh {

// Longest path length tolerated before the presentation is declared
// non-admissible (the arrow ideal must be nilpotent).
inline constexpr int kNilpotencyCap = 64;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAdmissibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised when an operation is requested for an algebra outside the class it
// is defined for (e.g. string-specific machinery on a non-string algebra).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::string name;
  int src = -1;
  int tgt = -1;
};

// A (possibly trivial) path: source vertex plus arrow indices in application
// order.  The empty arrow list is the trivial path at `source`.
struct Path {
  int source = -1;
  std::vector<int> arrows;

  int length() const { return static_cast<int>(arrows.size()); }
  bool trivial() const { return arrows.empty(); }
  auto operator<=>(const Path&) const = default;
};

// A linear relation sum_i coef_i * path_i = 0 between parallel paths of
// length >= 2 (at least two terms).
struct LinRel {
  std::vector<std::pair<std::int64_t, Path>> terms;
};

struct Classification {
  bool monomial = false;
  bool special_biserial = false;
  bool string_algebra = false;
  bool left_serial = false;
};

class Presentation {
 public:
  std::string name;
  std::vector<std::string> vertex_names;
  std::vector<Arrow> arrows;
  std::vector<Path> relations;  // monomial relations, length >= 2
  std::vector<LinRel> linrels;
  bool field_is_rational = false;
  std::int64_t field_p = 101;

  // Validates the data above, builds derived tables, and verifies
  // admissibility (nilpotency within kNilpotencyCap). Throws ParseError /
  // NotAdmissibleError.
  void finalize();

  int num_vertices() const { return static_cast<int>(vertex_names.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }
  int vertex_index(const std::string& n) const;  // -1 if absent
  int arrow_index(const std::string& n) const;   // -1 if absent
  const std::vector<int>& out_arrows(int v) const { return out_arrows_[v]; }
  const std::vector<int>& in_arrows(int v) const { return in_arrows_[v]; }

  int target(const Path& p) const { return p.trivial() ? p.source : arrows[p.arrows.back()].tgt; }
  // Vertex reached after the first k arrows of p (k = 0 gives the source).
  int vertex_at(const Path& p, int k) const;
  // "later ∘ first": travels along `first`, then `later`.
  Path compose(const Path& later, const Path& first) const;
  // "arrow ∘ p": extend the walk by one arrow at its target.
  Path extend(const Path& p, int arrow) const;
  Path trivial_path(int v) const { return Path{v, {}}; }
  // First k arrows of p / remainder starting after the first k arrows.
  Path prefix(const Path& p, int k) const;
  Path suffix_from(const Path& p, int k) const;

  // True iff no monomial relation occurs as a contiguous subword.  (For
  // presentations with linear relations this is aliveness modulo the
  // monomial part of the ideal only.)
  bool monomially_alive(const Path& p) const;

  // All monomially-alive paths in deterministic breadth-first order
  // (by length, then by discovery order within a length).
  const std::vector<Path>& alive_paths() const { return alive_paths_; }
  std::vector<Path> alive_paths_from(int v) const;
  std::vector<Path> alive_paths_into(int v) const;
  // Index of p in alive_paths(), or -1.
  int alive_path_index(const Path& p) const;

  int max_relation_length() const { return max_relation_length_; }
  bool is_monomial() const { return linrels.empty(); }

  Classification classify() const;

  // K-dimension of the algebra over its declared field (monomial basis size
  // reduced by the linear relations).
  int dimension() const;

 private:
  std::vector<std::vector<int>> out_arrows_, in_arrows_;
  std::vector<Path> alive_paths_;
  std::map<Path, int> alive_index_;
  int max_relation_length_ = 2;
  bool finalized_ = false;

  void check_finalized() const;
  void build_alive_paths();
};

// ---- text format ----

Presentation parse_presentation(std::istream& in);
Presentation parse_presentation_text(const std::string& text);
Presentation parse_presentation_file(const std::string& file);
std::string print_presentation(const Presentation& a);

// Path literal: a vertex name (trivial path) or arrow names joined by '*'
// in composition order (leftmost applied last).
Path parse_path(const Presentation& a, const std::string& text);
std::string path_to_string(const Presentation& a, const Path& p);

// ---- linear-relation reduction of the path space ----
//
// Computes, over the field F, the span of { mu ∘ rho ∘ nu } for the linear
// relations rho inside the space of monomially-alive paths, and reduces it.
// The surviving (non-pivot) paths form a basis of the algebra; normal_form
// rewrites any path as a combination of basis paths.  For monomial
// presentations this is the identity on alive paths.
template <class F>
class PathReduction {
 public:
  using Elem = typename F::Elem;

  PathReduction(const Presentation& a, F field) : a_(&a), f_(field) { build(); }

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Path>& basis() const { return basis_; }
  // Index into basis(), or -1 if the path is dead or a pivot.
  int basis_index(const Path& p) const {
    auto it = basis_index_.find(p);
    return it == basis_index_.end() ? -1 : it->second;
  }
  // Sparse normal form: list of (coefficient, basis index), empty if zero.
  std::vector<std::pair<Elem, int>> normal_form(const Path& p) const {
    std::vector<std::pair<Elem, int>> out;
    if (!a_->monomially_alive(p)) return out;
    auto it = expansion_.find(p);
    if (it != expansion_.end()) return it->second;
    int idx = basis_index(p);
    if (idx >= 0) out.emplace_back(f_.one(), idx);
    return out;
  }

 private:
  const Presentation* a_;
  F f_;
  std::vector<Path> basis_;
  std::map<Path, int> basis_index_;
  std::map<Path, std::vector<std::pair<Elem, int>>> expansion_;  // pivots only

  void build() {
    const auto& alive = a_->alive_paths();
    if (a_->linrels.empty()) {
      basis_ = alive;
      for (size_t i = 0; i < basis_.size(); ++i) basis_index_[basis_[i]] = static_cast<int>(i);
      return;
    }
    // Group alive paths into parallel classes (source, target), keeping the
    // global deterministic order inside each class.
    std::map<std::pair<int, int>, std::vector<int>> classes;  // -> indices into alive
    for (size_t i = 0; i < alive.size(); ++i)
      classes[{alive[i].source, a_->target(alive[i])}].push_back(static_cast<int>(i));
    std::map<Path, int> alive_pos;
    for (size_t i = 0; i < alive.size(); ++i) alive_pos[alive[i]] = static_cast<int>(i);

    // Collect relation rows per class: mu ∘ rho ∘ nu over alive mu, nu.
    std::map<std::pair<int, int>, std::vector<std::vector<Elem>>> rows;
    for (const auto& rel : a_->linrels) {
      int s = rel.terms.front().second.source;
      int t = a_->target(rel.terms.front().second);
      for (const Path& nu : a_->alive_paths_into(s)) {
        for (const Path& mu : a_->alive_paths_from(t)) {
          auto key = std::make_pair(nu.source, a_->target(mu));
          const auto& cls = classes[key];
          std::vector<Elem> row(cls.size(), f_.zero());
          bool nonzero = false;
          for (const auto& [coef, pi] : rel.terms) {
            Path full = a_->compose(mu, a_->compose(pi, nu));
            if (!a_->monomially_alive(full)) continue;
            int gi = alive_pos.at(full);
            // position within the class
            int pos = -1;
            for (size_t k = 0; k < cls.size(); ++k)
              if (cls[k] == gi) {
                pos = static_cast<int>(k);
                break;
              }
            row[pos] = f_.add(row[pos], f_.from_int(coef));
            if (!f_.is_zero(row[pos])) nonzero = true;
          }
          if (nonzero) rows[key].push_back(std::move(row));
        }
      }
    }

    // Reduce each class; non-pivot columns survive.
    std::map<Path, std::vector<std::pair<Elem, Path>>> pivot_expansions;
    std::vector<char> is_pivot(alive.size(), 0);
    for (auto& [key, rlist] : rows) {
      const auto& cls = classes[key];
      Mat<F> m(f_, static_cast<int>(rlist.size()), static_cast<int>(cls.size()));
      for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rlist[i][j];
      auto pivots = rref(m);
      std::vector<bool> piv(cls.size(), false);
      for (int c : pivots) piv[c] = true;
      for (size_t r = 0; r < pivots.size(); ++r) {
        int c = pivots[r];
        is_pivot[cls[c]] = 1;
        std::vector<std::pair<Elem, Path>> exp;
        for (int j = 0; j < m.cols; ++j) {
          if (piv[j] || f_.is_zero(m.at(static_cast<int>(r), j))) continue;
          exp.emplace_back(f_.neg(m.at(static_cast<int>(r), j)), alive[cls[j]]);
        }
        pivot_expansions[alive[cls[c]]] = std::move(exp);
      }
    }
    for (size_t i = 0; i < alive.size(); ++i) {
      if (is_pivot[i]) continue;
      basis_index_[alive[i]] = static_cast<int>(basis_.size());
      basis_.push_back(alive[i]);
    }
    for (auto& [p, exp] : pivot_expansions) {
      std::vector<std::pair<Elem, int>> sparse;
      for (auto& [c, q] : exp) sparse.emplace_back(c, basis_index_.at(q));
      expansion_[p] = std::move(sparse);
    }
  }
};

}  // namespace qh
