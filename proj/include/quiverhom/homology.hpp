#pragma once

// Projective dimensions and syzygies computed combinatorially from the
// presentation, together with a linear-algebra route used to cross-check
// them.
//
// Over a monomial algebra the cyclic module Lambda p (p an alive path) has
// projective cover Lambda e_t, t = target(p), and its syzygy decomposes as
// the direct sum of Lambda u over the minimal kills u of p: the minimal
// alive paths u out of t with u ∘ p dead.  Projective dimension follows by
// recursion over alive paths; a cycle in that recursion certifies infinite
// dimension.
//
// For a module given by a word, the syzygy splits into one piece per word
// node that can absorb more of the covering projectives: continuations below
// valley ends, unused branches at peak ends, and a glued single-peak word at
// each interior valley.

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "quiverhom/presentation.hpp"
#include "quiverhom/rep_oracle.hpp"
#include "quiverhom/string_calculus.hpp"

namespace qh {

// ---- projective dimension of path modules ----

struct PdimResult {
  bool finite = false;
  int value = -1;           // the dimension when finite
  std::vector<Path> cycle;  // when infinite: a syzygy-recursion cycle
  static PdimResult fin(int v) { return PdimResult{true, v, {}}; }
  bool operator==(const PdimResult&) const = default;
};

// Minimal alive paths u from target(p) with u ∘ p dead (monomial only).
// These generate the radical part the cover kills: the syzygy of Lambda p is
// the direct sum of Lambda u over this list.
std::vector<Path> minimal_kills(const Presentation& a, const Path& p);

// Memoizing evaluator; reuse one instance per algebra when asking for many
// dimensions.
class PdimCache {
 public:
  explicit PdimCache(const Presentation& a) : a_(&a) {}
  PdimResult path_pdim(const Path& p);  // pdim of Lambda p
  PdimResult word_pdim(const Word& w);  // pdim of the module of w
  PdimResult simple_pdim(int vertex);   // pdim of the simple at vertex

 private:
  const Presentation* a_;
  std::map<Path, PdimResult> done_;
  std::map<Path, std::size_t> onstack_;
  std::vector<Path> stack_;
  PdimResult eval(const Path& p);
};

PdimResult path_pdim(const Presentation& a, const Path& p);
PdimResult word_pdim(const Presentation& a, const Word& w);
PdimResult simple_pdim(const Presentation& a, int vertex);

// ---- syzygies of word modules ----

// One direct summand of the syzygy of a word module: either a path module
// Lambda path or the module of a (single-peak) word.
struct SyzygyPart {
  bool is_path = false;
  Path path;
  Word word;
};

// Decomposition of the syzygy of the module of w over its projective cover
// (one indecomposable projective per peak node).  Deterministic order: parts
// are listed by the word node they sit under, left to right.
std::vector<SyzygyPart> string_syzygy(const Presentation& a, const Word& w);

template <class F>
Module<F> realize_syzygy_part(F f, const Presentation& a, const SyzygyPart& s) {
  return s.is_path ? realize_path_module(f, a, s.path) : realize_word(f, a, s.word);
}

template <class F>
Module<F> realize_syzygy(F f, const Presentation& a, const std::vector<SyzygyPart>& parts) {
  std::vector<Module<F>> ms;
  ms.reserve(parts.size());
  for (const SyzygyPart& s : parts) ms.push_back(realize_syzygy_part(f, a, s));
  if (ms.empty()) return zero_module(f, a);
  return direct_sum(a, ms);
}

// ---- linear-algebra route ----

// Iterate cover_and_syzygy.  Finite answers are certificates (the iterated
// syzygy literally reached zero); infinity is only ever "suspected", flagged
// when a syzygy repeats its dimension vector and top multiplicities.
struct OraclePdimResult {
  enum class Kind { Finite, InfiniteSuspected, Undecided } kind =
      Kind::Undecided;
  int value = -1;  // the dimension when Finite (-1 for the zero module)
  int iterations = 0;
};

template <class F>
OraclePdimResult oracle_pdim(const Presentation& a, Module<F> m, int iter_cap = 40,
                             int dim_cap = 400) {
  OraclePdimResult r;
  if (m.total_dim() == 0) {
    r.kind = OraclePdimResult::Kind::Finite;
    return r;
  }
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  seen.insert({m.dim, top_multiplicities(a, m)});
  for (int k = 0; k <= iter_cap; ++k) {
    if (m.total_dim() > dim_cap) {
      r.kind = OraclePdimResult::Kind::Undecided;
      return r;
    }
    CoverResult<F> cs = cover_and_syzygy(a, m);
    r.iterations = k + 1;
    if (cs.syzygy.total_dim() == 0) {
      r.kind = OraclePdimResult::Kind::Finite;
      r.value = k;
      return r;
    }
    auto key = std::make_pair(cs.syzygy.dim, top_multiplicities(a, cs.syzygy));
    if (!seen.insert(key).second) {
      r.kind = OraclePdimResult::Kind::InfiniteSuspected;
      return r;
    }
    m = std::move(cs.syzygy);
  }
  r.kind = OraclePdimResult::Kind::Undecided;
  return r;
}

// ---- band modules of finite projective dimension ----

struct BandPdimFind {
  CyclicWord band;
  int s = 1;      // size of the parameter block
  int param = 1;  // eigenvalue of the Jordan block probed
  int pdim = -1;
};

struct BandSearchOutcome {
  std::vector<BandPdimFind> finds;  // empty when every probe failed to be finite
  int bands_examined = 0;
  int modules_probed = 0;
};

namespace detail {
template <class F>
Mat<F> jordan_block(F f, int s, int lambda) {
  Mat<F> m(f, s, s);
  for (int i = 0; i < s; ++i) {
    m.at(i, i) = f.from_int(lambda);
    if (i + 1 < s) m.at(i + 1, i) = f.one();
  }
  return m;
}
}  // namespace detail

// Probe every band of length <= max_len with Jordan parameter blocks
// J_s(lambda), s <= max_s, lambda in {1, 2}, classifying each module with
// oracle_pdim.  Only certified-finite probes are reported; the syzygy
// dimensions of a band module do not depend on the invertible parameter
// block beyond its size, so the two eigenvalues per size are representative.
template <class F>
BandSearchOutcome band_finite_pdim_search(F f, const Presentation& a, int max_len,
                                          int max_s, int iter_cap = 25) {
  BandSearchOutcome out;
  for (const CyclicWord& b : enumerate_cyclic_words(a, max_len)) {
    ++out.bands_examined;
    for (int s = 1; s <= max_s; ++s) {
      for (int lambda = 1; lambda <= 2; ++lambda) {
        ++out.modules_probed;
        Module<F> m = realize_band(f, a, b, detail::jordan_block(f, s, lambda));
        OraclePdimResult r = oracle_pdim<F>(a, m, iter_cap);
        if (r.kind == OraclePdimResult::Kind::Finite)
          out.finds.push_back(BandPdimFind{b, s, lambda, r.value});
      }
    }
  }
  return out;
}

}  // namespace qh
