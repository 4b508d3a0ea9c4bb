#include "quiverhom/homology.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>

namespace qh {

std::vector<Path> minimal_kills(const Presentation& a, const Path& p) {
  if (!a.is_monomial())
    throw DomainError("path-module syzygies need a monomial presentation");
  if (!a.monomially_alive(p))
    throw DomainError("dead path " + path_to_string(a, p) +
                      " does not present a module");
  std::vector<Path> kills;
  std::vector<Path> frontier{a.trivial_path(a.target(p))};
  while (!frontier.empty()) {
    std::vector<Path> next;
    for (const Path& mu : frontier) {
      for (int b : a.out_arrows(a.target(mu))) {
        Path q = a.extend(mu, b);
        if (!a.monomially_alive(q)) continue;  // not a basis element of Λe
        if (a.monomially_alive(a.compose(q, p)))
          next.push_back(std::move(q));
        else
          kills.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  return kills;
}

PdimResult PdimCache::eval(const Path& p) {
  if (auto it = done_.find(p); it != done_.end()) return it->second;
  if (auto it = onstack_.find(p); it != onstack_.end()) {
    // Re-entered a path currently being resolved: the recursion cycles, so
    // every path on the cycle has infinite dimension.
    PdimResult r;
    r.finite = false;
    r.cycle.assign(stack_.begin() + static_cast<std::ptrdiff_t>(it->second),
                   stack_.end());
    return r;
  }
  onstack_[p] = stack_.size();
  stack_.push_back(p);
  PdimResult out = PdimResult::fin(0);
  bool has_child = false;
  for (const Path& u : minimal_kills(*a_, p)) {
    PdimResult r = eval(u);
    if (!r.finite) {
      out = std::move(r);
      break;
    }
    has_child = true;
    out.value = std::max(out.value, r.value);
  }
  if (out.finite && has_child) ++out.value;
  stack_.pop_back();
  onstack_.erase(p);
  done_[p] = out;
  return out;
}

PdimResult PdimCache::path_pdim(const Path& p) { return eval(p); }

PdimResult PdimCache::word_pdim(const Word& w) {
  PdimResult out = PdimResult::fin(0);
  bool any = false;
  for (const SyzygyPart& s : string_syzygy(*a_, w)) {
    PdimResult r = s.is_path ? eval(s.path) : word_pdim(s.word);
    if (!r.finite) return r;
    any = true;
    out.value = std::max(out.value, r.value);
  }
  if (any) ++out.value;
  return out;
}

PdimResult PdimCache::simple_pdim(int vertex) {
  Word w;
  w.base = vertex;
  return word_pdim(w);
}

PdimResult path_pdim(const Presentation& a, const Path& p) {
  PdimCache c(a);
  return c.path_pdim(p);
}

PdimResult word_pdim(const Presentation& a, const Word& w) {
  PdimCache c(a);
  return c.word_pdim(w);
}

PdimResult simple_pdim(const Presentation& a, int vertex) {
  PdimCache c(a);
  return c.simple_pdim(vertex);
}

std::vector<SyzygyPart> string_syzygy(const Presentation& a, const Word& w) {
  require_descent_calculus(a);
  validate_word(a, w);
  std::vector<SyzygyPart> parts;
  auto add_path = [&parts](Path p) {
    SyzygyPart s;
    s.is_path = true;
    s.path = std::move(p);
    parts.push_back(std::move(s));
  };
  auto add_word = [&parts](Word v) {
    SyzygyPart s;
    s.is_path = false;
    s.word = std::move(v);
    parts.push_back(std::move(s));
  };

  if (w.trivial()) {
    // Cover Λe; the kernel is the radical, one uniserial branch per arrow.
    for (int b : a.out_arrows(w.base)) add_path(Path{w.base, {b}});
    return parts;
  }

  const std::vector<int> vs = word_node_vertices(a, w);
  const std::vector<Run> runs = word_runs(a, w);
  const int last = static_cast<int>(w.letters.size());

  // A valley end absorbs the continuation of the arriving run.
  auto valley_end = [&](const Run& run, int node) {
    for (int c : a.out_arrows(vs[node])) {
      Path q = a.extend(run.path, c);
      if (a.monomially_alive(q)) add_path(std::move(q));
    }
  };
  // A peak end leaves the cover's other branch untouched.
  auto peak_end = [&](const Run& run, int node) {
    const int used = run.path.arrows.front();
    for (int b : a.out_arrows(vs[node]))
      if (b != used) add_path(Path{vs[node], {b}});
  };

  if (runs.front().descending)
    peak_end(runs.front(), 0);
  else
    valley_end(runs.front(), 0);

  // Interior junctions, left to right.  runs[i] ends where runs[i+1]
  // begins; the junction is a valley exactly when runs[i] descends.  The
  // covers over the two adjacent peaks overlap in the valley's column and
  // keep descending along the runs' continuations.
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    if (!runs[i].descending) continue;  // peak junction: both branches used
    const int node = runs[i].last_node;
    const Path& rho_l = runs[i].path;
    const Path& rho_r = runs[i + 1].path;
    const Path ext_l = max_extension(a, rho_l);
    const Path ext_r = max_extension(a, rho_r);
    if (ext_l.length() > 0 && ext_r.length() > 0 &&
        ext_l.arrows.front() == ext_r.arrows.front()) {
      // Both runs continue along the same branch (two arrows into the
      // valley sharing their alive continuation).  The glued difference
      // element descends along the longer continuation, and what is left of
      // the other cover is the strict continuation of the run that stops
      // sooner.
      const bool left_shorter = ext_l.length() <= ext_r.length();
      const Path& longer = left_shorter ? ext_r : ext_l;
      const Path& shorter_run = left_shorter ? rho_l : rho_r;
      add_word(single_peak_word(a, vs[node], a.trivial_path(vs[node]), longer));
      add_path(a.extend(shorter_run, longer.arrows.front()));
    } else {
      add_word(single_peak_word(a, vs[node], ext_l, ext_r));
    }
  }

  if (runs.back().descending)
    valley_end(runs.back(), last);
  else
    peak_end(runs.back(), last);

  return parts;
}

}  // namespace qh
