#include "quiverhom/string_calculus.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qh {

namespace {

int letter_left_vertex(const Presentation& a, const Letter& l) {
  return l.inverse ? a.arrows[l.arrow].tgt : a.arrows[l.arrow].src;
}

int letter_right_vertex(const Presentation& a, const Letter& l) {
  return l.inverse ? a.arrows[l.arrow].src : a.arrows[l.arrow].tgt;
}

void check_letter(const Presentation& a, const Letter& l) {
  if (l.arrow < 0 || l.arrow >= a.num_arrows())
    throw DomainError("word uses an unknown arrow");
}

}  // namespace

Letter Ray::at(int i) const {
  if (i < 0) throw std::logic_error("negative ray index");
  if (i < static_cast<int>(preperiod.size())) return preperiod[i];
  if (period.empty()) throw std::logic_error("ray index beyond a terminated side");
  return period[(i - static_cast<int>(preperiod.size())) % period.size()];
}

bool descent_calculus_applicable(const Presentation& a) {
  if (!a.is_monomial()) return false;
  for (int v = 0; v < a.num_vertices(); ++v)
    if (a.out_arrows(v).size() > 2) return false;
  for (int ai = 0; ai < a.num_arrows(); ++ai) {
    int succ = 0;
    for (int bi : a.out_arrows(a.arrows[ai].tgt))
      if (a.monomially_alive(Path{a.arrows[ai].src, {ai, bi}})) ++succ;
    if (succ > 1) return false;
  }
  return true;
}

void require_descent_calculus(const Presentation& a) {
  if (!descent_calculus_applicable(a))
    throw DomainError(
        "algebra '" + a.name +
        "' is outside the scope of the descending-word machinery: it needs "
        "monomial relations only, at most two arrows out of each vertex, and "
        "at most one alive continuation per arrow");
}

bool string_calculus_applicable(const Presentation& a) {
  if (!descent_calculus_applicable(a)) return false;
  for (int ai = 0; ai < a.num_arrows(); ++ai) {
    int pred = 0;
    for (int gi : a.in_arrows(a.arrows[ai].src))
      if (a.monomially_alive(Path{a.arrows[gi].src, {gi, ai}})) ++pred;
    if (pred > 1) return false;
  }
  return true;
}

void require_string_calculus(const Presentation& a) {
  if (!string_calculus_applicable(a))
    throw DomainError(
        "algebra '" + a.name +
        "' is outside the scope of the word machinery: it needs monomial "
        "relations only, at most two arrows out of each vertex, and at most "
        "one alive composition per arrow on each side");
}

std::vector<int> word_node_vertices(const Presentation& a, const Word& w) {
  if (w.base < 0 || w.base >= a.num_vertices())
    throw DomainError("word has an invalid base vertex");
  std::vector<int> vs;
  vs.reserve(w.letters.size() + 1);
  int cur = w.base;
  vs.push_back(cur);
  for (const Letter& l : w.letters) {
    check_letter(a, l);
    if (letter_left_vertex(a, l) != cur)
      throw DomainError("word letters do not join up");
    cur = letter_right_vertex(a, l);
    vs.push_back(cur);
  }
  return vs;
}

std::vector<Run> word_runs(const Presentation& a, const Word& w) {
  const std::vector<int> vs = word_node_vertices(a, w);
  std::vector<Run> runs;
  const int n = static_cast<int>(w.letters.size());
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && w.letters[j + 1].inverse == w.letters[i].inverse) ++j;
    Run r;
    r.first_node = i;
    r.last_node = j + 1;
    r.descending = !w.letters[i].inverse;
    if (r.descending) {
      r.path.source = vs[i];
      for (int k = i; k <= j; ++k) r.path.arrows.push_back(w.letters[k].arrow);
    } else {
      r.path.source = vs[j + 1];
      for (int k = j; k >= i; --k) r.path.arrows.push_back(w.letters[k].arrow);
    }
    runs.push_back(std::move(r));
    i = j + 1;
  }
  return runs;
}

void validate_word(const Presentation& a, const Word& w) {
  for (size_t i = 0; i + 1 < w.letters.size(); ++i) {
    const Letter& x = w.letters[i];
    const Letter& y = w.letters[i + 1];
    if (x.inverse != y.inverse && x.arrow == y.arrow)
      throw DomainError(x.inverse
                            ? "peak node uses the same arrow on both sides"
                            : "valley node uses the same arrow on both sides");
  }
  for (const Run& r : word_runs(a, w))
    if (!a.monomially_alive(r.path))
      throw DomainError("word contains a dead run: " + path_to_string(a, r.path));
}

bool word_is_valid(const Presentation& a, const Word& w) {
  try {
    validate_word(a, w);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

bool node_is_peak(const Word& w, int node) {
  const int n = static_cast<int>(w.letters.size());
  const bool desc_in_from_left = node > 0 && !w.letters[node - 1].inverse;
  const bool desc_in_from_right = node < n && w.letters[node].inverse;
  return !desc_in_from_left && !desc_in_from_right;
}

bool node_is_valley(const Word& w, int node) {
  const int n = static_cast<int>(w.letters.size());
  const bool desc_out_left = node > 0 && w.letters[node - 1].inverse;
  const bool desc_out_right = node < n && !w.letters[node].inverse;
  return !desc_out_left && !desc_out_right;
}

std::vector<int> peak_nodes(const Word& w) {
  std::vector<int> out;
  for (int i = 0; i < w.num_nodes(); ++i)
    if (node_is_peak(w, i)) out.push_back(i);
  return out;
}

std::vector<int> valley_nodes(const Word& w) {
  std::vector<int> out;
  for (int i = 0; i < w.num_nodes(); ++i)
    if (node_is_valley(w, i)) out.push_back(i);
  return out;
}

Path max_extension(const Presentation& a, const Path& p) {
  Path mu = a.trivial_path(a.target(p));
  if (p.trivial()) return mu;
  Path cur = p;
  for (;;) {
    int found = -1;
    for (int b : a.out_arrows(a.target(cur))) {
      if (a.monomially_alive(a.extend(cur, b))) {
        if (found >= 0)
          throw std::logic_error("max_extension: ambiguous continuation of " +
                                 path_to_string(a, cur));
        found = b;
      }
    }
    if (found < 0) return mu;
    cur = a.extend(cur, found);
    mu = a.extend(mu, found);
  }
}

Word single_peak_word(const Presentation& a, int apex, const Path& left_slope,
                      const Path& right_slope) {
  if (!left_slope.trivial() && left_slope.source != apex)
    throw std::logic_error("single_peak_word: left slope must leave the apex");
  if (!right_slope.trivial() && right_slope.source != apex)
    throw std::logic_error("single_peak_word: right slope must leave the apex");
  Word w;
  w.base = left_slope.trivial() ? apex : a.target(left_slope);
  for (auto it = left_slope.arrows.rbegin(); it != left_slope.arrows.rend(); ++it)
    w.letters.push_back(Letter{*it, true});
  for (int ar : right_slope.arrows) w.letters.push_back(Letter{ar, false});
  validate_word(a, w);
  return w;
}

Word projective_word(const Presentation& a, int vertex) {
  std::vector<Path> slopes;
  for (int b : a.out_arrows(vertex)) {
    Path p{vertex, {b}};
    slopes.push_back(a.compose(max_extension(a, p), p));
  }
  if (slopes.size() > 2)
    throw DomainError("projective at '" + a.vertex_names[vertex] +
                      "' has more than two branches");
  if (slopes.empty()) return Word{vertex, {}};
  if (slopes.size() == 1)
    return single_peak_word(a, vertex, a.trivial_path(vertex), slopes[0]);
  return single_peak_word(a, vertex, slopes[0], slopes[1]);
}

Word descending_word(const Presentation& a, const Path& p) {
  Word w;
  w.base = p.source;
  for (int ar : p.arrows) w.letters.push_back(Letter{ar, false});
  validate_word(a, w);
  return w;
}

Word reverse_word(const Presentation& a, const Word& w) {
  const std::vector<int> vs = word_node_vertices(a, w);
  Word r;
  r.base = vs.back();
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back(Letter{it->arrow, !it->inverse});
  return r;
}

Word canonical_word(const Presentation& a, const Word& w) {
  Word r = reverse_word(a, w);
  return std::min(w, r);
}

Word parse_word(const Presentation& a, const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.empty()) throw ParseError("empty word literal");
  if (tokens.size() == 1) {
    const int v = a.vertex_index(tokens[0]);
    if (v >= 0) return Word{v, {}};
  }
  Word w;
  for (const std::string& tok : tokens) {
    std::string name = tok;
    bool inv = false;
    if (!name.empty() && name.back() == '~') {
      inv = true;
      name.pop_back();
    }
    const int ai = a.arrow_index(name);
    if (ai < 0) throw ParseError("unknown arrow '" + name + "' in word literal");
    w.letters.push_back(Letter{ai, inv});
  }
  w.base = letter_left_vertex(a, w.letters.front());
  validate_word(a, w);
  return w;
}

std::string word_to_string(const Presentation& a, const Word& w) {
  if (w.trivial()) return a.vertex_names[w.base];
  std::string out;
  for (size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ' ';
    out += a.arrows[w.letters[i].arrow].name;
    if (w.letters[i].inverse) out += '~';
  }
  return out;
}

LayeredGraph word_graph(const Presentation& a, const Word& w) {
  validate_word(a, w);
  const std::vector<int> vs = word_node_vertices(a, w);
  std::vector<int> depth(vs.size(), 0);
  for (const Run& r : word_runs(a, w)) {
    const int len = r.path.length();
    for (int k = 0; k <= len; ++k) {
      const int node = r.descending ? r.first_node + k : r.last_node - k;
      depth[node] = std::max(depth[node], k);
    }
  }
  LayeredGraph g;
  for (size_t i = 0; i < vs.size(); ++i)
    g.nodes.push_back(LayeredGraph::Node{vs[i], depth[i]});
  for (size_t i = 0; i < w.letters.size(); ++i) {
    const Letter& l = w.letters[i];
    const int li = static_cast<int>(i), ri = static_cast<int>(i) + 1;
    if (l.inverse)
      g.edges.push_back(LayeredGraph::Edge{ri, li, l.arrow});
    else
      g.edges.push_back(LayeredGraph::Edge{li, ri, l.arrow});
  }
  return g;
}

int ray_length(const Ray& r) {
  return r.infinite() ? -1 : static_cast<int>(r.preperiod.size());
}

WindowResult window(const Presentation& a, const GeneralizedString& g,
                    int left_count, int right_count) {
  if (!g.left.infinite())
    left_count = std::min(left_count, static_cast<int>(g.left.preperiod.size()));
  if (!g.right.infinite())
    right_count = std::min(right_count, static_cast<int>(g.right.preperiod.size()));
  Word w;
  for (int i = left_count - 1; i >= 0; --i) w.letters.push_back(g.left.at(i));
  for (int i = 0; i < right_count; ++i) w.letters.push_back(g.right.at(i));
  w.base = w.letters.empty() ? g.anchor : letter_left_vertex(a, w.letters.front());
  validate_word(a, w);
  return WindowResult{std::move(w), left_count};
}

Word full_word(const Presentation& a, const GeneralizedString& g) {
  if (!g.finite())
    throw std::logic_error("full_word requires a terminating generalized string");
  return window(a, g, static_cast<int>(g.left.preperiod.size()),
                static_cast<int>(g.right.preperiod.size()))
      .word;
}

// ---- cyclic words ----

bool cyclic_word_is_valid(const Presentation& a, const CyclicWord& w) {
  const int n = static_cast<int>(w.letters.size());
  if (n < 2) return false;
  if (w.base < 0 || w.base >= a.num_vertices()) return false;
  std::vector<int> vs;  // vs[i] = vertex of node i, i < n
  int cur = w.base;
  bool has_dir = false, has_inv = false;
  for (const Letter& l : w.letters) {
    if (l.arrow < 0 || l.arrow >= a.num_arrows()) return false;
    if (letter_left_vertex(a, l) != cur) return false;
    vs.push_back(cur);
    cur = letter_right_vertex(a, l);
    (l.inverse ? has_inv : has_dir) = true;
  }
  if (cur != w.base) return false;
  if (!has_dir || !has_inv) return false;  // one-directional cycles are dead
  for (int i = 0; i < n; ++i) {
    const Letter& x = w.letters[i];
    const Letter& y = w.letters[(i + 1) % n];
    if (x.inverse != y.inverse && x.arrow == y.arrow) return false;
  }
  // Rotate to a direction-change boundary so the runs do not wrap, then reuse
  // the linear run decomposition for the aliveness checks.
  int start = 0;
  while (w.letters[start].inverse == w.letters[(start + n - 1) % n].inverse) ++start;
  Word lin;
  lin.base = vs[start];
  for (int i = 0; i < n; ++i) lin.letters.push_back(w.letters[(start + i) % n]);
  for (const Run& r : word_runs(a, lin))
    if (!a.monomially_alive(r.path)) return false;
  return true;
}

bool cyclic_word_primitive(const CyclicWord& w) {
  const int n = static_cast<int>(w.letters.size());
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (int i = d; i < n && repeats; ++i)
      repeats = w.letters[i] == w.letters[i % d];
    if (repeats) return false;
  }
  return true;
}

CyclicWord canonical_cyclic_word(const Presentation& a, const CyclicWord& w) {
  const int n = static_cast<int>(w.letters.size());
  if (n == 0) return w;
  bool first = true;
  CyclicWord best;
  auto consider_rotations = [&](const CyclicWord& c) {
    std::vector<int> vs;
    int cur = c.base;
    for (const Letter& l : c.letters) {
      vs.push_back(cur);
      cur = letter_right_vertex(a, l);
    }
    for (int r = 0; r < n; ++r) {
      CyclicWord rot;
      rot.base = vs[r];
      for (int i = 0; i < n; ++i) rot.letters.push_back(c.letters[(r + i) % n]);
      if (first || rot < best) {
        best = std::move(rot);
        first = false;
      }
    }
  };
  consider_rotations(w);
  // Reversal: read right-to-left; node 0 stays fixed, letter j of the
  // reversal is letter n-1-j of the original with its direction flipped.
  CyclicWord rev;
  rev.base = w.base;
  for (int j = 0; j < n; ++j) {
    Letter l = w.letters[n - 1 - j];
    l.inverse = !l.inverse;
    rev.letters.push_back(l);
  }
  consider_rotations(rev);
  return best;
}

std::vector<CyclicWord> enumerate_cyclic_words(const Presentation& a, int max_len) {
  require_string_calculus(a);
  std::set<CyclicWord> found;
  std::vector<Letter> cur;
  int base = -1;

  // Current run suffix must stay alive; recompute it from the tail of `cur`.
  auto run_suffix_alive = [&](int node_vertex) {
    const int n = static_cast<int>(cur.size());
    int i = n - 1;
    while (i > 0 && cur[i - 1].inverse == cur[n - 1].inverse) --i;
    Path p;
    if (!cur[n - 1].inverse) {
      p.source = letter_left_vertex(a, cur[i]);
      for (int k = i; k < n; ++k) p.arrows.push_back(cur[k].arrow);
    } else {
      p.source = node_vertex;
      for (int k = n - 1; k >= i; --k) p.arrows.push_back(cur[k].arrow);
    }
    return a.monomially_alive(p);
  };

  std::function<void(int)> dfs = [&](int node_vertex) {
    if (static_cast<int>(cur.size()) >= 2 && node_vertex == base) {
      CyclicWord w{base, cur};
      if (cyclic_word_is_valid(a, w) && cyclic_word_primitive(w))
        found.insert(canonical_cyclic_word(a, w));
    }
    if (static_cast<int>(cur.size()) >= max_len) return;
    auto try_letter = [&](const Letter& l) {
      if (!cur.empty()) {
        const Letter& prev = cur.back();
        if (prev.inverse != l.inverse && prev.arrow == l.arrow) return;
      }
      cur.push_back(l);
      const int next = letter_right_vertex(a, l);
      if (run_suffix_alive(next)) dfs(next);
      cur.pop_back();
    };
    for (int b : a.out_arrows(node_vertex)) try_letter(Letter{b, false});
    for (int b : a.in_arrows(node_vertex)) try_letter(Letter{b, true});
  };

  for (int v = 0; v < a.num_vertices(); ++v) {
    base = v;
    dfs(v);
  }
  return std::vector<CyclicWord>(found.begin(), found.end());
}

std::vector<Word> enumerate_words(const Presentation& a, int max_letters) {
  require_string_calculus(a);
  std::set<Word> found;
  std::vector<Letter> cur;
  int base = -1;

  auto run_suffix_alive = [&](int node_vertex) {
    const int n = static_cast<int>(cur.size());
    int i = n - 1;
    while (i > 0 && cur[i - 1].inverse == cur[n - 1].inverse) --i;
    Path p;
    if (!cur[n - 1].inverse) {
      p.source = letter_left_vertex(a, cur[i]);
      for (int k = i; k < n; ++k) p.arrows.push_back(cur[k].arrow);
    } else {
      p.source = node_vertex;
      for (int k = n - 1; k >= i; --k) p.arrows.push_back(cur[k].arrow);
    }
    return a.monomially_alive(p);
  };

  std::function<void(int)> dfs = [&](int node_vertex) {
    found.insert(canonical_word(a, Word{base, cur}));
    if (static_cast<int>(cur.size()) >= max_letters) return;
    auto try_letter = [&](const Letter& l) {
      if (!cur.empty()) {
        const Letter& prev = cur.back();
        if (prev.inverse != l.inverse && prev.arrow == l.arrow) return;
      }
      cur.push_back(l);
      const int next = letter_right_vertex(a, l);
      if (run_suffix_alive(next)) dfs(next);
      cur.pop_back();
    };
    for (int b : a.out_arrows(node_vertex)) try_letter(Letter{b, false});
    for (int b : a.in_arrows(node_vertex)) try_letter(Letter{b, true});
  };

  for (int v = 0; v < a.num_vertices(); ++v) {
    base = v;
    cur.clear();
    dfs(v);
  }
  std::vector<Word> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const Word& x, const Word& y) {
    if (x.letters.size() != y.letters.size()) return x.letters.size() < y.letters.size();
    if (x.base != y.base) return x.base < y.base;
    return x.letters < y.letters;
  });
  return out;
}

std::string cyclic_word_to_string(const Presentation& a, const CyclicWord& w) {
  std::string out = "(";
  for (size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ' ';
    out += a.arrows[w.letters[i].arrow].name;
    if (w.letters[i].inverse) out += '~';
  }
  out += ")@" + a.vertex_names[w.base];
  return out;
}

}  // namespace qh
