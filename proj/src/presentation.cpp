#include "quiverhom/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace qh {

namespace {

bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void Presentation::check_finalized() const {
  if (!finalized_) throw std::logic_error("Presentation used before finalize()");
}

int Presentation::vertex_index(const std::string& n) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (vertex_names[i] == n) return i;
  return -1;
}

int Presentation::arrow_index(const std::string& n) const {
  for (int i = 0; i < num_arrows(); ++i)
    if (arrows[i].name == n) return i;
  return -1;
}

int Presentation::vertex_at(const Path& p, int k) const {
  if (k < 0 || k > p.length()) throw std::logic_error("vertex_at: position out of range");
  return k == 0 ? p.source : arrows[p.arrows[k - 1]].tgt;
}

Path Presentation::compose(const Path& later, const Path& first) const {
  if (later.source != target(first)) throw std::logic_error("compose: paths not composable");
  Path r = first;
  r.arrows.insert(r.arrows.end(), later.arrows.begin(), later.arrows.end());
  return r;
}

Path Presentation::extend(const Path& p, int arrow) const {
  if (arrows[arrow].src != target(p)) throw std::logic_error("extend: arrow does not continue path");
  Path r = p;
  r.arrows.push_back(arrow);
  return r;
}

Path Presentation::prefix(const Path& p, int k) const {
  if (k < 0 || k > p.length()) throw std::logic_error("prefix: length out of range");
  return Path{p.source, std::vector<int>(p.arrows.begin(), p.arrows.begin() + k)};
}

Path Presentation::suffix_from(const Path& p, int k) const {
  if (k < 0 || k > p.length()) throw std::logic_error("suffix_from: position out of range");
  return Path{vertex_at(p, k), std::vector<int>(p.arrows.begin() + k, p.arrows.end())};
}

bool Presentation::monomially_alive(const Path& p) const {
  for (const Path& r : relations) {
    int rl = r.length(), pl = p.length();
    if (rl > pl) continue;
    for (int s = 0; s + rl <= pl; ++s) {
      bool match = true;
      for (int k = 0; k < rl; ++k)
        if (p.arrows[s + k] != r.arrows[k]) {
          match = false;
          break;
        }
      if (match) return false;
    }
  }
  return true;
}

void Presentation::build_alive_paths() {
  alive_paths_.clear();
  alive_index_.clear();
  std::vector<Path> level;
  for (int v = 0; v < num_vertices(); ++v) level.push_back(trivial_path(v));
  int len = 0;
  while (!level.empty()) {
    if (len >= kNilpotencyCap)
      throw NotAdmissibleError("presentation '" + name + "' is not admissible: paths of length " +
                               std::to_string(kNilpotencyCap) + " survive all monomial relations");
    for (const Path& p : level) {
      alive_index_[p] = static_cast<int>(alive_paths_.size());
      alive_paths_.push_back(p);
    }
    std::vector<Path> next;
    for (const Path& p : level) {
      for (int ai : out_arrows_[target(p)]) {
        Path q = extend(p, ai);
        // p was alive, so only relation occurrences ending at the new arrow
        // (i.e. suffixes of q) need checking.
        bool dead = false;
        for (const Path& r : relations) {
          int rl = r.length(), ql = q.length();
          if (rl > ql) continue;
          bool match = true;
          for (int k = 0; k < rl; ++k)
            if (q.arrows[ql - rl + k] != r.arrows[k]) {
              match = false;
              break;
            }
          if (match) {
            dead = true;
            break;
          }
        }
        if (!dead) next.push_back(std::move(q));
      }
    }
    level = std::move(next);
    ++len;
  }
}

void Presentation::finalize() {
  if (name.empty()) name = "unnamed";
  if (vertex_names.empty()) throw ParseError("presentation has no vertices");
  for (const auto& v : vertex_names)
    if (!valid_ident(v)) throw ParseError("invalid vertex name '" + v + "'");
  for (int i = 0; i < num_vertices(); ++i)
    for (int j = i + 1; j < num_vertices(); ++j)
      if (vertex_names[i] == vertex_names[j]) throw ParseError("duplicate vertex name '" + vertex_names[i] + "'");
  for (const auto& a : arrows) {
    if (!valid_ident(a.name)) throw ParseError("invalid arrow name '" + a.name + "'");
    if (vertex_index(a.name) >= 0) throw ParseError("arrow name '" + a.name + "' collides with a vertex name");
    if (a.src < 0 || a.src >= num_vertices() || a.tgt < 0 || a.tgt >= num_vertices())
      throw ParseError("arrow '" + a.name + "' has an unknown endpoint");
  }
  for (int i = 0; i < num_arrows(); ++i)
    for (int j = i + 1; j < num_arrows(); ++j)
      if (arrows[i].name == arrows[j].name) throw ParseError("duplicate arrow name '" + arrows[i].name + "'");

  out_arrows_.assign(num_vertices(), {});
  in_arrows_.assign(num_vertices(), {});
  for (int i = 0; i < num_arrows(); ++i) {
    out_arrows_[arrows[i].src].push_back(i);
    in_arrows_[arrows[i].tgt].push_back(i);
  }

  max_relation_length_ = 2;
  auto check_composable = [&](const Path& p, const char* what) {
    if (p.length() < 2) throw ParseError(std::string(what) + " must have length at least 2");
    for (int k = 0; k < p.length(); ++k) {
      int ai = p.arrows[k];
      if (ai < 0 || ai >= num_arrows()) throw ParseError(std::string(what) + " uses an unknown arrow");
      int prev = (k == 0) ? p.source : arrows[p.arrows[k - 1]].tgt;
      if (arrows[ai].src != prev) throw ParseError(std::string(what) + " is not a composable sequence of arrows");
    }
  };
  for (const Path& r : relations) {
    check_composable(r, "monomial relation");
    max_relation_length_ = std::max(max_relation_length_, r.length());
  }
  for (const LinRel& lr : linrels) {
    if (lr.terms.size() < 2) throw ParseError("linear relation needs at least two terms");
    int s = lr.terms.front().second.source;
    int t = -1;
    for (const auto& [coef, p] : lr.terms) {
      check_composable(p, "linear relation term");
      if (coef == 0) throw ParseError("linear relation has a zero coefficient");
      if (p.source != s) throw ParseError("linear relation terms are not parallel");
      int pt = arrows[p.arrows.back()].tgt;
      if (t < 0) t = pt;
      if (pt != t) throw ParseError("linear relation terms are not parallel");
      max_relation_length_ = std::max(max_relation_length_, p.length());
    }
  }

  if (field_p != 0 && !field_is_rational) {
    if (!is_prime(field_p)) throw ParseError("field characteristic " + std::to_string(field_p) + " is not prime");
    if (field_p >= (std::int64_t(1) << 31)) throw ParseError("field characteristic too large");
  }

  finalized_ = true;
  build_alive_paths();
}

std::vector<Path> Presentation::alive_paths_from(int v) const {
  check_finalized();
  std::vector<Path> out;
  for (const Path& p : alive_paths_)
    if (p.source == v) out.push_back(p);
  return out;
}

std::vector<Path> Presentation::alive_paths_into(int v) const {
  check_finalized();
  std::vector<Path> out;
  for (const Path& p : alive_paths_)
    if (target(p) == v) out.push_back(p);
  return out;
}

int Presentation::alive_path_index(const Path& p) const {
  check_finalized();
  auto it = alive_index_.find(p);
  return it == alive_index_.end() ? -1 : it->second;
}

Classification Presentation::classify() const {
  check_finalized();
  Classification c;
  c.monomial = linrels.empty();

  bool degrees_ok = true;
  for (int v = 0; v < num_vertices(); ++v)
    if (out_arrows_[v].size() > 2 || in_arrows_[v].size() > 2) degrees_ok = false;

  // Per arrow: at most one composable continuation and at most one composable
  // predecessor that survive the monomial relations.
  bool unique_continuations = true;
  for (int ai = 0; ai < num_arrows() && unique_continuations; ++ai) {
    int succ = 0, pred = 0;
    for (int bi : out_arrows_[arrows[ai].tgt]) {
      Path two{arrows[ai].src, {ai, bi}};
      if (monomially_alive(two)) ++succ;
    }
    for (int gi : in_arrows_[arrows[ai].src]) {
      Path two{arrows[gi].src, {gi, ai}};
      if (monomially_alive(two)) ++pred;
    }
    if (succ > 1 || pred > 1) unique_continuations = false;
  }

  c.special_biserial = degrees_ok && unique_continuations;
  c.string_algebra = c.special_biserial && c.monomial;

  c.left_serial = true;
  for (int v = 0; v < num_vertices(); ++v)
    if (out_arrows_[v].size() > 1) c.left_serial = false;

  return c;
}

int Presentation::dimension() const {
  check_finalized();
  if (linrels.empty()) return static_cast<int>(alive_paths_.size());
  if (field_is_rational) return PathReduction<QQ>(*this, QQ{}).dim();
  return PathReduction<Fp>(*this, Fp{field_p}).dim();
}

// ---- text format ----

Presentation parse_presentation(std::istream& in) {
  Presentation a;
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
  };

  // Parsed in two passes so that arrows may be referenced before the reader
  // reaches their declaration: first collect declarations, then relations.
  std::vector<std::pair<int, std::string>> relation_lines, linrel_lines;
  std::vector<std::pair<int, std::vector<std::string>>> arrow_lines;

  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    const std::string& kw = toks.front();
    if (kw == "algebra") {
      if (toks.size() != 2) fail("expected: algebra <name>");
      a.name = toks[1];
    } else if (kw == "field") {
      if (toks.size() != 2) fail("expected: field <prime|Q>");
      if (toks[1] == "Q" || toks[1] == "QQ") {
        a.field_is_rational = true;
      } else {
        try {
          a.field_p = std::stoll(toks[1]);
        } catch (...) {
          fail("invalid field '" + toks[1] + "'");
        }
      }
    } else if (kw == "vertex" || kw == "vertices") {
      if (toks.size() < 2) fail("expected: vertex <name...>");
      for (size_t i = 1; i < toks.size(); ++i) a.vertex_names.push_back(toks[i]);
    } else if (kw == "arrow") {
      arrow_lines.emplace_back(lineno, std::vector<std::string>(toks.begin() + 1, toks.end()));
    } else if (kw == "relation") {
      std::string rest;
      for (size_t i = 1; i < toks.size(); ++i) rest += toks[i];
      relation_lines.emplace_back(lineno, rest);
    } else if (kw == "linrel") {
      std::string rest;
      for (size_t i = 1; i < toks.size(); ++i) {
        if (i > 1) rest += ' ';
        rest += toks[i];
      }
      linrel_lines.emplace_back(lineno, rest);
    } else {
      fail("unknown directive '" + kw + "'");
    }
  }

  for (auto& [ln, toks] : arrow_lines) {
    lineno = ln;
    // accepted shapes: "name: src -> tgt" (with or without spaces around ':')
    std::string joined;
    for (const auto& t : toks) joined += t + " ";
    auto colon = joined.find(':');
    if (colon == std::string::npos) fail("expected: arrow <name>: <src> -> <tgt>");
    std::string nm = joined.substr(0, colon);
    nm.erase(std::remove_if(nm.begin(), nm.end(), [](unsigned char c) { return std::isspace(c); }), nm.end());
    std::string rhs = joined.substr(colon + 1);
    auto arrow_pos = rhs.find("->");
    if (arrow_pos == std::string::npos) fail("expected '->' in arrow declaration");
    auto strip = [](std::string s) {
      s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
      return s;
    };
    std::string src = strip(rhs.substr(0, arrow_pos));
    std::string tgt = strip(rhs.substr(arrow_pos + 2));
    int si = a.vertex_index(src), ti = a.vertex_index(tgt);
    if (si < 0) fail("unknown vertex '" + src + "'");
    if (ti < 0) fail("unknown vertex '" + tgt + "'");
    a.arrows.push_back(Arrow{nm, si, ti});
  }

  auto parse_composite = [&](const std::string& text) -> Path {
    auto names = split_on(text, '*');
    if (names.empty() || names.front().empty()) fail("empty path literal");
    // composition order in the text: leftmost applied last
    Path p;
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      int ai = a.arrow_index(*it);
      if (ai < 0) fail("unknown arrow '" + *it + "'");
      if (p.arrows.empty())
        p.source = a.arrows[ai].src;
      else if (a.arrows[ai].src != a.arrows[p.arrows.back()].tgt)
        fail("arrows in '" + text + "' do not compose");
      p.arrows.push_back(ai);
    }
    return p;
  };

  for (auto& [ln, rest] : relation_lines) {
    lineno = ln;
    a.relations.push_back(parse_composite(rest));
  }

  for (auto& [ln, rest] : linrel_lines) {
    lineno = ln;
    auto eq = rest.find('=');
    if (eq == std::string::npos) fail("linear relation must end with '= 0'");
    std::string rhs = rest.substr(eq + 1);
    rhs.erase(std::remove_if(rhs.begin(), rhs.end(), [](unsigned char c) { return std::isspace(c); }), rhs.end());
    if (rhs != "0") fail("linear relation must end with '= 0'");
    std::string lhs = rest.substr(0, eq);
    LinRel lr;
    for (const std::string& term : split_on(lhs, '+')) {
      auto toks = split_ws(term);
      // split_on removed spaces, so re-split on the coefficient/path boundary:
      // the term is "<int><path>" with the integer prefix (optionally signed).
      if (toks.size() == 1) {
        const std::string& t = toks[0];
        size_t pos = 0;
        if (pos < t.size() && (t[pos] == '-' || t[pos] == '+')) ++pos;
        size_t digits = pos;
        while (digits < t.size() && std::isdigit(static_cast<unsigned char>(t[digits]))) ++digits;
        if (digits == pos || digits == t.size()) fail("linear relation term '" + t + "' must be <coef> <path>");
        std::int64_t coef = std::stoll(t.substr(0, digits));
        lr.terms.emplace_back(coef, parse_composite(t.substr(digits)));
      } else {
        fail("malformed linear relation term '" + term + "'");
      }
    }
    a.linrels.push_back(std::move(lr));
  }

  a.finalize();
  return a;
}

Presentation parse_presentation_text(const std::string& text) {
  std::istringstream ss(text);
  return parse_presentation(ss);
}

Presentation parse_presentation_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open '" + file + "'");
  return parse_presentation(in);
}

std::string print_presentation(const Presentation& a) {
  std::ostringstream out;
  out << "algebra " << a.name << "\n";
  out << "field " << (a.field_is_rational ? std::string("Q") : std::to_string(a.field_p)) << "\n";
  out << "vertex";
  for (const auto& v : a.vertex_names) out << ' ' << v;
  out << "\n";
  for (const auto& ar : a.arrows)
    out << "arrow " << ar.name << ": " << a.vertex_names[ar.src] << " -> " << a.vertex_names[ar.tgt] << "\n";
  for (const auto& r : a.relations) out << "relation " << path_to_string(a, r) << "\n";
  for (const auto& lr : a.linrels) {
    out << "linrel";
    for (size_t i = 0; i < lr.terms.size(); ++i) {
      if (i) out << " +";
      out << ' ' << lr.terms[i].first << ' ' << path_to_string(a, lr.terms[i].second);
    }
    out << " = 0\n";
  }
  return out.str();
}

Path parse_path(const Presentation& a, const std::string& text) {
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  int v = a.vertex_index(t);
  if (v >= 0) return a.trivial_path(v);
  auto names = split_on(t, '*');
  Path p;
  for (auto it = names.rbegin(); it != names.rend(); ++it) {
    int ai = a.arrow_index(*it);
    if (ai < 0) throw ParseError("unknown arrow or vertex '" + *it + "' in path '" + text + "'");
    if (p.arrows.empty())
      p.source = a.arrows[ai].src;
    else if (a.arrows[ai].src != a.arrows[p.arrows.back()].tgt)
      throw ParseError("arrows in path '" + text + "' do not compose");
    p.arrows.push_back(ai);
  }
  return p;
}

std::string path_to_string(const Presentation& a, const Path& p) {
  if (p.trivial()) return a.vertex_names[p.source];
  std::string out;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
    if (!out.empty()) out += '*';
    out += a.arrows[*it].name;
  }
  return out;
}

}  // namespace qh
