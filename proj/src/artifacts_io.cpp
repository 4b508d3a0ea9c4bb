#include "quiverhom/artifacts_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace qh {
namespace {

using ojson = nlohmann::ordered_json;

// ---- rendering helpers ----

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void ascii_pool_line(std::ostringstream& out, const char* title, const std::set<int>& pool) {
  if (pool.empty()) return;
  out << title;
  for (int i : pool) out << " #" << i;
  out << "\n";
}

void dot_pool_cluster(std::ostringstream& out, const char* name, const std::set<int>& pool) {
  if (pool.empty()) return;
  out << "  subgraph cluster_" << name << " {\n    style=dotted;\n";
  for (int i : pool) out << "    n" << i << ";\n";
  out << "  }\n";
}

std::string render_impl(const Presentation& a, const LayeredGraph& g,
                        const std::set<int>& pool_l, const std::set<int>& pool_r,
                        const RenderOptions& opts) {
  std::ostringstream out;
  int max_depth = -1;
  for (const auto& n : g.nodes) max_depth = std::max(max_depth, n.depth);

  if (opts.format == RenderOptions::Format::Dot) {
    out << "digraph layered {\n  rankdir=TB;\n  node [shape=plaintext];\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      out << "  n" << i << " [label=\"" << dot_escape(a.vertex_names[g.nodes[i].vertex])
          << "\"];\n";
    for (int d = 0; d <= max_depth; ++d) {
      out << "  { rank=same;";
      for (std::size_t i = 0; i < g.nodes.size(); ++i)
        if (g.nodes[i].depth == d) out << " n" << i << ";";
      out << " }\n";
    }
    dot_pool_cluster(out, "pool_left", pool_l);
    dot_pool_cluster(out, "pool_right", pool_r);
    for (const auto& e : g.edges) {
      out << "  n" << e.upper << " -> n" << e.lower;
      if (opts.show_labels) out << " [label=\"" << dot_escape(a.arrows[e.arrow].name) << "\"]";
      out << ";\n";
    }
    out << "}\n";
    return out.str();
  }

  for (int d = 0; d <= max_depth; ++d) {
    out << "layer " << d << ":";
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      if (g.nodes[i].depth == d) out << "  #" << i << "=" << a.vertex_names[g.nodes[i].vertex];
    out << "\n";
  }
  if (!g.edges.empty()) {
    out << "edges:\n";
    for (const auto& e : g.edges) {
      out << "  #" << e.upper << " -";
      if (opts.show_labels) out << a.arrows[e.arrow].name << "-";
      out << "> #" << e.lower << "\n";
    }
  }
  ascii_pool_line(out, "pool left:", pool_l);
  ascii_pool_line(out, "pool right:", pool_r);
  return out.str();
}

// ---- serialization helpers ----

ojson vertex_json(const Presentation& a, int v) {
  if (v < 0) return nullptr;
  return a.vertex_names[v];
}

int vertex_from(const Presentation& a, const ojson& j) {
  if (j.is_null()) return -1;
  int v = a.vertex_index(j.get<std::string>());
  if (v < 0) throw ArtifactError("unknown vertex: " + j.get<std::string>());
  return v;
}

ojson arrow_json(const Presentation& a, int ai) {
  if (ai < 0) return nullptr;
  return a.arrows[ai].name;
}

int arrow_from(const Presentation& a, const ojson& j) {
  if (j.is_null()) return -1;
  int ai = a.arrow_index(j.get<std::string>());
  if (ai < 0) throw ArtifactError("unknown arrow: " + j.get<std::string>());
  return ai;
}

ojson path_json(const Presentation& a, const Path& p) {
  if (p.source < 0) return nullptr;
  return path_to_string(a, p);
}

Path path_from(const Presentation& a, const ojson& j) {
  if (j.is_null()) return Path{};
  return parse_path(a, j.get<std::string>());
}

ojson paths_json(const Presentation& a, const std::vector<Path>& ps) {
  ojson out = ojson::array();
  for (const Path& p : ps) out.push_back(path_json(a, p));
  return out;
}

std::vector<Path> paths_from(const Presentation& a, const ojson& j) {
  std::vector<Path> out;
  for (const auto& e : j) out.push_back(path_from(a, e));
  return out;
}

std::string letter_str(const Presentation& a, const Letter& l) {
  std::string s = a.arrows[l.arrow].name;
  if (l.inverse) s += '~';
  return s;
}

Letter letter_from(const Presentation& a, const std::string& s) {
  Letter l;
  std::string name = s;
  if (!name.empty() && name.back() == '~') {
    l.inverse = true;
    name.pop_back();
  }
  l.arrow = a.arrow_index(name);
  if (l.arrow < 0) throw ArtifactError("unknown arrow: " + s);
  return l;
}

ojson letters_json(const Presentation& a, const std::vector<Letter>& ls) {
  ojson out = ojson::array();
  for (const Letter& l : ls) out.push_back(letter_str(a, l));
  return out;
}

std::vector<Letter> letters_from(const Presentation& a, const ojson& j) {
  std::vector<Letter> out;
  for (const auto& e : j) out.push_back(letter_from(a, e.get<std::string>()));
  return out;
}

ojson word_json(const Presentation& a, const Word& w) {
  ojson out;
  out["base"] = vertex_json(a, w.base);
  out["letters"] = letters_json(a, w.letters);
  return out;
}

Word word_from(const Presentation& a, const ojson& j) {
  Word w;
  w.base = vertex_from(a, j.at("base"));
  w.letters = letters_from(a, j.at("letters"));
  return w;
}

ojson ray_json(const Presentation& a, const Ray& r) {
  ojson out;
  out["preperiod"] = letters_json(a, r.preperiod);
  out["period"] = letters_json(a, r.period);
  return out;
}

Ray ray_from(const Presentation& a, const ojson& j) {
  Ray r;
  r.preperiod = letters_from(a, j.at("preperiod"));
  r.period = letters_from(a, j.at("period"));
  return r;
}

ojson gen_json(const Presentation& a, const GeneralizedString& g) {
  ojson out;
  out["anchor"] = vertex_json(a, g.anchor);
  out["left"] = ray_json(a, g.left);
  out["right"] = ray_json(a, g.right);
  return out;
}

GeneralizedString gen_from(const Presentation& a, const ojson& j) {
  GeneralizedString g;
  g.anchor = vertex_from(a, j.at("anchor"));
  g.left = ray_from(a, j.at("left"));
  g.right = ray_from(a, j.at("right"));
  return g;
}

ojson side_json(const Presentation& a, const SideOutcome& s) {
  ojson out;
  out["descents"] = paths_json(a, s.descents);
  out["ascents"] = paths_json(a, s.ascents);
  out["terminated"] = s.terminated;
  out["period_from"] = s.period_from;
  out["period_at"] = s.period_at;
  out["closed_at_step"] = s.closed_at_step;
  return out;
}

SideOutcome side_from(const Presentation& a, const ojson& j) {
  SideOutcome s;
  s.descents = paths_from(a, j.at("descents"));
  s.ascents = paths_from(a, j.at("ascents"));
  s.terminated = j.at("terminated").get<bool>();
  s.period_from = j.at("period_from").get<int>();
  s.period_at = j.at("period_at").get<int>();
  s.closed_at_step = j.at("closed_at_step").get<int>();
  return s;
}

ojson phantom_json(const Presentation& a, const PhantomResult& r) {
  ojson out;
  out["anchor"] = vertex_json(a, r.anchor_vertex);
  out["finite"] = r.finite;
  out["step_count"] = r.step_count;
  out["phantom"] = gen_json(a, r.phantom);
  out["left"] = side_json(a, r.left);
  out["right"] = side_json(a, r.right);
  ojson steps = ojson::array();
  for (const StepEntry& e : r.steps.entries) {
    ojson s;
    s["step"] = e.step;
    s["left"] = e.left;
    s["path"] = path_json(a, e.path);
    s["start_arrow"] = arrow_json(a, e.start_arrow);
    steps.push_back(std::move(s));
  }
  out["steps"] = std::move(steps);
  out["notes"] = r.notes;
  return out;
}

PhantomResult phantom_from(const Presentation& a, const ojson& j) {
  PhantomResult r;
  r.anchor_vertex = vertex_from(a, j.at("anchor"));
  r.finite = j.at("finite").get<bool>();
  r.step_count = j.at("step_count").get<int>();
  r.phantom = gen_from(a, j.at("phantom"));
  r.left = side_from(a, j.at("left"));
  r.right = side_from(a, j.at("right"));
  for (const auto& s : j.at("steps")) {
    StepEntry e;
    e.step = s.at("step").get<int>();
    e.left = s.at("left").get<bool>();
    e.path = path_from(a, s.at("path"));
    e.start_arrow = arrow_from(a, s.at("start_arrow"));
    r.steps.entries.push_back(std::move(e));
  }
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

ojson saguaro_json(const Presentation& a, const Saguaro& s) {
  ojson out;
  out["anchor"] = vertex_json(a, s.anchor_vertex);
  out["bound"] = s.bound_d;
  out["pdim"] = s.pdim;
  ojson nodes = ojson::array();
  for (const SaguaroNode& n : s.nodes) {
    ojson nj;
    nj["vertex"] = vertex_json(a, n.vertex);
    nj["child"] = n.child;
    nj["arrow"] = arrow_json(a, n.arrow);
    nodes.push_back(std::move(nj));
  }
  out["nodes"] = std::move(nodes);
  out["tops"] = s.tops;
  out["masts"] = paths_json(a, s.masts);
  ojson gl = ojson::array();
  for (const Gluing& g : s.gluings) {
    ojson gj;
    gj["index"] = g.index;
    gj["q_left"] = path_json(a, g.q_left);
    gj["q_right"] = path_json(a, g.q_right);
    gl.push_back(std::move(gj));
  }
  out["gluings"] = std::move(gl);
  return out;
}

Saguaro saguaro_from(const Presentation& a, const ojson& j) {
  Saguaro s;
  s.anchor_vertex = vertex_from(a, j.at("anchor"));
  s.bound_d = j.at("bound").get<int>();
  s.pdim = j.at("pdim").get<int>();
  for (const auto& nj : j.at("nodes")) {
    SaguaroNode n;
    n.vertex = vertex_from(a, nj.at("vertex"));
    n.child = nj.at("child").get<int>();
    n.arrow = arrow_from(a, nj.at("arrow"));
    s.nodes.push_back(n);
  }
  s.tops = j.at("tops").get<std::vector<int>>();
  s.masts = paths_from(a, j.at("masts"));
  for (const auto& gj : j.at("gluings")) {
    Gluing g;
    g.index = gj.at("index").get<int>();
    g.q_left = path_from(a, gj.at("q_left"));
    g.q_right = path_from(a, gj.at("q_right"));
    s.gluings.push_back(std::move(g));
  }
  return s;
}

// ---- envelope ----

std::string envelope(const std::string& type, ojson payload) {
  ojson env;
  env["format"] = "qh-artifact";
  env["version"] = kArtifactVersion;
  env["type"] = type;
  env["payload"] = std::move(payload);
  return env.dump(2) + "\n";
}

ojson open_envelope(const std::string& bytes, const std::string& want_type) {
  ojson env;
  try {
    env = ojson::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw ArtifactError(std::string("malformed artifact: ") + e.what());
  }
  if (!env.is_object() || !env.contains("format") || env["format"] != "qh-artifact")
    throw ArtifactError("not a qh-artifact");
  if (!env.contains("version") || !env["version"].is_number_integer())
    throw ArtifactError("artifact version missing");
  if (env["version"].get<int>() != kArtifactVersion)
    throw ArtifactError("unsupported artifact version " + env["version"].dump() + ", expected " +
                        std::to_string(kArtifactVersion));
  if (!env.contains("type") || !env["type"].is_string())
    throw ArtifactError("artifact type missing");
  if (!want_type.empty() && env["type"] != want_type)
    throw ArtifactError("artifact holds a \"" + env["type"].get<std::string>() +
                        "\", expected \"" + want_type + "\"");
  if (!env.contains("payload")) throw ArtifactError("artifact payload missing");
  return env["payload"];
}

// All decoding mishaps surface as ArtifactError with the cause preserved.
template <class Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ArtifactError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ArtifactError(std::string("malformed artifact: ") + e.what());
  } catch (const ParseError& e) {
    throw ArtifactError(std::string("malformed artifact: ") + e.what());
  } catch (const DomainError& e) {
    throw ArtifactError(std::string("malformed artifact: ") + e.what());
  } catch (const NotAdmissibleError& e) {
    throw ArtifactError(std::string("inadmissible presentation: ") + e.what());
  }
}

}  // namespace

// ---- rendering ----

std::string render_graph(const Presentation& a, const LayeredGraph& g,
                         const RenderOptions& opts) {
  return render_impl(a, g, {}, {}, opts);
}

std::string render_graph(const Presentation& a, const LayeredGraph& g,
                         const std::vector<int>& pooled_left,
                         const std::vector<int>& pooled_right, const RenderOptions& opts) {
  return render_impl(a, g, std::set<int>(pooled_left.begin(), pooled_left.end()),
                     std::set<int>(pooled_right.begin(), pooled_right.end()), opts);
}

std::string render_word(const Presentation& a, const Word& w, const RenderOptions& opts) {
  return render_graph(a, word_graph(a, w), opts);
}

std::string render_generalized(const Presentation& a, const GeneralizedString& g,
                               const RenderOptions& opts) {
  if (opts.window < 0) throw std::logic_error("render window must be >= 0");
  auto side_count = [&](const Ray& r) {
    if (!r.infinite()) return ray_length(r);
    return static_cast<int>(r.preperiod.size()) +
           opts.window * static_cast<int>(r.period.size());
  };
  int lcount = side_count(g.left);
  int rcount = side_count(g.right);
  WindowResult wr = window(a, g, lcount, rcount);
  std::vector<int> pool_l, pool_r;
  if (g.left.infinite())
    for (int d = static_cast<int>(g.left.preperiod.size()) + 1; d <= lcount; ++d)
      pool_l.push_back(wr.anchor_node - d);
  if (g.right.infinite())
    for (int d = static_cast<int>(g.right.preperiod.size()) + 1; d <= rcount; ++d)
      pool_r.push_back(wr.anchor_node + d);
  return render_graph(a, word_graph(a, wr.word), pool_l, pool_r, opts);
}

std::string render_saguaro(const Presentation& a, const Saguaro& s, const RenderOptions& opts) {
  return render_graph(a, saguaro_graph(a, s), opts);
}

// ---- serialization ----

std::string encode(const Presentation& a) {
  ojson payload;
  payload["name"] = a.name;
  ojson field;
  field["rational"] = a.field_is_rational;
  field["p"] = a.field_p;
  payload["field"] = std::move(field);
  payload["vertices"] = a.vertex_names;
  ojson arrows = ojson::array();
  for (const Arrow& ar : a.arrows) {
    ojson aj;
    aj["name"] = ar.name;
    aj["from"] = a.vertex_names[ar.src];
    aj["to"] = a.vertex_names[ar.tgt];
    arrows.push_back(std::move(aj));
  }
  payload["arrows"] = std::move(arrows);
  payload["relations"] = paths_json(a, a.relations);
  ojson lin = ojson::array();
  for (const LinRel& rel : a.linrels) {
    ojson terms = ojson::array();
    for (const auto& [coef, p] : rel.terms) {
      ojson t;
      t["coef"] = coef;
      t["path"] = path_json(a, p);
      terms.push_back(std::move(t));
    }
    lin.push_back(std::move(terms));
  }
  payload["linear_relations"] = std::move(lin);
  return envelope("presentation", std::move(payload));
}

Presentation decode_presentation(const std::string& bytes) {
  return guarded([&] {
    ojson j = open_envelope(bytes, "presentation");
    Presentation q;
    q.name = j.at("name").get<std::string>();
    q.field_is_rational = j.at("field").at("rational").get<bool>();
    q.field_p = j.at("field").at("p").get<std::int64_t>();
    q.vertex_names = j.at("vertices").get<std::vector<std::string>>();
    std::map<std::string, int> vidx, aidx;
    for (std::size_t i = 0; i < q.vertex_names.size(); ++i)
      vidx[q.vertex_names[i]] = static_cast<int>(i);
    for (const auto& aj : j.at("arrows")) {
      Arrow ar;
      ar.name = aj.at("name").get<std::string>();
      auto s = vidx.find(aj.at("from").get<std::string>());
      auto t = vidx.find(aj.at("to").get<std::string>());
      if (s == vidx.end() || t == vidx.end())
        throw ArtifactError("arrow " + ar.name + " references an unknown vertex");
      ar.src = s->second;
      ar.tgt = t->second;
      aidx[ar.name] = static_cast<int>(q.arrows.size());
      q.arrows.push_back(std::move(ar));
    }
    // Path literals must be resolved before finalize(), so look names up by
    // hand instead of going through parse_path.
    auto resolve = [&](const std::string& text) -> Path {
      auto v = vidx.find(text);
      if (v != vidx.end()) return Path{v->second, {}};
      Path p;
      std::string tok;
      std::vector<int> comp;
      std::istringstream in(text);
      while (std::getline(in, tok, '*')) {
        auto it = aidx.find(tok);
        if (it == aidx.end()) throw ArtifactError("unknown arrow in path: " + tok);
        comp.push_back(it->second);
      }
      if (comp.empty()) throw ArtifactError("empty path literal");
      p.arrows.assign(comp.rbegin(), comp.rend());
      p.source = q.arrows[p.arrows.front()].src;
      return p;
    };
    for (const auto& rj : j.at("relations")) q.relations.push_back(resolve(rj.get<std::string>()));
    for (const auto& relj : j.at("linear_relations")) {
      LinRel rel;
      for (const auto& tj : relj)
        rel.terms.emplace_back(tj.at("coef").get<std::int64_t>(),
                               resolve(tj.at("path").get<std::string>()));
      q.linrels.push_back(std::move(rel));
    }
    q.finalize();
    return q;
  });
}

std::string encode(const Presentation& a, const Word& w) {
  return envelope("word", word_json(a, w));
}

Word decode_word(const Presentation& a, const std::string& bytes) {
  return guarded([&] { return word_from(a, open_envelope(bytes, "word")); });
}

std::string encode(const Presentation& a, const GeneralizedString& g) {
  return envelope("generalized", gen_json(a, g));
}

GeneralizedString decode_generalized(const Presentation& a, const std::string& bytes) {
  return guarded([&] { return gen_from(a, open_envelope(bytes, "generalized")); });
}

std::string encode(const Presentation& a, const PhantomResult& r) {
  return envelope("phantom", phantom_json(a, r));
}

PhantomResult decode_phantom(const Presentation& a, const std::string& bytes) {
  return guarded([&] { return phantom_from(a, open_envelope(bytes, "phantom")); });
}

std::string encode(const Presentation& a, const Decision& d) {
  ojson payload;
  switch (d.verdict) {
    case Verdict::Yes: payload["verdict"] = "yes"; break;
    case Verdict::No: payload["verdict"] = "no"; break;
    case Verdict::UndecidedAtBound: payload["verdict"] = "undecided_at_bound"; break;
  }
  payload["witness"] = word_json(a, d.witness);
  payload["bound"] = d.bound;
  return envelope("decision", std::move(payload));
}

Decision decode_decision(const Presentation& a, const std::string& bytes) {
  return guarded([&] {
    ojson j = open_envelope(bytes, "decision");
    Decision d;
    std::string v = j.at("verdict").get<std::string>();
    if (v == "yes")
      d.verdict = Verdict::Yes;
    else if (v == "no")
      d.verdict = Verdict::No;
    else if (v == "undecided_at_bound")
      d.verdict = Verdict::UndecidedAtBound;
    else
      throw ArtifactError("unknown verdict: " + v);
    d.witness = word_from(a, j.at("witness"));
    d.bound = j.at("bound").get<int>();
    return d;
  });
}

std::string encode(const Presentation& a, const CriterionWitness& w) {
  ojson payload;
  ojson vs = ojson::array();
  for (int v : w.vertices) vs.push_back(vertex_json(a, v));
  payload["vertices"] = std::move(vs);
  payload["ps"] = paths_json(a, w.ps);
  payload["qs"] = paths_json(a, w.qs);
  payload["verified_bound"] = w.verified_bound;
  return envelope("witness", std::move(payload));
}

CriterionWitness decode_witness(const Presentation& a, const std::string& bytes) {
  return guarded([&] {
    ojson j = open_envelope(bytes, "witness");
    CriterionWitness w;
    for (const auto& vj : j.at("vertices")) w.vertices.push_back(vertex_from(a, vj));
    w.ps = paths_from(a, j.at("ps"));
    w.qs = paths_from(a, j.at("qs"));
    w.verified_bound = j.at("verified_bound").get<int>();
    return w;
  });
}

std::string encode(const Presentation& a, const Saguaro& s) {
  return envelope("saguaro", saguaro_json(a, s));
}

Saguaro decode_saguaro(const Presentation& a, const std::string& bytes) {
  return guarded([&] { return saguaro_from(a, open_envelope(bytes, "saguaro")); });
}

std::string encode(const Presentation& a, const FindimReport& r) {
  ojson payload;
  payload["contravariantly_finite"] = r.contravariantly_finite;
  payload["lfindim"] = r.lfindim;
  payload["lower_bound_only"] = r.lower_bound_only;
  payload["corpus_letter_bound"] = r.corpus_letter_bound;
  payload["approx_pdim"] = r.approx_pdim;
  ojson per = ojson::array();
  for (const PhantomResult& p : r.per_simple) per.push_back(phantom_json(a, p));
  payload["per_simple"] = std::move(per);
  return envelope("findim", std::move(payload));
}

FindimReport decode_findim(const Presentation& a, const std::string& bytes) {
  return guarded([&] {
    ojson j = open_envelope(bytes, "findim");
    FindimReport r;
    r.contravariantly_finite = j.at("contravariantly_finite").get<bool>();
    r.lfindim = j.at("lfindim").get<int>();
    r.lower_bound_only = j.at("lower_bound_only").get<bool>();
    r.corpus_letter_bound = j.at("corpus_letter_bound").get<int>();
    r.approx_pdim = j.at("approx_pdim").get<std::vector<int>>();
    for (const auto& pj : j.at("per_simple")) r.per_simple.push_back(phantom_from(a, pj));
    return r;
  });
}

std::string encode(const Presentation& a, const SerialFindimReport& r) {
  ojson payload;
  payload["lfindim"] = r.lfindim;
  ojson per = ojson::array();
  for (const Saguaro& s : r.per_simple) per.push_back(saguaro_json(a, s));
  payload["per_simple"] = std::move(per);
  return envelope("serial_findim", std::move(payload));
}

SerialFindimReport decode_serial_findim(const Presentation& a, const std::string& bytes) {
  return guarded([&] {
    ojson j = open_envelope(bytes, "serial_findim");
    SerialFindimReport r;
    r.lfindim = j.at("lfindim").get<int>();
    for (const auto& sj : j.at("per_simple")) r.per_simple.push_back(saguaro_from(a, sj));
    return r;
  });
}

std::string artifact_type(const std::string& bytes) {
  return guarded([&] {
    ojson j;
    try {
      j = ojson::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
      throw ArtifactError(std::string("malformed artifact: ") + e.what());
    }
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
      throw ArtifactError("not a qh-artifact");
    return j["type"].get<std::string>();
  });
}

}  // namespace qh
