// Command-line front end.  Every subcommand loads a presentation file, runs
// one library operation, and prints a deterministic report: same argv plus
// same files yields byte-identical stdout.
//
// Exit codes: 0 success, 1 domain/input error, 2 answer inconclusive at the
// configured bound.  The PHANTOM_BOUND environment variable supplies a
// default witness-growth bound; an explicit --bound wins.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "quiverhom/artifacts_io.hpp"
#include "quiverhom/homology.hpp"
#include "quiverhom/phantom_engine.hpp"
#include "quiverhom/presentation.hpp"
#include "quiverhom/rep_oracle.hpp"
#include "quiverhom/serial_approx.hpp"
#include "quiverhom/string_calculus.hpp"

using namespace qh;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

int env_bound() {
  const char* s = std::getenv("PHANTOM_BOUND");
  if (!s || !*s) return -1;
  return std::atoi(s);
}

// The bound handed to the library: explicit flag, else environment, else the
// library default (-1).
int effective_bound(int flag) { return flag >= 0 ? flag : env_bound(); }

int resolve_vertex(const Presentation& a, const std::string& name) {
  int v = a.vertex_index(name);
  if (v < 0) throw DomainError("unknown vertex: " + name);
  return v;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::string yn(bool b) { return b ? "yes" : "no"; }

Fp working_field(const Presentation& a) {
  // Oracle probes run over a prime field even for rational presentations;
  // dimensions of kernels and images are what the checks compare.
  return Fp{a.field_is_rational ? 101 : a.field_p};
}

std::string side_summary(const Presentation& a, const SideOutcome& s, const Ray& r) {
  std::ostringstream out;
  if (s.terminated) {
    out << "terminated, " << ray_length(r) << " letters";
  } else {
    out << "periodic: preperiod " << r.preperiod.size() << " letters, period "
        << r.period.size() << " letters (descents " << s.period_from << ".."
        << (s.period_at - 1) << " repeat)";
  }
  out << ", closed at step " << s.closed_at_step;
  (void)a;
  return out.str();
}

// ---- subcommand bodies ----

struct Ctx {
  Presentation a;
  std::string format = "text";
  std::ostringstream out;
};

int cmd_classify(Ctx& c) {
  Classification cl = c.a.classify();
  bool descent = descent_calculus_applicable(c.a);
  bool words = string_calculus_applicable(c.a);
  if (c.format == "data") {
    ojson j;
    j["name"] = c.a.name;
    j["vertices"] = c.a.num_vertices();
    j["arrows"] = c.a.num_arrows();
    j["dimension"] = c.a.dimension();
    j["monomial"] = cl.monomial;
    j["special_biserial"] = cl.special_biserial;
    j["string_algebra"] = cl.string_algebra;
    j["left_serial"] = cl.left_serial;
    j["descent_calculus"] = descent;
    j["word_calculus"] = words;
    c.out << dump(j);
    return kExitOk;
  }
  c.out << "algebra: " << c.a.name << "\n"
        << "vertices: " << c.a.num_vertices() << ", arrows: " << c.a.num_arrows()
        << ", dimension: " << c.a.dimension() << "\n"
        << "monomial: " << yn(cl.monomial) << "\n"
        << "special biserial: " << yn(cl.special_biserial) << "\n"
        << "string algebra: " << yn(cl.string_algebra) << "\n"
        << "left serial: " << yn(cl.left_serial) << "\n"
        << "descent calculus applicable: " << yn(descent) << "\n"
        << "word calculus applicable: " << yn(words) << "\n";
  return kExitOk;
}

int cmd_basis(Ctx& c) {
  const auto& alive = c.a.alive_paths();
  if (c.format == "data") {
    ojson j;
    j["dimension"] = c.a.dimension();
    ojson paths = ojson::array();
    for (const Path& p : alive) paths.push_back(path_to_string(c.a, p));
    j["monomial_basis"] = std::move(paths);
    c.out << dump(j);
    return kExitOk;
  }
  c.out << "dimension: " << c.a.dimension() << "\n";
  if (!c.a.is_monomial())
    c.out << "monomial basis before linear relations: " << alive.size() << " paths\n";
  for (const Path& p : alive) c.out << path_to_string(c.a, p) << "\n";
  return kExitOk;
}

void print_pdim(Ctx& c, const std::string& what, const PdimResult& r) {
  if (c.format == "data") {
    ojson j;
    j["of"] = what;
    j["finite"] = r.finite;
    if (r.finite) {
      j["pdim"] = r.value;
    } else {
      ojson cyc = ojson::array();
      for (const Path& p : r.cycle) cyc.push_back(path_to_string(c.a, p));
      j["cycle"] = std::move(cyc);
    }
    c.out << dump(j);
    return;
  }
  if (r.finite) {
    c.out << "pdim(" << what << ") = " << r.value << "\n";
  } else {
    c.out << "pdim(" << what << ") = infinite\n"
          << "syzygy recursion cycle:";
    for (const Path& p : r.cycle) c.out << " " << path_to_string(c.a, p);
    c.out << "\n";
  }
}

int cmd_pdim(Ctx& c, const std::string& word_text, const std::string& path_text) {
  if (!word_text.empty()) {
    Word w = parse_word(c.a, word_text);
    print_pdim(c, word_to_string(c.a, w), word_pdim(c.a, w));
  } else {
    Path p = parse_path(c.a, path_text);
    print_pdim(c, path_to_string(c.a, p), path_pdim(c.a, p));
  }
  return kExitOk;
}

int cmd_syzygy(Ctx& c, const std::string& word_text, const std::string& path_text) {
  struct Part {
    std::string kind, literal;
  };
  std::vector<Part> parts;
  std::string what;
  if (!word_text.empty()) {
    Word w = parse_word(c.a, word_text);
    what = word_to_string(c.a, w);
    for (const SyzygyPart& s : string_syzygy(c.a, w)) {
      if (s.is_path)
        parts.push_back({"path", path_to_string(c.a, s.path)});
      else
        parts.push_back({"word", word_to_string(c.a, s.word)});
    }
  } else {
    Path p = parse_path(c.a, path_text);
    what = path_to_string(c.a, p);
    for (const Path& u : minimal_kills(c.a, p))
      parts.push_back({"path", path_to_string(c.a, u)});
  }
  if (c.format == "data") {
    ojson j;
    j["of"] = what;
    ojson pj = ojson::array();
    for (const Part& p : parts) {
      ojson e;
      e["kind"] = p.kind;
      e["literal"] = p.literal;
      pj.push_back(std::move(e));
    }
    j["parts"] = std::move(pj);
    c.out << dump(j);
    return kExitOk;
  }
  c.out << "syzygy of " << what << ":\n";
  if (parts.empty()) c.out << "  0 (projective)\n";
  for (const Part& p : parts) c.out << "  " << p.kind << " " << p.literal << "\n";
  return kExitOk;
}

int cmd_phantom(Ctx& c, const std::string& simple, int bound, int win) {
  int v = resolve_vertex(c.a, simple);
  PhantomResult ph = characteristic_phantom(c.a, v, bound);
  RenderOptions opts;
  opts.window = win;
  if (c.format == "data") {
    c.out << encode(c.a, ph);
    return kExitOk;
  }
  if (c.format == "dot") {
    opts.format = RenderOptions::Format::Dot;
    c.out << render_generalized(c.a, ph.phantom, opts);
    return kExitOk;
  }
  c.out << "characteristic module of S_" << c.a.vertex_names[v] << ": "
        << (ph.finite ? "finite word" : "infinite") << "\n";
  if (ph.finite) {
    Word w = full_word(c.a, ph.phantom);
    c.out << "word: " << word_to_string(c.a, w) << "\n"
          << "minimal approximation by finite-projective-dimension modules, dimension "
          << w.num_nodes() << "\n";
  } else {
    c.out << "left side: " << side_summary(c.a, ph.left, ph.phantom.left) << "\n"
          << "right side: " << side_summary(c.a, ph.right, ph.phantom.right) << "\n";
  }
  c.out << "steps used: " << ph.step_count << " (bound 3x vertices = "
        << 3 * c.a.num_vertices() << ")\n";
  if (!ph.finite) c.out << "window (" << win << " periods per infinite side):\n";
  c.out << render_generalized(c.a, ph.phantom, opts);
  return kExitOk;
}

int cmd_cfinite(Ctx& c, int bound) {
  std::vector<int> infinite;
  for (int v = 0; v < c.a.num_vertices(); ++v)
    if (!characteristic_phantom(c.a, v, bound).finite) infinite.push_back(v);
  bool cf = infinite.empty();
  if (c.format == "data") {
    ojson j;
    j["contravariantly_finite"] = cf;
    ojson inf = ojson::array();
    for (int v : infinite) inf.push_back(c.a.vertex_names[v]);
    j["infinite_simples"] = std::move(inf);
    c.out << dump(j);
    return kExitOk;
  }
  if (cf) {
    c.out << "contravariantly finite: every simple has a finite characteristic module\n";
  } else {
    c.out << "NOT contravariantly finite; infinite phantoms:";
    for (int v : infinite) c.out << " S_" << c.a.vertex_names[v];
    c.out << "\n";
  }
  return kExitOk;
}

int cmd_findim(Ctx& c, int bound, int letters) {
  if (string_calculus_applicable(c.a)) {
    FindimReport r = findim_report(c.a, bound, letters);
    if (c.format == "data") {
      c.out << encode(c.a, r);
      return r.lower_bound_only ? kExitInconclusive : kExitOk;
    }
    if (r.lower_bound_only) {
      c.out << "NOT contravariantly finite; little finitistic dimension >= " << r.lfindim
            << " (word corpus up to " << r.corpus_letter_bound << " letters)\n";
    } else {
      c.out << "little finitistic dimension: " << r.lfindim << "\n";
    }
    for (int v = 0; v < c.a.num_vertices(); ++v) {
      c.out << "S_" << c.a.vertex_names[v] << ": ";
      if (r.per_simple[v].finite)
        c.out << "approximation pdim " << r.approx_pdim[v] << "\n";
      else
        c.out << "no finite-dimensional approximation\n";
    }
    return r.lower_bound_only ? kExitInconclusive : kExitOk;
  }
  if (left_serial_applicable(c.a)) {
    SerialFindimReport r = serial_findim_report(c.a);
    if (c.format == "data") {
      c.out << encode(c.a, r);
      return kExitOk;
    }
    c.out << "left finitistic dimension: " << r.lfindim << "\n";
    for (int v = 0; v < c.a.num_vertices(); ++v)
      c.out << "S_" << c.a.vertex_names[v] << ": approximation dimension "
            << r.per_simple[v].dim() << ", pdim " << r.per_simple[v].pdim << "\n";
    return kExitOk;
  }
  throw DomainError(
      "finitistic dimension needs the word calculus or a left serial presentation");
}

int cmd_approx(Ctx& c, const std::string& simple, int pd, int bound, int win) {
  int v = resolve_vertex(c.a, simple);
  if (left_serial_applicable(c.a)) {
    Saguaro s = saguaro_approximation(c.a, v, pd);
    if (c.format == "data") {
      c.out << encode(c.a, s);
      return kExitOk;
    }
    RenderOptions opts;
    if (c.format == "dot") {
      opts.format = RenderOptions::Format::Dot;
      c.out << render_saguaro(c.a, s, opts);
      return kExitOk;
    }
    c.out << "approximation of S_" << c.a.vertex_names[v] << " in "
          << (pd < 0 ? std::string("P^inf") : "P^(" + std::to_string(pd) + ")")
          << ": dimension " << s.dim() << ", pdim " << s.pdim << ", trunks "
          << s.tops.size() << "\n";
    auto sy = saguaro_syzygy(c.a, s);
    c.out << "syzygy:";
    if (sy.empty()) c.out << " 0 (projective)";
    for (const UniserialPart& u : sy)
      c.out << " U(" << c.a.vertex_names[u.vertex] << "," << u.length << ")";
    c.out << "\n" << render_saguaro(c.a, s, opts);
    return kExitOk;
  }
  if (pd >= 0)
    throw DomainError("--pd asks for the bounded saguaro construction, which needs a "
                      "left serial presentation");
  ApproximationResult r = minimal_approximation(c.a, v, bound);
  RenderOptions opts;
  opts.window = win;
  if (c.format == "data") {
    c.out << encode(c.a, r.phantom);
    return kExitOk;
  }
  if (c.format == "dot") {
    opts.format = RenderOptions::Format::Dot;
    c.out << render_generalized(c.a, r.phantom.phantom, opts);
    return kExitOk;
  }
  if (r.finite) {
    c.out << "minimal approximation of S_" << c.a.vertex_names[v] << ": the word "
          << word_to_string(c.a, r.word) << "\n";
  } else {
    c.out << "S_" << c.a.vertex_names[v]
          << " has no finite-dimensional approximation; its characteristic module is "
             "infinite\n";
  }
  c.out << render_generalized(c.a, r.phantom.phantom, opts);
  return kExitOk;
}

int cmd_witness(Ctx& c, const std::string& simple, int bound) {
  int v = resolve_vertex(c.a, simple);
  PhantomResult ph = characteristic_phantom(c.a, v);
  if (ph.finite) {
    if (c.format == "data") {
      ojson j;
      j["found"] = false;
      j["reason"] = "finite characteristic module";
      c.out << dump(j);
    } else {
      c.out << "S_" << c.a.vertex_names[v]
            << " has a finite-dimensional approximation; no failure witness exists\n";
    }
    return kExitOk;
  }
  int b = bound >= 0 ? bound : 8;
  std::optional<CriterionWitness> w = failure_witness_search(c.a, v, b);
  if (!w) {
    if (c.format == "data") {
      ojson j;
      j["found"] = false;
      j["bound"] = b;
      c.out << dump(j);
    } else {
      c.out << "no failure witness found within repetition bound " << b << "\n";
    }
    return kExitInconclusive;
  }
  if (c.format == "data") {
    c.out << encode(c.a, *w);
    return kExitOk;
  }
  c.out << "failure witness for S_" << c.a.vertex_names[v] << " (verified to depth "
        << w->verified_bound << "):\n"
        << "vertices:";
  for (int e : w->vertices) c.out << " " << c.a.vertex_names[e];
  c.out << "\np:";
  for (const Path& p : w->ps) c.out << " " << path_to_string(c.a, p);
  c.out << "\nq:";
  for (const Path& q : w->qs) c.out << " " << path_to_string(c.a, q);
  c.out << "\n";
  return kExitOk;
}

int cmd_bands(Ctx& c, int letters, int size) {
  Fp f = working_field(c.a);
  BandSearchOutcome r = band_finite_pdim_search(f, c.a, letters, size);
  if (c.format == "data") {
    ojson j;
    j["letter_bound"] = letters;
    j["block_bound"] = size;
    j["bands_examined"] = r.bands_examined;
    j["modules_probed"] = r.modules_probed;
    ojson finds = ojson::array();
    for (const BandPdimFind& fnd : r.finds) {
      ojson e;
      e["band"] = cyclic_word_to_string(c.a, fnd.band);
      e["block"] = fnd.s;
      e["param"] = fnd.param;
      e["pdim"] = fnd.pdim;
      finds.push_back(std::move(e));
    }
    j["finds"] = std::move(finds);
    c.out << dump(j);
    return kExitOk;
  }
  if (r.finds.empty()) {
    c.out << "no band module of finite projective dimension found (bands up to " << letters
          << " letters: " << r.bands_examined << ", modules probed: " << r.modules_probed
          << ")\n";
  } else {
    c.out << "band modules of finite projective dimension:\n";
    for (const BandPdimFind& fnd : r.finds)
      c.out << "  [" << cyclic_word_to_string(c.a, fnd.band) << "] block " << fnd.s
            << " param " << fnd.param << ": pdim " << fnd.pdim << "\n";
  }
  return kExitOk;
}

int cmd_check(Ctx& c, int samples, unsigned seed, int letters) {
  Fp f = working_field(c.a);
  int agree = 0, mismatch = 0, undecided = 0;
  std::vector<std::string> bad;
  std::mt19937 rng(seed);

  auto tally = [&](const std::string& what, const PdimResult& comb,
                   const OraclePdimResult& orc, bool syz_ok) {
    bool ok = syz_ok;
    if (ok) {
      if (comb.finite) {
        if (orc.kind == OraclePdimResult::Kind::Finite)
          ok = comb.value == orc.value;
        else if (orc.kind == OraclePdimResult::Kind::Undecided) {
          ++undecided;
          return;
        } else
          ok = false;
      } else {
        if (orc.kind == OraclePdimResult::Kind::Finite)
          ok = false;
        else if (orc.kind == OraclePdimResult::Kind::Undecided) {
          ++undecided;
          return;
        }
      }
    }
    if (ok)
      ++agree;
    else {
      ++mismatch;
      bad.push_back(what);
    }
  };

  if (string_calculus_applicable(c.a)) {
    std::vector<Word> corpus = enumerate_words(c.a, letters);
    std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
    for (int i = 0; i < samples; ++i) {
      const Word& w = corpus[pick(rng)];
      Module<Fp> m = realize_word(f, c.a, w);
      CoverResult<Fp> cs = cover_and_syzygy(c.a, m);
      Module<Fp> claim = realize_syzygy(f, c.a, string_syzygy(c.a, w));
      bool syz_ok = claim.total_dim() == cs.syzygy.total_dim() &&
                    (claim.total_dim() == 0 || is_isomorphic(c.a, claim, cs.syzygy));
      tally(word_to_string(c.a, w), word_pdim(c.a, w), oracle_pdim(c.a, m), syz_ok);
    }
  } else if (left_serial_applicable(c.a)) {
    std::uniform_int_distribution<int> pickv(0, c.a.num_vertices() - 1);
    for (int i = 0; i < samples; ++i) {
      int v = pickv(rng);
      int ll = serial_chain(c.a, v).length() + 1;
      std::uniform_int_distribution<int> picklen(1, ll);
      int len = picklen(rng);
      Module<Fp> m = realize_truncated_projective(f, c.a, v, len);
      std::string what = "U(" + c.a.vertex_names[v] + "," + std::to_string(len) + ")";
      tally(what, uniserial_pdim(c.a, v, len), oracle_pdim(c.a, m), true);
    }
  } else {
    throw DomainError("oracle cross-check needs the word calculus or a left serial "
                      "presentation");
  }

  if (c.format == "data") {
    ojson j;
    j["samples"] = samples;
    j["seed"] = seed;
    j["letter_bound"] = letters;
    j["agreements"] = agree;
    j["mismatches"] = mismatch;
    j["undecided_at_bound"] = undecided;
    j["failed"] = bad;
    c.out << dump(j);
  } else {
    c.out << "oracle cross-check: " << samples << " samples, seed " << seed << "\n"
          << "agreements: " << agree << ", mismatches: " << mismatch
          << ", undecided at bound: " << undecided << "\n";
    for (const std::string& s : bad) c.out << "  mismatch: " << s << "\n";
  }
  if (mismatch > 0) return kExitError;
  return undecided > 0 ? kExitInconclusive : kExitOk;
}

int cmd_render(Ctx& c, const std::string& word_text, const std::string& simple,
               const std::string& saguaro_of, int pd, int win) {
  RenderOptions opts;
  opts.window = win;
  if (c.format == "dot") opts.format = RenderOptions::Format::Dot;
  if (!word_text.empty()) {
    Word w = parse_word(c.a, word_text);
    if (c.format == "data")
      c.out << encode(c.a, w);
    else
      c.out << render_word(c.a, w, opts);
    return kExitOk;
  }
  if (!simple.empty()) {
    PhantomResult ph = characteristic_phantom(c.a, resolve_vertex(c.a, simple));
    if (c.format == "data")
      c.out << encode(c.a, ph.phantom);
    else
      c.out << render_generalized(c.a, ph.phantom, opts);
    return kExitOk;
  }
  Saguaro s = saguaro_approximation(c.a, resolve_vertex(c.a, saguaro_of), pd);
  if (c.format == "data")
    c.out << encode(c.a, s);
  else
    c.out << render_saguaro(c.a, s, opts);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homological invariants of quiver presentations"};
  app.require_subcommand(1);

  std::string file, format = "text";
  std::string word_text, path_text, simple, saguaro_of;
  int bound = -1, pd = -1, win = 2, letters = 8, size = 2, samples = 100;
  unsigned seed = 0;
  bool oracle = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", file, "presentation file (.alg)")->required();
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "dot", "data"}));
    return sub;
  };

  auto* s_classify = add_common(app.add_subcommand("classify", "algebra class flags"));
  auto* s_basis = add_common(app.add_subcommand("basis", "monomial path basis"));

  auto* s_pdim = add_common(app.add_subcommand("pdim", "projective dimension"));
  auto* pdim_w = s_pdim->add_option("--string", word_text, "word literal");
  auto* pdim_p = s_pdim->add_option("--path", path_text, "path literal");
  pdim_w->excludes(pdim_p);

  auto* s_syzygy = add_common(app.add_subcommand("syzygy", "first syzygy decomposition"));
  auto* syz_w = s_syzygy->add_option("--string", word_text, "word literal");
  auto* syz_p = s_syzygy->add_option("--path", path_text, "path literal");
  syz_w->excludes(syz_p);

  auto* s_phantom =
      add_common(app.add_subcommand("phantom", "characteristic module of a simple"));
  s_phantom->add_option("--simple", simple, "vertex name")->required();
  s_phantom->add_option("--bound", bound, "witness growth bound");
  s_phantom->add_option("--window", win, "periods per infinite side");

  auto* s_cfinite = add_common(app.add_subcommand("cfinite", "contravariant finiteness"));
  s_cfinite->add_option("--bound", bound, "witness growth bound");

  auto* s_findim = add_common(app.add_subcommand("findim", "little finitistic dimension"));
  s_findim->add_option("--bound", bound, "witness growth bound");
  s_findim->add_option("--letters", letters, "corpus letter bound");

  auto* s_approx = add_common(app.add_subcommand("approx", "minimal approximation"));
  s_approx->add_option("--simple", simple, "vertex name")->required();
  s_approx->add_option("--pd", pd, "pdim bound d (left serial only)");
  s_approx->add_option("--bound", bound, "witness growth bound");
  s_approx->add_option("--window", win, "periods per infinite side");

  auto* s_witness =
      add_common(app.add_subcommand("witness", "approximation failure certificate"));
  s_witness->add_option("--simple", simple, "vertex name")->required();
  s_witness->add_option("--bound", bound, "repetition depth to verify");

  auto* s_bands = add_common(app.add_subcommand("bands", "finite-pdim band search"));
  s_bands->add_option("--letters", letters, "band letter bound");
  s_bands->add_option("--size", size, "parameter block size bound");

  auto* s_check = add_common(app.add_subcommand("check", "randomized oracle cross-check"));
  s_check->add_flag("--oracle", oracle, "compare against the linear-algebra oracle");
  s_check->add_option("--samples", samples, "number of samples");
  s_check->add_option("--seed", seed, "RNG seed");
  s_check->add_option("--letters", letters, "corpus letter bound");

  auto* s_render = add_common(app.add_subcommand("render", "draw a layered graph"));
  auto* ren_w = s_render->add_option("--string", word_text, "word literal");
  auto* ren_s = s_render->add_option("--simple", simple, "characteristic module of vertex");
  auto* ren_g = s_render->add_option("--saguaro", saguaro_of, "approximation of vertex");
  s_render->add_option("--pd", pd, "pdim bound for --saguaro");
  s_render->add_option("--window", win, "periods per infinite side");
  ren_w->excludes(ren_s)->excludes(ren_g);
  ren_s->excludes(ren_g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    Ctx c;
    c.a = parse_presentation_file(file);
    c.format = format;
    int code = kExitError;
    if (s_classify->parsed()) {
      code = cmd_classify(c);
    } else if (s_basis->parsed()) {
      code = cmd_basis(c);
    } else if (s_pdim->parsed()) {
      if (word_text.empty() && path_text.empty())
        throw DomainError("pdim needs --string or --path");
      code = cmd_pdim(c, word_text, path_text);
    } else if (s_syzygy->parsed()) {
      if (word_text.empty() && path_text.empty())
        throw DomainError("syzygy needs --string or --path");
      code = cmd_syzygy(c, word_text, path_text);
    } else if (s_phantom->parsed()) {
      code = cmd_phantom(c, simple, effective_bound(bound), win);
    } else if (s_cfinite->parsed()) {
      code = cmd_cfinite(c, effective_bound(bound));
    } else if (s_findim->parsed()) {
      code = cmd_findim(c, effective_bound(bound), letters);
    } else if (s_approx->parsed()) {
      code = cmd_approx(c, simple, pd, effective_bound(bound), win);
    } else if (s_witness->parsed()) {
      code = cmd_witness(c, simple, effective_bound(bound));
    } else if (s_bands->parsed()) {
      code = cmd_bands(c, letters, size);
    } else if (s_check->parsed()) {
      if (!oracle) throw DomainError("check requires --oracle");
      code = cmd_check(c, samples, seed, letters);
    } else if (s_render->parsed()) {
      if (word_text.empty() && simple.empty() && saguaro_of.empty())
        throw DomainError("render needs --string, --simple, or --saguaro");
      code = cmd_render(c, word_text, simple, saguaro_of, pd, win);
    }
    std::cout << c.out.str();
    return code;
  } catch (const std::exception& e) {
    std::cerr << "quiverhom " << (argc > 1 ? argv[1] : "") << ": error: " << e.what()
              << "\n";
    return kExitError;
  }
}
