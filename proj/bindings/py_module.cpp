// Python bindings.  The surface is deliberately string-first: words, paths
// and cyclic words cross the boundary as their text literals, and structured
// results cross as the canonical JSON artifacts (the same bytes the CLI
// prints under --format data), so Python consumers share one serialization
// with the C++ side.  Renders come back as ready-to-print ascii or DOT text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "quiverhom/artifacts_io.hpp"
#include "quiverhom/homology.hpp"
#include "quiverhom/phantom_engine.hpp"
#include "quiverhom/rep_oracle.hpp"
#include "quiverhom/serial_approx.hpp"

namespace py = pybind11;
using namespace qh;

namespace {

const Fp kDefaultField{101};

int vertex_of(const Presentation& a, const std::string& name) {
  int v = a.vertex_index(name);
  if (v < 0) throw DomainError("unknown vertex: " + name);
  return v;
}

py::dict pdim_dict(const Presentation& a, const PdimResult& r) {
  py::dict d;
  d["finite"] = r.finite;
  d["value"] = r.finite ? py::object(py::int_(r.value)) : py::object(py::none());
  py::list cyc;
  for (const Path& p : r.cycle) cyc.append(path_to_string(a, p));
  d["cycle"] = cyc;
  return d;
}

RenderOptions render_opts(bool dot, int window, bool labels) {
  RenderOptions o;
  o.format = dot ? RenderOptions::Format::Dot : RenderOptions::Format::Ascii;
  o.window = window;
  o.show_labels = labels;
  return o;
}

// Decode an artifact of any type against the presentation and encode it
// again; the identity on bytes certifies the round-trip from Python.
std::string reencode(const Presentation& a, const std::string& bytes) {
  const std::string t = artifact_type(bytes);
  if (t == "presentation") return encode(decode_presentation(bytes));
  if (t == "word") return encode(a, decode_word(a, bytes));
  if (t == "generalized") return encode(a, decode_generalized(a, bytes));
  if (t == "phantom") return encode(a, decode_phantom(a, bytes));
  if (t == "decision") return encode(a, decode_decision(a, bytes));
  if (t == "witness") return encode(a, decode_witness(a, bytes));
  if (t == "saguaro") return encode(a, decode_saguaro(a, bytes));
  if (t == "findim") return encode(a, decode_findim(a, bytes));
  if (t == "serial_findim") return encode(a, decode_serial_findim(a, bytes));
  throw ArtifactError("unknown artifact type: " + t);
}

}  // namespace

PYBIND11_MODULE(_quiverhom, m) {
  m.doc() = "homological invariants of finite-dimensional path algebras";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NotAdmissibleError>(m, "NotAdmissibleError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ArtifactError>(m, "ArtifactError", PyExc_ValueError);

  py::class_<Presentation>(m, "Algebra")
      .def_static("from_file", &parse_presentation_file, py::arg("path"))
      .def_static("from_text", &parse_presentation_text, py::arg("text"))
      .def_property_readonly("name", [](const Presentation& a) { return a.name; })
      .def_property_readonly("vertices",
                             [](const Presentation& a) { return a.vertex_names; })
      .def_property_readonly("arrows",
                             [](const Presentation& a) {
                               std::vector<std::tuple<std::string, std::string, std::string>> out;
                               for (const auto& ar : a.arrows)
                                 out.emplace_back(ar.name, a.vertex_names[ar.src],
                                                  a.vertex_names[ar.tgt]);
                               return out;
                             })
      .def("dimension", &Presentation::dimension)
      .def("text", [](const Presentation& a) { return print_presentation(a); })
      .def("__repr__",
           [](const Presentation& a) {
             return "<Algebra " + a.name + " dim=" + std::to_string(a.dimension()) + ">";
           })
      .def("classify",
           [](const Presentation& a) {
             auto c = a.classify();
             py::dict d;
             d["monomial"] = c.monomial;
             d["special_biserial"] = c.special_biserial;
             d["string_algebra"] = c.string_algebra;
             d["left_serial"] = c.left_serial;
             return d;
           })
      .def("is_string", &string_calculus_applicable)
      .def("is_left_serial", &left_serial_applicable)

      // ---- words and pdims -------------------------------------------------
      .def("words",
           [](const Presentation& a, int max_letters) {
             std::vector<std::string> out;
             for (const Word& w : enumerate_words(a, max_letters))
               out.push_back(word_to_string(a, w));
             return out;
           },
           py::arg("max_letters"))
      .def("word_pdim",
           [](const Presentation& a, const std::string& w) {
             return pdim_dict(a, word_pdim(a, parse_word(a, w)));
           },
           py::arg("word"))
      .def("path_pdim",
           [](const Presentation& a, const std::string& p) {
             return pdim_dict(a, path_pdim(a, parse_path(a, p)));
           },
           py::arg("path"))
      .def("simple_pdim",
           [](const Presentation& a, const std::string& vertex) {
             return pdim_dict(a, simple_pdim(a, vertex_of(a, vertex)));
           },
           py::arg("vertex"))
      .def("string_syzygy",
           [](const Presentation& a, const std::string& w) {
             py::list out;
             for (const SyzygyPart& s : string_syzygy(a, parse_word(a, w))) {
               py::dict d;
               d["kind"] = s.is_path ? "path" : "word";
               d["text"] = s.is_path ? path_to_string(a, s.path) : word_to_string(a, s.word);
               out.append(d);
             }
             return out;
           },
           py::arg("word"))
      .def("word_render",
           [](const Presentation& a, const std::string& w, bool dot, bool labels) {
             return render_word(a, parse_word(a, w), render_opts(dot, 2, labels));
           },
           py::arg("word"), py::arg("dot") = false, py::arg("labels") = true)

      // ---- characteristic modules and approximations -----------------------
      .def("phantom",
           [](const Presentation& a, const std::string& vertex, int bound) {
             return encode(a, characteristic_phantom(a, vertex_of(a, vertex), bound));
           },
           py::arg("vertex"), py::arg("bound") = -1)
      .def("phantom_render",
           [](const Presentation& a, const std::string& vertex, int window, bool dot,
              int bound) {
             auto ph = characteristic_phantom(a, vertex_of(a, vertex), bound);
             return render_generalized(a, ph.phantom, render_opts(dot, window, true));
           },
           py::arg("vertex"), py::arg("window") = 2, py::arg("dot") = false,
           py::arg("bound") = -1)
      .def("minimal_approximation",
           [](const Presentation& a, const std::string& vertex,
              int bound) -> std::optional<std::string> {
             auto apx = minimal_approximation(a, vertex_of(a, vertex), bound);
             if (!apx.finite) return std::nullopt;
             return word_to_string(a, apx.word);
           },
           py::arg("vertex"), py::arg("bound") = -1)
      .def("top_embeddable",
           [](const Presentation& a, const std::string& w, int bound) {
             return encode(a, top_embeddable(a, parse_word(a, w), bound));
           },
           py::arg("word"), py::arg("bound") = -1)
      .def("socle_coverable",
           [](const Presentation& a, const std::string& w, int bound) {
             return encode(a, socle_coverable(a, parse_word(a, w), bound));
           },
           py::arg("word"), py::arg("bound") = -1)
      .def("contravariantly_finite",
           [](const Presentation& a, int bound) { return contravariant_finiteness(a, bound); },
           py::arg("bound") = -1)
      .def("findim",
           [](const Presentation& a, int bound, int corpus_letters) {
             return encode(a, findim_report(a, bound, corpus_letters));
           },
           py::arg("bound") = -1, py::arg("corpus_letters") = 8)
      .def("witness",
           [](const Presentation& a, const std::string& vertex,
              int bound) -> std::optional<std::string> {
             auto w = failure_witness_search(a, vertex_of(a, vertex), bound);
             if (!w) return std::nullopt;
             return encode(a, *w);
           },
           py::arg("vertex"), py::arg("bound") = 8)

      // ---- left-serial tree approximations ---------------------------------
      .def("saguaro",
           [](const Presentation& a, const std::string& vertex, int d) {
             return encode(a, saguaro_approximation(a, vertex_of(a, vertex), d));
           },
           py::arg("vertex"), py::arg("d") = -1)
      .def("saguaro_render",
           [](const Presentation& a, const std::string& vertex, int d, bool dot) {
             auto s = saguaro_approximation(a, vertex_of(a, vertex), d);
             return render_saguaro(a, s, render_opts(dot, 2, true));
           },
           py::arg("vertex"), py::arg("d") = -1, py::arg("dot") = false)
      .def("serial_findim",
           [](const Presentation& a) { return encode(a, serial_findim_report(a)); })

      // ---- bands and the linear-algebra oracle -----------------------------
      .def("bands",
           [](const Presentation& a, int max_len) {
             std::vector<std::string> out;
             for (const CyclicWord& b : enumerate_cyclic_words(a, max_len))
               out.push_back(cyclic_word_to_string(a, b));
             return out;
           },
           py::arg("max_len"))
      .def("band_search",
           [](const Presentation& a, int max_len, int max_s, int p) {
             auto res = band_finite_pdim_search(Fp{p}, a, max_len, max_s);
             py::list out;
             for (const auto& f : res.finds) {
               py::dict d;
               d["band"] = cyclic_word_to_string(a, f.band);
               d["s"] = f.s;
               d["param"] = f.param;
               d["pdim"] = f.pdim;
               out.append(d);
             }
             return out;
           },
           py::arg("max_len") = 8, py::arg("max_s") = 2, py::arg("p") = 101)
      .def("oracle_word_pdim",
           [](const Presentation& a, const std::string& w, int p, int iter_cap, int dim_cap) {
             auto m = realize_word(Fp{p}, a, parse_word(a, w));
             auto r = oracle_pdim(a, m, iter_cap, dim_cap);
             py::dict d;
             using K = OraclePdimResult::Kind;
             d["kind"] = r.kind == K::Finite          ? "finite"
                         : r.kind == K::InfiniteSuspected ? "infinite_suspected"
                                                          : "undecided";
             d["value"] = r.kind == K::Finite ? py::object(py::int_(r.value))
                                              : py::object(py::none());
             d["iterations"] = r.iterations;
             return d;
           },
           py::arg("word"), py::arg("p") = 101, py::arg("iter_cap") = 40,
           py::arg("dim_cap") = 400)

      // ---- artifacts -------------------------------------------------------
      .def("encode", [](const Presentation& a) { return encode(a); })
      .def("reencode", &reencode, py::arg("artifact"));

  m.def("decode_presentation", &decode_presentation, py::arg("artifact"));
  m.def("artifact_type", &artifact_type, py::arg("artifact"));
  m.def("algebra_dimension",
        [](const std::string& file) { return parse_presentation_file(file).dimension(); },
        py::arg("path"));
}
