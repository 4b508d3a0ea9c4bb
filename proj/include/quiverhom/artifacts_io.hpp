// Rendering of layered labeled graphs (plain text and DOT) and a versioned,
// human-diffable serialization for every result type the library produces.
//
// ---- artifact format ----
// An artifact is a JSON object with a fixed envelope:
//
//   { "format": "qh-artifact", "version": 1, "type": "<type>", "payload": ... }
//
// Key order is fixed, output is indented with two spaces and ends in one
// newline, so equal values encode to equal bytes.  Paths are stored as path
// literals ("c*b*a", composition order; a bare vertex name is the trivial
// path), words as word literals ("a b~ c"), vertices and arrows by name;
// unset entries (negative indices) encode as null.  Payloads by type:
//
//   presentation    name, field {rational, p}, vertices, arrows [{name,
//                   from, to}], relations [path], linear_relations
//                   [[{coef, path}]]
//   word            base (vertex), letters ["a", "b~", ...]
//   generalized     anchor (vertex), left/right {preperiod, period}
//   phantom         anchor, finite, step_count, phantom (generalized
//                   payload), left/right side outcomes {descents, ascents,
//                   terminated, period_from, period_at, closed_at_step},
//                   steps [{step, left, path, start_arrow}], notes
//   decision        verdict ("yes" | "no" | "undecided_at_bound"),
//                   witness (word), bound
//   witness         vertices, ps, qs, verified_bound
//   saguaro         anchor, bound, pdim, nodes [{vertex, child, arrow}],
//                   tops, masts, gluings [{index, q_left, q_right}]
//   findim          contravariantly_finite, lfindim, lower_bound_only,
//                   corpus_letter_bound, approx_pdim, per_simple [phantom
//                   payload]
//   serial_findim   lfindim, per_simple [saguaro payload]
//
// Suggested file extensions: .alg for the presentation DSL, .word, .phantom
// and .json for artifacts, .dot for DOT drawings; all UTF-8.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "quiverhom/phantom_engine.hpp"
#include "quiverhom/presentation.hpp"
#include "quiverhom/serial_approx.hpp"
#include "quiverhom/string_calculus.hpp"

namespace qh {

// Malformed input, wrong envelope, or unsupported version.
struct ArtifactError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kArtifactVersion = 1;

// ---- rendering ----

struct RenderOptions {
  enum class Format { Ascii, Dot };
  Format format = Format::Ascii;
  bool show_labels = true;
  // For generalized strings: periods unrolled per infinite side (>= 0); a
  // terminating side is always drawn whole.
  int window = 2;
};

// Deterministic drawing of a layered graph.  Ascii lists the layers top-down
// ("layer <d>: #<i>=<vertex> ...") followed by the labeled edges; DOT emits
// one node per graph node, same-rank constraints per layer, and dotted
// clusters around pooled (periodically repeating) nodes.
std::string render_graph(const Presentation& a, const LayeredGraph& g,
                         const RenderOptions& opts = {});
std::string render_graph(const Presentation& a, const LayeredGraph& g,
                         const std::vector<int>& pooled_left,
                         const std::vector<int>& pooled_right,
                         const RenderOptions& opts = {});

std::string render_word(const Presentation& a, const Word& w,
                        const RenderOptions& opts = {});
// Windows each infinite side opts.window periods outward; the nodes past a
// preperiod form the drawn pools.
std::string render_generalized(const Presentation& a, const GeneralizedString& g,
                               const RenderOptions& opts = {});
std::string render_saguaro(const Presentation& a, const Saguaro& s,
                           const RenderOptions& opts = {});

// ---- serialization ----

std::string encode(const Presentation& a);
Presentation decode_presentation(const std::string& bytes);

std::string encode(const Presentation& a, const Word& w);
Word decode_word(const Presentation& a, const std::string& bytes);

std::string encode(const Presentation& a, const GeneralizedString& g);
GeneralizedString decode_generalized(const Presentation& a, const std::string& bytes);

std::string encode(const Presentation& a, const PhantomResult& r);
PhantomResult decode_phantom(const Presentation& a, const std::string& bytes);

std::string encode(const Presentation& a, const Decision& d);
Decision decode_decision(const Presentation& a, const std::string& bytes);

std::string encode(const Presentation& a, const CriterionWitness& w);
CriterionWitness decode_witness(const Presentation& a, const std::string& bytes);

std::string encode(const Presentation& a, const Saguaro& s);
Saguaro decode_saguaro(const Presentation& a, const std::string& bytes);

std::string encode(const Presentation& a, const FindimReport& r);
FindimReport decode_findim(const Presentation& a, const std::string& bytes);

std::string encode(const Presentation& a, const SerialFindimReport& r);
SerialFindimReport decode_serial_findim(const Presentation& a, const std::string& bytes);

// Envelope type name of an encoded artifact ("presentation", "word", ...).
std::string artifact_type(const std::string& bytes);

}  // namespace qh
