// Walk combinatorics for monomial algebras with biserial-shaped projectives:
// finite words (string-module descriptions), their runs, peaks and valleys,
// layered graphs for rendering, two-sided eventually-periodic words, and
// cyclic words (band descriptions).
//
// A word is read left to right.  A direct letter descends (the node on the
// right is the arrow applied to the node on the left); an inverse letter
// ascends (the node on the left is the arrow applied to the node on the
// right).  Tops of the module sit at peaks, socle elements at valleys.
#pragma once

#include <string>
#include <vector>

#include "quiverhom/presentation.hpp"

namespace qh {

struct Letter {
  int arrow = -1;
  bool inverse = false;
  auto operator<=>(const Letter&) const = default;
};

struct Word {
  int base = -1;  // vertex of the leftmost node
  std::vector<Letter> letters;

  int num_nodes() const { return static_cast<int>(letters.size()) + 1; }
  bool trivial() const { return letters.empty(); }
  auto operator<=>(const Word&) const = default;
};

// A cyclic word: n letters over n nodes, letter i joining node i to node
// (i+1) mod n.  `base` is the vertex of node 0.
struct CyclicWord {
  int base = -1;
  std::vector<Letter> letters;
  auto operator<=>(const CyclicWord&) const = default;
};

// One side of a two-sided, possibly infinite word: the letters adjacent to
// the anchor come first; after `preperiod` the `period` repeats outward
// forever.  An empty period means the side stops after the preperiod.
struct Ray {
  std::vector<Letter> preperiod;
  std::vector<Letter> period;
  bool infinite() const { return !period.empty(); }
  // Letter at distance i (0-based) from the anchor.
  Letter at(int i) const;
  auto operator<=>(const Ray&) const = default;
};

// A generalized string: an anchor node plus a left ray and a right ray.
// Finite in both directions exactly when it describes an ordinary word.
struct GeneralizedString {
  int anchor = -1;  // vertex of the anchor node
  Ray left, right;
  bool finite() const { return !left.infinite() && !right.infinite(); }
  bool operator==(const GeneralizedString&) const = default;
};

// ---- applicability gates ----
//
// Descending machinery (maximal extensions, word syzygies): monomial
// relations only, at most two arrows out of each vertex, at most one alive
// continuation per arrow.  Left-serial algebras qualify.
bool descent_calculus_applicable(const Presentation& a);
void require_descent_calculus(const Presentation& a);  // throws DomainError
// Full word machinery additionally needs at most one alive composition
// behind each arrow.  (The literal biserial degree bound on entering arrows
// is not required by any algorithm here, and the 17-vertex fixture violates
// it.)
bool string_calculus_applicable(const Presentation& a);
void require_string_calculus(const Presentation& a);  // throws DomainError

// ---- basic word operations ----

// Vertices of the nodes, left to right (letters.size() + 1 entries).
std::vector<int> word_node_vertices(const Presentation& a, const Word& w);
// Throws DomainError if the word violates the string axioms.
void validate_word(const Presentation& a, const Word& w);
bool word_is_valid(const Presentation& a, const Word& w);

// Node classification.  A node is a peak if no letter descends into it
// (tops), a valley if no letter ascends out of it (socle).
bool node_is_peak(const Word& w, int node);
bool node_is_valley(const Word& w, int node);
std::vector<int> peak_nodes(const Word& w);
std::vector<int> valley_nodes(const Word& w);

// Maximal directed runs.  Each run is recorded as the alive path from its
// peak end down to its valley end, plus the node range it covers.
struct Run {
  Path path;             // from the run's top vertex downwards
  bool descending;       // true: word descends left-to-right over this run
  int first_node;        // leftmost node index covered
  int last_node;         // rightmost node index covered
};
std::vector<Run> word_runs(const Presentation& a, const Word& w);

// Maximal mu with mu ∘ p alive (unique by the gate); trivial if none.
Path max_extension(const Presentation& a, const Path& p);

// Word with a single peak at `apex` descending along `left_slope` to the
// left and `right_slope` to the right (either slope may be trivial).
Word single_peak_word(const Presentation& a, int apex, const Path& left_slope, const Path& right_slope);
// The word of the indecomposable projective Lambda e (biserial shape).
Word projective_word(const Presentation& a, int vertex);
// Uniserial word descending along p from its source.
Word descending_word(const Presentation& a, const Path& p);

Word reverse_word(const Presentation& a, const Word& w);
// The lexicographically smaller of w and its reverse.
Word canonical_word(const Presentation& a, const Word& w);

// ---- text form ----
// "a b~ c": letters left to right, '~' marks an inverse letter; a bare
// vertex name denotes the trivial word at that vertex.
Word parse_word(const Presentation& a, const std::string& text);
std::string word_to_string(const Presentation& a, const Word& w);

// ---- layered graph (for rendering and figure comparison) ----
struct LayeredGraph {
  struct Node {
    int vertex;
    int depth;  // radical layer: longest descent from a peak of the word
  };
  struct Edge {
    int upper, lower;  // node indices
    int arrow;
  };
  std::vector<Node> nodes;  // in word order
  std::vector<Edge> edges;  // in word order
};
LayeredGraph word_graph(const Presentation& a, const Word& w);

// ---- generalized strings ----

// Finite window: `left_count` letters on the left of the anchor and
// `right_count` on the right (clamped to the available letters on a
// terminating side), materialized as an ordinary word.  Returns the word and
// the node index of the anchor inside it.
struct WindowResult {
  Word word;
  int anchor_node;
};
WindowResult window(const Presentation& a, const GeneralizedString& g, int left_count, int right_count);
// Number of letters of a terminating side (-1 for an infinite side).
int ray_length(const Ray& r);
// Whole word of a finite generalized string.
Word full_word(const Presentation& a, const GeneralizedString& g);

// All valid words with at most max_letters letters, one canonical
// representative per reversal class (trivial words included), ordered by
// letter count, then base vertex, then letters.
std::vector<Word> enumerate_words(const Presentation& a, int max_letters);

// ---- cyclic words ----

bool cyclic_word_is_valid(const Presentation& a, const CyclicWord& w);
bool cyclic_word_primitive(const CyclicWord& w);
// Canonical representative under rotation and reversal.
CyclicWord canonical_cyclic_word(const Presentation& a, const CyclicWord& w);
// All valid primitive cyclic words with at most max_len letters, one
// canonical representative per equivalence class, deterministic order.
std::vector<CyclicWord> enumerate_cyclic_words(const Presentation& a, int max_len);

std::string cyclic_word_to_string(const Presentation& a, const CyclicWord& w);

}  // namespace qh
