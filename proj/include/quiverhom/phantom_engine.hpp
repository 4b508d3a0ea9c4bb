// The characteristic module of a simple top over a string algebra: the
// unique (possibly infinite) two-sided word through which every map from a
// finite-projective-dimension string module to the simple factors.  This
// header houses the two decision subroutines feeding its construction
// (top-embeddability and socle-coverability into the finite-projective-
// dimension class), the alternating minimal/maximal construction itself with
// its periodicity detection, and the derived global answers: contravariant
// finiteness, minimal approximations, the little finitistic dimension,
// factorization (effectiveness) checks, and the classical zig-zag failure
// witnesses.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quiverhom/homology.hpp"
#include "quiverhom/presentation.hpp"
#include "quiverhom/string_calculus.hpp"

namespace qh {

// Extension budget per word end used when materializing witnesses.  Defaults
// to 2 * max relation length * |arrows|; the PHANTOM_BOUND environment
// variable overrides it.
int default_phantom_bound(const Presentation& a);

enum class Verdict { Yes, No, UndecidedAtBound };

// Answer of a decision subroutine.  On Yes the witness is a word of finite
// projective dimension extending the input as required (equal to the input
// when no extension is needed).  UndecidedAtBound is reported when the
// decision is positive in principle but the shortest witness the engine can
// exhibit exceeds the extension budget.
struct Decision {
  Verdict verdict = Verdict::No;
  Word witness;
  int bound = 0;
  bool yes() const { return verdict == Verdict::Yes; }
  bool operator==(const Decision&) const = default;
};

// One step of the alternating construction, as logged.  Odd steps choose a
// minimal descent away from the word, even steps a maximal ascent back up;
// a trivial path records that the side stopped at that step.
struct StepEntry {
  int step = 0;
  bool left = false;
  Path path;
  int start_arrow = -1;  // first arrow of `path`, -1 for a trivial path
  bool operator==(const StepEntry&) const = default;
};
struct StepLog {
  std::vector<StepEntry> entries;
  bool operator==(const StepLog&) const = default;
};

// How one side of the construction ended.
struct SideOutcome {
  std::vector<Path> descents;  // p_1, p_2, ... read from the anchor outward
  std::vector<Path> ascents;   // q_1, q_2, ...
  bool terminated = false;     // closed by a trivial step; the ray is finite
  // When a start arrow repeats among the descents the side closes as
  // periodic: descents period_from .. period_at-1 repeat forever.
  int period_from = -1;
  int period_at = -1;
  int closed_at_step = 0;  // global step index at which the side closed
  bool periodic() const { return period_from > 0; }
  bool operator==(const SideOutcome&) const = default;
};

struct PhantomResult {
  int anchor_vertex = -1;
  GeneralizedString phantom;
  StepLog steps;
  SideOutcome left, right;
  bool finite = false;  // both sides terminated; the phantom is a word
  int step_count = 0;   // last step that changed anything; < 3 |vertices|
  std::vector<std::string> notes;  // tie-break remarks
  bool operator==(const PhantomResult&) const = default;
};

// Shared decision engine.  All acceptance questions about end-extensions
// reduce to two families of states computed once by least fixpoint:
//   * a valley state, keyed by the full run arriving at a word end, answers
//     whether the word can be completed outward past that valley;
//   * a peak state, keyed by the branch already descending from an end peak,
//     answers whether the word can be completed outward past that peak.
// Finiteness of the path and gluing modules consulted by the states comes
// from the shared projective-dimension cache, so every verdict is exact; the
// bound only limits how long a materialized witness may grow.
class PhantomEngine {
 public:
  explicit PhantomEngine(const Presentation& a);  // requires the word gates

  Decision top_embeddable(const Word& w, int bound = -1);
  Decision socle_coverable(const Word& w, int bound = -1);
  PhantomResult characteristic_phantom(int vertex, int bound = -1);

  // The construction with periodicity detection disabled, stopped after
  // `max_steps` steps; used to validate the periodicity criterion.
  PhantomResult raw_construction(int vertex, int max_steps);

  PdimCache& pdims() { return pdims_; }
  const Presentation& presentation() const { return *a_; }

  // Exposed for tests and the certificate search: fixpoint acceptance of the
  // two state families, and finiteness of the module glued below a valley.
  bool valley_accepts(const Path& run) const;
  bool peak_accepts(int used_arrow) const;
  bool glue_finite(const Path& left_run, const Path& right_run);

 private:
  const Presentation* a_;
  PdimCache pdims_;
  std::vector<Path> states_;             // alive nontrivial paths
  std::map<Path, int> valley_rank_;      // -1 rejected, else fixpoint round
  std::vector<int> peak_rank_;           // by used arrow
  std::map<std::pair<Path, Path>, bool> glue_fin_;

  bool valley_stop_ok(const Path& run);
  bool peak_stop_ok(int vertex, int used_arrow);
  void compute_states();

  // Witness materialization: letters to append past a right-hand end.
  std::vector<Letter> close_right_valley(const Path& run);
  std::vector<Letter> close_right_peak(int used_arrow);
  // Extends word `w` at both ends as the end kinds require; returns the
  // number of letters added at each end through the out-parameters.
  Word materialize(const Word& w, bool extend_valleys, int* added_left, int* added_right);

  PhantomResult run_construction(int vertex, int bound, bool detect_periods, int max_steps);
};

// Free-function conveniences (one-shot engines).
Decision top_embeddable(const Presentation& a, const Word& w, int bound = -1);
Decision socle_coverable(const Presentation& a, const Word& w, int bound = -1);
PhantomResult characteristic_phantom(const Presentation& a, int vertex, int bound = -1);

// The minimal approximation of the simple at `vertex` by modules of finite
// projective dimension: the characteristic word itself when finite.
struct ApproximationResult {
  bool finite = false;
  Word word;  // meaningful when finite
  PhantomResult phantom;
};
ApproximationResult minimal_approximation(const Presentation& a, int vertex, int bound = -1);

bool contravariant_finiteness(const Presentation& a, int bound = -1);

struct FindimReport {
  bool contravariantly_finite = false;
  std::vector<PhantomResult> per_simple;  // indexed by vertex
  std::vector<int> approx_pdim;           // pdim of the approximation, -1 when infinite
  int lfindim = 0;
  bool lower_bound_only = false;  // set when not contravariantly finite
  int corpus_letter_bound = 0;    // word corpus bound behind a lower bound
  bool operator==(const FindimReport&) const = default;
};
FindimReport findim_report(const Presentation& a, int bound = -1, int corpus_letters = 8);

// Factorization audit: every map into the simple from a finite-projective-
// dimension word with at most `letter_bound` letters must factor through the
// anchor projection of a large enough window of the characteristic module.
struct FactorizationReport {
  int letter_bound = 0;
  unsigned seed = 0;
  int words_checked = 0;
  int maps_checked = 0;
  int failures = 0;
  std::vector<Word> failed_words;
  int window_left = 0;  // window letters per side that settled the audit
  int window_right = 0;
  bool phantom_finite = false;
};
FactorizationReport effectiveness_check(const Presentation& a, const PhantomResult& ph,
                                        int letter_bound, unsigned seed);

// A zig-zag certificate that the simple at e_1 has no approximation by
// modules of finite projective dimension: distinct vertices e_1..e_m with
// two descending branches p_i, q_i at each, whose alternating words of every
// repetition depth embed into members of the class, while the class-wide
// implication p_i a = q_{i+1} b != 0  =>  p_{i+1} b != 0 holds.
struct CriterionWitness {
  std::vector<int> vertices;
  std::vector<Path> ps, qs;
  int verified_bound = 0;
  bool operator==(const CriterionWitness&) const = default;
};
std::optional<CriterionWitness> failure_witness_search(const Presentation& a, int vertex,
                                                       int bound);

}  // namespace qh
