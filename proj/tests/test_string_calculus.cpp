#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>

#include "quiverhom/string_calculus.hpp"

using namespace qh;

static Presentation load(const std::string& stem) {
  return parse_presentation_file(std::string(QH_ALGEBRA_DIR) + "/" + stem + ".alg");
}

static Path pp(const Presentation& a, const std::string& t) { return parse_path(a, t); }

TEST_CASE("applicability gate") {
  CHECK(string_calculus_applicable(load("gp22")));
  CHECK(string_calculus_applicable(load("a3_linear")));
  CHECK(string_calculus_applicable(load("string12")));
  // Violates the two-entering-arrows bound but satisfies everything the word
  // machinery actually uses.
  CHECK(string_calculus_applicable(load("string17")));
  // An arrow with two alive compositions behind it.
  CHECK_FALSE(string_calculus_applicable(load("serial14")));
  // Not monomial.
  CHECK_FALSE(string_calculus_applicable(load("biserial10")));
  CHECK_THROWS_AS(require_string_calculus(load("serial14")), DomainError);
}

TEST_CASE("word parsing, validation and round trip") {
  auto a = load("gp22");
  auto w = parse_word(a, "alpha~ beta");
  CHECK(w.letters.size() == 2);
  CHECK(w.letters[0].inverse);
  CHECK_FALSE(w.letters[1].inverse);
  CHECK(word_to_string(a, w) == "alpha~ beta");

  auto triv = parse_word(a, "e");
  CHECK(triv.trivial());
  CHECK(word_to_string(a, triv) == "e");

  // Peak with the same arrow on both sides.
  CHECK_THROWS_AS((void)parse_word(a, "alpha~ alpha"), DomainError);
  CHECK_THROWS_AS((void)validate_word(a, Word{a.vertex_index("e"),
                                              {Letter{0, true}, Letter{0, false}}}),
                  DomainError);
  // Unknown arrow names are a parse error.
  CHECK_THROWS_AS((void)parse_word(a, "gamma"), ParseError);
  // Two composed direct letters form a dead run under J^2 = 0.
  CHECK_FALSE(word_is_valid(a, Word{a.vertex_index("e"),
                                    {Letter{0, false}, Letter{1, false}}}));
}

TEST_CASE("node vertices, runs, peaks and valleys on a long word") {
  auto a = load("string12");
  auto w = parse_word(a, "a6_3~ a7_6~ a7_9 a8_9~ a8_6 a6_2 a1_2~ a1_3 a6_3~ a6_2 a1_2~");
  auto vs = word_node_vertices(a, w);
  std::vector<std::string> names;
  for (int v : vs) names.push_back(a.vertex_names[v]);
  CHECK(names == std::vector<std::string>{"v3", "v6", "v7", "v9", "v8", "v6",
                                          "v2", "v1", "v3", "v6", "v2", "v1"});

  auto runs = word_runs(a, w);
  REQUIRE(runs.size() == 9);
  CHECK_FALSE(runs[0].descending);
  CHECK(path_to_string(a, runs[0].path) == "a6_3*a7_6");
  CHECK(runs[0].first_node == 0);
  CHECK(runs[0].last_node == 2);
  CHECK(runs[3].descending);
  CHECK(path_to_string(a, runs[3].path) == "a6_2*a8_6");
  CHECK(runs[3].first_node == 4);
  CHECK(runs[3].last_node == 6);

  CHECK(peak_nodes(w) == std::vector<int>{2, 4, 7, 9, 11});
  CHECK(valley_nodes(w) == std::vector<int>{0, 3, 6, 8, 10});

  auto g = word_graph(a, w);
  std::vector<int> depths;
  for (const auto& n : g.nodes) depths.push_back(n.depth);
  CHECK(depths == std::vector<int>{2, 1, 0, 1, 0, 1, 2, 0, 1, 0, 1, 0});
  // Inverse letters have their upper end on the right.
  CHECK(g.edges[0].upper == 1);
  CHECK(g.edges[0].lower == 0);
  CHECK(g.edges[2].upper == 2);
  CHECK(g.edges[2].lower == 3);
}

TEST_CASE("maximal alive extensions") {
  auto a = load("string12");
  CHECK(path_to_string(a, max_extension(a, pp(a, "a8_6"))) == "a2_4*a6_2");
  CHECK(path_to_string(a, max_extension(a, pp(a, "a7_6"))) == "a6_3");
  CHECK(max_extension(a, pp(a, "a8_9")).trivial());
  CHECK(path_to_string(a, max_extension(a, pp(a, "a7_9"))) == "a9_10");
  CHECK(path_to_string(a, max_extension(a, pp(a, "a1_2"))) == "a2_11");
  CHECK(path_to_string(a, max_extension(a, pp(a, "a6_2"))) == "a2_4");
  CHECK(max_extension(a, pp(a, "a6_3*a7_6")).trivial());
  CHECK(path_to_string(a, max_extension(a, pp(a, "a6_2*a8_6"))) == "a2_4");

  auto h = load("string17");
  CHECK(path_to_string(h, max_extension(h, pp(h, "a13_9"))) == "l5*a9_5");
  CHECK(path_to_string(h, max_extension(h, pp(h, "a10_6"))) == "l2*a6_2");
  CHECK(path_to_string(h, max_extension(h, pp(h, "a16_9"))) == "a9_11");
  CHECK(max_extension(h, pp(h, "a13_15")).trivial());
  CHECK(path_to_string(h, max_extension(h, pp(h, "a14_6"))) == "a6_8");
}

TEST_CASE("single-peak, projective and descending words") {
  auto a = load("string12");
  auto w = single_peak_word(a, a.vertex_index("v6"), pp(a, "a6_3"), pp(a, "a2_4*a6_2"));
  CHECK(word_to_string(a, w) == "a6_3~ a6_2 a2_4");
  CHECK(w.base == a.vertex_index("v3"));

  CHECK(word_to_string(a, projective_word(a, a.vertex_index("v9"))) == "a9_10");
  CHECK(word_to_string(a, projective_word(a, a.vertex_index("v1"))) ==
        "a2_11~ a1_2~ a1_3 a3_12");
  CHECK(word_to_string(a, projective_word(a, a.vertex_index("v6"))) ==
        "a2_4~ a6_2~ a6_3 a3_5");
  CHECK(projective_word(a, a.vertex_index("v10")) ==
        parse_word(a, "a10_10"));

  auto h = load("string17");
  CHECK(word_to_string(h, projective_word(h, h.vertex_index("v6"))) ==
        "l2~ a6_2~ a6_8");
  auto gp = load("gp22");
  CHECK(word_to_string(gp, projective_word(gp, 0)) == "alpha~ beta");

  CHECK(word_to_string(a, descending_word(a, pp(a, "a2_4*a6_2*a8_6"))) ==
        "a8_6 a6_2 a2_4");
  CHECK_THROWS_AS((void)descending_word(a, pp(a, "a2_4*a1_2")), DomainError);
}

TEST_CASE("reverse and canonical form") {
  auto a = load("string12");
  auto w = parse_word(a, "a6_3~ a6_2 a2_4");
  auto r = reverse_word(a, w);
  CHECK(word_to_string(a, r) == "a2_4~ a6_2~ a6_3");
  CHECK(r.base == a.vertex_index("v4"));
  CHECK(reverse_word(a, r) == w);
  CHECK(canonical_word(a, w) == canonical_word(a, r));
}

TEST_CASE("two-sided words and windows") {
  auto a = load("string12");
  GeneralizedString g;
  g.anchor = a.vertex_index("v1");
  auto mk = [&](const char* name, bool inv) {
    return Letter{a.arrow_index(name), inv};
  };
  // Left side terminates after seven letters; right side is purely periodic.
  g.left.preperiod = {mk("a1_2", true), mk("a6_2", false), mk("a8_6", false),
                      mk("a8_9", true), mk("a7_9", false), mk("a7_6", true),
                      mk("a6_3", true)};
  g.right.period = {mk("a1_3", false), mk("a6_3", true), mk("a6_2", false),
                    mk("a1_2", true)};
  CHECK_FALSE(g.finite());
  CHECK(ray_length(g.left) == 7);
  CHECK(ray_length(g.right) == -1);

  auto win = window(a, g, 7, 4);
  CHECK(win.anchor_node == 7);
  CHECK(word_to_string(a, win.word) ==
        "a6_3~ a7_6~ a7_9 a8_9~ a8_6 a6_2 a1_2~ a1_3 a6_3~ a6_2 a1_2~");
  CHECK(word_node_vertices(a, win.word)[win.anchor_node] == g.anchor);

  // The left count clamps at the terminated length; the period repeats.
  auto wide = window(a, g, 99, 8);
  CHECK(wide.anchor_node == 7);
  CHECK(wide.word.letters.size() == 15);
  CHECK(g.right.at(4) == g.right.at(0));
  CHECK(g.right.at(7) == g.right.at(3));

  auto zero = window(a, g, 0, 0);
  CHECK(zero.word.trivial());
  CHECK(zero.word.base == g.anchor);

  GeneralizedString fin;
  fin.anchor = a.vertex_index("v6");
  fin.left.preperiod = {mk("a6_3", true)};
  fin.right.preperiod = {mk("a6_2", false), mk("a2_4", false)};
  CHECK(fin.finite());
  CHECK(full_word(a, fin) == parse_word(a, "a6_3~ a6_2 a2_4"));
}

TEST_CASE("cyclic words: validity, primitivity, canonical forms") {
  auto gp = load("gp22");
  CyclicWord band{0, {Letter{0, true}, Letter{1, false}}};
  CHECK(cyclic_word_is_valid(gp, band));
  CHECK(cyclic_word_primitive(band));
  // Same arrow on both sides of a junction.
  CHECK_FALSE(cyclic_word_is_valid(gp, CyclicWord{0, {Letter{0, true}, Letter{0, false}}}));
  // One-directional cycle.
  CHECK_FALSE(cyclic_word_is_valid(gp, CyclicWord{0, {Letter{0, false}, Letter{1, false}}}));
  // A proper power is valid but not primitive.
  CyclicWord sq{0, {Letter{0, true}, Letter{1, false}, Letter{0, true}, Letter{1, false}}};
  CHECK(cyclic_word_is_valid(gp, sq));
  CHECK_FALSE(cyclic_word_primitive(sq));

  auto one = enumerate_cyclic_words(gp, 4);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == canonical_cyclic_word(gp, band));
  CHECK(cyclic_word_to_string(gp, one[0]).find("@e") != std::string::npos);

  auto a = load("string12");
  CyclicWord fb{a.vertex_index("v1"),
                {Letter{a.arrow_index("a1_3"), false}, Letter{a.arrow_index("a6_3"), true},
                 Letter{a.arrow_index("a6_2"), false}, Letter{a.arrow_index("a1_2"), true}}};
  CHECK(cyclic_word_is_valid(a, fb));
  // Rotations and the reversal all canonicalize to the same class.
  CyclicWord rot{a.vertex_index("v3"),
                 {Letter{a.arrow_index("a6_3"), true}, Letter{a.arrow_index("a6_2"), false},
                  Letter{a.arrow_index("a1_2"), true}, Letter{a.arrow_index("a1_3"), false}}};
  CHECK(canonical_cyclic_word(a, rot) == canonical_cyclic_word(a, fb));

  auto bands = enumerate_cyclic_words(a, 4);
  bool found = false;
  for (const auto& b : bands) {
    CHECK(cyclic_word_is_valid(a, b));
    CHECK(cyclic_word_primitive(b));
    CHECK(b == canonical_cyclic_word(a, b));
    if (b == canonical_cyclic_word(a, fb)) found = true;
  }
  CHECK(found);

  // No bands over a linear quiver.
  CHECK(enumerate_cyclic_words(load("a3_linear"), 6).empty());
}
