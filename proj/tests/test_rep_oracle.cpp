#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>

#include "quiverhom/rep_oracle.hpp"

using namespace qh;

static Presentation load(const std::string& stem) {
  return parse_presentation_file(std::string(QH_ALGEBRA_DIR) + "/" + stem + ".alg");
}

static const Fp F{101};

TEST_CASE("realizers produce genuine modules") {
  for (const char* stem : {"gp22", "a3_linear", "string12", "string17"}) {
    auto a = load(stem);
    for (int v = 0; v < a.num_vertices(); ++v) {
      CHECK(module_satisfies_relations(a, realize_simple(F, a, v)));
      CHECK(module_satisfies_relations(a, realize_projective(F, a, v)));
      CHECK(module_satisfies_relations(a, realize_word(F, a, projective_word(a, v))));
    }
  }
  auto e = load("serial14");
  auto g = load("biserial10");
  for (int v = 0; v < e.num_vertices(); ++v)
    CHECK(module_satisfies_relations(e, realize_projective(F, e, v)));
  for (int v = 0; v < g.num_vertices(); ++v) {
    CHECK(module_satisfies_relations(g, realize_projective(F, g, v)));
    CHECK(module_satisfies_relations(g, realize_projective(QQ{}, g, v)));
  }
}

TEST_CASE("projective dimensions of the regular module add up") {
  for (const char* stem :
       {"gp22", "a3_linear", "string12", "string17", "serial14", "biserial10"}) {
    auto a = load(stem);
    int total = 0;
    for (int v = 0; v < a.num_vertices(); ++v)
      total += realize_projective(F, a, v).total_dim();
    CHECK(total == a.dimension());
  }
}

TEST_CASE("word modules and projectives agree where both apply") {
  for (const char* stem : {"gp22", "a3_linear", "string12", "string17"}) {
    auto a = load(stem);
    for (int v = 0; v < a.num_vertices(); ++v) {
      auto via_word = realize_word(F, a, projective_word(a, v));
      auto via_paths = realize_projective(F, a, v);
      CHECK(via_word.dim == via_paths.dim);
      CHECK(is_isomorphic(a, via_word, via_paths));
    }
  }
}

TEST_CASE("tops of a word module sit at its peaks") {
  auto a = load("string12");
  auto w = parse_word(a, "a6_3~ a7_6~ a7_9 a8_9~ a8_6 a6_2 a1_2~ a1_3 a6_3~ a6_2 a1_2~");
  auto m = realize_word(F, a, w);
  auto vs = word_node_vertices(a, w);
  std::vector<int> expected(a.num_vertices(), 0);
  for (int n : peak_nodes(w)) expected[vs[n]]++;
  CHECK(top_multiplicities(a, m) == expected);
  CHECK(m.total_dim() == 12);
  CHECK(m.dim[a.vertex_index("v1")] == 2);
  CHECK(m.dim[a.vertex_index("v6")] == 3);

  // A word and its reverse describe the same module.
  CHECK(is_isomorphic(a, m, realize_word(F, a, reverse_word(a, w))));
}

TEST_CASE("path modules") {
  auto a = load("string12");
  auto m = realize_path_module(F, a, parse_path(a, "a1_2"));
  CHECK(m.total_dim() == 2);
  CHECK(m.dim[a.vertex_index("v2")] == 1);
  CHECK(m.dim[a.vertex_index("v11")] == 1);
  CHECK(module_satisfies_relations(a, m));

  // Over the left-serial fixture this path generates a full projective.
  auto e = load("serial14");
  auto pm = realize_path_module(F, e, parse_path(e, "a4_12"));
  CHECK(is_isomorphic(e, pm, realize_projective(F, e, e.vertex_index("v12"))));

  CHECK_THROWS_AS((void)realize_path_module(F, a, parse_path(a, "a2_4*a1_2")), DomainError);
  CHECK_THROWS_AS((void)realize_path_module(F, load("biserial10"), Path{0, {0}}), DomainError);
}

TEST_CASE("projective covers and syzygies") {
  auto a = load("string12");

  auto s1 = cover_and_syzygy(a, realize_simple(F, a, a.vertex_index("v1")));
  CHECK(s1.tops == std::vector<int>{a.vertex_index("v1")});
  CHECK(s1.cover.total_dim() == 5);
  CHECK(s1.syzygy.total_dim() == 4);
  auto rad = direct_sum(a, realize_path_module(F, a, parse_path(a, "a1_2")),
                        realize_path_module(F, a, parse_path(a, "a1_3")));
  CHECK(is_isomorphic(a, s1.syzygy, rad));
  CHECK(module_satisfies_relations(a, s1.syzygy));

  // The loop vertex reproduces itself forever.
  auto s4 = cover_and_syzygy(a, realize_simple(F, a, a.vertex_index("v4")));
  CHECK(is_isomorphic(a, s4.syzygy, realize_simple(F, a, a.vertex_index("v4"))));

  // Projectives have no syzygy.
  auto s9 = cover_and_syzygy(a, realize_projective(F, a, a.vertex_index("v9")));
  CHECK(s9.syzygy.total_dim() == 0);

  // The two-slope peak word at v6 with slopes a6_3 and a2_4*a6_2 misses the
  // deep end of the right branch of the projective; the kernel is S_5.
  auto glue = realize_word(F, a, parse_word(a, "a6_3~ a6_2 a2_4"));
  auto sg = cover_and_syzygy(a, glue);
  CHECK(sg.tops == std::vector<int>{a.vertex_index("v6")});
  CHECK(is_isomorphic(a, sg.syzygy, realize_simple(F, a, a.vertex_index("v5"))));

  // Left-serial chain: a length-3 radical layer quotient at v3 has syzygy
  // S_13, whose own syzygy is the projective at v14.
  auto e = load("serial14");
  auto u = realize_truncated_projective(F, e, e.vertex_index("v3"), 3);
  CHECK(u.total_dim() == 3);
  auto su = cover_and_syzygy(e, u);
  CHECK(is_isomorphic(e, su.syzygy, realize_simple(F, e, e.vertex_index("v13"))));
  auto s13 = cover_and_syzygy(e, su.syzygy);
  CHECK(is_isomorphic(e, s13.syzygy, realize_projective(F, e, e.vertex_index("v14"))));
}

TEST_CASE("hom spaces") {
  auto a = load("string12");
  auto p1 = realize_projective(F, a, a.vertex_index("v1"));
  auto simple1 = realize_simple(F, a, a.vertex_index("v1"));
  CHECK(hom_dim(a, p1, p1) == 1);
  CHECK(hom_dim(a, p1, simple1) == 1);
  CHECK(hom_dim(a, simple1, p1) == 0);
  CHECK(is_module_map(a, p1, p1, identity_map(a, p1)));

  for (const auto& h : hom_basis(a, p1, simple1))
    CHECK(is_module_map(a, p1, simple1, h));
}

TEST_CASE("homs factoring through a cover") {
  auto a = load("string12");
  auto glue = realize_word(F, a, parse_word(a, "a6_3~ a6_2 a2_4"));
  auto cov = cover_and_syzygy(a, glue);
  auto s4 = realize_simple(F, a, a.vertex_index("v4"));
  CHECK(hom_dim(a, s4, glue) == 1);
  // Socle maps lift through the projective cover.
  CHECK(all_homs_factor_through(a, s4, cov.cover, glue, cov.map));

  // Nothing factors through the zero module.
  auto s5 = realize_simple(F, a, a.vertex_index("v5"));
  auto zero = zero_module(F, a);
  ModuleMap<Fp> zmap;
  for (int v = 0; v < a.num_vertices(); ++v) zmap.blocks.push_back(Mat<Fp>(F, s5.dim[v], 0));
  CHECK_FALSE(all_homs_factor_through(a, s5, zero, s5, zmap));
}

TEST_CASE("band modules separate parameters") {
  auto gp = load("gp22");
  CyclicWord band{0, {Letter{0, true}, Letter{1, false}}};
  Mat<Fp> c2(F, 1, 1), c3(F, 1, 1);
  c2.at(0, 0) = 2;
  c3.at(0, 0) = 3;
  auto m2 = realize_band(F, gp, band, c2);
  auto m3 = realize_band(F, gp, band, c3);
  CHECK(m2.total_dim() == 2);
  CHECK(module_satisfies_relations(gp, m2));
  CHECK(hom_dim(gp, m2, m2) == 2);
  CHECK(is_isomorphic(gp, m2, realize_band(F, gp, band, c2)));
  CHECK_FALSE(is_isomorphic(gp, m2, m3));

  auto a = load("string12");
  CyclicWord fb{a.vertex_index("v1"),
                {Letter{a.arrow_index("a1_3"), false}, Letter{a.arrow_index("a6_3"), true},
                 Letter{a.arrow_index("a6_2"), false}, Letter{a.arrow_index("a1_2"), true}}};
  auto mb = realize_band(F, a, fb, c2);
  CHECK(mb.total_dim() == 4);
  CHECK(module_satisfies_relations(a, mb));
  // A band module has no simple top concentration: two peaks, two tops.
  auto tops = top_multiplicities(a, mb);
  int total_tops = 0;
  for (int t : tops) total_tops += t;
  CHECK(total_tops == 2);
}

TEST_CASE("truncated projectives") {
  auto e = load("serial14");
  CHECK(is_isomorphic(e, realize_truncated_projective(F, e, e.vertex_index("v1"), 1),
                      realize_simple(F, e, e.vertex_index("v1"))));
  CHECK(realize_truncated_projective(F, e, e.vertex_index("v1"), 2).total_dim() == 2);
  CHECK(is_isomorphic(e, realize_truncated_projective(F, e, e.vertex_index("v2"), 10),
                      realize_projective(F, e, e.vertex_index("v2"))));
  for (int v = 0; v < e.num_vertices(); ++v)
    CHECK(module_satisfies_relations(e, realize_truncated_projective(F, e, v, 2)));
}
