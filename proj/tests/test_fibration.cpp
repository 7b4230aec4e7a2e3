#include "doctest.h"
#include "enriques/report.hpp"

using namespace enriques;

namespace {

const std::string kTables = std::string(ENRIQUES_DATA_DIR) + "/tables/";

std::vector<ConductrixTable> tables() {
  return {load_conductrix_table(kTables + "conductrix_elliptic.json"),
          load_conductrix_table(kTables + "conductrix_quasi_elliptic.json")};
}

// Oracle for A^2: expand the quadratic form directly from the Gram matrix.
long long gram_pairing(const ConductrixRecord& r) {
  const std::size_t n = r.nodes.size();
  std::vector<std::vector<long long>> g(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = -2;
  for (const auto& [a, b] : r.edges) g[a][b] = g[b][a] = 1;
  long long s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += r.nodes[i].multiplicity * g[i][j] * r.nodes[j].multiplicity;
  return s;
}

}  // namespace

TEST_SUITE("fibration") {
  TEST_CASE("affine diagrams translate to Kodaira fibers") {
    auto names = [](char fam, int idx) {
      DiagramClass t{DiagramKind::Affine, fam, idx, idx};
      std::string s;
      for (const auto& f : affine_to_fibers(t)) s += (s.empty() ? "" : "|") + f.name();
      return s;
    };
    CHECK(names('E', 8) == "II*");
    CHECK(names('E', 7) == "III*");
    CHECK(names('E', 6) == "IV*");
    CHECK(names('D', 8) == "I4*");
    CHECK(names('D', 4) == "I0*");
    CHECK(names('A', 1) == "I2|III");
    CHECK(names('A', 2) == "I3|IV");
    CHECK(names('A', 8) == "I9");
  }

  TEST_CASE("configuration parsing") {
    const FiberConfiguration c = parse_configuration("(2III*, III) qe");
    CHECK(c.kind == FibrationKind::QuasiElliptic);
    CHECK(c.rank() == 8);
    CHECK(c.double_count() == 1);
    CHECK(c.name() == "(2III*, III)");
    CHECK(parse_configuration("(2I0*, 4xIII)", FibrationKind::QuasiElliptic).fibers.size() == 5);
    CHECK(parse_configuration("quasi-elliptic (2II*)").kind == FibrationKind::QuasiElliptic);
    CHECK_THROWS_AS(parse_configuration("(I0**)"), FibrationError);
    CHECK(parse_fiber("2I4*").twice);
  }

  TEST_CASE("every listed fibration of every type is extremal") {
    const auto types = load_type_fibrations(kTables + "type_fibrations.json");
    CHECK(types.size() == 11);
    for (const auto& t : types)
      for (const auto& c : t.fibrations) {
        CAPTURE(t.type + " " + c.name());
        CHECK(c.rank() == 8);
        CHECK(is_extremal(c));
      }
  }

  TEST_CASE("non-extremal configurations") {
    CHECK_FALSE(is_extremal(parse_configuration("(I2*)", FibrationKind::Elliptic)));
    CHECK_FALSE(is_extremal(parse_configuration("(I0*)", FibrationKind::Elliptic)));
    CHECK_FALSE(is_extremal(parse_configuration("(I8, I1, I1, I1, I1)", FibrationKind::Elliptic)));
    CHECK_FALSE(is_extremal(parse_configuration("(II*, I1, I1)", FibrationKind::Elliptic)));
    CHECK(is_extremal(parse_configuration("(II*, I1)", FibrationKind::Elliptic)));
    for (const auto& c : quasi_elliptic_list()) CHECK(is_extremal(c));
  }

  TEST_CASE("conductrix self-pairing is -2 for every nonempty row") {
    int nonempty = 0;
    for (const auto& t : tables())
      for (const auto& r : t.rows) {
        if (r.empty()) continue;
        ++nonempty;
        CAPTURE(r.config.name());
        CHECK(r.self_pairing() == -2);
        CHECK(gram_pairing(r) == -2);
      }
    CHECK(nonempty >= 20);
  }

  TEST_CASE("conductrix lookups return the table rows") {
    const auto t = tables();
    const auto& i4 = conductrix_lookup(t, parse_configuration("(I4*)", FibrationKind::Elliptic));
    REQUIRE(i4.nodes.size() == 5);
    std::vector<int> m, s;
    for (const auto& n : i4.nodes) m.push_back(n.multiplicity), s.push_back(n.cover_selfint);
    CHECK(m == std::vector<int>{1, 1, 1, 1, 1});
    CHECK(s == std::vector<int>{-4, -2, -2, -2, -4});
    CHECK(i4.singularities == "4A1");

    const auto& e = conductrix_lookup(t, parse_configuration("(2III, I8)", FibrationKind::Elliptic));
    CHECK(e.empty());
    CHECK(e.singularities == "12A1");

    const auto& q = conductrix_lookup(t, parse_configuration("quasi-elliptic (2II*)"));
    std::vector<int> qm;
    for (const auto& n : q.nodes) qm.push_back(n.multiplicity);
    CHECK(qm == std::vector<int>{2, 3, 5, 4, 4, 3, 3, 2, 1, 2});
    CHECK(q.singularities == "4A1 or D4");
    CHECK(q.nodes[q.cusp].multiplicity == 1);

    // double flags matter for lookups
    CHECK_THROWS_AS(conductrix_lookup(t, parse_configuration("(2I4*)", FibrationKind::Elliptic)), FibrationError);
  }

  TEST_CASE("blow-up table for rational curves") {
    const std::vector<BlowupRow> want{
        {"", 0, 0, 1, 1, -1, 0}, {"", 0, 0, 2, -1, -4, 0}, {"", 1, 1, 2, -2, -6, 0},
        {"", 2, 1, 1, 0, -2, 0}, {"", 4, 1, 1, -1, -3, 0}, {"", 6, 1, 1, -2, -4, 0},
    };
    CHECK(enumerate_blowup_rows(0) == want);
  }

  TEST_CASE("blow-up table for curves of arithmetic genus one") {
    const std::vector<BlowupRow> want{
        {"sm", 0, 0, 1, 0, 0, 1}, {"sm", 0, 0, 2, 0, 0, 1}, {"n", 1, 2, 1, 0, -2, 0},
        {"c", 0, 0, 1, 0, 0, 1},  {"c", 0, 0, 1, 2, 0, 0},  {"c", 0, 0, 2, 0, 0, 1},
        {"c", 1, 2, 1, 0, -2, 0}, {"c", 2, 1, 1, 1, -1, 0}, {"c", 4, 1, 1, 0, -2, 0},
    };
    CHECK(enumerate_blowup_rows(1) == want);
  }

  TEST_CASE("blow-up rows satisfy the self-intersection and genus formulas") {
    for (int pa = 0; pa <= 1; ++pa)
      for (const auto& r : enumerate_blowup_rows(pa, -3)) {
        const int C2 = pa == 0 ? -2 : 0;
        const int m = r.m ? r.m : 1;
        CHECK(2 * r.Ctilde2 == (C2 - m * m * r.r) * r.s * r.s);
        CHECK(2 * r.pa_tilde - 2 == r.Ctilde2 - r.s * r.AC);
      }
    CHECK_THROWS_AS(enumerate_blowup_rows(2), FibrationError);
  }

  TEST_CASE("classical versus supersingular from double fibers") {
    const FiberConfiguration qe = parse_configuration("(2I0*, 2I0*) qe");
    CHECK(singular_vs_supersingular(qe, 2).verdict == CoverVerdict::Classical);
    CHECK(singular_vs_supersingular(qe, 2).singularities == "4A1");
    const FiberConfiguration one = parse_configuration("(2II*) qe");
    CHECK(singular_vs_supersingular(one, 1).verdict == CoverVerdict::Supersingular);
    CHECK(singular_vs_supersingular(qe, 1).verdict == CoverVerdict::Inconsistent);
    CHECK(singular_vs_supersingular(parse_configuration("(I4*) elliptic"), 1).verdict == CoverVerdict::Inconsistent);
  }
}
