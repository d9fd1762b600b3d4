#include <siegel/pseudorep.hpp>

#include <gtest/gtest.h>

#include <set>

namespace {

using namespace siegel;

std::vector<ExampleRep> all_examples() {
  std::vector<ExampleRep> out;
  for (std::uint64_t q : {5u, 7u, 11u}) {
    out.push_back(cyclic2_example(q));
    out.push_back(symmetric3_example(q));
    out.push_back(dihedral4_example(q));
  }
  return out;
}

std::size_t element_order(const FiniteGroupTable& G, std::size_t g) {
  std::size_t k = 1, h = g;
  while (h != G.identity()) {
    h = G.mul(h, g);
    ++k;
  }
  return k;
}

bool has_axiom(const std::vector<Violation>& vs, const std::string& axiom) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.axiom == axiom; });
}

TEST(Examples, GroupOrders) {
  EXPECT_EQ(cyclic2_example(5).group.order(), 2u);
  EXPECT_EQ(symmetric3_example(7).group.order(), 6u);
  EXPECT_EQ(dihedral4_example(11).group.order(), 8u);
}

TEST(Axioms, ExamplesSatisfyAll) {
  for (const auto& ex : all_examples()) {
    const PseudoRep tau = from_odd_rep(ex.group, ex.rho, ex.modulus);
    const auto v = check_axioms(tau, ex.group);
    EXPECT_TRUE(v.empty()) << ex.name << " mod " << ex.modulus << ": " << (v.empty() ? "" : v[0].axiom);
  }
}

TEST(Axioms, CyclicTwoValues) {
  const auto ex = cyclic2_example(5);
  const PseudoRep tau = from_odd_rep(ex.group, ex.rho, 5);
  const std::size_t one = ex.group.identity(), c = ex.group.c();
  EXPECT_EQ(tau.a[one], 2u);
  EXPECT_EQ(tau.d[one], 2u);
  EXPECT_EQ(tau.t[one], 2u);
  EXPECT_EQ(tau.t[c], 0u);
  for (const auto& row : tau.x)
    for (auto v : row) EXPECT_EQ(v, 0u);
}

TEST(Axioms, SymmetricThreeCharacter) {
  const auto ex = symmetric3_example(7);
  const PseudoRep tau = from_odd_rep(ex.group, ex.rho, 7);
  for (std::size_t g = 0; g < ex.group.order(); ++g) {
    const std::size_t ord = element_order(ex.group, g);
    const std::uint64_t expect = ord == 1 ? 2 : ord == 2 ? 0 : 6;  // 2, 0, -1
    EXPECT_EQ(tau.t[g], expect) << "order " << ord;
  }
}

TEST(Axioms, PerturbedTraceIsCaught) {
  const auto ex = cyclic2_example(5);
  PseudoRep tau = from_odd_rep(ex.group, ex.rho, 5);
  tau.t[ex.group.c()] = 1;
  EXPECT_TRUE(has_axiom(check_axioms(tau, ex.group), "iii.tc"));

  const auto s3 = symmetric3_example(7);
  PseudoRep bad = from_odd_rep(s3.group, s3.rho, 7);
  bad.t[s3.group.c()] = 1;
  const auto v = check_axioms(bad, s3.group);
  EXPECT_TRUE(has_axiom(v, "iii.tc"));
  EXPECT_TRUE(has_axiom(v, "ii.a") || has_axiom(v, "ii.d"));
}

TEST(Axioms, PerturbedXIsCaught) {
  const auto ex = symmetric3_example(11);
  PseudoRep tau = from_odd_rep(ex.group, ex.rho, 11);
  std::size_t g = 0;
  while (g == ex.group.identity() || g == ex.group.c()) ++g;
  tau.x[g][g] = addmod(tau.x[g][g], 1, 11);
  EXPECT_TRUE(has_axiom(check_axioms(tau, ex.group), "i.a") || has_axiom(check_axioms(tau, ex.group), "i.d"));
}

TEST(Axioms, QuarticCapSkipsIv) {
  const auto ex = dihedral4_example(5);
  PseudoRep tau = from_odd_rep(ex.group, ex.rho, 5);
  std::size_t g = 0;
  while (g == ex.group.identity() || g == ex.group.c()) ++g;
  tau.x[g][g] = addmod(tau.x[g][g], 1, 5);
  const auto full = check_axioms(tau, ex.group, 16);
  const auto capped = check_axioms(tau, ex.group, 4);
  EXPECT_TRUE(has_axiom(full, "iv.a") || has_axiom(full, "iv.b"));
  EXPECT_FALSE(has_axiom(capped, "iv.a") || has_axiom(capped, "iv.b"));
}

TEST(Axioms, EvenModulusRejected) {
  const auto ex = cyclic2_example(5);
  PseudoRep tau = from_odd_rep(ex.group, ex.rho, 5);
  tau.modulus = 4;
  EXPECT_THROW((void)check_axioms(tau, ex.group), std::invalid_argument);
  EXPECT_THROW((void)reconstruct_from_trace(tau.t, ex.group, 8), std::invalid_argument);
  EXPECT_THROW((void)from_odd_rep(ex.group, ex.rho, 2), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST(FromOddRep, TraceAndDeterminant) {
  for (const auto& ex : all_examples()) {
    const std::uint64_t q = ex.modulus;
    const PseudoRep tau = from_odd_rep(ex.group, ex.rho, q);
    for (std::size_t g = 0; g < ex.group.order(); ++g) {
      EXPECT_EQ(tau.t[g], addmod(ex.rho[g][0], ex.rho[g][3], q));
      EXPECT_EQ(tau.det(g), mulmod(4, mat_det(ex.rho[g], q), q)) << ex.name;
      // the factor 4 is genuine: det(tau) = det(rho) would fail wherever det(rho) != 0
      EXPECT_NE(tau.det(g), mat_det(ex.rho[g], q));
    }
  }
}

TEST(FromOddRep, ConjugationByDiagonalKeepsTau) {
  for (const auto& ex : all_examples()) {
    const std::uint64_t q = ex.modulus;
    for (std::uint64_t u = 2; u < q; ++u) {
      const Mat2 D{1, 0, 0, u}, Dinv{1, 0, 0, invmod(u, q)};
      std::vector<Mat2> conj;
      for (const auto& m : ex.rho) conj.push_back(mat_mul(mat_mul(Dinv, m, q), D, q));
      const PseudoRep a = from_odd_rep(ex.group, ex.rho, q);
      const PseudoRep b = from_odd_rep(ex.group, conj, q);
      EXPECT_EQ(a.t, b.t);
      EXPECT_EQ(a, b);
    }
  }
}

TEST(FromOddRep, Errors) {
  const auto ex = symmetric3_example(7);
  auto swapped = ex.rho;
  std::size_t g = 0;
  while (g == ex.group.identity()) ++g;
  std::swap(swapped[g], swapped[ex.group.identity()]);
  EXPECT_THROW((void)from_odd_rep(ex.group, swapped, 7), std::invalid_argument);

  // the standard S_3 matrices without the change of basis: c is not diagonal
  const Mat2 r = mat_reduce({0, -1, 1, -1}, 7), s = mat_reduce({0, 1, 1, 0}, 7);
  const auto raw = FiniteGroupTable::from_matrices({r, s}, s, 7);
  EXPECT_THROW((void)from_odd_rep(raw, raw.matrices(), 7), std::invalid_argument);

  std::vector<Mat2> short_rho(ex.rho.begin(), ex.rho.begin() + 2);
  EXPECT_THROW((void)from_odd_rep(ex.group, short_rho, 7), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST(Reconstruct, ExamplesRoundTrip) {
  for (const auto& ex : all_examples()) {
    const PseudoRep tau = from_odd_rep(ex.group, ex.rho, ex.modulus);
    EXPECT_EQ(reconstruct_from_trace(tau.t, ex.group, ex.modulus), tau) << ex.name << " " << ex.modulus;
  }
}

TEST(Reconstruct, BadTraceIsFlagged) {
  const auto ex = symmetric3_example(5);
  auto t = from_odd_rep(ex.group, ex.rho, 5).t;
  t[ex.group.identity()] = 3;
  const auto v = check_axioms(reconstruct_from_trace(t, ex.group, 5), ex.group);
  EXPECT_TRUE(has_axiom(v, "iii.t1"));
}

TEST(Reconstruct, EveryMonomialGroupUpToTwelve) {
  // groups <g, diag(1,-1)> for every monomial g, kept when the order is <= 12
  int groups = 0;
  for (std::uint64_t q : {5u, 7u, 11u}) {
    const Mat2 c{1, 0, 0, q - 1};
    std::set<std::size_t> orders;
    for (bool anti : {false, true})
      for (std::uint64_t u = 1; u < q; ++u)
        for (std::uint64_t v = 1; v < q; ++v) {
          const Mat2 g = anti ? Mat2{0, u, v, 0} : Mat2{u, 0, 0, v};
          std::optional<FiniteGroupTable> G;
          try {
            G.emplace(FiniteGroupTable::from_matrices({g, c}, c, q, 12));
          } catch (const std::invalid_argument&) {
            continue;
          }
          const PseudoRep tau = from_odd_rep(*G, G->matrices(), q);
          EXPECT_TRUE(check_axioms(tau, *G).empty()) << q << " order " << G->order();
          EXPECT_EQ(reconstruct_from_trace(tau.t, *G, q), tau);
          orders.insert(G->order());
          ++groups;
        }
    EXPECT_GE(orders.size(), 3u) << q;
  }
  EXPECT_GE(groups, 50);
}

// ---------------------------------------------------------------------------

TEST(GroupTable, Validation) {
  // Z/2 = {0, 1} with c = 1
  EXPECT_NO_THROW(FiniteGroupTable({{0, 1}, {1, 0}}, 0, 1));
  EXPECT_THROW(FiniteGroupTable({{0, 1}, {1, 0}}, 0, 0), std::invalid_argument);  // c = 1
  EXPECT_THROW(FiniteGroupTable({{0, 1}, {1, 1}}, 0, 1), std::invalid_argument);  // c^2 != 1
  EXPECT_THROW(FiniteGroupTable({{0, 1}, {0, 0}}, 0, 1), std::invalid_argument);  // identity law
  // Z/4 with c = 1 has c^2 = 2 != 0
  std::vector<std::vector<std::size_t>> z4(4, std::vector<std::size_t>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) z4[i][j] = (i + j) % 4;
  EXPECT_THROW(FiniteGroupTable(z4, 0, 1), std::invalid_argument);
  EXPECT_NO_THROW(FiniteGroupTable(z4, 0, 2));
  // a commutative loop of order 5 that is not associative
  const std::vector<std::vector<std::size_t>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(FiniteGroupTable(loop, 0, 1), std::invalid_argument);
}

TEST(GroupTable, FromMatricesErrors) {
  const Mat2 c{1, 0, 0, 4};
  EXPECT_THROW((void)FiniteGroupTable::from_matrices({Mat2{1, 1, 0, 1}}, c, 5), std::invalid_argument);  // c not generated
  EXPECT_THROW((void)FiniteGroupTable::from_matrices({Mat2{1, 1, 0, 1}, c}, c, 5, 8), std::invalid_argument);  // order 10 > 8
}

}  // namespace
