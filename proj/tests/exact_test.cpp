#include "support.hpp"

#include <siegel/exact/factor.hpp>
#include <siegel/exact/fp_poly.hpp>
#include <siegel/exact/number_field.hpp>

#include <gtest/gtest.h>

#include <set>

namespace {

using namespace siegel;
using namespace siegel::testing;

RatPoly ipoly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return RatPoly(std::move(v));
}

// ---------------------------------------------------------------------------
// resultants and discriminants

TEST(Resultant, LinearFactorsGiveDifference) {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const Rational a = rand_rational(rng), b = rand_rational(rng);
    EXPECT_EQ(resultant(RatPoly{-a, Rational(1)}, RatPoly{-b, Rational(1)}), a - b);
  }
}

TEST(Discriminant, QuadraticFormula) {
  EXPECT_EQ(discriminant(ipoly({1, 0, 1})), -4);
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const Rational b = rand_rational(rng), c = rand_rational(rng);
    EXPECT_EQ(discriminant(RatPoly{c, b, Rational(1)}), b * b - 4 * c);
  }
}

Rational cubic_formula(const RatPoly& f) {
  const Rational a = f.coeff(3), b = f.coeff(2), c = f.coeff(1), d = f.coeff(0);
  return 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c - 27 * a * a * d * d;
}

TEST(Discriminant, CubicAgreesWithClosedForm) {
  const RatPoly f = ipoly({-59412960, -294086, -1, 1});
  EXPECT_EQ(discriminant(f), cubic_formula(f));
  EXPECT_EQ(discriminant(f), Rational(Integer("6116249910010500")));
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const RatPoly g = rand_poly(rng, 3) * rand_rational(rng, 5, 3);
    if (g.degree() != 3) continue;
    EXPECT_EQ(discriminant(g), cubic_formula(g));
  }
}

TEST(Discriminant, ProductFormula) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const RatPoly f = rand_poly(rng, static_cast<int>(uniform(rng, 1, 4)));
    const RatPoly g = rand_poly(rng, static_cast<int>(uniform(rng, 1, 4)));
    const Rational res = resultant(f, g);
    EXPECT_EQ(discriminant(f * g), discriminant(f) * discriminant(g) * res * res);
  }
}

TEST(Discriminant, RepeatedRootIsZero) {
  EXPECT_EQ(discriminant(ipoly({1, 2, 1})), 0);
  EXPECT_THROW((void)discriminant(RatPoly{}), std::domain_error);
}

// ---------------------------------------------------------------------------
// factorization over F_ell

FpPoly product(const std::vector<FpFactor>& fs, std::uint64_t p) {
  FpPoly acc = FpPoly::constant(p, 1);
  for (const auto& f : fs)
    for (unsigned e = 0; e < f.exponent; ++e) acc = acc * f.factor;
  return acc;
}

/// Irreducibility by exhaustive search for factors of degree <= deg/2.
bool brute_irreducible(const FpPoly& f) {
  const std::uint64_t p = f.modulus();
  const int n = f.degree();
  for (int d = 1; d <= n / 2; ++d) {
    std::vector<FpPoly::Coeff> c(static_cast<std::size_t>(d) + 1, 0);
    c[static_cast<std::size_t>(d)] = 1;
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t r = idx;
      for (int i = 0; i < d; ++i) {
        c[static_cast<std::size_t>(i)] = r % p;
        r /= p;
      }
      if ((f % FpPoly(p, c)).is_zero()) return false;
    }
  }
  return true;
}

TEST(FactorMod, SmallExamples) {
  const auto f5 = factor_mod(ipoly({1, 0, 1}), 5);
  ASSERT_EQ(f5.size(), 2u);
  EXPECT_EQ(f5[0].factor, FpPoly(5, {2, 1}));  // x - 3
  EXPECT_EQ(f5[1].factor, FpPoly(5, {3, 1}));  // x - 2
  EXPECT_EQ(factor_mod(ipoly({1, 0, 1}), 7).size(), 1u);
  const auto cubic = factor_mod(ipoly({-59412960, -294086, -1, 1}), 59);
  ASSERT_EQ(cubic.size(), 1u);
  EXPECT_EQ(cubic[0].factor.degree(), 3);
}

TEST(FactorMod, Errors) {
  EXPECT_THROW((void)factor_mod(RatPoly{Rational(1, 7), Rational(1)}, 7), std::domain_error);
  EXPECT_THROW((void)factor_mod(ipoly({7, 14}), 7), std::domain_error);
}

TEST(FactorMod, ReassemblesAndFactorsAreIrreducible) {
  Rng rng(5);
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (int i = 0; i < 40; ++i) {
      const int n = static_cast<int>(uniform(rng, 1, 7));
      std::vector<FpPoly::Coeff> c;
      for (int j = 0; j < n; ++j) c.push_back(rng() % p);
      c.push_back(1);
      FpPoly f(p, c);
      if (i % 4 == 0) f = f * f;  // exercise repeated factors
      const auto fs = factor_mod(f, rng());
      EXPECT_EQ(product(fs, p), f);
      std::set<std::vector<FpPoly::Coeff>> seen;
      for (const auto& g : fs) {
        EXPECT_TRUE(seen.insert(g.factor.coeffs()).second);
        EXPECT_EQ(g.factor.leading(), 1u);
        if (g.factor.degree() <= 4 && p <= 7) {
          EXPECT_TRUE(brute_irreducible(g.factor));
        }
      }
    }
  }
}

TEST(FactorMod, DeterministicUnderSeed) {
  const RatPoly f = ipoly({-59412960, -294086, -1, 1}) * ipoly({3, 1, 1});
  for (std::uint64_t ell : {61u, 97u, 101u}) {
    const auto a = factor_mod(f, ell, 42), b = factor_mod(f, ell, 42), c = factor_mod(f, ell, 7);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].factor, b[i].factor);
    ASSERT_EQ(a.size(), c.size());  // sorted output: seed cannot change the answer
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].factor, c[i].factor);
  }
}

/// Splitting type of a cubic by exhaustive root search and synthetic division.
std::vector<int> brute_cubic_type(const RatPoly& f, std::uint64_t p) {
  FpPoly g = FpPoly::reduce(f, p);
  std::vector<int> type;
  bool again = true;
  while (again && g.degree() > 0) {
    again = false;
    for (std::uint64_t r = 0; r < p; ++r)
      if (g(r) == 0) {
        g = g / FpPoly(p, {(p - r) % p, 1});
        type.push_back(1);
        again = true;
        break;
      }
  }
  if (g.degree() > 0) type.push_back(g.degree());
  std::sort(type.begin(), type.end());
  return type;
}

TEST(Places, CubicSplittingMatchesRootSearch) {
  const NumberField K = skoruppa_cubic();
  const Splitting at61 = places_above(K, 61);
  EXPECT_EQ(at61.type, brute_cubic_type(K.min_poly_q(), 61));
  for (std::uint64_t ell : *prime_table(2000)) {
    if (ell > 2000) break;
    if (divides(ell, K.poly_disc())) continue;
    const Splitting s = places_above(K, ell);
    EXPECT_EQ(s.type, brute_cubic_type(K.min_poly_q(), ell)) << ell;
    int sum = 0;
    for (const auto& pl : s.places) sum += pl.residue_degree;
    EXPECT_EQ(sum, 3);
  }
}

TEST(Places, DegreeOneAndRefusals) {
  const NumberField Q = NumberField::rationals();
  for (std::uint64_t ell : {2u, 3u, 101u}) {
    const Splitting s = places_above(Q, ell);
    ASSERT_EQ(s.places.size(), 1u);
    EXPECT_EQ(s.places[0].residue_degree, 1);
  }
  const NumberField K = skoruppa_cubic();
  EXPECT_THROW((void)places_above(K, 5), NearDiscriminantPrime);
  EXPECT_THROW((void)places_above(K, 13), NearDiscriminantPrime);
  EXPECT_THROW((void)places_above(K, 9), std::invalid_argument);
  const Splitting s59 = places_above(K, 59);
  EXPECT_TRUE(s59.inert());
  EXPECT_EQ(s59.places[0].residue_degree, 3);
}

// ---------------------------------------------------------------------------
// field elements

TEST(FieldElement, RingLaws) {
  Rng rng(6);
  for (const auto& K : sample_fields()) {
    for (int i = 0; i < 60; ++i) {
      const auto a = rand_element(rng, K), b = rand_element(rng, K), c = rand_element(rng, K);
      EXPECT_EQ((a + b) * c, a * c + b * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inverse(), K.from_rational(1));
      }
    }
  }
}

TEST(FieldElement, MultiplicationReducesModMinPoly) {
  const NumberField K = skoruppa_cubic();
  const FieldElement a = K.generator();
  // a^3 = a^2 + 294086 a + 59412960
  EXPECT_EQ(a.pow(3), K.element({Rational(59412960), Rational(294086), Rational(1)}));
  EXPECT_THROW(K.element({Rational(1)}), std::invalid_argument);
}

TEST(Charpoly, RationalAndGenerator) {
  const NumberField K = skoruppa_cubic();
  const Rational q(7, 3);
  const RatPoly lin{-q, Rational(1)};
  EXPECT_EQ(charpoly(K.from_rational(q)), lin * lin * lin);
  EXPECT_EQ(norm(K.from_rational(q)), q * q * q);
  EXPECT_EQ(charpoly(K.generator()), K.min_poly_q());
  EXPECT_EQ(norm(K.generator()), 59412960);
  EXPECT_EQ(trace(K.generator()), 1);
}

/// charpoly(h(alpha))(x0) = Res_y(f(y), x0 - h(y)) for monic f.
TEST(Charpoly, ResultantOracle) {
  Rng rng(7);
  const NumberField K = skoruppa_cubic();
  EXPECT_EQ(charpoly(K.generator() + Rational(1)), K.min_poly_q().shifted(-1));
  for (const auto& F : sample_fields()) {
    for (int i = 0; i < 20; ++i) {
      const FieldElement e = rand_element(rng, F);
      const RatPoly cp = charpoly(e);
      for (long x0 : {-3L, 0L, 2L, 11L}) {
        const RatPoly g = RatPoly::constant(Rational(x0)) - e.as_poly();
        const Rational expected = g.is_zero() ? Rational(0) : resultant(F.min_poly_q(), g);
        EXPECT_EQ(cp(Rational(x0)), expected);
      }
    }
  }
}

TEST(Charpoly, NormMultiplicative) {
  Rng rng(8);
  int pairs = 0;
  for (const auto& K : sample_fields()) {
    for (int i = 0; i < 110; ++i, ++pairs) {
      const auto a = rand_element(rng, K), b = rand_element(rng, K);
      EXPECT_EQ(norm(a * b), norm(a) * norm(b));
    }
  }
  EXPECT_GE(pairs, 500);
}

TEST(Charpoly, GeneratorTest) {
  const NumberField K = skoruppa_cubic();
  EXPECT_TRUE(is_generator(K.generator()));
  EXPECT_FALSE(is_generator(K.from_rational(5)));
  EXPECT_EQ(element_discriminant(K.from_rational(5)), 0);
  EXPECT_EQ(element_discriminant(K.generator()), Rational(K.poly_disc()));
  const NumberField Q = NumberField::rationals();
  EXPECT_TRUE(is_generator(Q.from_rational(3)));
  EXPECT_EQ(element_discriminant(Q.from_rational(3)), 1);
}

// ---------------------------------------------------------------------------
// reduction and square tests

TEST(Reduction, Examples) {
  const NumberField Q = NumberField::rationals();
  const ResiduePlace p7 = places_above(Q, 7).places[0];
  EXPECT_EQ(reduce_at_place(Q.from_rational(Rational(1, 2)), p7), FpPoly::constant(7, 4));
  EXPECT_THROW((void)reduce_at_place(Q.from_rational(Rational(1, 7)), p7), BadDenominator);
  try {
    (void)reduce_at_place(Q.from_rational(Rational(3, 14)), p7);
  } catch (const BadDenominator& e) {
    EXPECT_EQ(e.ell(), 7u);
    EXPECT_NE(std::string(e.what()).find("7"), std::string::npos);
  }
  const NumberField K = skoruppa_cubic();
  for (const auto& pl : places_above(K, 61).places)
    EXPECT_EQ(reduce_at_place(K.generator(), pl), FpPoly::x(61) % pl.local_factor);
}

TEST(Reduction, IsRingHomomorphism) {
  Rng rng(9);
  for (const auto& K : sample_fields()) {
    for (std::uint64_t ell : {3u, 7u, 11u, 29u, 61u, 101u}) {
      if (divides(ell, K.poly_disc())) continue;
      for (const auto& pl : places_above(K, ell).places) {
        for (int i = 0; i < 10; ++i) {
          const auto a = rand_element(rng, K, 20, 1) * Rational(1, 2), b = rand_integral_element(rng, K);
          const FpPoly& m = pl.local_factor;
          EXPECT_EQ(reduce_at_place(a * b, pl), (reduce_at_place(a, pl) * reduce_at_place(b, pl)) % m);
          EXPECT_EQ(reduce_at_place(a + b, pl), (reduce_at_place(a, pl) + reduce_at_place(b, pl)) % m);
        }
      }
    }
  }
}

TEST(SquareTest, LegendreExamplesAndErrors) {
  EXPECT_EQ(legendre(Integer(2), 7), SquareClass::square);
  EXPECT_EQ(legendre(Integer(3), 7), SquareClass::nonsquare);
  EXPECT_EQ(legendre(Integer(14), 7), SquareClass::zero);
  EXPECT_EQ(legendre(Integer(-1), 13), SquareClass::square);
  EXPECT_THROW((void)legendre(Integer(3), 8), std::invalid_argument);
  EXPECT_THROW((void)legendre(Integer(3), 9), std::invalid_argument);
  EXPECT_THROW((void)legendre(Integer(3), 2), std::invalid_argument);
}

/// Residue fields F_(ell^r) built from an irreducible polynomial of degree r.
std::vector<ResiduePlace> small_residue_fields(std::uint64_t max_order) {
  std::vector<ResiduePlace> out;
  for (std::uint64_t ell : *prime_table(60)) {
    if (ell > 50) break;
    for (int r = 1; r <= 3; ++r) {
      std::uint64_t q = 1;
      for (int i = 0; i < r; ++i) q *= ell;
      if (q > max_order) break;
      // first monic irreducible of degree r in lexicographic order
      std::vector<FpPoly::Coeff> c(static_cast<std::size_t>(r) + 1, 0);
      c[static_cast<std::size_t>(r)] = 1;
      for (std::uint64_t idx = 0;; ++idx) {
        std::uint64_t t = idx;
        for (int i = 0; i < r; ++i) {
          c[static_cast<std::size_t>(i)] = t % ell;
          t /= ell;
        }
        FpPoly f(ell, c);
        if (r == 1 || (factor_mod(f).size() == 1 && factor_mod(f)[0].exponent == 1)) {
          out.push_back(ResiduePlace{ell, f, r});
          break;
        }
      }
    }
  }
  return out;
}

FpPoly element_from_index(std::uint64_t idx, const ResiduePlace& pl) {
  std::vector<FpPoly::Coeff> c;
  for (int i = 0; i < pl.residue_degree; ++i) {
    c.push_back(idx % pl.ell);
    idx /= pl.ell;
  }
  return FpPoly(pl.ell, c);
}

TEST(SquareTest, CountsAndSquaresExhaustive) {
  for (const auto& pl : small_residue_fields(3000)) {
    if (pl.ell == 2) continue;
    const std::uint64_t q = pl.residue_field_order().get_ui();
    std::uint64_t squares = 0;
    std::set<std::vector<FpPoly::Coeff>> image;
    for (std::uint64_t i = 1; i < q; ++i) {
      const FpPoly x = element_from_index(i, pl);
      if (residue_square_test(x, pl) == SquareClass::square) ++squares;
      const FpPoly x2 = (x * x) % pl.local_factor;
      EXPECT_EQ(residue_square_test(x2, pl), SquareClass::square);
      image.insert(x2.coeffs());
    }
    EXPECT_EQ(squares, (q - 1) / 2) << pl.ell << "^" << pl.residue_degree;
    EXPECT_EQ(image.size(), (q - 1) / 2);
  }
}

TEST(SquareTest, NormShortcutExhaustive) {
  for (const auto& pl : small_residue_fields(130'000)) {
    if (pl.ell == 2) continue;
    const std::uint64_t q = pl.residue_field_order().get_ui();
    for (std::uint64_t i = 1; i < q; ++i) {
      const FpPoly x = element_from_index(i, pl);
      const SquareClass direct = residue_square_test(x, pl);
      const SquareClass via_norm = legendre(Integer(static_cast<unsigned long>(residue_norm(x, pl))), pl.ell);
      ASSERT_EQ(direct, via_norm) << pl.ell << "^" << pl.residue_degree << " element " << i;
    }
  }
}

TEST(SquareTest, InertPlaceAgreesWithFieldNorm) {
  Rng rng(10);
  const NumberField K = skoruppa_cubic();
  for (std::uint64_t ell : {59u, 67u, 71u, 101u, 103u}) {
    const ResiduePlace pl = places_above(K, ell).places.at(0);
    ASSERT_EQ(pl.residue_degree, 3);
    for (int i = 0; i < 40; ++i) {
      const FieldElement e = rand_integral_element(rng, K, 1000);
      const SquareClass direct = residue_square_test(reduce_at_place(e, pl), pl);
      EXPECT_EQ(direct, legendre(norm(e), ell));
    }
  }
}

// ---------------------------------------------------------------------------
// integers

TEST(Primality, PrintedPrimesAndPseudoprimes) {
  EXPECT_EQ(primality(Integer("1646767084367711")), Primality::prime);
  EXPECT_EQ(primality(Integer("8841304187")), Primality::prime);
  EXPECT_EQ(primality(Integer(2063)), Primality::prime);
  for (long carmichael : {561L, 1105L, 1729L, 2465L, 41041L, 825265L})
    EXPECT_EQ(primality(Integer(carmichael)), Primality::composite);
  EXPECT_EQ(primality(Integer("3825123056546413051")), Primality::composite);  // strong pseudoprime to bases 2..23
  EXPECT_EQ(primality(Integer("2305843009213693951")), Primality::prime);      // 2^61 - 1
  EXPECT_EQ(primality(Integer("170141183460469231731687303715884105727")), Primality::probable_prime);  // 2^127 - 1
  EXPECT_EQ(primality(Integer("340282366920938463463374607431768211457")), Primality::composite);       // F_7
}

TEST(FactorInt, TrialDivisionOracle) {
  const Factorization f = factor_int(Integer(59412960));
  EXPECT_TRUE(f.complete());
  EXPECT_EQ(f.reassemble(), 59412960);
  Integer rest = 59412960;
  std::map<Integer, unsigned> oracle;
  for (unsigned long p = 2; p * p <= rest; ++p)
    while (rest % p == 0) {
      rest /= p;
      ++oracle[Integer(p)];
    }
  if (rest > 1) ++oracle[rest];
  EXPECT_EQ(f.factors, oracle);
  EXPECT_THROW((void)factor_int(Integer(0)), std::domain_error);
  EXPECT_EQ(factor_int(Integer(-12)).reassemble(), 12);
}

TEST(FactorInt, RhoSplitsLargeSemiprime) {
  const Integer p("1646767084367711"), q("8841304187");
  const Factorization f = factor_int(p * q * 17 * 17);
  EXPECT_TRUE(f.complete());
  EXPECT_EQ(f.factors.at(p), 1u);
  EXPECT_EQ(f.factors.at(q), 1u);
  EXPECT_EQ(f.factors.at(Integer(17)), 2u);
}

TEST(FactorInt, ReassemblyInvariantOnRandom128Bit) {
  Rng rng(11);
  FactorConfig cfg;
  cfg.trial_bound = 1000;
  cfg.rho_iterations = 2000;
  int partial = 0;
  for (int i = 0; i < 10'000; ++i) {
    const Integer n = rand_bits(rng, 128) + 1;
    cfg.seed = rng();
    const Factorization f = factor_int(n, cfg);
    ASSERT_EQ(f.reassemble(), n);
    for (const auto& [p, e] : f.factors) ASSERT_NE(primality(p), Primality::composite);
    if (f.unfactored_cofactor) {
      ++partial;
      ASSERT_GT(*f.unfactored_cofactor, 1);
      ASSERT_EQ(primality(*f.unfactored_cofactor), Primality::composite);
    }
  }
  EXPECT_GT(partial, 0);  // the small cap must leave some cofactors
}

TEST(ParseRational, AcceptsAndRejects) {
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("+7"), 7);
  for (const char* bad : {"", "1/0", "1/-2", "x", "1.5", "2/", "/3", "--1"}) EXPECT_THROW((void)parse_rational(bad), std::invalid_argument) << bad;
}

// ---------------------------------------------------------------------------
// field construction

TEST(NumberField, IrreducibilityCertification) {
  EXPECT_THROW(NumberField({Integer(-4), Integer(0), Integer(1)}), FieldPolynomialError);
  EXPECT_THROW(NumberField({Integer(0), Integer(0), Integer(1)}), FieldPolynomialError);
  EXPECT_THROW(NumberField({Integer(4), Integer(0), Integer(0), Integer(0), Integer(1)}), FieldPolynomialError);  // (x^2+2x+2)(x^2-2x+2)
  EXPECT_THROW(NumberField({Integer(1), Integer(2)}), FieldPolynomialError);  // not monic
  // reducible modulo every prime, yet irreducible over Q
  const NumberField swinnerton({Integer(1), Integer(0), Integer(-10), Integer(0), Integer(1)});
  EXPECT_EQ(swinnerton.degree(), 4u);
  EXPECT_EQ(skoruppa_cubic().irreducibility_evidence(), "irreducible modulo 53");
  try {
    NumberField({Integer(-4), Integer(0), Integer(1)});
  } catch (const FieldPolynomialError& e) {
    EXPECT_EQ(e.kind(), FieldPolynomialError::Kind::reducible);
  }
}

TEST(NumberField, CubicDiscriminantClassification) {
  const NumberField K = skoruppa_cubic();
  std::map<unsigned long, DiscPrimeClass> expected{{2, DiscPrimeClass::index},       {3, DiscPrimeClass::index},
                                                   {5, DiscPrimeClass::ramified},    {13, DiscPrimeClass::ramified},
                                                   {73693, DiscPrimeClass::ramified}, {1418741, DiscPrimeClass::ramified}};
  for (const auto& [p, c] : expected) EXPECT_EQ(classify_disc_prime(K, Integer(p)).classification, c) << p;
}

TEST(NumberField, QuadraticDiscriminantPrimes) {
  const NumberField sqrt5({Integer(-5), Integer(0), Integer(1)});
  EXPECT_EQ(classify_disc_prime(sqrt5, Integer(2)).classification, DiscPrimeClass::index);
  EXPECT_EQ(classify_disc_prime(sqrt5, Integer(5)).classification, DiscPrimeClass::ramified);
  const NumberField gauss({Integer(1), Integer(0), Integer(1)});
  EXPECT_EQ(classify_disc_prime(gauss, Integer(2)).classification, DiscPrimeClass::ramified);
  // x^2 - 12: disc 48 = 2^4 * 3, Z[sqrt 12] has index 2 in Z[sqrt 3] where 2 ramifies
  const NumberField sqrt12({Integer(-12), Integer(0), Integer(1)});
  EXPECT_EQ(classify_disc_prime(sqrt12, Integer(2)).classification, DiscPrimeClass::ramified_or_index);
}

}  // namespace
