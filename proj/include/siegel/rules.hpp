#pragma once

// The ten maximal-subgroup cases of PSp(4, F_q) and the bookkeeping that
// excludes each of them at a place above ell.

#include <siegel/exact/factor.hpp>
#include <siegel/sieve.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

struct MitchellCase {
  int index;
  const char* description;
};

inline constexpr std::array<MitchellCase, 10> kMitchellCases{{
    {1, "a group having an invariant point and plane"},
    {2, "a group having an invariant parabolic congruence"},
    {3, "a group having an invariant hyperbolic congruence"},
    {4, "a group having an invariant elliptic congruence"},
    {5, "a group having an invariant quadric"},
    {6, "a group having an invariant twisted cubic"},
    {7, "a group with a normal elementary abelian subgroup E of order 16 and G/E isomorphic to A_5 or S_5"},
    {8, "a group isomorphic to A_6, S_6 or A_7"},
    {9, "a conjugate of PSp(4, F_(p^k)) with r/k an odd prime"},
    {10, "a conjugate of PGSp(4, F_(p^k)) with r even and r/k = 2"},
}};

/// Hodge-Tate weights {0, k-2, k-1, 2k-3}.
struct InertiaWeights {
  std::array<int, 4> weights;

  explicit InertiaWeights(int k) : weights{0, k - 2, k - 1, 2 * k - 3} {}
  [[nodiscard]] bool paired() const { return weights[0] + weights[3] == weights[1] + weights[2]; }
};

namespace detail {

inline void check_k_ell(int k, std::uint64_t ell) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("weight must be even and >= 4, got " + std::to_string(k));
  if (ell % 2 == 0 || !is_prime_u64(ell)) throw std::invalid_argument("ell must be an odd prime, got " + std::to_string(ell));
}

inline bool divides_signed(long long d, long long n) { return d != 0 && n % d == 0; }

}  // namespace detail

/// The held divisibilities, each as a short label.
inline std::vector<std::string> twisted_cubic_conditions(int k, std::uint64_t ell) {
  detail::check_k_ell(k, ell);
  const auto l = static_cast<long long>(ell);
  std::vector<std::string> held;
  const std::pair<const char*, long long> minus[] = {{"k-3", k - 3}, {"k", k}, {"3k-5", 3 * k - 5}, {"3k-4", 3 * k - 4}};
  for (const auto& [name, v] : minus)
    if (detail::divides_signed(l - 1, v)) held.push_back(std::string("ell-1 | ") + name);
  const std::pair<const char*, long long> plus[] = {{"3k-5", 3 * k - 5}, {"3k-4", 3 * k - 4}, {"k", k},
                                                    {"k-3", k - 3},      {"2k-3", 2 * k - 3}, {"3", 3}};
  for (const auto& [name, v] : plus)
    if (detail::divides_signed(l + 1, v)) held.push_back(std::string("ell+1 | ") + name);
  if (detail::divides_signed(l * l - 1, (-3LL * k + 5) + (3LL * k - 4) * l)) held.emplace_back("ell^2-1 | (-3k+5)+(3k-4)ell");
  return held;
}

inline std::vector<std::string> case_ii_conditions(int k, std::uint64_t ell) {
  detail::check_k_ell(k, ell);
  const auto l = static_cast<long long>(ell);
  std::vector<std::string> held;
  if (detail::divides_signed(l - 1, k - 2)) held.emplace_back("ell-1 | k-2");
  if (detail::divides_signed(l - 1, k - 1)) held.emplace_back("ell-1 | k-1");
  if (detail::divides_signed(l + 1, k - 2)) held.emplace_back("ell+1 | k-2");
  if (detail::divides_signed(l + 1, k - 1)) held.emplace_back("ell+1 | k-1");
  if (detail::divides_signed(l + 1, 2 * k - 3)) held.emplace_back("ell+1 | 2k-3");
  if (detail::divides_signed(l + 1, (k - 2) + (k - 1) * l)) held.emplace_back("ell+1 | (k-2)+(k-1)ell");
  return held;
}

struct ImageName {
  std::string group;       // e.g. PGSp(4, 59^3)
  std::string similitude;  // description of A_lambda^k
};

/// r even gives PSp, r odd gives PGSp. Without ell the label keeps the symbol.
inline ImageName max_image_name(int k, int r, std::optional<std::uint64_t> ell = std::nullopt) {
  if (r < 1) throw std::invalid_argument("residue degree must be >= 1");
  const std::string base = ell ? std::to_string(*ell) : std::string("ell");
  const std::string field = r == 1 ? base : base + "^" + std::to_string(r);
  ImageName n;
  n.group = std::string(r % 2 == 0 ? "PSp" : "PGSp") + "(4, " + field + ")";
  n.similitude = "A_lambda^" + std::to_string(k) + ": symplectic similitudes over the lambda-adic integers with det in (Z_" + base +
                 "^*)^" + std::to_string(4 * k - 6);
  return n;
}

// ---------------------------------------------------------------------------

enum class CaseStatus { excluded, congruence_dependent, open, below_threshold };

inline const char* to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::excluded: return "excluded";
    case CaseStatus::congruence_dependent: return "congruence-dependent";
    case CaseStatus::open: return "open";
    case CaseStatus::below_threshold: return "below-threshold";
  }
  return "?";
}

struct CaseRow {
  int index;  // 1..10, 0 for the unrelated 2-dimensional reducible case
  std::string label;
  CaseStatus status;
  std::string reason;
};

/// Evidence from the unconditional criterion at this place.
struct ResidualEvidence {
  std::optional<std::uint64_t> certificate_p;  // p with a valid d_p nonsquare certificate at the place
};

struct ExclusionTable {
  std::uint64_t ell = 0;
  int residue_degree = 1;
  std::string place;  // local factor, empty when no place was built
  std::vector<CaseRow> rows;
  bool maximal = false;
  std::optional<ImageName> image;
};

inline bool is_power_of_two(int r) { return r > 0 && (r & (r - 1)) == 0; }

inline ExclusionTable exclusion_table(const EigenformData& form, const ExceptionalReport& report, std::uint64_t ell,
                                      int residue_degree, const ResidualEvidence& residual, bool serre_mode,
                                      std::string place = {}) {
  const int k = form.weight();
  ExclusionTable t;
  t.ell = ell;
  t.residue_degree = residue_degree;
  t.place = std::move(place);
  auto label = [](int i) { return i == 0 ? std::string("unrelated 2-dimensional constituents") : std::string(kMitchellCases[static_cast<std::size_t>(i - 1)].description); };
  auto add = [&](int i, CaseStatus s, std::string why) { t.rows.push_back({i, label(i), s, std::move(why)}); };
  auto all = [&](CaseStatus s, const std::string& why) {
    for (int i = 1; i <= 10; ++i) add(i, s, why);
    add(0, s, why);
  };

  const Integer L(static_cast<unsigned long>(ell));
  if (ell <= report.floor) {
    all(CaseStatus::below_threshold, "ell <= " + std::to_string(report.floor));
    return t;
  }
  if (auto why = report.excluded_reason(L, form.field())) {
    all(CaseStatus::open, *why);
    return t;
  }
  const std::string above = "ell > " + std::to_string(report.floor);

  auto congruence_row = [&](int i, Cause c1, Cause c2) {
    std::string hit;
    for (Cause c : {c1, c2})
      if (report.causes.at(c).hits(L)) hit += (hit.empty() ? "" : ", ") + std::string(to_string(c));
    if (hit.empty()) add(i, CaseStatus::excluded, std::string("ell divides neither ") + to_string(c1) + " nor " + to_string(c2) + " gcd");
    else add(i, CaseStatus::congruence_dependent, hit);
  };
  congruence_row(1, Cause::one_dim_trivial, Cause::one_dim_middle);
  congruence_row(2, Cause::related_case1, Cause::related_case2);
  for (int i = 3; i <= 5; ++i) add(i, CaseStatus::excluded, "index-2 subgroup would give an unramified quadratic field; " + above);

  const auto cubic = twisted_cubic_conditions(k, ell);
  if (cubic.empty()) add(6, CaseStatus::excluded, "no inertia divisibility holds; " + above);
  else {
    std::string held;
    for (const auto& c : cubic) held += (held.empty() ? "" : ", ") + c;
    add(6, CaseStatus::open, held);
  }
  add(7, CaseStatus::excluded, "inertia weights are incompatible; " + above);
  add(8, CaseStatus::excluded, "inertia weights are incompatible; " + above);

  const CauseResult& smaller = report.causes.at(Cause::smaller_field);
  auto smaller_row = [&](int i, bool vacuous, const std::string& vacuous_reason) {
    if (vacuous) add(i, CaseStatus::excluded, vacuous_reason);
    else if (smaller.hits(L)) add(i, CaseStatus::congruence_dependent, smaller.all_primes ? smaller.note : std::string("smaller_field"));
    else add(i, CaseStatus::excluded, "ell divides no smaller_field number of an untwisted witness");
  };
  smaller_row(9, is_power_of_two(residue_degree), "residue degree " + std::to_string(residue_degree) + " has no odd prime factor");
  smaller_row(10, residue_degree % 2 == 1, "residue degree " + std::to_string(residue_degree) + " is odd");

  if (serre_mode) {
    add(0, CaseStatus::excluded, "Serre's conjecture; " + above);
  } else {
    const auto ii = case_ii_conditions(k, ell);
    if (!residual.certificate_p) add(0, CaseStatus::open, "no d_p nonsquare certificate at this place");
    else if (!ii.empty()) add(0, CaseStatus::open, "case ii divisibility holds: " + ii.front());
    else add(0, CaseStatus::excluded, "d_p nonsquare certificate for p=" + std::to_string(*residual.certificate_p) + "; case ii impossible");
  }

  t.maximal = std::all_of(t.rows.begin(), t.rows.end(), [](const CaseRow& r) { return r.status == CaseStatus::excluded; });
  if (t.maximal) t.image = max_image_name(k, residue_degree, ell);
  return t;
}

}  // namespace siegel
