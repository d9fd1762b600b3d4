#pragma once

// Pseudo-representations of finite groups over Z/N (N odd), in Wiles' sense:
// quadruples (a, d, t, x) determined by the trace.

#include <siegel/exact/integer.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

/// 2x2 matrix over Z/N as {alpha, beta, gamma, delta}.
using Mat2 = std::array<std::uint64_t, 4>;

inline Mat2 mat_mul(const Mat2& x, const Mat2& y, std::uint64_t n) {
  auto mac = [n](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    return addmod(mulmod(a, b, n), mulmod(c, d, n), n);
  };
  return {mac(x[0], y[0], x[1], y[2]), mac(x[0], y[1], x[1], y[3]), mac(x[2], y[0], x[3], y[2]), mac(x[2], y[1], x[3], y[3])};
}

inline std::uint64_t mat_det(const Mat2& m, std::uint64_t n) { return submod(mulmod(m[0], m[3], n), mulmod(m[1], m[2], n), n); }

inline Mat2 mat_reduce(const std::array<long long, 4>& m, std::uint64_t n) {
  Mat2 out{};
  for (std::size_t i = 0; i < 4; ++i) {
    const long long r = m[i] % static_cast<long long>(n);
    out[i] = static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(n) : r);
  }
  return out;
}

class FiniteGroupTable {
 public:
  FiniteGroupTable(std::vector<std::vector<std::size_t>> mul, std::size_t identity, std::size_t c)
      : mul_(std::move(mul)), identity_(identity), c_(c) {
    validate();
  }

  /// Closure of the generators under multiplication in GL(2, Z/N); c must be a member.
  static FiniteGroupTable from_matrices(const std::vector<Mat2>& gens, const Mat2& c, std::uint64_t n, std::size_t max_order = 4096) {
    const Mat2 id{1 % n, 0, 0, 1 % n};
    std::vector<Mat2> elems{id};
    std::map<Mat2, std::size_t> index{{id, 0}};
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (const Mat2& g : gens) {
        const Mat2 prod = mat_mul(elems[i], g, n);
        if (index.emplace(prod, elems.size()).second) {
          elems.push_back(prod);
          if (elems.size() > max_order) throw std::invalid_argument("generated group exceeds the order cap");
        }
      }
    }
    const auto ci = index.find(c);
    if (ci == index.end()) throw std::invalid_argument("c is not in the generated group");
    std::vector<std::vector<std::size_t>> mul(elems.size(), std::vector<std::size_t>(elems.size()));
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = 0; j < elems.size(); ++j) {
        const auto it = index.find(mat_mul(elems[i], elems[j], n));
        if (it == index.end()) throw std::logic_error("generated set is not closed");
        mul[i][j] = it->second;
      }
    FiniteGroupTable g(std::move(mul), 0, ci->second);
    g.matrices_ = std::move(elems);
    g.modulus_ = n;
    return g;
  }

  [[nodiscard]] std::size_t order() const { return mul_.size(); }
  [[nodiscard]] std::size_t identity() const { return identity_; }
  [[nodiscard]] std::size_t c() const { return c_; }
  [[nodiscard]] std::size_t mul(std::size_t g, std::size_t h) const { return mul_[g][h]; }
  /// Present when the group was generated from matrices.
  [[nodiscard]] const std::vector<Mat2>& matrices() const { return matrices_; }
  [[nodiscard]] std::uint64_t matrix_modulus() const { return modulus_; }

 private:
  void validate() const {
    const std::size_t n = mul_.size();
    if (n == 0 || identity_ >= n || c_ >= n) throw std::invalid_argument("group table index out of range");
    for (const auto& row : mul_)
      if (row.size() != n) throw std::invalid_argument("group table is not square");
    for (std::size_t g = 0; g < n; ++g)
      if (mul_[identity_][g] != g || mul_[g][identity_] != g) throw std::invalid_argument("identity law fails");
    if (n <= 64)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) throw std::invalid_argument("group table is not associative");
    if (c_ == identity_ || mul_[c_][c_] != identity_) throw std::invalid_argument("c must have order two");
  }

  std::vector<std::vector<std::size_t>> mul_;
  std::size_t identity_;
  std::size_t c_;
  std::vector<Mat2> matrices_;
  std::uint64_t modulus_ = 0;
};

struct PseudoRep {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> a, d, t;
  std::vector<std::vector<std::uint64_t>> x;

  /// det(tau)(g) = a_g d_g - x_(g,g)
  [[nodiscard]] std::uint64_t det(std::size_t g) const { return submod(mulmod(a[g], d[g], modulus), x[g][g], modulus); }

  friend bool operator==(const PseudoRep&, const PseudoRep&) = default;
};

struct Violation {
  std::string axiom;
  std::vector<std::size_t> elements;
};

namespace detail {

inline void check_modulus(std::uint64_t n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("pseudo-representations need an odd modulus, got " + std::to_string(n));
}

}  // namespace detail

/// Every violated instance; the quartic identities are only run when |G| <= quartic_cap.
inline std::vector<Violation> check_axioms(const PseudoRep& tau, const FiniteGroupTable& G, std::size_t quartic_cap = 16) {
  const std::uint64_t n = tau.modulus;
  detail::check_modulus(n);
  const std::size_t m = G.order();
  if (tau.a.size() != m || tau.d.size() != m || tau.t.size() != m || tau.x.size() != m)
    throw std::invalid_argument("pseudo-representation does not match group order");
  std::vector<Violation> out;
  auto mm = [n](std::uint64_t u, std::uint64_t v) { return mulmod(u, v, n); };
  auto add = [n](std::uint64_t u, std::uint64_t v) { return addmod(u, v, n); };
  const auto& a = tau.a;
  const auto& d = tau.d;
  const auto& t = tau.t;
  const auto& x = tau.x;
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h) {
      if (mm(2, a[G.mul(g, h)]) != add(mm(a[g], a[h]), x[g][h])) out.push_back({"i.a", {g, h}});
      if (mm(2, d[G.mul(g, h)]) != add(mm(d[g], d[h]), x[h][g])) out.push_back({"i.d", {g, h}});
    }
  for (std::size_t g = 0; g < m; ++g) {
    const std::size_t cg = G.mul(G.c(), g);
    if (a[g] != add(t[g], t[cg])) out.push_back({"ii.a", {g}});
    if (d[g] != submod(t[g], t[cg], n)) out.push_back({"ii.d", {g}});
    if (x[g][G.c()] != 0) out.push_back({"iii.x_gc", {g}});
    if (x[G.c()][g] != 0) out.push_back({"iii.x_cg", {g}});
  }
  if (t[G.identity()] != 2 % n) out.push_back({"iii.t1", {G.identity()}});
  if (t[G.c()] != 0) out.push_back({"iii.tc", {G.c()}});
  if (m <= quartic_cap) {
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t g2 = 0; g2 < m; ++g2)
        for (std::size_t h = 0; h < m; ++h)
          for (std::size_t h2 = 0; h2 < m; ++h2) {
            if (mm(x[g][g2], x[h][h2]) != mm(x[g][h2], x[h][g2])) out.push_back({"iv.a", {g, g2, h, h2}});
            const std::uint64_t lhs = mm(4, x[G.mul(g, h)][G.mul(g2, h2)]);
            std::uint64_t rhs = mm(mm(a[g], a[h2]), x[h][g2]);
            rhs = add(rhs, mm(mm(a[h2], d[h]), x[g][g2]));
            rhs = add(rhs, mm(mm(a[g], d[g2]), x[h][h2]));
            rhs = add(rhs, mm(mm(d[h], d[g2]), x[g][h2]));
            if (lhs != rhs) out.push_back({"iv.b", {g, g2, h, h2}});
          }
  }
  return out;
}

/// a = 2 alpha, d = 2 delta, t = alpha + delta, x_(g,g') = 4 beta_g gamma_g'.
inline PseudoRep from_odd_rep(const FiniteGroupTable& G, const std::vector<Mat2>& rho, std::uint64_t n) {
  detail::check_modulus(n);
  const std::size_t m = G.order();
  if (rho.size() != m) throw std::invalid_argument("representation does not match group order");
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h)
      if (mat_mul(rho[g], rho[h], n) != rho[G.mul(g, h)])
        throw std::invalid_argument("rho is not a homomorphism at (" + std::to_string(g) + ", " + std::to_string(h) + ")");
  if (rho[G.c()] != Mat2{1, 0, 0, n - 1}) throw std::invalid_argument("rho(c) must be diag(1, -1)");
  PseudoRep tau;
  tau.modulus = n;
  tau.a.resize(m);
  tau.d.resize(m);
  tau.t.resize(m);
  tau.x.assign(m, std::vector<std::uint64_t>(m));
  for (std::size_t g = 0; g < m; ++g) {
    tau.a[g] = mulmod(2, rho[g][0], n);
    tau.d[g] = mulmod(2, rho[g][3], n);
    tau.t[g] = addmod(rho[g][0], rho[g][3], n);
    for (std::size_t h = 0; h < m; ++h) tau.x[g][h] = mulmod(4, mulmod(rho[g][1], rho[h][2], n), n);
  }
  return tau;
}

/// a_g = t_g + t_cg, d_g = t_g - t_cg, x_(g,g') = 2 a_gg' - a_g a_g'.
inline PseudoRep reconstruct_from_trace(const std::vector<std::uint64_t>& t, const FiniteGroupTable& G, std::uint64_t n) {
  detail::check_modulus(n);
  const std::size_t m = G.order();
  if (t.size() != m) throw std::invalid_argument("trace does not match group order");
  PseudoRep tau;
  tau.modulus = n;
  tau.t = t;
  tau.a.resize(m);
  tau.d.resize(m);
  tau.x.assign(m, std::vector<std::uint64_t>(m));
  for (std::size_t g = 0; g < m; ++g) {
    const std::size_t cg = G.mul(G.c(), g);
    tau.a[g] = addmod(t[g], t[cg], n);
    tau.d[g] = submod(t[g], t[cg], n);
  }
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h)
      tau.x[g][h] = submod(mulmod(2, tau.a[G.mul(g, h)], n), mulmod(tau.a[g], tau.a[h], n), n);
  return tau;
}

// ---------------------------------------------------------------------------
// small example groups with c acting as diag(1, -1)

struct ExampleRep {
  std::string name;
  FiniteGroupTable group;
  std::vector<Mat2> rho;  // rho[g] is the matrix of element g
  std::uint64_t modulus;
};

/// C_2 = {1, diag(1,-1)}.
inline ExampleRep cyclic2_example(std::uint64_t n) {
  const Mat2 c{1, 0, 0, n - 1};
  auto G = FiniteGroupTable::from_matrices({c}, c, n);
  return {"C2", G, G.matrices(), n};
}

/// S_3 on the standard 2-dimensional representation, conjugated by
/// [[1,1],[1,-1]] so that the transposition swapping the basis becomes diag(1,-1).
inline ExampleRep symmetric3_example(std::uint64_t n) {
  // r = [[0,-1],[1,-1]], s = [[0,1],[1,0]]; P^-1 M P with P = [[1,1],[1,-1]], P^-1 = P/2
  const std::uint64_t half = invmod(2, n);
  const Mat2 p = mat_reduce({1, 1, 1, -1}, n);
  const Mat2 pinv = mat_reduce({1, 1, 1, -1}, n);
  auto conj = [&](const Mat2& m) {
    Mat2 r = mat_mul(mat_mul(pinv, m, n), p, n);
    for (auto& e : r) e = mulmod(e, half, n);
    return r;
  };
  const Mat2 r = conj(mat_reduce({0, -1, 1, -1}, n));
  const Mat2 s = conj(mat_reduce({0, 1, 1, 0}, n));
  auto G = FiniteGroupTable::from_matrices({r, s}, s, n);
  return {"S3", G, G.matrices(), n};
}

/// D_4 generated by rotation [[0,-1],[1,0]] and reflection diag(1,-1).
inline ExampleRep dihedral4_example(std::uint64_t n) {
  const Mat2 r = mat_reduce({0, -1, 1, 0}, n);
  const Mat2 s = mat_reduce({1, 0, 0, -1}, n);
  auto G = FiniteGroupTable::from_matrices({r, s}, s, n);
  return {"D4", G, G.matrices(), n};
}

}  // namespace siegel
