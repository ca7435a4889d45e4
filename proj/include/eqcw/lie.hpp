#pragma once

// Lie algebra data given by structure constants f^c_{ab}, [e_a, e_b] =
// f^c_{ab} e_c, together with optional exact matrix realizations over Q(i).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqcw/errors.hpp"
#include "eqcw/scalar.hpp"

namespace eqcw {

/// Dense square matrix over Q(i).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n * n)) {}

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n);
    for (int r = 0; r < n; ++r) m(r, r) = GaussianRational(1);
    return m;
  }

  int size() const { return n_; }
  GaussianRational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * n_ + c)]; }
  const GaussianRational& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * n_ + c)]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(const GaussianRational& s, ComplexMatrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.n_);
    for (int r = 0; r < a.n_; ++r)
      for (int k = 0; k < a.n_; ++k) {
        if (a(r, k).is_zero()) continue;
        for (int c = 0; c < a.n_; ++c) out(r, c) += a(r, k) * b(k, c);
      }
    return out;
  }
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  GaussianRational trace() const {
    GaussianRational t;
    for (int r = 0; r < n_; ++r) t += (*this)(r, r);
    return t;
  }

  /// Exact inverse by Gauss-Jordan elimination; throws on singular input.
  ComplexMatrix inverse() const {
    ComplexMatrix a = *this;
    ComplexMatrix inv = identity(n_);
    for (int col = 0; col < n_; ++col) {
      int pivot = col;
      while (pivot < n_ && a(pivot, col).is_zero()) ++pivot;
      if (pivot == n_) throw std::domain_error("ComplexMatrix::inverse: singular matrix");
      if (pivot != col)
        for (int c = 0; c < n_; ++c) {
          std::swap(a(pivot, c), a(col, c));
          std::swap(inv(pivot, c), inv(col, c));
        }
      GaussianRational scale = GaussianRational(1) / a(col, col);
      for (int c = 0; c < n_; ++c) {
        a(col, c) *= scale;
        inv(col, c) *= scale;
      }
      for (int r = 0; r < n_; ++r) {
        if (r == col || a(r, col).is_zero()) continue;
        GaussianRational factor = a(r, col);
        for (int c = 0; c < n_; ++c) {
          a(r, c) -= factor * a(col, c);
          inv(r, c) -= factor * inv(col, c);
        }
      }
    }
    return inv;
  }

 private:
  int n_ = 0;
  std::vector<GaussianRational> data_;
};

struct MatrixRep {
  int dim_v = 0;
  std::vector<ComplexMatrix> matrices;
};

class LieAlgebraData {
 public:
  LieAlgebraData() = default;
  LieAlgebraData(std::string name, int dim, std::vector<std::string> basis_names = {})
      : name_(std::move(name)), dim_(dim), basis_names_(std::move(basis_names)),
        f_(static_cast<std::size_t>(dim * dim * dim)) {
    if (dim < 0) throw std::invalid_argument("LieAlgebraData: negative dimension");
    if (basis_names_.empty())
      for (int a = 0; a < dim; ++a) basis_names_.push_back("e" + std::to_string(a + 1));
    if (static_cast<int>(basis_names_.size()) != dim)
      throw std::invalid_argument("LieAlgebraData: basis name count differs from dimension");
  }

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }

  /// f^c_{ab}.
  const Scalar& f(int c, int a, int b) const { return f_[offset(c, a, b)]; }
  void set_f(int c, int a, int b, Scalar value) { f_[offset(c, a, b)] = std::move(value); }
  /// Sets f^c_{ab} = value and f^c_{ba} = -value.
  void set_bracket(int a, int b, int c, const Scalar& value) {
    set_f(c, a, b, value);
    set_f(c, b, a, -value);
  }

  bool is_abelian() const {
    for (const auto& x : f_)
      if (!x.is_zero()) return false;
    return true;
  }

  const std::optional<MatrixRep>& rep() const { return rep_; }
  void set_rep(MatrixRep r) { rep_ = std::move(r); }

 private:
  std::size_t offset(int c, int a, int b) const {
    if (c < 0 || a < 0 || b < 0 || c >= dim_ || a >= dim_ || b >= dim_)
      throw IndexError("structure constant index out of range for " + name_);
    return static_cast<std::size_t>((c * dim_ + a) * dim_ + b);
  }

  std::string name_;
  int dim_ = 0;
  std::vector<std::string> basis_names_;
  std::vector<Scalar> f_;
  std::optional<MatrixRep> rep_;
};

struct LieViolation {
  enum class Kind { antisymmetry, jacobi } kind;
  int a, b, d;  // for antisymmetry: (c, a, b) of the offending f^c_{ab}
  std::string describe() const {
    auto idx = [](int x) { return std::to_string(x + 1); };
    if (kind == Kind::antisymmetry)
      return "antisymmetry f^" + idx(a) + "_{" + idx(b) + idx(d) + "} != -f^" + idx(a) + "_{" + idx(d) + idx(b) + "}";
    return "jacobi (" + idx(a) + "," + idx(b) + "," + idx(d) + ")";
  }
};

struct LieValidation {
  bool ok = true;
  std::vector<LieViolation> violations;
};

inline LieValidation validate(const LieAlgebraData& g) {
  LieValidation report;
  const int n = g.dim();
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        if (!(g.f(c, a, b) + g.f(c, b, a)).is_zero())
          report.violations.push_back({LieViolation::Kind::antisymmetry, c, a, b});
  // sum_c f^c_{ab} f^e_{cd} + f^c_{bd} f^e_{ca} + f^c_{da} f^e_{cb} = 0
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        bool broken = false;
        for (int e = 0; e < n && !broken; ++e) {
          Scalar sum;
          for (int c = 0; c < n; ++c)
            sum += g.f(c, a, b) * g.f(e, c, d) + g.f(c, b, d) * g.f(e, c, a) + g.f(c, d, a) * g.f(e, c, b);
          broken = !sum.is_zero();
        }
        if (broken) report.violations.push_back({LieViolation::Kind::jacobi, a, b, d});
      }
  report.ok = report.violations.empty();
  return report;
}

/// ([v,w])^c = f^c_{ab} v^a w^b.
inline std::vector<Scalar> bracket(const LieAlgebraData& g, const std::vector<Scalar>& v, const std::vector<Scalar>& w) {
  const int n = g.dim();
  if (static_cast<int>(v.size()) != n || static_cast<int>(w.size()) != n)
    throw std::invalid_argument("bracket: vector length differs from dim " + std::to_string(n));
  std::vector<Scalar> out(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a) {
      if (v[static_cast<std::size_t>(a)].is_zero()) continue;
      for (int b = 0; b < n; ++b) out[static_cast<std::size_t>(c)] += g.f(c, a, b) * v[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(b)];
    }
  return out;
}

struct RepCheck {
  bool ok = true;
  std::vector<std::pair<int, int>> failing_pairs;
};

/// Checks [M_a, M_b] = f^c_{ab} M_c for all pairs. Structure constants must
/// have no tau-dependence for this to be meaningful.
inline RepCheck check_rep(const LieAlgebraData& g, const MatrixRep& rep) {
  if (static_cast<int>(rep.matrices.size()) != g.dim())
    throw std::invalid_argument("check_rep: matrix count differs from dim");
  RepCheck report;
  for (int a = 0; a < g.dim(); ++a)
    for (int b = a + 1; b < g.dim(); ++b) {
      const auto& ma = rep.matrices[static_cast<std::size_t>(a)];
      const auto& mb = rep.matrices[static_cast<std::size_t>(b)];
      ComplexMatrix lhs = ma * mb - mb * ma;
      for (int c = 0; c < g.dim(); ++c) {
        const Scalar& fc = g.f(c, a, b);
        if (fc.is_zero()) continue;
        if (fc.terms().size() != 1 || fc.terms().begin()->first != 0)
          throw std::invalid_argument("check_rep: structure constants must be tau-free");
        lhs -= fc.coefficient(0) * rep.matrices[static_cast<std::size_t>(c)];
      }
      if (!lhs.is_zero()) report.failing_pairs.emplace_back(a, b);
    }
  report.ok = report.failing_pairs.empty();
  return report;
}

// Built-in algebras.

namespace lie_detail {
inline ComplexMatrix pauli(int a) {
  ComplexMatrix m(2);
  const GaussianRational one(1), i = GaussianRational::i();
  if (a == 0) {
    m(0, 1) = one;
    m(1, 0) = one;
  } else if (a == 1) {
    m(0, 1) = -i;
    m(1, 0) = i;
  } else {
    m(0, 0) = one;
    m(1, 1) = -one;
  }
  return m;
}
inline void set_epsilon(LieAlgebraData& g, int offset = 0) {
  for (int a = 0; a < 3; ++a) {
    int b = (a + 1) % 3, c = (a + 2) % 3;
    g.set_bracket(offset + a, offset + b, offset + c, Scalar(1));
  }
}
}  // namespace lie_detail

/// Zero-dimensional algebra (no symmetry).
inline LieAlgebraData trivial_algebra() { return LieAlgebraData("trivial", 0); }

/// Abelian algebra of dimension n, realized by diagonal matrices i*E_kk.
inline LieAlgebraData abelian(int n) {
  LieAlgebraData g(n == 1 ? "u1" : "abelian(" + std::to_string(n) + ")", n);
  MatrixRep rep{n, {}};
  for (int a = 0; a < n; ++a) {
    ComplexMatrix m(n);
    m(a, a) = GaussianRational::i();
    rep.matrices.push_back(m);
  }
  g.set_rep(rep);
  return g;
}

inline LieAlgebraData u1() { return abelian(1); }

/// su(2) with f^c_{ab} = epsilon_{abc}, realized by M_a = -(i/2) sigma_a.
inline LieAlgebraData su2() {
  LieAlgebraData g("su2", 3);
  lie_detail::set_epsilon(g);
  MatrixRep rep{2, {}};
  const GaussianRational minus_half_i(Rational(0), make_rational(-1, 2));
  for (int a = 0; a < 3; ++a) rep.matrices.push_back(minus_half_i * lie_detail::pauli(a));
  g.set_rep(rep);
  return g;
}

/// so(3) with f^c_{ab} = epsilon_{abc}, realized by (L_a)_{bc} = -epsilon_{abc}.
inline LieAlgebraData so3() {
  LieAlgebraData g("so3", 3);
  lie_detail::set_epsilon(g);
  MatrixRep rep{3, {}};
  for (int a = 0; a < 3; ++a) {
    ComplexMatrix m(3);
    int b = (a + 1) % 3, c = (a + 2) % 3;
    m(b, c) = GaussianRational(-1);
    m(c, b) = GaussianRational(1);
    rep.matrices.push_back(m);
  }
  g.set_rep(rep);
  return g;
}

/// u(2) = su(2) + u(1): basis -(i/2) sigma_1..3 and -(i/2) 1 in the defining rep.
inline LieAlgebraData u2() {
  LieAlgebraData g("u2", 4);
  lie_detail::set_epsilon(g);
  MatrixRep rep{2, {}};
  const GaussianRational minus_half_i(Rational(0), make_rational(-1, 2));
  for (int a = 0; a < 3; ++a) rep.matrices.push_back(minus_half_i * lie_detail::pauli(a));
  rep.matrices.push_back(minus_half_i * ComplexMatrix::identity(2));
  g.set_rep(rep);
  return g;
}

/// Direct sum g1 + g2; the representation, when both exist, is block diagonal.
inline LieAlgebraData direct_sum(const LieAlgebraData& g1, const LieAlgebraData& g2) {
  std::vector<std::string> names = g1.basis_names();
  names.insert(names.end(), g2.basis_names().begin(), g2.basis_names().end());
  const int n1 = g1.dim(), n = g1.dim() + g2.dim();
  LieAlgebraData g(g1.name() + "+" + g2.name(), n, names);
  for (int c = 0; c < g1.dim(); ++c)
    for (int a = 0; a < g1.dim(); ++a)
      for (int b = 0; b < g1.dim(); ++b) g.set_f(c, a, b, g1.f(c, a, b));
  for (int c = 0; c < g2.dim(); ++c)
    for (int a = 0; a < g2.dim(); ++a)
      for (int b = 0; b < g2.dim(); ++b) g.set_f(n1 + c, n1 + a, n1 + b, g2.f(c, a, b));
  if (g1.rep() && g2.rep()) {
    const int v1 = g1.rep()->dim_v, v = v1 + g2.rep()->dim_v;
    MatrixRep rep{v, {}};
    for (int a = 0; a < n; ++a) {
      ComplexMatrix m(v);
      const bool first = a < n1;
      const auto& src = first ? g1.rep()->matrices[static_cast<std::size_t>(a)]
                              : g2.rep()->matrices[static_cast<std::size_t>(a - n1)];
      const int off = first ? 0 : v1;
      for (int r = 0; r < src.size(); ++r)
        for (int c = 0; c < src.size(); ++c) m(off + r, off + c) = src(r, c);
      rep.matrices.push_back(m);
    }
    g.set_rep(rep);
  }
  return g;
}

/// Looks up "u1", "u2", "su2", "so3", "trivial" or "abelian(n)".
inline std::optional<LieAlgebraData> builtin_algebra(const std::string& name) {
  if (name == "u1") return u1();
  if (name == "u2") return u2();
  if (name == "su2") return su2();
  if (name == "so3") return so3();
  if (name == "trivial") return trivial_algebra();
  const std::string prefix = "abelian(";
  if (name.size() > prefix.size() + 1 && name.compare(0, prefix.size(), prefix) == 0 && name.back() == ')') {
    const std::string digits = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    int n = std::stoi(digits);
    if (n < 1 || n > 64) return std::nullopt;
    return abelian(n);
  }
  return std::nullopt;
}

}  // namespace eqcw
