#pragma once

// Square matrices with GradedElement entries, used for Lie-algebra-valued
// forms pushed through a matrix representation.

#include <vector>

#include "eqcw/graded_algebra.hpp"
#include "eqcw/lie.hpp"

namespace eqcw {

class GradedMatrix {
 public:
  GradedMatrix() = default;
  explicit GradedMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n * n)) {}

  static GradedMatrix identity(int n, int truncation = kUntruncated) {
    GradedMatrix m(n);
    for (int r = 0; r < n; ++r) m(r, r) = GradedElement(Scalar(1)).truncated(truncation);
    return m;
  }

  /// sum_i components[i] * M_i for a representation of the algebra.
  static GradedMatrix from_components(const std::vector<GradedElement>& components, const MatrixRep& rep) {
    if (components.size() != rep.matrices.size())
      throw std::invalid_argument("GradedMatrix: component count differs from representation size");
    GradedMatrix m(rep.dim_v);
    for (std::size_t i = 0; i < components.size(); ++i)
      for (int r = 0; r < rep.dim_v; ++r)
        for (int c = 0; c < rep.dim_v; ++c) {
          const GaussianRational& entry = rep.matrices[i](r, c);
          if (!entry.is_zero()) m(r, c) += Scalar(entry) * components[i];
        }
    return m;
  }

  int size() const { return n_; }
  GradedElement& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * n_ + c)]; }
  const GradedElement& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * n_ + c)]; }

  friend GradedMatrix operator*(const GradedMatrix& a, const GradedMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("GradedMatrix: size mismatch");
    GradedMatrix out(a.n_);
    for (int r = 0; r < a.n_; ++r)
      for (int k = 0; k < a.n_; ++k) {
        if (a(r, k).is_zero()) continue;
        for (int c = 0; c < a.n_; ++c)
          if (!b(k, c).is_zero()) out(r, c) += a(r, k) * b(k, c);
      }
    return out;
  }
  friend GradedMatrix operator+(GradedMatrix a, const GradedMatrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend GradedMatrix operator-(GradedMatrix a, const GradedMatrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend GradedMatrix operator*(const Scalar& s, GradedMatrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend GradedMatrix operator*(const GradedElement& s, const GradedMatrix& a) {
    GradedMatrix out(a.n_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = s * a.data_[k];
    return out;
  }

  GradedElement trace() const {
    GradedElement t;
    for (int r = 0; r < n_; ++r) t += (*this)(r, r);
    return t;
  }

  bool is_antisymmetric() const {
    for (int r = 0; r < n_; ++r)
      for (int c = r; c < n_; ++c)
        if (!((*this)(r, c) + (*this)(c, r)).is_zero()) return false;
    return true;
  }

  bool entries_homogeneous_of_degree(int deg) const {
    for (const auto& x : data_)
      if (!x.is_zero() && x.degree() != deg) return false;
    return true;
  }

  int truncation() const {
    int t = kUntruncated;
    for (const auto& x : data_) t = std::min(t, x.truncation());
    return t;
  }

  GradedMatrix truncated(int degree) const {
    GradedMatrix out = *this;
    for (auto& x : out.data_) x = x.truncated(degree);
    return out;
  }

 private:
  int n_ = 0;
  std::vector<GradedElement> data_;
};

}  // namespace eqcw
