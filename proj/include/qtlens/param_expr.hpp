#pragma once

#include <span>
#include <string>
#include <vector>

namespace qtlens {

/// One symbolic term `coeff * theta[index]` of an affine angle expression.
struct ParamTerm {
  int index = 0;
  double coeff = 0.0;

  friend bool operator==(const ParamTerm&, const ParamTerm&) = default;
};

/// Affine angle expression `constant + sum_k coeff_k * theta[index_k]`.
///
/// Terms are kept sorted by parameter index, each index appears at most once
/// and no stored coefficient is zero. Basis translation shifts the constant,
/// and RZ merging adds two expressions term by term, so the set of trainable
/// parameters survives every rewrite.
class ParamExpr {
 public:
  ParamExpr() = default;
  explicit ParamExpr(double constant) : constant_(constant) {}

  /// Builds `constant + sum(terms)`. Duplicate indices are summed and zero
  /// coefficients dropped; negative indices throw DomainError.
  ParamExpr(double constant, std::vector<ParamTerm> terms);

  static ParamExpr parameter(int index, double coeff = 1.0);

  [[nodiscard]] double constant() const { return constant_; }
  [[nodiscard]] const std::vector<ParamTerm>& terms() const { return terms_; }
  [[nodiscard]] bool is_constant() const { return terms_.empty(); }

  /// Coefficient of theta[index], zero when absent.
  [[nodiscard]] double coefficient(int index) const;

  /// Largest referenced parameter index, or -1 for a constant.
  [[nodiscard]] int max_index() const;

  /// Evaluates the expression. Throws BindingError when a term refers
  /// past the end of theta.
  [[nodiscard]] double evaluate(std::span<const double> theta) const;

  [[nodiscard]] ParamExpr shifted(double delta) const;

  ParamExpr& operator+=(const ParamExpr& other);
  friend ParamExpr operator+(ParamExpr lhs, const ParamExpr& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const ParamExpr&, const ParamExpr&) = default;

  [[nodiscard]] std::string to_string() const;

 private:
  void normalize();

  double constant_ = 0.0;
  std::vector<ParamTerm> terms_;
};

}  // namespace qtlens
