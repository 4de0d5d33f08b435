#include "qtlens/param_expr.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "qtlens/errors.hpp"

namespace qtlens {

ParamExpr::ParamExpr(double constant, std::vector<ParamTerm> terms)
    : constant_(constant), terms_(std::move(terms)) {
  normalize();
}

ParamExpr ParamExpr::parameter(int index, double coeff) {
  return ParamExpr(0.0, {ParamTerm{index, coeff}});
}

void ParamExpr::normalize() {
  for (const auto& t : terms_) {
    if (t.index < 0) {
      throw DomainError("negative parameter index " + std::to_string(t.index));
    }
  }
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const ParamTerm& a, const ParamTerm& b) {
                     return a.index < b.index;
                   });
  std::vector<ParamTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().index == t.index) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const ParamTerm& t) { return t.coeff == 0.0; });
  terms_ = std::move(merged);
}

double ParamExpr::coefficient(int index) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), index,
      [](const ParamTerm& t, int i) { return t.index < i; });
  return (it != terms_.end() && it->index == index) ? it->coeff : 0.0;
}

int ParamExpr::max_index() const {
  return terms_.empty() ? -1 : terms_.back().index;
}

double ParamExpr::evaluate(std::span<const double> theta) const {
  double value = constant_;
  for (const auto& t : terms_) {
    if (static_cast<std::size_t>(t.index) >= theta.size()) {
      throw BindingError("parameter index " + std::to_string(t.index) +
                         " out of range for binding of length " +
                         std::to_string(theta.size()));
    }
    value += t.coeff * theta[static_cast<std::size_t>(t.index)];
  }
  return value;
}

ParamExpr ParamExpr::shifted(double delta) const {
  ParamExpr out = *this;
  out.constant_ += delta;
  return out;
}

ParamExpr& ParamExpr::operator+=(const ParamExpr& other) {
  constant_ += other.constant_;
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize();
  return *this;
}

std::string ParamExpr::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << constant_;
  for (const auto& t : terms_) {
    os << " + " << t.coeff << "*t" << t.index;
  }
  return os.str();
}

}  // namespace qtlens
