#include "gqtoda/difference_operator.hpp"

#include <string>

namespace gqtoda {

namespace {

void require_same_params(const DifferenceOperator& a, const DifferenceOperator& b) {
  if (!(a.params() == b.params())) throw ConfigError("difference operators built with different eps");
}

}  // namespace

DifferenceOperator::DifferenceOperator(ShiftParams params, std::map<int, Function> coeffs) : params_(params) {
  for (auto& [k, c] : coeffs) {
    if (!c.is_zero()) coeffs_.emplace(k, std::move(c));
  }
}

DifferenceOperator DifferenceOperator::monomial(ShiftParams params, int k, Function c) {
  return DifferenceOperator(params, {{k, std::move(c)}});
}

Function DifferenceOperator::coefficient(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Function(0.0) : it->second;
}

std::optional<std::pair<int, int>> DifferenceOperator::band() const {
  if (coeffs_.empty()) return std::nullopt;
  return std::make_pair(coeffs_.begin()->first, coeffs_.rbegin()->first);
}

Function DifferenceOperator::apply(const Function& g) const {
  Function out = 0.0;
  for (const auto& [k, c] : coeffs_) out = out + c * shift_apply(g, k, params_);
  return out;
}

DifferenceOperator op_add(const DifferenceOperator& a, const DifferenceOperator& b) {
  require_same_params(a, b);
  std::map<int, Function> out = a.terms();
  for (const auto& [k, c] : b.terms()) {
    auto it = out.find(k);
    if (it == out.end()) {
      out.emplace(k, c);
    } else {
      it->second = it->second + c;
    }
  }
  return DifferenceOperator(a.params(), std::move(out));
}

DifferenceOperator op_scale(double c, const DifferenceOperator& a) {
  std::map<int, Function> out;
  for (const auto& [k, f] : a.terms()) out.emplace(k, c * f);
  return DifferenceOperator(a.params(), std::move(out));
}

DifferenceOperator op_compose(const DifferenceOperator& a, const DifferenceOperator& b, const AlgebraLimits& limits) {
  require_same_params(a, b);
  const auto ba = a.band();
  const auto bb = b.band();
  if (!ba || !bb) return DifferenceOperator(a.params());
  const int lo = ba->first + bb->first;
  const int hi = ba->second + bb->second;
  if (lo < -limits.max_band || hi > limits.max_band) {
    throw BandOverflowError("composition band [" + std::to_string(lo) + ", " + std::to_string(hi) +
                            "] exceeds the maximum band " + std::to_string(limits.max_band));
  }
  std::map<int, Function> out;
  for (const auto& [i, x] : a.terms()) {
    for (const auto& [j, y] : b.terms()) {
      Function term = x * shift_apply(y, i, a.params());
      auto it = out.find(i + j);
      if (it == out.end()) {
        out.emplace(i + j, std::move(term));
      } else {
        it->second = it->second + term;
      }
    }
  }
  return DifferenceOperator(a.params(), std::move(out));
}

DifferenceOperator commutator(const DifferenceOperator& a, const DifferenceOperator& b, const AlgebraLimits& limits) {
  return op_compose(a, b, limits) - op_compose(b, a, limits);
}

DifferenceOperator project_plus(const DifferenceOperator& a) {
  std::map<int, Function> out;
  for (const auto& [k, c] : a.terms()) {
    if (k >= 0) out.emplace(k, c);
  }
  return DifferenceOperator(a.params(), std::move(out));
}

DifferenceOperator project_minus(const DifferenceOperator& a) {
  std::map<int, Function> out;
  for (const auto& [k, c] : a.terms()) {
    if (k < 0) out.emplace(k, c);
  }
  return DifferenceOperator(a.params(), std::move(out));
}

Function residue(const DifferenceOperator& a) { return a.coefficient(0); }

Function residue_of_composition(const DifferenceOperator& a, const DifferenceOperator& b) {
  require_same_params(a, b);
  Function out = 0.0;
  for (const auto& [i, x] : a.terms()) {
    auto it = b.terms().find(-i);
    if (it != b.terms().end()) out = out + x * shift_apply(it->second, i, a.params());
  }
  return out;
}

}  // namespace gqtoda
