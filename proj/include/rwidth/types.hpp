#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace rwidth {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class Model { lasso, dantzig };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

inline bool all_finite(const Vector& v) { return v.allFinite(); }
inline bool all_finite(const Matrix& m) { return m.allFinite(); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace rwidth
