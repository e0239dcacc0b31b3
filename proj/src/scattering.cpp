#include "blis/scattering.hpp"

#include "blis/error.hpp"

#include <sstream>

namespace blis {

Eigen::VectorXd modulus(const Eigen::Ref<const Eigen::VectorXd>& x) { return x.cwiseAbs(); }

Eigen::VectorXd scatter_U(const WaveletFrame& frame, const Eigen::Ref<const Eigen::VectorXd>& x,
                          const ScatterPath& path) {
  Eigen::VectorXd u = x;
  for (int j : path) {
    if (j < 0 || j > frame.J()) {
      throw Error(ErrorCode::BadPathIndex,
                  "scattering path index " + std::to_string(j) + " outside 0.." + std::to_string(frame.J()));
    }
    u = frame.apply_filter(j, u).col(0).cwiseAbs();
  }
  return u;
}

std::size_t ScatterCoefficients::count(int order) const {
  std::size_t c = 0;
  for (const auto& p : paths) c += static_cast<int>(p.size()) == order ? 1 : 0;
  return c;
}

std::vector<ScatterPath> scatter_paths(int J, int max_order) {
  std::vector<ScatterPath> all{ScatterPath{}};
  std::vector<ScatterPath> level{ScatterPath{}};
  for (int m = 1; m <= max_order; ++m) {
    std::vector<ScatterPath> next;
    next.reserve(level.size() * static_cast<std::size_t>(J + 1));
    for (const auto& p : level) {
      for (int j = 0; j <= J; ++j) {
        auto q = p;
        q.push_back(j);
        next.push_back(std::move(q));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

ScatterCoefficients scatter_all(const WaveletFrame& frame, const Eigen::Ref<const Eigen::VectorXd>& x,
                                int max_order) {
  if (max_order < 0) throw Error(ErrorCode::InvalidArgument, "max_order must be nonnegative");
  if (x.size() != frame.size()) throw Error(ErrorCode::LengthMismatch, "scatter_all");

  const int J = frame.J();
  ScatterCoefficients out;
  out.J = J;
  out.max_order = max_order;
  out.paths = scatter_paths(J, max_order);
  out.values.resize(frame.size(), static_cast<Index>(out.paths.size()));

  // U for the current order, one column per path (parent-major).
  Eigen::MatrixXd level = x;
  Index column = 0;
  for (int m = 0; m <= max_order; ++m) {
    if (m > 0) {
      const auto filtered = frame.apply_all(level);
      Eigen::MatrixXd next(frame.size(), level.cols() * (J + 1));
      for (Index p = 0; p < level.cols(); ++p) {
        for (int j = 0; j <= J; ++j) {
          next.col(p * (J + 1) + j) = filtered[static_cast<std::size_t>(j)].col(p).cwiseAbs();
        }
      }
      level = std::move(next);
    }
    out.values.middleCols(column, level.cols()) = frame.apply_filter(J + 1, level);
    column += level.cols();
  }
  return out;
}

Eigen::VectorXd scatter_aggregate(const ScatterCoefficients& coeffs) {
  return coeffs.values.colwise().sum().transpose();
}

std::string scatter_label(const ScatterPath& path) {
  std::ostringstream os;
  os << "S[";
  for (std::size_t i = 0; i < path.size(); ++i) os << (i ? "," : "") << path[i];
  os << ']';
  return os.str();
}

}  // namespace blis
