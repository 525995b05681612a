#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mamass {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Outcome of a numerical check. `residual` is the worst observed defect and
// `tolerance` the bound it was compared against.
struct Verdict {
  std::string name;
  bool pass = true;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string witness;
};

// Throws CheckFailed when the verdict did not pass.
void ensure(const Verdict& v);

}  // namespace mamass
