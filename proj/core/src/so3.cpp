#include "spheredyn/so3.hpp"

#include <cmath>
#include <sstream>

#include "spheredyn/errors.hpp"

namespace spheredyn {

Mat3 hat(const Vec3& x) {
  Mat3 m;
  m << 0.0, -x.z(), x.y(),
       x.z(), 0.0, -x.x(),
       -x.y(), x.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m, double tolerance) {
  const Mat3 sym = m + m.transpose();
  const double worst = sym.cwiseAbs().maxCoeff();
  if (!(worst <= tolerance)) {
    std::ostringstream msg;
    msg << "vee: matrix is not skew-symmetric (max |M + M^T| = " << worst << ")";
    throw NotSkewSymmetric(msg.str());
  }
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

}  // namespace spheredyn
