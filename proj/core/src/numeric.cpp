#include "ds0/numeric.hpp"

#include <sstream>

namespace ds0 {

unsigned pick_level(unsigned bits) {
  if (bits <= 256) return 256;
  if (bits <= 512) return 512;
  return 1024;
}

std::string real_str(const BigReal& v, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

std::string complex_str(const BigComplex& v, int digits) {
  std::string s = real_str(v.re, digits);
  if (v.im != 0) {
    s += (v.im > 0 ? "+" : "-") + real_str(v.im > 0 ? v.im : BigReal(-v.im), digits) + "i";
  }
  return s;
}

}  // namespace ds0
