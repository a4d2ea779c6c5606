#include "ds0/rational.hpp"

namespace ds0 {

std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string GaussianRational::str() const {
  if (im == 0) return rat_str(re);
  std::string imag;
  if (im == 1)
    imag = "i";
  else if (im == -1)
    imag = "-i";
  else
    imag = rat_str(im) + "*i";
  if (re == 0) return imag;
  if (im > 0) return "(" + rat_str(re) + "+" + imag + ")";
  return "(" + rat_str(re) + imag + ")";  // imag already carries the sign
}

}  // namespace ds0
