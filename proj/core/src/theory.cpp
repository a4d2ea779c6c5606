#include "ds0/theory.hpp"

#include <map>

#include "ds0/errors.hpp"

namespace ds0 {

std::vector<int> TheorySpec::seeds() const {
  std::vector<int> s;
  for (int i = 1; i <= power - 2; ++i)
    if (!parity_symmetric || i % 2 == 0) s.push_back(i);
  return s;
}

namespace {

TheorySpec make(std::string name, int m, GaussianRational lambda, bool parity, Rat left, Rat right) {
  TheorySpec t;
  t.name = std::move(name);
  t.power = m;
  t.coupling = std::move(lambda);
  t.parity_symmetric = parity;
  t.sector_pair = {std::move(left), std::move(right)};
  return t;
}

const GaussianRational kI = GaussianRational::imaginary_unit();

}  // namespace

TheorySpec TheorySpec::builtin(const std::string& name) {
  // L = phi^4/4:     real line.
  if (name == "hermitian_quartic")
    return make(name, 4, GaussianRational(1), true, Rat(1), Rat(0));
  // L = i phi^3/3:   PT pair of sectors centered at -pi/6 and -5pi/6.
  if (name == "pt_cubic")
    return make(name, 3, kI, false, make_rat(-5, 6), make_rat(-1, 6));
  // L = -phi^4/4:    PT pair in the lower half plane.
  if (name == "pt_quartic")
    return make(name, 4, GaussianRational(-1), false, make_rat(-3, 4), make_rat(-1, 4));
  // L = -i phi^5/5:  upper PT pair by default; a second PT pair exists below.
  if (name == "pt_quintic")
    return make(name, 5, -kI, false, make_rat(9, 10), make_rat(1, 10));
  // L = phi^6/6:     real line.
  if (name == "hermitian_sextic")
    return make(name, 6, GaussianRational(1), true, Rat(1), Rat(0));
  throw ContractError("unknown theory: " + name);
}

const std::vector<std::string>& TheorySpec::builtin_names() {
  static const std::vector<std::string> names = {
      "hermitian_quartic", "pt_cubic", "pt_quartic", "pt_quintic", "hermitian_sextic"};
  return names;
}

TheorySpec TheorySpec::free_theory() {
  return make("free", 2, GaussianRational(1), false, Rat(1), Rat(0));
}

const std::vector<SectorPair>& sector_pairs(const TheorySpec& theory) {
  static const std::map<std::string, std::vector<SectorPair>> table = {
      {"hermitian_quartic", {{"real", Rat(1), Rat(0)}}},
      {"pt_cubic",
       {{"23", make_rat(-5, 6), make_rat(-1, 6)},
        {"12", make_rat(1, 2), make_rat(-1, 6)},
        {"13", make_rat(1, 2), make_rat(-5, 6)}}},
      {"pt_quartic",
       {{"lower", make_rat(-3, 4), make_rat(-1, 4)}, {"upper", make_rat(3, 4), make_rat(1, 4)}}},
      {"pt_quintic",
       {{"upper", make_rat(9, 10), make_rat(1, 10)}, {"lower", make_rat(-7, 10), make_rat(-3, 10)}}},
      {"hermitian_sextic",
       {{"real", Rat(1), Rat(0)},
        {"rot_plus", make_rat(-2, 3), make_rat(1, 3)},
        {"rot_minus", make_rat(2, 3), make_rat(-1, 3)}}},
      {"free", {{"real", Rat(1), Rat(0)}}},
  };
  auto it = table.find(theory.name);
  if (it == table.end()) throw ContractError("no sector table for theory " + theory.name);
  return it->second;
}

SectorPair sector_pair_named(const TheorySpec& theory, const std::string& name) {
  for (const auto& s : sector_pairs(theory))
    if (s.name == name) return s;
  throw ContractError("theory " + theory.name + " has no sector pair named '" + name + "'");
}

}  // namespace ds0
