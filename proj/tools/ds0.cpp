#include <iostream>

int main() {
  std::cout << "ds0: CLI under construction\n";
  return 0;
}
