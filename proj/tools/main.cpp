#include <iostream>

#include "hmvp_app/app.hpp"

int main(int argc, char** argv) {
  return hmvp::app::run(argc, argv, std::cout, std::cerr);
}
