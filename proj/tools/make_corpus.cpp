// Regenerates the shipped test corpus: carrier.pgm and logo.pbm.
#include <filesystem>
#include <iostream>

#include "chaosmark/corpus.hpp"
#include "chaosmark/netpbm.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);
  chaosmark::save_pgm(chaosmark::synthetic_carrier(), dir / "carrier.pgm");
  chaosmark::save_pbm(chaosmark::synthetic_logo(), dir / "logo.pbm");
  std::cout << "wrote " << (dir / "carrier.pgm").string() << " and " << (dir / "logo.pbm").string() << "\n";
  return 0;
}
