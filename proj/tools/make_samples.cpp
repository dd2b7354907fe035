// Writes the sample module files under samples/.

#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <qboson/qboson.hpp>

using namespace qboson;

namespace {

void write(const std::string& path, const RawModule& M) {
  std::ofstream f(path);
  if (!f) throw error("cannot write " + path);
  f << module_to_json(M).dump(2) << "\n";
  std::cout << "wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "samples";
  try {
    PairingSession a1(CartanData::preset("A1"));
    const RawModule h = StandardModule(a1, {Weight::of({2}), Weight::of({0})}).materialize(3);
    write(dir + "/h2_plus_h0.json", h);
    std::mt19937 rng(20240611);
    write(dir + "/h2_plus_h0_scrambled.json", scramble(h, rng));

    PairingSession a2(CartanData::preset("A2"));
    write(dir + "/a2_rho_plus_0.json", StandardModule(a2, {Weight::of({1, 1}), Weight::of({0, 0})}).materialize(3));

    Matrix t(2, 2);
    t(0, 0) = QRat::q_pow(1);
    t(0, 1) = 1;
    t(1, 1) = QRat::q_pow(1);
    write(dir + "/a1_torus_jordan.json", standard_torus_module(a1, {t}, 3));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
