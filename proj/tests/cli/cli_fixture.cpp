// Writes inputs the CLI tests need but the CLI itself does not produce.
//   cli_fixture weights <identity|random|zeros> <pixel-limited|na-limited> <path>
//   cli_fixture field <size> <seed> <path>
#include <cstdlib>
#include <iostream>
#include <string>

#include "cohsr/field_io.hpp"
#include "cohsr/synth.hpp"
#include "cohsr/weights.hpp"

using namespace cohsr;

int main(int argc, char** argv) {
  const std::string what = argc > 1 ? argv[1] : "";
  try {
    if (what == "weights" && argc == 5) {
      const std::string kind = argv[2];
      const net::NetSpec spec = parse_system_type(argv[3]) == SystemType::pixel_limited
                                    ? net::NetSpec::pixel_limited()
                                    : net::NetSpec::na_limited();
      const net::WeightStore store = kind == "identity" ? net::identity_generator_weights(spec)
                                : kind == "random" ? net::random_weights(spec, net::NetRole::generator, 11)
                                                   : net::WeightStore::zeros(spec, net::NetRole::generator);
      net::write_weights(argv[4], store);
      return 0;
    }
    if (what == "field" && argc == 5) {
      PhantomSpec spec;
      spec.width = spec.height = std::atoi(argv[2]);
      spec.kind = PhantomKind::smooth;
      spec.seed = std::strtoull(argv[3], nullptr, 10);
      write_cfld(argv[4], generate_phantom(spec));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  std::cerr << "usage: cli_fixture weights <identity|random|zeros> <system> <path>\n"
               "       cli_fixture field <size> <seed> <path>\n";
  return 2;
}
