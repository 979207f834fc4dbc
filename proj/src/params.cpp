#include "flqkd/params.hpp"

#include <cmath>
#include <string>

#include "flqkd/errors.hpp"

namespace flqkd {

namespace {

void require(bool ok, const char* field, const char* range) {
  if (!ok) fail(ErrorKind::Validation, std::string(field) + " must be " + range);
}

}  // namespace

void SystemParams::validate() const {
  require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0, "bandwidth_hz", "> 0");
  require(std::isfinite(modulation_rate) && modulation_rate > 0, "modulation_rate", "> 0");
  require(std::isfinite(modes_per_bit) && modes_per_bit >= 1, "modes_per_bit", ">= 1");
  require(kappa > 0 && kappa < 1, "kappa", "in (0, 1)");
  require(eta > 0 && eta <= 1, "eta", "in (0, 1]");
  require(kappa_b >= 0 && kappa_b < 1, "kappa_b", "in [0, 1)");
  require(std::isfinite(gain_b) && gain_b >= 1, "gain_b", ">= 1");
  require(std::isfinite(ase_brightness_b) && ase_brightness_b > 0, "ase_brightness_b", "> 0");
  require(beta > 0 && beta <= 1, "beta", "in (0, 1]");
  require(std::isfinite(photon_energy_j) && photon_energy_j > 0, "photon_energy_j", "> 0");
}

}  // namespace flqkd
