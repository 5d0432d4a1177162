#include "ecoepi/params.hpp"

#include <cmath>
#include <stdexcept>

namespace ecoepi {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Classical: return "classical";
    case Variant::Harmless: return "harmless";
    case Variant::Avoided: return "avoided";
    case Variant::Toxic: return "toxic";
  }
  return "?";
}

Variant variant_from_name(const std::string& name) {
  if (name == "classical") return Variant::Classical;
  if (name == "harmless") return Variant::Harmless;
  if (name == "avoided") return Variant::Avoided;
  if (name == "toxic") return Variant::Toxic;
  throw std::invalid_argument("unknown variant '" + name +
                              "' (expected classical|harmless|avoided|toxic)");
}

int infected_contact_sign(Variant v) {
  switch (v) {
    case Variant::Harmless: return 1;
    case Variant::Toxic: return -1;
    default: return 0;
  }
}

bool infected_predation_loss(Variant v) {
  return v == Variant::Harmless || v == Variant::Toxic;
}

std::size_t state_dim(Variant v) {
  return v == Variant::Classical ? 2 : 3;
}

double ParameterSet::effective_b() const {
  if (variant == Variant::Avoided || variant == Variant::Classical) return 0.0;
  return b;
}

namespace {

void require_positive(double v, const char* name) {
  if (!(std::isfinite(v) && v > 0.0))
    throw std::invalid_argument(std::string("parameter ") + name + " must be finite and > 0");
}

}  // namespace

void ParameterSet::validate() const {
  require_positive(m, "m");
  require_positive(a, "a");
  require_positive(r, "r");
  require_positive(K, "K");
  if (variant == Variant::Classical) return;  // b, beta, mu are ignored
  require_positive(beta, "beta");
  require_positive(mu, "mu");
  if (!(std::isfinite(b) && b >= 0.0))
    throw std::invalid_argument("parameter b must be finite and >= 0");
}

}  // namespace ecoepi
