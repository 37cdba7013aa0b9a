#include "ctur/tolerances.hpp"

#include <array>
#include <utility>

#include "ctur/errors.hpp"

namespace ctur {

namespace {

using Field = double Tolerances::*;

constexpr std::array<std::pair<std::string_view, Field>, 20> kFields{{
    {"hermiticity", &Tolerances::hermiticity},
    {"trace_preservation", &Tolerances::trace_preservation},
    {"kernel_rel", &Tolerances::kernel_rel},
    {"steady_residual", &Tolerances::steady_residual},
    {"steady_hermitian", &Tolerances::steady_hermitian},
    {"steady_trace", &Tolerances::steady_trace},
    {"positivity", &Tolerances::positivity},
    {"pinv_rcond", &Tolerances::pinv_rcond},
    {"condition_limit", &Tolerances::condition_limit},
    {"drazin", &Tolerances::drazin_identity},
    {"imag_residue", &Tolerances::imag_residue},
    {"branch_guard", &Tolerances::branch_guard},
    {"ldb", &Tolerances::ldb},
    {"bound_slack", &Tolerances::bound_slack},
    {"current_floor", &Tolerances::current_floor},
    {"chi_step", &Tolerances::chi_step},
    {"theta_step", &Tolerances::theta_step},
    {"j_rel", &Tolerances::j_rel},
    {"d_rel", &Tolerances::d_rel},
    {"sensitivity_rel", &Tolerances::sensitivity_rel},
}};

Field lookup(std::string_view key) {
  for (const auto& [name, field] : kFields) {
    if (name == key) return field;
  }
  throw ConfigError("unknown tolerance key '" + std::string(key) + "'");
}

}  // namespace

void Tolerances::set(std::string_view key, double value) {
  if (!(value >= 0.0)) throw ConfigError("tolerance '" + std::string(key) + "' must be >= 0");
  this->*lookup(key) = value;
}

double Tolerances::get(std::string_view key) const { return this->*lookup(key); }

std::vector<std::string> Tolerances::keys() {
  std::vector<std::string> out;
  for (const auto& [name, field] : kFields) out.emplace_back(name);
  return out;
}

}  // namespace ctur
