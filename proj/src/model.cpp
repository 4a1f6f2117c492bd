#include "qdyn/model.hpp"

#include <cmath>

#include "qdyn/errors.hpp"
#include "qdyn/qcore.hpp"

namespace qdyn {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void validate(const ModelParams& params) {
  std::visit(Overloaded{
                 [](const QOsc& p) {
                   if (!(p.q > 0.0) || !std::isfinite(p.q)) throw DomainError("QOsc: q must be > 0");
                   if (!(p.omega_q > 0.0) || !std::isfinite(p.omega_q)) {
                     throw DomainError("QOsc: omega_q must be > 0");
                   }
                 },
                 [](const Anharmonic& p) {
                   if (!(p.omega1 > 0.0) || !std::isfinite(p.omega1)) {
                     throw DomainError("Anharmonic: omega1 must be > 0");
                   }
                   if (!(p.omega2 >= 0.0) || !std::isfinite(p.omega2)) {
                     throw DomainError("Anharmonic: omega2 must be >= 0");
                   }
                 },
             },
             params);
}

double deformation(const ModelParams& params) noexcept {
  if (const auto* p = std::get_if<QOsc>(&params)) return p->q;
  return 1.0;
}

double level(const ModelParams& params, std::size_t n) {
  if (const auto* p = std::get_if<QOsc>(&params)) return q_number(n, p->q);
  return static_cast<double>(n);
}

double energy(const ModelParams& params, std::size_t n) {
  return std::visit(Overloaded{
                        [n](const QOsc& p) { return p.omega_q * q_number(n, p.q); },
                        [n](const Anharmonic& p) {
                          const double nn = static_cast<double>(n);
                          return p.omega1 * nn + p.omega2 * nn * nn;
                        },
                    },
                    params);
}

double time_unit(const ModelParams& params) noexcept {
  if (const auto* p = std::get_if<QOsc>(&params)) return p->omega_q;
  return 1.0;
}

std::string model_name(const ModelParams& params) {
  return std::holds_alternative<QOsc>(params) ? "qosc" : "anharmonic";
}

}  // namespace qdyn
