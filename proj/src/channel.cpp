#include "cvtele/channel.hpp"

#include "cvtele/errors.hpp"

namespace cvtele {

CharFn teleport_charfn(const CharFn& input, const Channel& ch) {
  if (input.ordering() != Ordering::symmetric) throw InvalidArgument("teleport expects a Wigner-ordered input");
  const CharFn tau = transfer_fn(ch);
  const double g = ch.gain;
  std::optional<OriginSeries> series;
  if (input.series()) series = (*tau.series()) * input.series()->argument_scaled(g);
  return CharFn([tau, input, g](PhasePoint p) { return tau(p) * input(p.scaled(g)); }, Ordering::symmetric,
                "out[" + input.label() + " x " + tau.label() + "]", std::move(series));
}

OutputState teleport(const InputState& input, const Channel& ch) {
  return {teleport_charfn(input_charfn(input), ch), input, ch};
}

}  // namespace cvtele
