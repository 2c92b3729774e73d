#pragma once

#include "cvtele/phasespace.hpp"
#include "cvtele/states.hpp"

namespace cvtele {

/// Teleported state: χ_out(ξ) = τ(ξ) χ_in(g ξ), Wigner ordered.
struct OutputState {
  CharFn charfn;
  InputState input;
  Channel channel;
};

OutputState teleport(const InputState& input, const Channel& ch);

/// The same construction for an arbitrary Wigner-ordered input function.
CharFn teleport_charfn(const CharFn& input, const Channel& ch);

}  // namespace cvtele
