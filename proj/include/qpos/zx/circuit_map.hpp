#pragma once

#include "qpos/qsim.hpp"
#include "qpos/zx/diagram.hpp"

namespace qpos::zx {

// Standard circuit translation: Rz-family gates become Z spiders with the
// matching phase, X an X spider of phase pi, H a Hadamard edge, CNOT a Z-X
// spider pair, CZ a Z-Z pair over a Hadamard edge and CCZ its 7-T
// Clifford+T expansion. The bookkeeping scalar is kept so the diagram
// tensor equals the circuit unitary exactly. Rz angles must be rational
// multiples of pi (denominator <= 96); anything else is an unsupported
// gate.
ZxDiagram circuit_to_diagram(const Circuit& circuit);

// Replaces every input boundary with a |0> state (an arity-1 phase-0 X
// spider and a 1/sqrt(2) scalar each), turning the map diagram into a
// state diagram over the outputs.
void plug_inputs_zero(ZxDiagram& diagram);

// Same with the computational basis state |bits>, bit i driving input i
// (X spider of phase pi where the bit is set).
void plug_inputs_basis(ZxDiagram& diagram, std::size_t bits);

}  // namespace qpos::zx
