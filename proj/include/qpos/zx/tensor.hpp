#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qpos/zx/diagram.hpp"

namespace qpos::zx {

// Dense tensor over the diagram's boundary wires, axes ordered as
// [inputs..., outputs...], basis index bit k = axis k value.
struct BoundaryTensor {
    std::size_t num_inputs = 0;
    std::size_t num_outputs = 0;
    std::vector<std::complex<double>> data;  // size 2^(inputs+outputs)

    // Matrix element <out_bits| T |in_bits>.
    std::complex<double> entry(std::size_t out_bits, std::size_t in_bits) const {
        return data[in_bits | (out_bits << num_inputs)];
    }
};

struct TensorLimits {
    std::size_t max_boundary_wires = 16;  // 8 inputs + 8 outputs
    std::size_t max_vertices = 512;
    std::size_t max_open_axes = 24;  // intermediate contraction width
};

// Contracts spider tensors (Z: all-zeros plus e^{i phase} all-ones; X: the
// Hadamard-conjugated same; Hadamard edges insert the 2x2 H matrix) and
// folds in the diagram scalar. Greedy ordering keeps the open width small
// on circuit-shaped diagrams.
BoundaryTensor diagram_to_tensor(const ZxDiagram& diagram, const TensorLimits& limits = {});

// Same tensor assembled one input column at a time (each input plugged
// with a basis state). Exact, and much narrower contractions on diagrams
// whose direct width exceeds the cap.
BoundaryTensor diagram_to_tensor_by_columns(const ZxDiagram& diagram,
                                            const TensorLimits& limits = {});

// max_j |a_j - s b_j| minimized over the aligning scalar s (least squares);
// the distance used by the "equal up to a global scalar" checks.
double scalar_aligned_distance(const std::vector<std::complex<double>>& a,
                               const std::vector<std::complex<double>>& b);

bool tensors_equal_up_to_scalar(const BoundaryTensor& a, const BoundaryTensor& b,
                                double tolerance = 1e-9);

}  // namespace qpos::zx
