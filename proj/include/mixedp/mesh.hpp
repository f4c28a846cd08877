#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mixedp/params.hpp"
#include "mixedp/shape.hpp"

namespace mixedp {

// Uniform staggered grid over the cells fully inside the shape. Nodes are
// cell midpoints, so no node sits on the boundary or at the origin. The
// nonlocal kernel, the exterior tail weights and the Hardy weights are all
// precomputed here; a Mesh is immutable once built.
struct Mesh {
    int dim = 1;
    double h = 0.0;
    double cell_volume = 0.0;  // h^dim
    double volume = 0.0;       // M * cell_volume

    std::vector<std::array<double, 2>> nodes;  // y = 0 in 1-D
    std::vector<std::array<int, 2>> cells;     // integer grid coordinates
    // neighbor node index per direction (-x,+x,-y,+y), -1 where the
    // adjacent cell is exterior
    std::vector<std::array<int, 4>> neighbors;

    std::vector<double> kernel_weights;  // M*M row-major, zero diagonal
    std::vector<double> kernel_rowsum;   // per-row sum of kernel weights
    std::vector<double> tail_weights;    // per-node exterior integral
    std::vector<double> hardy_weights;   // per-node cell average of |x|^{-p theta}

    int size() const { return static_cast<int>(nodes.size()); }
    double kernel(int i, int j) const { return kernel_weights[static_cast<std::size_t>(i) * nodes.size() + j]; }

    // Connected components of the given node subset under grid adjacency.
    // Returns the component count; labels (if non-null) receive 0-based ids
    // and -1 outside the subset.
    int components(const std::vector<std::uint8_t>& mask, std::vector<int>* labels = nullptr) const;
};

// Builds the mesh and all weights. Throws on: resolution < 4, an empty
// interior, a node that coincides with the origin, or a divergent Hardy
// weight (origin strictly inside a cell with p*theta >= N).
Mesh build_mesh(const ShapeSpec& spec, const OperatorParams& params);

// Exterior tail integral  int_{R^N \ Omega} |x-y|^{-N-ps} dy  for a point
// strictly inside the shape. Closed form in 1-D; in 2-D the part outside a
// bounding disk is integrated exactly and the annular remainder by per-ray
// closed-form radial integrals.
double tail_weight_at(const std::array<double, 2>& x, const ShapeSpec& spec, double s, double p,
                      int N);

// Cell average of |y|^{-p theta} over the cell of width h centered at x.
// Exact antiderivative in 1-D; dyadically refined Gauss quadrature in 2-D.
// Falls back to the midpoint value when the origin touches the cell closure
// and the average diverges; throws when the origin lies strictly inside.
double hardy_weight_at(const std::array<double, 2>& x, double h, double p, double theta, int N,
                       int dim);

// Restriction of a mesh to a node subset. Kernel rows/columns are copied;
// tail weights absorb the kernel mass of the removed nodes, which makes the
// complement exterior. Throws if fewer than 2 nodes survive.
Mesh build_submesh(const Mesh& parent, const std::vector<std::uint8_t>& keep);

}  // namespace mixedp
