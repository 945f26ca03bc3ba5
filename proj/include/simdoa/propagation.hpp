// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simdoa/geometry.hpp"

namespace simdoa {

/// Rayleigh-Sommerfeld coupling matrices between adjacent planes. All intermediate
/// layers are isomorphic and evenly spaced, so one mid matrix serves every inner hop,
/// and the receiver mirrors the input plane, so w_out is exactly w_in transposed.
struct DiffractionStack {
    cxmat w_in;     // M x N, input plane -> layer 1
    cxmat w_mid;    // M x M, layer l -> layer l+1; empty when num_layers == 1
    cxmat w_out;    // N x M, layer L -> receiver plane, equals w_in.transpose()
    int num_layers = 0;
};

/// Scalar Rayleigh-Sommerfeld coupling over a straight-line distance d:
/// (A * s_layer / (2*pi*d^3)) * (1 - j*kappa*d) * exp(j*kappa*d).
cxd diffraction_coefficient(const SimGeometry& geom, double distance);

/// Build all coupling matrices from exact centered coordinates.
DiffractionStack build_stack(const SimGeometry& geom);

}  // namespace simdoa
