#pragma once

#include "pslab/extremal.hpp"
#include "pslab/grid_field.hpp"
#include "pslab/young.hpp"

namespace pslab {

// int Phi(|grad u|) dx plus, for radial objects with value jumps, the
// singular term slope_at_infinity * ||D^s u||. The singular term is
// only evaluated on the exact representation; grids cannot see it.
// Throws "functional infinite" for a value-jump object when Phi grows
// superlinearly.
double dirichlet_functional(const GridField& u, const YoungFunction& phi);
double dirichlet_functional(const ExtremalSpec& spec, const YoungFunction& phi);

// Direct integral of Psi(|u - v|): cellwise sums for grids, volumetric
// adaptive quadrature for exact radial objects.
double psi_distance(const GridField& u, const GridField& v,
                    const YoungFunction& psi);
double psi_distance(const ExtremalSpec& u, const ExtremalSpec& v,
                    const YoungFunction& psi);

struct OracleValue {
    double value = 0.0;
    double tolerance = 0.0; // declared error budget of the evaluation
};

// Independent evaluation of int Psi(|u - v|) through the level-set
// identity: the double integral of lambda({u > t} \ {v > t - s}) plus
// the symmetric term against the second-derivative measure of Psi.
// Requires Psi'(0) = 0. Grids are quantized onto a shared value
// lattice; exact radial objects use closed-form ball overlaps.
OracleValue psi1_oracle(const GridField& u, const GridField& v,
                        const YoungFunction& psi, int levels = 1024);
OracleValue psi1_oracle(const ExtremalSpec& u, const ExtremalSpec& v,
                        const YoungFunction& psi);

// int lambda({u > t} triangle {v > t}) Psi'(t) dt, an upper bound for
// psi_distance that collapses to an identity for linear Psi.
double psi2_bound(const GridField& u, const GridField& v,
                  const YoungFunction& psi);
double psi2_bound(const ExtremalSpec& u, const ExtremalSpec& v,
                  const YoungFunction& psi);

} // namespace pslab
