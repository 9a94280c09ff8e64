#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace pslab {

struct ExtremalSpec;

enum class Provenance { empirical, analytic };

// Sampled distribution function F(t) = lambda_n({u > t}) on a strictly
// increasing positive threshold grid. Right-continuous by construction
// (strict inequality in the level sets). Analytic provenance keeps a
// handle to the generating radial object so exact structure survives.
struct DistFn {
    int n = 2;
    std::vector<double> thresholds;
    std::vector<double> values;
    Provenance provenance = Provenance::empirical;
    double ess_sup = 0.0;
    double support_measure = 0.0; // F(0+)
    std::shared_ptr<const ExtremalSpec> source;
    // When set (analytic provenance), evaluates F exactly at any height;
    // the sampled arrays then only serve export and plotting.
    std::function<double(double)> exact_eval;

    // F at the largest sampled threshold <= t (support_measure below the
    // first threshold, 0 above ess_sup), or exact_eval when available.
    double at(double t) const;
};

} // namespace pslab
