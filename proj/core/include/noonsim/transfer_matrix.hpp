#pragma once

namespace noonsim {

/// Power transmission of a lossless slab of permittivity `eps` and `thickness` in vacuum at
/// normal incidence, from the 2x2 characteristic matrix of the layer.
double slab_transmission(double omega, double eps, double thickness);

/// Thinnest slab thickness in (0, lambda/2) with power transmission 0.5 at `omega`.
/// Throws CalibrationError when the slab cannot reach 50:50 (too low a permittivity).
double calibrate_beamsplitter(double omega, double eps);

}  // namespace noonsim
