#pragma once

namespace wignerlab {

/// Selects between the serial reference path and the OpenMP path of a kernel.
/// Both paths perform the same arithmetic in the same order per output
/// element, so their results are bitwise identical.
enum class Exec { serial, parallel };

/// Upper bound on OpenMP threads. Initialized from WIGNERLAB_THREADS when set.
int max_threads();
void set_max_threads(int n);

}  // namespace wignerlab
