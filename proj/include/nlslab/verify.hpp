#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlslab/functionals.hpp"

namespace nls {

struct CheckResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;  // worst signed margin or error seen over the sweep
  double tol = 0.0;
  int count = 0;
};

// The functional identity battery on seeded random smooth fields:
//   J = S - K/(p+1)               (algebraic form, 1e-12)
//   <S'(v), v> = K(v)             (Euler identity, 1e-10)
//   K(lambda0 v) = 0              (ray projection, 1e-10 * Q)
//   P = 1/2 d/dl E(v^l)|_{l=1}    (centered differences, 1e-6)
//   heisenberg_gap >= -1e-8
//   action(l v) matches its polynomial in l at {0.5, 1, 2}   (1e-10)
//   gauge and transverse-translate invariance of E,S,K,J,P   (1e-10)
//   <S'(f), h> matches finite differences of the action      (1e-6)
std::vector<CheckResult> identity_suite(std::shared_ptr<const Grid> grid,
                                        const ModelParams& mp, std::uint64_t seed,
                                        int n_fields);

// Gap inequality sweep: random bump fields amplitude-scaled until P <= 0,
// then lemma1_gap >= -1e-6 * max(1, d_level) must hold for every one.
CheckResult lemma_gap_sweep(std::shared_ptr<const Grid> grid, const ModelParams& mp,
                            double d_level, std::uint64_t seed, int n_fields);

}  // namespace nls
