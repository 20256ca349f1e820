#pragma once

#include "stendo/cluster.hpp"

namespace stendo {

// Bimodule analysis package for a stable endomorphism algebra with no
// semisimple blocks. lambda_to_gamma is the projection End(T) -> Gamma in
// basis coordinates (module backend only).
struct BimoduleInstance {
  AlgPtr gamma;
  AlgPtr gamma_env;
  FDModule regular;  // Gamma as a right module over gamma_env
  int d = 1;
  std::optional<AlgebraAuto> sigma;
  std::optional<int> r;

  std::optional<FDAlgebra> lambda;
  std::optional<Matrix> lambda_to_gamma;
};

// Builds the instance; throws InputError when gamma still has a semisimple
// block (the split must happen upstream).
BimoduleInstance make_bimodule_instance(AlgPtr gamma, int d,
                                        std::optional<AlgebraAuto> sigma = std::nullopt,
                                        std::optional<int> r = std::nullopt);

// Minimal resolution of the regular bimodule.
ResolutionTrace bimodule_resolution(const BimoduleInstance& bi, int n);

struct PeriodReport {
  std::optional<int> period;           // least n with syzygy^n = Gamma
  int nmax = 0;
  std::vector<int> syzygy_dims;        // dims of the first syzygies
  std::optional<Matrix> witness;       // bimodule isomorphism syzygy^n -> Gamma
  std::vector<std::string> minimality; // per 0 < i < period: why syzygy^i != Gamma
  std::string divisibility;            // verdict text for period | (d+2) r
  bool divisibility_ok = false;
};

// Least n <= nmax with the n-th minimal bimodule syzygy isomorphic to the
// regular bimodule. Gamma must be self-injective (hard error otherwise: the
// upstream theory forces it, so failure indicates an upstream bug).
PeriodReport detect_period(const BimoduleInstance& bi, int nmax, Rng& rng);

struct TorSuite {
  bool applicable = false;
  std::vector<int> dims;       // Tor_i for 0 <= i <= imax
  bool vanishing_ok = false;   // zero away from 0 and d+1
  bool top_dim_ok = false;     // dim Tor_{d+1} = dim Gamma
  bool twisted_iso_ok = false; // Tor_{d+1} = twisted bimodule over sigma
  std::string note;
};

// Tor_i over End(T) of (Gamma, Gamma), with the bimodule identification in
// degree d+1. Requires lambda data.
TorSuite tor_lambda_suite(const BimoduleInstance& bi, int imax, Rng& rng);

struct CyVerdict {
  bool holds = false;
  int shift = 0;  // the syzygy power compared
  std::string description;
};

// Tests the duality syzygy^{-s(d+2)}(Gamma) = D(Gamma) as bimodules, by
// comparing minimal syzygies of Gamma (s < 0) or of D(Gamma) (s > 0).
CyVerdict cy_duality_check(const BimoduleInstance& bi, int s, Rng& rng);

struct DivisibilityVerdict {
  bool ok = false;
  bool conditional = false;
  std::string text;
};
DivisibilityVerdict divisibility_check(int period, int d, std::optional<int> r, int r_bound);

}  // namespace stendo
