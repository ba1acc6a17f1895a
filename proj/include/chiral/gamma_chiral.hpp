#pragma once

#include "chiral/operator.hpp"

namespace chiral {

// Chiral coefficient system in m even variables tensored with r b-c systems.
struct GammaChiralModel {
  ModelPtr model;
  GammaSpecies gamma;
  BcSpecies bc;
};

GammaChiralModel make_gamma_chiral_model(int m, int r, const Caps& caps = Caps{});

// Mode f_(k) of the field attached to the polynomial f, acting on s.
// Lowers weight by k+1 and raises the poly-degree filtration by at most deg f.
State f_mode_action(const Polynomial& f, int k, const State& s);
OpExpr f_mode_op(const Polynomial& f, int k);

// Translation operator, acting as a derivation with [T, a_(k)] = -k a_(k-1).
State translation_operator(const State& s);
OpExpr translation_op();

}  // namespace chiral
