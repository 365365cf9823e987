#pragma once

#include "llv/derivation.hpp"
#include "llv/syntax.hpp"

namespace llv::fixtures {

inline Term T(const char* s) { return parse_term(s, builtin_corpus()); }

/// x:1 -o 1 |- x x : 1, the premise of Delta in the worked example.
inline Derivation self_app() {
  CompType tau = parse_comp_type("1 -o 1");
  Derivation f = make_ax("x", tau);
  Derivation a = make_ax("x", CompType{});
  return make_app(f, {a}, {AppAlign{0, {0}}});
}

/// |- Delta : tau -o 1, built by hand.
inline Derivation delta_once() { return make_lam("x", T("x x"), {self_app()}); }

/// |- I : 1 -o 1.
inline Derivation id_unit() { return make_lam("x", T("x"), {make_ax("x", CompType{})}); }

/// |- \x y.Omega : 1 -o 1.
inline Derivation k_omega() { return make_lam("x", T("\\y.Omega"), {make_lam("y", T("Omega"), {})}); }

/// The worked derivation of |- D (I || \x y.Omega) : 1 % 1.
inline Derivation worked_pi() {
  Derivation delta = make_lam("x", T("x x"), {self_app(), self_app()});
  Derivation arg = make_par(id_unit(), k_omega());
  return make_app(delta, {arg}, {AppAlign{0, {0, 1}}});
}

/// The derivation of its contractum D I || D (\x y.Omega).
inline Derivation worked_pi_prime() {
  Derivation l = make_app(delta_once(), {id_unit()}, {AppAlign{0, {0}}});
  Derivation r = make_app(delta_once(), {k_omega()}, {AppAlign{0, {0}}});
  return make_par(l, r);
}

}  // namespace llv::fixtures
