#ifndef PEAKON_PEAKON_HPP_
#define PEAKON_PEAKON_HPP_

#include "peakon/energetics.hpp"
#include "peakon/initial_condition.hpp"
#include "peakon/kernel.hpp"
#include "peakon/linear_dynamics.hpp"
#include "peakon/nonlinear_dynamics.hpp"
#include "peakon/nonlocal.hpp"
#include "peakon/parallel.hpp"
#include "peakon/quadrature.hpp"
#include "peakon/rk4.hpp"
#include "peakon/state.hpp"
#include "peakon/stationary.hpp"
#include "peakon/trajectory.hpp"
#include "peakon/wave_families.hpp"

#endif  // PEAKON_PEAKON_HPP_
