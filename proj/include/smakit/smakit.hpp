#pragma once

#include <smakit/scalar.hpp>
#include <smakit/quasi_order.hpp>
#include <smakit/matrix.hpp>
#include <smakit/linalg.hpp>
#include <smakit/random.hpp>
#include <smakit/sma.hpp>
#include <smakit/diagonalization.hpp>
#include <smakit/maps.hpp>
#include <smakit/recovery.hpp>
#include <smakit/counterexample.hpp>
#include <smakit/io.hpp>
#include <smakit/theorem_check.hpp>
